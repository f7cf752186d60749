"""
Local zero counts and the compensated logarithm
===============================================
"""
import numpy as np

from diskarg import BoundedFunctionSpec, L_value, ZeroSequence, a_kernel, local_count, lower_bound_constant, tsuji_bound_check
from diskarg.experiments import random_spec

rng = np.random.default_rng(3)

# %% Counting zeros near z
a = 0.9 * np.exp(1j * rng.uniform(-0.05, 0.05, 50)) + rng.normal(0, 0.01, 50)
zs = ZeroSequence(a[np.abs(a) < 1])
z = 0.9
for h in (0.25, 0.5, 0.75):
    lc = local_count(zs, z, h)
    print(f"h={h}: n={lc.n:2d}  N={lc.N:.4f}")

# %% Adding N_z(h) to log f keeps the real part non-positive
worst = max(L_value(random_spec(rng), 0.95 * np.exp(1j * t), 0.5).real for t in rng.uniform(-3, 3, 200))
print("largest Re L over 200 random specs:", worst)

# %% The lower bound constant against sampled values
spec = BoundedFunctionSpec(zeros=zs)
ratios = []
for t in np.linspace(-0.1, 0.1, 41):
    w = 0.9 * np.exp(1j * t)
    S = np.sum(np.abs(a_kernel(w, zs.zeros)))
    ratios.append(-L_value(spec, w, 0.5).real / S)
print(f"max -Re L / sum|A| = {max(ratios):.3f}, constant C(1/2) = {lower_bound_constant(0.5):.3f}")

# %% Small factors
print("lhs, rhs:", tsuji_bound_check(zs, 0.3))
