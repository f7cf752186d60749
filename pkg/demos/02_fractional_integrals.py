"""
Riemann-Liouville integrals along a radius
==========================================

The weight (r - x)^(gamma - 1) is integrated exactly by Gauss-Jacobi rules on
the panel touching r; the remaining panels use Gauss-Kronrod.
"""
import numpy as np
from scipy.special import gamma as G

from diskarg import kernel_bound_ratio, rl_integral
from diskarg.experiments import oracle_naive_rl

# %% Closed forms
for g in (0.1, 0.5, 0.9):
    res = rl_integral(lambda x: np.ones_like(x), g, 0.9)
    exact = 0.9**g / G(g + 1)
    print(f"gamma={g}: D^-g 1 = {res.value:.15f}  exact {exact:.15f}  nodes {res.nodes_used}")

# %% A peaked integrand close to the circle
h = lambda x: np.abs(1 - x * np.exp(0.3j)) ** -2  # noqa: E731
r = 1 - 2.0**-10
main = rl_integral(h, 0.5, r)
ref = oracle_naive_rl(h, 0.5, r, 10**6)
print("graded quadrature :", main.value, "+-", main.quadrature_error_estimate)
print("1e6 uniform panels:", ref)

# %% Kernel growth
# D^-gamma |1 - x|^-alpha grows like |1 - r|^(gamma - alpha); the ratio settles.
for j in (4, 8, 12, 16):
    print(f"j={j:2d}: ratio {kernel_bound_ratio(1.0, 2.0, 0.5, 1 - 2.0**-j):.6f}")
print("limit Gamma(1.5) =", G(1.5))
