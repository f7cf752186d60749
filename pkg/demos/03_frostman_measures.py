"""
Complete measures and Frostman integrals
========================================
"""
import math

import numpy as np

from diskarg import (
    BoundaryMeasure,
    BoundaryPoint,
    BoundedFunctionSpec,
    CompleteMeasure,
    Tail,
    ZeroSequence,
    divisor_split,
    frostman_integral,
    frostman_via_modulus,
    modulus_of_continuity,
)
from diskarg.experiments import example1_spec, gen_power_radial

one = BoundaryPoint(0.0)

# %% A geometric sequence of zeros
k = np.arange(1, 41)
zs = ZeroSequence(1 - 2.0**-k, Tail("geometric", 0.5, 40))
lam = CompleteMeasure(zs, BoundaryMeasure())
print("Frostman, gamma = 1/2 :", frostman_integral(lam, one, 0.5).value, " 1/(sqrt2 - 1) =", 1 / (math.sqrt(2) - 1))

# %% Power sequences have a threshold at 1/beta
pw = CompleteMeasure(gen_power_radial(4.0, 1000), BoundaryMeasure())
for g in (0.2, 0.25, 0.3, 0.5):
    res = frostman_integral(pw, one, g)
    print(f"beta=4, gamma={g}: {res.value:.6g} {res.certificate}")

# %% A point mass at the vertex diverges for every gamma
print(frostman_integral(example1_spec().complete_measure, one, 0.9))

# %% The same integral through the modulus of continuity
t = np.linspace(-math.pi, math.pi, 9)
smooth = CompleteMeasure(ZeroSequence([0.9 + 0.1j, 0.95]), BoundaryMeasure(breakpoints=t, values=t + math.pi))
print("direct      :", frostman_integral(smooth, one, 0.6).value)
print("via modulus :", frostman_via_modulus(smooth, one, 0.6))
print("omega(tau)  :", modulus_of_continuity(smooth, one, [0.01, 0.1, 1.0, 2.0]))

# %% Divisors split the measure
spec = BoundedFunctionSpec(zeros=zs, boundary=BoundaryMeasure(breakpoints=t, values=t + math.pi))
p, q = divisor_split(spec, lambda i, a: i % 2 == 0, 0.25)
print("masses:", p.complete_measure.total_mass, "+", q.complete_measure.total_mass, "=", spec.complete_measure.total_mass)
