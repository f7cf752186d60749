"""
Zero-free factors from boundary measures
========================================
"""
import math

import numpy as np

from diskarg import BoundaryMeasure, BoundaryPoint, CompleteMeasure, ZeroSequence, arg_g, example2_measure, frostman_integral, g_psi, h_psi
from diskarg.experiments import example1_spec

# %% A single atom gives exp(-(1 + z)/(1 - z))
spec = example1_spec()
print("g(0)            =", g_psi(0.0, spec), " exp(-1) =", math.exp(-1))
print("arg g(0.5 i)    =", arg_g(0.5j, spec))
for r in (0.9, 0.99, 0.999):
    # along arg(1 - z) = pi/4 the argument grows like 1/(1 - r)
    z = 1 - (1 - r) * math.sqrt(2) * np.exp(1j * math.pi / 4)
    print(f"  arg g near the vertex at |1 - z| = {abs(1 - z):.1e}: {arg_g(z, spec):.3f}")

# %% Lebesgue measure: h is constant
leb = BoundaryMeasure.lebesgue()
print("h at random points:", np.round(h_psi(np.array([0.3, 0.9j, -0.99]), leb), 12))

# %% Power-law density at the vertex
for alpha in (0.25, 0.5, 0.75):
    bm = example2_measure(alpha)
    lam = CompleteMeasure(ZeroSequence(), bm)
    fin = [g for g in (0.1, 0.3, 0.5, 0.7, 0.9) if frostman_integral(lam, BoundaryPoint(0.0), g).finite]
    print(f"alpha={alpha}: {bm.breakpoints.size} breakpoints, mass {bm.total_mass:.6f}, finite for gamma in {fin}")

# %% One-sided density: the radial argument grows like a logarithm
half = BoundaryMeasure(breakpoints=[0.0, math.pi], values=[0.0, math.pi])
for j in (4, 8, 16):
    r = 1 - 2.0**-j
    print(f"r = 1 - 2^-{j}: arg g = {arg_g(r, half):.6f}, log 1/(1-r) = {math.log(1 / (1 - r)):.6f}")
