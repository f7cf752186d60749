"""
Blaschke products and their argument
====================================

A walk through single factors, the cut convention and long products.
Run with ``python demos/01_blaschke_argument.py``.
"""
import cmath

import numpy as np

from diskarg import ZeroSequence, Tail, factor, factor_arg, product_log, product_eval
from diskarg.experiments import gen_conjugate_pairs, oracle_naive_product

# %% One factor
# b(z, a) vanishes at a and has modulus |a|^2 at the origin.
a = 0.5
print("b(0, a)      =", factor(0, a))
print("b(0.5i, a)   =", factor(0.5j, a))
print("arg b(0.5i)  =", factor_arg(0.5j, a))

# %% The cut
# Past the zero, on the ray through it, the factor is a negative real number.
# The branch is fixed at -pi there so that the argument stays lower semicontinuous.
xi = 0.5 + 0.3j
tau = (1 + 1 / abs(xi)) / 2
print("on the cut   :", factor_arg(tau * xi, xi))
print("just above   :", factor_arg(tau * xi * cmath.exp(1e-9j), xi))
print("just below   :", factor_arg(tau * xi * cmath.exp(-1e-9j), xi))

# %% Sums of logarithms beat products
# 2000 zeros crowding toward 1: the naive product and the summed logarithm agree,
# but only the logarithm carries the continuous argument.
rng = np.random.default_rng(0)
m = np.geomspace(0.3, 1e-9, 2000)
zs = ZeroSequence((1 - m) * np.exp(1j * rng.normal(0, 1, m.size) * m))
z = 0.999 * cmath.exp(0.002j)
pl = product_log(zs, z)
print("log B(z)     =", pl.value)
print("exp(log B)   =", np.exp(pl.value))
print("naive        =", oracle_naive_product(zs, z))

# %% Truncated sequences carry a certificate
# Zeros 1 - 2^-k for k <= 30 and a geometric tail for the rest.
k = np.arange(1, 31)
short = ZeroSequence(1 - 2.0**-k, Tail("geometric", 0.5, 30))
for w in (0.3, 0.9, 0.99):
    res = product_log(short, w, tol=1e-3)
    print(f"|z| = {w}: tail contributes at most {res.tail_bound:.2e}")

# %% Conjugate pairs
# Pairing every zero with its conjugate makes B real on the real radius,
# while the argument off the axis is still informative.
pairs = gen_conjugate_pairs(ZeroSequence([0.9 + 0.1j, 0.5 + 0.4j]))
print("arg B(0.95)          =", product_log(pairs, 0.95).value.imag)
print("arg B(0.9 e^{0.05i}) =", product_log(pairs, 0.9 * cmath.exp(0.05j)).value.imag)
print("normalized B(0)      =", product_eval(pairs, 0, normalized=True).value)
