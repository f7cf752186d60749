"""Logarithm of a factorized bounded function ``f = C z^p B~ g``.

The Blaschke part uses the unnormalized product ``B`` (so ``log B(0)`` has
zero imaginary part), matching the branch on which the argument is tracked.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .blaschke import log_blaschke_many, product_log, tail_log_bound
from .herglotz import h_psi
from .measures import BoundedFunctionSpec

__all__ = ["log_f", "log_f_many", "arg_f_many"]

TWO_PI = 2 * math.pi


def log_f(spec: BoundedFunctionSpec, z, tol: float = 1e-10) -> complex:
    """``log B(z) + log C + p log z + log g(z)`` on the continuous branch."""
    z = complex(z)
    out = product_log(spec.zeros, z, tol).value + math.log(spec.C)
    if spec.p:
        if z == 0:
            return complex(-math.inf, 0.0)
        out += spec.p * cmath.log(z)
    out += -complex(h_psi(z, spec.boundary)) / TWO_PI + 1j * spec.Cprime
    return out


def log_f_many(spec: BoundedFunctionSpec, z, center=None):
    """Vectorized :func:`log_f` over materialized zeros.

    ``center`` is the boundary point where zeros accumulate, used to fold
    distant clusters into a multipole expansion. The neglected tail is
    bounded by :func:`tail_bound_many`.
    """
    z = np.asarray(z, dtype=complex)
    out = log_blaschke_many(spec.zeros, z, center) + math.log(spec.C)
    if spec.p:
        out = out + spec.p * np.log(z)
    if not spec.boundary.is_empty():
        out = out - np.asarray(h_psi(z, spec.boundary)) / TWO_PI
    return out + 1j * spec.Cprime


def arg_f_many(spec: BoundedFunctionSpec, z, center=None):
    return np.imag(log_f_many(spec, z, center))


def tail_bound_many(spec: BoundedFunctionSpec, z_abs_max: float) -> float:
    """Bound on the unmaterialized tail for every ``|z| <= z_abs_max``."""
    return tail_log_bound(spec.zeros, z_abs_max)
