"""Local concentration of zeros and the compensated logarithm.

``n_z(h)`` counts zeros in the closed disk of radius ``h (1 - |z|)`` about
``z``; ``N_z(h) = sum ln(h (1 - |z|) / |z - a_n|)`` over the same zeros.
Adding ``N_z(h)`` to ``log f`` removes the logarithmic poles of ``log|f|``
so that ``L(z, h, f) = log f(z) + N_z(h)`` has ``Re L <= 0``.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .blaschke import AT_ZERO_REL, ZeroSequence, _log_factor_terms
from .bounded import log_f
from .errors import AtZeroError
from .geometry import a_kernel
from .measures import BoundedFunctionSpec

__all__ = [
    "LocalCount",
    "local_count",
    "local_count_many",
    "L_value",
    "tsuji_bound_check",
    "lower_bound_constant",
]


@dataclass(frozen=True)
class LocalCount:
    n: int
    N: float


def _check_h(h):
    if not 0 < h < 1:
        raise ValueError("h must lie in (0, 1)")


def local_count(zs: ZeroSequence, z, h: float = 0.5) -> LocalCount:
    """Zeros within ``h (1 - |z|)`` of ``z`` and their log-sum."""
    _check_h(h)
    z = complex(z)
    rho = h * (1 - abs(z))
    if not len(zs):
        return LocalCount(0, 0.0)
    d = np.abs(zs.zeros - z)
    if np.any(d <= AT_ZERO_REL * (1 - abs(z))):
        raise AtZeroError(f"z = {z} coincides with a zero")
    inside = d <= rho
    n = int(np.count_nonzero(inside))
    if n == 0:
        return LocalCount(0, 0.0)
    return LocalCount(n, math.fsum(np.log(rho / d[inside])))


_TREES = weakref.WeakKeyDictionary()


def _zero_tree(zs: ZeroSequence) -> cKDTree:
    tree = _TREES.get(zs)
    if tree is None:
        tree = cKDTree(np.column_stack([zs.zeros.real, zs.zeros.imag]))
        _TREES[zs] = tree
    return tree


def local_count_many(zs: ZeroSequence, z, h: float = 0.5) -> np.ndarray:
    """``N_z(h)`` at many points (no at-zero check)."""
    _check_h(h)
    z = np.asarray(z, dtype=complex).ravel()
    out = np.zeros(z.shape)
    if not len(zs):
        return out
    rho = h * (1 - np.abs(z))
    tree = _zero_tree(zs)
    hits = tree.query_ball_point(np.column_stack([z.real, z.imag]), rho)
    lens = np.fromiter((len(x) for x in hits), dtype=np.intp, count=z.size)
    if lens.sum() == 0:
        return out
    pt = np.repeat(np.arange(z.size), lens)
    zi = np.concatenate([np.asarray(x, dtype=np.intp) for x in hits if x])
    d = np.abs(zs.zeros[zi] - z[pt])
    # the ball query is closed up to rounding; enforce the definition exactly
    ok = d <= rho[pt]
    with np.errstate(divide="ignore"):
        terms = np.log(rho[pt][ok] / d[ok])
    np.add.at(out, pt[ok], terms)
    return out


def L_value(spec: BoundedFunctionSpec, z, h: float = 0.5, tol: float = 1e-10) -> complex:
    """``L(z, h, f) = log f(z) + N_z(h)``."""
    lc = local_count(spec.zeros, z, h)
    return log_f(spec, z, tol) + lc.N


def tsuji_bound_check(zs: ZeroSequence, z):
    """Both sides of ``sum -ln|b| <= 2 sum |A|`` over factors with ``|A| < 1/2``."""
    z = complex(z)
    if not len(zs):
        return 0.0, 0.0
    A = a_kernel(z, zs.zeros)
    sel = np.abs(A) < 0.5
    if not np.any(sel):
        return 0.0, 0.0
    logs = _log_factor_terms(z, zs.zeros[sel])
    return math.fsum(-logs.real), 2 * math.fsum(np.abs(A[sel]))


def lower_bound_constant(h: float) -> float:
    """A constant ``C(h)`` with ``Re L(z, h, B) >= -C(h) sum |A(z, a_n)|``.

    Valid when every zero has ``|a_n| >= 1/2``. Factors with ``|A| < 1/2``
    contribute at most ``2|A|``; the others, near or far, at most
    ``ln Q`` with ``Q = (4 + 2h) / (h (1 - h))``, and near zeros have
    ``|A| >= (1 - h) / (2 + h)``.
    """
    _check_h(h)
    lnq = math.log((4 + 2 * h) / (h * (1 - h)))
    c1 = (1 - h) / (2 + h)
    return max(2.0, 2 * lnq, lnq / c1)
