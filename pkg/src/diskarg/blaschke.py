"""Blaschke factors, products and the continuous branch of their logarithm.

The factor attached to a zero ``a`` is ``b(z, a) = conj(a) (a - z) / (1 - z conj(a))``;
it satisfies ``b = 1 - A(z, a)`` which is how small contributions are
evaluated without cancellation. The logarithm of the product is the sum of
principal logarithms of the factors, which is continuous off the radial cuts
``{tau a : tau >= 1}``; on a cut the argument is set to ``-pi``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from .errors import AtZeroError, TailBoundExceeded

__all__ = [
    "Tail",
    "ZeroSequence",
    "ProductLog",
    "BlaschkeValue",
    "factor",
    "factor_arg",
    "on_cut",
    "product_log",
    "product_eval",
    "blaschke_sum",
    "log_blaschke_many",
    "ClusterExpansion",
    "complex_fsum",
]

CUT_ANGLE_TOL = 1e-12
# z is "at a zero" when closer than this multiple of 1 - |z|
AT_ZERO_REL = 1e-14
# sqrt(2^2 + pi^2): |log b| <= this * |A| whenever |A| < 1/2
_TAIL_LOG_CONST = math.hypot(2.0, math.pi)
_TAIL_KINDS = ("none", "geometric", "power")


def complex_fsum(values) -> complex:
    """Correctly rounded sum of real and imaginary parts separately."""
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real), math.fsum(values.imag))


@dataclass(frozen=True)
class Tail:
    """Descriptor of the zeros left out of a materialized sequence.

    ``kind`` is ``"none"``, ``"geometric"`` or ``"power"``. ``count`` is the
    index of the last materialized term of the underlying sequence.

    * geometric: the masses ``1 - |a|`` keep decreasing by ``param`` per
      term, starting from the mass of the last materialized zero;
    * power: the mass of term ``j`` is ``j ** -param`` for ``j > count``.
    """

    kind: str = "none"
    param: float = 0.0
    count: int = 0

    def __post_init__(self):
        if self.kind not in _TAIL_KINDS:
            raise ValueError(f"unknown tail kind {self.kind!r}")
        if self.kind == "geometric" and not 0 < self.param < 1:
            raise ValueError("geometric tail needs a ratio in (0, 1)")
        if self.kind == "power" and not self.param > 1:
            raise ValueError("power tail needs an exponent > 1 (Blaschke condition)")

    def first_mass(self, last_mass: float) -> float:
        if self.kind == "geometric":
            return last_mass * self.param
        if self.kind == "power":
            return (self.count + 1.0) ** -self.param
        return 0.0

    def mass_power_sum(self, last_mass: float, exponent: float = 1.0) -> float:
        """``sum over the tail of (1 - |a|) ** exponent``; ``inf`` if divergent."""
        if self.kind == "none":
            return 0.0
        if self.kind == "geometric":
            q = self.param ** exponent
            return last_mass ** exponent * q / (1 - q)
        s = self.param * exponent
        if s <= 1:
            return math.inf
        return float(hurwitz_zeta(s, self.count + 1.0))

    def to_dict(self):
        return {"kind": self.kind, "param": self.param, "count": self.count}


class ZeroSequence:
    """Ordered zeros ``a_n`` with ``0 < |a_n| < 1`` plus an optional tail.

    The stored order is the summation order for every sum over zeros.
    """

    def __init__(self, zeros=(), tail: Optional[Tail] = None):
        z = np.array(zeros, dtype=complex).ravel()
        mod = np.abs(z)
        if z.size and not (np.all(mod > 0) and np.all(mod < 1)):
            raise ValueError("zeros must satisfy 0 < |a| < 1")
        z.setflags(write=False)
        self._zeros = z
        self.tail = tail if tail is not None else Tail()
        self._expansions = {}

    @property
    def zeros(self) -> np.ndarray:
        return self._zeros

    @property
    def masses(self) -> np.ndarray:
        """``1 - |a_n|`` for the materialized zeros."""
        return 1 - np.abs(self._zeros)

    def __len__(self):
        return self._zeros.size

    def __iter__(self):
        return iter(self._zeros)

    def __repr__(self):
        return f"ZeroSequence({self._zeros.size} zeros, tail={self.tail.kind})"

    def last_mass(self) -> float:
        return float(1 - abs(self._zeros[-1])) if self._zeros.size else 1.0

    def concat(self, other: "ZeroSequence") -> "ZeroSequence":
        if self.tail.kind != "none" and other.tail.kind != "none":
            raise ValueError("cannot concatenate two sequences that both carry tails")
        tail = self.tail if self.tail.kind != "none" else other.tail
        return ZeroSequence(np.concatenate([self._zeros, other._zeros]), tail)

    __add__ = concat

    def select(self, mask, keep_tail=False) -> "ZeroSequence":
        mask = np.asarray(mask, dtype=bool)
        return ZeroSequence(self._zeros[mask], self.tail if keep_tail else None)

    # -- serialization -------------------------------------------------
    def to_dict(self):
        return {
            "zeros": [[float(a.real), float(a.imag)] for a in self._zeros],
            "tail": self.tail.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        zeros = [complex(re, im) for re, im in d.get("zeros", [])]
        t = d.get("tail") or {}
        tail = Tail(t.get("kind", "none"), float(t.get("param", 0.0)), int(t.get("count", 0)))
        return cls(zeros, tail)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "ZeroSequence":
        return cls.from_dict(json.loads(text))

    def expansion(self, center: complex) -> "ClusterExpansion":
        key = complex(center)
        if key not in self._expansions:
            self._expansions[key] = ClusterExpansion(self._zeros, key)
        return self._expansions[key]


# --------------------------------------------------------------------------
# single factors


def factor(z, xi):
    """``b(z, xi) = conj(xi) (xi - z) / (1 - z conj(xi))``."""
    xc = np.conj(xi)
    return xc * (xi - z) / (1 - z * xc)


def on_cut(z, xi, tol: float = CUT_ANGLE_TOL):
    """True when ``z = tau * xi`` for some real ``tau >= 1`` (within ``tol`` in angle)."""
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    prod = z * np.conj(xi)
    res = (np.abs(z) >= np.abs(xi) * (1 - 4e-16)) & (np.abs(z) < 1) & (
        np.abs(np.angle(prod)) <= tol
    ) & (np.abs(xi) > 0)
    return bool(res) if res.ndim == 0 else res


def factor_arg(z, xi) -> float:
    """Principal argument of ``b(z, xi)``, equal to ``-pi`` on the cut of ``xi``."""
    z = complex(z)
    xi = complex(xi)
    if z == xi:
        raise AtZeroError(f"z coincides with the zero {xi}")
    if on_cut(z, xi):
        return -math.pi
    A = (1 - abs(xi) ** 2) / (1 - z * xi.conjugate())
    if abs(A) < 0.5:
        return math.atan2(-A.imag, 1 - A.real)
    b = factor(z, xi)
    return math.atan2(b.imag, b.real)


def _log_factor_terms(w, a):
    """Principal ``log b(w, a)`` elementwise (broadcasting ``w`` against ``a``).

    Uses ``b = 1 - A`` where ``|A| < 1/2`` and the factored form elsewhere.
    A factor equal to a negative real number gets argument ``-pi``.
    """
    w = np.asarray(w, dtype=complex)
    a = np.asarray(a, dtype=complex)
    ac = np.conj(a)
    mod_a = np.abs(a)
    m2 = (1 - mod_a) * (1 + mod_a)
    den = 1 - w * ac
    A = m2 / den
    absA = np.abs(A)
    re = 0.5 * np.log1p(-2 * A.real + absA * absA)
    im = np.arctan2(-A.imag, 1 - A.real)
    big = absA >= 0.5
    if np.any(big):
        wb, ab = np.broadcast_arrays(w, a)
        wb, ab = wb[big], ab[big]
        denb = np.broadcast_to(den, big.shape)[big]
        num = np.conj(ab) * (ab - wb)
        re = np.array(re, copy=True)
        im = np.array(im, copy=True)
        re[big] = np.log(np.abs(ab)) + np.log(np.abs(ab - wb)) - np.log(np.abs(denb))
        im[big] = np.angle(num / denb)
    im = np.where(im == math.pi, -math.pi, im)
    return re + 1j * im


# --------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class ProductLog:
    """``log B(z)`` on the continuous branch, with bookkeeping.

    ``tail_bound`` bounds ``|log B(z) - value|`` due to unmaterialized zeros.
    ``on_cut`` is set when ``z`` lies on at least one radial cut;
    ``cut_multiplicity`` counts how many.
    """

    value: complex
    tail_bound: float = 0.0
    on_cut: bool = False
    cut_multiplicity: int = 0

    @property
    def arg(self) -> float:
        return self.value.imag


@dataclass(frozen=True)
class BlaschkeValue:
    value: complex
    at_zero: bool = False
    tail_bound: float = 0.0


def tail_log_bound(zs: ZeroSequence, z_abs: float) -> float:
    """Bound on ``|sum over the tail of log b(z, a)|`` for ``|z| = z_abs``.

    Every tail zero has ``|A(z, a)| <= 2 (1 - |a|) / (1 - |z|)``; when that is
    below 1/2 each term obeys ``|log b| <= sqrt(4 + pi^2) |A|``.
    """
    tail = zs.tail
    if tail.kind == "none":
        return 0.0
    last = zs.last_mass()
    gap = 1 - z_abs
    if 2 * tail.first_mass(last) / gap >= 0.5:
        return math.inf
    return _TAIL_LOG_CONST * 2 * tail.mass_power_sum(last) / gap


def _check_not_at_zero(zs: ZeroSequence, z: complex):
    if not len(zs):
        return
    d = np.abs(zs.zeros - z)
    if np.any(d <= AT_ZERO_REL * (1 - abs(z))):
        raise AtZeroError(f"z = {z} coincides with a zero")


def product_log(zs: ZeroSequence, z, tol: float = 1e-10) -> ProductLog:
    """Continuous branch of ``log B(z) = sum_n log b(z, a_n)``.

    Raises :class:`TailBoundExceeded` if the tail descriptor cannot bound the
    omitted zeros by ``tol``, and :class:`AtZeroError` at a zero.
    """
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("z must lie in the open unit disk")
    bound = tail_log_bound(zs, abs(z))
    if bound > tol:
        raise TailBoundExceeded(
            f"tail of {zs!r} bounded only by {bound:.3e} > tol {tol:.3e} at |z|={abs(z):.6g}",
            bound=bound,
            tol=tol,
        )
    if not len(zs):
        return ProductLog(0j, bound)
    _check_not_at_zero(zs, z)
    if z == 0:
        # b(0, a) = |a|^2 exactly, so the argument vanishes
        return ProductLog(complex(2 * math.fsum(np.log(np.abs(zs.zeros))), 0.0), bound)
    terms = _log_factor_terms(z, zs.zeros)
    cuts = on_cut(z, zs.zeros)
    ncut = int(np.count_nonzero(cuts))
    if ncut:
        terms = terms.real + 1j * np.where(cuts, -math.pi, terms.imag)
    return ProductLog(complex_fsum(terms), bound, ncut > 0, ncut)


def product_eval(zs: ZeroSequence, z, tol: float = 1e-10, normalized: bool = False) -> BlaschkeValue:
    """``B(z)`` (or the normalized product when ``normalized``)."""
    z = complex(z)
    try:
        pl = product_log(zs, z, tol)
    except AtZeroError:
        return BlaschkeValue(0j, at_zero=True)
    val = np.exp(pl.value)
    if normalized and len(zs):
        val *= math.exp(-math.fsum(np.log(np.abs(zs.zeros))))
    return BlaschkeValue(complex(val), False, pl.tail_bound)


def blaschke_sum(zs: ZeroSequence) -> float:
    """``sum (1 - |a_n|)`` including the closed-form tail mass."""
    s = math.fsum(zs.masses) if len(zs) else 0.0
    return s + zs.tail.mass_power_sum(zs.last_mass())


# --------------------------------------------------------------------------
# many evaluation points


class ClusterExpansion:
    """Multipole expansion of ``sum log b(w, a_n)`` for zeros near a center.

    With ``p = a - c`` and ``q = 1/conj(a) - c``,
    ``log b(w, a) = sum_k (q^k - p^k) / (k (w - c)^k)``, valid and equal to the
    principal branch once ``max(|p|, |q|) < |w - c|``. Zeros are sorted by
    ``R = max(|p|, |q|)`` so that any cluster ``R <= rho`` is a prefix whose
    moments are read off a cumulative table.
    """

    max_order = 48

    def __init__(self, zeros, center: complex):
        zeros = np.asarray(zeros, dtype=complex)
        self.center = complex(center)
        c = self.center
        p = zeros - c
        ac = np.conj(zeros)
        q = (1 - c * ac) / ac
        R = np.maximum(np.abs(p), np.abs(q))
        order = np.argsort(R, kind="stable")
        self.order = order
        self.radii = R[order]
        # only zeros with R < 1 can ever be clustered (targets lie in the disk)
        n_tab = int(np.searchsorted(self.radii, 1.0, side="left"))
        self._n_tab = n_tab
        if n_tab:
            pp = p[order[:n_tab]]
            qq = q[order[:n_tab]]
            mom = np.empty((n_tab, self.max_order), dtype=complex)
            pk = np.ones(n_tab, dtype=complex)
            qk = np.ones(n_tab, dtype=complex)
            for k in range(self.max_order):
                pk = pk * pp
                qk = qk * qq
                mom[:, k] = qk - pk
            self._cum = np.cumsum(mom, axis=0)
        else:
            self._cum = np.zeros((0, self.max_order), dtype=complex)

    def split(self, rho: float) -> int:
        """Number of leading (sorted) zeros with ``R <= rho``."""
        return int(min(np.searchsorted(self.radii, rho, side="right"), self._n_tab))

    def order_needed(self, n: int, ratio: float, eps: float = 1e-17) -> int:
        if n == 0:
            return 0
        for k in range(4, self.max_order + 1):
            if 2 * n * ratio ** (k + 1) / ((k + 1) * (1 - ratio)) <= eps:
                return k
        return self.max_order

    def evaluate(self, w, n: int, order: int):
        """Sum over the first ``n`` sorted zeros, truncated at ``order`` terms."""
        w = np.asarray(w, dtype=complex)
        if n == 0 or order == 0:
            return np.zeros(w.shape, dtype=complex)
        mom = self._cum[n - 1, :order]
        y = 1 / (w - self.center)
        acc = np.zeros(w.shape, dtype=complex)
        for k in range(order, 0, -1):
            acc = (acc + mom[k - 1] / k) * y
        return acc


_CHUNK = 1 << 21


def _exact_sum_many(w, zeros):
    out = np.empty(w.shape, dtype=complex)
    if zeros.size == 0:
        out[:] = 0
        return out
    step = max(1, _CHUNK // zeros.size)
    flat_w = w.ravel()
    flat_o = out.ravel()
    for i in range(0, flat_w.size, step):
        blk = flat_w[i : i + step, None]
        flat_o[i : i + step] = _log_factor_terms(blk, zeros[None, :]).sum(axis=1)
    return flat_o.reshape(w.shape)


def log_blaschke_many(zs: ZeroSequence, w, center=None, cluster_ratio: float = 0.25):
    """``log B`` at many points (materialized zeros only).

    Sums use numpy's pairwise reduction. When ``center`` (a point of the
    circle where zeros accumulate) is given, zeros within
    ``cluster_ratio * min|w - center|`` of it are folded into a multipole
    expansion; the rest are summed exactly. Points must avoid cuts for the
    result to be the continuous branch.
    """
    w = np.asarray(w, dtype=complex)
    zeros = zs.zeros
    if zeros.size == 0:
        return np.zeros(w.shape, dtype=complex)
    if center is None or zeros.size < 64 or w.size == 0:
        return _exact_sum_many(w, zeros)
    exp = zs.expansion(center)
    d = float(np.min(np.abs(w - exp.center)))
    n = exp.split(cluster_ratio * d)
    if n < 16:
        return _exact_sum_many(w, zeros)
    ratio = exp.radii[n - 1] / d
    k = exp.order_needed(n, ratio)
    rest = zeros[exp.order[n:]]
    return exp.evaluate(w, n, k) + _exact_sum_many(w, rest)
