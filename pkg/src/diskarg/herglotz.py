"""Zero-free bounded factors built from a boundary measure.

``h(z) = int (e^{it} + z) / (e^{it} - z) dpsi(t)`` and
``g(z) = exp(-h(z) / (2 pi) + i C')``.

The kernel has the closed-form antiderivative ``t - 2i log(1 - z e^{-it})``
in ``t``, so the integral against a piecewise-linear distribution function
is a finite sum with no quadrature error. Differences of the antiderivative
over a segment are formed as ``log1p`` of a small quantity so that short
segments near ``arg z`` keep full relative accuracy.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field

import numpy as np

from .measures import BoundaryMeasure

__all__ = ["HerglotzSpec", "h_psi", "g_psi", "arg_g", "example2_measure", "kernel_imag"]

TWO_PI = 2 * math.pi
_CHUNK = 1 << 20
# batches at least this large go through the tree
TREE_MIN_POINTS = 256


@dataclass(frozen=True)
class HerglotzSpec:
    measure: BoundaryMeasure = field(default_factory=BoundaryMeasure)
    phase: float = 0.0


def kernel_imag(z, t):
    """``Im (e^{it} + z)/(e^{it} - z) = 2 r sin(phi - t) / |e^{it} - z|^2``."""
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    phi = np.angle(z)
    return 2 * r * np.sin(phi - t) / np.abs(np.exp(1j * t) - z) ** 2


def _segment_integrals(z, t1, t2):
    """``int_{t1}^{t2} (e^{it} + z)/(e^{it} - z) dt`` elementwise.

    The antiderivative difference is ``-2i log(rho)`` with
    ``rho = (1 - z e^{-i t2}) / (1 - z e^{-i t1}) = 1 + w``. For small ``w``
    the logarithm goes through ``log1p``; otherwise ``rho`` is formed from
    the two distances ``e^{it} - z`` directly.
    """
    z, t1, t2 = np.broadcast_arrays(z, t1, t2)
    delta = t2 - t1
    e1 = np.exp(1j * t1)
    d1 = e1 - z
    # 1 - e^{-i delta} without cancellation
    one_minus = 2j * np.sin(delta / 2) * np.exp(-0.5j * delta)
    w = z * one_minus / d1
    re_w = w.real
    abs2 = re_w * re_w + w.imag * w.imag
    with np.errstate(divide="ignore", invalid="ignore"):
        log_re = 0.5 * np.log1p(2 * re_w + abs2)
    log_im = np.arctan2(w.imag, 1 + re_w)
    big = abs2 > 0.25
    if np.any(big):
        e2 = np.exp(1j * t2[big])
        rho = (e2 - z[big]) / d1[big] * (e1[big] / e2)
        log_re[big] = np.log(np.abs(rho))
        log_im[big] = np.angle(rho)
    return (delta + 2 * log_im) - 2j * log_re


class _SegmentTree:
    """Far-field expansions of the continuous part over groups of segments.

    A node covering the arc around ``e^{ic}`` with chord radius ``R`` stores
    ``M_k = int (e^{it} - e^{ic})^k dpsi(t)``. For ``|e^{ic} - z| >= 3R``,
    ``int 2z/(e^{it} - z) dpsi = 2z/w sum_k M_k (-1/w)^k`` with
    ``w = e^{ic} - z``, and the terms fall off like ``3^-k``.
    """

    leaf_size = 16
    order = 34
    far_ratio = 3.0
    max_piece = 0.05

    def __init__(self, m: BoundaryMeasure):
        rho = m.densities()
        keep = rho > 0
        t1 = m.breakpoints[:-1][keep]
        t2 = m.breakpoints[1:][keep]
        rho = rho[keep]
        # cut long segments so the per-piece Gauss rule resolves e^{ikt}
        pieces = np.maximum(1, np.ceil((t2 - t1) / self.max_piece).astype(int))
        if np.any(pieces > 1):
            idx = np.repeat(np.arange(t1.size), pieces)
            j = np.concatenate([np.arange(p) for p in pieces])
            width = (t2 - t1) / pieces
            a = t1[idx] + j * width[idx]
            b = np.where(j == pieces[idx] - 1, t2[idx], a + width[idx])
            t1, t2, rho = a, b, rho[idx]
        self.t1, self.t2, self.rho = t1, t2, rho
        xg, wg = np.polynomial.legendre.leggauss(16)
        half = 0.5 * (t2 - t1)
        self._gl_t = (0.5 * (t1 + t2))[:, None] + half[:, None] * xg[None, :]
        self._gl_w = (rho * half)[:, None] * wg[None, :]
        self._gl_e = np.exp(1j * self._gl_t)
        self.nodes = []
        self.root = self._build(0, t1.size)

    def _build(self, lo, hi):
        t_lo, t_hi = self.t1[lo], self.t2[hi - 1]
        c = 0.5 * (t_lo + t_hi)
        radius = 2 * math.sin(min(0.5 * (t_hi - t_lo), math.pi) / 2)
        ec = complex(math.cos(c), math.sin(c))
        d = (self._gl_e[lo:hi] - ec).ravel()
        w = self._gl_w[lo:hi].ravel().astype(complex)
        mom = np.empty(self.order, dtype=complex)
        for k in range(self.order):
            mom[k] = w.sum()
            w = w * d
        node = {"lo": lo, "hi": hi, "ec": ec, "radius": radius, "mom": mom, "kids": ()}
        if hi - lo > self.leaf_size:
            mid = (lo + hi) // 2
            node["kids"] = (self._build(lo, mid), self._build(mid, hi))
        return node

    def evaluate(self, z):
        """``int (e^{it} + z)/(e^{it} - z) dpsi(t)`` over the continuous part."""
        out = np.zeros(z.shape, dtype=complex)
        # the constant 1 of the kernel integrates to the total mass
        acc = np.zeros(z.shape, dtype=complex)
        stack = [(self.root, np.arange(z.size))]
        while stack:
            node, idx = stack.pop()
            zz = z[idx]
            w = node["ec"] - zz
            far = np.abs(w) >= self.far_ratio * node["radius"]
            if np.any(far):
                wf = w[far]
                y = -1 / wf
                mom = node["mom"]
                poly = np.full(wf.shape, mom[-1])
                for k in range(self.order - 2, -1, -1):
                    poly = poly * y + mom[k]
                acc[idx[far]] += poly / wf
            near = idx[~far]
            if near.size == 0:
                continue
            if node["kids"]:
                for kid in node["kids"]:
                    stack.append((kid, near))
            else:
                lo, hi = node["lo"], node["hi"]
                seg = _segment_integrals(z[near, None], self.t1[None, lo:hi], self.t2[None, lo:hi])
                out[near] += (self.rho[lo:hi] * seg).sum(axis=1)
                # the exact segment formula already contains the constant term
                out[near] -= self.rho[lo:hi] @ (self.t2[lo:hi] - self.t1[lo:hi])
        mass = float(self.rho @ (self.t2 - self.t1))
        return out + mass + 2 * z * acc


_TREES = weakref.WeakKeyDictionary()


def _tree_for(m: BoundaryMeasure) -> _SegmentTree:
    tree = _TREES.get(m)
    if tree is None:
        tree = _SegmentTree(m)
        _TREES[m] = tree
    return tree


def _direct_continuous(flat, m):
    out = np.zeros(flat.shape, dtype=complex)
    rho = m.densities()
    keep = rho > 0
    if not np.any(keep):
        return out
    t1 = m.breakpoints[:-1][keep]
    t2 = m.breakpoints[1:][keep]
    rho = rho[keep]
    step = max(1, _CHUNK // rho.size)
    for i in range(0, flat.size, step):
        blk = flat[i : i + step, None]
        out[i : i + step] = (rho * _segment_integrals(blk, t1, t2)).sum(axis=1)
    return out


def h_psi(z, m: BoundaryMeasure, method: str = "auto"):
    """Herglotz transform of ``m`` at ``z`` (scalar or array, ``|z| < 1``).

    ``method`` is ``"direct"`` (closed form on every segment), ``"tree"``
    (far-field expansions for distant groups of segments) or ``"auto"``,
    which picks the tree for large batches.
    """
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1):
        raise ValueError("z must lie in the open unit disk")
    flat = z_arr.ravel()
    out = np.zeros(flat.shape, dtype=complex)
    for t, mass in m.atoms:
        e = complex(math.cos(t), math.sin(t))
        out += mass * (e + flat) / (e - flat)
    if m.continuous_mass > 0:
        if method == "auto":
            method = "tree" if flat.size >= TREE_MIN_POINTS and m.breakpoints.size > 64 else "direct"
        if method == "tree":
            out += _tree_for(m).evaluate(flat)
        else:
            out += _direct_continuous(flat, m)
    out = out.reshape(z_arr.shape)
    return complex(out) if out.ndim == 0 else out


def _unwrap(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def _spec_parts(spec):
    if isinstance(spec, HerglotzSpec):
        return spec.measure, spec.phase
    if isinstance(spec, BoundaryMeasure):
        return spec, 0.0
    # a BoundedFunctionSpec
    return spec.boundary, spec.Cprime


def g_psi(z, spec):
    """``exp(-h(z)/(2 pi) + i C')``."""
    m, phase = _spec_parts(spec)
    return _unwrap(np.exp(-np.asarray(h_psi(z, m)) / TWO_PI + 1j * phase))


def arg_g(z, spec):
    """Continuous argument ``-Im h(z)/(2 pi) + C'`` (not reduced mod ``2 pi``)."""
    m, phase = _spec_parts(spec)
    return _unwrap(-np.imag(h_psi(z, m)) / TWO_PI + phase)


def log_g(z, spec):
    m, phase = _spec_parts(spec)
    return _unwrap(-np.asarray(h_psi(z, m)) / TWO_PI + 1j * phase)


def _power_mesh(alpha: float, tol: float) -> np.ndarray:
    """Breakpoints on ``[0, pi]`` for interpolating ``t^{1-alpha}`` within ``tol``."""
    b = 1 - alpha
    # worst gap of the chord through (0, 0) and (t1, t1^b): c * t1^b
    x_star = b ** (1 / (1 - b))
    c = x_star ** b - x_star
    t1 = min(math.pi, (tol / c) ** (1 / b))
    # interior chords: error <= dt^2 / 8 * b (1 - b) a^{b - 2}
    coef = 8 * tol / (b * (1 - b))
    pts = [0.0, t1]
    a = t1
    while a < math.pi:
        a = a + math.sqrt(coef * a ** (2 - b))
        pts.append(min(a, math.pi))
    if pts[-1] - pts[-2] < 1e-3 * pts[-1] and len(pts) > 3:
        # a sliver at the end: share the last two gaps evenly, neither grows
        pts[-2] = 0.5 * (pts[-3] + pts[-1])
    return np.array(pts)


def example2_measure(alpha: float, tol: float = 1e-6) -> BoundaryMeasure:
    """Piecewise-linear approximation of ``psi(t) = sign(t) |t|^{1 - alpha}``.

    The mesh is graded toward ``t = 0`` so that the interpolant stays within
    ``tol`` of the exact distribution function everywhere.
    """
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    if alpha == 0:
        return BoundaryMeasure((), [-math.pi, math.pi], [-math.pi, math.pi])
    pos = _power_mesh(alpha, tol)
    bp = np.concatenate([-pos[:0:-1], pos])
    vals = np.sign(bp) * np.abs(bp) ** (1 - alpha)
    return BoundaryMeasure((), bp, vals)
