"""Boundary measures, complete measures and Frostman-type quantities.

A boundary measure is a finite sum of atoms plus an absolutely continuous
part given by a piecewise-linear non-decreasing distribution function on
``[-pi, pi]``. Together with the masses ``1 - |a_n|`` placed at the zeros it
forms the complete measure of a bounded analytic function.

Distances to a boundary point are chordal, ``|e^{it} - zeta| = 2|sin(u/2)|``
with ``u = t - theta``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import beta as beta_fn
from scipy.special import betainc

from .blaschke import ZeroSequence
from .errors import DiskargError
from .geometry import BoundaryPoint, wrap_angle

__all__ = [
    "BoundaryMeasure",
    "CompleteMeasure",
    "BoundedFunctionSpec",
    "FrostmanResult",
    "complete_measure_ball",
    "frostman_integral",
    "frostman_sum",
    "divisor_split",
    "dominates",
    "modulus_of_continuity",
    "frostman_via_modulus",
]

TWO_PI = 2 * math.pi
ATOM_ANGLE_TOL = 1e-12
# three successive shells each growing the running sum by more than this
SHELL_GROWTH = 0.10
SHELL_GROWTH_RUN = 3


def _as_theta(p) -> float:
    if isinstance(p, BoundaryPoint):
        return p.theta
    if isinstance(p, complex):
        return math.atan2(p.imag, p.real)
    return wrap_angle(float(p))


class BoundaryMeasure:
    """Atoms plus a piecewise-linear distribution function on ``[-pi, pi]``.

    Parameters
    ----------
    atoms : sequence of (theta, mass)
        Point masses on the circle; angles are wrapped into ``(-pi, pi]``.
    breakpoints, values : array_like, optional
        Strictly increasing angles in ``[-pi, pi]`` and the non-decreasing
        values of the distribution function there. Outside the breakpoint
        range the function is constant.
    """

    def __init__(self, atoms=(), breakpoints=None, values=None):
        atoms = [(wrap_angle(float(t)), float(m)) for t, m in atoms]
        atoms = [(t, m) for t, m in atoms if m != 0.0]
        for _, m in atoms:
            if not (m > 0 and math.isfinite(m)):
                raise ValueError("atom masses must be positive and finite")
        atoms.sort()
        for (t1, _), (t2, _) in zip(atoms, atoms[1:]):
            if t2 - t1 <= ATOM_ANGLE_TOL:
                raise ValueError("atoms must sit at distinct angles")
        self.atoms = tuple(atoms)
        if breakpoints is None or len(breakpoints) < 2:
            bp = np.array([-math.pi, math.pi])
            vals = np.zeros(2)
        else:
            bp = np.asarray(breakpoints, dtype=float).copy()
            vals = np.asarray(values, dtype=float).copy()
            if bp.shape != vals.shape:
                raise ValueError("breakpoints and values must have the same length")
            if np.any(np.diff(bp) <= 0):
                raise ValueError("breakpoints must be strictly increasing")
            if bp[0] < -math.pi - 1e-12 or bp[-1] > math.pi + 1e-12:
                raise ValueError("breakpoints must lie in [-pi, pi]")
            if np.any(np.diff(vals) < 0):
                raise ValueError("distribution function must be non-decreasing")
        bp.setflags(write=False)
        vals.setflags(write=False)
        self.breakpoints = bp
        self.values = vals

    # -- basic queries -------------------------------------------------
    @property
    def atom_mass(self) -> float:
        return math.fsum(m for _, m in self.atoms)

    @property
    def continuous_mass(self) -> float:
        return float(self.values[-1] - self.values[0])

    @property
    def total_mass(self) -> float:
        return self.atom_mass + self.continuous_mass

    def is_empty(self) -> bool:
        return not self.atoms and self.continuous_mass == 0

    def densities(self) -> np.ndarray:
        """Density on each breakpoint interval."""
        return np.diff(self.values) / np.diff(self.breakpoints)

    def cdf(self, t):
        """Continuous part of the distribution function at ``t`` in ``[-pi, pi]``."""
        return np.interp(t, self.breakpoints, self.values)

    def atom_at(self, theta, tol: float = ATOM_ANGLE_TOL) -> float:
        theta = _as_theta(theta)
        for t, m in self.atoms:
            if abs(wrap_angle(t - theta)) <= tol:
                return m
        return 0.0

    def arc_mass(self, theta: float, half_width: float) -> float:
        """Mass of the closed arc ``|wrap(t - theta)| <= half_width``."""
        if half_width >= math.pi:
            return self.total_mass
        theta = wrap_angle(theta)
        atom = math.fsum(
            m for t, m in self.atoms if abs(wrap_angle(t - theta)) <= half_width
        )
        return atom + self._continuous_arc(theta - half_width, theta + half_width)

    def _continuous_arc(self, lo: float, hi: float) -> float:
        # lo, hi are within (-2 pi, 2 pi) and hi - lo < 2 pi
        pieces = []
        if lo < -math.pi:
            pieces += [(lo + TWO_PI, math.pi), (-math.pi, hi)]
        elif hi > math.pi:
            pieces += [(lo, math.pi), (-math.pi, hi - TWO_PI)]
        else:
            pieces.append((lo, hi))
        return math.fsum(float(self.cdf(b) - self.cdf(a)) for a, b in pieces)

    def ball_mass(self, zeta, tau: float) -> float:
        """Mass of ``{e^{it} : |e^{it} - zeta| <= tau}``."""
        if tau >= 2:
            return self.total_mass
        theta = _as_theta(zeta)
        atom = math.fsum(
            m for t, m in self.atoms if abs(2 * math.sin(wrap_angle(t - theta) / 2)) <= tau
        )
        return atom + self._continuous_arc(theta - 2 * math.asin(tau / 2), theta + 2 * math.asin(tau / 2))

    # -- construction --------------------------------------------------
    def scaled(self, factor: float) -> "BoundaryMeasure":
        if factor < 0:
            raise ValueError("scale factor must be non-negative")
        if factor == 0:
            return BoundaryMeasure()
        return BoundaryMeasure(
            [(t, m * factor) for t, m in self.atoms], self.breakpoints, self.values * factor
        )

    def split(self, fraction: float):
        """``(fraction * self, self - fraction * self)``.

        The second part is formed by subtraction so the two parts add back to
        the original up to one rounding per value.
        """
        if not 0 <= fraction <= 1:
            raise ValueError("fraction must lie in [0, 1]")
        first_atoms = [(t, m * fraction) for t, m in self.atoms]
        rest_atoms = [(t, m - mf) for (t, m), (_, mf) in zip(self.atoms, first_atoms)]
        v1 = self.values * fraction
        v2 = self.values - v1
        # monotonicity of the remainder can be broken by one ulp; restore it
        v2 = np.maximum.accumulate(v2)
        return (
            BoundaryMeasure(first_atoms, self.breakpoints, v1),
            BoundaryMeasure(rest_atoms, self.breakpoints, v2),
        )

    @classmethod
    def atom(cls, theta: float, mass: float) -> "BoundaryMeasure":
        return cls([(theta, mass)])

    @classmethod
    def lebesgue(cls, density: float = 1.0) -> "BoundaryMeasure":
        return cls((), [-math.pi, math.pi], [-math.pi * density, math.pi * density])

    def __repr__(self):
        return (
            f"BoundaryMeasure({len(self.atoms)} atoms, {self.breakpoints.size} breakpoints, "
            f"mass={self.total_mass:.6g})"
        )

    # -- serialization -------------------------------------------------
    def to_dict(self):
        return {
            "atoms": [[t, m] for t, m in self.atoms],
            "cdf": {
                "breakpoints": self.breakpoints.tolist(),
                "values": self.values.tolist(),
            },
        }

    @classmethod
    def from_dict(cls, d):
        cdf = d.get("cdf") or {}
        return cls(d.get("atoms", ()), cdf.get("breakpoints"), cdf.get("values"))

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class CompleteMeasure:
    """Masses ``1 - |a_n|`` at the zeros plus a boundary measure."""

    zero_part: ZeroSequence = field(default_factory=ZeroSequence)
    boundary_part: BoundaryMeasure = field(default_factory=BoundaryMeasure)

    @property
    def total_mass(self) -> float:
        from .blaschke import blaschke_sum

        return blaschke_sum(self.zero_part) + self.boundary_part.total_mass


@dataclass(frozen=True)
class BoundedFunctionSpec:
    """``f = C z^p B~ g`` with zeros, a boundary measure and a phase.

    ``C`` is the scale, ``p`` the order of the zero at the origin and
    ``Cprime`` the constant phase inside the zero-free factor.
    """

    C: float = 1.0
    p: int = 0
    zeros: ZeroSequence = field(default_factory=ZeroSequence)
    boundary: BoundaryMeasure = field(default_factory=BoundaryMeasure)
    Cprime: float = 0.0

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("scale C must be positive")
        if int(self.p) != self.p or self.p < 0:
            raise ValueError("origin order p must be a non-negative integer")

    @property
    def complete_measure(self) -> CompleteMeasure:
        return CompleteMeasure(self.zeros, self.boundary)

    def to_dict(self):
        return {
            "C": self.C,
            "p": int(self.p),
            "Cprime": self.Cprime,
            "zeros": self.zeros.to_dict(),
            "boundary": self.boundary.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            C=float(d.get("C", 1.0)),
            p=int(d.get("p", 0)),
            zeros=ZeroSequence.from_dict(d.get("zeros", {})),
            boundary=BoundaryMeasure.from_dict(d.get("boundary", {})),
            Cprime=float(d.get("Cprime", 0.0)),
        )

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# balls and moduli of continuity


def _zero_ball_masses(zs: ZeroSequence, zeta: complex, taus) -> np.ndarray:
    taus = np.asarray(taus, dtype=float)
    if not len(zs):
        return np.zeros(taus.shape)
    d = np.abs(zs.zeros - zeta)
    order = np.argsort(d, kind="stable")
    cum = np.cumsum(zs.masses[order])
    idx = np.searchsorted(d[order], taus, side="right")
    return np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.0)


def complete_measure_ball(lam: CompleteMeasure, zeta, tau: float) -> float:
    """Mass of the closed disk of radius ``tau`` about ``zeta``.

    Only materialized zeros are counted.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    theta = _as_theta(zeta)
    zc = complex(math.cos(theta), math.sin(theta))
    zs = lam.zero_part
    zero_mass = 0.0
    if len(zs):
        inside = np.abs(zs.zeros - zc) <= tau
        zero_mass = math.fsum(zs.masses[inside])
    return zero_mass + lam.boundary_part.ball_mass(theta, tau)


def modulus_of_continuity(lam: CompleteMeasure, zeta0, taus) -> np.ndarray:
    """``omega(tau) = lambda(closed disk(zeta0, tau))`` for each ``tau``."""
    taus = np.asarray(taus, dtype=float)
    if np.any(taus <= 0):
        raise ValueError("taus must be positive")
    theta = _as_theta(zeta0)
    zc = complex(math.cos(theta), math.sin(theta))
    out = _zero_ball_masses(lam.zero_part, zc, taus)
    bm = lam.boundary_part
    half = 2 * np.arcsin(np.minimum(taus, 2.0) / 2)
    cont = bm.cdf(np.minimum(theta + half, math.pi)) - bm.cdf(np.maximum(theta - half, -math.pi))
    # wrapped-around pieces
    over = theta + half - TWO_PI
    cont += np.where(over > -math.pi, bm.cdf(np.minimum(over, math.pi)) - bm.values[0], 0.0)
    under = theta - half + TWO_PI
    cont += np.where(under < math.pi, bm.values[-1] - bm.cdf(np.maximum(under, -math.pi)), 0.0)
    cont = np.where(taus >= 2, bm.continuous_mass, np.minimum(cont, bm.continuous_mass))
    atoms = np.zeros(taus.shape)
    for t, m in bm.atoms:
        dist = abs(2 * math.sin(wrap_angle(t - theta) / 2))
        atoms += np.where(taus >= dist, m, 0.0)
    out = out + cont + atoms
    return np.maximum.accumulate(out) if out.ndim else out


# --------------------------------------------------------------------------
# Frostman quantities


@dataclass(frozen=True)
class FrostmanResult:
    """Value of ``int d lambda / |zeta0 - zeta|^{1 - gamma}``.

    ``value`` is ``inf`` when ``divergent``; ``certificate`` names the reason.
    ``tail_bound`` bounds the part of the zero sum that is not included.
    """

    value: float
    divergent: bool = False
    certificate: str = ""
    zero_part: float = 0.0
    boundary_part: float = 0.0
    tail_bound: float = 0.0

    @property
    def finite(self) -> bool:
        return not self.divergent


def _zero_frostman(zs: ZeroSequence, theta0: float, gamma: float):
    """Materialized sum, plus the tail when it lies on the ray toward the vertex.

    Returns ``(value, tail_bound, divergent)``. Tail zeros are taken to
    continue radially along the direction of the last materialized zero.
    """
    zc = complex(math.cos(theta0), math.sin(theta0))
    if len(zs):
        d = np.abs(zc - zs.zeros)
        if np.any(d == 0):
            raise DiskargError("a zero coincides with the vertex")
        value = math.fsum(zs.masses * d ** (gamma - 1))
    else:
        value = 0.0
    tail = zs.tail
    if tail.kind == "none" or not len(zs):
        return value, 0.0, False
    last = zs.zeros[-1]
    last_mass = zs.last_mass()
    ray_gap = abs(wrap_angle(math.atan2(last.imag, last.real) - theta0))
    if ray_gap <= ATOM_ANGLE_TOL:
        tail_sum = tail.mass_power_sum(last_mass, gamma)
        if math.isinf(tail_sum):
            return math.inf, 0.0, True
        return value + tail_sum, 0.0, False
    # off the vertex ray: distances stay above half the chord once the masses are small
    chord = 2 * math.sin(ray_gap / 2)
    if tail.first_mass(last_mass) <= chord / 2:
        bound = tail.mass_power_sum(last_mass) * (chord / 2) ** (gamma - 1)
    else:
        bound = tail.mass_power_sum(last_mass, gamma)
    return value, bound, False


def frostman_sum(zs: ZeroSequence, zeta0, gamma: float) -> float:
    """``sum (1 - |a_k|) / |zeta0 - a_k|^{1 - gamma}``.

    A tail running radially into ``zeta0`` is summed in closed form (and may
    make the result ``inf``); any other tail is left out, see
    :func:`frostman_integral` for its bound.
    """
    if not 0 <= gamma < 1:
        raise ValueError("gamma must lie in [0, 1)")
    value, _, _ = _zero_frostman(zs, _as_theta(zeta0), gamma)
    return value


def _kernel_antiderivative(u, gamma):
    """``G(u) = int_0^u (2 sin(s/2))^{gamma-1} ds`` for ``0 <= u <= pi``.

    For ``gamma = 0`` the antiderivative ``log tan(u/4)`` is returned instead.
    """
    u = np.asarray(u, dtype=float)
    if gamma == 0:
        with np.errstate(divide="ignore"):
            return np.log(np.tan(u / 4))
    x = np.sin(u / 2) ** 2
    return 2.0 ** (gamma - 1) * beta_fn(gamma / 2, 0.5) * betainc(gamma / 2, 0.5, x)


def _shell_radii(bm: BoundaryMeasure, theta0: float) -> np.ndarray:
    """``pi 2^-k`` down to the closest breakpoint distance from the vertex."""
    u = np.abs(wrap_angle(bm.breakpoints - theta0))
    u = u[u > 0]
    inner = float(u.min()) if u.size else math.pi
    n = max(0, int(math.ceil(math.log2(math.pi / inner))))
    return math.pi * 0.5 ** np.arange(1, n + 1)


def _boundary_pieces(bm: BoundaryMeasure, theta0: float, radii=()):
    """Continuous part as (|u| lo, |u| hi, density) pieces with ``0 <= lo < hi <= pi``.

    Pieces are cut at the vertex, at its antipode and at ``|u| = radii``.
    """
    bp = bm.breakpoints
    rho = bm.densities()
    radii = np.asarray(radii, dtype=float)
    cuts = np.concatenate(
        [[theta0, theta0 + math.pi], theta0 + radii, theta0 - radii]
    )
    cuts = wrap_angle(cuts)
    cuts = np.atleast_1d(cuts)
    cuts = cuts[(cuts > bp[0]) & (cuts < bp[-1])]
    pts = np.unique(np.concatenate([bp, cuts]))
    lo_t, hi_t = pts[:-1], pts[1:]
    dens = rho[np.clip(np.searchsorted(bp, 0.5 * (lo_t + hi_t)) - 1, 0, rho.size - 1)]
    keep = dens > 0
    lo_t, hi_t, dens = lo_t[keep], hi_t[keep], dens[keep]
    ua = np.abs(wrap_angle(lo_t - theta0))
    ub = np.abs(wrap_angle(hi_t - theta0))
    return np.minimum(ua, ub), np.maximum(ua, ub), dens


def _boundary_frostman(bm: BoundaryMeasure, theta0: float, gamma: float):
    """Returns ``(value, divergent, certificate)`` for the boundary part."""
    for t, m in bm.atoms:
        if abs(wrap_angle(t - theta0)) <= ATOM_ANGLE_TOL:
            return math.inf, True, "atom-at-vertex"
    atom_val = math.fsum(
        m * abs(2 * math.sin(wrap_angle(t - theta0) / 2)) ** (gamma - 1) for t, m in bm.atoms
    )
    if bm.continuous_mass == 0:
        return atom_val, False, ""
    radii = _shell_radii(bm, theta0)
    lo, hi, dens = _boundary_pieces(bm, theta0, radii)
    if lo.size == 0:
        return atom_val, False, ""
    if gamma == 0 and np.any(lo == 0):
        return math.inf, True, "density-at-vertex"
    contrib = dens * (_kernel_antiderivative(hi, gamma) - _kernel_antiderivative(lo, gamma))
    # shell k holds pi 2^-(k+1) < |u| <= pi 2^-k; the last one reaches the vertex
    edges = np.concatenate([[math.pi], radii])
    # pieces never straddle a shell edge, so their midpoints pick the shell robustly
    mid = 0.5 * (lo + hi)
    shell_of = np.floor(np.log2(math.pi / np.maximum(mid, 1e-300))).astype(np.intp)
    shells = np.zeros(edges.size)
    np.add.at(shells, np.clip(shell_of, 0, edges.size - 1), contrib)
    running = 0.0
    grow_run = 0
    prev = -math.inf
    for s in shells:
        new = running + s
        if running > 0 and new > running * (1 + SHELL_GROWTH) and s >= prev:
            grow_run += 1
            if grow_run >= SHELL_GROWTH_RUN:
                return math.inf, True, "shell-growth"
        else:
            grow_run = 0
        running = new
        prev = s
    return atom_val + math.fsum(contrib), False, ""


def frostman_integral(lam: CompleteMeasure, zeta0, gamma: float) -> FrostmanResult:
    """``int d lambda(zeta) / |zeta0 - zeta|^{1 - gamma}`` or a divergence certificate.

    The zero part is summed exactly; every piece of the boundary part is
    integrated in closed form through the incomplete beta function. An atom
    at the vertex certifies divergence. For the continuous part the
    contributions of dyadic shells around the vertex are scanned: when three
    successive shells each raise the running total by more than 10% the
    integral is reported divergent (a heuristic for measures whose density
    blows up at the vertex).
    """
    if not 0 <= gamma < 1:
        raise ValueError("gamma must lie in [0, 1)")
    theta0 = _as_theta(zeta0)
    zval, tail_bound, zdiv = _zero_frostman(lam.zero_part, theta0, gamma)
    bval, bdiv, cert = _boundary_frostman(lam.boundary_part, theta0, gamma)
    if zdiv or bdiv:
        return FrostmanResult(
            math.inf, True, cert or "zero-tail", zval, bval, tail_bound
        )
    return FrostmanResult(zval + bval, False, "", zval, bval, tail_bound)


def frostman_via_modulus(lam: CompleteMeasure, zeta0, gamma: float, ratio: float = 1 + 1e-4, tau_min: Optional[float] = None) -> float:
    """``int tau^{gamma - 1} d omega(tau)`` as a Stieltjes sum.

    Cells ``(tau_i, tau_i * ratio]`` are weighted at their geometric mean.
    Below ``tau_min`` the modulus is taken to be linear in ``tau``.
    """
    if not 0 <= gamma < 1:
        raise ValueError("gamma must lie in [0, 1)")
    if tau_min is None:
        tau_min = 1e-10
    n = int(math.ceil(math.log(2.0 / tau_min) / math.log(ratio))) + 1
    taus = tau_min * ratio ** np.arange(n + 1)
    omega = modulus_of_continuity(lam, zeta0, taus)
    d_omega = np.diff(omega)
    mid = np.sqrt(taus[:-1] * taus[1:])
    total = math.fsum(d_omega * mid ** (gamma - 1))
    w0 = float(omega[0])
    if w0 > 0:
        if gamma == 0:
            return math.inf
        total += w0 * tau_min ** (gamma - 1) / gamma
    return total


# --------------------------------------------------------------------------
# divisors and domination


def divisor_split(spec: BoundedFunctionSpec, zero_selector, boundary_fraction: float):
    """Split ``spec`` into two divisors whose complete measures add up to the original.

    Parameters
    ----------
    zero_selector : callable or array_like of bool
        Called as ``zero_selector(index, zero)``; selected zeros go to the
        first divisor. The tail descriptor, ``C``, ``p`` and the phase stay
        with the first divisor as well.
    boundary_fraction : float
        Share of the boundary measure given to the first divisor.
    """
    zs = spec.zeros
    if callable(zero_selector):
        mask = np.array([bool(zero_selector(i, a)) for i, a in enumerate(zs.zeros)], dtype=bool)
    else:
        mask = np.asarray(zero_selector, dtype=bool)
        if mask.ndim == 0:
            mask = np.full(len(zs), bool(mask))
    if mask.shape != (len(zs),):
        raise ValueError("selector mask does not match the zero count")
    first_b, rest_b = spec.boundary.split(boundary_fraction)
    first_zeros = ZeroSequence(zs.zeros[mask], zs.tail)
    rest_zeros = ZeroSequence(zs.zeros[~mask])
    first = BoundedFunctionSpec(spec.C, spec.p, first_zeros, first_b, spec.Cprime)
    rest = BoundedFunctionSpec(1.0, 0, rest_zeros, rest_b, 0.0)
    return first, rest


def dominates(chi: BoundaryMeasure, psi: BoundaryMeasure, rtol: float = 1e-12) -> bool:
    """True when ``chi <= psi`` atom by atom and interval by interval."""
    for t, m in chi.atoms:
        if m > psi.atom_at(t) * (1 + rtol):
            return False
    grid = np.union1d(chi.breakpoints, psi.breakpoints)
    d_chi = np.diff(chi.cdf(grid))
    d_psi = np.diff(psi.cdf(grid))
    slack = rtol * max(psi.continuous_mass, 1e-300)
    return bool(np.all(d_chi <= d_psi * (1 + rtol) + slack))
