"""Generators with known Frostman behaviour, verification sweeps and oracles.

A sweep walks the radius ladder ``r_j = 1 - 2^-j``. At each level it lays an
angular grid across the Stolz angle at the vertex, adds the radial direction
and the ray ``arg(1 - z conj(vertex)) = pi/4``, and takes the largest
``|D^{-gamma} F|`` over the grid, where ``F`` is ``arg f`` (or ``Re L`` and
``Im L``) along the ray through each grid point.

Verdicts compare suprema over blocks of levels that double in ``j``: the last
block is ``(j_max/2, j_max]``, the one before it ``(j_max/4, j_max/2]`` and
so on, with a short bottom block merged into its neighbour.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from .blaschke import Tail, ZeroSequence, tail_log_bound
from .bounded import log_f_many
from .fraccalc import rl_integral_many
from .geometry import BoundaryPoint, StolzRegion, in_stolz, point_on_pi4_ray, stolz_half_aperture
from .herglotz import example2_measure
from .local_zeros import local_count_many
from .measures import (
    BoundaryMeasure,
    BoundedFunctionSpec,
    FrostmanResult,
    divisor_split,
    frostman_integral,
)

__all__ = [
    "gen_power_radial",
    "gen_conjugate_pairs",
    "upper_subproduct",
    "example1_spec",
    "example2_spec",
    "random_zero_sequence",
    "random_boundary_measure",
    "random_spec",
    "SweepConfig",
    "SweepReport",
    "LevelResult",
    "verdict",
    "verify_theorem_arg",
    "verify_theorem_lnb",
    "divisor_stability_run",
    "sup_frac_arg",
    "oracle_naive_product",
    "oracle_naive_rl",
    "oracle_frostman",
]

DEFAULT_LEVELS = tuple(range(4, 17))
# radii closer to the circle than this are not representable as 1 - m
MASS_FLOOR = 1e-14


# --------------------------------------------------------------------------
# generators


def _vertex(v) -> BoundaryPoint:
    if isinstance(v, BoundaryPoint):
        return v
    return BoundaryPoint(float(v))


def gen_power_radial(beta: float, count: int, vertex=BoundaryPoint(0.0)) -> ZeroSequence:
    """Zeros ``a_k = (1 - k^-beta) * vertex`` for ``k = 2, ..., count + 1``.

    ``k = 1`` would put a zero at the origin, so the index starts at 2.
    Terms whose mass ``k^-beta`` drops below ``MASS_FLOOR`` cannot be stored
    as ``1 - m`` in double precision; they, and everything past ``count``,
    are carried by a power tail.
    """
    if not beta > 1:
        raise ValueError("beta must exceed 1")
    if count < 1:
        raise ValueError("count must be positive")
    vertex = _vertex(vertex)
    k_max = count + 1
    k_floor = int(math.floor(MASS_FLOOR ** (-1 / beta)))
    k_last = min(k_max, k_floor)
    k = np.arange(2, k_last + 1, dtype=float)
    zeros = (1 - k ** -beta) * vertex.value
    return ZeroSequence(zeros, Tail("power", beta, k_last))


def gen_conjugate_pairs(base: ZeroSequence) -> ZeroSequence:
    """Interleave ``a_n`` and ``conj(a_n)``."""
    z = base.zeros
    if np.any(z.imag == 0):
        raise ValueError("base sequence contains a real zero")
    out = np.empty(2 * z.size, dtype=complex)
    out[0::2] = z
    out[1::2] = np.conj(z)
    return ZeroSequence(out)


def upper_subproduct(zs: ZeroSequence, vertex=BoundaryPoint(0.0), radius: float = 1 / 3) -> ZeroSequence:
    """Zeros on the upper side of the vertex ray within ``radius`` of the vertex.

    "Upper" is measured after rotating the vertex to 1, so ``Im(a conj(v)) >= 0``.
    Necessity runs sweep this subproduct alongside the full sequence.
    """
    v = _vertex(vertex).value
    a = zs.zeros
    keep = ((a * np.conj(v)).imag >= 0) & (np.abs(v - a) <= radius)
    return zs.select(keep)


def example1_spec(vertex=BoundaryPoint(0.0)) -> BoundedFunctionSpec:
    """``F = exp(-(1 + z conj(v))/(1 - z conj(v)))``: an atom of mass ``2 pi`` at ``v``."""
    return BoundedFunctionSpec(boundary=BoundaryMeasure.atom(_vertex(vertex).theta, 2 * math.pi))


def example2_spec(alpha: float, tol: float = 1e-6) -> BoundedFunctionSpec:
    """Zero-free ``g`` with ``psi(t) = sign(t) |t|^{1 - alpha}`` and ``C' = 0``."""
    return BoundedFunctionSpec(boundary=example2_measure(alpha, tol))


def random_zero_sequence(rng, n_max: int = 20, depth: float = 3.0) -> ZeroSequence:
    """Random zeros, denser toward the circle (``1 - |a| = U^depth``)."""
    n = int(rng.integers(1, n_max + 1))
    mod = 1 - np.clip(rng.uniform(0, 1, n) ** depth, 1e-12, 1 - 1e-3)
    return ZeroSequence(mod * np.exp(1j * rng.uniform(-math.pi, math.pi, n)))


def random_boundary_measure(rng, max_atoms: int = 3, max_breaks: int = 12) -> BoundaryMeasure:
    atoms = [
        (float(t), float(m))
        for t, m in zip(
            rng.uniform(-math.pi, math.pi, int(rng.integers(0, max_atoms + 1))),
            rng.uniform(0.01, 2.0, max_atoms),
        )
    ]
    nb = int(rng.integers(0, max_breaks + 1))
    if nb < 2:
        return BoundaryMeasure(atoms)
    bp = np.sort(rng.uniform(-math.pi, math.pi, nb))
    bp = np.unique(bp)
    vals = np.cumsum(rng.uniform(0, 1, bp.size))
    return BoundaryMeasure(atoms, bp, vals)


def random_spec(rng) -> BoundedFunctionSpec:
    """A random spec of a function bounded by 1 (so ``C <= 1``)."""
    return BoundedFunctionSpec(
        C=float(rng.uniform(0.05, 1.0)),
        p=int(rng.integers(0, 3)),
        zeros=random_zero_sequence(rng),
        boundary=random_boundary_measure(rng),
        Cprime=float(rng.uniform(-math.pi, math.pi)),
    )


# --------------------------------------------------------------------------
# reports and verdicts


@dataclass
class SweepConfig:
    gamma: float = 0.5
    sigma: float = 2.0
    vertex_theta: float = 0.0
    levels: Sequence[int] = DEFAULT_LEVELS
    grid_angles: int = 65
    pi4_ray: bool = True
    h: float = 0.5
    rtol: float = 1e-8
    atol: float = 1e-12
    max_panels: int = 2000
    failure_budget: float = 0.05
    plateau_factor: float = 2.0
    growth_factor: float = 2.0


@dataclass
class LevelResult:
    j: int
    radius: float
    sup: float
    argmax_angle: float
    points: int
    skipped_on_cut: int
    grid_failures: int
    sup_im: Optional[float] = None


@dataclass
class SweepReport:
    mode: str
    gamma: float
    sigma: float
    vertex_theta: float
    frostman: FrostmanResult
    levels: List[LevelResult]
    verdict: str
    grid: dict = field(default_factory=dict)
    h: Optional[float] = None
    tail_bound: float = 0.0
    failure_budget_exceeded: bool = False

    @property
    def sups(self) -> np.ndarray:
        return np.array([lv.sup for lv in self.levels])

    @property
    def radii(self) -> np.ndarray:
        return np.array([lv.radius for lv in self.levels])

    @property
    def total_failures(self) -> int:
        return sum(lv.grid_failures for lv in self.levels)

    def verdict_partial(self, k: int, cfg: Optional[SweepConfig] = None) -> str:
        cfg = cfg or SweepConfig()
        js = [lv.j for lv in self.levels[: k + 1]]
        sups = self._verdict_values()[: k + 1]
        return verdict(js, sups, cfg.plateau_factor, cfg.growth_factor)

    def _verdict_values(self):
        if self.mode == "lnb":
            return [max(lv.sup, lv.sup_im or 0.0) for lv in self.levels]
        return [lv.sup for lv in self.levels]

    def to_dict(self):
        d = {
            "mode": self.mode,
            "gamma": self.gamma,
            "sigma": self.sigma,
            "vertex_theta": self.vertex_theta,
            "h": self.h,
            "frostman": asdict(self.frostman),
            "verdict": self.verdict,
            "tail_bound": self.tail_bound,
            "failure_budget_exceeded": self.failure_budget_exceeded,
            "grid": self.grid,
            "levels": [asdict(lv) for lv in self.levels],
        }
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(_jsonable(self.to_dict()), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = ["level_index", "radius", "sup_abs_dgamma_arg", "grid_failures", "verdict_partial"]
        if self.mode == "lnb":
            cols = ["level_index", "radius", "sup_abs_dgamma_re_L", "sup_abs_dgamma_im_L", "grid_failures", "verdict_partial"]
        w.writerow(cols)
        for k, lv in enumerate(self.levels):
            row = [lv.j, repr(lv.radius), repr(lv.sup)]
            if self.mode == "lnb":
                row.append(repr(lv.sup_im))
            row += [lv.grid_failures, self.verdict_partial(k)]
            w.writerow(row)
        return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    return x


def _octave_blocks(js: Sequence[int]):
    """Group level indices into blocks ``(J/2^(k+1), J/2^k]``, bottom block merged up."""
    js = list(js)
    if not js:
        return []
    top = max(js)
    blocks = []
    hi = top
    while True:
        lo = hi / 2
        blk = [i for i, j in enumerate(js) if lo < j <= hi]
        if blk:
            blocks.append(blk)
        if lo < min(js):
            break
        hi = lo
    blocks.reverse()
    # a bottom block holding less than half the span of its neighbour is merged
    if len(blocks) >= 2:
        first_span = max(js[i] for i in blocks[0]) - min(js[i] for i in blocks[0]) + 1
        second_span = max(js[i] for i in blocks[1]) - min(js[i] for i in blocks[1]) + 1
        if 2 * first_span < second_span:
            blocks[1] = blocks[0] + blocks[1]
            blocks.pop(0)
    return blocks


def verdict(js: Sequence[int], sups: Sequence[float], plateau: float = 2.0, growth: float = 2.0) -> str:
    """``bounded`` / ``growing`` / ``inconclusive`` from per-level suprema."""
    if len(sups) and all(s == 0 for s in sups):
        return "bounded"
    blocks = _octave_blocks(js)
    if len(blocks) < 2:
        return "inconclusive"
    bsup = [max(sups[i] for i in b) for b in blocks]
    if not all(math.isfinite(s) for s in bsup):
        return "inconclusive"
    if bsup[-1] <= plateau * bsup[-2]:
        return "bounded"
    if all(b2 >= growth * b1 and b1 > 0 for b1, b2 in zip(bsup, bsup[1:])):
        return "growing"
    return "inconclusive"


# --------------------------------------------------------------------------
# grids and sweeps


def _level_grid(r: float, region: StolzRegion, n_angles: int, pi4_ray: bool = True):
    """Angles (relative to the vertex) of the grid at radius ``r``.

    ``n_angles`` Chebyshev-Lobatto points span the aperture (none when 0);
    the radial direction is always present. Returns the offsets and a label
    per point (``grid``, ``radial``, ``pi4``).
    """
    u_max = stolz_half_aperture(r, region.sigma) * (1 - 1e-12)
    k = np.arange(n_angles)
    u = u_max * np.cos(math.pi * k / max(n_angles - 1, 1)) if n_angles > 1 else np.zeros(n_angles)
    # cos(pi/2) is 6e-17, not 0; snap so the radial ray is not duplicated
    u[np.abs(u) <= 1e-14 * u_max] = 0.0
    labels = ["grid"] * u.size
    u = list(u)
    if 0.0 in u:
        labels[u.index(0.0)] = "radial"
    else:
        u.append(0.0)
        labels.append("radial")
    p = point_on_pi4_ray(r, region.vertex) if pi4_ray else None
    if p is not None:
        u.append(math.atan2(p.imag, p.real) - region.vertex.theta)
        labels.append("pi4")
    z = r * np.exp(1j * (region.vertex.theta + np.array(u)))
    inside = np.asarray(in_stolz(z, region), dtype=bool)
    return np.array(u)[inside], [l for l, ok in zip(labels, inside) if ok]


def _ray_on_cut(zs: ZeroSequence, phi: float, r: float, tol: float = 1e-12) -> bool:
    """True when the segment ``(0, r e^{i phi}]`` meets a cut."""
    if not len(zs):
        return False
    a = zs.zeros
    ang = np.angle(a * np.exp(-1j * phi))
    return bool(np.any((np.abs(ang) <= tol) & (np.abs(a) <= r)))


def _level_sweep(spec, region, gamma, r, cfg, mode):
    """Suprema at one radius; returns a LevelResult and the tail bound."""
    u, labels = _level_grid(r, region, cfg.grid_angles, cfg.pi4_ray)
    theta0 = region.vertex.theta
    phis = theta0 + u
    on_cut = np.array([_ray_on_cut(spec.zeros, p, r) for p in phis], dtype=bool)
    phis_ok = phis[~on_cut]
    center = region.vertex.value
    n_rays = phis_ok.size
    sup = 0.0
    sup_im = 0.0 if mode == "lnb" else None
    arg_at = float("nan")
    failures = 0
    if n_rays:
        e = np.exp(1j * phis_ok)

        def values(x, i):
            z = x * e[i % n_rays]
            lf = log_f_many(spec, z, center)
            if mode == "arg":
                return lf.imag
            re = lf.real + local_count_many(spec.zeros, z, cfg.h)
            return np.where(i < n_rays, re, lf.imag)

        n_int = n_rays if mode == "arg" else 2 * n_rays
        if gamma == 0:
            idx = np.arange(n_int)
            vals = values(np.full(n_int, r), idx)
            ok = np.isfinite(vals)
        else:
            vals, _, _, ok = rl_integral_many(
                values,
                gamma,
                np.full(n_int, r),
                rtol=cfg.rtol,
                atol=cfg.atol,
                max_panels=cfg.max_panels,
            )
        absv = np.where(ok, np.abs(vals), -1.0)
        if mode == "arg":
            failures = int(np.count_nonzero(~ok))
            if np.any(ok):
                k = int(np.argmax(absv))
                sup = float(absv[k])
                arg_at = float(phis_ok[k] - theta0)
        else:
            fail_ray = ~ok[:n_rays] | ~ok[n_rays:]
            failures = int(np.count_nonzero(fail_ray))
            re_abs, im_abs = absv[:n_rays], absv[n_rays:]
            if np.any(ok[:n_rays]):
                k = int(np.argmax(re_abs))
                sup = float(re_abs[k])
                arg_at = float(phis_ok[k] - theta0)
            if np.any(ok[n_rays:]):
                sup_im = float(np.max(im_abs))
    lv = LevelResult(
        j=-1,
        radius=r,
        sup=sup,
        argmax_angle=arg_at,
        points=int(phis.size),
        skipped_on_cut=int(np.count_nonzero(on_cut)),
        grid_failures=failures,
        sup_im=sup_im,
    )
    return lv, labels


def _run_sweep(spec, vertex, gamma, sigma, levels, mode, cfg: SweepConfig) -> SweepReport:
    if not 0 <= gamma < 1:
        raise ValueError("gamma must lie in [0, 1)")
    vertex = _vertex(vertex)
    region = StolzRegion(vertex, sigma, truncated=True)
    levels = list(levels)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    frost = frostman_integral(spec.complete_measure, vertex, gamma)
    results = []
    labels_seen = set()
    for j in levels:
        r = 1 - 2.0 ** -j
        lv, labels = _level_sweep(spec, region, gamma, r, cfg, mode)
        lv.j = int(j)
        results.append(lv)
        labels_seen.update(labels)
    js = [lv.j for lv in results]
    vals = [max(lv.sup, lv.sup_im or 0.0) for lv in results]
    v = verdict(js, vals, cfg.plateau_factor, cfg.growth_factor)
    total_pts = sum(lv.points - lv.skipped_on_cut for lv in results)
    fails = sum(lv.grid_failures for lv in results)
    r_max = 1 - 2.0 ** -max(levels) if levels else 0.0
    tail = tail_log_bound(spec.zeros, r_max) if len(spec.zeros) else 0.0
    return SweepReport(
        mode=mode,
        gamma=gamma,
        sigma=sigma,
        vertex_theta=vertex.theta,
        frostman=frost,
        levels=results,
        verdict=v,
        grid={
            "grid_angles": cfg.grid_angles,
            "spacing": "chebyshev-lobatto",
            "special_rays": sorted(labels_seen - {"grid"}),
            "rtol": cfg.rtol,
        },
        h=cfg.h if mode == "lnb" else None,
        tail_bound=tail,
        failure_budget_exceeded=total_pts > 0 and fails > cfg.failure_budget * total_pts,
    )


def sup_frac_arg(spec, region: StolzRegion, gamma: float, radii, grid_angles: int = 65, **kw):
    """Per-radius grid suprema of ``|D^{-gamma} arg f|`` inside ``region``.

    Returns a list of :class:`LevelResult` (``j`` set to -1 for radii that
    are not on the dyadic ladder).
    """
    cfg = SweepConfig(gamma=gamma, sigma=region.sigma, grid_angles=grid_angles, **kw)
    out = []
    for r in radii:
        lv, _ = _level_sweep(spec, region, gamma, float(r), cfg, "arg")
        j = -math.log2(1 - r) if r < 1 else math.inf
        lv.j = int(round(j)) if abs(j - round(j)) < 1e-9 else -1
        out.append(lv)
    return out


def verify_theorem_arg(spec, vertex=BoundaryPoint(0.0), gamma=0.5, sigma=2.0, levels=DEFAULT_LEVELS, **kw) -> SweepReport:
    """Frostman value at the vertex against the growth of ``D^{-gamma} arg f``."""
    cfg = SweepConfig(gamma=gamma, sigma=sigma, levels=tuple(levels), **kw)
    return _run_sweep(spec, vertex, gamma, sigma, levels, "arg", cfg)


def verify_theorem_lnb(spec, vertex=BoundaryPoint(0.0), gamma=0.5, sigma=2.0, h=0.5, levels=DEFAULT_LEVELS, **kw) -> SweepReport:
    """As :func:`verify_theorem_arg` for ``Re L`` and ``Im L`` of ``L(z, h, f)``."""
    if not 0 < h < 1:
        raise ValueError("h must lie in (0, 1)")
    cfg = SweepConfig(gamma=gamma, sigma=sigma, levels=tuple(levels), h=h, **kw)
    return _run_sweep(spec, vertex, gamma, sigma, levels, "lnb", cfg)


def divisor_stability_run(spec, vertex=BoundaryPoint(0.0), gamma=0.5, sigma=2.0, splits=8, seed=0, levels=DEFAULT_LEVELS, **kw):
    """Sweep random divisors: random zero subsets and random boundary shares."""
    if splits < 1:
        raise ValueError("splits must be at least 1")
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(splits):
        mask = rng.uniform(size=len(spec.zeros)) < 0.5
        frac = float(rng.uniform(0.05, 1.0))
        part, _ = divisor_split(spec, mask, frac)
        reports.append(verify_theorem_arg(part, vertex, gamma, sigma, levels, **kw))
    return reports


# --------------------------------------------------------------------------
# brute-force references


def oracle_naive_product(zs: ZeroSequence, z) -> complex:
    """``prod conj(a)(a - z)/(1 - z conj(a))`` by plain multiplication."""
    z = complex(z)
    out = 1 + 0j
    for a in zs.zeros.tolist():
        out *= a.conjugate() * (a - z) / (1 - z * a.conjugate())
    return out


def oracle_naive_rl(h, gamma: float, r: float, panels: int = 10**6) -> float:
    """Uniform panels, ``h`` at panel midpoints, weight integrated exactly per panel."""
    x = np.linspace(0.0, r, panels + 1)
    mid = 0.5 * (x[:-1] + x[1:])
    w = ((r - x[:-1]) ** gamma - (r - x[1:]) ** gamma) / gamma
    hv = np.broadcast_to(np.asarray(h(mid), dtype=float), mid.shape)
    return float(np.dot(w, hv) / gamma_fn(gamma))


def oracle_frostman(zs: ZeroSequence, vertex, gamma: float) -> float:
    """Sum over materialized zeros, accumulated back to front."""
    zeta = _vertex(vertex).value
    total = 0.0
    for a in reversed(zs.zeros.tolist()):
        total += (1 - abs(a)) / abs(zeta - a) ** (1 - gamma)
    return total
