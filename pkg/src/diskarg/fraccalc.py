"""Riemann-Liouville fractional integrals of radial functions.

``D^{-gamma} h(r) = 1/Gamma(gamma) int_0^r (r - x)^{gamma - 1} h(x) dx``.

After the substitution ``s = r - x`` the weight ``s^{gamma - 1}`` sits at
``s = 0``. The panel next to it is integrated by Gauss-Jacobi rules built
for that weight, every other panel by a 7/15 Gauss-Kronrod pair with the
weight multiplied in. The starting mesh halves toward ``s = 0`` and panels
are then bisected adaptively. Many integrals can be advanced together so
that the integrand is evaluated on large batches of points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import roots_sh_jacobi

from .errors import QuadratureError

__all__ = [
    "RadialFunction",
    "FracResult",
    "weighted_integrals",
    "rl_integral",
    "rl_integral_many",
    "kernel_bound_ratio",
    "ConvergenceClassResult",
    "convergence_class_integral",
]

# Kronrod 15-point abscissae (non-negative half) and weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss 7-point weights on the odd-indexed Kronrod abscissae
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
G_WEIGHTS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    G_WEIGHTS[_i] = _w
    G_WEIGHTS[14 - _i] = _w
G_WEIGHTS[7] = _WG[3]

JACOBI_ORDER = 16
_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, gamma: float):
    """Nodes/weights on [0, 1] for the weight ``x^{gamma - 1}``."""
    x, w = roots_sh_jacobi(n, gamma, gamma)
    return x, w


@dataclass
class RadialFunction:
    """A real function of the radius.

    ``evaluator`` must accept a numpy array of radii. ``singular_exponent``
    is an optional hint that the function behaves like ``(r0 - x)^e`` near
    the upper end; it is recorded but the quadrature does not rely on it.
    """

    evaluator: Callable
    singular_exponent: Optional[float] = None

    def __call__(self, x):
        return self.evaluator(x)


@dataclass(frozen=True)
class FracResult:
    value: float
    quadrature_error_estimate: float
    nodes_used: int


def _as_vector_callable(h):
    if isinstance(h, RadialFunction):
        h = h.evaluator

    def call(x):
        try:
            out = h(x)
        except TypeError:
            # scalar-only callables, e.g. math.exp
            out = [h(float(t)) for t in np.ravel(x)]
            out = np.reshape(out, np.shape(x))
        out = np.asarray(out, dtype=float)
        if out.shape != np.shape(x):
            out = np.broadcast_to(out, np.shape(x)).astype(float)
        return out

    return call


def _qk15_error(h, vals, weighted):
    """QUADPACK-style error estimate for GK15 panels (rows of ``weighted``)."""
    resk = h * (weighted @ GK_WEIGHTS)
    resg = h * (weighted @ G_WEIGHTS)
    mean = resk / (2 * h)
    resabs = np.abs(h) * (np.abs(weighted) @ GK_WEIGHTS)
    resasc = np.abs(h) * (np.abs(weighted - mean[:, None]) @ GK_WEIGHTS)
    err = np.abs(resk - resg)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50 * _EPS * resabs
    err = np.where(resabs > _UFLOW / (50 * _EPS), np.maximum(floor, err), err)
    return resk, err


def _evaluate_panels(func, gamma, pid, a, b, jac):
    """Value and error estimate of each panel.

    ``jac`` marks panels ``[0, b]`` handled by Gauss-Jacobi.
    """
    n = pid.size
    val = np.empty(n)
    err = np.empty(n)
    gk = ~jac
    parts_s = []
    parts_id = []
    if np.any(gk):
        c = 0.5 * (a[gk] + b[gk])
        h = 0.5 * (b[gk] - a[gk])
        s_gk = c[:, None] + h[:, None] * GK_NODES[None, :]
        parts_s.append(s_gk.ravel())
        parts_id.append(np.repeat(pid[gk], 15))
    if np.any(jac):
        x16, w16 = _jacobi_rule(JACOBI_ORDER, gamma)
        x8, w8 = _jacobi_rule(JACOBI_ORDER // 2, gamma)
        xj = np.concatenate([x16, x8])
        bj = b[jac]
        s_j = bj[:, None] * xj[None, :]
        parts_s.append(s_j.ravel())
        parts_id.append(np.repeat(pid[jac], xj.size))
    s_all = np.concatenate(parts_s)
    id_all = np.concatenate(parts_id)
    f_all = np.asarray(func(s_all, id_all), dtype=float)
    if not np.all(np.isfinite(f_all)):
        raise QuadratureError("integrand returned non-finite values", nodes_used=s_all.size)
    pos = 0
    if np.any(gk):
        m = int(np.count_nonzero(gk))
        f = f_all[: 15 * m].reshape(m, 15)
        pos = 15 * m
        weighted = f * s_gk ** (gamma - 1)
        v, e = _qk15_error(h, f, weighted)
        val[gk] = v
        err[gk] = e
    if np.any(jac):
        m = int(np.count_nonzero(jac))
        f = f_all[pos:].reshape(m, xj.size)
        scale = bj ** gamma
        q16 = scale * (f[:, :JACOBI_ORDER] @ w16)
        q8 = scale * (f[:, JACOBI_ORDER:] @ w8)
        resabs = scale * (np.abs(f[:, :JACOBI_ORDER]) @ w16)
        val[jac] = q16
        err[jac] = np.maximum(np.abs(q16 - q8), 50 * _EPS * resabs)
    return val, err, s_all.size


def _initial_mesh(lo, hi, grade_to):
    """Panels halving toward ``lo`` (or toward 0 when ``lo == 0``)."""
    pid, a, b, jac = [], [], [], []
    for i, (l, u, g) in enumerate(zip(lo, hi, grade_to)):
        if u <= l:
            continue
        if l == 0:
            n = max(1, int(math.ceil(math.log2(u / g)))) if g < u else 1
            edges = u * 0.5 ** np.arange(n + 1)
            edges = np.append(edges, 0.0)
            edges = edges[::-1]
        else:
            n = max(1, int(math.ceil(math.log2(u / l))))
            edges = l * 2.0 ** np.arange(n + 1)
            edges[-1] = u
            edges = edges[edges <= u]
            if edges[-1] != u:
                edges = np.append(edges, u)
        for k in range(edges.size - 1):
            pid.append(i)
            a.append(edges[k])
            b.append(edges[k + 1])
            jac.append(edges[k] == 0.0)
    return np.array(pid, dtype=np.intp), np.array(a), np.array(b), np.array(jac, dtype=bool)


def weighted_integrals(
    func,
    gamma: float,
    lo,
    hi,
    rtol: float = 1e-10,
    atol: float = 1e-14,
    grade_to=None,
    max_panels: int = 4000,
):
    """``int_lo^hi s^{gamma - 1} f_i(s) ds`` for a batch of integrals.

    Parameters
    ----------
    func : callable
        ``func(s, i)`` evaluates integrand ``i`` at the points ``s`` (both
        arrays of equal length).
    lo, hi : array_like
        Limits, ``0 <= lo < hi``. When ``lo`` is zero the panel touching it
        uses the Gauss-Jacobi rule for the weight.
    grade_to : array_like, optional
        Width of the smallest panel of the starting mesh for ``lo == 0``.
    max_panels : int
        Refinement cap per integral.

    Returns
    -------
    value, error, nodes, converged : ndarray
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    lo, hi = np.broadcast_arrays(lo, hi)
    m = lo.size
    if grade_to is None:
        grade_to = hi / 8
    grade_to = np.broadcast_to(np.asarray(grade_to, dtype=float), lo.shape)
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    pid, a, b, jac = _initial_mesh(lo, hi, grade_to)
    nodes = np.zeros(m, dtype=np.int64)
    val = np.zeros(0)
    err = np.zeros(0)
    new_pid, new_a, new_b, new_jac = pid, a, b, jac
    pid = np.zeros(0, dtype=np.intp)
    a = np.zeros(0)
    b = np.zeros(0)
    jac = np.zeros(0, dtype=bool)
    failed = np.zeros(m, dtype=bool)
    while True:
        if new_pid.size:
            v, e, _ = _evaluate_panels(func, gamma, new_pid, new_a, new_b, new_jac)
            per = np.where(new_jac, 3 * JACOBI_ORDER // 2, 15)
            nodes += np.bincount(new_pid, weights=per, minlength=m).astype(np.int64)
            pid = np.concatenate([pid, new_pid])
            a = np.concatenate([a, new_a])
            b = np.concatenate([b, new_b])
            jac = np.concatenate([jac, new_jac])
            val = np.concatenate([val, v])
            err = np.concatenate([err, e])
        total = np.bincount(pid, weights=val, minlength=m)
        total_err = np.bincount(pid, weights=err, minlength=m)
        count = np.bincount(pid, minlength=m)
        tol = np.maximum(atol, rtol * np.abs(total))
        active = (total_err > tol) & ~failed
        failed |= active & (count >= max_panels)
        active &= ~failed
        if not np.any(active):
            break
        share = tol / np.maximum(count, 1)
        # always split the worst panel of every active integral
        worst = np.full(m, -1.0)
        np.maximum.at(worst, pid, err)
        pick = active[pid] & ((err > share[pid]) | (err >= worst[pid]))
        pa, pb, pj, pp = a[pick], b[pick], jac[pick], pid[pick]
        mid = 0.5 * (pa + pb)
        keep = ~pick
        pid, a, b, jac, val, err = pid[keep], a[keep], b[keep], jac[keep], val[keep], err[keep]
        new_pid = np.concatenate([pp, pp])
        new_a = np.concatenate([pa, mid])
        new_b = np.concatenate([mid, pb])
        new_jac = np.concatenate([pj, np.zeros(pj.size, dtype=bool)])
    total = np.bincount(pid, weights=val, minlength=m)
    total_err = np.bincount(pid, weights=err, minlength=m)
    return total, total_err, nodes, ~failed


def _default_grade(r):
    """Smallest starting panel: an eighth of the distance to the circle."""
    r = np.asarray(r, dtype=float)
    gap = np.where(r < 1, np.minimum(r, 1 - r), r)
    return np.maximum(gap / 8, r * 2.0 ** -50)


def rl_integral(h, gamma: float, r: float, rtol: float = 1e-10, atol: float = 1e-14, max_panels: int = 4000) -> FracResult:
    """Riemann-Liouville integral of order ``gamma`` of ``h`` at ``r``.

    Raises :class:`QuadratureError` when the error estimate stays above
    tolerance after ``max_panels`` panels.
    """
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]; use h itself for gamma = 0")
    if not r > 0:
        raise ValueError("r must be positive")
    call = _as_vector_callable(h)
    val, err, nodes, ok = weighted_integrals(
        lambda s, i: call(r - s), gamma, 0.0, r, rtol, atol, _default_grade(r), max_panels
    )
    g = gamma_fn(gamma)
    res = FracResult(float(val[0] / g), float(err[0] / g), int(nodes[0]))
    if not ok[0]:
        raise QuadratureError(
            f"fractional integral did not converge (estimate {res.quadrature_error_estimate:.3e})",
            value=res.value,
            error_estimate=res.quadrature_error_estimate,
            nodes_used=res.nodes_used,
        )
    return res


def rl_integral_many(func, gamma: float, radii, rtol: float = 1e-8, atol: float = 1e-12, grade_to=None, max_panels: int = 4000):
    """Fractional integrals of a batch of radial functions.

    ``func(x, i)`` evaluates function ``i`` at radii ``x``; integral ``i`` is
    taken up to ``radii[i]``. Returns ``(values, errors, nodes, converged)``.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if grade_to is None:
        grade_to = _default_grade(radii)
    val, err, nodes, ok = weighted_integrals(
        lambda s, i: func(radii[i] - s, i), gamma, 0.0, radii, rtol, atol, grade_to, max_panels
    )
    g = gamma_fn(gamma)
    return val / g, err / g, nodes, ok


def kernel_bound_ratio(zeta, alpha: float, gamma: float, r: float, **kw) -> float:
    """``D^{-gamma} |1 - x zeta|^{-alpha} (r) * |1 - r zeta|^{alpha - gamma}``."""
    if not 0 <= gamma < alpha:
        raise ValueError("need 0 <= gamma < alpha")
    zeta = complex(zeta)
    if gamma == 0:
        return abs(1 - r * zeta) ** -alpha * abs(1 - r * zeta) ** alpha
    res = rl_integral(lambda x: np.abs(1 - x * zeta) ** -alpha, gamma, r, **kw)
    return res.value * abs(1 - r * zeta) ** (alpha - gamma)


@dataclass(frozen=True)
class ConvergenceClassResult:
    """Value of the weighted radial integral with a truncation heuristic.

    ``last_shell_fraction`` is the share of the value contributed by the
    final dyadic shell ``[1 - 2 (1 - r_max), r_max]``. A large share means
    the integral is still growing at ``r_max``.
    """

    value: float
    error_estimate: float
    last_shell_fraction: float
    truncated: bool


def convergence_class_integral(
    spec,
    gamma: float,
    r_max: float,
    rtol: float = 1e-10,
    atol: float = 1e-14,
    flag_fraction: float = 0.1,
    max_panels: int = 4000,
) -> ConvergenceClassResult:
    """``int_0^{r_max} (1 - r)^{gamma - 1} |arg f(r)| dr`` along the real radius.

    Parameters
    ----------
    spec : BoundedFunctionSpec
        Only materialized zeros enter the argument.
    gamma : float
        Order in ``(0, 1)``.
    r_max : float
        Upper limit, below 1.
    flag_fraction : float
        ``truncated`` is set when the last shell carries more than this share.
    """
    from .bounded import arg_f_many  # bounded sits above this module

    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if not 0 < r_max < 1:
        raise ValueError("r_max must lie in (0, 1)")
    lo = 1.0 - r_max
    hi = np.array([1.0, min(2 * lo, 1.0)])

    def integrand(s, i):
        return np.abs(arg_f_many(spec, (1.0 - s).astype(complex), 1.0))

    val, err, nodes, ok = weighted_integrals(integrand, gamma, lo, hi, rtol, atol, max_panels=max_panels)
    if not ok[0]:
        raise QuadratureError(
            f"convergence-class integral did not converge (estimate {err[0]:.3e})",
            value=float(val[0]),
            error_estimate=float(err[0]),
            nodes_used=int(nodes[0]),
        )
    total = float(val[0])
    frac = float(val[1] / total) if total > 0 else 0.0
    return ConvergenceClassResult(total, float(err[0]), frac, frac > flag_fraction)
