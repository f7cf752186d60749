"""Disk geometry: the kernel ``A(z, xi)``, Stolz angles, pseudohyperbolic disks.

Points of the open disk are plain Python/numpy complex numbers. Points of the
unit circle are stored as angles (:class:`BoundaryPoint`) so that their
modulus is exactly one; the complex value is formed on demand.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominatorError

__all__ = [
    "BoundaryPoint",
    "StolzRegion",
    "a_kernel",
    "in_stolz",
    "stolz_half_aperture",
    "gpv_ratio",
    "pseudo_disk",
    "pseudo_disk_offset",
    "point_on_pi4_ray",
    "wrap_angle",
]

# Below this the GPV denominator is treated as degenerate.
GPV_DENOMINATOR_FLOOR = 1e-300


def wrap_angle(theta):
    """Map angles into ``(-pi, pi]``."""
    t = np.remainder(np.asarray(theta, dtype=float) + np.pi, 2 * np.pi) - np.pi
    t = np.where(t == -np.pi, np.pi, t)
    return float(t) if t.ndim == 0 else t


@dataclass(frozen=True)
class BoundaryPoint:
    """The point ``exp(i*theta)`` of the unit circle."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def value(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))

    def __complex__(self):
        return self.value


@dataclass(frozen=True)
class StolzRegion:
    """Stolz angle ``{z : |1 - z conj(vertex)| <= sigma (1 - |z|)}``.

    With ``truncated=True`` the region is additionally cut to the open disk
    ``|z - vertex| < 1/2``.
    """

    vertex: BoundaryPoint
    sigma: float
    truncated: bool = True

    def __post_init__(self):
        if not isinstance(self.vertex, BoundaryPoint):
            object.__setattr__(self, "vertex", BoundaryPoint(float(self.vertex)))
        if not self.sigma > 1:
            raise ValueError(f"Stolz aperture sigma must exceed 1, got {self.sigma}")

    def contains(self, z) -> bool:
        return in_stolz(z, self)


def _as_complex(p):
    if isinstance(p, BoundaryPoint):
        return p.value
    return p


def a_kernel(z, xi):
    """``A(z, xi) = (1 - |xi|^2) / (1 - z conj(xi))``.

    ``z`` may lie in the closed disk; ``xi`` must be inside. Works elementwise
    on numpy arrays.
    """
    z = _as_complex(z)
    xi = np.asarray(xi) if not np.isscalar(xi) else xi
    return (1 - abs(xi) ** 2) / (1 - z * np.conj(xi))


def in_stolz(z, region: StolzRegion):
    """Membership in a (possibly truncated) Stolz angle.

    The rim of the angle counts as inside.
    """
    zeta = region.vertex.value
    z_arr = np.asarray(z)
    inside = np.abs(1 - z_arr * np.conj(zeta)) <= region.sigma * (1 - np.abs(z_arr))
    inside &= np.abs(z_arr) < 1
    if region.truncated:
        inside &= np.abs(z_arr - zeta) < 0.5
    return bool(inside) if inside.ndim == 0 else inside


def stolz_half_aperture(r, sigma):
    """Largest ``|u|`` such that ``r e^{iu}`` lies in the untruncated ``S_sigma(1)``."""
    if r <= 0:
        return math.pi
    # |1 - r e^{iu}|^2 = (1-r)^2 + 4 r sin^2(u/2)
    s2 = (sigma * sigma - 1) * (1 - r) ** 2 / (4 * r)
    if s2 >= 1:
        return math.pi
    return 2 * math.asin(math.sqrt(s2))


def gpv_ratio(z, zeta) -> float:
    """``|1 - zeta| / |1 - conj(z) zeta|`` for ``z`` in a Stolz angle at 1."""
    z = complex(_as_complex(z))
    zeta = complex(_as_complex(zeta))
    den = abs(1 - z.conjugate() * zeta)
    if den < GPV_DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(
            f"|1 - conj(z) zeta| = {den:.3e} is below {GPV_DENOMINATOR_FLOOR:g}"
        )
    return abs(1 - zeta) / den


def pseudo_disk(z, s):
    """Euclidean center and radius of ``{w : |(z - w)/(1 - conj(z) w)| < s}``."""
    if not 0 < s < 1:
        raise ValueError(f"pseudohyperbolic radius must lie in (0, 1), got {s}")
    z = complex(z)
    r = abs(z)
    den = 1 - s * s * r * r
    center = (1 - s * s) * z / den
    radius = (1 - r) * (1 + r) * s / den
    return center, radius


def pseudo_disk_offset(z, s):
    """``(center - z, radius)`` of the pseudohyperbolic disk, without cancellation.

    ``center - z = -z s^2 (1 - |z|^2) / (1 - s^2 |z|^2)``; useful when
    ``|z|`` is close to 1 and the disk is tiny compared with ``|z|``.
    """
    if not 0 < s < 1:
        raise ValueError(f"pseudohyperbolic radius must lie in (0, 1), got {s}")
    z = complex(z)
    r = abs(z)
    one_minus_r2 = (1 - r) * (1 + r)
    den = 1 - s * s * r * r
    return -z * s * s * one_minus_r2 / den, one_minus_r2 * s / den


def point_on_pi4_ray(r: float, vertex: BoundaryPoint) -> complex:
    """Point of modulus ``r`` on the segment ``arg(1 - z conj(vertex)) = pi/4``.

    The segment leaves the vertex into the half of the Stolz angle that lies
    clockwise of the radius; returns ``None`` if no such point has modulus r.
    """
    # z = 1 - t e^{i pi/4}; |z|^2 = 1 - sqrt(2) t + t^2 = r^2
    one_minus_r2 = (1 - r) * (1 + r)
    disc = 2 - 4 * one_minus_r2
    if disc < 0 or r >= 1:
        return None
    t = 2 * one_minus_r2 / (math.sqrt(2) + math.sqrt(disc))
    w = 1 - t * cmath.exp(1j * math.pi / 4)
    return w * vertex.value
