import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskarg.errors import DegenerateDenominatorError
from diskarg.geometry import (
    BoundaryPoint,
    StolzRegion,
    a_kernel,
    gpv_ratio,
    in_stolz,
    point_on_pi4_ray,
    pseudo_disk,
    stolz_half_aperture,
    wrap_angle,
)

disk_radius = st.floats(0.0, 0.999999)
angles = st.floats(-math.pi, math.pi)


def test_boundary_point_has_unit_modulus_and_wraps():
    p = BoundaryPoint(3 * math.pi)
    assert p.theta == pytest.approx(math.pi)
    assert abs(p.value) == pytest.approx(1.0, abs=1e-16)
    assert BoundaryPoint(-math.pi).theta == math.pi
    assert wrap_angle(2 * math.pi + 0.1) == pytest.approx(0.1)


def test_stolz_region_rejects_small_aperture():
    with pytest.raises(ValueError):
        StolzRegion(BoundaryPoint(0), 1.0)


def test_a_kernel_examples():
    assert a_kernel(0, 0.6) == pytest.approx(0.64)
    assert a_kernel(0.3 + 0.4j, 0) == 1
    # independent complex arithmetic in mpmath
    ref = (1 - mpmath.mpf("0.5") ** 2) / (1 - mpmath.mpc("0.5") * mpmath.conj(mpmath.mpc("0.5")))
    assert a_kernel(0.5, 0.5) == pytest.approx(complex(ref), rel=1e-15)
    assert a_kernel(0.5, 0.5) == pytest.approx(1.0)


def test_a_kernel_boundary_point_argument():
    z = BoundaryPoint(0.7)
    assert a_kernel(z, 0.3j) == pytest.approx((1 - 0.09) / (1 - z.value * -0.3j))


def test_in_stolz_examples():
    reg = StolzRegion(BoundaryPoint(0.0), 2.0, truncated=False)
    assert in_stolz(0, reg)
    for sigma in (1.01, 2.0, 10.0):
        reg_s = StolzRegion(BoundaryPoint(0.4), sigma, truncated=False)
        assert in_stolz(0.999 * cmath.exp(0.4j), reg_s)
    z = (1 - 1e-3) * cmath.exp(0.1j)
    assert abs(1 - z) > 2 * (1 - abs(z))
    assert not in_stolz(z, reg)


def test_truncation_removes_far_points():
    reg = StolzRegion(BoundaryPoint(0.0), 5.0, truncated=True)
    assert not in_stolz(0.4, reg)
    assert in_stolz(0.6, reg)
    assert in_stolz(0.4, StolzRegion(BoundaryPoint(0.0), 5.0, truncated=False))


def test_in_stolz_vectorized():
    reg = StolzRegion(BoundaryPoint(0.0), 2.0)
    z = np.array([0.9, 0.9 * np.exp(0.5j), 0.99])
    assert in_stolz(z, reg).tolist() == [True, False, True]


@given(st.floats(1e-6, 1 - 1e-9), st.floats(1.0001, 20.0))
def test_half_aperture_is_on_the_rim(r, sigma):
    u = stolz_half_aperture(r, sigma)
    if u < math.pi:
        z = r * cmath.exp(1j * u)
        assert abs(1 - z) == pytest.approx(sigma * (1 - r), rel=1e-9)


def test_gpv_examples():
    zeta = cmath.exp(0.5j)
    assert gpv_ratio(0, zeta) == pytest.approx(abs(1 - zeta))
    assert gpv_ratio(0.3 + 0.1j, 0) == 1.0
    assert math.isfinite(gpv_ratio(0.9, zeta))
    with pytest.raises(DegenerateDenominatorError):
        gpv_ratio(1.0, 1.0)


def test_gpv_supremum_stabilizes():
    # sup over a boundary grid and Stolz samples at r = 1 - 2^-j
    reg = StolzRegion(BoundaryPoint(0.0), 2.0, truncated=False)
    zetas = np.exp(1j * np.linspace(-math.pi, math.pi, 2001))

    def sup_for(js):
        best = 0.0
        for j in js:
            r = 1 - 2.0 ** -j
            u = stolz_half_aperture(r, 2.0) * (1 - 1e-12)
            for uu in np.linspace(-u, u, 9):
                z = r * cmath.exp(1j * uu)
                assert in_stolz(z, reg)
                best = max(best, max(gpv_ratio(z, zt) for zt in zetas))
        return best

    assert sup_for(range(10, 21)) <= 2 * sup_for(range(5, 11))


def test_pseudo_disk_examples():
    c, rad = pseudo_disk(0, 0.3)
    assert c == 0 and rad == pytest.approx(0.3)
    c, rad = pseudo_disk(0.4 + 0.2j, 1e-8)
    assert abs(c - (0.4 + 0.2j)) < 1e-12 and rad < 1e-7
    c, rad = pseudo_disk(0.5, 1 / 3)
    assert c == pytest.approx(0.457142857142857, abs=1e-12)
    assert rad == pytest.approx(0.257142857142857, abs=1e-12)
    with pytest.raises(ValueError):
        pseudo_disk(0.1, 1.0)


def _pseudo_circle(z, s, n):
    # w with |(z - w)/(1 - conj(z) w)| = s: the automorphism image of |v| = s
    v = s * np.exp(1j * np.linspace(0, 2 * np.pi, n, endpoint=False))
    return (z - v) / (1 - np.conj(z) * v)


def _pseudo_offsets(z, s, n):
    # w - z = -v (1 - |z|^2) / (1 - conj(z) v), free of cancellation near the circle
    v = s * np.exp(1j * np.linspace(0, 2 * np.pi, n, endpoint=False))
    r = abs(z)
    return -v * ((1 - r) * (1 + r)) / (1 - np.conj(z) * v)


def test_pseudo_disk_matches_sampled_circle(rng):
    n = 100_000
    r = np.sqrt(rng.uniform(0, 0.998, n))
    z = r * np.exp(1j * rng.uniform(-np.pi, np.pi, n))
    s = rng.uniform(1e-3, 0.99, n)
    v = s * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    w = (z - v) / (1 - np.conj(z) * v)
    assert np.allclose(np.abs((z - w) / (1 - np.conj(z) * w)), s, rtol=1e-9)
    centers = np.empty(n, dtype=complex)
    radii = np.empty(n)
    for i in range(n):
        centers[i], radii[i] = pseudo_disk(z[i], s[i])
    assert np.max(np.abs(np.abs(w - centers) - radii)) <= 1e-10


@settings(max_examples=200)
@given(disk_radius, angles, st.floats(1e-4, 0.9999))
def test_pseudo_inclusion_hypothesis(r, phi, h):
    z = r * cmath.exp(1j * phi)
    d = np.abs(_pseudo_offsets(z, h / (2 + h), 64))
    assert np.all(d <= h * (1 - r) * (1 + 1e-12))


def test_point_on_pi4_ray():
    v = BoundaryPoint(0.3)
    for r in (0.8, 0.99, 1 - 2.0 ** -16):
        z = point_on_pi4_ray(r, v)
        assert abs(z) == pytest.approx(r, rel=1e-14)
        w = 1 - z * np.conj(v.value)
        assert cmath.phase(w) == pytest.approx(math.pi / 4, abs=1e-9)
    assert point_on_pi4_ray(0.5, v) is None
