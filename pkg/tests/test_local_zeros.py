import math

import numpy as np
import pytest

from diskarg.blaschke import ZeroSequence, factor, product_log
from diskarg.errors import AtZeroError
from diskarg.experiments import random_spec
from diskarg.geometry import a_kernel
from diskarg.local_zeros import (
    LocalCount,
    L_value,
    local_count,
    local_count_many,
    lower_bound_constant,
    tsuji_bound_check,
)
from diskarg.measures import BoundedFunctionSpec


def test_local_count_examples():
    z, h = 0.6 + 0.2j, 0.5
    rho = h * (1 - abs(z))
    assert local_count(ZeroSequence([-0.5]), z, h) == LocalCount(0, 0.0)
    # 0.75 sits exactly h(1 - |z|) = 0.25 from z = 0.5 in binary arithmetic
    edge = local_count(ZeroSequence([0.75]), 0.5, 0.5)
    assert edge.n == 1 and edge.N == pytest.approx(0.0, abs=1e-14)
    one = local_count(ZeroSequence([z + rho / math.e]), z, h)
    assert one.n == 1 and one.N == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(AtZeroError):
        local_count(ZeroSequence([z]), z, h)
    with pytest.raises(ValueError):
        local_count(ZeroSequence([0.1]), z, 1.0)


def test_local_count_brute_force_and_additivity(rng):
    for _ in range(50):
        a = (1 - rng.uniform(0, 1, 200) ** 3) * np.exp(1j * rng.uniform(-0.3, 0.3, 200))
        z = rng.uniform(0.5, 0.999) * np.exp(1j * rng.uniform(-0.3, 0.3))
        h = rng.uniform(0.05, 0.95)
        rho = h * (1 - abs(z))
        d = np.abs(a - z)
        lc = local_count(ZeroSequence(a), z, h)
        assert lc.n == int(np.sum(d <= rho))
        assert lc.N == pytest.approx(sum(math.log(rho / x) for x in d[d <= rho]), rel=1e-12, abs=1e-15)
        assert lc.N >= 0
        mask = rng.uniform(size=a.size) < 0.5
        p1 = local_count(ZeroSequence(a[mask]), z, h)
        p2 = local_count(ZeroSequence(a[~mask]), z, h)
        assert p1.n + p2.n == lc.n
        assert p1.N + p2.N == pytest.approx(lc.N, rel=1e-14, abs=1e-15)


def test_local_count_many_matches_single(rng):
    a = (1 - rng.uniform(0, 1, 500) ** 2) * np.exp(1j * rng.uniform(-np.pi, np.pi, 500))
    zs = ZeroSequence(a)
    z = rng.uniform(0, 0.999, 300) * np.exp(1j * rng.uniform(-np.pi, np.pi, 300))
    many = local_count_many(zs, z, 0.5)
    single = np.array([local_count(zs, w, 0.5).N for w in z])
    assert np.allclose(many, single, rtol=1e-12, atol=1e-14)


def test_L_value_examples():
    assert L_value(BoundedFunctionSpec(), 0.4 + 0.3j, 0.5) == 0
    a, z = -0.5, 0.6
    L = L_value(BoundedFunctionSpec(zeros=ZeroSequence([a])), z, 0.5)
    assert L == pytest.approx(product_log(ZeroSequence([a]), z).value, rel=1e-15)
    assert L.real == pytest.approx(math.log(abs(factor(z, a))), rel=1e-14)
    assert L.real < 0


def test_re_L_nonpositive(rng):
    for _ in range(500):
        spec = random_spec(rng)
        z = rng.uniform(0, 0.999) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        h = rng.uniform(0.01, 0.99)
        try:
            assert L_value(spec, z, h).real <= 1e-10
        except AtZeroError:
            pass


def test_tsuji_examples():
    assert tsuji_bound_check(ZeroSequence(), 0.3) == (0.0, 0.0)
    A = abs(a_kernel(-0.9, 0.5))
    assert A == pytest.approx(0.75 / 1.45, rel=1e-14)
    assert tsuji_bound_check(ZeroSequence([0.5]), -0.9) == (0.0, 0.0)


def test_tsuji_inequality(rng):
    for _ in range(300):
        a = (1 - rng.uniform(0, 1, 40) ** 2) * np.exp(1j * rng.uniform(-np.pi, np.pi, 40))
        z = rng.uniform(0, 0.9999) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        lhs, rhs = tsuji_bound_check(ZeroSequence(a), z)
        assert lhs <= rhs + 1e-12


def test_lower_bound_constant(rng):
    for h in (0.25, 0.5, 0.75):
        C = lower_bound_constant(h)
        assert math.isfinite(C) and C >= 2
        for _ in range(100):
            n = rng.integers(1, 30)
            a = rng.uniform(0.5, 0.9999, n) * np.exp(1j * rng.uniform(-np.pi, np.pi, n))
            z = rng.uniform(0, 0.9999) * np.exp(1j * rng.uniform(-np.pi, np.pi))
            spec = BoundedFunctionSpec(zeros=ZeroSequence(a))
            try:
                L = L_value(spec, z, h)
            except AtZeroError:
                continue
            S = float(np.sum(np.abs(a_kernel(z, a))))
            assert L.real >= -C * S - 1e-12
