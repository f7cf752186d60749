import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as G

from diskarg.blaschke import ZeroSequence
from diskarg.errors import QuadratureError
from diskarg.experiments import gen_conjugate_pairs, oracle_naive_rl
from diskarg.fraccalc import (
    RadialFunction,
    convergence_class_integral,
    kernel_bound_ratio,
    rl_integral,
    rl_integral_many,
    weighted_integrals,
)
from diskarg.measures import BoundedFunctionSpec

KERNEL = lambda x: np.abs(1 - x * np.exp(0.3j)) ** -2  # noqa: E731


def mp_rl(f, gamma, r):
    """Reference fractional integral by mpmath, singularity removed by s = u^(1/gamma)."""
    mpmath.mp.dps = 30
    g, r = mpmath.mpf(gamma), mpmath.mpf(r)
    val = mpmath.quad(lambda u: f(r - u ** (1 / g)), [0, r**g]) / g
    return float(val / mpmath.gamma(g))


def test_closed_form_examples():
    assert 0.9 / G(1.5) == pytest.approx(1.015541, abs=1e-6)
    assert rl_integral(lambda x: np.ones_like(x), 0.5, 0.81).value == pytest.approx(0.9 / G(1.5), rel=1e-12)
    near_one = rl_integral(lambda x: x, 0.5, 1 - 1e-12).value
    assert near_one == pytest.approx(1 / G(2.5), rel=1e-10)
    assert 1 / G(2.5) == pytest.approx(0.7522528, abs=1e-7)
    assert rl_integral(lambda x: 3.0 * np.ones_like(x), 1.0, 0.7).value == pytest.approx(2.1, rel=1e-13)


@pytest.mark.parametrize("gamma", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
def test_power_closed_forms(gamma, r):
    one = rl_integral(lambda x: np.ones_like(x), gamma, r)
    lin = rl_integral(lambda x: x, gamma, r)
    assert abs(one.value / (r ** gamma / G(gamma + 1)) - 1) <= 1e-8
    assert abs(lin.value / (r ** (1 + gamma) / G(2 + gamma)) - 1) <= 1e-8
    assert one.quadrature_error_estimate >= 0 and one.nodes_used > 0


def test_matches_mpmath_for_smooth_and_peaked():
    for f, mpf in (
        (np.cos, mpmath.cos),
        (KERNEL, lambda x: 1 / abs(1 - x * mpmath.exp(0.3j)) ** 2),
    ):
        for gamma in (0.25, 0.75):
            ref = mp_rl(mpf, gamma, 0.95)
            assert rl_integral(f, gamma, 0.95).value == pytest.approx(ref, rel=1e-9)


def test_scalar_only_callable_is_accepted():
    val = rl_integral(lambda x: math.exp(x), 0.5, 0.5).value
    ref = mp_rl(mpmath.exp, 0.5, 0.5)
    assert val == pytest.approx(ref, rel=1e-10)


def test_radial_function_wrapper():
    h = RadialFunction(lambda x: x**2)
    assert rl_integral(h, 0.5, 0.6).value == pytest.approx(2 * 0.6**2.5 / G(3.5), rel=1e-10)


def test_invalid_orders():
    with pytest.raises(ValueError):
        rl_integral(np.cos, 0.0, 0.5)
    with pytest.raises(ValueError):
        rl_integral(np.cos, 1.5, 0.5)


def test_nonconvergence_raises():
    rough = lambda x: np.sign(np.sin(1e4 * x))  # noqa: E731
    with pytest.raises(QuadratureError) as exc:
        rl_integral(rough, 0.5, 0.9, rtol=1e-14, atol=0, max_panels=20)
    assert exc.value.error_estimate > 0


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.05, 1.0), st.floats(0.1, 0.999))
def test_linearity(a, b, gamma, r):
    h1, h2 = np.cos, KERNEL
    lhs = rl_integral(lambda x: a * h1(x) + b * h2(x), gamma, r, rtol=1e-12).value
    rhs = a * rl_integral(h1, gamma, r, rtol=1e-12).value + b * rl_integral(h2, gamma, r, rtol=1e-12).value
    scale = abs(a) * rl_integral(lambda x: np.abs(h1(x)), gamma, r).value + abs(b) * rl_integral(h2, gamma, r).value
    assert abs(lhs - rhs) <= 1e-9 * max(scale, 1e-300)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.01, 0.999), st.floats(0.0, 10.0))
def test_positivity(gamma, r, k):
    assert rl_integral(lambda x: np.sin(k * x) ** 2, gamma, r).value >= 0


@pytest.mark.parametrize("name,h", [("one", lambda x: np.ones_like(x)), ("x", lambda x: x), ("kernel", KERNEL)])
def test_oracle_equivalence(name, h):
    r = 1 - 2.0 ** -10
    main = rl_integral(h, 0.5, r).value
    ref = oracle_naive_rl(h, 0.5, r, 10**6)
    assert abs(main - ref) <= 1e-6 * abs(ref)


def test_oracle_example():
    assert oracle_naive_rl(lambda x: np.ones_like(x), 0.5, 0.81) == pytest.approx(1.015541, abs=1e-6)


def test_semigroup_on_constant():
    g1, g2, r = 0.3, 0.4, 0.8
    inner = lambda x: np.asarray(x) ** g2 / G(g2 + 1)  # D^{-g2} 1, closed form
    nested = rl_integral(inner, g1, r).value
    direct = rl_integral(lambda x: np.ones_like(x), g1 + g2, r).value
    assert nested == pytest.approx(direct, rel=1e-6)
    # and with the inner integral computed numerically at every node
    inner_num = lambda x: np.array([rl_integral(lambda y: np.ones_like(y), g2, float(t)).value for t in np.atleast_1d(x)])
    assert rl_integral(inner_num, g1, r, rtol=1e-8).value == pytest.approx(direct, rel=1e-6)


def test_many_matches_single():
    radii = np.array([0.3, 0.9, 0.999])
    ks = np.array([0.5, 1.0, 2.0])
    vals, errs, nodes, ok = rl_integral_many(lambda x, i: np.cos(ks[i] * x), 0.6, radii, rtol=1e-12, atol=1e-15)
    assert ok.all()
    for v, r, k in zip(vals, radii, ks):
        assert v == pytest.approx(rl_integral(lambda x: np.cos(k * x), 0.6, r).value, rel=1e-10)


def test_weighted_integrals_offset_interval():
    val, err, _, ok = weighted_integrals(lambda s, i: np.ones_like(s), 0.5, 0.25, 1.0)
    assert ok[0]
    assert val[0] == pytest.approx((1 - 0.5) / 0.5, rel=1e-12)


def test_kernel_bound_ratio_examples():
    for g in (0.2, 0.7):
        v = kernel_bound_ratio(0.0, 1.0, g, 0.9)
        assert v == pytest.approx(0.9**g / G(g + 1), rel=1e-10)
        assert v <= 1 / G(g + 1)
    assert kernel_bound_ratio(1.0, 2.0, 0.0, 0.99) == pytest.approx(1.0)


def test_kernel_bound_ratio_sweep_stabilizes():
    ratios = {j: kernel_bound_ratio(1.0, 2.0, 0.5, 1 - 2.0 ** -j) for j in range(4, 17)}
    early = max(ratios[j] for j in range(4, 9))
    late = max(ratios[j] for j in range(9, 17))
    assert late <= 1.5 * early
    # the limit is Gamma(alpha - gamma)/Gamma(alpha) = Gamma(1.5)
    assert ratios[16] == pytest.approx(G(1.5), rel=1e-3)


# -- convergence-class integral -----------------------------------------------------


def test_convergence_class_zero_for_conjugate_pairs():
    zs = gen_conjugate_pairs(ZeroSequence([0.5 + 0.3j, 0.9 - 0.2j, -0.4 + 0.1j]))
    res = convergence_class_integral(BoundedFunctionSpec(zeros=zs), 0.5, 0.999)
    assert res.value == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("gamma", [0.2, 0.5, 0.8])
def test_convergence_class_constant_argument(gamma):
    c, r_max = 0.7, 1 - 2.0 ** -12
    res = convergence_class_integral(BoundedFunctionSpec(Cprime=c), gamma, r_max)
    assert res.value == pytest.approx(c * (1 - (1 - r_max) ** gamma) / gamma, rel=1e-10)


def test_convergence_class_stable_for_frostman_sequence():
    k = np.arange(2, 400)
    spec = BoundedFunctionSpec(zeros=ZeroSequence((1 - k**-4.0) * np.exp(1j * k**-4.0)))
    vals = [convergence_class_integral(spec, 0.5, 1 - 2.0 ** -j) for j in (12, 16, 20, 24)]
    inc = np.diff([v.value for v in vals])
    assert np.all(inc >= 0)
    # increments shrink geometrically once r_max is past the zeros' reach
    assert inc[-1] < 0.5 * inc[0]
    assert not vals[-1].truncated
