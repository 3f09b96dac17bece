import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hardy_cones.exceptions import QuadratureError
from hardy_cones.quadrature import IntervalMap, composite_nodes, gauss_rule, integrate, tensor_nodes


def test_gauss_rule_exact_for_polynomials():
    x, w = gauss_rule(4)
    for k in range(8):
        assert w @ x ** k == pytest.approx((1 - (-1) ** (k + 1)) / (k + 1), abs=1e-15)


def test_composite_weights_sum_to_length():
    _, w = composite_nodes(np.array([0.0, 0.3, 2.0]), 5)
    assert w.sum() == pytest.approx(2.0, rel=1e-15)


def test_integrate_vector_valued():
    res = integrate(lambda x: np.vstack([np.sin(x), np.exp(x)]), [0.0, math.pi])
    np.testing.assert_allclose(res.value, [2.0, math.exp(math.pi) - 1], rtol=1e-12)


def test_integrate_failure_carries_partial():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.abs(x - 1 / 3) ** -0.5, [0.0, 1.0], max_level=3)
    assert info.value.partial is not None
    res = integrate(lambda x: np.abs(x - 1 / 3) ** -0.5, [0.0, 1.0], max_level=3, raise_on_fail=False)
    assert res.error > 1e-11


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.05, max_value=3.0), st.floats(min_value=0.5, max_value=20.0))
def test_integrate_against_scipy(a, b):
    from scipy.integrate import quad
    f = lambda x: np.exp(-a * x) * np.cos(x)
    ref = quad(f, 0.0, b, epsabs=1e-15, epsrel=1e-12, limit=200)[0]
    assert integrate(f, [0.0, b]).value == pytest.approx(ref, rel=1e-9, abs=1e-13)


def test_tensor_nodes_area_and_moment():
    X, Y, W = tensor_nodes((0.0, 2.0, 1.0, 4.0), 3, 2)
    assert W.sum() == pytest.approx(6.0)
    assert np.sum(W * X * Y) == pytest.approx(2.0 * 7.5)


@pytest.mark.parametrize("kind, k, lo, hi", [("affine", 1, 0.5, 2.0), ("power", 5, 0.0, 1.0), ("exp", 1, 1e-6, 1.0)])
def test_interval_map_endpoints_and_jacobian(kind, k, lo, hi):
    m = IntervalMap(lo, hi, kind, k)
    r, dr = m(np.array([0.0, 1.0]))
    assert r[0] == pytest.approx(lo) and r[1] == pytest.approx(hi)
    t = np.linspace(0.2, 0.8, 5)
    h = 1e-6
    fd = (m(t + h)[0] - m(t - h)[0]) / (2 * h)
    np.testing.assert_allclose(m(t)[1], fd, rtol=1e-6)


def test_power_map_handles_endpoint_singularity():
    # int_0^1 r^-0.9 dr = 10
    res = IntervalMap(0.0, 1.0, "power", 20).integrate(lambda r: r ** -0.9)
    assert res.value == pytest.approx(10.0, rel=1e-10)


def test_exp_map_log_scale():
    # int_lo^hi dr / r = log(hi/lo)
    res = IntervalMap(1e-8, 1.0, "exp").integrate(lambda r: 1 / r)
    assert res.value == pytest.approx(math.log(1e8), rel=1e-12)


def test_interval_map_validation():
    with pytest.raises(ValueError):
        IntervalMap(1.0, 1.0)
    with pytest.raises(ValueError):
        IntervalMap(0.0, 1.0, "exp")
