"""Gauss rules and interval maps, checked against closed forms and numpy."""

import math

import numpy as np
import pytest

from gapprob.quadrature import (
    MAX_ORDER,
    gauss_jacobi01,
    gauss_legendre,
    map_finite,
    map_semi_infinite,
)
from gapprob.specfun import airy_ai


def test_rule_n1_is_midpoint():
    r = gauss_legendre(1)
    assert np.allclose(r.nodes, [0.0]) and np.allclose(r.weights, [2.0])


def test_rule_n2_closed_form():
    r = gauss_legendre(2)
    assert np.allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(r.weights, [1.0, 1.0], atol=1e-15)


def test_rule_invariants():
    for n in [3, 10, 64, 257]:
        r = gauss_legendre(n)
        assert np.all(np.diff(r.nodes) > 0)
        assert np.all(r.weights > 0)
        assert abs(r.weights.sum() - 2.0) < 1e-13
        assert r.nodes[0] > -1 and r.nodes[-1] < 1


def test_degree_exactness_monomial():
    r = gauss_legendre(20)
    val = np.dot(r.weights, r.nodes**38)
    assert math.isclose(val, 2.0 / 39.0, rel_tol=1e-13)


@pytest.mark.parametrize("n", [3, 16, 64, 257])
def test_against_numpy_leggauss_oracle(n):
    r = gauss_legendre(n)
    xn, wn = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(r.nodes - xn)) < 1e-14
    assert np.max(np.abs(r.weights - wn)) < 1e-13


def test_order_validation():
    for bad in [0, -3, MAX_ORDER + 1, 2.5]:
        with pytest.raises(ValueError):
            gauss_legendre(bad)


def test_map_finite_trivials():
    r = map_finite(gauss_legendre(1), 0.0, 3.0)
    assert np.allclose(r.nodes, [1.5]) and np.allclose(r.weights, [3.0])
    r2 = map_finite(gauss_legendre(2), 0.0, 1.0)
    assert math.isclose(float(np.dot(r2.weights, r2.nodes)), 0.5, rel_tol=1e-15)


def test_map_finite_sine_integral():
    r = map_finite(gauss_legendre(24), 0.0, 2.0)
    val = float(np.dot(r.weights, np.sin(np.pi * r.nodes)))
    assert abs(val) < 1e-12


def test_map_finite_rejects_bad_interval():
    with pytest.raises(ValueError):
        map_finite(gauss_legendre(4), 1.0, 1.0)


def test_semi_infinite_exponential():
    r = map_semi_infinite(gauss_legendre(64), 0.0, 1.0)
    val = float(np.dot(r.weights, np.exp(-r.nodes)))
    assert abs(val - 1.0) < 1e-10


def test_semi_infinite_gaussian_moment():
    r = map_semi_infinite(gauss_legendre(64), 0.0, 1.0)
    val = float(np.dot(r.weights, r.nodes * np.exp(-r.nodes**2)))
    assert abs(val - 0.5) < 1e-9


def test_semi_infinite_airy_mass():
    # int_0^inf Ai = 1/3; oracle value confirmed by high-n self-convergence
    r = map_semi_infinite(gauss_legendre(96), 0.0, 2.0)
    val = float(np.dot(r.weights, airy_ai(r.nodes)))
    assert abs(val - 1.0 / 3.0) < 1e-8
    r2 = map_semi_infinite(gauss_legendre(192), 0.0, 2.0)
    val2 = float(np.dot(r2.weights, airy_ai(r2.nodes)))
    assert abs(val - val2) < 1e-10


def test_semi_infinite_rejects_bad_scale():
    with pytest.raises(ValueError):
        map_semi_infinite(gauss_legendre(4), 0.0, 0.0)


def test_order_doubling_convergence():
    # |Q_2n - Q_n| decreases monotonically down to the floating floor
    def q(n):
        r = map_semi_infinite(gauss_legendre(n), 0.0, 2.0)
        return float(np.dot(r.weights, np.exp(-r.nodes) * np.cos(r.nodes)))

    diffs = [abs(q(2 * n) - q(n)) for n in (32, 64, 128)]
    assert diffs[1] < diffs[0]
    assert diffs[2] < diffs[1] or diffs[2] < 1e-14


def test_mapped_weights_positive():
    for r in [map_finite(gauss_legendre(33), -2.0, 5.0),
              map_semi_infinite(gauss_legendre(33), -2.0, 2.0)]:
        assert np.all(r.weights > 0)


def test_doubled_rebuild():
    r = map_semi_infinite(gauss_legendre(16), 1.0, 2.0)
    r2 = r.doubled()
    assert r2.order == 32 and r2.map_kind == "semi_infinite"
    assert r2.map_params == r.map_params


def test_gauss_jacobi01_moments():
    u, w = gauss_jacobi01(12, 0.5)
    # int_0^1 u^(1/2) u^k du = 1/(k + 3/2)
    for k in range(6):
        assert math.isclose(float(w @ u**k), 1.0 / (k + 1.5), rel_tol=1e-13)
