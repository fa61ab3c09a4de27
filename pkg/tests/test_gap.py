"""Public gap API: values, routes, spacing density, identity suites."""

import math

import numpy as np
import pytest

from gapprob import (
    CapabilityError,
    GapQuery,
    bulk_beta1_generating,
    gap_bulk,
    gap_eval,
    gap_hard,
    gap_soft,
    hard_to_soft_limit,
    spacing_density_bulk,
    verify_identities,
    wigner_surmise,
)
from gapprob.gap import _det_sine_pm


def test_query_validation():
    with pytest.raises(ValueError):
        GapQuery("bulk", 3, 1.0)
    with pytest.raises(ValueError):
        GapQuery("bulk", 2, -1.0)
    with pytest.raises(ValueError):
        GapQuery("hard", 2, 1.0)  # missing a
    with pytest.raises(ValueError):
        GapQuery("soft", 2, 1.0, a=0.5)
    with pytest.raises(ValueError):
        GapQuery("bulk", 2, 1.0, xi=0.0)
    with pytest.raises(ValueError):
        GapQuery("bulk", 2, 1.0, route="magic")


def test_bulk_small_s_expansion():
    s = 1e-3
    val = gap_bulk(2, s)
    assert abs(val - (1.0 - s)) < 1e-9


def test_bulk_factorization_routes():
    for s in (0.5, 1.0):
        full = gap_bulk(2, s, route="fredholm")
        pain = gap_bulk(2, s, route="painleve")
        assert abs(full - pain) < 1e-8


def test_bulk_beta4_two_routes():
    for s in (0.5, 1.0):
        f = gap_bulk(4, s, route="fredholm")
        p = gap_bulk(4, s, route="painleve")
        assert abs(f - p) < 1e-6


def test_bulk_beta4_xi_unsupported():
    with pytest.raises(CapabilityError) as err:
        gap_bulk(4, 1.0, xi=0.5)
    assert "beta=4" in str(err.value)


def test_bulk_beta1_generating_sign_convention():
    # at xi = 1 the pair-sum over (2n, 2n-1) reduces to the plain gap
    s = 0.8
    assert abs(bulk_beta1_generating(s, 1.0, "minus") - gap_bulk(1, s)) < 1e-14
    # and the (2n, 2n+1) variant dominates it
    assert bulk_beta1_generating(s, 1.0, "plus") >= gap_bulk(1, s)
    assert abs(bulk_beta1_generating(s, 1e-12, "minus") - 1.0) < 1e-6


def test_soft_examples():
    # at s = 0 the orthogonal value equals the one-sided determinant route
    assert abs(gap_soft(1, 0.0, route="fredholm")
               - gap_soft(1, 0.0, route="painleve")) < 1e-6
    # beta = 2 with xi = 0.5: split-product equals the tau product
    assert abs(gap_soft(2, 0.0, 0.5, "fredholm")
               - gap_soft(2, 0.0, 0.5, "painleve")) < 1e-6
    # far right tail: everything is 1
    for beta in (1, 2, 4):
        assert abs(gap_soft(beta, 6.0) - 1.0) < 1e-5


def test_hard_examples():
    from gapprob.fredholm import det_bessel_k, det_bessel_v

    # kernel route vs split route through the discrete square
    lhs = det_bessel_k(1.0, 0.0, 1.0, n=96).value
    rhs = gap_hard(2, 1.0, 0.0)
    assert abs(lhs - rhs) < 1e-10
    # orthogonal value at ensemble parameter (a-1)/2 = 0 uses order 1
    assert abs(gap_hard(1, 1.0, 0.0) - det_bessel_v(1.0, 1.0, 1.0, n=96).value) < 1e-12
    # vanishing interval
    assert 1.0 - gap_hard(2, 1e-4, 1.0) < 1e-3


def test_hard_beta4_shift_validation():
    with pytest.raises(ValueError):
        gap_hard(4, 1.0, -0.5)


def test_values_in_unit_interval():
    vals = [gap_bulk(b, s) for b in (1, 2, 4) for s in (0.25, 1.0)]
    vals += [gap_soft(b, s) for b in (1, 2, 4) for s in (-2.0, 2.0)]
    vals += [gap_hard(b, s, 1.0) for b in (1, 2, 4) for s in (0.5, 4.0)]
    assert all(0.0 < v <= 1.0 for v in vals)


def test_beta4_dominates_beta2():
    # arithmetic vs geometric mean of the positive sub-unit tau factors
    for s in (0.25, 0.5, 1.0):
        assert gap_bulk(4, 0.5 * s) >= gap_bulk(2, s) - 1e-12
    for s in (-1.0, 0.0, 1.0):
        assert gap_soft(4, s) >= gap_soft(2, s) - 1e-12


def test_xi_monotone_beta2():
    for regime, fn in (("bulk", lambda x: gap_bulk(2, 1.0, x)),
                       ("soft", lambda x: gap_soft(2, 0.0, x)),
                       ("hard", lambda x: gap_hard(2, 1.0, 0.5, x))):
        vals = [fn(x) for x in (0.25, 0.5, 0.75, 1.0)]
        assert np.all(np.diff(vals) < 0), regime


def test_gap_eval_routes():
    rec = gap_eval(GapQuery("soft", 2, 0.0, route="both"))
    assert "route_discrepancy" in rec
    assert rec["route_discrepancy"] < 1e-6
    assert rec["error_estimate"] < 1e-8


def test_spacing_density():
    # integrates to 1 and stays within 2 percent of the surmise on [0, 3]
    from gapprob.quadrature import gauss_legendre, map_finite

    rule = map_finite(gauss_legendre(40), 1e-3, 5.0)
    mass = float(rule.weights @ [spacing_density_bulk(max(s, 3e-3)) for s in rule.nodes])
    assert abs(mass - 1.0) < 1e-3
    worst = max(abs(spacing_density_bulk(s) - wigner_surmise(s))
                for s in np.linspace(0.05, 3.0, 60))
    assert worst <= 0.02
    assert spacing_density_bulk(0.01) < 5e-2  # level repulsion at the origin


def test_spacing_density_validation():
    with pytest.raises(ValueError):
        spacing_density_bulk(1e-4, h=1e-3)


def test_verify_bulk_suite_passes():
    reports = verify_identities("bulk")
    assert reports and all(r.passed for r in reports)


def test_verify_lemmas_suite_passes():
    reports = verify_identities("lemmas", tolerance=1e-5)
    assert reports and all(r.passed for r in reports)


def test_verify_reports_structure():
    reports = verify_identities("bulk")
    names = [r.identity_name for r in reports]
    assert names == sorted(names)
    r = reports[0]
    d = r.as_dict()
    assert set(d) == {"identity", "lhs", "rhs", "abs_diff", "rel_diff",
                      "tolerance", "pass", "diagnostics"}
    assert (r.abs_diff <= r.tolerance) or (r.rel_diff <= r.tolerance) == r.passed


def test_verify_unknown_suite():
    with pytest.raises(ValueError):
        verify_identities("nonsense")


def test_xi_suite_at_one_matches_plain():
    # the xi = 1 entries of the xi suite recompute the xi-free quantities
    # through the same cached evaluators, hence identical floats
    lhs = _det_sine_pm(0.5, "+", 1.0, 64).value
    from gapprob.painleve import tau_iii

    rhs = tau_iii((math.pi * 0.5) ** 2, -0.5, 1.0).value
    reports = verify_identities("xi")
    tagged = [r for r in reports if r.identity_name == "xi_bulk_det_tau[s=0.5,xi=1.0]"]
    assert len(tagged) == 1
    assert tagged[0].lhs == lhs and abs(tagged[0].rhs - rhs) < 1e-12


def test_hard_to_soft_limit_decreasing():
    for s in (0.0, 1.0):
        reports = hard_to_soft_limit([4.0, 6.0, 10.0], s)
        assert all(r.passed for r in reports)
        assert reports[-1].abs_diff < 0.02
