"""Monte Carlo samplers against dense-matrix and analytic oracles."""

import math

import numpy as np
import pytest

from gapprob import gap
from gapprob.ensembles import (
    EnsembleSpec,
    empirical_gap_hard,
    empirical_gap_soft,
    sample_eigenvalues,
)


def dense_gue_2x2(rng):
    """Direct 2x2 draw with eigenvalue density prop. to e^(-x1^2-x2^2)(x1-x2)^2."""
    d = rng.normal(0.0, math.sqrt(0.5), 2)
    o = rng.normal(0.0, 0.5) + 1j * rng.normal(0.0, 0.5)
    H = np.array([[d[0], o], [np.conj(o), d[1]]])
    return np.linalg.eigvalsh(H)


def test_reproducibility():
    spec = EnsembleSpec("gaussian", 2, 20, seed=123)
    a = sample_eigenvalues(spec)
    b = sample_eigenvalues(spec)
    assert np.array_equal(a, b)
    e1 = empirical_gap_soft(spec, 0.0, 1000)
    e2 = empirical_gap_soft(spec, 0.0, 1000)
    assert e1 == e2


def test_two_by_two_gue_against_dense_oracle():
    # tridiagonal sampler vs direct dense sampling vs the closed form
    # E[lambda_max] = sqrt(2/pi) for the e^(-x^2) weight at N = 2
    trials = 100_000
    rng = np.random.default_rng(2026)
    tri = np.empty(trials)
    dense = np.empty(trials)
    for i in range(trials):
        spec = EnsembleSpec("gaussian", 2, 2, seed=int(rng.integers(2**62)))
        tri[i] = sample_eigenvalues(spec)[-1]
        dense[i] = dense_gue_2x2(rng)[-1]
    closed = math.sqrt(2.0 / math.pi)
    se = tri.std() / math.sqrt(trials)
    assert abs(tri.mean() - closed) < 3.0 * se
    assert abs(tri.mean() - dense.mean()) < 3.0 * math.sqrt(2.0) * se


def test_semicircle_total_variation():
    spec = EnsembleSpec("gaussian", 2, 500, seed=11)
    lams = []
    rng = np.random.default_rng(99)
    for _ in range(200):
        s = EnsembleSpec("gaussian", 2, 500, seed=int(rng.integers(2**62)))
        lams.append(sample_eigenvalues(s) / math.sqrt(2.0 * 500))
    lams = np.concatenate(lams)
    lams = lams[np.abs(lams) <= 1.0]
    edges = np.linspace(-1.0, 1.0, 21)
    hist, _ = np.histogram(lams, bins=edges)
    emp = hist / hist.sum()
    centers = 0.5 * (edges[1:] + edges[:-1])
    sc = (2.0 / math.pi) * np.sqrt(1.0 - centers**2)
    sc = sc / sc.sum()
    tv = 0.5 * np.sum(np.abs(emp - sc))
    assert tv < 0.05


def test_laguerre_positivity():
    rng = np.random.default_rng(5)
    for beta in (1, 2, 4):
        for _ in range(10):
            spec = EnsembleSpec("laguerre", beta, 30, a=0.0,
                                seed=int(rng.integers(2**62)))
            assert np.all(sample_eigenvalues(spec) >= 0.0)


def test_empirical_soft_matches_analytic():
    spec = EnsembleSpec("gaussian", 2, 80, seed=20260810)
    emp = empirical_gap_soft(spec, 0.0, 6000)
    ana = gap.gap_soft(2, 0.0)
    assert abs(emp.estimate - ana) < 4.0 * emp.ci_halfwidth + 0.02
    assert math.isclose(emp.ci_halfwidth,
                        1.96 * math.sqrt(emp.estimate * (1 - emp.estimate) / emp.trials),
                        rel_tol=1e-12)


def test_empirical_soft_far_right_is_one():
    spec = EnsembleSpec("gaussian", 1, 50, seed=77)
    emp = empirical_gap_soft(spec, 5.0, 1500)
    assert emp.estimate >= 1.0 - 2.0 * emp.ci_halfwidth - 1e-3


def test_empirical_hard_matches_analytic():
    spec = EnsembleSpec("laguerre", 2, 80, a=0.0, seed=31415)
    emp = empirical_gap_hard(spec, 1.0, 6000)
    ana = gap.gap_hard(2, 1.0, 0.0)
    assert abs(emp.estimate - ana) < 4.0 * emp.ci_halfwidth + 0.02


def test_empirical_hard_small_interval_is_one():
    spec = EnsembleSpec("laguerre", 2, 60, a=1.0, seed=8)
    emp = empirical_gap_hard(spec, 1e-3, 1500)
    assert emp.estimate >= 1.0 - 1e-3


def test_convergence_in_N():
    ana = gap.gap_hard(1, 1.0, 0.0)
    errs = []
    for N in (25, 400):
        spec = EnsembleSpec("laguerre", 1, N, a=0.0, seed=424242)
        emp = empirical_gap_hard(spec, 1.0, 8000)
        errs.append(abs(emp.estimate - ana))
    assert errs[1] < errs[0] + 0.015  # CI noise allowance


def test_spec_validation():
    with pytest.raises(ValueError):
        EnsembleSpec("circular", 2, 10)
    with pytest.raises(ValueError):
        EnsembleSpec("gaussian", 3, 10)
    with pytest.raises(ValueError):
        EnsembleSpec("gaussian", 2, 1)
    with pytest.raises(ValueError):
        EnsembleSpec("laguerre", 2, 10, a=-1.5)
    with pytest.raises(ValueError):
        empirical_gap_soft(EnsembleSpec("gaussian", 2, 10), 0.0, 10)
    with pytest.raises(ValueError):
        empirical_gap_hard(EnsembleSpec("gaussian", 2, 10), 0.0, 2000)


def test_beta4_conventions():
    # symplectic soft edge: N/2 eigenvalues, weight e^(-x^2); the estimate
    # must track the analytic symplectic value, not the unitary one
    spec = EnsembleSpec("gaussian", 4, 60, seed=13)
    emp = empirical_gap_soft(spec, -1.0, 5000)
    e4 = gap.gap_soft(4, -1.0)
    e2 = gap.gap_soft(2, -1.0)
    assert abs(emp.estimate - e4) < abs(emp.estimate - e2)
