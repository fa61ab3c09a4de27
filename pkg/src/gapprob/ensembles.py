"""Finite-size Monte Carlo validation of the scaling-limit definitions.

Samples Gaussian and Laguerre beta-ensembles through their tridiagonal and
bidiagonal matrix models (exact for beta in {1, 2, 4}) and estimates gap
probabilities empirically at the scaled edges.  The RNG is the counter-based
Philox generator (numpy.random.Philox); identical seeds reproduce identical
sample streams, and parallel chunks draw from jumped substreams so results do
not depend on the worker count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

RNG_ALGORITHM = "numpy.random.Philox (4x64 counter-based)"

__all__ = [
    "EnsembleSpec",
    "EmpiricalGap",
    "sample_eigenvalues",
    "empirical_gap_soft",
    "empirical_gap_hard",
    "RNG_ALGORITHM",
]


@dataclass(frozen=True)
class EnsembleSpec:
    """Which finite ensemble to sample."""

    family: str
    beta: int
    n: int
    a: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.family not in ("gaussian", "laguerre"):
            raise ValueError(f"family must be gaussian or laguerre, got {self.family!r}")
        if self.beta not in (1, 2, 4):
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta!r}")
        if not (2 <= self.n <= 4000):
            raise ValueError(f"N must lie in [2, 4000], got {self.n!r}")
        if self.family == "laguerre" and not self.a > -1:
            raise ValueError(f"laguerre weight exponent must exceed -1, got {self.a!r}")


@dataclass(frozen=True)
class EmpiricalGap:
    """Binomial estimate of a gap probability."""

    estimate: float
    trials: int
    ci_halfwidth: float


def _rng(seed, chunk=0):
    bg = np.random.Philox(key=np.uint64(seed))
    if chunk:
        bg = bg.jumped(chunk)
    return np.random.Generator(bg)


def _gaussian_tridiag(rng, n, beta, weight_scale):
    """Eigenvalues with joint density prop. to prod exp(-c x^2) |Delta|^beta.

    The tridiagonal model produces weight exp(-lambda^2/2); dividing the
    eigenvalues by sqrt(2 c) converts to exp(-c x^2).
    """
    d = np.sqrt(2.0) * rng.standard_normal(n)
    k = beta * np.arange(n - 1, 0, -1)
    e = np.sqrt(rng.chisquare(k))
    lam = eigvalsh_tridiagonal(d / np.sqrt(2.0), e / np.sqrt(2.0))
    return np.sort(lam) / np.sqrt(2.0 * weight_scale)


def _laguerre_bidiag(rng, n, beta, a, rate, select=None):
    """Eigenvalues with joint density prop. to prod x^a exp(-rate x) |Delta|^beta.

    Bidiagonal model: B lower-bidiagonal with chi-distributed entries; the
    positive-definite product B B^T is tridiagonal, eigensolved directly.
    The model's natural weight is x^a exp(-x/2); eigenvalues are divided by
    2 * rate to convert.
    """
    # diagonal chi parameters 2*alpha - beta*(i-1) with alpha chosen so the
    # weight exponent equals a
    alpha = a + 1.0 + 0.5 * beta * (n - 1)
    dd = np.sqrt(rng.chisquare(2.0 * alpha - beta * np.arange(n)))
    ee = np.sqrt(rng.chisquare(beta * np.arange(n - 1, 0, -1)))
    diag = dd * dd
    diag[1:] += ee * ee
    off = dd[:-1] * ee
    if select is not None:
        lam = eigvalsh_tridiagonal(diag, off, select="i", select_range=select)
    else:
        lam = np.sort(eigvalsh_tridiagonal(diag, off))
    return lam / (2.0 * rate)


def sample_eigenvalues(spec: EnsembleSpec) -> np.ndarray:
    """One sorted draw from the requested eigenvalue density."""
    rng = _rng(spec.seed)
    if spec.family == "gaussian":
        # weight exp(-beta x^2 / 2)
        return _gaussian_tridiag(rng, spec.n, spec.beta, 0.5 * spec.beta)
    # weight x^a exp(-beta x / 2)
    return _laguerre_bidiag(rng, spec.n, spec.beta, spec.a, 0.5 * spec.beta)


def _workers():
    env = os.environ.get("GAPPROB_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _run_trials(count_fn, trials, seed):
    """Deterministic chunked Bernoulli trials; order-independent merge."""
    workers = _workers()
    # fixed chunking: substream assignment must not depend on the worker count
    chunk_size = 250
    chunks = []
    start = 0
    idx = 0
    while start < trials:
        m = min(chunk_size, trials - start)
        chunks.append((idx, m))
        start += m
        idx += 1
    if workers == 1:
        hits = sum(count_fn(_rng(seed, i), m) for i, m in chunks)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            hits = sum(ex.map(lambda im: count_fn(_rng(seed, im[0]), im[1]), chunks))
    p = hits / trials
    ci = 1.96 * np.sqrt(p * (1.0 - p) / trials)
    return EmpiricalGap(float(p), int(trials), float(ci))


def empirical_gap_soft(spec: EnsembleSpec, s: float, trials: int) -> EmpiricalGap:
    """Fraction of samples whose largest eigenvalue stays below the scaled edge.

    Gaussian edge: sqrt(2N) + s / (sqrt(2) N^(1/6)); Laguerre edge:
    4N + 2 (2N)^(1/3) s.  For beta = 4 the symplectic convention halves the
    matrix size and doubles the weight exponent while keeping the edge formula
    in the nominal N.
    """
    if trials < 1000:
        raise ValueError(f"need at least 1000 trials, got {trials!r}")
    N = spec.n
    if spec.family == "gaussian":
        edge = np.sqrt(2.0 * N) + s / (np.sqrt(2.0) * N ** (1.0 / 6.0))
        if spec.beta == 4:
            n_eff, wscale = N // 2, 1.0  # weight exp(-x^2), N/2 eigenvalues
        else:
            n_eff, wscale = N, 0.5 * spec.beta

        def count(rng, m):
            hits = 0
            for _ in range(m):
                lam = _gaussian_tridiag(rng, n_eff, spec.beta, wscale)
                hits += lam[-1] <= edge
            return hits
    else:
        edge = 4.0 * N + 2.0 * (2.0 * N) ** (1.0 / 3.0) * s
        if spec.beta == 4:
            n_eff, rate = 2 * N, 1.0  # weight x^a exp(-x), 2N eigenvalues
        else:
            n_eff, rate = N, 0.5 * spec.beta

        def count(rng, m):
            hits = 0
            hi = n_eff - 1
            for _ in range(m):
                lam = _laguerre_bidiag(rng, n_eff, spec.beta, spec.a, rate,
                                       select=(hi, hi))
                hits += lam[-1] <= edge
            return hits

    return _run_trials(count, trials, spec.seed)


def empirical_gap_hard(spec: EnsembleSpec, s: float, trials: int) -> EmpiricalGap:
    """Fraction of Laguerre samples with no eigenvalue inside (0, s/(4N)).

    beta = 4 uses matrix size N/2 with weight x^a exp(-x) and the same
    interval formula in the nominal N.
    """
    if trials < 1000:
        raise ValueError(f"need at least 1000 trials, got {trials!r}")
    if spec.family != "laguerre":
        raise ValueError("hard-edge sampling requires the laguerre family")
    N = spec.n
    cut = s / (4.0 * N)
    if spec.beta == 4:
        n_eff, rate = N // 2, 1.0
    else:
        n_eff, rate = N, 0.5 * spec.beta

    def count(rng, m):
        hits = 0
        for _ in range(m):
            lam = _laguerre_bidiag(rng, n_eff, spec.beta, spec.a, rate, select=(0, 0))
            hits += lam[0] >= cut
        return hits

    return _run_trials(count, trials, spec.seed)
