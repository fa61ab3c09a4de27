"""Gauss-Legendre rules and interval maps for the Nystrom discretization.

Nodes are computed by Newton iteration on the Legendre recurrence with the
standard Chebyshev-type initial guesses, so rules are reproducible without
external tables.  Mapped rules cover finite intervals (affine map) and
semi-infinite intervals (rational map x = s + L*u/(1-u)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureRule",
    "MappedRule",
    "gauss_legendre",
    "gauss_jacobi01",
    "map_finite",
    "map_semi_infinite",
]

MAX_ORDER = 2048


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre rule on the reference interval (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int


@dataclass(frozen=True, eq=False)
class MappedRule:
    """A reference rule pushed forward to a physical interval.

    map_kind is "finite" with params (a, b), or "semi_infinite" with
    params (s, L) for the rational map x = s + L*u/(1-u), u in (0, 1).
    """

    nodes: np.ndarray
    weights: np.ndarray
    map_kind: str
    map_params: tuple
    order: int

    def doubled(self) -> "MappedRule":
        """Same map rebuilt at twice the Gauss order (for error estimates)."""
        rule = gauss_legendre(2 * self.order)
        if self.map_kind == "finite":
            return map_finite(rule, *self.map_params)
        return map_semi_infinite(rule, *self.map_params)


def _legendre_and_derivative(n, x):
    # evaluate P_n and P_n' by the three-term recurrence
    p0 = np.ones_like(x)
    p1 = x.copy()
    if n == 1:
        return p1, p0
    for m in range(2, n + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadratureRule:
    """Gauss-Legendre rule of order n on (-1, 1), nodes increasing."""
    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_ORDER:
        raise ValueError(f"order must be an integer in [1, {MAX_ORDER}], got {n!r}")
    n = int(n)
    if n == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]), 1)
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (4 * k - 1) / (4 * n + 2.0))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce exact symmetry, then ascending order
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    idx = np.argsort(x)
    x, w = x[idx], w[idx]
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w, n)


@lru_cache(maxsize=None)
def gauss_jacobi01(n: int, beta: float):
    """Nodes/weights for int_0^1 f(u) u**beta du, beta > -1.

    Shifted Gauss-Jacobi rule; exact for polynomial f up to degree 2n-1.
    Returns (nodes, weights) as read-only arrays.
    """
    from scipy.special import roots_jacobi

    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_ORDER:
        raise ValueError(f"order must be an integer in [1, {MAX_ORDER}], got {n!r}")
    if not np.isfinite(beta) or beta <= -1:
        raise ValueError(f"beta must satisfy beta > -1, got {beta!r}")
    x, w = roots_jacobi(int(n), 0.0, float(beta))
    u = 0.5 * (x + 1.0)
    wu = w * 0.5 ** (beta + 1.0)
    u.setflags(write=False)
    wu.setflags(write=False)
    return u, wu


def map_finite(rule: QuadratureRule, a: float, b: float) -> MappedRule:
    """Affine image of a reference rule on the finite interval (a, b)."""
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise ValueError(f"need finite a < b, got a={a!r}, b={b!r}")
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = mid + half * rule.nodes
    weights = half * rule.weights
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return MappedRule(nodes, weights, "finite", (float(a), float(b)), rule.order)


def map_semi_infinite(rule: QuadratureRule, s: float, L: float = 2.0) -> MappedRule:
    """Rational-map image of a reference rule on (s, infinity).

    Nodes are x = s + L*u/(1-u) with u in (0, 1); weights carry the Jacobian
    L/(1-u)**2.  L = 2 is tuned to Airy-type decay exp(-(2/3) x^(3/2)).
    """
    if not np.isfinite(L) or L <= 0:
        raise ValueError(f"map scale must satisfy L > 0, got {L!r}")
    if not np.isfinite(s):
        raise ValueError(f"left endpoint must be finite, got {s!r}")
    u = 0.5 * (rule.nodes + 1.0)
    wu = 0.5 * rule.weights
    nodes = s + L * u / (1.0 - u)
    weights = wu * L / (1.0 - u) ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return MappedRule(nodes, weights, "semi_infinite", (float(s), float(L)), rule.order)
