"""Pointwise-evaluable symmetric kernels for every integral operator used here.

Each constructor returns a KernelSpec whose evaluator accepts scalars or
broadcastable arrays and handles the removable diagonal singularity of the
Christoffel-Darboux-type kernels (Airy, Bessel) analytically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import quadrature as quad
from .specfun import (
    airy_ai,
    airy_ai_prime,
    bessel_j,
    bessel_j_scaled,
    sinc_pi,
)

__all__ = [
    "KernelSpec",
    "RankOneTerm",
    "sine_kernel",
    "sine_kernel_pm",
    "airy_kernel",
    "v_soft",
    "bessel_kernel",
    "v_hard",
    "composed_square",
    "hard_rank_one",
    "soft_rank_one",
    "airy_tail",
    "bessel_integral_quad",
]

NEAR_DIAGONAL = 1e-6


@dataclass(frozen=True, eq=False)
class KernelSpec:
    """Symmetric kernel with its domain and parameter record.

    domain is ("finite", a, b) or ("semi_infinite", s).  The generating
    parameter xi is recorded here for bookkeeping but applied multiplicatively
    at the Fredholm layer (as z = xi or z = sqrt(xi)).
    """

    name: str
    evaluator: Callable
    domain: tuple
    params: dict = field(default_factory=dict)

    def __call__(self, x, y):
        return self.evaluator(x, y)


@dataclass(frozen=True, eq=False)
class RankOneTerm:
    """Separable kernel left(x) * right(y)."""

    left: Callable
    right: Callable
    params: dict = field(default_factory=dict)


def sine_kernel_pm(s: float, parity: str) -> KernelSpec:
    """Even/odd folded sine kernel sinc(x-y) +/- sinc(x+y) on (0, s).

    The determinant of this operator over (0, s) realizes the sine kernel on
    an interval of length 2s restricted to its even (+) or odd (-)
    eigenfunctions.
    """
    if not (np.isfinite(s) and s > 0):
        raise ValueError(f"interval size must satisfy s > 0, got {s!r}")
    if parity not in ("+", "-"):
        raise ValueError(f"parity must be '+' or '-', got {parity!r}")
    sign = 1.0 if parity == "+" else -1.0

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return sinc_pi(x - y) + sign * sinc_pi(x + y)

    return KernelSpec("sine_kernel_pm", evaluator, ("finite", 0.0, float(s)),
                      {"s": float(s), "parity": parity})


def sine_kernel(s: float) -> KernelSpec:
    """Plain sine kernel sinc(x - y) on (0, s)."""
    if not (np.isfinite(s) and s > 0):
        raise ValueError(f"interval size must satisfy s > 0, got {s!r}")

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return sinc_pi(x - y)

    return KernelSpec("sine_kernel", evaluator, ("finite", 0.0, float(s)), {"s": float(s)})


def airy_kernel(s: float) -> KernelSpec:
    """Airy kernel (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y) on (s, infinity).

    Diagonal by the limit Ai'(x)^2 - x Ai(x)^2; near the diagonal the value
    at the midpoint of (x, y) is used (the first-order term vanishes by
    symmetry).
    """
    if not np.isfinite(s):
        raise ValueError(f"edge position must be finite, got {s!r}")

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        d = x - y
        near = np.abs(d) < NEAR_DIAGONAL
        ax, apx = airy_ai(x), airy_ai_prime(x)
        ay, apy = airy_ai(y), airy_ai_prime(y)
        with np.errstate(divide="ignore", invalid="ignore"):
            off = (ax * apy - ay * apx) / d
        m = 0.5 * (x + y)
        am, apm = airy_ai(m), airy_ai_prime(m)
        diag = apm * apm - m * am * am
        return np.where(near, diag, off)

    return KernelSpec("airy_kernel", evaluator, ("semi_infinite", float(s)), {"s": float(s)})


def v_soft(s: float) -> KernelSpec:
    """Kernel Ai(x + u + s) on (0, infinity); its square is the shifted Airy kernel."""
    if not np.isfinite(s):
        raise ValueError(f"edge position must be finite, got {s!r}")

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return airy_ai(x + y + s)

    return KernelSpec("v_soft", evaluator, ("semi_infinite", 0.0), {"s": float(s)})


def _besselj_deriv(a, z):
    # J_a'(z) = (a/z) J_a(z) - J_{a+1}(z); stays inside orders > -1
    z = np.asarray(z, float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(z > 0, (a / np.where(z > 0, z, 1.0)) * bessel_j(a, z)
                       - bessel_j(a + 1.0, z), 0.0)
    return out


def bessel_kernel(a: float) -> KernelSpec:
    """Hard-edge Bessel kernel on (0, s); s enters through the Fredholm domain.

    Off-diagonal value (J_a(rx) ry J_a'(ry) - rx J_a'(rx) J_a(ry)) / (2(x-y))
    with rx = sqrt(x), ry = sqrt(y).  The factor 1/2 makes the kernel
    consistent with its representation as the square of the (sqrt(s)/2) J_a
    convolution kernel; without it the two determinant routes disagree.
    Diagonal by the analytic limit
        (1/4) [J_a'(r)^2 + (1 - a^2/x) J_a(r)^2],  r = sqrt(x),
    obtained from L'Hopital plus the Bessel differential equation.
    """
    if not (np.isfinite(a) and a > -1):
        raise ValueError(f"order must satisfy a > -1, got {a!r}")

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        d = x - y
        near = np.abs(d) < NEAR_DIAGONAL * np.maximum(1.0, np.abs(x))
        rx, ry = np.sqrt(x), np.sqrt(y)
        fx, fy = bessel_j(a, rx), bessel_j(a, ry)
        gx = rx * _besselj_deriv(a, rx)
        gy = ry * _besselj_deriv(a, ry)
        with np.errstate(divide="ignore", invalid="ignore"):
            off = (fx * gy - gx * fy) / (2.0 * d)
        m = 0.5 * (x + y)
        rm = np.sqrt(m)
        jm = bessel_j(a, rm)
        jpm = _besselj_deriv(a, rm)
        with np.errstate(divide="ignore", invalid="ignore"):
            diag = 0.25 * (jpm * jpm + (1.0 - np.where(m > 0, a * a / np.where(m > 0, m, 1.0), 0.0)) * jm * jm)
        return np.where(near, diag, off)

    return KernelSpec("bessel_kernel", evaluator, ("finite", 0.0, None), {"a": float(a)})


def v_hard(s: float, a: float) -> KernelSpec:
    """Kernel (sqrt(s)/2) J_a(sqrt(s x y)) on (0, 1).

    Evaluated through the regularized form (sqrt(sxy))^a * [J_a(z)/z^a] so the
    xy -> 0 branch is exact: 0 for a > 0 and sqrt(s)/2 for a = 0.
    """
    if not (np.isfinite(s) and s > 0):
        raise ValueError(f"scale must satisfy s > 0, got {s!r}")
    if not (np.isfinite(a) and a > -1):
        raise ValueError(f"order must satisfy a > -1, got {a!r}")

    def evaluator(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        z = np.sqrt(s * x * y)
        return 0.5 * np.sqrt(s) * z**a * bessel_j_scaled(a, z)

    return KernelSpec("v_hard", evaluator, ("finite", 0.0, 1.0), {"s": float(s), "a": float(a)})


def composed_square(V: KernelSpec, rule: quad.MappedRule) -> KernelSpec:
    """Kernel of V*V on the rule's domain: sum_i w_i V(x, t_i) V(t_i, y)."""
    t = rule.nodes
    w = rule.weights

    def evaluator(x, y):
        xb, yb = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        shape = xb.shape
        xf, yf = np.atleast_1d(xb).ravel(), np.atleast_1d(yb).ravel()
        vx = V.evaluator(xf[:, None], t[None, :])
        vy = V.evaluator(t[None, :], yf[:, None])
        out = np.einsum("it,t,it->i", vx, w, vy)
        return out.reshape(shape) if shape else float(out[0])

    return KernelSpec(f"square({V.name})", evaluator, V.domain, dict(V.params))


def bessel_integral_quad(a: float, z: float, n: int = 64) -> float:
    """Integral of J_a from 0 to z by mapped Gauss quadrature.

    Substitutes t = z r^2 so the integrand is r^(2a+1) times an entire
    function, which the Gauss rule resolves at spectral rates for half-integer
    a and high algebraic rates otherwise.
    """
    if z == 0.0:
        return 0.0
    rule = quad.map_finite(quad.gauss_legendre(n), 0.0, 1.0)
    r = rule.nodes
    t = z * r * r
    integrand = 2.0 * z * r * t**a * bessel_j_scaled(a, t)
    return float(np.dot(rule.weights, integrand))


def hard_rank_one(s: float, a: float, xi: float) -> RankOneTerm:
    """Separable hard-edge correction on (0, s).

    left(x) = sqrt(xi) J_a(sqrt(x)),
    right(y) = (1/(2 sqrt(y))) (1 - sqrt(xi) int_0^sqrt(y) J_a), with the
    inner integral by mapped Gauss quadrature.  right diverges integrably
    like 1/(2 sqrt(y)) as y -> 0+.
    """
    if not (np.isfinite(s) and s > 0):
        raise ValueError(f"scale must satisfy s > 0, got {s!r}")
    if not (np.isfinite(a) and a > -1):
        raise ValueError(f"order must satisfy a > -1, got {a!r}")
    if not (0.0 <= xi <= 1.0):
        raise ValueError(f"xi must lie in [0, 1], got {xi!r}")
    rxi = np.sqrt(xi)

    def left(x):
        x = np.asarray(x, float)
        return rxi * bessel_j(a, np.sqrt(x))

    def right(y):
        ya = np.atleast_1d(np.asarray(y, float))
        out = np.empty_like(ya)
        for i, yi in enumerate(ya.ravel()):
            tail = 1.0 - rxi * bessel_integral_quad(a, np.sqrt(yi))
            out.ravel()[i] = tail / (2.0 * np.sqrt(yi)) if yi > 0 else np.inf
        return out if np.ndim(y) else float(out[0])

    return RankOneTerm(left, right, {"s": float(s), "a": float(a), "xi": float(xi)})


def airy_tail(y, n: int = 96, L: float = 2.0):
    """Tail mass int_y^inf Ai(t) dt by semi-infinite Gauss quadrature."""
    ya = np.atleast_1d(np.asarray(y, float))
    out = np.empty_like(ya)
    ref = quad.gauss_legendre(n)
    for i, yi in enumerate(ya.ravel()):
        rule = quad.map_semi_infinite(ref, yi, L)
        out.ravel()[i] = float(np.dot(rule.weights, airy_ai(rule.nodes)))
    return out if np.ndim(y) else float(out[0])


def soft_rank_one(s: float, xi: float) -> RankOneTerm:
    """Separable soft-edge correction: left = sqrt(xi) Ai, right = 1 - sqrt(xi) int_y^inf Ai."""
    if not np.isfinite(s):
        raise ValueError(f"edge position must be finite, got {s!r}")
    if not (0.0 <= xi <= 1.0):
        raise ValueError(f"xi must lie in [0, 1], got {xi!r}")
    rxi = np.sqrt(xi)

    def left(x):
        return rxi * airy_ai(np.asarray(x, float))

    def right(y):
        return 1.0 - rxi * airy_tail(y)

    return RankOneTerm(left, right, {"s": float(s), "xi": float(xi)})
