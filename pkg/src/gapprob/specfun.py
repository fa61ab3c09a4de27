"""Scalar special functions backing the operator and Painleve machinery.

Validated wrappers over scipy.special plus a few regularized forms (scaled
Bessel, the Bessel integral) that the integral-operator code needs in
cancellation-safe shape.  Everything here is pure and deterministic: the same
input always produces the bit-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

__all__ = [
    "SpecFunConfig",
    "airy_ai",
    "airy_ai_prime",
    "bessel_j",
    "bessel_j_scaled",
    "bessel_j_integral",
    "gamma_fn",
    "sinc_pi",
]


@dataclass(frozen=True)
class SpecFunConfig:
    """Accuracy targets and branch switchover points."""

    target_abs_tol: float = 1e-12
    # |z| below which J_nu(z)/z^nu is evaluated by its Maclaurin series.
    bessel_scaled_switchover: float = 0.5

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")
        if not self.bessel_scaled_switchover > 0:
            raise ValueError("bessel_scaled_switchover must be positive")


CONFIG = SpecFunConfig()


def _validated(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return arr


def _match(x, value):
    # return a scalar when the input was a scalar
    if np.ndim(x) == 0:
        return float(value)
    return value


def airy_ai(x):
    """Airy function Ai(x) for real x.

    Underflows gracefully to 0 for large positive x.
    """
    arr = _validated(x, "x")
    with np.errstate(over="ignore", invalid="ignore"):
        val = _sp.airy(arr)[0]
    return _match(x, val)


def airy_ai_prime(x):
    """Derivative Ai'(x) of the Airy function for real x."""
    arr = _validated(x, "x")
    with np.errstate(over="ignore", invalid="ignore"):
        val = _sp.airy(arr)[1]
    return _match(x, val)


def bessel_j(nu, x):
    """Bessel function J_nu(x) for real order nu > -1 and x >= 0."""
    if not np.isfinite(nu) or nu <= -1:
        raise ValueError(f"order must satisfy nu > -1, got {nu!r}")
    arr = _validated(x, "x")
    if np.any(arr < 0):
        raise ValueError("argument must satisfy x >= 0")
    return _match(x, _sp.jv(nu, arr))


def bessel_j_scaled(nu, z):
    """Regularized Bessel function J_nu(z) / z^nu for z >= 0.

    Entire in z**2, equal to 2**(-nu) / Gamma(1 + nu) at z = 0.  Used where
    the z^nu prefactor must be factored out analytically so that kernels and
    boundary data stay smooth.
    """
    if not np.isfinite(nu) or nu <= -1:
        raise ValueError(f"order must satisfy nu > -1, got {nu!r}")
    arr = _validated(z, "z")
    if np.any(arr < 0):
        raise ValueError("argument must satisfy z >= 0")
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr < CONFIG.bessel_scaled_switchover
    if np.any(small):
        zs = arr[small]
        # Maclaurin series: sum_k (-1)^k (z/2)^(2k) / (k! Gamma(nu+k+1)) * 2^-nu
        acc = np.full_like(zs, 1.0 / (2.0**nu * _sp.gamma(nu + 1.0)))
        term = acc.copy()
        q = zs * zs / 4.0
        for k in range(1, 30):
            term = term * (-q) / (k * (nu + k))
            acc += term
            if np.all(np.abs(term) <= 1e-18 * (np.abs(acc) + 1e-300)):
                break
        out[small] = acc
    if np.any(~small):
        zl = arr[~small]
        out[~small] = _sp.jv(nu, zl) / zl**nu
    return _match(z, out if np.ndim(z) else out[0])


def bessel_j_integral(nu, z):
    """Integral of J_nu from 0 to z, for nu > -1 and z >= 0.

    Evaluated through the rapidly convergent expansion
    2 * sum_{k>=0} J_{nu+2k+1}(z); the total mass over (0, inf) is 1.
    """
    if not np.isfinite(nu) or nu <= -1:
        raise ValueError(f"order must satisfy nu > -1, got {nu!r}")
    zf = float(z)
    if not np.isfinite(zf) or zf < 0:
        raise ValueError("argument must satisfy z >= 0")
    if zf == 0.0:
        return 0.0
    total = 0.0
    tiny_run = 0
    kmax = int(2 * zf) + 60
    for k in range(kmax):
        term = 2.0 * _sp.jv(nu + 2 * k + 1, zf)
        total += term
        if abs(term) < 1e-17 * (1.0 + abs(total)):
            tiny_run += 1
            if tiny_run >= 3:
                break
        else:
            tiny_run = 0
    return total


def gamma_fn(x):
    """Gamma function for real x > 0."""
    arr = _validated(x, "x")
    if np.any(arr <= 0):
        raise ValueError("argument must satisfy x > 0")
    if np.ndim(x) == 0:
        return math.gamma(float(x))
    return _sp.gamma(arr)


def sinc_pi(u):
    """Normalized sinc sin(pi*u)/(pi*u), with the removable value 1 at u = 0."""
    arr = _validated(u, "u")
    return _match(u, np.sinc(arr))
