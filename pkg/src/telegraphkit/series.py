"""The two Bessel-type power series and overflow-safe density kernels.

All closed-form laws in this package are built from

    S0(z) = sum_{n>=0} z^n / (n!)^2        = I0(2*sqrt(z)),
    S1(z) = sum_{n>=0} z^n / (n! (n+1)!)   = I1(2*sqrt(z)) / sqrt(z),

multiplied by the exponential weight ``theta``.  Both factors are extreme
for large rates (S grows like exp(2*sqrt(z)) while theta decays like
exp(-lambda*t)), so every product is assembled from the exponentially
scaled series ``S_j(z) * exp(-2*sqrt(z))`` and a single non-positive
log-weight ``2*sqrt(z) - lambda0*xi0 - lambda1*xi1``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, i0e, i1e

from .core import TelegraphParams, xi_pair

__all__ = [
    "series_i0",
    "series_i1",
    "scaled_series_pair",
    "theta_factors",
    "log_theta",
    "power_term",
]

# Above this argument the partial sums need hundreds of terms and the
# unscaled values approach overflow; switch to the exponentially scaled
# evaluation, carrying the exponent separately.
_LARGE_Z = 2500.0
_MAX_TERMS = 500
_TERM_RTOL = 1e-16


def _series_pair_direct(z):
    """Unscaled (S0, S1) by term recursion; valid for 0 <= z <= _LARGE_Z.

    term ratios: S0 terms multiply by z/(n+1)^2, S1 terms by z/((n+1)(n+2)).
    Vectorised: iterate until every element's term is below _TERM_RTOL of
    its partial sum.
    """
    z = np.asarray(z, dtype=float)
    s0 = np.ones_like(z)
    s1 = np.ones_like(z)
    t0 = np.ones_like(z)
    t1 = np.ones_like(z)
    for n in range(_MAX_TERMS):
        t0 = t0 * z / (n + 1.0) ** 2
        t1 = t1 * z / ((n + 1.0) * (n + 2.0))
        s0 += t0
        s1 += t1
        if np.all(t0 <= _TERM_RTOL * s0) and np.all(t1 <= _TERM_RTOL * s1):
            break
    return s0, s1


def _check_arg(z):
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("series argument must be finite")
    if np.any(z < 0):
        raise ValueError("series argument must be nonnegative")
    return z


def scaled_series_pair(z):
    """(S0(z), S1(z)) * exp(-2*sqrt(z)); never overflows, array friendly."""
    z = _check_arg(z)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out0 = np.empty_like(z)
    out1 = np.empty_like(z)
    small = z <= _LARGE_Z
    if np.any(small):
        zs = z[small]
        s0, s1 = _series_pair_direct(zs)
        damp = np.exp(-2.0 * np.sqrt(zs))
        out0[small] = s0 * damp
        out1[small] = s1 * damp
    if np.any(~small):
        zl = z[~small]
        arg = 2.0 * np.sqrt(zl)
        out0[~small] = i0e(arg)
        out1[~small] = i1e(arg) / np.sqrt(zl)
    if scalar:
        return float(out0[0]), float(out1[0])
    return out0, out1


def series_i0(z):
    """S0(z) = sum z^n/(n!)^2; z >= 0.  Overflows to inf for z > ~1.2e5."""
    z = _check_arg(z)
    if z.ndim == 0 and z <= _LARGE_Z:
        return float(_series_pair_direct(z)[0])
    s0, _ = scaled_series_pair(z)
    return s0 * np.exp(2.0 * np.sqrt(np.asarray(z, dtype=float)))


def series_i1(z):
    """S1(z) = sum z^n/(n!(n+1)!); z >= 0.  S1(0) = 1."""
    z = _check_arg(z)
    if z.ndim == 0 and z <= _LARGE_Z:
        return float(_series_pair_direct(z)[1])
    _, s1 = scaled_series_pair(z)
    return s1 * np.exp(2.0 * np.sqrt(np.asarray(z, dtype=float)))


def theta_factors(params: TelegraphParams, t, x):
    """(theta*S0, theta*S1) at (t, x), assembled in log space.

    ``t`` and ``x`` may be arrays (broadcastable).  The support indicator is
    the caller's job: outside ``gamma1*t < x < gamma0*t`` the occupation
    times go negative and the returned values are meaningless there (z is
    clipped at 0 so the computation stays finite).
    """
    xi0, xi1 = xi_pair(params, t, x)
    z = np.maximum(params.lambda0 * params.lambda1 * xi0 * xi1, 0.0)
    root = 2.0 * np.sqrt(z)
    # AM-GM: 2*sqrt(l0 l1 xi0 xi1) <= l0 xi0 + l1 xi1, so inside the support
    # the exponent is <= 0; the clip only tames out-of-support points.
    weight = np.exp(np.minimum(root - params.lambda0 * xi0 - params.lambda1 * xi1, 0.0))
    weight = weight / params.velocity_gap
    s0, s1 = scaled_series_pair(z)
    return weight * s0, weight * s1


def log_theta(params: TelegraphParams, t, x):
    """log of theta(t, x); array friendly, never overflows."""
    xi0, xi1 = xi_pair(params, t, x)
    return (
        -params.lambda0 * xi0
        - params.lambda1 * xi1
        - math.log(params.velocity_gap)
    )


def power_term(z, k: int, shift: int, log_scale):
    """z^k / (k! * (k + shift)!) * exp(log_scale), formed in log space.

    Used for the fixed-switch-count densities, whose n-th terms pair a huge
    power z^k with a vanishing exponential weight.  ``shift`` is 0 or 1.
    Elements with z == 0 contribute 0 unless k == 0.
    """
    if k < 0:
        raise ValueError("power index must be nonnegative")
    z = np.asarray(z, dtype=float)
    log_scale = np.asarray(log_scale, dtype=float)
    lg = log_scale - gammaln(k + 1.0) - gammaln(k + 1.0 + shift)
    if k == 0:
        return np.exp(lg) * np.ones_like(z)
    safe = np.where(z > 0.0, z, 1.0)
    return np.where(z > 0.0, np.exp(k * np.log(safe) + lg), 0.0)
