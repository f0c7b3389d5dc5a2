"""Joint law of the terminal position and the switch count.

With no switch the particle sits on the ballistic point ``gamma_i * t``
(an atom of mass ``exp(-lambda_i t)``).  With ``n >= 1`` switches the
position has a density on the open interval ``(gamma1*t, gamma0*t)``,
with separate closed forms for odd and even ``n``; summing over ``n``
gives a Bessel-series density whose total mass, together with the atom,
is exactly 1.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .core import TelegraphParams, xi_pair
from .laws import Atom, MixedLaw
from .series import log_theta, power_term, theta_factors

__all__ = [
    "position_atom",
    "position_switch_density",
    "position_density",
    "position_law",
    "switch_count_probability",
]


def _check_state(i):
    if i not in (0, 1):
        raise ValueError(f"initial state must be 0 or 1, got {i!r}")


def _check_time(t):
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")


def position_atom(params: TelegraphParams, i: int, t: float) -> Atom:
    """The no-switch point mass: location gamma_i*t, mass exp(-lambda_i*t)."""
    _check_state(i)
    _check_time(t)
    return Atom(location=params.velocity(i) * t, mass=math.exp(-params.rate(i) * t))


def position_switch_density(params: TelegraphParams, i: int, t: float, x, n: int):
    """Density of {position in dx, exactly n switches}, n >= 1.

    Zero outside the open interval (gamma1*t, gamma0*t); the boundary
    points carry no density (the atom lives at one of them for n = 0).
    ``x`` may be an array.
    """
    _check_state(i)
    _check_time(t)
    if n <= 0:
        raise ValueError("switch count must be >= 1; n = 0 is the atom")
    x_arr = np.asarray(x, dtype=float)
    inside = (x_arr > params.gamma1 * t) & (x_arr < params.gamma0 * t)
    xi0, xi1 = xi_pair(params, t, x_arr)
    z = np.where(inside, params.lambda0 * params.lambda1 * xi0 * xi1, 0.0)
    lt = np.where(inside, log_theta(params, t, x_arr), -np.inf)
    if n % 2 == 1:
        k = (n - 1) // 2
        val = params.rate(i) * power_term(z, k, 0, lt)
    else:
        k = n // 2 - 1
        xi_i = (xi0, xi1)[i]
        val = params.lambda0 * params.lambda1 * xi_i * power_term(z, k, 1, lt)
    out = np.where(inside, val, 0.0)
    return float(out) if np.ndim(x) == 0 else out


def position_density(params: TelegraphParams, i: int, t: float, x):
    """Continuous part of the position law, summed over all switch counts."""
    _check_state(i)
    _check_time(t)
    x_arr = np.asarray(x, dtype=float)
    inside = (x_arr > params.gamma1 * t) & (x_arr < params.gamma0 * t)
    th0, th1 = theta_factors(params, t, x_arr)
    xi0, xi1 = xi_pair(params, t, x_arr)
    xi_i = (xi0, xi1)[i]
    val = params.rate(i) * (th0 + params.rate(1 - i) * xi_i * th1)
    out = np.where(inside, val, 0.0)
    return float(out) if np.ndim(x) == 0 else out


def position_law(params: TelegraphParams, i: int, t: float) -> MixedLaw:
    """Full position law at time t: ballistic atom + Bessel-series density."""
    _check_state(i)
    _check_time(t)
    return MixedLaw(
        atoms=(position_atom(params, i, t),),
        density=lambda x: position_density(params, i, t, x),
        support=(params.gamma1 * t, params.gamma0 * t),
        label=f"position(i={i}, t={t})",
    )


def switch_count_probability(params: TelegraphParams, i: int, t: float, n: int) -> float:
    """P{exactly n switches by time t}, by integrating out the position."""
    _check_state(i)
    _check_time(t)
    if n < 0:
        raise ValueError("switch count must be nonnegative")
    if n == 0:
        return position_atom(params, i, t).mass
    val, _ = quad(
        lambda x: position_switch_density(params, i, t, x, n),
        params.gamma1 * t,
        params.gamma0 * t,
        epsabs=1e-12,
        limit=200,
    )
    return val
