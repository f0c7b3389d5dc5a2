"""Telegraphic meanders: paths pinned to one side of their start.

The positive meander is the event that the running minimum stays at 0,
which for opposite-sign velocities forces the start state 0; its terminal
position has an atom on the ballistic point plus a density on
``(0, gamma0*t)``.  The negative meander (running maximum 0, start state
1) is the same object under the 0/1 state interchange.  In the same-sign
regimes the path never changes sign, so one meander carries the whole
position law and the other is empty.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
from scipy.integrate import quad

from .core import TelegraphParams, VelocityRegime, xi_pair
from .laws import Atom, MixedLaw
from .position import position_law
from .series import log_theta, power_term, theta_factors

__all__ = [
    "MeanderSign",
    "meander_atom",
    "meander_switch_density",
    "meander_density",
    "meander_law",
    "meander_integral_equation_residual",
]


class MeanderSign(Enum):
    POSITIVE = "positive"  # running minimum stays at 0; start state 0
    NEGATIVE = "negative"  # running maximum stays at 0; start state 1


def _check_opposite(params):
    if params.regime is not VelocityRegime.OPPOSITE_SIGNS:
        raise ValueError("meander closed forms require velocities of opposite signs")


def meander_atom(params: TelegraphParams, sign: MeanderSign, t: float) -> Atom:
    """No-switch meander: the whole path is one ballistic segment."""
    _check_opposite(params)
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")
    i = 0 if sign is MeanderSign.POSITIVE else 1
    return Atom(location=params.velocity(i) * t, mass=math.exp(-params.rate(i) * t))


def meander_switch_density(params: TelegraphParams, sign: MeanderSign, t: float, x, n: int):
    """Density of {terminal position in dx, n switches, path one-sided}.

    Positive sign: support (0, gamma0*t); negative: (gamma1*t, 0).
    ``n >= 1``; ``x`` may be an array.
    """
    _check_opposite(params)
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")
    if n <= 0:
        raise ValueError("switch count must be >= 1; n = 0 is the atom")
    x_arr = np.asarray(x, dtype=float)
    if sign is MeanderSign.POSITIVE:
        inside = (x_arr > 0.0) & (x_arr < params.gamma0 * t)
        lam_own, lam_other = params.lambda0, params.lambda1
        gam_own, gam_other = params.gamma0, params.gamma1
    else:
        inside = (x_arr > params.gamma1 * t) & (x_arr < 0.0)
        lam_own, lam_other = params.lambda1, params.lambda0
        gam_own, gam_other = params.gamma1, params.gamma0
    xi0, xi1 = xi_pair(params, t, x_arr)
    xi_own = xi0 if sign is MeanderSign.POSITIVE else xi1
    xi_other = xi1 if sign is MeanderSign.POSITIVE else xi0
    z = np.where(inside, params.lambda0 * params.lambda1 * xi0 * xi1, 0.0)
    lt = np.where(inside, log_theta(params, t, x_arr), -np.inf)
    if n % 2 == 1:
        k = (n - 1) // 2
        safe = np.where(xi_own > 0, xi_own, 1.0)
        val = (
            lam_own
            / safe
            * (x_arr - gam_other * xi_other / (k + 1.0))
            * power_term(z, k, 0, lt)
            / gam_own
        )
    else:
        k = n // 2 - 1
        val = (
            params.lambda0
            * params.lambda1
            * x_arr
            * power_term(z, k, 1, lt)
            / gam_own
        )
    out = np.where(inside, val, 0.0)
    return float(out) if np.ndim(x) == 0 else out


def meander_density(params: TelegraphParams, sign: MeanderSign, t: float, x):
    """Continuous part of the meander law, summed over switch counts."""
    _check_opposite(params)
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")
    x_arr = np.asarray(x, dtype=float)
    th0, th1 = theta_factors(params, t, x_arr)
    xi0, xi1 = xi_pair(params, t, x_arr)
    if sign is MeanderSign.POSITIVE:
        inside = (x_arr > 0.0) & (x_arr < params.gamma0 * t)
        safe = np.where(xi0 > 0, xi0, 1.0)
        val = (params.lambda0 / params.gamma0) * (
            x_arr / safe * th0
            + (params.lambda1 * x_arr - params.gamma1 * xi1 / safe) * th1
        )
    else:
        inside = (x_arr > params.gamma1 * t) & (x_arr < 0.0)
        safe = np.where(xi1 > 0, xi1, 1.0)
        val = (params.lambda1 / params.gamma1) * (
            x_arr / safe * th0
            + (params.lambda0 * x_arr - params.gamma0 * xi0 / safe) * th1
        )
    out = np.where(inside, val, 0.0)
    return float(out) if np.ndim(x) == 0 else out


def _zero_law(label: str) -> MixedLaw:
    return MixedLaw(atoms=(), density=lambda x: np.zeros_like(np.asarray(x, dtype=float)), support=None, label=label)


def meander_law(params: TelegraphParams, sign: MeanderSign, t: float) -> MixedLaw:
    """Meander law; total mass is P{path stays one-sided up to t} <= 1.

    Same-sign regimes are dispatched explicitly: the path preserves its
    sign, so the matching meander is the whole position law (started in
    the state the sign implies) and the opposite meander is the zero law.
    """
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")
    regime = params.regime
    label = f"meander({sign.value}, t={t})"
    if regime is VelocityRegime.BOTH_POSITIVE:
        if sign is MeanderSign.POSITIVE:
            return position_law(params, 0, t)
        return _zero_law(label)
    if regime is VelocityRegime.BOTH_NEGATIVE:
        if sign is MeanderSign.NEGATIVE:
            return position_law(params, 1, t)
        return _zero_law(label)
    support = (0.0, params.gamma0 * t) if sign is MeanderSign.POSITIVE else (params.gamma1 * t, 0.0)
    return MixedLaw(
        atoms=(meander_atom(params, sign, t),),
        density=lambda x: meander_density(params, sign, t, x),
        support=support,
        label=label,
    )


def meander_integral_equation_residual(
    params: TelegraphParams, t: float, x: float, n: int, epsabs: float = 1e-11
) -> tuple[float, float]:
    """Residuals of the last-switch conditioning equations for the
    positive meander at (t, x), n >= 1.

    First: the (2n+2)-switch density against an integral over the final
    upward segment; second: the (2n+1)-switch density against an integral
    over the final downward segment.
    """
    _check_opposite(params)
    if not (0.0 < x < params.gamma0 * t):
        raise ValueError("need 0 < x < gamma0*t")
    if n < 1:
        raise ValueError("need n >= 1")

    lhs_even = meander_switch_density(params, MeanderSign.POSITIVE, t, x, 2 * n + 2)
    rhs_even, _ = quad(
        lambda s: params.lambda1
        * math.exp(-params.lambda0 * s)
        * meander_switch_density(params, MeanderSign.POSITIVE, t - s, x - params.gamma0 * s, 2 * n + 1),
        0.0,
        x / params.gamma0,
        epsabs=epsabs,
        limit=200,
    )
    _, xi1 = xi_pair(params, t, x)
    lhs_odd = meander_switch_density(params, MeanderSign.POSITIVE, t, x, 2 * n + 1)
    rhs_odd, _ = quad(
        lambda s: params.lambda0
        * math.exp(-params.lambda1 * s)
        * meander_switch_density(params, MeanderSign.POSITIVE, t - s, x - params.gamma1 * s, 2 * n),
        0.0,
        float(xi1),
        epsabs=epsabs,
        limit=200,
    )
    return abs(lhs_even - rhs_even), abs(lhs_odd - rhs_odd)
