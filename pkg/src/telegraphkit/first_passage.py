"""First-passage-time laws through a fixed threshold.

Three regimes, split by the velocity signs and the sign of the threshold
``y``:

* both velocities share the sign of ``y``: passage is almost sure and the
  passage time lives on the bounded segment with ends ``y/gamma0`` and
  ``y/gamma1``;
* both velocities point away from ``y``: the threshold is never reached
  and the law is empty;
* opposite signs: the passage time has a half-line support and the law
  may be defective (positive probability of never reaching ``y``).  For
  ``y > 0`` the crossing happens at the positive velocity, which forces a
  parity pattern in the switch count (even counts from state 0, odd from
  state 1); ``y < 0`` follows by the state/space interchange.

The density evaluators broadcast over both the time and the threshold
argument (thresholds of either sign may be mixed in one array; exact
zeros in an array contribute zero density).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core import TelegraphParams, VelocityRegime, xi_pair
from .laws import Atom, MixedLaw
from .series import log_theta, power_term, theta_factors

__all__ = [
    "ThresholdSpec",
    "threshold_support",
    "fpt_atom",
    "fpt_switch_density",
    "fpt_density",
    "fpt_law",
    "fpt_with_reversal_density",
    "fpt_integral_equation_residual",
    "default_horizon",
]


@dataclass(frozen=True)
class ThresholdSpec:
    """Threshold plus the time support of its passage law.

    ``support`` is a bounded segment when both velocities share the sign
    of ``y``, a half line in the opposite-signs regime, and ``None`` when
    the threshold is unreachable.  ``proper`` marks the almost-sure case.
    """

    y: float
    support: tuple[float, float] | None
    proper: bool


def _check_scalar_threshold(y):
    if np.ndim(y) == 0 and y == 0:
        raise ValueError("threshold must be nonzero (the origin is the start point)")


def _check_state(i):
    if i not in (0, 1):
        raise ValueError(f"initial state must be 0 or 1, got {i!r}")


def threshold_support(params: TelegraphParams, y: float) -> ThresholdSpec:
    _check_scalar_threshold(y)
    regime = params.regime
    if regime is VelocityRegime.OPPOSITE_SIGNS:
        start = y / params.gamma0 if y > 0 else y / params.gamma1
        return ThresholdSpec(y=y, support=(start, math.inf), proper=False)
    reachable = (y > 0) if regime is VelocityRegime.BOTH_POSITIVE else (y < 0)
    if not reachable:
        return ThresholdSpec(y=y, support=None, proper=False)
    lo, hi = sorted((y / params.gamma0, y / params.gamma1))
    return ThresholdSpec(y=y, support=(lo, hi), proper=True)


def fpt_atom(params: TelegraphParams, i: int, y: float) -> Atom | None:
    """No-switch passage: present iff the initial velocity points at y."""
    _check_scalar_threshold(y)
    _check_state(i)
    hit = y / params.velocity(i)
    if hit <= 0:
        return None
    return Atom(location=hit, mass=math.exp(-params.rate(i) * hit))


def _samesign_switch(params, i, t, y, n):
    """Fixed-count density where both velocities share the threshold sign."""
    lo = np.minimum(y / params.gamma0, y / params.gamma1)
    hi = np.maximum(y / params.gamma0, y / params.gamma1)
    if params.regime is VelocityRegime.BOTH_POSITIVE:
        inside = (y > 0) & (t > lo) & (t < hi)
    else:
        inside = (y < 0) & (t > lo) & (t < hi)
    xi0, xi1 = xi_pair(params, t, y)  # occupation split at the space point y
    z = np.where(inside, params.lambda0 * params.lambda1 * xi0 * xi1, 0.0)
    lt = np.where(inside, log_theta(params, t, y), -np.inf)
    if n % 2 == 1:
        k = (n - 1) // 2
        val = params.rate(i) * abs(params.velocity(1 - i)) * power_term(z, k, 0, lt)
    else:
        k = n // 2 - 1
        xi_i = (xi0, xi1)[i]
        val = (
            params.lambda0
            * params.lambda1
            * abs(params.velocity(i))
            * xi_i
            * power_term(z, k, 1, lt)
        )
    return np.where(inside, val, 0.0)


def _opposite_pos_switch(params, i, t, y, n):
    """Fixed-count density, opposite signs, valid where y > 0."""
    inside = (y > 0) & (t > y / params.gamma0)
    xi0, xi1 = xi_pair(params, t, y)
    z = np.where(inside, params.lambda0 * params.lambda1 * xi0 * xi1, 0.0)
    lt = np.where(inside, log_theta(params, t, y), -np.inf)
    if i == 0:
        if n % 2 == 1:
            return np.zeros(np.broadcast(t, y).shape)
        k = n // 2 - 1
        val = params.lambda0 * params.lambda1 * y * power_term(z, k, 1, lt)
    else:
        if n % 2 == 0:
            return np.zeros(np.broadcast(t, y).shape)
        k = (n - 1) // 2
        safe_xi0 = np.where(xi0 > 0, xi0, 1.0)
        val = (
            params.lambda1
            / safe_xi0
            * (y - params.gamma1 * xi1 / (k + 1.0))
            * power_term(z, k, 0, lt)
        )
    return np.where(inside, val, 0.0)


def fpt_switch_density(params: TelegraphParams, i: int, t, y, n: int):
    """Density of {passage time in dt, exactly n switches before passage}.

    ``n >= 1``; the n = 0 contribution is the atom (see ``fpt_atom``).
    Returns 0 identically when the threshold is unreachable.  Broadcasts
    over ``t`` and ``y``.
    """
    _check_scalar_threshold(y)
    _check_state(i)
    if n <= 0:
        raise ValueError("switch count must be >= 1; n = 0 is the atom")
    scalar = np.ndim(t) == 0 and np.ndim(y) == 0
    t_arr = np.asarray(t, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if params.regime is VelocityRegime.OPPOSITE_SIGNS:
        pos = _opposite_pos_switch(params, i, t_arr, np.where(y_arr > 0, y_arr, 1.0), n)
        swapped = params.interchanged()
        neg = _opposite_pos_switch(swapped, 1 - i, t_arr, np.where(y_arr < 0, -y_arr, 1.0), n)
        out = np.where(y_arr > 0, pos, np.where(y_arr < 0, neg, 0.0))
    else:
        out = _samesign_switch(params, i, t_arr, y_arr, n)
    return float(out) if scalar else out


def _samesign_density(params, i, t, y):
    lo = np.minimum(y / params.gamma0, y / params.gamma1)
    hi = np.maximum(y / params.gamma0, y / params.gamma1)
    if params.regime is VelocityRegime.BOTH_POSITIVE:
        inside = (y > 0) & (t > lo) & (t < hi)
    else:
        inside = (y < 0) & (t > lo) & (t < hi)
    th0, th1 = theta_factors(params, t, y)
    xi0, xi1 = xi_pair(params, t, y)
    xi_i = (xi0, xi1)[i]
    val = params.rate(i) * (
        abs(params.velocity(1 - i)) * th0
        + params.rate(1 - i) * abs(params.velocity(i)) * xi_i * th1
    )
    return np.where(inside, val, 0.0)


def _opposite_density(params, i, t, y):
    """Summed density for opposite signs, written out for both threshold
    signs in the original parameters (an independent route against the
    interchanged fixed-count formulas)."""
    th0, th1 = theta_factors(params, t, y)
    xi0, xi1 = xi_pair(params, t, y)
    safe_xi0 = np.where(xi0 > 0, xi0, 1.0)
    safe_xi1 = np.where(xi1 > 0, xi1, 1.0)
    if i == 0:
        val_pos = params.lambda0 * params.lambda1 * y * th1
        val_neg = params.lambda0 / safe_xi1 * (-y * th0 + params.gamma0 * xi0 * th1)
    else:
        val_pos = params.lambda1 / safe_xi0 * (y * th0 - params.gamma1 * xi1 * th1)
        val_neg = -params.lambda0 * params.lambda1 * y * th1
    inside_pos = (y > 0) & (t > y / params.gamma0)
    inside_neg = (y < 0) & (t > y / params.gamma1)
    return np.where(inside_pos, val_pos, np.where(inside_neg, val_neg, 0.0))


def fpt_density(params: TelegraphParams, i: int, t, y):
    """Continuous part of the passage-time law, summed over switch counts.

    Broadcasts over ``t`` and ``y``.
    """
    _check_scalar_threshold(y)
    _check_state(i)
    scalar = np.ndim(t) == 0 and np.ndim(y) == 0
    t_arr = np.asarray(t, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if params.regime is VelocityRegime.OPPOSITE_SIGNS:
        out = _opposite_density(params, i, t_arr, y_arr)
    else:
        out = _samesign_density(params, i, t_arr, y_arr)
    return float(out) if scalar else out


def fpt_law(params: TelegraphParams, i: int, y: float) -> MixedLaw:
    """Passage-time law as a mixed distribution.

    Total mass is 1 in the reachable same-sign regime, 0 when unreachable,
    and in (0, 1] (possibly defective) for opposite signs; ``total_mass``
    reports the actual mass, no normalisation is applied.
    """
    _check_state(i)
    spec = threshold_support(params, y)
    atom = fpt_atom(params, i, y)
    atoms = () if (atom is None or spec.support is None) else (atom,)
    return MixedLaw(
        atoms=atoms,
        density=lambda t: fpt_density(params, i, t, y),
        support=spec.support,
        label=f"first-passage(i={i}, y={y})",
    )


def fpt_with_reversal_density(params: TelegraphParams, i: int, t, y, n: int):
    """Density of passage with a velocity switch at the passage instant.

    Exactly the plain passage density scaled by the reversal rate at the
    crossing velocity: lambda0 for y > 0, lambda1 for y < 0 (opposite
    signs only).
    """
    if params.regime is not VelocityRegime.OPPOSITE_SIGNS:
        raise ValueError("reversal law requires velocities of opposite signs")
    _check_scalar_threshold(y)
    factor = params.lambda0 if y > 0 else params.lambda1
    return factor * fpt_switch_density(params, i, t, y, n)


def fpt_integral_equation_residual(
    params: TelegraphParams, t: float, y: float, n: int, epsabs: float = 1e-11
) -> tuple[float, float]:
    """Residuals of the two coupled integral equations at (t, y), n >= 1.

    First: the 2n-switch density from state 0 against conditioning on the
    first switch (which must happen before the straight run would reach
    y).  Second: the (2n+1)-switch density from state 1 likewise.  Both
    sides use only closed forms; the integrals are adaptive quadratures.
    """
    if params.regime is not VelocityRegime.OPPOSITE_SIGNS:
        raise ValueError("the coupled equations are stated for opposite signs")
    if not (y > 0 and t > y / params.gamma0):
        raise ValueError("need y > 0 and t > y/gamma0")
    if n < 1:
        raise ValueError("need n >= 1")

    lhs0 = fpt_switch_density(params, 0, t, y, 2 * n)
    rhs0, _ = quad(
        lambda tau: params.lambda0
        * math.exp(-params.lambda0 * tau)
        * fpt_switch_density(params, 1, t - tau, y - params.gamma0 * tau, 2 * n - 1),
        0.0,
        y / params.gamma0,
        epsabs=epsabs,
        limit=200,
    )
    _, xi1 = xi_pair(params, t, y)
    lhs1 = fpt_switch_density(params, 1, t, y, 2 * n + 1)
    rhs1, _ = quad(
        lambda tau: params.lambda1
        * math.exp(-params.lambda1 * tau)
        * fpt_switch_density(params, 0, t - tau, y - params.gamma1 * tau, 2 * n),
        0.0,
        float(xi1),
        epsabs=epsabs,
        limit=200,
    )
    return abs(lhs0 - rhs0), abs(lhs1 - rhs1)


def default_horizon(params: TelegraphParams, y: float) -> float:
    """Simulation horizon that keeps the censored passage mass negligible
    in the proper cases: 50 times the slowest relevant time scale."""
    return 50.0 * max(
        1.0 / params.lambda0,
        1.0 / params.lambda1,
        abs(y / params.gamma0),
        abs(y / params.gamma1),
    )
