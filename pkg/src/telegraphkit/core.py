"""Model parameters and point-wise kinematic quantities.

A telegraph particle starts at the origin and moves with velocity
``gamma0`` while a two-state Markov chain sits in state 0 and with
``gamma1`` while it sits in state 1; the chain leaves state ``i`` at rate
``lambda_i``.  Everything downstream (densities, first-passage laws,
meanders, extrema) is expressed through four quantities attached to a
space-time point ``(t, x)``:

* ``xi0`` / ``xi1``: the time spent in each motion state by any path that
  runs for time ``t`` and ends at ``x`` (they depend only on the endpoint,
  not on the switching pattern),
* ``z = lambda0 * lambda1 * xi0 * xi1``: the argument of the Bessel-type
  series used by all closed forms,
* ``theta``: the exponential weight
  ``exp(-lambda0*xi0 - lambda1*xi1) / (gamma0 - gamma1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "TelegraphParams",
    "VelocityRegime",
    "Kinematics",
    "classify_regime",
    "kinematics",
    "xi_pair",
]

# Velocities closer to zero than this (relative to the velocity scale) are
# rejected: every support endpoint downstream divides by a velocity.
_ZERO_VELOCITY_RTOL = 1e-12


class VelocityRegime(Enum):
    """Sign pattern of the two velocities; drives all case splits."""

    BOTH_POSITIVE = "both_positive"
    BOTH_NEGATIVE = "both_negative"
    OPPOSITE_SIGNS = "opposite_signs"


@dataclass(frozen=True)
class TelegraphParams:
    """The four model constants: two switching rates, two velocities.

    Requires ``lambda0, lambda1 > 0`` and ``gamma0 > gamma1``, with both
    velocities bounded away from zero.
    """

    lambda0: float
    lambda1: float
    gamma0: float
    gamma1: float

    def __post_init__(self):
        for name in ("lambda0", "lambda1", "gamma0", "gamma1"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.lambda0 <= 0 or self.lambda1 <= 0:
            raise ValueError("switching rates must be strictly positive")
        if not self.gamma0 > self.gamma1:
            raise ValueError(
                f"velocities must satisfy gamma0 > gamma1, got "
                f"{self.gamma0} <= {self.gamma1}"
            )
        scale = max(abs(self.gamma0), abs(self.gamma1), 1.0)
        if min(abs(self.gamma0), abs(self.gamma1)) < _ZERO_VELOCITY_RTOL * scale:
            raise ValueError("zero (or numerically zero) velocities are not supported")

    @property
    def velocity_gap(self) -> float:
        return self.gamma0 - self.gamma1

    @property
    def regime(self) -> VelocityRegime:
        return classify_regime(self)

    def rate(self, i: int) -> float:
        return (self.lambda0, self.lambda1)[i]

    def velocity(self, i: int) -> float:
        return (self.gamma0, self.gamma1)[i]

    def interchanged(self) -> "TelegraphParams":
        """Swap the roles of the two motion states and mirror space.

        Maps (lambda0, lambda1, gamma0, gamma1) to
        (lambda1, lambda0, -gamma1, -gamma0).  A path of the original model
        started in state ``i`` corresponds, after negating positions, to a
        path of the interchanged model started in state ``1 - i``.
        """
        return TelegraphParams(self.lambda1, self.lambda0, -self.gamma1, -self.gamma0)


def classify_regime(params: TelegraphParams) -> VelocityRegime:
    """Sign pattern of (gamma0, gamma1); zero velocities cannot occur here."""
    if params.gamma1 > 0:
        return VelocityRegime.BOTH_POSITIVE
    if params.gamma0 < 0:
        return VelocityRegime.BOTH_NEGATIVE
    return VelocityRegime.OPPOSITE_SIGNS


@dataclass(frozen=True)
class Kinematics:
    """State-occupation split and density weights at one space-time point."""

    xi0: float
    xi1: float
    z: float
    theta: float


def xi_pair(params: TelegraphParams, t, x):
    """Occupation times (xi0, xi1) for endpoint (t, x); array friendly.

    Defined for any ``x``; callers apply their own support indicators.
    Satisfies ``xi0 + xi1 == t`` and ``gamma0*xi0 + gamma1*xi1 == x``.
    """
    xi0 = (np.asarray(x, dtype=float) - params.gamma1 * t) / params.velocity_gap
    return xi0, t - xi0


def kinematics(params: TelegraphParams, t: float, x: float) -> Kinematics:
    """All four point quantities at (t, x).  Requires t > 0."""
    if not t > 0:
        raise ValueError(f"time must be strictly positive, got {t!r}")
    xi0, xi1 = xi_pair(params, t, x)
    xi0 = float(xi0)
    xi1 = float(xi1)
    z = params.lambda0 * params.lambda1 * xi0 * xi1
    theta = math.exp(-params.lambda0 * xi0 - params.lambda1 * xi1) / params.velocity_gap
    return Kinematics(xi0=xi0, xi1=xi1, z=z, theta=theta)
