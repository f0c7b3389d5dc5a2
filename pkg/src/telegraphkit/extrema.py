"""Joint law of (time of extremum, extremum value, terminal position).

For opposite-sign velocities the law of the running minimum (maximum)
splits into three mutually exclusive components, classified by when the
extremum is attained:

* at the start (time 0, value 0): the path is a one-sided meander;
* at the end (time t, value = terminal position): the terminal point is a
  first passage to a fresh extreme level, weighted by 1/|arrival speed|;
* strictly inside (0 < s < t): a first passage to the extreme level y at
  time s, an immediate velocity reversal there, then a meander over the
  remaining time ending at x.

The interior component is a measure over (s, y, x) that mixes an
absolutely continuous part with lower-dimensional sheets, because both
convolution factors have atoms (no-switch passage pins y to the first
ballistic segment; a no-switch meander pins x to y plus a ballistic run).
Each sheet is represented explicitly; nothing is smeared into the volume
density.

The reversal weight at the extremum is rate/|speed| of the arrival state
(probability of switching while traversing a thin spatial band), which is
what makes the three component masses sum to exactly 1.

In the same-sign regimes the law is degenerate: the path never changes
sign, so the extremum time is pinned to 0 or t and the joint law reduces
to the plain position law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .core import TelegraphParams, VelocityRegime, xi_pair
from .first_passage import fpt_density, fpt_switch_density
from .laws import Atom, MixedLaw
from .meander import MeanderSign, meander_density, meander_law, meander_switch_density
from .position import position_law

__all__ = [
    "ExtremumKind",
    "extremum_zeta_zero_atom",
    "extremum_zeta_zero_component",
    "extremum_zeta_t_atom",
    "extremum_zeta_t_component",
    "extremum_regular_density",
    "ExtremumComponentMasses",
    "ExtremumJointLaw",
    "extremum_joint_law",
]


class ExtremumKind(Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class _Geometry:
    """Kind-dependent constants of the three-component decomposition."""

    arrival_velocity: float  # velocity on the segment that reaches the extremum
    arrival_speed: float
    reversal_rate: float     # switching rate out of the arrival state
    departure_velocity: float  # velocity right after the reversal
    departure_rate: float
    meander_sign: MeanderSign
    zero_state: int   # initial state whose extremum can sit at time 0
    first_state: int  # initial state whose extremum can be the first kink


def _geometry(params: TelegraphParams, kind: ExtremumKind) -> _Geometry:
    if kind is ExtremumKind.MIN:
        return _Geometry(
            arrival_velocity=params.gamma1,
            arrival_speed=-params.gamma1,
            reversal_rate=params.lambda1,
            departure_velocity=params.gamma0,
            departure_rate=params.lambda0,
            meander_sign=MeanderSign.POSITIVE,
            zero_state=0,
            first_state=1,
        )
    return _Geometry(
        arrival_velocity=params.gamma0,
        arrival_speed=params.gamma0,
        reversal_rate=params.lambda0,
        departure_velocity=params.gamma1,
        departure_rate=params.lambda1,
        meander_sign=MeanderSign.NEGATIVE,
        zero_state=1,
        first_state=0,
    )


def _check_opposite(params):
    if params.regime is not VelocityRegime.OPPOSITE_SIGNS:
        raise ValueError("componentwise extremum laws require opposite-sign velocities")


def _check_args(i, kind):
    if i not in (0, 1):
        raise ValueError(f"initial state must be 0 or 1, got {i!r}")
    if not isinstance(kind, ExtremumKind):
        raise ValueError(f"kind must be an ExtremumKind, got {kind!r}")


def _extreme_side(kind: ExtremumKind, y) -> bool:
    """Is y on the admissible side for this extremum (strictly)?"""
    return y < 0.0 if kind is ExtremumKind.MIN else y > 0.0


# ---------------------------------------------------------------------------
# extremum at the start: the meander component


def extremum_zeta_zero_atom(params, i, kind, t) -> Atom | None:
    _check_opposite(params)
    _check_args(i, kind)
    g = _geometry(params, kind)
    if i != g.zero_state:
        return None
    return meander_law(params, g.meander_sign, t).atoms[0]


def extremum_zeta_zero_component(params, i, kind, t, x, n: int | None = None):
    """Density (in x) of {extremum attained at time 0, position in dx}.

    Equals the matching meander density; identically zero for the (i,
    kind) pairs whose first move already breaks the extremum.  ``n`` picks
    a fixed switch count, ``None`` sums them all.
    """
    _check_opposite(params)
    _check_args(i, kind)
    g = _geometry(params, kind)
    if i != g.zero_state:
        return 0.0 if np.ndim(x) == 0 else np.zeros_like(np.asarray(x, dtype=float))
    if n is None:
        return meander_density(params, g.meander_sign, t, x)
    return meander_switch_density(params, g.meander_sign, t, x, n)


# ---------------------------------------------------------------------------
# extremum at the end: the first-passage component


def extremum_zeta_t_atom(params, i, kind, t) -> Atom | None:
    _check_opposite(params)
    _check_args(i, kind)
    g = _geometry(params, kind)
    if i != g.first_state:
        return None
    # ballistic run straight into the extremum at time t
    return Atom(location=g.arrival_velocity * t, mass=math.exp(-params.rate(i) * t))


def extremum_zeta_t_component(params, i, kind, t, x, n: int | None = None):
    """Density (in x) of {extremum attained at time t, terminal in dx}.

    The terminal point is then a first passage at time t, arriving at the
    extremum's velocity; dividing the time density by the arrival speed
    converts it into a space density.  The switch-count parity (even or
    odd depending on i and kind) is inherited from the passage law.
    """
    _check_opposite(params)
    _check_args(i, kind)
    if n is not None and n < 1:
        raise ValueError("n = 0 is the atom; see extremum_zeta_t_atom")
    g = _geometry(params, kind)
    if np.ndim(x) == 0 and not _extreme_side(kind, x):
        return 0.0
    x_arr = np.asarray(x, dtype=float)
    side = _extreme_side(kind, x_arr)
    if n is None:
        vals = fpt_density(params, i, t, x_arr)
    else:
        vals = fpt_switch_density(params, i, t, x_arr, n)
    out = np.where(side, np.asarray(vals, dtype=float) / g.arrival_speed, 0.0)
    return float(out) if np.ndim(x) == 0 else out


# ---------------------------------------------------------------------------
# extremum strictly inside: passage + reversal + meander


def _fpt_density_guarded(params, i, kind, s, y):
    """Summed passage density with an explicit side guard on y."""
    if not _extreme_side(kind, y):
        return 0.0
    return fpt_density(params, i, s, y)


def extremum_regular_density(
    params: TelegraphParams,
    i: int,
    kind: ExtremumKind,
    t: float,
    s: float,
    y: float,
    x: float,
    n: int | None = None,
):
    """Absolutely continuous part of the interior component at (s, y, x).

    This is the volume density only; the singular sheets (atomic passage
    or atomic meander legs) are exposed on ``ExtremumJointLaw``.  Returns
    0 for out-of-range arguments rather than raising.
    """
    _check_opposite(params)
    _check_args(i, kind)
    g = _geometry(params, kind)
    if not (0.0 < s < t) or not _extreme_side(kind, y):
        return 0.0
    c = g.reversal_rate / g.arrival_speed
    if n is None:
        f = fpt_density(params, i, s, y)
        if f == 0.0:
            return 0.0
        return c * f * meander_density(params, g.meander_sign, t - s, x - y)
    if n < 1:
        return 0.0
    total = 0.0
    # a switches to the passage, one reversal, n-1-a switches in the meander;
    # wrong-parity passage terms vanish on their own.
    for a in range(1, n - 1):
        f = fpt_switch_density(params, i, s, y, a)
        if f == 0.0:
            continue
        total += f * meander_switch_density(params, g.meander_sign, t - s, x - y, n - 1 - a)
    return c * total


@dataclass(frozen=True)
class ExtremumComponentMasses:
    at_start: float
    at_end: float
    interior: float

    @property
    def total(self) -> float:
        return self.at_start + self.at_end + self.interior

    def as_dict(self) -> dict:
        return {
            "at_start": self.at_start,
            "at_end": self.at_end,
            "interior": self.interior,
            "total": self.total,
        }


class ExtremumJointLaw:
    """Three-component joint law of (extremum time, value, terminal).

    Built by ``extremum_joint_law``.  In the opposite-signs regime it
    exposes the two singular-in-time components as mixed laws over the
    terminal position, the interior volume density, the interior sheets,
    component masses and the terminal-position marginal.  In the same-sign
    regimes it is degenerate: ``pinned_at`` tells whether the extremum
    sits at the start (value 0) or at the end (value = terminal position)
    and the x-law is the plain position law.
    """

    def __init__(self, params: TelegraphParams, i: int, kind: ExtremumKind, t: float):
        _check_args(i, kind)
        if not t > 0:
            raise ValueError(f"time must be strictly positive, got {t!r}")
        self.params = params
        self.i = i
        self.kind = kind
        self.t = t
        self.regime = params.regime
        self.degenerate = self.regime is not VelocityRegime.OPPOSITE_SIGNS
        if self.degenerate:
            going_up = self.regime is VelocityRegime.BOTH_POSITIVE
            at_start = (kind is ExtremumKind.MIN) if going_up else (kind is ExtremumKind.MAX)
            self.pinned_at = "start" if at_start else "end"
            self.position = position_law(params, i, t)
            self._g = None
        else:
            self.pinned_at = None
            self.position = None
            self._g = _geometry(params, kind)
        self._mu_spline = None
        self._masses = None

    # -- component laws over the terminal position --------------------------

    @property
    def zeta_zero_law(self) -> MixedLaw | None:
        """Meander component, or None when it carries no mass."""
        if self.degenerate:
            raise ValueError("degenerate law; use .position and .pinned_at")
        g = self._g
        if self.i != g.zero_state:
            return None
        return meander_law(self.params, g.meander_sign, self.t)

    @property
    def zeta_t_law(self) -> MixedLaw:
        """Extremum-at-the-end component as a mixed law over x."""
        if self.degenerate:
            raise ValueError("degenerate law; use .position and .pinned_at")
        g = self._g
        atom = extremum_zeta_t_atom(self.params, self.i, self.kind, self.t)
        if self.kind is ExtremumKind.MIN:
            support = (self.params.gamma1 * self.t, 0.0)
        else:
            support = (0.0, self.params.gamma0 * self.t)
        return MixedLaw(
            atoms=() if atom is None else (atom,),
            density=lambda x: extremum_zeta_t_component(self.params, self.i, self.kind, self.t, x),
            support=support,
            label=f"extremum-at-end(i={self.i}, kind={self.kind.value}, t={self.t})",
        )

    # -- interior component --------------------------------------------------

    def interior_volume_density(self, s, y, x):
        """Density in (ds, dy, dx) of an interior extremum, all legs diffuse."""
        return extremum_regular_density(self.params, self.i, self.kind, self.t, s, y, x)

    def interior_reversal_sheet_density(self, s, y, n: int | None = None):
        """Density in (ds, dy) on the sheet {x = y + departure leg}.

        The meander after the reversal has no switch, so the terminal is
        pinned at x = y + departure_velocity*(t - s).  With ``n`` the
        passage leg is restricted to n - 1 switches.
        """
        if self.degenerate:
            return 0.0
        g = self._g
        if not (0.0 < s < self.t) or not _extreme_side(self.kind, y):
            return 0.0
        if n is None:
            f = fpt_density(self.params, self.i, s, y)
        elif n < 2:
            return 0.0
        else:
            f = fpt_switch_density(self.params, self.i, s, y, n - 1)
        if f == 0.0:
            return 0.0
        c = g.reversal_rate / g.arrival_speed
        return c * f * math.exp(-g.departure_rate * (self.t - s))

    def interior_first_switch_sheet_density(self, s, x, n: int | None = None):
        """Density in (ds, dx) on the sheet {y = arrival_velocity * s}.

        Only paths that start straight into the extremum (state =
        first_state) can attain it at their first kink without any prior
        switch; the extreme value is then pinned to the first segment.
        With ``n`` the meander leg is restricted to n - 1 switches.
        """
        if self.degenerate:
            return 0.0
        g = self._g
        if self.i != g.first_state or not (0.0 < s < self.t):
            return 0.0
        rate = g.reversal_rate
        if n is None:
            tail = meander_density(
                self.params, g.meander_sign, self.t - s, x - g.arrival_velocity * s
            )
        elif n < 2:
            return 0.0
        else:
            tail = meander_switch_density(
                self.params, g.meander_sign, self.t - s, x - g.arrival_velocity * s, n - 1
            )
        return rate * math.exp(-rate * s) * tail

    def interior_ballistic_bridge_density(self, x):
        """Density in dx of the doubly singular interior piece.

        One switch total: straight to the extremum, reverse, straight to
        the end; s and y are both functions of x.  Nonzero only when the
        start state heads straight into the extremum.
        """
        if self.degenerate:
            return 0.0 if np.ndim(x) == 0 else np.zeros_like(np.asarray(x, dtype=float))
        g = self._g
        x_arr = np.asarray(x, dtype=float)
        if self.i != g.first_state:
            out = np.zeros_like(x_arr)
        else:
            p = self.params
            inside = (x_arr > p.gamma1 * self.t) & (x_arr < p.gamma0 * self.t)
            xi0, xi1 = xi_pair(p, self.t, x_arr)
            # clipping keeps the exponent bounded at masked points
            xi0 = np.maximum(xi0, 0.0)
            xi1 = np.maximum(xi1, 0.0)
            w = np.exp(-p.lambda0 * xi0 - p.lambda1 * xi1) / p.velocity_gap
            out = np.where(inside, g.reversal_rate * w, 0.0)
        return float(out) if np.ndim(x) == 0 else out

    # -- aggregates ----------------------------------------------------------

    def _meander_mass(self, u: float) -> float:
        """P{one-sided up to time u}; cubic-spline cache over [0, t]."""
        if self._mu_spline is None:
            grid = np.linspace(0.0, self.t, 161)
            vals = np.empty_like(grid)
            vals[0] = 1.0
            for j, u_j in enumerate(grid[1:], start=1):
                vals[j] = meander_law(self.params, self._g.meander_sign, float(u_j)).total_mass(
                    epsabs=1e-11
                )
            self._mu_spline = CubicSpline(grid, vals)
        return float(self._mu_spline(u))

    def _passage_band_mass(self, s: float) -> float:
        """Integral over admissible extreme levels of the passage density."""
        g = self._g
        lo, hi = (
            (g.arrival_velocity * s, 0.0)
            if self.kind is ExtremumKind.MIN
            else (0.0, g.arrival_velocity * s)
        )
        val, _ = quad(
            lambda y: _fpt_density_guarded(self.params, self.i, self.kind, s, y),
            lo,
            hi,
            epsabs=1e-11,
            limit=200,
        )
        return val

    def interior_sy_marginal_density(self, s: float, y: float) -> float:
        """Interior component with the terminal position integrated out.

        Density in (ds, dy) of {extremum value y attained at time s}, for
        0 < s < t; covers the volume and the pinned-terminal sheet (their
        x-integrals combine into the meander's total mass).
        """
        if self.degenerate:
            return 0.0
        g = self._g
        if not (0.0 < s < self.t):
            return 0.0
        f = _fpt_density_guarded(self.params, self.i, self.kind, s, y)
        if f == 0.0:
            return 0.0
        c = g.reversal_rate / g.arrival_speed
        return c * f * self._meander_mass(self.t - s)

    def component_masses(self, epsabs: float = 1e-9) -> ExtremumComponentMasses:
        if self._masses is not None:
            return self._masses
        if self.degenerate:
            m = self.position.total_mass()
            if self.pinned_at == "start":
                self._masses = ExtremumComponentMasses(m, 0.0, 0.0)
            else:
                self._masses = ExtremumComponentMasses(0.0, m, 0.0)
            return self._masses
        g = self._g
        zz = self.zeta_zero_law
        at_start = 0.0 if zz is None else zz.total_mass(epsabs=epsabs)
        at_end = self.zeta_t_law.total_mass(epsabs=epsabs)
        c = g.reversal_rate / g.arrival_speed
        interior, _ = quad(
            lambda s: c * self._passage_band_mass(s) * self._meander_mass(self.t - s),
            0.0,
            self.t,
            epsabs=epsabs,
            limit=200,
        )
        if self.i == g.first_state:
            rate = g.reversal_rate
            extra, _ = quad(
                lambda s: rate * math.exp(-rate * s) * self._meander_mass(self.t - s),
                0.0,
                self.t,
                epsabs=epsabs,
                limit=200,
            )
            interior += extra
        self._masses = ExtremumComponentMasses(at_start, at_end, interior)
        return self._masses

    def total_mass(self) -> float:
        return self.component_masses().total

    def _interior_marginal(self, x: float) -> float:
        g = self._g
        p = self.params
        t = self.t
        c = g.reversal_rate / g.arrival_speed
        sign_min = self.kind is ExtremumKind.MIN

        def y_bounds(s):
            reach = x - g.departure_velocity * (t - s)
            if sign_min:
                return max(g.arrival_velocity * s, reach), min(0.0, x)
            return max(0.0, x), min(g.arrival_velocity * s, reach)

        def integrand(s):
            lo, hi = y_bounds(s)
            val = 0.0
            if lo < hi:
                val, _ = quad(
                    lambda y: _fpt_density_guarded(p, self.i, self.kind, s, y)
                    * meander_density(p, g.meander_sign, t - s, x - y),
                    lo,
                    hi,
                    epsabs=1e-11,
                    limit=100,
                )
            # sheet with an atomic meander leg: y pinned by (s, x)
            ys = x - g.departure_velocity * (t - s)
            band = (g.arrival_velocity * s < ys < min(0.0, x)) if sign_min else (
                max(0.0, x) < ys < g.arrival_velocity * s
            )
            if band:
                val += _fpt_density_guarded(p, self.i, self.kind, s, ys) * math.exp(
                    -g.departure_rate * (t - s)
                )
            return val

        # kinks of the inner bounds in s
        xi0, xi1 = xi_pair(p, t, x)
        pts = []
        crossing = float(xi1) if sign_min else float(xi0)
        if 0.0 < crossing < t:
            pts.append(crossing)
        zero_hit = t - x / g.departure_velocity
        if 0.0 < zero_hit < t:
            pts.append(zero_hit)
        out, _ = quad(integrand, 0.0, t, points=sorted(pts), epsabs=1e-10, limit=300)
        out *= c

        if self.i == g.first_state:
            rate = g.reversal_rate
            extra, _ = quad(
                lambda s: rate
                * math.exp(-rate * s)
                * meander_density(p, g.meander_sign, t - s, x - g.arrival_velocity * s),
                0.0,
                t,
                epsabs=1e-10,
                limit=200,
            )
            out += extra + self.interior_ballistic_bridge_density(x)
        return out

    def marginal_position_density(self, x: float) -> float:
        """Continuous part of the terminal-position marginal at x.

        Integrating the three components over (s, y) recovers the plain
        position density; the marginal's atoms are the component atoms.
        """
        if self.degenerate:
            return float(self.position.density(x))
        out = float(
            np.asarray(extremum_zeta_zero_component(self.params, self.i, self.kind, self.t, x))
        )
        out += float(
            np.asarray(extremum_zeta_t_component(self.params, self.i, self.kind, self.t, x))
        )
        out += self._interior_marginal(float(x))
        return out

    def marginal_atoms(self) -> tuple[Atom, ...]:
        if self.degenerate:
            return self.position.atoms
        atoms = []
        a0 = extremum_zeta_zero_atom(self.params, self.i, self.kind, self.t)
        if a0 is not None:
            atoms.append(a0)
        a1 = extremum_zeta_t_atom(self.params, self.i, self.kind, self.t)
        if a1 is not None:
            atoms.append(a1)
        return tuple(atoms)


def extremum_joint_law(
    params: TelegraphParams, i: int, kind: ExtremumKind, t: float
) -> ExtremumJointLaw:
    """Joint law of (extremum time, extremum value, terminal position)."""
    return ExtremumJointLaw(params, i, kind, t)
