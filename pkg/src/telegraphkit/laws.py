"""Mixed discrete/continuous law containers and goodness-of-fit helpers.

Every closed-form distribution in this package decomposes into a finite
set of atoms (no-switch trajectories and their relatives) plus an
absolutely continuous density on an interval.  ``MixedLaw`` carries both,
integrates itself on demand, and builds a grid-cached CDF suitable for
Kolmogorov-Smirnov comparisons against empirical samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_simpson, quad

__all__ = ["Atom", "MixedLaw", "GridCdf", "ks_distance"]


@dataclass(frozen=True)
class Atom:
    """A point mass: probability ``mass`` concentrated at ``location``."""

    location: float
    mass: float

    def __post_init__(self):
        if not (0.0 <= self.mass <= 1.0 + 1e-12):
            raise ValueError(f"atom mass must lie in [0, 1], got {self.mass!r}")


class MixedLaw:
    """Atoms plus a density on an open support interval.

    ``density`` must accept scalars and numpy arrays and vanish outside the
    open support.  ``support`` is a pair ``(lo, hi)`` (``hi`` may be
    ``inf``) or ``None`` for a law with no continuous part, e.g. the empty
    law of an unreachable threshold.
    """

    def __init__(self, atoms, density: Callable, support, *, label: str = ""):
        self.atoms = tuple(atoms)
        self.density = density
        self.support = None if support is None else (float(support[0]), float(support[1]))
        self.label = label
        self._density_mass = None
        self._cdf_cache = {}

    def __repr__(self):
        return (
            f"MixedLaw(label={self.label!r}, atoms={len(self.atoms)}, "
            f"support={self.support})"
        )

    @property
    def atom_mass(self) -> float:
        return float(sum(a.mass for a in self.atoms))

    def density_mass(self, epsabs: float = 1e-10) -> float:
        """Adaptive quadrature of the density over the support (cached)."""
        if self._density_mass is None:
            if self.support is None:
                self._density_mass = 0.0
            else:
                lo, hi = self.support
                if math.isinf(hi):
                    # Split so the adaptive rule sees the bulk and the tail
                    # separately; the tails here decay at least like t^-3/2.
                    mid = lo + max(1.0, abs(lo)) * 50.0
                    m1 = quad(self.density, lo, mid, epsabs=epsabs, limit=400)[0]
                    m2 = quad(self.density, mid, np.inf, epsabs=epsabs, limit=400)[0]
                    self._density_mass = m1 + m2
                else:
                    self._density_mass = quad(
                        self.density, lo, hi, epsabs=epsabs, limit=400
                    )[0]
        return self._density_mass

    def total_mass(self, epsabs: float = 1e-10) -> float:
        return self.atom_mass + self.density_mass(epsabs=epsabs)

    def cdf(self, n_grid: int = 2048, upper: float | None = None) -> "GridCdf":
        """Grid-cached CDF evaluator.

        ``upper`` truncates an infinite support (required in that case);
        the returned CDF is then the subdistribution function on
        ``(-inf, upper]``.
        """
        key = (n_grid, upper)
        if key not in self._cdf_cache:
            if self.support is None:
                lo, hi = 0.0, 1.0
                dens_cum = None
            else:
                lo, hi = self.support
                if math.isinf(hi):
                    if upper is None:
                        raise ValueError("an upper cut is required for an infinite support")
                    hi = float(upper)
                grid = np.linspace(lo, hi, n_grid + 1)
                # densities vanish exactly on the boundary (open supports);
                # sample the one-sided limits there instead
                eval_pts = grid.copy()
                nudge = 1e-9 * (hi - lo) / n_grid
                eval_pts[0] += nudge
                eval_pts[-1] -= nudge
                vals = np.asarray(self.density(eval_pts), dtype=float)
                cum = cumulative_simpson(vals, x=grid, initial=0.0)
                dens_cum = (grid, cum)
            self._cdf_cache[key] = GridCdf(self.atoms, dens_cum)
        return self._cdf_cache[key]


class GridCdf:
    """Right-continuous CDF built from atoms plus a cumulated density grid."""

    def __init__(self, atoms, dens_cum):
        self.atom_locs = np.array([a.location for a in atoms], dtype=float)
        self.atom_masses = np.array([a.mass for a in atoms], dtype=float)
        order = np.argsort(self.atom_locs)
        self.atom_locs = self.atom_locs[order]
        self.atom_masses = self.atom_masses[order]
        self._grid_cum = dens_cum

    def _continuous(self, x):
        if self._grid_cum is None:
            return np.zeros_like(np.asarray(x, dtype=float))
        grid, cum = self._grid_cum
        return np.interp(np.asarray(x, dtype=float), grid, cum, left=0.0, right=cum[-1])

    def __call__(self, x):
        """F(x), counting atoms at locations <= x."""
        x_arr = np.asarray(x, dtype=float)
        out = self._continuous(x_arr)
        if self.atom_locs.size:
            out = out + self.atom_masses @ (self.atom_locs[:, None] <= x_arr.ravel()).reshape(
                (self.atom_locs.size,) + x_arr.shape
            )
        return float(out) if np.ndim(x) == 0 else out

    def left(self, x):
        """Left limit F(x-): atoms strictly below x."""
        x_arr = np.asarray(x, dtype=float)
        out = self._continuous(x_arr)
        if self.atom_locs.size:
            out = out + self.atom_masses @ (self.atom_locs[:, None] < x_arr.ravel()).reshape(
                (self.atom_locs.size,) + x_arr.shape
            )
        return float(out) if np.ndim(x) == 0 else out

    @property
    def total(self) -> float:
        hi = self._grid_cum[1][-1] if self._grid_cum is not None else 0.0
        return float(hi + self.atom_masses.sum())


def ks_distance(samples, cdf: GridCdf, *, normalize: bool = False) -> float:
    """sup-norm distance between the empirical CDF and ``cdf``.

    Handles ties and atoms: at each distinct sample value both the
    right-continuous value and the left limit of the reference CDF are
    compared with the empirical step.  With ``normalize`` the reference is
    rescaled by its total mass (for laws conditioned on a finite horizon).
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("need at least one sample")
    values, counts = np.unique(samples, return_counts=True)
    cum = np.cumsum(counts) / samples.size
    prev = np.concatenate([[0.0], cum[:-1]])
    f_right = np.asarray(cdf(values), dtype=float)
    f_left = np.asarray(cdf.left(values), dtype=float)
    if normalize:
        f_right = f_right / cdf.total
        f_left = f_left / cdf.total
    return float(
        max(np.max(np.abs(f_right - cum)), np.max(np.abs(f_left - prev)))
    )
