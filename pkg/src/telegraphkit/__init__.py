"""Closed-form laws of the inhomogeneous asymmetric telegraph process.

A particle alternates between two velocities at state-dependent
exponential switching times.  The package evaluates, in closed form, the
joint law of position and switch count, first-passage-time laws through a
threshold, one-sided path (meander) laws, and the joint law of the
running extremum, its time and the terminal position; an exact
event-driven Monte Carlo simulator serves as the independent oracle, and
a diffusion-scaling module checks convergence of the passage law to the
inverse-Gaussian limit.
"""

from .core import Kinematics, TelegraphParams, VelocityRegime, classify_regime, kinematics
from .extrema import (
    ExtremumComponentMasses,
    ExtremumJointLaw,
    ExtremumKind,
    extremum_joint_law,
    extremum_regular_density,
    extremum_zeta_t_atom,
    extremum_zeta_t_component,
    extremum_zeta_zero_atom,
    extremum_zeta_zero_component,
)
from .first_passage import (
    ThresholdSpec,
    default_horizon,
    fpt_atom,
    fpt_density,
    fpt_integral_equation_residual,
    fpt_law,
    fpt_switch_density,
    fpt_with_reversal_density,
    threshold_support,
)
from .kac import KacTargets, convergence_check, inverse_gaussian_fpt_density, kac_family_member
from .laws import Atom, GridCdf, MixedLaw, ks_distance
from .meander import (
    MeanderSign,
    meander_atom,
    meander_density,
    meander_integral_equation_residual,
    meander_law,
    meander_switch_density,
)
from .montecarlo import CampaignResult, PathSample, SimulationConfig, run_campaign, sample_path
from .position import (
    position_atom,
    position_density,
    position_law,
    position_switch_density,
    switch_count_probability,
)
from .series import series_i0, series_i1
from .validation import ValidationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "CampaignResult",
    "ExtremumComponentMasses",
    "ExtremumJointLaw",
    "ExtremumKind",
    "GridCdf",
    "KacTargets",
    "Kinematics",
    "MeanderSign",
    "MixedLaw",
    "PathSample",
    "SimulationConfig",
    "TelegraphParams",
    "ThresholdSpec",
    "ValidationReport",
    "VelocityRegime",
    "classify_regime",
    "convergence_check",
    "default_horizon",
    "extremum_joint_law",
    "extremum_regular_density",
    "extremum_zeta_t_atom",
    "extremum_zeta_t_component",
    "extremum_zeta_zero_atom",
    "extremum_zeta_zero_component",
    "fpt_atom",
    "fpt_density",
    "fpt_integral_equation_residual",
    "fpt_law",
    "fpt_switch_density",
    "fpt_with_reversal_density",
    "inverse_gaussian_fpt_density",
    "kac_family_member",
    "kinematics",
    "ks_distance",
    "meander_atom",
    "meander_density",
    "meander_integral_equation_residual",
    "meander_law",
    "meander_switch_density",
    "position_atom",
    "position_density",
    "position_law",
    "position_switch_density",
    "run_campaign",
    "run_suite",
    "sample_path",
    "series_i0",
    "series_i1",
    "switch_count_probability",
    "threshold_support",
]
