"""Self-check suites: closed forms against their independent oracles.

Each suite returns a ``ValidationReport`` with one entry per check,
carrying the worst measured deviation and the tolerance it was held to.
The same functions back the command-line ``validate`` subcommand and the
acceptance test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import TelegraphParams, VelocityRegime
from .first_passage import (
    default_horizon,
    fpt_density,
    fpt_integral_equation_residual,
    fpt_law,
    fpt_switch_density,
    fpt_with_reversal_density,
)
from .kac import KacTargets, convergence_check
from .meander import (
    MeanderSign,
    meander_integral_equation_residual,
    meander_law,
    meander_switch_density,
)
from .montecarlo import SimulationConfig, run_campaign
from .position import position_law

__all__ = [
    "CheckResult",
    "ValidationReport",
    "SUITES",
    "run_suite",
    "validate_normalization",
    "validate_integral_equations",
    "validate_duality",
    "validate_mc_ks",
    "validate_kac",
    "random_params",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": float(self.value),
            "tolerance": float(self.tolerance),
            "detail": self.detail,
        }


@dataclass
class ValidationReport:
    suite: str
    parameters: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, value, tolerance, detail=""):
        self.checks.append(
            CheckResult(name=name, passed=bool(value <= tolerance), value=float(value),
                        tolerance=float(tolerance), detail=detail)
        )

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def random_params(rng: np.random.Generator, regime: VelocityRegime | None = None) -> TelegraphParams:
    """Randomised but well-conditioned parameter sets for stress checks."""
    l0, l1 = rng.uniform(0.3, 2.5, size=2)
    if regime is None:
        regime = list(VelocityRegime)[int(rng.integers(0, 3))]
    if regime is VelocityRegime.OPPOSITE_SIGNS:
        g0 = rng.uniform(0.3, 2.5)
        g1 = -rng.uniform(0.3, 2.5)
    elif regime is VelocityRegime.BOTH_POSITIVE:
        g1 = rng.uniform(0.2, 2.0)
        g0 = g1 + rng.uniform(0.3, 2.0)
    else:
        g0 = -rng.uniform(0.2, 2.0)
        g1 = g0 - rng.uniform(0.3, 2.0)
    return TelegraphParams(l0, l1, g0, g1)


def validate_normalization(
    seed: int = 2024,
    param_sets: int = 50,
    times=(0.1, 1.0, 5.0),
    fpt_cases: int = 20,
    tol: float = 1e-8,
) -> ValidationReport:
    """Position-law mass 1 across regimes; same-sign passage mass 1."""
    rng = np.random.default_rng(seed)
    report = ValidationReport(
        suite="normalization",
        parameters={"seed": seed, "param_sets": param_sets, "times": list(times),
                    "fpt_cases": fpt_cases},
    )
    worst = 0.0
    for _ in range(param_sets):
        params = random_params(rng)
        i = int(rng.integers(0, 2))
        for t in times:
            defect = abs(position_law(params, i, float(t)).total_mass() - 1.0)
            worst = max(worst, defect)
    report.add("position-mass-defect", worst, tol,
               detail=f"{param_sets} parameter sets x {len(times)} times")

    worst = 0.0
    for _ in range(fpt_cases):
        regime = VelocityRegime.BOTH_POSITIVE if rng.random() < 0.5 else VelocityRegime.BOTH_NEGATIVE
        params = random_params(rng, regime)
        i = int(rng.integers(0, 2))
        y = float(rng.uniform(0.3, 2.0))
        if regime is VelocityRegime.BOTH_NEGATIVE:
            y = -y
        defect = abs(fpt_law(params, i, y).total_mass() - 1.0)
        worst = max(worst, defect)
    report.add("same-sign-passage-mass-defect", worst, tol, detail=f"{fpt_cases} cases")
    return report


def validate_integral_equations(
    seed: int = 2025,
    counts=(1, 2, 3, 4, 5),
    points: int = 20,
    tol: float = 1e-8,
) -> ValidationReport:
    """Residuals of the coupled first-switch / last-switch equations."""
    rng = np.random.default_rng(seed)
    report = ValidationReport(
        suite="integral-equations",
        parameters={"seed": seed, "counts": list(counts), "points": points},
    )
    worst_fpt = 0.0
    worst_meander = 0.0
    for n in counts:
        for _ in range(points):
            params = random_params(rng, VelocityRegime.OPPOSITE_SIGNS)
            y = float(rng.uniform(0.3, 1.5))
            t = y / params.gamma0 + float(rng.uniform(0.2, 2.5))
            r0, r1 = fpt_integral_equation_residual(params, t, y, n)
            worst_fpt = max(worst_fpt, r0, r1)

            params = random_params(rng, VelocityRegime.OPPOSITE_SIGNS)
            t = float(rng.uniform(0.5, 3.0))
            x = float(rng.uniform(0.1, 0.9)) * params.gamma0 * t
            r0, r1 = meander_integral_equation_residual(params, t, x, n)
            worst_meander = max(worst_meander, r0, r1)
    report.add("first-passage-equation-residual", worst_fpt, tol,
               detail=f"n in {list(counts)}, {points} points each")
    report.add("meander-equation-residual", worst_meander, tol,
               detail=f"n in {list(counts)}, {points} points each")
    return report


def _rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def validate_duality(seed: int = 2026, points: int = 100, rtol: float = 1e-12) -> ValidationReport:
    """Meander/passage duality, negative-threshold symmetry, reversal factor."""
    rng = np.random.default_rng(seed)
    report = ValidationReport(
        suite="duality", parameters={"seed": seed, "points": points}
    )
    worst_even = worst_odd = 0.0
    for _ in range(points):
        params = random_params(rng, VelocityRegime.OPPOSITE_SIGNS)
        t = float(rng.uniform(0.5, 3.0))
        x = float(rng.uniform(0.05, 0.95)) * params.gamma0 * t
        n = int(rng.integers(0, 4))
        g_even = meander_switch_density(params, MeanderSign.POSITIVE, t, x, 2 * n + 2)
        f_even = fpt_switch_density(params, 0, t, x, 2 * n + 2)
        worst_even = max(worst_even, _rel_err(params.gamma0 * g_even, f_even))
        g_odd = meander_switch_density(params, MeanderSign.POSITIVE, t, x, 2 * n + 1)
        f_odd = fpt_switch_density(params, 1, t, x, 2 * n + 1)
        worst_odd = max(worst_odd, _rel_err(params.gamma0 * params.lambda1 * g_odd,
                                            params.lambda0 * f_odd))
    report.add("duality-even-switch-relative-error", worst_even, rtol)
    report.add("duality-odd-switch-relative-error", worst_odd, rtol)

    worst_sym = 0.0
    worst_sum = 0.0
    for _ in range(points):
        params = random_params(rng, VelocityRegime.OPPOSITE_SIGNS)
        y = -float(rng.uniform(0.2, 1.5))
        t = y / params.gamma1 + float(rng.uniform(0.2, 2.5))
        n = int(rng.integers(1, 7))
        i = int(rng.integers(0, 2))
        direct = fpt_switch_density(params, i, t, y, n)
        swapped = fpt_switch_density(params.interchanged(), 1 - i, t, -y, n)
        worst_sym = max(worst_sym, _rel_err(direct, swapped))
        total = sum(fpt_switch_density(params, i, t, y, m) for m in range(1, 61))
        worst_sum = max(worst_sum, _rel_err(total, fpt_density(params, i, t, y)))
    report.add("negative-threshold-symmetry-relative-error", worst_sym, rtol)
    report.add("negative-threshold-sum-consistency", worst_sum, 1e-10)

    worst_rev = 0.0
    for _ in range(points):
        params = random_params(rng, VelocityRegime.OPPOSITE_SIGNS)
        y = float(rng.uniform(0.2, 1.5))
        t = y / params.gamma0 + float(rng.uniform(0.2, 2.5))
        n = int(rng.integers(1, 7))
        i = int(rng.integers(0, 2))
        plain = fpt_switch_density(params, i, t, y, n)
        reversed_ = fpt_with_reversal_density(params, i, t, y, n)
        # bitwise: the reversal law is the same code path times the rate
        worst_rev = max(worst_rev, 0.0 if reversed_ == params.lambda0 * plain else math.inf)
    report.add("reversal-factor-exact", worst_rev, 0.0)
    return report


def validate_mc_ks(
    paths: int = 100_000,
    seed: int = 42,
    n_jobs: int = 1,
    lambda0: float = 1.0,
    lambda1: float = 1.0,
    gamma0: float = 1.0,
    gamma1: float = -1.0,
    t: float = 2.0,
    threshold: float = 1.0,
) -> ValidationReport:
    """Monte Carlo concordance at exact-path resolution.

    Kolmogorov-Smirnov distance of the terminal position, the no-switch
    frequency, the one-sided-path frequency against the meander mass, and
    the KS distance of first-passage times conditioned on the horizon.
    """
    params = TelegraphParams(lambda0, lambda1, gamma0, gamma1)
    report = ValidationReport(
        suite="mc-ks",
        parameters={
            "paths": paths, "seed": seed, "lambda0": lambda0, "lambda1": lambda1,
            "gamma0": gamma0, "gamma1": gamma1, "t": t, "threshold": threshold,
        },
    )
    config = SimulationConfig(params=params, initial_state=0, horizon=t, paths=paths, seed=seed)
    campaign = run_campaign(config, n_jobs=n_jobs)

    law = position_law(params, 0, t)
    report.add("terminal-position-ks", campaign.ks_terminal(law.cdf()), 0.015,
               detail=f"{paths} exact paths")
    p0 = math.exp(-params.lambda0 * t)
    report.add("no-switch-frequency-error",
               abs(campaign.switch_count_frequency(0) - p0), 0.005)
    if params.regime is VelocityRegime.OPPOSITE_SIGNS:
        mass = meander_law(params, MeanderSign.POSITIVE, t).total_mass()
        report.add("one-sided-fraction-vs-meander-mass",
                   abs(campaign.min_zero_fraction() - mass), 0.01)

    horizon = default_horizon(params, threshold)
    fpt_config = SimulationConfig(
        params=params, initial_state=0, horizon=horizon, paths=paths,
        seed=seed + 1, threshold=threshold,
    )
    fpt_campaign = run_campaign(fpt_config, n_jobs=n_jobs)
    cdf = fpt_law(params, 0, threshold).cdf(n_grid=4096, upper=horizon)
    report.add("first-passage-ks", fpt_campaign.ks_first_passage(cdf), 0.015,
               detail=f"conditioned on passage before {horizon:g}")
    return report


def validate_kac(
    kmax: int = 16,
    y: float = 1.0,
    nu: float = 1.0,
    sigma1: float = 1.0,
    delta: float = 0.0,
) -> ValidationReport:
    """Monotone approach of the passage density to its diffusion limit."""
    targets = KacTargets(nu=nu, sigma1=sigma1, delta=delta)
    k_grid = [2**j for j in range(int(math.log2(kmax)) + 1)]
    report = ValidationReport(
        suite="kac",
        parameters={"kmax": kmax, "y": y, "nu": nu, "sigma1": sigma1, "delta": delta,
                    "k_grid": k_grid},
    )
    errors, atoms = convergence_check(targets, y, k_grid)
    monotone = all(a > b for a, b in zip(errors, errors[1:]))
    report.add("sup-error-strictly-decreasing", 0.0 if monotone else 1.0, 0.0,
               detail=" ".join(f"{e:.3e}" for e in errors))
    report.add("final-sup-error", float(errors[-1]), 0.02, detail=f"k={k_grid[-1]}")
    report.add("final-atom-mass", float(atoms[-1]), 1e-6)
    return report


SUITES = {
    "normalization": validate_normalization,
    "integral-equations": validate_integral_equations,
    "duality": validate_duality,
    "mc-ks": validate_mc_ks,
    "kac": validate_kac,
}


def run_suite(name: str, **kwargs) -> ValidationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**kwargs)
