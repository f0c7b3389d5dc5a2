"""Exact path simulation: determinism, skeleton exactness, law agreement."""

import math

import numpy as np
import pytest
from scipy.stats import chisquare

from telegraphkit import (
    SimulationConfig,
    TelegraphParams,
    meander_law,
    position_law,
    run_campaign,
    sample_path,
    switch_count_probability,
    threshold_support,
)
from telegraphkit.meander import MeanderSign


def config(params, paths=20_000, seed=1234, horizon=2.0, threshold=None, i=0):
    return SimulationConfig(
        params=params, initial_state=i, horizon=horizon, paths=paths, seed=seed,
        threshold=threshold,
    )


def test_config_validation(symmetric_unit):
    with pytest.raises(ValueError):
        SimulationConfig(symmetric_unit, 2, 1.0, 10, 1)
    with pytest.raises(ValueError):
        SimulationConfig(symmetric_unit, 0, 0.0, 10, 1)
    with pytest.raises(ValueError):
        SimulationConfig(symmetric_unit, 0, 1.0, 0, 1)
    with pytest.raises(ValueError):
        SimulationConfig(symmetric_unit, 0, 1.0, 10, 1, threshold=0.0)


def test_bit_identical_reruns(symmetric_unit):
    cfg = config(symmetric_unit, paths=3000, threshold=1.0)
    a = run_campaign(cfg)
    b = run_campaign(cfg)
    for name in ("terminal", "switches", "min_value", "argmax_time", "fpt"):
        np.testing.assert_array_equal(getattr(a, name), getattr(b, name))


def test_parallel_equals_sequential(symmetric_unit):
    cfg = config(symmetric_unit, paths=25_000, threshold=1.0)
    seq = run_campaign(cfg, n_jobs=1)
    par = run_campaign(cfg, n_jobs=2)
    for name in ("terminal", "switches", "min_value", "max_value", "fpt",
                 "argmin_time", "argmax_time", "first_passage_switches"):
        np.testing.assert_array_equal(getattr(seq, name), getattr(par, name))


def test_sample_path_matches_campaign_row(symmetric_unit):
    cfg = config(symmetric_unit, paths=50, threshold=0.7)
    campaign = run_campaign(cfg)
    for k in (0, 17, 49):
        p = sample_path(cfg, k)
        assert p.terminal == campaign.terminal[k]
        assert p.switches == campaign.switches[k]
        assert p.min_value == campaign.min_value[k]
        assert (p.fpt is None) == math.isnan(campaign.fpt[k])
        if p.fpt is not None:
            assert p.fpt == campaign.fpt[k]


def test_path_invariants(asymmetric_opposite):
    cfg = config(asymmetric_opposite, paths=2000, seed=7)
    c = run_campaign(cfg)
    assert np.all(c.min_value <= 0.0) and np.all(c.max_value >= 0.0)
    assert np.all(c.min_value <= c.terminal) and np.all(c.terminal <= c.max_value)
    assert np.all((c.argmin_time >= 0) & (c.argmin_time <= cfg.horizon))
    assert np.all((c.argmax_time >= 0) & (c.argmax_time <= cfg.horizon))


def test_no_switch_paths_are_ballistic(symmetric_unit):
    cfg = config(symmetric_unit, paths=5000, seed=3)
    c = run_campaign(cfg)
    sel = c.switches == 0
    assert np.any(sel)
    np.testing.assert_array_equal(c.terminal[sel], symmetric_unit.gamma0 * cfg.horizon)
    np.testing.assert_array_equal(c.min_value[sel], 0.0)
    frac = float(np.mean(sel))
    p0 = math.exp(-symmetric_unit.lambda0 * cfg.horizon)
    se = math.sqrt(p0 * (1 - p0) / cfg.paths)
    assert abs(frac - p0) <= 3 * se


def test_mean_terminal_matches_closed_form(asymmetric_opposite):
    # conditional mean given the start state, from two-state occupation
    p = asymmetric_opposite
    cfg = config(p, paths=40_000, seed=11, horizon=2.0)
    c = run_campaign(cfg)
    lam_sum = p.lambda0 + p.lambda1
    g_bar = (p.lambda1 * p.gamma0 + p.lambda0 * p.gamma1) / lam_sum
    mean = g_bar * cfg.horizon + (p.gamma0 - g_bar) * (
        1.0 - math.exp(-lam_sum * cfg.horizon)
    ) / lam_sum
    se = float(np.std(c.terminal)) / math.sqrt(cfg.paths)
    assert abs(float(np.mean(c.terminal)) - mean) <= 4 * se


def test_switch_count_chi_square(symmetric_unit):
    cfg = config(symmetric_unit, paths=20_000, seed=5)
    c = run_campaign(cfg)
    n_max = 8
    observed = c.switch_count_table(n_max) * cfg.paths
    expected = np.array(
        [switch_count_probability(symmetric_unit, 0, cfg.horizon, n) for n in range(n_max + 1)]
    )
    expected = np.append(expected, 1.0 - expected.sum()) * cfg.paths
    stat = chisquare(observed, expected)
    assert stat.pvalue > 0.001


def test_same_sign_passage_lands_in_the_bounded_window():
    params = TelegraphParams(1.0, 2.0, 2.0, 1.0)
    spec = threshold_support(params, 1.0)
    cfg = config(params, paths=4000, seed=21, horizon=2.0, threshold=1.0)
    c = run_campaign(cfg)
    vals = c.fpt_values()
    assert vals.size == cfg.paths  # almost-sure passage, horizon covers the window
    assert np.all(vals >= spec.support[0] - 1e-12)
    assert np.all(vals <= spec.support[1] + 1e-12)


def test_passage_atom_fraction(symmetric_unit):
    # ballistic crossings happen at exactly y/gamma0
    cfg = config(symmetric_unit, paths=20_000, seed=9, horizon=10.0, threshold=1.0)
    c = run_campaign(cfg)
    vals = c.fpt_values()
    frac = float(np.mean(vals == 1.0))
    p_atom = math.exp(-1.0)
    se = math.sqrt(p_atom * (1 - p_atom) / cfg.paths)
    assert abs(frac - p_atom) <= 3 * se


def test_one_sided_fraction_matches_meander_mass(asymmetric_opposite):
    cfg = config(asymmetric_opposite, paths=40_000, seed=33)
    c = run_campaign(cfg)
    mass = meander_law(asymmetric_opposite, MeanderSign.POSITIVE, cfg.horizon).total_mass()
    assert abs(c.min_zero_fraction() - mass) <= 0.01


def test_ks_of_terminal_against_position_law(symmetric_unit):
    cfg = config(symmetric_unit, paths=20_000, seed=13)
    c = run_campaign(cfg)
    law = position_law(symmetric_unit, 0, cfg.horizon)
    assert c.ks_terminal(law.cdf()) <= 1.63 / math.sqrt(cfg.paths) * 1.5


def test_extremum_time_fractions(asymmetric_opposite):
    cfg = config(asymmetric_opposite, paths=10_000, seed=17)
    c = run_campaign(cfg)
    at0, at_end = c.extremum_time_fractions("min")
    assert at0 == c.min_zero_fraction()  # min at the start iff it stays 0
    assert at0 + at_end < 1.0
    assert at_end > 0.0
