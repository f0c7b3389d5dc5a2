"""Joint extremum laws: components, sheets, marginalisation, degeneracy."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from telegraphkit import (
    ExtremumKind,
    TelegraphParams,
    extremum_joint_law,
    extremum_regular_density,
    extremum_zeta_t_atom,
    extremum_zeta_t_component,
    extremum_zeta_zero_atom,
    extremum_zeta_zero_component,
    fpt_switch_density,
    kinematics,
    meander_density,
    meander_switch_density,
    position_density,
    position_switch_density,
)
from telegraphkit.meander import MeanderSign

MIN, MAX = ExtremumKind.MIN, ExtremumKind.MAX


def test_zeta_zero_delegates_to_meander(symmetric_unit):
    val = extremum_zeta_zero_component(symmetric_unit, 0, MIN, 2.0, 1.0, 2)
    assert val == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-13)
    assert val == meander_switch_density(symmetric_unit, MeanderSign.POSITIVE, 2.0, 1.0, 2)
    # a path started downward has a strictly negative minimum
    assert extremum_zeta_zero_component(symmetric_unit, 1, MIN, 2.0, 1.0, 2) == 0.0
    assert extremum_zeta_zero_atom(symmetric_unit, 1, MIN, 2.0) is None
    summed = extremum_zeta_zero_component(symmetric_unit, 0, MIN, 2.0, 0.7)
    assert summed == meander_density(symmetric_unit, MeanderSign.POSITIVE, 2.0, 0.7)


def test_zeta_t_parity_and_values(symmetric_unit):
    # ending at the maximum needs an even count from the rising start
    x = 1.0
    val = extremum_zeta_t_component(symmetric_unit, 0, MAX, 2.0, x, 2)
    assert val == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-13)
    f2 = fpt_switch_density(symmetric_unit, 0, 2.0, x, 2)
    assert val == pytest.approx(f2 / symmetric_unit.gamma0, rel=1e-14)
    assert extremum_zeta_t_component(symmetric_unit, 0, MAX, 2.0, x, 3) == 0.0
    # a minimum is never positive
    assert extremum_zeta_t_component(symmetric_unit, 0, MIN, 2.0, 0.5) == 0.0
    # the no-switch path realises "extremum at the end" for the right start
    atom = extremum_zeta_t_atom(symmetric_unit, 1, MIN, 2.0)
    assert atom.location == pytest.approx(-2.0)
    assert atom.mass == pytest.approx(math.exp(-2.0), rel=1e-13)
    assert extremum_zeta_t_atom(symmetric_unit, 0, MIN, 2.0) is None


def test_zeta_t_summed_matches_term_sum(asymmetric_opposite):
    t = 2.0
    x = -0.4
    total = sum(
        extremum_zeta_t_component(asymmetric_opposite, 0, MIN, t, x, n) for n in range(1, 61)
    )
    assert extremum_zeta_t_component(asymmetric_opposite, 0, MIN, t, x) == pytest.approx(
        total, rel=1e-10
    )


def test_regular_density_parity_empty_cases(symmetric_unit):
    # n = 1 from the rising start leaves no room for passage + reversal
    assert extremum_regular_density(symmetric_unit, 0, MIN, 2.0, 0.8, -0.2, 0.5, 1) == 0.0
    # n = 2 pairs the single passage with an atomic meander: pure sheet
    assert extremum_regular_density(symmetric_unit, 0, MIN, 2.0, 0.8, -0.2, 0.5, 2) == 0.0
    # out of range returns zero, not an error
    assert extremum_regular_density(symmetric_unit, 0, MIN, 2.0, 2.5, -0.2, 0.5) == 0.0
    assert extremum_regular_density(symmetric_unit, 0, MIN, 2.0, 0.8, 0.2, 0.5) == 0.0


def test_reversal_sheet_n2_value(asymmetric_opposite):
    # two switches: up, reverse at the minimum, straight to the end.
    # direct path computation: joint (s, y) density
    #   lambda0*lambda1 * exp(-l0*xi0(s,y) - l1*xi1(s,y))/(g0-g1) * exp(-l0*(t-s))
    p = asymmetric_opposite
    t, s, y = 2.0, 0.9, -0.3
    law = extremum_joint_law(p, 0, MIN, t)
    kin = kinematics(p, s, y)
    direct = p.lambda0 * p.lambda1 * kin.theta * math.exp(-p.lambda0 * (t - s))
    assert law.interior_reversal_sheet_density(s, y, n=2) == pytest.approx(direct, rel=1e-12)
    # and it is the rate/speed-weighted one-switch passage
    manual = (
        p.lambda1
        / abs(p.gamma1)
        * fpt_switch_density(p, 0, s, y, 1)
        * math.exp(-p.lambda0 * (t - s))
    )
    assert law.interior_reversal_sheet_density(s, y, n=2) == pytest.approx(manual, rel=1e-13)


def test_ballistic_bridge_equals_one_switch_position_density(asymmetric_opposite):
    # one switch total: the kink is both the minimum and the only event
    p = asymmetric_opposite
    law = extremum_joint_law(p, 1, MIN, 2.0)
    for x in (-0.9, 0.2, 1.6):
        assert law.interior_ballistic_bridge_density(x) == pytest.approx(
            position_switch_density(p, 1, 2.0, x, 1), rel=1e-12
        )
    law0 = extremum_joint_law(p, 0, MIN, 2.0)
    assert law0.interior_ballistic_bridge_density(0.3) == 0.0


def test_marginalisation_recovers_fixed_count_position_density(symmetric_unit):
    # all paths with three switches, sorted by where their minimum sits
    p = symmetric_unit
    t, x, n = 2.0, 0.3, 3
    meander_part = extremum_zeta_zero_component(p, 0, MIN, t, x, n)
    end_part = extremum_zeta_t_component(p, 0, MIN, t, x, n)

    def outer(s):
        lo = max(p.gamma1 * s, x - p.gamma0 * (t - s))
        hi = min(0.0, x)
        if lo >= hi:
            return 0.0
        val, _ = quad(
            lambda y: extremum_regular_density(p, 0, MIN, t, s, y, x, n), lo, hi,
            epsabs=1e-11, limit=100,
        )
        return val

    interior, _ = quad(outer, 0.0, t, epsabs=1e-9, limit=200)
    total = meander_part + end_part + interior
    assert total == pytest.approx(position_switch_density(p, 0, t, x, n), abs=2e-6)


def test_component_masses_sum_to_one(asymmetric_opposite):
    law = extremum_joint_law(asymmetric_opposite, 0, MIN, 2.0)
    masses = law.component_masses()
    assert masses.total == pytest.approx(1.0, abs=5e-6)
    assert masses.at_start > 0 and masses.at_end > 0 and masses.interior > 0
    law1 = extremum_joint_law(asymmetric_opposite, 1, MAX, 1.5)
    m1 = law1.component_masses()
    assert m1.total == pytest.approx(1.0, abs=5e-6)
    assert m1.at_start > 0  # negative meander carries the start component


def test_marginal_matches_position_density(asymmetric_opposite):
    law = extremum_joint_law(asymmetric_opposite, 0, MIN, 2.0)
    for x in (-0.9, 0.25, 1.4):
        assert law.marginal_position_density(x) == pytest.approx(
            position_density(asymmetric_opposite, 0, 2.0, x), abs=5e-6
        )
    lawM = extremum_joint_law(asymmetric_opposite, 1, MAX, 2.0)
    for x in (-1.0, 0.4):
        assert lawM.marginal_position_density(x) == pytest.approx(
            position_density(asymmetric_opposite, 1, 2.0, x), abs=5e-6
        )


def test_marginal_atoms_match_position_atom(asymmetric_opposite):
    law = extremum_joint_law(asymmetric_opposite, 0, MIN, 2.0)
    atoms = law.marginal_atoms()
    assert len(atoms) == 1
    assert atoms[0].location == pytest.approx(asymmetric_opposite.gamma0 * 2.0)
    assert atoms[0].mass == pytest.approx(math.exp(-asymmetric_opposite.lambda0 * 2.0), rel=1e-12)


def test_degenerate_same_sign_structure():
    up = TelegraphParams(1.0, 2.0, 2.0, 0.5)
    law = extremum_joint_law(up, 0, MIN, 1.5)
    assert law.degenerate
    assert law.pinned_at == "start"
    m = law.component_masses()
    assert m.at_start == pytest.approx(1.0, abs=1e-8)
    assert m.at_end == 0.0 and m.interior == 0.0
    assert law.marginal_position_density(1.2) == position_density(up, 0, 1.5, 1.2)

    lawM = extremum_joint_law(up, 1, MAX, 1.5)
    assert lawM.degenerate and lawM.pinned_at == "end"
    assert lawM.component_masses().at_end == pytest.approx(1.0, abs=1e-8)

    down = TelegraphParams(1.0, 2.0, -0.5, -2.0)
    assert extremum_joint_law(down, 0, MIN, 1.5).pinned_at == "end"
    assert extremum_joint_law(down, 0, MAX, 1.5).pinned_at == "start"


def test_zeta_t_law_object(asymmetric_opposite):
    law = extremum_joint_law(asymmetric_opposite, 1, MIN, 2.0)
    sub = law.zeta_t_law
    assert sub.support == (asymmetric_opposite.gamma1 * 2.0, 0.0)
    assert len(sub.atoms) == 1
    assert 0 < sub.total_mass() < 1
    assert law.zeta_zero_law is None


def test_interior_sy_marginal_positive_inside(asymmetric_opposite):
    law = extremum_joint_law(asymmetric_opposite, 0, MIN, 2.0)
    assert law.interior_sy_marginal_density(1.0, -0.3) > 0.0
    assert law.interior_sy_marginal_density(1.0, 0.3) == 0.0
    assert law.interior_sy_marginal_density(2.5, -0.3) == 0.0
