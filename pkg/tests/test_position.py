"""Position/switch-count law: atoms, fixed-count densities, summed law."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from telegraphkit import (
    TelegraphParams,
    position_atom,
    position_density,
    position_law,
    position_switch_density,
    switch_count_probability,
)


def test_atom_examples():
    a = position_atom(TelegraphParams(1, 1, 1, -1), 0, 1.0)
    assert a.location == pytest.approx(1.0)
    assert a.mass == pytest.approx(math.exp(-1.0), rel=1e-14)
    b = position_atom(TelegraphParams(1, 2, 1, -1), 1, 0.5)
    assert b.location == pytest.approx(-0.5)
    assert b.mass == pytest.approx(math.exp(-1.0), rel=1e-14)
    # long-time mass decays without underflow surprises
    c = position_atom(TelegraphParams(1, 1, 1, -1), 0, 100.0)
    assert 0.0 < c.mass < 1e-40


def test_atom_rejects_bad_input(symmetric_unit):
    with pytest.raises(ValueError):
        position_atom(symmetric_unit, 2, 1.0)
    with pytest.raises(ValueError):
        position_atom(symmetric_unit, 0, 0.0)


def test_switch_density_examples(symmetric_unit):
    val = position_switch_density(symmetric_unit, 0, 2.0, 0.0, 1)
    assert val == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-13)
    val2 = position_switch_density(symmetric_unit, 0, 2.0, 0.0, 2)
    assert val2 == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-13)
    # outside the open support
    assert position_switch_density(symmetric_unit, 0, 2.0, 2.0 + 1.0, 7) == 0.0
    assert position_switch_density(symmetric_unit, 0, 2.0, 2.0, 3) == 0.0  # boundary
    with pytest.raises(ValueError):
        position_switch_density(symmetric_unit, 0, 2.0, 0.0, 0)


def test_normalization_example():
    params = TelegraphParams(2.0, 1.0, 3.0, -1.0)
    law = position_law(params, 0, 1.7)
    assert law.total_mass() == pytest.approx(1.0, abs=1e-8)


def test_density_boundary_limit():
    # approaching the fast edge, the density tends to l0*(1 + l1*t)*theta|_{xi1=0}
    params = TelegraphParams(1.1, 0.6, 1.4, -0.8)
    t = 2.0
    x = params.gamma0 * t * (1.0 - 1e-10)
    expected = (
        params.lambda0
        * (1.0 + params.lambda1 * t)
        * math.exp(-params.lambda0 * t)
        / params.velocity_gap
    )
    assert position_density(params, 0, t, x) == pytest.approx(expected, rel=1e-6)


def test_partial_sums_match_summed_density(rng):
    params = TelegraphParams(2.0, 1.0, 3.0, -1.0)
    t = 1.7
    xs = rng.uniform(params.gamma1 * t, params.gamma0 * t, size=20)
    for i in (0, 1):
        dens = position_density(params, i, t, xs)
        partial = sum(position_switch_density(params, i, t, xs, n) for n in range(1, 41))
        np.testing.assert_allclose(partial, dens, rtol=1e-10, atol=1e-12)


def test_density_nonnegative_and_zero_outside(rng):
    params = TelegraphParams(0.7, 1.9, 0.9, -1.6)
    t = 3.0
    xs = np.linspace(params.gamma1 * t - 1.0, params.gamma0 * t + 1.0, 301)
    dens = position_density(params, 1, t, xs)
    assert np.all(dens >= 0.0)
    outside = (xs <= params.gamma1 * t) | (xs >= params.gamma0 * t)
    assert np.all(dens[outside] == 0.0)


def test_law_support_and_atom(symmetric_unit):
    law = position_law(symmetric_unit, 1, 2.0)
    assert law.support == (-2.0, 2.0)
    assert law.atoms[0].location == pytest.approx(-2.0)
    assert law.atoms[0].mass == pytest.approx(math.exp(-2.0), rel=1e-14)


def test_switch_count_probabilities_sum_to_one(asymmetric_opposite):
    total = sum(switch_count_probability(asymmetric_opposite, 0, 2.0, n) for n in range(40))
    assert total == pytest.approx(1.0, abs=1e-8)


def test_switch_count_matches_direct_quadrature(symmetric_unit):
    # independent route: quadrature of the fixed-count density
    direct, _ = quad(
        lambda x: position_switch_density(symmetric_unit, 0, 2.0, x, 3), -2.0, 2.0
    )
    assert switch_count_probability(symmetric_unit, 0, 2.0, 3) == pytest.approx(
        direct, rel=1e-10
    )


def test_vectorised_matches_scalar(symmetric_unit):
    xs = np.linspace(-2.5, 2.5, 11)
    vec = position_density(symmetric_unit, 0, 2.0, xs)
    for j, x in enumerate(xs):
        assert vec[j] == position_density(symmetric_unit, 0, 2.0, float(x))
