"""Parameter validation, regime classification and kinematics."""

import math

import numpy as np
import pytest

from telegraphkit import TelegraphParams, VelocityRegime, classify_regime, kinematics


def test_classify_regime_examples():
    assert classify_regime(TelegraphParams(1, 1, 1, -1)) is VelocityRegime.OPPOSITE_SIGNS
    assert classify_regime(TelegraphParams(2, 1, 3, 1)) is VelocityRegime.BOTH_POSITIVE
    assert classify_regime(TelegraphParams(1, 3, -1, -2)) is VelocityRegime.BOTH_NEGATIVE


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(lambda0=0.0, lambda1=1.0, gamma0=1.0, gamma1=-1.0),
        dict(lambda0=1.0, lambda1=-2.0, gamma0=1.0, gamma1=-1.0),
        dict(lambda0=1.0, lambda1=1.0, gamma0=-1.0, gamma1=1.0),
        dict(lambda0=1.0, lambda1=1.0, gamma0=1.0, gamma1=1.0),
        dict(lambda0=1.0, lambda1=1.0, gamma0=1.0, gamma1=0.0),
        dict(lambda0=1.0, lambda1=1.0, gamma0=1e-15, gamma1=-1.0),
        dict(lambda0=math.nan, lambda1=1.0, gamma0=1.0, gamma1=-1.0),
    ],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        TelegraphParams(**kwargs)


def test_kinematics_symmetric_point(symmetric_unit):
    k = kinematics(symmetric_unit, 2.0, 0.0)
    assert k.xi0 == pytest.approx(1.0, abs=1e-15)
    assert k.xi1 == pytest.approx(1.0, abs=1e-15)
    assert k.z == pytest.approx(1.0, abs=1e-15)
    assert k.theta == pytest.approx(math.exp(-2.0) / 2.0, rel=1e-14)


def test_kinematics_support_boundary():
    params = TelegraphParams(0.8, 1.7, 2.0, -0.4)
    t = 1.3
    k = kinematics(params, t, params.gamma0 * t)
    assert k.xi1 == pytest.approx(0.0, abs=1e-14)
    assert k.z == pytest.approx(0.0, abs=1e-14)


def test_kinematics_cross_checked_by_linear_solve():
    # occupation times also solve xi0+xi1=t, g0*xi0+g1*xi1=x
    params = TelegraphParams(2.0, 1.0, 3.0, -1.0)
    t, x = 1.0, 1.0
    k = kinematics(params, t, x)
    ref = np.linalg.solve(
        np.array([[1.0, 1.0], [params.gamma0, params.gamma1]]), np.array([t, x])
    )
    assert k.xi0 == pytest.approx(ref[0], rel=1e-14)
    assert k.xi1 == pytest.approx(ref[1], rel=1e-14)
    assert k.xi0 == pytest.approx(0.5)
    assert k.z == pytest.approx(0.5)
    assert k.theta == pytest.approx(math.exp(-1.5) / 4.0, rel=1e-14)


def test_kinematics_rejects_nonpositive_time(symmetric_unit):
    with pytest.raises(ValueError):
        kinematics(symmetric_unit, 0.0, 0.0)
    with pytest.raises(ValueError):
        kinematics(symmetric_unit, -1.0, 0.0)


def test_kinematics_identities_randomised(rng):
    for _ in range(50):
        params = TelegraphParams(
            rng.uniform(0.2, 3.0),
            rng.uniform(0.2, 3.0),
            rng.uniform(0.5, 3.0),
            -rng.uniform(0.5, 3.0),
        )
        t = rng.uniform(0.1, 5.0)
        x = rng.uniform(params.gamma1 * t, params.gamma0 * t)
        k = kinematics(params, t, x)
        assert k.xi0 + k.xi1 == pytest.approx(t, rel=1e-12)
        assert params.gamma0 * k.xi0 + params.gamma1 * k.xi1 == pytest.approx(
            x, rel=1e-12, abs=1e-12
        )


def test_translation_identities_randomised(rng):
    # shifting the endpoint along either velocity shifts one occupation time
    for _ in range(50):
        params = TelegraphParams(
            rng.uniform(0.2, 3.0),
            rng.uniform(0.2, 3.0),
            rng.uniform(0.5, 3.0),
            -rng.uniform(0.5, 3.0),
        )
        t = rng.uniform(0.5, 5.0)
        x = rng.uniform(params.gamma1 * t, params.gamma0 * t)
        tau = rng.uniform(0.0, t / 2)
        base = kinematics(params, t, x)
        along0 = kinematics(params, t - tau, x - params.gamma0 * tau)
        assert along0.xi0 == pytest.approx(base.xi0 - tau, rel=1e-11, abs=1e-12)
        assert along0.xi1 == pytest.approx(base.xi1, rel=1e-11, abs=1e-12)
        along1 = kinematics(params, t - tau, x - params.gamma1 * tau)
        assert along1.xi0 == pytest.approx(base.xi0, rel=1e-11, abs=1e-12)
        assert along1.xi1 == pytest.approx(base.xi1 - tau, rel=1e-11, abs=1e-12)


def test_interchange_is_an_involution(asymmetric_opposite):
    p = asymmetric_opposite
    q = p.interchanged().interchanged()
    assert q == p
    swapped = p.interchanged()
    assert swapped.lambda0 == p.lambda1
    assert swapped.gamma0 == -p.gamma1
    assert swapped.regime is VelocityRegime.OPPOSITE_SIGNS
