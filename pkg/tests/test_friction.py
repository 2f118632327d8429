"""Tests for friction models and drive gains."""

import numpy as np
import pytest

from dynsolve import (
    AsymmetricSigmoid,
    ConfigError,
    DimensionError,
    DriveGains,
    FrictionParams,
    InputError,
    NoFriction,
    ViscousCoulomb,
    currents_from_torques,
    drive_gains_matrix,
    eval_friction,
    torques_from_currents,
)

ALL_MODELS = [
    NoFriction(),
    ViscousCoulomb(fv=0.5, fc=0.2, v_eps=1e-3),
    AsymmetricSigmoid(phi1=1.0, phi2=10.0, phi3=0.3),
]


class TestModels:
    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_vanishes_at_rest(self, model):
        assert model.evaluate(0.0) == 0.0

    def test_viscous_coulomb_value(self):
        params = FrictionParams((ViscousCoulomb(fv=0.5, fc=0.2, v_eps=1e-3),))
        np.testing.assert_allclose(eval_friction(params, [2.0]), [1.2], atol=1e-6)

    def test_sigmoid_odd_when_unshifted(self, rng):
        model = AsymmetricSigmoid(phi1=1.0, phi2=10.0, phi3=0.0)
        for qd in rng.uniform(-10.0, 10.0, 100):
            assert model.evaluate(-qd) == pytest.approx(-model.evaluate(qd),
                                                        abs=1e-12)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_monotone_nondecreasing(self, model, rng):
        qd = np.sort(rng.uniform(-10.0, 10.0, 200))
        values = np.array([model.evaluate(v) for v in qd])
        assert (np.diff(values) >= 0.0).all()

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_dissipative(self, model, rng):
        for qd in rng.uniform(-10.0, 10.0, 200):
            assert qd * model.evaluate(qd) >= 0.0

    def test_sigmoid_extreme_velocity_is_finite(self):
        model = AsymmetricSigmoid(phi1=2.0, phi2=500.0, phi3=0.1)
        assert np.isfinite(model.evaluate(1e6))
        assert np.isfinite(model.evaluate(-1e6))

    def test_negative_coulomb_gain_rejected(self):
        with pytest.raises(ConfigError):
            ViscousCoulomb(fv=-0.1, fc=0.2)
        with pytest.raises(ConfigError):
            ViscousCoulomb(fv=0.1, fc=0.2, v_eps=0.0)


class TestEvalFriction:
    def test_per_joint_independence(self, rng):
        params = FrictionParams(tuple(ALL_MODELS))
        qd = rng.uniform(-5.0, 5.0, 3)
        base = eval_friction(params, qd)
        for j in range(3):
            bumped = qd.copy()
            bumped[j] += 0.5
            changed = eval_friction(params, bumped) != base
            assert changed[j] or isinstance(params.models[j], NoFriction)
            changed[j] = False
            assert not changed.any()

    def test_zero_velocity_zero_vector(self):
        params = FrictionParams(tuple(ALL_MODELS))
        np.testing.assert_array_equal(eval_friction(params, np.zeros(3)),
                                      np.zeros(3))

    def test_length_mismatch(self):
        params = FrictionParams((NoFriction(),))
        with pytest.raises(DimensionError):
            eval_friction(params, [0.0, 1.0])

    def test_non_finite_velocity(self):
        params = FrictionParams((NoFriction(),))
        with pytest.raises(InputError):
            eval_friction(params, [np.nan])


class TestFrictionParamsConfig:
    def test_from_list_round_trip(self):
        entries = [
            {"model": "none", "params": {}},
            {"model": "viscous-coulomb",
             "params": {"Fv": 0.5, "Fc": 0.2, "vEps": 0.001}},
            {"model": "asymmetric-sigmoid",
             "params": {"phi1": 1.0, "phi2": 10.0, "phi3": 0.3}},
        ]
        params = FrictionParams.from_list(entries)
        assert params.to_list() == entries

    def test_unknown_model_name(self):
        with pytest.raises(ConfigError, match="stribeck"):
            FrictionParams.from_list([{"model": "stribeck", "params": {}}])

    def test_missing_parameter(self):
        with pytest.raises(ConfigError, match="Fc"):
            FrictionParams.from_list(
                [{"model": "viscous-coulomb", "params": {"Fv": 0.5}}]
            )


class TestDriveGains:
    def test_matrix_is_diagonal(self):
        gains = DriveGains([10.0, 20.0])
        np.testing.assert_array_equal(drive_gains_matrix(gains),
                                      [[10.0, 0.0], [0.0, 20.0]])

    def test_torques_from_currents(self):
        gains = DriveGains([2.0, 3.0])
        np.testing.assert_array_equal(
            torques_from_currents(gains, [1.0, 1.0]), [2.0, 3.0]
        )
        np.testing.assert_array_equal(
            torques_from_currents(gains, [0.0, 0.0]), [0.0, 0.0]
        )

    def test_single_joint_scaling(self):
        assert torques_from_currents(DriveGains([10.0]), [1.5])[0] == 15.0

    def test_identity_gains_pass_through(self, rng):
        gains = DriveGains(np.ones(4))
        currents = rng.uniform(-5.0, 5.0, 4)
        np.testing.assert_array_equal(torques_from_currents(gains, currents),
                                      currents)

    def test_inverse_round_trip(self, rng):
        gains = DriveGains(rng.uniform(0.5, 30.0, 6))
        currents = rng.uniform(-10.0, 10.0, 6)
        back = currents_from_torques(gains, torques_from_currents(gains, currents))
        np.testing.assert_allclose(back, currents, atol=1e-12)

    def test_nonpositive_gain_rejected(self):
        with pytest.raises(ConfigError):
            DriveGains([1.0, 0.0])
        with pytest.raises(ConfigError):
            DriveGains([-2.0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            torques_from_currents(DriveGains([1.0]), [1.0, 2.0])
