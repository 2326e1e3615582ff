import math

import numpy as np
import pytest

from paretoplace import AnnealConfig, anneal_weighted_sum, default_problem, weighted_sum_cost
from paretoplace.errors import ConfigurationError, ValidationError


class TestWeightedSumCost:
    def test_simple(self):
        assert weighted_sum_cost([1.0, 3.0], [0.5, 0.5]) == 2.0

    def test_projection(self):
        assert weighted_sum_cost([1.3, 0.7], [1.0, 0.0]) == 1.3

    def test_scaling_preserves_argmin(self):
        rng = np.random.default_rng(1)
        objs = rng.uniform(0, 1, size=(50, 2))
        w = np.array([0.3, 0.7])
        costs = np.array([weighted_sum_cost(o, w) for o in objs])
        scaled = np.array([weighted_sum_cost(o, 4.0 * w) for o in objs])
        assert np.allclose(scaled, 4.0 * costs, atol=1e-12)
        assert scaled.argmin() == costs.argmin()

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            weighted_sum_cost([1.0, 2.0], [1.0])

    def test_invalid_weights(self):
        with pytest.raises(ValidationError):
            weighted_sum_cost([1.0, 2.0], [0.0, 0.0])
        with pytest.raises(ValidationError):
            weighted_sum_cost([1.0, 2.0], [-0.5, 1.0])


class TestConfig:
    def test_defaults(self):
        AnnealConfig().validate()

    def test_ranges(self):
        with pytest.raises(ConfigurationError):
            AnnealConfig(initial_temperature=0.0).validate()
        with pytest.raises(ConfigurationError):
            AnnealConfig(cooling_factor=1.0).validate()
        with pytest.raises(ConfigurationError):
            AnnealConfig(iterations=-1).validate()
        with pytest.raises(ConfigurationError):
            AnnealConfig(proposal_sigma=0.0).validate()

    def test_round_trip_includes_seed(self):
        config = AnnealConfig(seed=99)
        assert AnnealConfig.from_dict(config.to_dict()) == config


class TestAnneal:
    def test_zero_iterations_returns_initial(self, problem):
        # Seed 7's initial perturbation lands inside the reach sphere, so
        # the evaluated start is returned as-is.
        config = AnnealConfig(iterations=0, seed=7)
        result = anneal_weighted_sum(problem, [0.5, 0.5], config)
        rng = np.random.default_rng(7)
        pose = problem.pose
        start = (
            pose.shoulder_position
            + pose.arm_length * pose.arm_rest_direction
            + config.proposal_sigma * rng.standard_normal(3)
        )
        assert np.array_equal(result.position, problem.bounds.clip(start))
        assert result.is_feasible

    def test_deterministic(self, problem):
        config = AnnealConfig(iterations=2000, seed=3)
        a = anneal_weighted_sum(problem, [0.5, 0.5], config)
        b = anneal_weighted_sum(problem, [0.5, 0.5], config)
        assert np.array_equal(a.position, b.position)
        assert np.array_equal(a.objectives, b.objectives)

    def test_equal_weights_collapse_to_arm_optimum(self, problem):
        # Default schedule, seed 7: cost reaches within 0.02 of pi/4 and the
        # result is an arm-angle optimum. The equal-weight argmin set is the
        # whole resting-arm ray (cost identically pi/4 along it), so assert
        # proximity to the ray rather than to the pole point.
        result = anneal_weighted_sum(problem, [0.5, 0.5], AnnealConfig())
        cost = weighted_sum_cost(result.objectives, [0.5, 0.5])
        assert abs(cost - math.pi / 4) <= 0.02
        assert result.objectives[1] <= 0.02  # arm-angle optimum
        pose = problem.pose
        offset = result.position - pose.shoulder_position
        along = float(np.dot(offset, pose.arm_rest_direction))
        perp = offset - along * pose.arm_rest_direction
        assert 0.0 < along <= pose.arm_length + 1e-9
        assert np.linalg.norm(perp) <= 0.02

    def test_neck_only_weights(self, problem):
        result = anneal_weighted_sum(problem, [1.0, 0.0], AnnealConfig())
        assert result.objectives[0] <= 0.02

    def test_best_is_feasible(self, problem):
        result = anneal_weighted_sum(
            problem, [0.5, 0.5], AnnealConfig(iterations=500, seed=123)
        )
        assert result.is_feasible

    def test_weight_dimension_checked(self, problem):
        with pytest.raises(ValidationError):
            anneal_weighted_sum(problem, [1.0, 0.0, 0.0], AnnealConfig(iterations=10))
