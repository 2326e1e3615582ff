"""Weighted-sum scalarization and its simulated-annealing solver.

This is the state-of-practice baseline the multi-objective engine is
compared against: all objectives collapse into one static linear cost,
minimized by Metropolis search over the decision box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import ConfigurationError, InfeasibleSearchError, ValidationError
from .problem import AdaptationProblem, Candidate, evaluate

COOLING_INTERVAL = 100  # iterations between applications of the cooling factor


@dataclass(frozen=True)
class AnnealConfig:
    initial_temperature: float = 1.0
    cooling_factor: float = 0.95
    iterations: int = 20_000
    proposal_sigma: float = 0.10
    seed: int = 7

    def validate(self) -> None:
        if not self.initial_temperature > 0:
            raise ConfigurationError(
                "initial_temperature must be > 0", field="initial_temperature"
            )
        if not 0.0 < self.cooling_factor < 1.0:
            raise ConfigurationError(
                "cooling_factor must be in (0, 1)", field="cooling_factor"
            )
        if self.iterations < 0:
            raise ConfigurationError("iterations must be >= 0", field="iterations")
        if not self.proposal_sigma > 0:
            raise ConfigurationError("proposal_sigma must be > 0", field="proposal_sigma")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer", field="seed")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AnnealConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown anneal config keys: {sorted(unknown)}")
        return cls(**data)


def weighted_sum_cost(objectives: np.ndarray, weights: np.ndarray) -> float:
    """Static linear combination of objective values."""
    objectives = np.asarray(objectives, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if objectives.shape != weights.shape:
        raise ValidationError(
            f"objective/weight length mismatch: {objectives.shape} vs {weights.shape}"
        )
    if np.any(weights < 0) or not np.any(weights > 0):
        raise ValidationError("weights must be non-negative and not all zero")
    return float(np.add.reduce(weights * objectives))


def anneal_weighted_sum(
    problem: AdaptationProblem, weights, config: AnnealConfig | None = None
) -> Candidate:
    """Best feasible candidate found by Metropolis search on the weighted
    cost. Gaussian proposals are clamped to the decision box; infeasible
    proposals are rejected; cooling is geometric every COOLING_INTERVAL
    iterations. Deterministic for a fixed seed.
    """
    config = config or AnnealConfig()
    config.validate()
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (problem.n_objectives,):
        raise ValidationError(
            f"expected {problem.n_objectives} weights, got {weights.shape}"
        )
    rng = np.random.default_rng(config.seed)
    pose = problem.pose
    start = (
        pose.shoulder_position
        + pose.arm_length * pose.arm_rest_direction
        + config.proposal_sigma * rng.standard_normal(3)
    )
    current = evaluate(problem, problem.bounds.clip(start))
    current_cost = (
        weighted_sum_cost(current.objectives, weights)
        if current.is_feasible
        else math.inf
    )
    best: Candidate | None = current if current.is_feasible else None
    best_cost = current_cost

    for it in range(config.iterations):
        temperature = config.initial_temperature * config.cooling_factor ** (
            it // COOLING_INTERVAL
        )
        step = config.proposal_sigma * rng.standard_normal(3)
        proposal = problem.bounds.clip(current.position + step)
        candidate = evaluate(problem, proposal)
        if not candidate.is_feasible:
            continue
        cost = weighted_sum_cost(candidate.objectives, weights)
        if cost < best_cost:
            best, best_cost = candidate, cost
        if cost <= current_cost:
            current, current_cost = candidate, cost
        elif rng.random() < math.exp(-(cost - current_cost) / temperature):
            current, current_cost = candidate, cost

    if best is None:
        raise InfeasibleSearchError(
            f"no feasible point visited in {config.iterations} iterations"
        )
    return best
