"""Adaptation problem definition and candidate evaluation.

An AdaptationProblem bundles a pose, a decision box, an ordered objective
list, and any accumulated preference bounds. Evaluation is pure: the same
position always produces bit-identical objective and violation values,
whether evaluated alone or in a batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .ergonomics import OBJECTIVES, UserPose, default_pose, reach_violation_many, vec3
from .errors import OutOfBoundsError, ValidationError


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned decision box (inclusive)."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", vec3(self.lower))
        object.__setattr__(self, "upper", vec3(self.upper))
        if not np.all(self.lower < self.upper):
            raise ValidationError("bounds must have lower < upper per axis", field="bounds")

    def contains(self, p: np.ndarray) -> bool:
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))

    def clip(self, positions: np.ndarray) -> np.ndarray:
        return np.clip(positions, self.lower, self.upper)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(n, 3))

    def to_dict(self) -> dict:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Bounds":
        return cls(lower=vec3(data["lower"]), upper=vec3(data["upper"]))


@dataclass(frozen=True)
class PreferenceConstraint:
    """Upper bound on one objective, accumulated from user selections."""

    objective: str
    upper_bound: float

    def to_dict(self) -> dict:
        return {"objective": self.objective, "upper_bound": self.upper_bound}

    @classmethod
    def from_dict(cls, data: dict) -> "PreferenceConstraint":
        return cls(objective=data["objective"], upper_bound=float(data["upper_bound"]))


@dataclass(frozen=True)
class AdaptationProblem:
    pose: UserPose
    bounds: Bounds
    objective_ids: tuple[str, ...] = ("neck_angle", "arm_angle")
    preference_constraints: tuple[PreferenceConstraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objective_ids", tuple(self.objective_ids))
        object.__setattr__(
            self, "preference_constraints", tuple(self.preference_constraints)
        )
        for oid in self.objective_ids:
            if oid not in OBJECTIVES:
                raise ValidationError(f"unknown objective '{oid}'", field="objective_ids")
        for c in self.preference_constraints:
            if c.objective not in self.objective_ids:
                raise ValidationError(
                    f"constraint on unknown objective '{c.objective}'",
                    field="preference_constraints",
                )

    @property
    def n_objectives(self) -> int:
        return len(self.objective_ids)

    def objective_index(self, objective_id: str) -> int:
        return self.objective_ids.index(objective_id)

    def with_constraints(
        self, constraints: list[PreferenceConstraint] | tuple[PreferenceConstraint, ...]
    ) -> "AdaptationProblem":
        return replace(self, preference_constraints=tuple(constraints))

    def to_dict(self) -> dict:
        return {
            "pose": self.pose.to_dict(),
            "bounds": self.bounds.to_dict(),
            "objective_ids": list(self.objective_ids),
            "preference_constraints": [c.to_dict() for c in self.preference_constraints],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AdaptationProblem":
        return cls(
            pose=UserPose.from_dict(data["pose"]),
            bounds=Bounds.from_dict(data["bounds"]),
            objective_ids=tuple(data["objective_ids"]),
            preference_constraints=tuple(
                PreferenceConstraint.from_dict(c) for c in data["preference_constraints"]
            ),
        )


@dataclass(frozen=True, eq=False)
class Candidate:
    """A placement with its evaluated objectives and constraint violations.

    Violations <= 0 mean feasible; `preference_violation` is the max excess
    over the accumulated objective bounds (0 when no bounds exist).
    """

    position: np.ndarray
    objectives: np.ndarray
    reach_violation: float
    preference_violation: float

    @property
    def total_violation(self) -> float:
        return max(self.reach_violation, 0.0) + max(self.preference_violation, 0.0)

    @property
    def is_feasible(self) -> bool:
        return self.total_violation <= 0.0

    def to_dict(self) -> dict:
        return {
            "position": [float(v) for v in self.position],
            "objectives": [float(v) for v in self.objectives],
            "reach_violation": float(self.reach_violation),
            "preference_violation": float(self.preference_violation),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Candidate":
        return cls(
            position=vec3(data["position"]),
            objectives=np.asarray(data["objectives"], dtype=np.float64),
            reach_violation=float(data["reach_violation"]),
            preference_violation=float(data["preference_violation"]),
        )


def reach_bounds(pose: UserPose) -> Bounds:
    """Tightest axis-aligned box containing the reach sphere."""
    extent = np.full(3, pose.arm_length)
    return Bounds(
        lower=pose.shoulder_position - extent,
        upper=pose.shoulder_position + extent,
    )


def default_problem(pose: UserPose | None = None) -> AdaptationProblem:
    pose = pose if pose is not None else default_pose()
    return AdaptationProblem(pose=pose, bounds=reach_bounds(pose))


def evaluate_batch(
    problem: AdaptationProblem, positions: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate (n, 3) positions -> (objectives (n, M), reach (n), preference (n)).

    Positions are assumed inside the decision box (optimizers clamp, the
    grid oracle constructs in-box points). Degenerate positions score pi on
    the affected objective rather than raising.
    """
    positions = np.ascontiguousarray(positions, dtype=np.float64)
    objs = np.empty((positions.shape[0], problem.n_objectives), dtype=np.float64)
    for m, oid in enumerate(problem.objective_ids):
        objs[:, m] = OBJECTIVES[oid](problem.pose, positions)
    reach = reach_violation_many(problem.pose, positions)
    pref = np.zeros(positions.shape[0], dtype=np.float64)
    if problem.preference_constraints:
        excess = np.full(positions.shape[0], -np.inf)
        for c in problem.preference_constraints:
            m = problem.objective_index(c.objective)
            excess = np.maximum(excess, objs[:, m] - c.upper_bound)
        pref = excess
    return objs, reach, pref


def evaluate(problem: AdaptationProblem, p) -> Candidate:
    """Evaluate a single in-bounds position into a Candidate."""
    p = vec3(p)
    if not problem.bounds.contains(p):
        raise OutOfBoundsError(
            f"position {p.tolist()} outside decision box "
            f"{problem.bounds.lower.tolist()}..{problem.bounds.upper.tolist()}"
        )
    objs, reach, pref = evaluate_batch(problem, p[None, :])
    return Candidate(
        position=p,
        objectives=objs[0],
        reach_violation=float(reach[0]),
        preference_violation=float(pref[0]),
    )


def candidates_from_arrays(
    positions: np.ndarray, objs: np.ndarray, reach: np.ndarray, pref: np.ndarray
) -> list[Candidate]:
    return [
        Candidate(
            position=positions[i].copy(),
            objectives=objs[i].copy(),
            reach_violation=float(reach[i]),
            preference_violation=float(pref[i]),
        )
        for i in range(positions.shape[0])
    ]
