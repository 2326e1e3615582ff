"""End-to-end simulation harness: oracle front, evolutionary front,
weighted-sum baseline, comparison metrics, and plot-ready exports.

Everything here is reproducible from config + seeds; wall-clock timings are
the only non-deterministic report fields and live under their own key.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .anneal import AnnealConfig, anneal_weighted_sum, weighted_sum_cost
from .ergonomics import UserPose, default_pose
from .errors import ConfigurationError
from .nsga3 import Nsga3Config, nsga3_run
from .pareto import DEFAULT_ORACLE_RESOLUTION, ParetoFront, brute_force_front, grid_positions, igd
from .problem import AdaptationProblem, Candidate, default_problem, evaluate, evaluate_batch
from .selection import DEFAULT_REDUCTION_K, DEFAULT_TAU

# An annealed result counts as collapsed onto the oracle arm extreme when
# both objective components agree this closely (radians).
COLLAPSE_TOLERANCE = 0.02

ORACLE_CSV = "oracle_front.csv"
NSGA3_CSV = "nsga3_front.csv"
WEIGHTED_SUM_JSON = "weighted_sum.json"
REPORT_JSON = "report.json"


@dataclass(frozen=True)
class SimulationConfig:
    pose: UserPose = field(default_factory=default_pose)
    nsga3: Nsga3Config = field(default_factory=Nsga3Config)
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    weights: tuple[float, ...] = (0.5, 0.5)
    oracle_resolution: int = DEFAULT_ORACLE_RESOLUTION
    reduction_k: int = DEFAULT_REDUCTION_K
    tau: float = DEFAULT_TAU

    def validate(self) -> None:
        if self.oracle_resolution < 2:
            raise ConfigurationError(
                "oracle_resolution must be >= 2", field="oracle_resolution"
            )
        if self.reduction_k < 1:
            raise ConfigurationError("reduction_k must be >= 1", field="reduction_k")
        if not self.tau > 0:
            raise ConfigurationError("tau must be > 0", field="tau")
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size != 2:
            raise ConfigurationError("weights must be a 2-vector", field="weights")
        if np.any(w < 0) or not np.any(w > 0):
            raise ConfigurationError(
                "weights must be non-negative and not all zero", field="weights"
            )

    def to_dict(self) -> dict:
        return {
            "pose": self.pose.to_dict(),
            "nsga3": self.nsga3.to_dict(),
            "anneal": self.anneal.to_dict(),
            "weights": list(self.weights),
            "oracle_resolution": self.oracle_resolution,
            "reduction_k": self.reduction_k,
            "tau": self.tau,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationConfig":
        known = {
            "pose",
            "nsga3",
            "anneal",
            "weights",
            "oracle_resolution",
            "reduction_k",
            "tau",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict = {}
        if "pose" in data:
            kwargs["pose"] = UserPose.from_dict(data["pose"])
        if "nsga3" in data:
            kwargs["nsga3"] = Nsga3Config.from_dict(data["nsga3"])
        if "anneal" in data:
            kwargs["anneal"] = AnnealConfig.from_dict(data["anneal"])
        if "weights" in data:
            kwargs["weights"] = tuple(float(w) for w in data["weights"])
        for key in ("oracle_resolution", "reduction_k"):
            if key in data:
                kwargs[key] = int(data[key])
        if "tau" in data:
            kwargs["tau"] = float(data["tau"])
        config = cls(**kwargs)
        config.validate()
        config.nsga3.validate(2)
        config.anneal.validate()
        return config


def load_config(path: str | Path | None) -> SimulationConfig:
    if path is None:
        return SimulationConfig()
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError("config must be a JSON object")
    return SimulationConfig.from_dict(data)


def _problem(config: SimulationConfig) -> AdaptationProblem:
    problem = default_problem(config.pose)
    if problem.objective_ids != ("neck_angle", "arm_angle"):
        raise ConfigurationError("harness expects the neck/arm bi-objective problem")
    return problem


def analytic_extremes(problem: AdaptationProblem) -> tuple[Candidate, Candidate | None]:
    """Closed-form extreme placements on the reach sphere: the resting-arm
    pole (arm optimum) and, when the gaze ray pierces the sphere, the
    farthest on-ray point (neck optimum)."""
    pose = problem.pose
    arm = evaluate(
        problem, pose.shoulder_position + pose.arm_length * pose.arm_rest_direction
    )
    d = pose.head_position - pose.shoulder_position
    b = float(np.dot(d, pose.gaze_forward))
    c = float(np.dot(d, d)) - pose.arm_length**2
    disc = b * b - c
    neck = None
    if disc >= 0.0:
        t = -b + math.sqrt(disc)
        if t > 0:
            p = pose.head_position + t * pose.gaze_forward
            if problem.bounds.contains(p):
                neck = evaluate(problem, p)
    return arm, neck


def feasible_grid(
    problem: AdaptationProblem, resolution: int
) -> tuple[np.ndarray, np.ndarray]:
    """Feasible lattice points and their objective vectors."""
    positions = grid_positions(problem, resolution)
    objs, reach, pref = evaluate_batch(problem, positions)
    mask = (reach <= 0.0) & (pref <= 0.0)
    return positions[mask], objs[mask]


def scalarized_argmin(
    objs: np.ndarray,
    weights: np.ndarray,
    normalize: tuple[np.ndarray, np.ndarray] | None = None,
) -> int:
    """Index of the weighted-sum minimizer; cost ties break lexicographically
    on the raw objective vector so boundary weights still land on the front."""
    f = objs
    if normalize is not None:
        lo, span = normalize
        f = (objs - lo) / span
    cost = np.zeros(objs.shape[0])
    for m in range(objs.shape[1]):
        cost = cost + weights[m] * f[:, m]
    keys = tuple(objs[:, m] for m in range(objs.shape[1] - 1, -1, -1)) + (cost,)
    return int(np.lexsort(keys)[0])


def front_extreme(front: ParetoFront, objective_index: int) -> Candidate:
    """Front member minimizing one objective (tie: lexicographic vector)."""
    objs = front.objective_matrix
    col = objs[:, objective_index]
    minimal = np.flatnonzero(col == col.min())
    best = min(minimal, key=lambda i: tuple(objs[int(i)]))
    return front.members[int(best)]


def nearest_distance(front: ParetoFront, target: np.ndarray) -> float:
    """Euclidean objective-space distance from a front to a target vector."""
    diffs = front.objective_matrix - target
    return float(np.sqrt((diffs * diffs).sum(axis=1)).min())


@dataclass
class SimulationReport:
    oracle_front_file: str
    nsga3_front_file: str
    weighted_sum: dict
    igd: float
    collapse_check: bool
    extreme_coverage: dict
    oracle_front_size: int
    nsga3_front_size: int
    timings: dict

    def to_dict(self) -> dict:
        return {
            "files": {
                "oracle_front": self.oracle_front_file,
                "nsga3_front": self.nsga3_front_file,
                "weighted_sum": WEIGHTED_SUM_JSON,
            },
            "oracle_front_size": self.oracle_front_size,
            "nsga3_front_size": self.nsga3_front_size,
            "weighted_sum": self.weighted_sum,
            "igd": self.igd,
            "collapse_check": self.collapse_check,
            "collapse_tolerance": COLLAPSE_TOLERANCE,
            "extreme_coverage": self.extreme_coverage,
            "timings": self.timings,
        }


def run_simulation(config: SimulationConfig, out_dir: str | Path) -> SimulationReport:
    """Produce oracle CSV, evolutionary-front CSV, weighted-sum JSON, and a
    comparison report JSON under `out_dir`."""
    config.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    problem = _problem(config)
    weights = np.asarray(config.weights, dtype=np.float64)

    t0 = time.perf_counter()
    oracle = brute_force_front(problem, config.oracle_resolution)
    t_oracle = time.perf_counter() - t0

    t0 = time.perf_counter()
    approx = nsga3_run(problem, config.nsga3)
    t_nsga3 = time.perf_counter() - t0

    t0 = time.perf_counter()
    annealed = anneal_weighted_sum(problem, weights, config.anneal)
    t_anneal = time.perf_counter() - t0

    (out / ORACLE_CSV).write_text(oracle.to_csv())
    (out / NSGA3_CSV).write_text(approx.to_csv())

    arm_index = problem.objective_index("arm_angle")
    oracle_arm = front_extreme(oracle, arm_index)
    collapse = bool(
        np.all(np.abs(annealed.objectives - oracle_arm.objectives) <= COLLAPSE_TOLERANCE)
    )

    # Exact grid scalarizations: raw radians and oracle-range normalized,
    # both reported.
    _, grid_objs = feasible_grid(problem, config.oracle_resolution)
    ranges = oracle.objective_ranges
    lo, span = ranges[:, 0], ranges[:, 1] - ranges[:, 0]
    span = np.where(span == 0.0, 1.0, span)
    raw_idx = scalarized_argmin(grid_objs, weights)
    norm_idx = scalarized_argmin(grid_objs, weights, normalize=(lo, span))

    weighted_summary = {
        "weights": [float(w) for w in weights],
        "annealed": annealed.to_dict(),
        "annealed_cost": weighted_sum_cost(annealed.objectives, weights),
        "grid_argmin_raw_objectives": [float(v) for v in grid_objs[raw_idx]],
        "grid_argmin_normalized_objectives": [float(v) for v in grid_objs[norm_idx]],
        "oracle_arm_extreme_objectives": [float(v) for v in oracle_arm.objectives],
    }
    (out / WEIGHTED_SUM_JSON).write_text(
        json.dumps(weighted_summary, sort_keys=True, indent=2)
    )

    arm_target, neck_target = analytic_extremes(problem)
    coverage = {
        "arm_extreme_distance": nearest_distance(approx, arm_target.objectives),
        "arm_extreme_target": [float(v) for v in arm_target.objectives],
    }
    if neck_target is not None:
        coverage["neck_extreme_distance"] = nearest_distance(
            approx, neck_target.objectives
        )
        coverage["neck_extreme_target"] = [float(v) for v in neck_target.objectives]

    report = SimulationReport(
        oracle_front_file=ORACLE_CSV,
        nsga3_front_file=NSGA3_CSV,
        weighted_sum=weighted_summary,
        igd=igd(approx, oracle),
        collapse_check=collapse,
        extreme_coverage=coverage,
        oracle_front_size=len(oracle),
        nsga3_front_size=len(approx),
        timings={
            "oracle_s": t_oracle,
            "nsga3_s": t_nsga3,
            "anneal_s": t_anneal,
        },
    )
    (out / REPORT_JSON).write_text(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return report


@dataclass
class SweepResult:
    points: list[dict]
    distinct_objectives: list[list[float]]
    front_size: int
    all_on_front: bool

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "distinct_objectives": self.distinct_objectives,
            "distinct_count": len(self.distinct_objectives),
            "front_size": self.front_size,
            "all_on_front": self.all_on_front,
        }


def sweep_weights(config: SimulationConfig, steps: int) -> SweepResult:
    """Scalarized grid argmin for weights w in {i/(steps-1)} on
    oracle-range-normalized objectives: shows which front members a
    weighted sum can ever reach."""
    if steps < 3:
        raise ConfigurationError("steps must be >= 3", field="steps")
    config.validate()
    problem = _problem(config)
    oracle = brute_force_front(problem, config.oracle_resolution)
    positions, objs = feasible_grid(problem, config.oracle_resolution)
    ranges = oracle.objective_ranges
    lo, span = ranges[:, 0], ranges[:, 1] - ranges[:, 0]
    span = np.where(span == 0.0, 1.0, span)
    front_objs = oracle.objective_matrix

    points = []
    seen: list[np.ndarray] = []
    all_on_front = True
    for i in range(steps):
        w = i / (steps - 1)
        idx = scalarized_argmin(objs, np.array([w, 1.0 - w]), normalize=(lo, span))
        vec = objs[idx]
        on_front = bool(np.min(np.abs(front_objs - vec).max(axis=1)) <= 1e-9)
        all_on_front = all_on_front and on_front
        points.append(
            {
                "weight": w,
                "objectives": [float(v) for v in vec],
                "position": [float(v) for v in positions[idx]],
                "on_front": on_front,
            }
        )
        if not any(np.all(np.abs(vec - s) <= 1e-9) for s in seen):
            seen.append(vec)
    return SweepResult(
        points=points,
        distinct_objectives=[[float(v) for v in s] for s in seen],
        front_size=len(oracle),
        all_on_front=all_on_front,
    )
