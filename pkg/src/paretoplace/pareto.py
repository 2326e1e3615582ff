"""Dominance relations, non-dominated sorting, Pareto fronts, and quality
indicators, plus the exhaustive grid oracle used to validate optimizers.

Dominance is constrained and feasibility-first: any feasible candidate
dominates any infeasible one; among infeasible candidates less total
violation wins; among feasible candidates ordinary strict Pareto dominance
on the objective vectors (minimization) applies.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptyInputError, IncompatibleCandidatesError, ValidationError
from .problem import AdaptationProblem, Candidate, candidates_from_arrays, evaluate_batch

OBJECTIVE_DEDUP_TOLERANCE = 1e-9

# Grid fine enough to resolve the default front to ~0.01 rad while staying
# in the seconds range (resolution**3 evaluations).
DEFAULT_ORACLE_RESOLUTION = 96


def dominates(a: Candidate, b: Candidate) -> bool:
    """Constrained Pareto dominance (minimization)."""
    if a.objectives.shape != b.objectives.shape:
        raise IncompatibleCandidatesError(
            f"objective dimensions differ: {a.objectives.shape[0]} vs {b.objectives.shape[0]}"
        )
    a_feasible, b_feasible = a.is_feasible, b.is_feasible
    if a_feasible and not b_feasible:
        return True
    if not a_feasible and b_feasible:
        return False
    if not a_feasible and not b_feasible:
        return a.total_violation < b.total_violation
    return bool(
        np.all(a.objectives <= b.objectives) and np.any(a.objectives < b.objectives)
    )


@dataclass
class RankedPopulation:
    """Partition of population indices into dominance ranks (0 = best)."""

    fronts: list[np.ndarray]

    @property
    def ranks(self) -> np.ndarray:
        n = sum(len(f) for f in self.fronts)
        out = np.empty(n, dtype=np.int64)
        for r, front in enumerate(self.fronts):
            out[front] = r
        return out


def _stack_arrays(population: list[Candidate]) -> tuple[np.ndarray, np.ndarray]:
    m = population[0].objectives.shape[0]
    for c in population:
        if c.objectives.shape[0] != m:
            raise IncompatibleCandidatesError("population mixes objective dimensions")
    objs = np.stack([c.objectives for c in population])
    viol = np.array([c.total_violation for c in population])
    return objs, viol


def ranks_for_arrays(objs: np.ndarray, total_violation: np.ndarray) -> np.ndarray:
    """Constrained non-dominated sorting ranks from raw arrays.

    Feasible rows are ranked by objective dominance; infeasible rows follow
    in groups of equal total violation, ascending.
    """
    n = objs.shape[0]
    ranks = np.empty(n, dtype=np.int64)
    feasible = total_violation <= 0.0
    feas_idx = np.flatnonzero(feasible)
    infeas_idx = np.flatnonzero(~feasible)
    next_rank = 0
    if feas_idx.size:
        feas_ranks = _kernels.nd_ranks(objs[feas_idx])
        ranks[feas_idx] = feas_ranks
        next_rank = int(feas_ranks.max()) + 1
    if infeas_idx.size:
        levels, inverse = np.unique(total_violation[infeas_idx], return_inverse=True)
        ranks[infeas_idx] = next_rank + inverse
    return ranks


def non_dominated_sort(population: list[Candidate]) -> RankedPopulation:
    """Partition a population into dominance ranks.

    Deterministic: each front lists indices in ascending input order.
    """
    if not population:
        raise EmptyInputError("cannot sort an empty population")
    objs, viol = _stack_arrays(population)
    ranks = ranks_for_arrays(objs, viol)
    fronts = [np.flatnonzero(ranks == r) for r in range(int(ranks.max()) + 1)]
    return RankedPopulation(fronts=fronts)


def rank0_mask_arrays(objs: np.ndarray, total_violation: np.ndarray) -> np.ndarray:
    """Mask of rank-0 rows under constrained dominance."""
    feasible = total_violation <= 0.0
    mask = np.zeros(objs.shape[0], dtype=bool)
    if feasible.any():
        feas_idx = np.flatnonzero(feasible)
        mask[feas_idx] = _kernels.pareto_mask(objs[feas_idx])
    else:
        mask[total_violation == total_violation.min()] = True
    return mask


def _dedup_selection(objs: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Collapse objective vectors equal within tolerance, keeping for each
    cluster the earliest input index; result is in ascending input order."""
    if indices.size <= 1:
        return indices
    sub = objs[indices]
    order = np.lexsort(sub.T[::-1])
    kept: list[int] = []
    rep = None
    best = None
    for oi in order:
        row = sub[oi]
        if rep is None or np.any(np.abs(row - rep) > OBJECTIVE_DEDUP_TOLERANCE):
            if best is not None:
                kept.append(best)
            rep = row
            best = int(indices[oi])
        else:
            best = min(best, int(indices[oi]))
    kept.append(best)
    return np.array(sorted(kept), dtype=np.int64)


@dataclass
class ParetoFront:
    """A set of mutually non-dominated candidates."""

    members: list[Candidate]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def objective_matrix(self) -> np.ndarray:
        return np.stack([c.objectives for c in self.members])

    @property
    def objective_ranges(self) -> np.ndarray:
        """Per-objective (min, max) over members, shape (M, 2)."""
        objs = self.objective_matrix
        return np.stack([objs.min(axis=0), objs.max(axis=0)], axis=1)

    def to_json(self) -> list[dict]:
        return [c.to_dict() for c in self.members]

    @classmethod
    def from_json(cls, data: list[dict]) -> "ParetoFront":
        return cls(members=[Candidate.from_dict(d) for d in data])

    def to_csv(self) -> str:
        m = self.members[0].objectives.shape[0] if self.members else 0
        header = ["x", "y", "z"] + [f"objective_{i}" for i in range(m)]
        header += ["reach_violation", "preference_violation"]
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for c in self.members:
            row = [repr(float(v)) for v in c.position]
            row += [repr(float(v)) for v in c.objectives]
            row += [repr(float(c.reach_violation)), repr(float(c.preference_violation))]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ParetoFront":
        lines = [ln for ln in text.strip().splitlines() if ln]
        header = lines[0].split(",")
        m = sum(1 for h in header if h.startswith("objective_"))
        members = []
        for ln in lines[1:]:
            vals = [float(v) for v in ln.split(",")]
            members.append(
                Candidate(
                    position=np.array(vals[:3]),
                    objectives=np.array(vals[3 : 3 + m]),
                    reach_violation=vals[3 + m],
                    preference_violation=vals[4 + m],
                )
            )
        return cls(members=members)


def pareto_filter(population: list[Candidate]) -> ParetoFront:
    """Rank-0 members under constrained dominance, deduplicated by objective
    vector within tolerance; member order follows input order."""
    if not population:
        raise EmptyInputError("cannot filter an empty population")
    objs, viol = _stack_arrays(population)
    mask = rank0_mask_arrays(objs, viol)
    kept = _dedup_selection(objs, np.flatnonzero(mask))
    return ParetoFront(members=[population[i] for i in kept])


def grid_positions(problem: AdaptationProblem, resolution: int) -> np.ndarray:
    """The (resolution**3, 3) lattice over the decision box, C-order."""
    axes = [
        np.linspace(problem.bounds.lower[k], problem.bounds.upper[k], resolution)
        for k in range(3)
    ]
    gx, gy, gz = np.meshgrid(*axes, indexing="ij")
    return np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)


def brute_force_front(
    problem: AdaptationProblem, resolution: int = DEFAULT_ORACLE_RESOLUTION
) -> ParetoFront:
    """Exhaustive validation oracle: evaluate the full grid, discard
    infeasible points, Pareto-filter the rest.

    Deterministic regardless of evaluation order or kernel implementation.
    """
    if resolution < 2:
        raise ValidationError("resolution must be >= 2", field="resolution")
    positions = grid_positions(problem, resolution)
    objs, reach, pref = evaluate_batch(problem, positions)
    feasible = (reach <= 0.0) & (pref <= 0.0)
    feas_idx = np.flatnonzero(feasible)
    if feas_idx.size == 0:
        return ParetoFront(members=[])
    fobjs = objs[feas_idx]
    mask = _kernels.pareto_mask(fobjs)
    kept_local = _dedup_selection(fobjs, np.flatnonzero(mask))
    kept = feas_idx[kept_local]
    members = candidates_from_arrays(
        positions[kept], objs[kept], reach[kept], pref[kept]
    )
    return ParetoFront(members=members)


def igd(approximation: ParetoFront, reference: ParetoFront) -> float:
    """Inverted generational distance, normalized by the reference front's
    per-objective ranges (constant objectives get range 1). Zero iff every
    reference objective vector occurs in the approximation."""
    if not approximation.members or not reference.members:
        raise EmptyInputError("igd requires non-empty fronts")
    ref = reference.objective_matrix
    app = approximation.objective_matrix
    if ref.shape[1] != app.shape[1]:
        raise IncompatibleCandidatesError(
            f"objective dimensions differ: {app.shape[1]} vs {ref.shape[1]}"
        )
    lo = ref.min(axis=0)
    span = ref.max(axis=0) - lo
    span[span == 0.0] = 1.0
    ref_n = (ref - lo) / span
    app_n = (app - lo) / span
    diff = ref_n[:, None, :] - app_n[None, :, :]
    dists = np.sqrt((diff * diff).sum(axis=2))
    return float(dists.min(axis=1).mean())
