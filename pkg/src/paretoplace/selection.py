"""Solution-set reduction and preference accumulation.

A front is reduced to a handful of qualitatively different candidates: the
per-objective extremes plus the highest trade-off members, scored by the
pairwise gain/loss ratio on range-normalized objectives. A user selection
converts into per-objective upper bounds that constrain later runs.
"""

from __future__ import annotations

import json
import math
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ergonomics import UserPose
from .errors import OrderingError, StaleSelectionError, ValidationError
from .nsga3 import Nsga3Config, ProgressCallback, nsga3_run
from .pareto import ParetoFront
from .problem import AdaptationProblem, Candidate, PreferenceConstraint, default_problem

# One main panel plus four alternates on screen at once.
DEFAULT_REDUCTION_K = 5
# Constraint slack as a fraction of the front's objective range.
DEFAULT_TAU = 0.2


@dataclass(frozen=True)
class TradeoffScore:
    candidate_index: int
    mu: float  # +inf only for a front of size 1


def _normalized_objectives(front: ParetoFront) -> np.ndarray:
    objs = front.objective_matrix
    lo = objs.min(axis=0)
    span = objs.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return (objs - lo) / span


def front_mu(front: ParetoFront) -> np.ndarray:
    """Trade-off score of every member: worst-case ratio of what the rest
    of the front gains over this member to what it loses, on
    range-normalized objectives. Pairs with zero loss are skipped."""
    n = len(front)
    if n == 0:
        raise ValidationError("front is empty")
    if n == 1:
        return np.array([math.inf])
    nrm = _normalized_objectives(front)
    diffs = nrm[None, :, :] - nrm[:, None, :]  # diffs[i, j] = f(j) - f(i)
    gains = np.clip(diffs, 0.0, None).sum(axis=2)
    losses = np.clip(-diffs, 0.0, None).sum(axis=2)
    out = np.empty(n)
    for i in range(n):
        valid = losses[i] > 0.0
        out[i] = (gains[i][valid] / losses[i][valid]).min() if valid.any() else math.inf
    return out


def tradeoff_mu(front: ParetoFront, i: int) -> TradeoffScore:
    """Trade-off score of member `i` of the front."""
    if not 0 <= i < len(front):
        raise ValidationError(f"index {i} out of range for front of size {len(front)}")
    return TradeoffScore(candidate_index=i, mu=float(front_mu(front)[i]))


@dataclass(frozen=True)
class PresentedCandidate:
    """A reduced-set entry: index into the owning front plus its scores."""

    candidate_index: int
    mu: float
    is_extreme: bool


def _lex_key(objs: np.ndarray, i: int) -> tuple:
    return tuple(float(v) for v in objs[i])


def present_candidates(front: ParetoFront, k: int = DEFAULT_REDUCTION_K) -> list[PresentedCandidate]:
    """Pick min(k, |front|) members: per-objective extremes first, then the
    rest in descending trade-off order; both blocks sort by descending mu
    with lexicographic objective-vector tie-breaks."""
    if k < 1:
        raise ValidationError("k must be a positive integer", field="k")
    n = len(front)
    if n == 0:
        raise ValidationError("front is empty")
    objs = front.objective_matrix
    mu = front_mu(front)

    extremes: set[int] = set()
    for m in range(objs.shape[1]):
        col = objs[:, m]
        minimal = np.flatnonzero(col == col.min())
        best = min((_lex_key(objs, int(i)), int(i)) for i in minimal)[1]
        extremes.add(best)

    def order_key(i: int) -> tuple:
        return (-mu[i], _lex_key(objs, i), i)

    ordered_extremes = sorted(extremes, key=order_key)
    others = sorted((i for i in range(n) if i not in extremes), key=order_key)
    chosen = (ordered_extremes + others)[: min(k, n)]
    return [
        PresentedCandidate(candidate_index=i, mu=float(mu[i]), is_extreme=i in extremes)
        for i in chosen
    ]


def reduce_front(front: ParetoFront, k: int = DEFAULT_REDUCTION_K) -> list[Candidate]:
    """The reduced candidate list itself (see present_candidates)."""
    return [front.members[p.candidate_index] for p in present_candidates(front, k)]


def auto_pick_index(presented: list[PresentedCandidate]) -> int:
    """Position in `presented` of the system's own suggestion: the highest
    trade-off candidate (extremes included)."""
    return min(
        range(len(presented)),
        key=lambda j: (-presented[j].mu, presented[j].candidate_index),
    )


@dataclass
class SessionRound:
    front: ParetoFront
    presented: list[PresentedCandidate]
    candidate_ids: list[str]
    selection: str | None = None

    def id_for(self, candidate_id: str) -> PresentedCandidate:
        return self.presented[self.candidate_ids.index(candidate_id)]


@dataclass
class Session:
    """One preference-elicitation loop: pose, evolving problem, rounds."""

    id: str
    pose: UserPose
    problem: AdaptationProblem
    nsga3: Nsga3Config = field(default_factory=Nsga3Config)
    reduction_k: int = DEFAULT_REDUCTION_K
    tau: float = DEFAULT_TAU
    rounds: list[SessionRound] = field(default_factory=list)

    @property
    def constraints(self) -> tuple[PreferenceConstraint, ...]:
        return self.problem.preference_constraints

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "pose": self.pose.to_dict(),
            "problem": self.problem.to_dict(),
            "nsga3": self.nsga3.to_dict(),
            "reduction_k": self.reduction_k,
            "tau": self.tau,
            "rounds": [
                {
                    "front": r.front.to_json(),
                    "presented": [
                        {
                            "candidate_index": p.candidate_index,
                            "mu": None if math.isinf(p.mu) else p.mu,
                            "is_extreme": p.is_extreme,
                        }
                        for p in r.presented
                    ],
                    "candidate_ids": r.candidate_ids,
                    "selection": r.selection,
                }
                for r in self.rounds
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Session":
        rounds = [
            SessionRound(
                front=ParetoFront.from_json(r["front"]),
                presented=[
                    PresentedCandidate(
                        candidate_index=p["candidate_index"],
                        mu=math.inf if p["mu"] is None else float(p["mu"]),
                        is_extreme=p["is_extreme"],
                    )
                    for p in r["presented"]
                ],
                candidate_ids=list(r["candidate_ids"]),
                selection=r["selection"],
            )
            for r in data["rounds"]
        ]
        return cls(
            id=data["id"],
            pose=UserPose.from_dict(data["pose"]),
            problem=AdaptationProblem.from_dict(data["problem"]),
            nsga3=Nsga3Config.from_dict(data["nsga3"]),
            reduction_k=int(data["reduction_k"]),
            tau=float(data["tau"]),
            rounds=rounds,
        )

    def save(self, directory: Path) -> Path:
        path = Path(directory) / f"{self.id}.json"
        path.write_text(json.dumps(self.to_dict(), sort_keys=True))
        return path

    @classmethod
    def load(cls, path: Path) -> "Session":
        return cls.from_dict(json.loads(Path(path).read_text()))


def new_session(
    pose: UserPose,
    nsga3: Nsga3Config | None = None,
    reduction_k: int = DEFAULT_REDUCTION_K,
    tau: float = DEFAULT_TAU,
) -> Session:
    if reduction_k < 1:
        raise ValidationError("reduction_k must be >= 1", field="reduction_k")
    if not tau > 0:
        raise ValidationError("tau must be > 0", field="tau")
    return Session(
        id=uuid.uuid4().hex,
        pose=pose,
        problem=default_problem(pose),
        nsga3=nsga3 or Nsga3Config(),
        reduction_k=reduction_k,
        tau=tau,
    )


def run_adaptation_round(
    session: Session,
    config: Nsga3Config | None = None,
    reduction_k: int | None = None,
    progress: ProgressCallback | None = None,
) -> SessionRound:
    """Run the optimizer under the session's accumulated constraints and
    store the reduced candidate set as a new round."""
    config = config or session.nsga3
    k = reduction_k if reduction_k is not None else session.reduction_k
    front = nsga3_run(session.problem, config, progress=progress)
    presented = present_candidates(front, k)
    round_index = len(session.rounds)
    ids = [f"r{round_index}c{j}" for j in range(len(presented))]
    rnd = SessionRound(front=front, presented=presented, candidate_ids=ids)
    session.rounds.append(rnd)
    return rnd


def apply_selection(session: Session, candidate_id: str) -> Session:
    """Record a selection and fold it into the problem as per-objective
    upper bounds: f_m(selected) + tau * latest front range of m, replacing
    any existing bound only if tighter."""
    if not session.rounds:
        raise OrderingError("no adaptation round has been run yet")
    rnd = session.rounds[-1]
    if candidate_id not in rnd.candidate_ids:
        raise StaleSelectionError(
            f"candidate '{candidate_id}' is not part of round {len(session.rounds) - 1}",
            current_round=len(session.rounds) - 1,
        )
    chosen = rnd.id_for(candidate_id)
    selected = rnd.front.members[chosen.candidate_index]
    ranges = rnd.front.objective_ranges
    spans = ranges[:, 1] - ranges[:, 0]

    bounds = {c.objective: c.upper_bound for c in session.problem.preference_constraints}
    for m, oid in enumerate(session.problem.objective_ids):
        new_bound = float(selected.objectives[m] + session.tau * spans[m])
        bounds[oid] = min(bounds.get(oid, math.inf), new_bound)
    constraints = tuple(
        PreferenceConstraint(objective=oid, upper_bound=bounds[oid])
        for oid in session.problem.objective_ids
        if oid in bounds
    )
    session.problem = session.problem.with_constraints(constraints)
    rnd.selection = candidate_id
    return session
