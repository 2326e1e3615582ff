"""Reference-direction evolutionary solver (NSGA-III style).

Each generation: SBX + polynomial-mutation variation, merge with parents,
constrained non-dominated sort, ideal/intercept normalization, association
of the straddling rank to reference directions, and niche-count truncation.
Runs are deterministic for a fixed seed; all randomness flows through one
per-run generator, including niching tie-breaks.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .operators import das_dennis, polynomial_mutation, reference_point_count, sbx_crossover
from .pareto import ParetoFront, pareto_filter, ranks_for_arrays
from .problem import AdaptationProblem, candidates_from_arrays, evaluate_batch

ProgressCallback = Callable[[int, int], None]  # (generation index, rank-0 size)

ASF_EPSILON = 1e-6


@dataclass(frozen=True)
class Nsga3Config:
    population_size: int = 100
    generations: int = 200
    # For two objectives population_size - 1 divisions puts one reference
    # direction per population slot.
    reference_divisions: int = 99
    sbx_eta: float = 30.0
    sbx_probability: float = 1.0
    mutation_eta: float = 20.0
    mutation_probability: float = 1.0 / 3.0
    seed: int = 42

    def validate(self, n_objectives: int) -> None:
        if self.population_size < 4:
            raise ConfigurationError("population_size must be >= 4", field="population_size")
        if self.generations < 1:
            raise ConfigurationError("generations must be >= 1", field="generations")
        if self.reference_divisions < 1:
            raise ConfigurationError(
                "reference_divisions must be >= 1", field="reference_divisions"
            )
        if not self.sbx_eta > 0:
            raise ConfigurationError("sbx_eta must be > 0", field="sbx_eta")
        if not 0.0 <= self.sbx_probability <= 1.0:
            raise ConfigurationError(
                "sbx_probability must be in [0, 1]", field="sbx_probability"
            )
        if not self.mutation_eta > 0:
            raise ConfigurationError("mutation_eta must be > 0", field="mutation_eta")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ConfigurationError(
                "mutation_probability must be in [0, 1]", field="mutation_probability"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer", field="seed")
        n_ref = reference_point_count(n_objectives, self.reference_divisions)
        needed = -(-n_ref // 4) * 4
        if self.population_size < needed:
            raise ConfigurationError(
                f"population_size {self.population_size} < {needed} "
                f"({n_ref} reference points rounded up to a multiple of 4)",
                field="population_size",
            )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Nsga3Config":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown nsga3 config keys: {sorted(unknown)}")
        return cls(**data)


def _normalize(
    objs: np.ndarray, feasible: np.ndarray, ideal: np.ndarray, rank0: np.ndarray
) -> np.ndarray:
    """Translate by the ideal point and scale by extreme-point intercepts;
    fall back to the rank-0 nadir when the hyperplane is degenerate."""
    m = objs.shape[1]
    pool = objs[feasible] if feasible.any() else objs
    translated = pool - ideal
    weights = np.full((m, m), ASF_EPSILON) + np.eye(m) * (1.0 - ASF_EPSILON)
    extreme_rows = np.empty((m, m))
    for k in range(m):
        asf = (translated / weights[k]).max(axis=1)
        extreme_rows[k] = translated[int(np.argmin(asf))]
    intercepts = None
    try:
        plane = np.linalg.solve(extreme_rows, np.ones(m))
        if np.all(np.isfinite(plane)) and np.all(plane > 1e-12):
            candidate = 1.0 / plane
            if np.all(candidate > 1e-12):
                intercepts = candidate
    except np.linalg.LinAlgError:
        intercepts = None
    if intercepts is None:
        nadir_pool = objs[rank0] - ideal
        intercepts = nadir_pool.max(axis=0)
        intercepts[intercepts <= 1e-12] = 1.0
    return (objs - ideal) / intercepts


def _associate(normalized: np.ndarray, directions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest reference direction (by perpendicular distance) per point.

    Elementwise reductions only (no BLAS) so results do not depend on
    thread configuration.
    """
    norms_sq = (directions * directions).sum(axis=1)
    proj = (normalized[:, None, :] * directions[None, :, :]).sum(axis=2) / norms_sq
    perp = normalized[:, None, :] - proj[:, :, None] * directions[None, :, :]
    dist = np.sqrt((perp * perp).sum(axis=2))
    return dist.argmin(axis=1), dist.min(axis=1)


def _niche_fill(
    need: int,
    pool: np.ndarray,
    assoc: np.ndarray,
    dists: np.ndarray,
    rho: np.ndarray,
    rng: np.random.Generator,
) -> list[int]:
    """Niche-count truncation: repeatedly serve the least-crowded direction."""
    chosen: list[int] = []
    active = np.ones(rho.shape[0], dtype=bool)
    available = np.ones(pool.shape[0], dtype=bool)
    while len(chosen) < need:
        active_ids = np.flatnonzero(active)
        rho_active = rho[active_ids]
        minimal = active_ids[rho_active == rho_active.min()]
        j = int(minimal[rng.integers(len(minimal))]) if len(minimal) > 1 else int(minimal[0])
        members = np.flatnonzero(available & (assoc == j))
        if members.size == 0:
            active[j] = False
            continue
        if rho[j] == 0:
            pick = int(members[np.argmin(dists[members])])
        else:
            pick = int(members[rng.integers(members.size)])
        chosen.append(int(pool[pick]))
        available[pick] = False
        rho[j] += 1
    return chosen


def nsga3_run(
    problem: AdaptationProblem,
    config: Nsga3Config | None = None,
    progress: ProgressCallback | None = None,
) -> ParetoFront:
    """Approximate the Pareto front of `problem`.

    Returns the deduplicated rank-0 set of the final population.
    """
    config = config or Nsga3Config()
    m = problem.n_objectives
    config.validate(m)
    rng = np.random.default_rng(config.seed)
    directions = das_dennis(m, config.reference_divisions).directions
    n = config.population_size

    pos = problem.bounds.sample(rng, n)
    objs, reach, pref = evaluate_batch(problem, pos)
    viol = np.clip(reach, 0.0, None) + np.clip(pref, 0.0, None)

    feasible = viol <= 0.0
    ideal = (objs[feasible] if feasible.any() else objs).min(axis=0)

    for gen in range(config.generations):
        child_pos = _make_offspring(pos, problem, config, rng)
        c_objs, c_reach, c_pref = evaluate_batch(problem, child_pos)
        c_viol = np.clip(c_reach, 0.0, None) + np.clip(c_pref, 0.0, None)

        all_pos = np.concatenate([pos, child_pos])
        all_objs = np.concatenate([objs, c_objs])
        all_reach = np.concatenate([reach, c_reach])
        all_pref = np.concatenate([pref, c_pref])
        all_viol = np.concatenate([viol, c_viol])

        feasible = all_viol <= 0.0
        if feasible.any():
            ideal = np.minimum(ideal, all_objs[feasible].min(axis=0))

        ranks = ranks_for_arrays(all_objs, all_viol)
        keep = _environmental_selection(
            n, all_objs, all_viol, ranks, feasible, ideal, directions, rng
        )
        pos, objs, reach, pref, viol = (
            all_pos[keep],
            all_objs[keep],
            all_reach[keep],
            all_pref[keep],
            all_viol[keep],
        )
        if progress is not None:
            progress(gen, int(np.count_nonzero(ranks[keep] == 0)))

    final = candidates_from_arrays(pos, objs, reach, pref)
    return pareto_filter(final)


def _make_offspring(
    pos: np.ndarray,
    problem: AdaptationProblem,
    config: Nsga3Config,
    rng: np.random.Generator,
) -> np.ndarray:
    n = pos.shape[0]
    perm = rng.permutation(n)
    children = np.empty_like(pos)
    for k in range(0, n - 1, 2):
        i, j = perm[k], perm[k + 1]
        c1, c2 = sbx_crossover(
            pos[i], pos[j], config.sbx_eta, problem.bounds, rng, config.sbx_probability
        )
        children[k] = polynomial_mutation(
            c1, config.mutation_eta, config.mutation_probability, problem.bounds, rng
        )
        children[k + 1] = polynomial_mutation(
            c2, config.mutation_eta, config.mutation_probability, problem.bounds, rng
        )
    if n % 2:
        children[n - 1] = polynomial_mutation(
            pos[perm[n - 1]].copy(),
            config.mutation_eta,
            config.mutation_probability,
            problem.bounds,
            rng,
        )
    return children


def _environmental_selection(
    n: int,
    all_objs: np.ndarray,
    all_viol: np.ndarray,
    ranks: np.ndarray,
    feasible: np.ndarray,
    ideal: np.ndarray,
    directions: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    order_ranks = np.arange(int(ranks.max()) + 1)
    keep: list[np.ndarray] = []
    count = 0
    split_rank = -1
    for r in order_ranks:
        front = np.flatnonzero(ranks == r)
        if count + front.size <= n:
            keep.append(front)
            count += front.size
            if count == n:
                break
        else:
            split_rank = r
            break
    if split_rank < 0:
        return np.concatenate(keep)

    last = np.flatnonzero(ranks == split_rank)
    considered = np.concatenate(keep + [last]) if keep else last
    rank0 = np.flatnonzero(ranks == 0)
    normalized = _normalize(all_objs, feasible, ideal, rank0)
    assoc, dists = _associate(normalized[considered], directions)

    n_chosen = count
    chosen_assoc = assoc[:n_chosen]
    rho = np.bincount(chosen_assoc, minlength=directions.shape[0]).astype(np.int64)
    picked = _niche_fill(
        n - n_chosen,
        last,
        assoc[n_chosen:],
        dists[n_chosen:],
        rho,
        rng,
    )
    return np.concatenate(keep + [np.array(picked, dtype=np.int64)]) if keep else np.array(
        picked, dtype=np.int64
    )
