import numpy as np
import pytest

from paretoplace import brute_force_front, default_problem
from paretoplace.pareto import ParetoFront
from paretoplace.problem import Candidate


@pytest.fixture(scope="session")
def problem():
    return default_problem()


@pytest.fixture(scope="session")
def oracle96(problem):
    return brute_force_front(problem, 96)


def make_candidate(objectives, reach=0.0, pref=0.0, position=None) -> Candidate:
    return Candidate(
        position=np.zeros(3) if position is None else np.asarray(position, dtype=float),
        objectives=np.asarray(objectives, dtype=float),
        reach_violation=float(reach),
        preference_violation=float(pref),
    )


def make_front(*objective_vectors) -> ParetoFront:
    return ParetoFront(members=[make_candidate(v) for v in objective_vectors])


def oracle_pairwise_ranks(objs: np.ndarray, violations: np.ndarray | None = None) -> np.ndarray:
    """Independent O(n^2 M) sorting oracle: full pairwise dominance matrix
    plus Kahn-style peeling. Kept free of any library sorting code."""
    n = objs.shape[0]
    if violations is None:
        violations = np.zeros(n)
    feas = violations <= 0.0
    le = np.all(objs[:, None, :] <= objs[None, :, :], axis=2)
    lt = np.any(objs[:, None, :] < objs[None, :, :], axis=2)
    obj_dom = le & lt
    fi, fj = feas[:, None], feas[None, :]
    less_violation = violations[:, None] < violations[None, :]
    dom = (fi & ~fj) | (~fi & ~fj & less_violation) | (fi & fj & obj_dom)
    np.fill_diagonal(dom, False)
    ranks = np.full(n, -1, dtype=np.int64)
    remaining = dom.sum(axis=0).astype(np.int64)
    rank = 0
    while np.any(ranks < 0):
        current = np.flatnonzero((ranks < 0) & (remaining == 0))
        ranks[current] = rank
        remaining -= dom[current].sum(axis=0)
        remaining[current] = -1
        rank += 1
    return ranks
