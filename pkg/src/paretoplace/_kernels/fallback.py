"""Pure-numpy kernels: non-dominated ranking and Pareto masking.

Drop-in twin of the compiled module in `_native.pyx`. Both operate on raw
objective matrices (minimization, strict Pareto dominance) and return the
same, mathematically unique answer — rank layers and the rank-0 mask do not
depend on tie-breaking, so the two implementations are interchangeable.
Feasibility layering is handled by the caller.
"""

import numpy as np

IMPLEMENTATION = "fallback"


def nd_ranks(objs: np.ndarray) -> np.ndarray:
    """Non-dominated sorting ranks (0 = non-dominated) of an (n, m) matrix.

    rank(j) is the peeling depth: 0 for points no one dominates, else
    1 + max rank among j's dominators.
    """
    objs = np.ascontiguousarray(objs, dtype=np.float64)
    n = objs.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.int64)
    le = np.all(objs[:, None, :] <= objs[None, :, :], axis=2)
    lt = np.any(objs[:, None, :] < objs[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    n_dominators = dom.sum(axis=0).astype(np.int64)
    ranks = np.empty(n, dtype=np.int64)
    remaining = n_dominators.copy()
    current = np.flatnonzero(remaining == 0)
    rank = 0
    while current.size:
        ranks[current] = rank
        remaining[current] = -1  # retired
        remaining -= dom[current].sum(axis=0)
        rank += 1
        current = np.flatnonzero(remaining == 0)
    return ranks


def pareto_mask(objs: np.ndarray) -> np.ndarray:
    """Boolean mask of the non-dominated (rank-0) rows of an (n, m) matrix."""
    objs = np.ascontiguousarray(objs, dtype=np.float64)
    n, m = objs.shape
    if n == 0:
        return np.empty(0, dtype=bool)
    if m == 2:
        return _pareto_mask_2d(objs)
    return _pareto_mask_prune(objs)


def _pareto_mask_2d(objs: np.ndarray) -> np.ndarray:
    # Skyline scan over lexicographically sorted unique rows: a row survives
    # iff its f1 strictly undercuts everything sorted before it. Duplicates
    # of a surviving row survive with it (identical vectors never dominate
    # each other).
    uniq, inverse = np.unique(objs, axis=0, return_inverse=True)
    f1 = uniq[:, 1]
    keep = np.empty(len(uniq), dtype=bool)
    keep[0] = True
    if len(uniq) > 1:
        keep[1:] = f1[1:] < np.minimum.accumulate(f1)[:-1]
    return keep[inverse.ravel()]


def _pareto_mask_prune(objs: np.ndarray) -> np.ndarray:
    # Visit points in ascending objective-sum order; a dominator always has
    # a strictly smaller sum, so every point still alive when visited is
    # non-dominated and its pass retires everything it dominates.
    n = objs.shape[0]
    order = np.argsort(objs.sum(axis=1), kind="stable")
    ranked = objs[order]
    alive = np.ones(n, dtype=bool)
    for i in range(n):
        if not alive[i]:
            continue
        p = ranked[i]
        dominated = np.all(ranked >= p, axis=1) & np.any(ranked > p, axis=1)
        alive &= ~dominated
    mask = np.empty(n, dtype=bool)
    mask[order] = alive
    return mask
