"""Real-coded variation operators and reference-direction construction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .problem import Bounds

# Parents closer than this per coordinate are treated as identical: no
# spread is drawn, children copy the parents exactly.
SBX_COINCIDENT_EPS = 1e-14


@dataclass(frozen=True)
class ReferenceDirectionSet:
    """Unit-sum weight vectors on the M-simplex (Das-Dennis lattice)."""

    directions: np.ndarray  # (count, M)

    def __len__(self) -> int:
        return self.directions.shape[0]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def das_dennis(objective_count: int, divisions: int) -> ReferenceDirectionSet:
    """All vectors with components in {0, 1/p, ..., 1} summing to 1, in
    lexicographic order. Count is C(M + p - 1, p)."""
    if objective_count < 2:
        raise ValidationError("objective_count must be >= 2", field="objective_count")
    if divisions < 1:
        raise ValidationError("divisions must be >= 1", field="divisions")
    ticks = np.array(
        list(_compositions(divisions, objective_count)), dtype=np.float64
    )
    return ReferenceDirectionSet(directions=ticks / divisions)


def reference_point_count(objective_count: int, divisions: int) -> int:
    return math.comb(objective_count + divisions - 1, divisions)


def sbx_crossover(
    parent_a: np.ndarray,
    parent_b: np.ndarray,
    eta: float,
    bounds: Bounds,
    rng: np.random.Generator,
    probability: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover; children are clamped to the bounds.

    When the whole-pair probability draw fails the children are exact
    copies of the parents. Per coordinate, crossing happens with chance 0.5
    and preserves the parents' mean (before clamping).
    """
    a = np.asarray(parent_a, dtype=np.float64)
    b = np.asarray(parent_b, dtype=np.float64)
    c1, c2 = a.copy(), b.copy()
    if rng.random() >= probability:
        return c1, c2
    for k in range(a.shape[0]):
        if rng.random() > 0.5:
            continue
        if abs(a[k] - b[k]) < SBX_COINCIDENT_EPS:
            continue
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** (1.0 / (eta + 1.0))
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0))
        c1[k] = 0.5 * ((1.0 + beta) * a[k] + (1.0 - beta) * b[k])
        c2[k] = 0.5 * ((1.0 - beta) * a[k] + (1.0 + beta) * b[k])
    return bounds.clip(c1), bounds.clip(c2)


def polynomial_mutation(
    x: np.ndarray,
    eta: float,
    probability: float,
    bounds: Bounds,
    rng: np.random.Generator,
) -> np.ndarray:
    """Polynomial mutation, applied per coordinate with the given
    probability; the result stays within bounds."""
    y = np.asarray(x, dtype=np.float64).copy()
    for k in range(y.shape[0]):
        if rng.random() >= probability:
            continue
        lo = float(bounds.lower[k])
        hi = float(bounds.upper[k])
        span = hi - lo
        u = rng.random()
        if u < 0.5:
            d1 = (y[k] - lo) / span
            dq = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)) ** (
                1.0 / (eta + 1.0)
            ) - 1.0
        else:
            d2 = (hi - y[k]) / span
            dq = 1.0 - (
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
            ) ** (1.0 / (eta + 1.0))
        y[k] = min(max(y[k] + dq * span, lo), hi)
    return y
