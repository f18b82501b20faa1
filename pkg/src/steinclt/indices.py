"""Truncated second-moment sums and their asymptotic indices.

For a row (X_1, ..., X_n) the *Lindeberg sum* at level eps is the exact
finite quantity

    sum_k E[|X_k|^2 ; |X_k| > eps]        (strict inequality),

and the *Lindeberg index* of a family is sup over eps of the limsup over
n of that sum: zero exactly when the classical CLT condition holds, and
up to N in general.  The *directional* variant replaces the event by
|<H_k, t>| > threshold where H is either the same cell (``copy="same"``)
or an independent copy with the same law (``copy="independent"``, where
independence factorises the expectation exactly).

Estimators here are honest finite truncations: a limsup is reported as
the max over a trailing window of the n-grid, together with flags when
the sums are still moving (so the caller can see that the asymptotic
value may be under-resolved).  No convergence claim is made.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .rows import ArrayRow, _require_validated
from .util import as_vector

__all__ = [
    "DEFAULT_EPS_GRID",
    "IndexEstimate",
    "lindeberg_sum",
    "lindeberg_index_estimate",
    "l_sum",
    "infinitesimality_profile",
    "cauchy_schwarz_domination",
]

# sup over eps is approached from small eps, hence a log grid down to 1e-3
DEFAULT_EPS_GRID = tuple(float(e) for e in np.geomspace(1.0, 1e-3, 13))
DEFAULT_TAIL_WINDOW = 3


def lindeberg_sum(row: ArrayRow, eps: float) -> float:
    """Exact sum_k E[|X_k|^2 ; |X_k| > eps] over the row's atoms."""
    _require_validated(row, "lindeberg_sum")
    if not eps > 0.0:
        raise ParameterError(f"eps must be positive, got {eps}")
    norm2 = row.squared_norms()
    mask = norm2 > eps * eps
    return float(np.sum(row.probs[mask] * norm2[mask]))


@dataclass
class IndexEstimate:
    """Finite-grid estimate of a sup-limsup index.

    ``per_point[i, j]`` holds the sum at (eps_grid[i], n_grid[j]);
    ``value`` is the max over eps of the max over the last
    ``tail_window`` entries of the n-grid.  ``tail_increasing`` marks
    eps values whose sums are still strictly climbing at the end of the
    grid (the limsup may be under-estimated); ``non_monotone`` marks eps
    values whose sums oscillate in n.
    """

    value: float
    eps_grid: tuple[float, ...]
    n_grid: tuple[int, ...]
    per_point: np.ndarray
    tail_window: int
    tail_increasing: tuple[float, ...]
    non_monotone: tuple[float, ...]


def lindeberg_index_estimate(
    family,
    eps_grid=DEFAULT_EPS_GRID,
    n_grid=(10, 100, 1000, 10_000),
    tail_window: int = DEFAULT_TAIL_WINDOW,
) -> IndexEstimate:
    """Estimate the Lindeberg index of a family on finite grids."""
    eps_grid = tuple(float(e) for e in eps_grid)
    n_grid = tuple(int(n) for n in n_grid)
    if not eps_grid or not n_grid:
        raise ParameterError("eps and n grids must be non-empty")
    if any(e <= 0 for e in eps_grid):
        raise ParameterError("eps grid entries must be positive")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ParameterError("n grid must be strictly increasing")
    if tail_window < 1:
        raise ParameterError("tail_window must be >= 1")

    per_point = np.empty((len(eps_grid), len(n_grid)))
    for j, n in enumerate(n_grid):
        row = family.row(n)
        for i, eps in enumerate(eps_grid):
            per_point[i, j] = lindeberg_sum(row, eps)

    window = min(tail_window, len(n_grid))
    tail = per_point[:, -window:]
    value = float(np.max(np.max(tail, axis=1)))
    increasing = []
    wandering = []
    for i, eps in enumerate(eps_grid):
        seq = per_point[i]
        diffs = np.diff(seq)
        if window > 1 and np.all(np.diff(tail[i]) > 0):
            increasing.append(eps)
        if np.any(diffs > 1e-15) and np.any(diffs < -1e-15):
            wandering.append(eps)
    return IndexEstimate(
        value=value,
        eps_grid=eps_grid,
        n_grid=n_grid,
        per_point=per_point,
        tail_window=tail_window,
        tail_increasing=tuple(increasing),
        non_monotone=tuple(wandering),
    )


def l_sum(row: ArrayRow, copy: str, t, threshold: float = 1.0) -> float:
    """Directional truncated second-moment sum.

    copy="same":        sum_k E[|X_k|^2 ; |<X_k, t>| > threshold]
    copy="independent": sum_k E[|X_k|^2] * P[|<X0_k, t>| > threshold]
                        with X0_k an independent copy of X_k, so the
                        expectation factorises exactly.
    """
    _require_validated(row, "l_sum")
    t = as_vector(t, row.dimension)
    proj = np.abs(row.points @ t)
    norm2 = row.squared_norms()
    mask = proj > threshold
    if copy == "same":
        return float(np.sum(row.probs[mask] * norm2[mask]))
    if copy == "independent":
        second = row.per_cell_sum(row.probs * norm2)
        exceed = row.per_cell_sum(row.probs * mask)
        return float(second @ exceed)
    raise ParameterError(f"copy must be 'same' or 'independent', got {copy!r}")


def infinitesimality_profile(row: ArrayRow, eps: float) -> tuple[float, float]:
    """(max_k P[|X_k| > eps], Chebyshev-style bound dominating it).

    The bound is eps^-2 * lindeberg_sum(row, eps^2) + eps^2, which
    controls the max cell tail probability for every row; a family is
    infinitesimal when the first component vanishes as n grows, for
    every eps.
    """
    _require_validated(row, "infinitesimality_profile")
    if not eps > 0.0:
        raise ParameterError(f"eps must be positive, got {eps}")
    norm2 = row.squared_norms()
    tail_mass = row.per_cell_sum(row.probs * (norm2 > eps * eps))
    max_prob = float(np.max(tail_mass))
    bound = lindeberg_sum(row, eps * eps) / (eps * eps) + eps * eps
    return max_prob, float(bound)


def cauchy_schwarz_domination(row: ArrayRow, t) -> tuple[float, float]:
    """(directional sum at threshold 1, Lindeberg sum at 1/|t|).

    |<x, t>| > 1 forces |x| > 1/|t|, so the first component never
    exceeds the second; they agree exactly in dimension one.
    """
    t = as_vector(t, row.dimension)
    norm = float(np.linalg.norm(t))
    if norm == 0.0:
        raise ParameterError("t must be nonzero")
    lhs = l_sum(row, "same", t, 1.0)
    rhs = lindeberg_sum(row, 1.0 / norm)
    return lhs, rhs
