"""Characteristic functions of cells, rows and the Gaussian limit.

Sign convention, used everywhere in this package: the Fourier transform
of a random vector H is

    phi_H(t) = E[exp(-i <t, H>)],

i.e. the test function is e_t(x) = exp(-i <t, x>).  For a finitely
supported cell the transform is an exact finite sum; for a row of
independent cells the row-sum transform is the product of the cell
transforms.  The standard normal vector has phi(t) = exp(-|t|^2 / 2).

``charfn_gap`` is the pointwise distance |phi_Gauss(t) - phi_row(t)|,
the quantity whose sup/limsup behaviour the rest of the package bounds
and estimates.  Monte Carlo counterparts (``empirical_charfn``,
``kolmogorov_mc``) provide independent cross-checks of the exact paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UnsupportedDimensionError
from .normal_cdf import normal_cdf
from .rng import RngSeed
from .rows import ArrayRow, DiscreteCell, _require_validated
from .util import as_vector

__all__ = [
    "CharfnValue",
    "cell_charfn",
    "row_cell_charfns",
    "row_sum_charfn",
    "gaussian_charfn",
    "charfn_gap",
    "empirical_charfn",
    "sample_row_sums",
    "kolmogorov_mc",
]


@dataclass(frozen=True)
class CharfnValue:
    """A transform value with a Monte Carlo standard error (0 if exact)."""

    value: complex
    stderr: float


def cell_charfn(cell: DiscreteCell, t) -> complex:
    """Exact transform of one cell: sum_atoms p * exp(-i <t, x>)."""
    t = as_vector(t, cell.dimension)
    return complex(np.sum(cell.probs * np.exp(-1j * (cell.points @ t))))


def row_cell_charfns(row: ArrayRow, t) -> np.ndarray:
    """Transforms of every cell of a row at once (vectorised)."""
    t = as_vector(t, row.dimension)
    values = row.probs * np.exp(-1j * (row.points @ t))
    return np.add.reduceat(values, row.starts)


def row_sum_charfn(row: ArrayRow, t) -> complex:
    """Exact transform of the row sum: the product of cell transforms."""
    _require_validated(row, "row_sum_charfn")
    return complex(np.prod(row_cell_charfns(row, t)))


def gaussian_charfn(t) -> float:
    """Transform of the standard normal vector: exp(-|t|^2 / 2)."""
    t = as_vector(t)
    return float(np.exp(-0.5 * float(t @ t)))


def charfn_gap(row: ArrayRow, t) -> float:
    """|phi_Gauss(t) - phi_row(t)|, always in [0, 2]."""
    _require_validated(row, "charfn_gap")
    t = as_vector(t, row.dimension)
    return abs(gaussian_charfn(t) - row_sum_charfn(row, t))


def sample_row_sums(row: ArrayRow, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Draw i.i.d. realisations of the row sum; shape (samples, N).

    Each cell is sampled independently by inverse transform on its atom
    probabilities, so the draw sequence is fully determined by the
    generator state.
    """
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    total = np.zeros((samples, row.dimension))
    for k in range(row.n):
        lo, hi = row.offsets[k], row.offsets[k + 1]
        cum = np.cumsum(row.probs[lo:hi])
        u = rng.random(samples)
        idx = np.minimum(np.searchsorted(cum, u, side="right"), hi - lo - 1)
        total += row.points[lo + idx]
    return total


def empirical_charfn(row: ArrayRow, t, samples: int, seed: RngSeed) -> CharfnValue:
    """Monte Carlo transform of the row sum, with standard error.

    The result is deterministic given (seed, stream).  stderr combines
    the real and imaginary sample standard deviations in quadrature; a
    healthy run has |exact - value| below a few stderr.
    """
    _require_validated(row, "empirical_charfn")
    t = as_vector(t, row.dimension)
    sums = sample_row_sums(row, samples, seed.generator())
    z = np.exp(-1j * (sums @ t))
    value = complex(np.mean(z))
    if samples > 1:
        var = np.var(z.real, ddof=1) + np.var(z.imag, ddof=1)
        stderr = float(np.sqrt(var / samples))
    else:
        stderr = 0.0
    return CharfnValue(value=value, stderr=stderr)


def kolmogorov_mc(row: ArrayRow, samples: int, seed: RngSeed) -> float:
    """Monte Carlo Kolmogorov distance between the row sum and N(0, 1).

    One-dimensional rows only.  The empirical CDF is compared with Phi
    at both sides of every jump, which is where the supremum of
    |F_empirical - Phi| lives for discrete laws.  Diagnostic only: the
    package's quantitative statements are about transform gaps, not CDF
    distance.
    """
    _require_validated(row, "kolmogorov_mc")
    if row.dimension != 1:
        raise UnsupportedDimensionError("kolmogorov_mc supports one-dimensional rows only")
    draws = np.sort(sample_row_sums(row, samples, seed.generator())[:, 0])
    m = draws.size
    phi = normal_cdf(draws)
    upper = np.max(np.arange(1, m + 1) / m - phi)
    lower = np.max(phi - np.arange(0, m) / m)
    return float(max(upper, lower))
