import numpy as np
import pytest

from steinclt import (
    DiscreteCell,
    RngSeed,
    UnsupportedDimensionError,
    build_eta_row,
    build_product_row,
    build_rademacher_row,
    cell_charfn,
    charfn_gap,
    empirical_charfn,
    gauss_hermite_expect,
    gaussian_charfn,
    kolmogorov_mc,
    row_sum_charfn,
)

# frozen: cos(0.2)**25 and exp(-1/2) - cos(0.2)**25, mpmath 40 digits
COS25 = 0.6044904989166917
GAP25 = 0.0020401607959417024
PHI1_MINUS_HALF = 0.3413447460685429  # Phi(1) - 1/2, the coin's exact sup


def coin_cell():
    return DiscreteCell(np.array([[-1.0], [1.0]]), np.array([0.5, 0.5]))


def test_cell_charfn_examples():
    assert cell_charfn(coin_cell(), 1.0) == pytest.approx(np.cos(1.0), abs=1e-15)
    assert cell_charfn(coin_cell(), 0.0) == 1.0
    half = DiscreteCell(np.array([[-0.5], [0.5]]), np.array([0.5, 0.5]))
    assert cell_charfn(half, np.pi) == pytest.approx(0.0, abs=1e-15)


def test_row_sum_charfn_is_product():
    row = build_rademacher_row(25)
    assert row_sum_charfn(row, 1.0) == pytest.approx(COS25, abs=1e-14)
    assert row_sum_charfn(row, 0.0) == 1.0
    # n = 1 two-scale row collapses to the coin
    assert row_sum_charfn(build_eta_row(0.5, 1), 2.0) == pytest.approx(
        np.cos(2.0), abs=1e-15
    )


def test_gaussian_charfn():
    assert gaussian_charfn(0.0) == 1.0
    assert gaussian_charfn([1.0, 1.0]) == pytest.approx(np.exp(-1.0), abs=1e-15)
    quad = gauss_hermite_expect(lambda p: np.exp(-1j * p[:, 0]), 40)
    assert gaussian_charfn(1.0) == pytest.approx(quad.real, abs=1e-12)


def test_charfn_gap_examples():
    row = build_rademacher_row(25)
    assert charfn_gap(row, 0.0) == 0.0
    assert charfn_gap(row, 1.0) == pytest.approx(GAP25, abs=1e-12)
    # at t = pi sqrt(n) the row transform sits at cos(pi)^n = +-1 while
    # the Gaussian transform is essentially 0
    row10 = build_rademacher_row(10)
    assert charfn_gap(row10, np.pi * np.sqrt(10)) == pytest.approx(1.0, abs=1e-9)


def test_row_transform_bounded_and_conjugate_symmetric():
    rng = np.random.default_rng(11)
    rows = [build_rademacher_row(7), build_eta_row(0.4, 6),
            build_product_row([build_rademacher_row(5), build_rademacher_row(5)])]
    for row in rows:
        for _ in range(30):
            t = rng.uniform(-8, 8, row.dimension)
            value = row_sum_charfn(row, t)
            assert abs(value) <= 1.0 + 1e-12
            assert row_sum_charfn(row, -t) == pytest.approx(np.conj(value), abs=1e-14)
            assert 0.0 <= charfn_gap(row, t) <= 2.0


def test_empirical_charfn_matches_exact():
    row = build_rademacher_row(25)
    result = empirical_charfn(row, 1.0, 100_000, RngSeed(2024))
    assert result.stderr > 0
    assert abs(result.value - COS25) < 4 * result.stderr
    assert abs(result.value) <= 1.0 + 3 * result.stderr


def test_empirical_charfn_exact_at_zero():
    result = empirical_charfn(build_rademacher_row(5), 0.0, 1000, RngSeed(1))
    assert result.value == 1.0 + 0.0j
    assert result.stderr == 0.0


def test_empirical_charfn_deterministic():
    row = build_eta_row(0.5, 8)
    a = empirical_charfn(row, 1.3, 5000, RngSeed(99, 3))
    b = empirical_charfn(row, 1.3, 5000, RngSeed(99, 3))
    assert a == b
    c = empirical_charfn(row, 1.3, 5000, RngSeed(99, 4))
    assert a.value != c.value


def test_empirical_charfn_coverage():
    # error below 5 stderr in at least 99 of 100 independent streams
    row = build_rademacher_row(25)
    hits = 0
    for stream in range(100):
        result = empirical_charfn(row, 1.0, 2000, RngSeed(7, stream))
        if abs(result.value - COS25) < 5 * result.stderr:
            hits += 1
    assert hits >= 99


def test_kolmogorov_distance_of_coin():
    # the +-1 coin's exact Kolmogorov distance to N(0,1) is Phi(1) - 1/2,
    # attained one-sidedly at the jump points
    distance = kolmogorov_mc(build_rademacher_row(1), 100_000, RngSeed(5))
    assert distance == pytest.approx(PHI1_MINUS_HALF, abs=0.008)


def test_kolmogorov_large_row_is_small():
    distance = kolmogorov_mc(build_rademacher_row(10_000), 100_000, RngSeed(12))
    assert distance < 0.02


def test_kolmogorov_rejects_multivariate():
    row = build_product_row([build_rademacher_row(2), build_rademacher_row(2)])
    with pytest.raises(UnsupportedDimensionError):
        kolmogorov_mc(row, 100, RngSeed(0))
