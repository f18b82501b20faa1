import json
from pathlib import Path

import numpy as np
import pytest

from steinclt.normal_cdf import erf, erfc, normal_cdf

REFERENCE = Path(__file__).parent / "data" / "normal_cdf_reference.json"


def test_against_reference_table():
    rows = json.loads(REFERENCE.read_text())["rows"]
    xs = np.array([row[0] for row in rows])
    expected = np.array([row[1] for row in rows])
    got = normal_cdf(xs)
    assert np.max(np.abs(got - expected)) < 1e-12


def test_scalar_and_symmetry():
    assert normal_cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    for x in (0.3, 1.0, 2.7, 5.0):
        assert normal_cdf(-x) == pytest.approx(1.0 - normal_cdf(x), abs=1e-14)
        assert erf(-x) == pytest.approx(-erf(x), abs=1e-15)
        assert erfc(-x) == pytest.approx(2.0 - erfc(x), abs=1e-14)


def test_erf_erfc_complement():
    xs = np.linspace(-6, 6, 121)
    assert np.max(np.abs(erf(xs) + erfc(xs) - 1.0)) < 1e-14


def test_far_tails():
    assert normal_cdf(-40.0) == 0.0
    assert normal_cdf(40.0) == 1.0
    assert 0.0 < normal_cdf(-8.0) < 1e-14
