import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seshadri.bounds import (
    bounds_report,
    bs1_lower,
    bs2_jacobian_upper,
    corollary_lower,
    ekl_upper,
    gonality_period_upper,
    gonality_seshadri_upper,
    jacobian_seshadri_upper,
    seshadri_lower_from_period,
)
from seshadri.core import period_matrix_from_complex
from seshadri.errors import BadGonality, GenusMismatch, GenusTooSmall
from seshadri.experiments import random_siegel

mpmath.mp.dps = 40


def mp_fact_root(g, extra=1):
    return float((extra * mpmath.factorial(g)) ** (mpmath.mpf(1) / g))


def test_lower_from_period():
    assert seshadri_lower_from_period(1) == pytest.approx(math.pi / 4, rel=1e-15)
    assert seshadri_lower_from_period(2 / math.sqrt(3)) == pytest.approx(math.pi / (2 * math.sqrt(3)), rel=1e-15)
    assert seshadri_lower_from_period(4 / math.pi) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        seshadri_lower_from_period(0)


@pytest.mark.parametrize("g", [1, 2, 3, 5, 10, 50, 170, 1000, 10000])
def test_ekl_upper_against_mpmath(g):
    assert ekl_upper(g) == pytest.approx(mp_fact_root(g), rel=1e-12)


def test_ekl_examples():
    assert ekl_upper(1) == 1
    assert ekl_upper(2) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert ekl_upper(5) == pytest.approx(120 ** 0.2, rel=1e-14)


@pytest.mark.parametrize("g", [1, 2, 4, 5, 30, 400])
def test_bs1_against_mpmath(g):
    assert bs1_lower(g) == pytest.approx(mp_fact_root(g, 2) / float(mpmath.pi), rel=1e-12)


def test_bs1_examples():
    assert bs1_lower(1) == pytest.approx(2 / math.pi, rel=1e-14)
    assert bs1_lower(2) == pytest.approx(2 / math.pi, rel=1e-14)
    assert bs1_lower(4) == pytest.approx(48 ** 0.25 / math.pi, rel=1e-14)


def test_corollary_examples():
    assert corollary_lower(1) == pytest.approx(0.5, rel=1e-14)
    assert corollary_lower(2) == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize("g", range(1, 31))
def test_corollary_identity(g):
    assert corollary_lower(g) == pytest.approx(math.pi / 4 * bs1_lower(g), rel=1e-12)


def test_corollary_asymptotic():
    assert corollary_lower(200) * 4 * math.e / 200 == pytest.approx(1, rel=0.05)


def test_bs2():
    assert bs2_jacobian_upper(2) == pytest.approx(float(3 / mpmath.pi * mpmath.log(11)), rel=1e-14)
    assert bs2_jacobian_upper(3) == pytest.approx(float(3 / mpmath.pi * mpmath.log(15)), rel=1e-14)
    with pytest.raises(GenusTooSmall):
        bs2_jacobian_upper(1)


def test_jacobian_sqrt():
    assert jacobian_seshadri_upper(4) == 2
    assert jacobian_seshadri_upper(2) == pytest.approx(1.4142136, abs=1e-7)
    with pytest.raises(GenusTooSmall):
        jacobian_seshadri_upper(1)


def test_gonality_upper():
    assert gonality_seshadri_upper(2, 2) == Fraction(4, 3)
    assert gonality_seshadri_upper(3, 2) == Fraction(3, 2)
    weak = gonality_seshadri_upper(2, 100)
    assert weak == Fraction(200, 101)
    assert weak > math.sqrt(2)  # the sqrt(g) bound is stronger here
    with pytest.raises(BadGonality):
        gonality_seshadri_upper(3, 1)


@given(st.integers(2, 500), st.integers(2, 500))
def test_gonality_upper_below_min(g, d):
    assert gonality_seshadri_upper(g, d) < min(g, d)


def test_gonality_period():
    assert gonality_period_upper(2) == pytest.approx(8 / math.pi, rel=1e-15)
    assert gonality_period_upper(3) == pytest.approx(12 / math.pi, rel=1e-15)
    for d in range(2, 20):
        assert gonality_period_upper(d) == pytest.approx(4 / math.pi * d, rel=1e-15)
    with pytest.raises(BadGonality):
        gonality_period_upper(1)


def test_monotone_in_genus():
    ekl = [ekl_upper(g) for g in range(1, 300)]
    bs2 = [bs2_jacobian_upper(g) for g in range(2, 300)]
    assert all(a < b for a, b in zip(ekl, ekl[1:]))
    assert all(a < b for a, b in zip(bs2, bs2[1:]))


def test_report_square_lattice():
    rep = bounds_report(period_matrix_from_complex(1j), 1)
    assert rep.m_A == 1
    assert rep.lower_theorem == pytest.approx(math.pi / 4, abs=1e-12)
    assert rep.effective_lower == 1
    assert rep.upper_ekl == 1
    assert rep.consistency_flags == []


def test_report_without_tau():
    rep = bounds_report(g=5)
    assert rep.m_A is None and rep.lower_theorem is None
    assert rep.lower_corollary == pytest.approx(2 ** 0.2 / 4 * 120 ** 0.2, rel=1e-12)
    assert rep.upper_ekl == pytest.approx(120 ** 0.2, rel=1e-12)
    assert rep.bs1_benchmark == pytest.approx(240 ** 0.2 / math.pi, rel=1e-12)
    assert rep.effective_lower == 1
    assert rep.consistency_flags == []
    assert any("open" in n for n in rep.notes)


def test_report_jacobian_fields():
    rep = bounds_report(g=2, d=2, is_jacobian=True)
    assert rep.gonality_upper == Fraction(4, 3)
    assert rep.jacobian_upper_sqrt == pytest.approx(math.sqrt(2))
    assert rep.gonality_period_upper == pytest.approx(8 / math.pi)
    assert rep.bs2_jacobian_upper == pytest.approx(3 / math.pi * math.log(11))
    assert rep.to_json()["gonality_upper_exact"] == "4/3"


def test_report_no_flags_for_product():
    rep = bounds_report(period_matrix_from_complex(np.diag([1j, 1j])), 2, d=2)
    assert rep.m_A == pytest.approx(1.0)
    assert rep.consistency_flags == []


@pytest.mark.parametrize("m, d, jac, expected", [
    (1.0, None, True, set()),
    (1.9, None, False, {"period_exceeds_theorem_ekl_limit", "effective_lower_exceeds_upper_ekl"}),
    (1.75, 2, True, {"theorem_lower_exceeds_gonality_upper"}),
    (1.85, None, True, {"theorem_lower_exceeds_jacobian_sqrt_upper", "period_exceeds_theorem_ekl_limit",
                        "effective_lower_exceeds_upper_ekl"}),
])
def test_report_contradiction_detectors(m, d, jac, expected):
    # at g = 2: (4/pi) sqrt(2) = 1.8006, gonality 2 gives eps <= 4/3 so m <= 1.6977
    rep = bounds_report(g=2, d=d, is_jacobian=jac, m_A=m)
    assert set(rep.consistency_flags) == expected


def test_report_bs2_detector():
    # at g = 40 the EKL ceiling (4/pi)(40!)^(1/40) = 20.2 exceeds BS2 = 4.87
    rep = bounds_report(g=40, is_jacobian=True, m_A=5.0)
    assert "period_exceeds_bs2" in rep.consistency_flags
    assert "period_exceeds_theorem_ekl_limit" not in rep.consistency_flags


def test_report_genus_mismatch():
    with pytest.raises(GenusMismatch):
        bounds_report(period_matrix_from_complex(1j), 2)
    with pytest.raises(GenusTooSmall):
        bounds_report(g=1, is_jacobian=True)


def test_theorem_ekl_consistency_sample():
    rng = np.random.default_rng(11)
    for g in (1, 2, 3):
        for _ in range(30):
            rep = bounds_report(random_siegel(g, rng))
            assert math.pi * rep.m_A / 4 <= ekl_upper(g) + 1e-9
            assert "period_exceeds_theorem_ekl_limit" not in rep.consistency_flags
