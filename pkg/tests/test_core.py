import math
from fractions import Fraction

import numpy as np
import pytest

from seshadri.core import (
    LatticeVector,
    gram_from_period,
    hermitian_norm,
    invert,
    period_matrix_from_complex,
    period_matrix_from_json,
    product,
    translate,
    validate_period_matrix,
)
from seshadri.errors import BadDimension, NotPositiveDefinite, NotSymmetric
from seshadri.experiments import random_siegel
from seshadri.lattice import min_period_length

HEX = 0.5 + 1j * math.sqrt(3) / 2


def test_validate_identity_case():
    tau = validate_period_matrix(1, [[0]], [[1]])
    assert tau.g == 1
    assert tau.exact is not None


def test_validate_rejects_negative_imaginary_part():
    with pytest.raises(NotPositiveDefinite):
        validate_period_matrix(1, [[0]], [[-1]])


def test_validate_genus_two_example():
    im = np.array([[1.2, 0.1], [0.1, 0.9]])
    tau = validate_period_matrix(2, [[0, 0.5], [0.5, 0]], im)
    # closed-form 2x2 eigenvalues: mean +- sqrt(((a - d)/2)^2 + b^2)
    mean, rad = 1.05, math.sqrt(0.15**2 + 0.1**2)
    assert np.allclose(np.linalg.eigvalsh(tau.im), [mean - rad, mean + rad])
    assert mean - rad > 0


@pytest.mark.parametrize("g, re, im", [
    (0, [], []),
    (2, [[0, 0], [0]], [[1, 0], [0, 1]]),
    (2, [[0]], [[1]]),
])
def test_validate_bad_dimension(g, re, im):
    with pytest.raises(BadDimension):
        validate_period_matrix(g, re, im)


def test_validate_symmetry_tolerance():
    tau = validate_period_matrix(2, [[0, 0.3], [0.3 + 1e-12, 0]], np.eye(2))
    assert tau.re[0, 1] == tau.re[1, 0]
    with pytest.raises(NotSymmetric):
        validate_period_matrix(2, [[0, 0.3], [0.31, 0]], np.eye(2))


def test_json_rational_entries():
    tau = period_matrix_from_json({"g": 1, "re": [["1/2"]], "im": [["3/4"]]})
    assert tau.exact == (((Fraction(1, 2),),), ((Fraction(3, 4),),))
    gram = gram_from_period(tau)
    assert gram.exact[0][0] == Fraction(4, 3)
    assert gram.exact[1][1] == Fraction(1, 4) * Fraction(4, 3) + Fraction(3, 4)
    assert tau.to_json()["re"] == [["1/2"]]


def test_gram_square_lattice():
    gram = gram_from_period(period_matrix_from_complex(1j)).gram
    assert np.array_equal(gram, np.eye(2))


def test_gram_hexagonal():
    gram = gram_from_period(period_matrix_from_complex(HEX)).gram
    s = math.sqrt(3)
    assert np.allclose(gram, [[2 / s, 1 / s], [1 / s, 2 / s]], rtol=1e-14)


def test_hermitian_norm_examples():
    sq = period_matrix_from_complex(1j)
    assert hermitian_norm(sq, LatticeVector((1,), (0,))) == 1
    assert hermitian_norm(sq, LatticeVector((3,), (4,))) == pytest.approx(25, rel=1e-14)
    hexa = period_matrix_from_complex(HEX)
    expected = 0.25 / (math.sqrt(3) / 2) + 0.75 * 2 / math.sqrt(3)
    assert hermitian_norm(hexa, LatticeVector((0,), (1,))) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(2 / math.sqrt(3), rel=1e-14)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_gram_matches_complex_oracle(g):
    rng = np.random.default_rng(100 + g)
    for trial in range(5):
        tau = random_siegel(g, rng)
        gram = gram_from_period(tau)
        for v in rng.integers(-6, 7, size=(100, 2 * g)):
            lv = LatticeVector.from_coords(v)
            direct = hermitian_norm(tau, lv)
            assert gram.value(v) == pytest.approx(direct, rel=1e-10, abs=1e-12)
            assert gram.value(-v) == pytest.approx(gram.value(v), rel=1e-14)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_gram_positive_definite_and_unimodular(g):
    for seed in range(20):
        gram = gram_from_period(random_siegel(g, seed)).gram
        assert np.array_equal(gram, gram.T)
        assert np.all(np.linalg.eigvalsh(gram) > 0)
        # the polarization is principal: det G = 1
        assert np.linalg.det(gram) == pytest.approx(1.0, rel=1e-8)


def test_product_block_diagonal():
    t = product(period_matrix_from_complex(1j), period_matrix_from_complex(1j))
    assert np.array_equal(t.tau, np.diag([1j, 1j]))
    assert min_period_length(t) == pytest.approx(1.0)


def _brute_m_genus_one(tau: complex, box: int = 10) -> float:
    ms, ns = np.meshgrid(np.arange(-box, box + 1), np.arange(-box, box + 1))
    vals = np.abs(ms + tau * ns) ** 2 / tau.imag
    vals[(ms == 0) & (ns == 0)] = np.inf
    return float(vals.min())


def test_product_with_2i_curve():
    assert _brute_m_genus_one(2j) == pytest.approx(0.5)
    t = product(period_matrix_from_complex(1j), period_matrix_from_complex(2j))
    assert min_period_length(t) == pytest.approx(0.5, rel=1e-12)


def test_product_min_rule_random():
    rng = np.random.default_rng(7)
    for _ in range(50):
        g1, g2 = rng.integers(1, 3, size=2)
        t1, t2 = random_siegel(int(g1), rng), random_siegel(int(g2), rng)
        expected = min(min_period_length(t1), min_period_length(t2))
        assert min_period_length(product(t1, t2)) == pytest.approx(expected, rel=1e-10)


def test_product_keeps_exact_data():
    a = validate_period_matrix(1, [["1/3"]], [["2"]])
    b = validate_period_matrix(1, [[0]], [[1]])
    assert product(a, b).exact is not None


@pytest.mark.parametrize("g", [1, 2])
def test_modular_invariance(g):
    rng = np.random.default_rng(40 + g)
    for _ in range(25):
        tau = random_siegel(g, rng, spread=0.7)
        m = min_period_length(tau)
        b = rng.integers(-3, 4, size=(g, g))
        b = np.triu(b) + np.triu(b, 1).T
        assert min_period_length(translate(tau, b)) == pytest.approx(m, rel=1e-8)
        assert min_period_length(invert(tau)) == pytest.approx(m, rel=1e-8)
