"""指数映射的路径选择、群字作用与点的参数化"""

from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
import sympy

from library.exceptions import AlgebraMismatch
from services.exp_group import (
    ANCoefficients,
    ExpPath,
    GroupWord,
    PointCoords,
    ad_word,
    an_coefficients,
    apply_exp,
    apply_word,
    as_float_operator,
    exp_ad,
    expm_scaling_squaring,
    fundamental_vector,
    group_matrix,
    nilpotent_degree,
    point_word,
    quadric_point,
    select_path,
)
from services.lie_core import ad_matrix
from services.reductive import canonical_bases


# ==================== 路径选择 ====================
def test_path_selection(alg3):
    B = alg3.basis
    q0 = canonical_bases(alg3).b("q0")
    assert select_path(B("J1") * 2 + B("J2")) is ExpPath.CARTAN
    assert select_path(q0 * 3) is ExpPath.CLOSED
    assert select_path(B("X++") + B("X0+:3")) is ExpPath.NILPOTENT
    assert select_path(B("J1") + B("X++")) is ExpPath.GENERIC


def test_nilpotent_degree(alg3):
    assert nilpotent_degree(alg3.basis("X++")) == 3
    assert nilpotent_degree(alg3.basis("X++").lower()) == 3
    assert nilpotent_degree(alg3.zero()) == 1
    assert nilpotent_degree(alg3.basis("J1")) is None


@pytest.mark.parametrize(
    "build",
    [
        lambda alg: alg.basis("J1") * Fraction(3, 10) - alg.basis("J2") * Fraction(1, 5),
        lambda alg: canonical_bases(alg).b("q0"),
        lambda alg: alg.basis("X+-") + alg.basis("X+0:3") * 2,
        lambda alg: alg.basis("J1") + alg.basis("X0+:3") - alg.basis("X--") * Fraction(1, 2),
    ],
    ids=["cartan", "closed", "nilpotent", "generic"],
)
def test_every_path_matches_scipy(alg3, build):
    z = build(alg3)
    t = 0.7
    expected = scipy.linalg.expm(t * ad_matrix(z.lower()))
    assert np.allclose(as_float_operator(exp_ad(z, t)), expected, atol=1e-10)
    assert np.allclose(as_float_operator(exp_ad(z, t, ExpPath.GENERIC)), expected, atol=1e-10)


def test_exact_nilpotent_exponential(alg3):
    op = exp_ad(alg3.basis("X++"), Fraction(1, 2))
    assert isinstance(op, sympy.Matrix)
    assert all(entry.is_Rational for entry in op)


def test_forced_path_rejects_wrong_generator(alg3):
    with pytest.raises(AlgebraMismatch):
        exp_ad(alg3.basis("X++"), 1.0, ExpPath.CARTAN)
    with pytest.raises(AlgebraMismatch):
        exp_ad(alg3.basis("J1"), 1.0, "closed")


def test_scaling_squaring_large_norm():
    rng = np.random.default_rng(5)
    M = rng.normal(size=(6, 6)) * 4
    assert np.allclose(expm_scaling_squaring(M), scipy.linalg.expm(M), rtol=1e-8)


# ==================== 作用 ====================
def test_exact_nilpotent_action(alg2):
    j1, xpp = alg2.basis("J1"), alg2.basis("X++")
    t = Fraction(3, 7)
    out = apply_exp(xpp, t, j1)
    assert out.is_exact
    assert out == j1 - xpp * t


def test_word_and_inverse_cancel(alg3):
    q0 = canonical_bases(alg3).b("q0")
    word = GroupWord.of((q0, 0.4), (alg3.basis("X+0:3"), -1.1), (alg3.basis("J2"), 0.3))
    x = alg3.element({"J1": 1.0, "X0-:3": 2.0})
    assert apply_word(word + word.inverse(), x).is_close(x.lower(), 1e-10)


def test_ad_word_matches_action(alg3):
    word = GroupWord.of((alg3.basis("X++"), 0.5), (alg3.basis("J1"), -0.25))
    x = alg3.basis("X0+:3")
    assert np.allclose(ad_word(alg3, word) @ x.as_array(), apply_word(word, x).as_array())


def test_group_matrix_conjugates(alg3):
    word = GroupWord.of((canonical_bases(alg3).b("q0"), 0.9), (alg3.basis("X+-"), 0.6))
    G = group_matrix(alg3, word)
    x = alg3.basis("J1")
    lhs = alg3.float_matrix_of(apply_word(word, x).lower())
    rhs = G @ alg3.float_matrix_of(x.lower()) @ np.linalg.inv(G)
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_quadric_point_on_quadric(alg4):
    coords = PointCoords(alpha=(0.2, -0.1), nu_pp=0.3, nu_0p=(0.4, -0.2), x=1.2)
    v = quadric_point(alg4, point_word(alg4, coords))
    eta = np.array(alg4.rep.eta, dtype=float)
    assert float(v @ (eta * v)) == pytest.approx(1.0, abs=1e-10)


def test_fundamental_vector_of_identity(alg2):
    assert fundamental_vector(alg2, GroupWord.identity()) == alg2.basis("J1")


# ==================== 参数化 ====================
def test_point_word_layout(alg3):
    q0 = canonical_bases(alg3).b("q0")
    word = point_word(alg3, PointCoords(nu_pp=2, x=Fraction(1, 3)))
    assert len(word) == 2
    (z0, t0), (z1, t1) = word
    assert z0 == q0 and t0 == Fraction(1, 3)
    assert z1 == alg3.basis("X++") and t1 == 2
    assert len(point_word(alg3, PointCoords())) == 0


def test_slice_length_is_checked(alg3):
    with pytest.raises(AlgebraMismatch):
        point_word(alg3, PointCoords(nu_0p=(1, 2)))


def test_an_coefficients_pure_x_plus_plus(alg3):
    coeffs = an_coefficients(alg3, PointCoords(nu_pp=Fraction(7, 10)))
    assert coeffs.a == Fraction(-7, 10)
    assert coeffs.b == 0
    assert coeffs.c == (0,)


def test_an_coefficients_float(alg4):
    coeffs = an_coefficients(alg4, PointCoords(nu_pm=0.5, nu_0p=(0.2, 0.0), nu_p0=(0.0, 0.3)))
    assert coeffs.b == pytest.approx(-0.5)
    assert len(coeffs.c) == 2


def test_an_coefficient_invariants():
    coeffs = ANCoefficients(a=Fraction(3, 10), b=Fraction(1, 10), c=(Fraction(1, 5),))
    assert coeffs.C2 == Fraction(1, 25)
    assert coeffs.M == Fraction(9, 100) - Fraction(1, 100) - Fraction(1, 25)
    assert coeffs.u == Fraction(2, 5)
    assert coeffs.v == (1 + Fraction(1, 25) - Fraction(12, 100)) / 2
