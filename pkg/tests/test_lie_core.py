"""so(2,n) 构造、括号、Killing 型、对合与投影"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from library.exceptions import AlgebraMismatch, InvalidDimension
from services.lie_core import (
    Involution,
    ScalarKind,
    Subspace,
    ad_matrix,
    apply_involution,
    bracket,
    build_algebra,
    compact_center,
    dump_structure,
    get_algebra,
    killing,
    norm2,
    project,
    verify_algebra,
    verify_structure,
    with_perturbed_constant,
)
from library.utils import to_sympy
from services.reductive import canonical_bases


def _random_exact(alg, rng, scale=3):
    coeffs = [Fraction(int(rng.integers(-scale, scale + 1)), int(rng.integers(1, 4))) for _ in range(alg.dim)]
    return alg.element({str(label): c for label, c in zip(alg.labels, coeffs)})


# ==================== 构造 ====================
@pytest.mark.parametrize("n, dim, slices, rs", [(2, 6, 0, 0), (3, 10, 4, 0), (4, 15, 8, 1), (5, 21, 12, 3)])
def test_dimension_and_label_counts(n, dim, slices, rs):
    alg = get_algebra(n)
    kinds = [label.kind for label in alg.labels]
    assert alg.dim == dim == (n + 1) * (n + 2) // 2
    assert sum(k in ("X++", "X+-", "X-+", "X--") for k in kinds) == 4
    assert sum(k in ("X0+", "X0-", "X+0", "X-0") for k in kinds) == slices
    assert kinds.count("R") == rs


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_build_algebra_rejects_small_n(bad):
    with pytest.raises(InvalidDimension):
        build_algebra(bad)


def test_generators_preserve_metric(alg):
    eta = np.diag(alg.rep.eta).astype(float)
    for m in alg.rep.float_stack:
        assert np.allclose(m.T @ eta + eta @ m, 0.0)


def test_root_eigenvalues(alg):
    j1, j2 = alg.basis("J1"), alg.basis("J2")
    for label in alg.labels:
        alpha, beta = label.root
        x = alg.basis(label)
        assert bracket(j1, x) == x * alpha
        assert bracket(j2, x) == x * beta


def test_compact_center_dimension(alg2, alg3, alg4):
    assert len(compact_center(alg2)) == 2
    assert len(compact_center(alg3)) == 1
    assert len(compact_center(alg4)) == 1


# ==================== 括号 ====================
def test_slice_bracket_with_x_plus_minus(alg3):
    assert bracket(alg3.basis("X0+:3"), alg3.basis("X+-")) == alg3.basis("X+0:3") * 2


def test_slice_anchor_relation(alg4):
    for k in (3, 4):
        assert bracket(alg4.basis(f"X0+:{k}"), alg4.basis(f"X+0:{k}")) == alg4.basis("X++")


def test_rotation_acts_on_slices(alg4):
    # R:3:4 转动第 3、4 个切片，符号约定见 DESIGN.md
    r = alg4.basis("R:3:4")
    assert bracket(r, alg4.basis("X+0:4")) == -alg4.basis("X+0:3")
    assert bracket(r, alg4.basis("X0+:3")) == alg4.basis("X0+:4")


def test_bracket_is_antisymmetric_on_random_elements(alg3, rng):
    x = _random_exact(alg3, rng)
    y = _random_exact(alg3, rng)
    assert bracket(x, x).is_zero()
    assert bracket(x, y) == -bracket(y, x)


def test_bracket_rejects_mixed_inputs(alg2, alg3):
    with pytest.raises(AlgebraMismatch):
        bracket(alg2.basis("J1"), alg3.basis("J1"))
    with pytest.raises(AlgebraMismatch):
        bracket(alg3.basis("J1"), alg3.basis("J2").lower())


def test_float_bracket_matches_exact(alg3, rng):
    x = _random_exact(alg3, rng)
    y = _random_exact(alg3, rng)
    assert bracket(x.lower(), y.lower()).is_close(bracket(x, y).lower(), 1e-12)
    assert bracket(x.lower(), y.lower()).kind is ScalarKind.FLOAT


def test_ad_matrix_agrees_with_bracket(alg3, rng):
    x = _random_exact(alg3, rng)
    y = _random_exact(alg3, rng)
    exact = ad_matrix(x) * sympy.Matrix([to_sympy(c) for c in y.coeffs])
    assert list(exact) == [to_sympy(c) for c in bracket(x, y).coeffs]
    assert np.allclose(ad_matrix(x.lower()) @ y.as_array(), bracket(x, y).as_array())


# ==================== Killing 型 ====================
@pytest.mark.parametrize("n", range(2, 9))
def test_killing_j2(n):
    alg = get_algebra(n)
    j1, j2 = alg.basis("J1"), alg.basis("J2")
    assert killing(j2, j2) == 2 * n
    assert killing(j1, j2) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_killing_of_opposite_roots(n):
    alg = get_algebra(n)
    value = killing(alg.basis("X++"), alg.basis("X--"))
    assert value == -16 - 8 * (n - 2)


def test_killing_x_plus_plus_at_n3(alg3):
    assert killing(alg3.basis("X++"), alg3.basis("X--")) == -24


def test_norm2_convention(alg):
    q0 = canonical_bases(alg).b("q0")
    assert norm2(q0) == 1
    assert norm2(alg.basis("J1")) == -1


# ==================== 对合与投影 ====================
def test_theta_maps_roots_to_negatives(alg3):
    assert apply_involution(Involution.THETA, alg3.basis("X++")) == alg3.basis("X--")
    assert apply_involution(Involution.THETA, alg3.basis("X+-")) == alg3.basis("X-+")


def test_sigma_flips_second_root(alg4):
    for k in (3, 4):
        assert apply_involution(Involution.SIGMA, alg4.basis(f"X0+:{k}")) == alg4.basis(f"X0-:{k}")


def test_involutions_square_to_identity(alg3, rng):
    x = _random_exact(alg3, rng)
    for which in Involution:
        assert apply_involution(which, apply_involution(which, x)) == x
    st = apply_involution(Involution.SIGMA, apply_involution(Involution.THETA, x))
    ts = apply_involution(Involution.THETA, apply_involution(Involution.SIGMA, x))
    assert st == ts


def test_q_projection_of_roots(alg3):
    bases = canonical_bases(alg3)
    assert project(Subspace.Q, alg3.basis("X+0:3")).is_zero()
    assert project(Subspace.Q, alg3.basis("X++")) == bases.b("q0") - bases.b("q2")
    assert project(Subspace.Q, alg3.basis("X+-")) == bases.b("q0") - bases.b("q2")


def test_projectors_are_complementary(alg3, rng):
    x = _random_exact(alg3, rng)
    assert project(Subspace.H, x) + project(Subspace.Q, x) == x
    assert project(Subspace.K, x) + project(Subspace.P, x) == x
    xq = project(Subspace.Q, x)
    assert project(Subspace.Q, xq) == xq
    assert apply_involution(Involution.SIGMA, xq) == -xq


# ==================== 验证套件 ====================
def test_verify_structure_passes_up_to_five():
    results = verify_structure(5)
    failed = [r for r in results if not r.passed]
    assert not failed, failed
    assert {r.n for r in results} == {2, 3, 4, 5}
    names = {r.name for r in results}
    assert {"antisymmetry", "jacobi", "ad_invariance", "killing_trace", "killing_orthogonal_blocks"} <= names
    assert any(name.startswith("relations:") for name in names)


@pytest.mark.slow
def test_verify_structure_passes_up_to_eight():
    assert all(r.passed for r in verify_structure(8))


def test_perturbed_constant_breaks_jacobi(alg3):
    broken = with_perturbed_constant(alg3, "J1", "X0+:3", "X+-")
    results = {r.name: r for r in verify_algebra(broken)}
    assert not results["jacobi"].passed
    assert results["jacobi"].counterexample
    assert results["antisymmetry"].passed


def test_verify_structure_rejects_small_n_max():
    with pytest.raises(InvalidDimension):
        verify_structure(1)


def test_dump_structure_format(alg3):
    dump = dump_structure(alg3)
    assert dump["n"] == 3
    assert len(dump["labels"]) == alg3.dim
    assert "X0+:3" in dump["labels"]
    assert len(dump["killing"]) == alg3.dim
    entry = dump["brackets"][0]
    assert entry["i"] < entry["j"]
    assert {"m", "num", "den"} <= set(entry["terms"][0])
