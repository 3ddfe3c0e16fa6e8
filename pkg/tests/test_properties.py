"""代数恒等式与数值工具的性质测试"""

import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from library.utils import chebyshev_lobatto, normalize_angle, refined_grid_size
from services.lie_core import Involution, Subspace, apply_involution, bracket, get_algebra, killing, project
from services.reductive import ad_cubed_vanishes, lightlike

ALG = get_algebra(3)

small = st.fractions(min_value=-3, max_value=3, max_denominator=5)
elements = st.lists(small, min_size=ALG.dim, max_size=ALG.dim).map(
    lambda cs: ALG.element({str(label): c for label, c in zip(ALG.labels, cs)})
)


@settings(max_examples=25, deadline=None)
@given(elements, elements, elements, small)
def test_bracket_is_bilinear_and_antisymmetric(x, y, z, lam):
    assert bracket(x * lam + y, z) == bracket(x, z) * lam + bracket(y, z)
    assert bracket(x, y) == -bracket(y, x)


@settings(max_examples=25, deadline=None)
@given(elements, elements, elements)
def test_jacobi(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


@settings(max_examples=25, deadline=None)
@given(elements, elements, elements)
def test_killing_is_invariant(x, y, z):
    assert killing(bracket(x, y), z) == -killing(y, bracket(x, z))


@settings(max_examples=25, deadline=None)
@given(elements, elements)
def test_involutions_are_automorphisms(x, y):
    for which in Involution:
        lhs = apply_involution(which, bracket(x, y))
        rhs = bracket(apply_involution(which, x), apply_involution(which, y))
        assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(elements)
def test_projector_identities(x):
    for first, second in ((Subspace.H, Subspace.Q), (Subspace.K, Subspace.P)):
        a, b = project(first, x), project(second, x)
        assert a + b == x
        assert project(first, a) == a
        assert project(second, a).is_zero()
    assert apply_involution(Involution.SIGMA, project(Subspace.H, x)) == project(Subspace.H, x)
    assert apply_involution(Involution.THETA, project(Subspace.P, x)) == -project(Subspace.P, x)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=2, max_size=2))
def test_rational_lightlike_is_nilpotent(t):
    s = sum(ti * ti for ti in t)
    w = tuple(2 * ti / (s + 1) for ti in t) + ((s - 1) / (s + 1),)
    assert sum(v * v for v in w) == Fraction(1)
    assert ad_cubed_vanishes(lightlike(ALG, w))


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_normalize_angle_range(x):
    y = normalize_angle(x)
    assert 0.0 <= y < 2 * math.pi
    assert math.isclose(math.cos(x), math.cos(y), abs_tol=1e-6)


@given(st.integers(min_value=1, max_value=64))
def test_lobatto_refinement_is_nested(k):
    count = 2 * k + 1
    coarse = chebyshev_lobatto(count)
    fine = chebyshev_lobatto(refined_grid_size(count))
    assert np.allclose(fine[::2], coarse, atol=1e-15)
    assert np.array_equal(coarse, -coarse[::-1])
    assert coarse[k] == 0.0
