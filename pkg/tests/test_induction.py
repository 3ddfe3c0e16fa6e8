"""ι 嵌入、R 输运、视界二分与 AdS2"""

import math
from fractions import Fraction

import numpy as np
import pytest

from library.exceptions import (
    AlgebraMismatch,
    ConsistencyFailure,
    Degenerate,
    InconclusiveNearBoundary,
    InvalidDimension,
    NoCrossing,
)
from schema.causal import CausalKind
from services import causal
from services.causal import (
    classify_point,
    classify_stable,
    geodesic_quadratic,
    singular_times,
    singularity_killing,
    singularity_norm2,
)
from services.exp_group import PointCoords, fundamental_vector, point_word, quadric_point
from services.induction import (
    ads2_classify,
    ads2_roots,
    ads2_word,
    circle_path,
    horizon_bisect,
    iota_embed,
    iota_word,
    point_path,
    r_transport,
    rotation_generator,
    transport_word,
)
from services.lie_core import bracket, get_algebra


# ==================== ι 嵌入 ====================
def test_iota_is_a_homomorphism(alg3, alg4, rng):
    labels = [str(label) for label in alg3.labels]
    for _ in range(5):
        x = alg3.element({label: Fraction(int(rng.integers(-3, 4))) for label in labels})
        y = alg3.element({label: Fraction(int(rng.integers(-3, 4))) for label in labels})
        assert iota_embed(bracket(x, y)) == bracket(iota_embed(x), iota_embed(y))
    assert iota_embed(x, alg4).algebra is alg4


def test_iota_keeps_labels(alg2):
    target = get_algebra(4)
    x = iota_embed(alg2.basis("X+-"), target)
    assert x == target.basis("X+-")


def test_iota_rejects_lower_target(alg2, alg3):
    with pytest.raises(AlgebraMismatch):
        iota_embed(alg3.basis("J1"), alg2)


def test_iota_word_preserves_fundamental_vector(alg3, alg4):
    coords = PointCoords(alpha=(0.1, 0.2), nu_pp=0.5, nu_0p=(0.3,), x=0.9)
    lower = fundamental_vector(alg3, point_word(alg3, coords))
    upper = fundamental_vector(alg4, iota_word(point_word(alg3, coords), alg4))
    assert upper.is_close(iota_embed(lower, alg4), 1e-12)


# ==================== R 输运 ====================
def test_rotation_generator_commutes_with_j1(alg3, alg4):
    for alg in (alg3, alg4):
        assert bracket(rotation_generator(alg), alg.basis("J1")).is_zero()


def test_rotation_generator_needs_three(alg2):
    with pytest.raises(InvalidDimension):
        rotation_generator(alg2)


def test_r_transport_zeroes_last_coordinate():
    v = np.array([1.3, 0.2, 0.4, 0.1, -0.5, 0.7])
    result = r_transport(v)
    r = math.hypot(v[-2], v[-1])
    assert result.v_reduced == pytest.approx(np.concatenate((v[:-2], [r, 0.0])), abs=1e-12)
    assert result.alternatives[0] == result.t
    assert abs(abs(result.alternatives[1] - result.t) - math.pi) < 1e-12


def test_r_transport_rejects_sliced_points():
    with pytest.raises(Degenerate):
        r_transport([1.0, 0.0, 0.0, 0.0, 0.0])


def test_r_transport_needs_three():
    with pytest.raises(InvalidDimension):
        r_transport([1.0, 0.0, 0.3, 0.2])


def test_transport_recovers_embedded_point(alg3, alg4):
    coords = PointCoords(alpha=(0.2, -0.1), nu_pp=0.4, nu_pm=0.3, nu_0p=(0.5,), nu_p0=(-0.2,), x=1.4)
    lower_word = point_word(alg3, coords)
    lower = quadric_point(alg3, lower_word)

    moved = transport_word(alg4, iota_word(lower_word, alg4), 0.8)
    v = quadric_point(alg4, moved)
    result = r_transport(v)
    expected = np.concatenate((lower[:-1], [abs(lower[-1]), 0.0]))
    assert result.v_reduced == pytest.approx(expected, abs=1e-10)


def test_transport_keeps_fundamental_vector(alg4):
    word = point_word(alg4, PointCoords(nu_pp=0.3, nu_0p=(0.2, -0.4), x=2.2))
    moved = transport_word(alg4, word, 1.7)
    assert fundamental_vector(alg4, moved).is_close(fundamental_vector(alg4, word).lower(), 1e-10)


def _random_coords(rng, n):
    def pick(size, scale):
        return tuple(float(v) for v in rng.uniform(-scale, scale, size=size))

    return PointCoords(
        alpha=pick(2, 1.0),
        nu_pp=pick(1, 0.8)[0],
        nu_pm=pick(1, 0.8)[0],
        nu_0p=pick(n - 2, 0.5),
        nu_p0=pick(n - 2, 0.5),
        x=float(rng.uniform(0.0, 2 * math.pi)),
    )


def test_iota_keeps_singularity_and_quadratic(alg3, alg4, rng):
    for _ in range(25):
        word = point_word(alg3, _random_coords(rng, 3))
        lifted = iota_word(word, alg4)
        assert float(singularity_norm2(alg4, lifted)) == pytest.approx(
            float(singularity_norm2(alg3, word)), abs=1e-9
        )
        w = rng.normal(size=3)
        w /= np.linalg.norm(w)
        lower = geodesic_quadratic(alg3, word, w).ratios()
        upper = geodesic_quadratic(alg4, lifted, np.append(w, 0.0)).ratios()
        assert upper == pytest.approx(lower, abs=1e-9)


def test_iota_keeps_classification(alg3, alg4, rng):
    # 只扫描 (w1, w2) 平面，两侧的方向集合相同
    for _ in range(25):
        word = point_word(alg3, _random_coords(rng, 3))
        lower = classify_stable(alg3, word, grid=33, completions=0)
        upper = classify_stable(alg4, iota_word(word, alg4), grid=33, completions=0)
        assert upper.kind is lower.kind


@pytest.mark.parametrize("x", [0.4, 2.0, 4.0, 5.5])
def test_iota_keeps_circle_classification(alg3, alg4, x):
    word = point_word(alg3, PointCoords(x=x))
    lower = classify_point(alg3, word, grid=33)
    assert classify_point(alg4, iota_word(word, alg4), grid=33).kind is lower.kind


def test_transport_keeps_classification(alg4, rng):
    for _ in range(15):
        word = point_word(alg4, _random_coords(rng, 4))
        moved = transport_word(alg4, word, float(rng.uniform(0.0, 2 * math.pi)))
        assert classify_stable(alg4, moved, grid=33).kind is classify_stable(alg4, word, grid=33).kind


# ==================== 视界二分 ====================
@pytest.mark.parametrize("n", [2, 3])
def test_circle_horizon_at_quarter_turn(n):
    alg = get_algebra(n)
    result = horizon_bisect(alg, circle_path(alg), math.pi / 4, 3 * math.pi / 4, tol=1e-6, grid=33)
    assert result.t_star == pytest.approx(math.pi / 2, abs=1e-6)
    assert result.lo_class is CausalKind.BLACK_HOLE
    assert result.hi_class is CausalKind.FREE
    assert result.hi - result.lo < 1e-6
    assert result.iterations > 0


def test_horizon_reversed_interval(alg2):
    result = horizon_bisect(alg2, circle_path(alg2), 3 * math.pi / 4, math.pi / 4, tol=1e-6, grid=33)
    assert result.t_star == pytest.approx(math.pi / 2, abs=1e-6)
    assert result.lo_class is CausalKind.FREE


def test_horizon_needs_a_crossing(alg2):
    with pytest.raises(NoCrossing):
        horizon_bisect(alg2, circle_path(alg2), math.pi / 4, 5 * math.pi / 4, grid=33)


def test_horizon_rejects_singular_endpoint(alg2):
    with pytest.raises(NoCrossing):
        horizon_bisect(alg2, circle_path(alg2), 0.0, 3 * math.pi / 4, grid=33)


def test_horizon_refines_inconclusive_midpoints(alg2, monkeypatch):
    original = causal.classify_point
    grids = []

    def flaky(alg, word, grid=None, **kwargs):
        grids.append(grid)
        if grid == 33:
            raise InconclusiveNearBoundary("网格 33 不稳定", {"grid": grid})
        return original(alg, word, grid=grid, **kwargs)

    monkeypatch.setattr(causal, "classify_point", flaky)
    result = horizon_bisect(alg2, circle_path(alg2), math.pi / 4, 3 * math.pi / 4, tol=1e-6, grid=33)
    assert result.t_star == pytest.approx(math.pi / 2, abs=1e-6)
    assert set(grids) == {33, 65}


def test_horizon_propagates_persistent_inconclusive(alg2, monkeypatch):
    grids = []

    def stuck(alg, word, grid=None, **kwargs):
        grids.append(grid)
        raise InconclusiveNearBoundary("始终不稳定", {"grid": grid})

    monkeypatch.setattr(causal, "classify_point", stuck)
    with pytest.raises(InconclusiveNearBoundary):
        horizon_bisect(alg2, circle_path(alg2), math.pi / 4, 3 * math.pi / 4, grid=33)
    assert grids == [33, 65, 129]


def test_point_path_moves_only_x(alg3):
    coords = PointCoords(nu_pp=0.2, x=5.0)
    path = point_path(alg3, coords)
    assert path(0.5) == point_word(alg3, coords.with_x(0.5))


# ==================== AdS2 ====================
def test_ads2_roots_without_boost():
    s_plus, s_minus = ads2_roots(0.0, math.pi / 4)
    assert s_plus == pytest.approx(1.0)
    assert s_minus == pytest.approx(1.0)


def test_ads2_roots_infinite_denominator():
    assert math.isinf(ads2_roots(1.0, 0.0)[0])


@pytest.mark.parametrize("x, kind", [(math.pi / 4, CausalKind.BLACK_HOLE), (3 * math.pi / 4, CausalKind.FREE)])
def test_ads2_circle(x, kind):
    result = ads2_classify(0.0, 0.0, x)
    assert result.kind is kind
    if kind is CausalKind.FREE:
        assert result.witness_w2 == 0.0


def test_ads2_origin_is_singular():
    assert ads2_classify(0.0, 0.0, 0.0).kind is CausalKind.SINGULAR


@pytest.mark.parametrize("a, x", [(0.3, 1.0), (-0.5, 2.0), (0.8, 0.4)])
def test_ads2_roots_match_generic_quadratic(a, x):
    alg = get_algebra(2)
    word = ads2_word(0.2, a, x)
    for root, sign in zip(ads2_roots(a, x), (1.0, -1.0)):
        generic = singular_times(geodesic_quadratic(alg, word, (sign, 0.0))).roots
        assert any(abs(root - r) <= 1e-6 * (1.0 + abs(r)) for r in generic)


def test_ads2_alpha_does_not_change_class():
    first = ads2_classify(0.7, 0.3, 1.0)
    second = ads2_classify(1.5, 0.3, 1.0)
    assert first == second


def test_ads2_singular_value_at_zero_angle():
    alg = get_algebra(2)
    a = 0.6
    word = ads2_word(0.0, a, 0.0)
    assert float(singularity_killing(alg, word)) == pytest.approx(-4 * a * a, abs=1e-10)
    assert float(geodesic_quadratic(alg, word, (1.0, 0.0)).c) == pytest.approx(4 * a * a, abs=1e-10)


def test_ads2_root_mismatch_raises(monkeypatch):
    monkeypatch.setattr("services.induction.ads2_roots", lambda a, x: (5.0, 7.0))
    with pytest.raises(ConsistencyFailure):
        ads2_classify(0.0, 0.0, math.pi / 4)
