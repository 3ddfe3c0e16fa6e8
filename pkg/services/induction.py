"""
维数归纳
ι 嵌入 so(2,n) -> so(2,n+1)、最后一个空间二维平面上的旋转（R 输运）、
沿路径二分定位视界，以及 AdS2 的单独处理
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from infra.config import config
from infra.logger import logger, log_performance
from library.exceptions import (
    AlgebraMismatch,
    ConsistencyFailure,
    Degenerate,
    InvalidDimension,
    NoCrossing,
)
from library.utils import normalize_angle
from schema.causal import CausalKind, HorizonResult
from services.causal import (
    CausalClass,
    classify_stable,
    geodesic_quadratic,
    singular_branch,
    singular_times,
)
from services.exp_group import GroupWord, PointCoords, fundamental_vector, group_matrix, point_word
from services.lie_core import Algebra, Element, get_algebra
from services.reductive import canonical_bases

WordPath = Callable[[float], GroupWord]

_TRANSPORT_EPS = 1e-12
_MAX_BISECTIONS = 200


# ==================== 1. ι 嵌入 ====================
def iota_embed(x: Element, target: Optional[Algebra] = None) -> Element:
    """按标签把 so(2,n) 的元素嵌入 so(2,m)，m >= n，默认 m = n+1"""
    source = x.algebra
    target = get_algebra(source.n + 1) if target is None else target
    if target.n < source.n:
        raise AlgebraMismatch(
            f"只能嵌入到更高维: so(2,{source.n}) -> so(2,{target.n})",
            {"source": source.n, "target": target.n},
        )
    if x.is_exact:
        coeffs = [Fraction(0)] * target.dim
    else:
        coeffs = np.zeros(target.dim)
    for i, c in x.nonzero():
        coeffs[target.index_of(source.labels[i])] = c
    return Element(target, coeffs, x.kind)


def iota_word(word: GroupWord, target: Optional[Algebra] = None) -> GroupWord:
    return GroupWord(tuple((iota_embed(z, target), t) for z, t in word))


# ==================== 2. R 输运 ====================
@dataclass(frozen=True)
class RTransport:
    """R(t) v 的最后一个坐标为 0，倒数第二个坐标非负；alternatives 为两个解"""
    t: float
    v_reduced: np.ndarray
    alternatives: Tuple[float, float]


def rotation_generator(alg: Algebra) -> Element:
    """最后两个空间坐标平面上的旋转生成元，与 J1 对易"""
    if alg.n < 3:
        raise InvalidDimension(f"R 输运需要 n >= 3，收到 n={alg.n}", {"n": alg.n})
    size = alg.rep.size
    return alg.wedge(size - 2, size - 1)


def r_transport(v) -> RTransport:
    """
    选取转角 t，使二次曲面上的点 v ∈ ℝ^{2,n} 的最后一个坐标化为 0

    参数:
        v: 长度 n+2 的坐标向量（n >= 3）

    返回:
        RTransport
    """
    v = np.asarray(v, dtype=float)
    alg = get_algebra(v.size - 2)
    gen = rotation_generator(alg)
    va, vb = v[-2], v[-1]
    if abs(va) < _TRANSPORT_EPS and abs(vb) < _TRANSPORT_EPS:
        raise Degenerate("最后两个坐标都为 0，点已在嵌入的切片中", {"last": [float(va), float(vb)]})

    t = normalize_angle(math.atan2(-vb, va))
    reduced = group_matrix(alg, GroupWord.of((gen.lower(), t))) @ v
    reduced[-1] = 0.0
    return RTransport(t=t, v_reduced=reduced, alternatives=(t, normalize_angle(t + math.pi)))


def transport_word(alg: Algebra, word: GroupWord, t: float) -> GroupWord:
    """W' = W·R(-t)，使 quadric_point(W') = R(t)·quadric_point(W)"""
    return word + GroupWord.of((rotation_generator(alg).lower(), -t))


# ==================== 3. 视界二分 ====================
def circle_path(alg: Algebra) -> WordPath:
    """SO(2) 圆周 x ↦ [e^{x q0}]"""
    return lambda x: point_word(alg, PointCoords(x=x))


def point_path(alg: Algebra, coords: PointCoords) -> WordPath:
    """固定 AN 部分，沿紧角度 x"""
    return lambda x: point_word(alg, coords.with_x(x))


def _kind_at(alg: Algebra, path: WordPath, t: float, grid: Optional[int]) -> CausalKind:
    # 不稳定时加密网格重试，仍不稳定则抛出，不猜测哪一侧
    return classify_stable(alg, path(t), grid=grid).kind


def horizon_bisect(
    alg: Algebra,
    path: WordPath,
    lo: float,
    hi: float,
    tol: Optional[float] = None,
    grid: Optional[int] = None,
) -> HorizonResult:
    """
    沿路径在黑洞/自由的分界处二分

    参数:
        alg: 代数
        path: 参数 -> 群字
        lo, hi: 区间端点，分类必须不同且都不是奇异点
        tol: 区间长度容差
        grid: 分类网格

    返回:
        HorizonResult

    异常:
        NoCrossing: 端点分类相同或路径穿过奇异集
        InconclusiveNearBoundary: 加密网格后某个中点仍无法判定
    """
    start = time.time()
    tol = config.numerics.horizon_tol if tol is None else tol
    lo_kind = _kind_at(alg, path, lo, grid)
    hi_kind = _kind_at(alg, path, hi, grid)
    if CausalKind.SINGULAR in (lo_kind, hi_kind):
        raise NoCrossing("区间端点在奇异集上", {"lo": lo_kind.value, "hi": hi_kind.value})
    if lo_kind == hi_kind:
        raise NoCrossing(f"两端分类相同: {lo_kind.value}", {"lo": lo, "hi": hi})

    a, b = lo, hi
    iterations = 0
    while abs(b - a) >= tol and iterations < _MAX_BISECTIONS:
        mid = 0.5 * (a + b)
        kind = _kind_at(alg, path, mid, grid)
        if kind is CausalKind.SINGULAR:
            raise NoCrossing("路径在区间内穿过奇异集", {"t": mid})
        if kind == lo_kind:
            a = mid
        else:
            b = mid
        iterations += 1
        logger.debug(f"视界二分 #{iterations}: [{a:.12f}, {b:.12f}]")

    log_performance("horizon_bisect", (time.time() - start) * 1000, iterations=iterations)
    return HorizonResult(
        n=alg.n,
        t_star=0.5 * (a + b),
        lo=a,
        hi=b,
        lo_class=lo_kind,
        hi_class=hi_kind,
        iterations=iterations,
    )


# ==================== 4. AdS2 ====================
def ads2_word(alpha: float, a: float, x: float) -> GroupWord:
    """so(2,2) 中的群字 [(q0, x), (X₊, a), (J1, α)]，X₊ = p1 - q0"""
    alg = get_algebra(2)
    bases = canonical_bases(alg)
    x_plus = bases.b("p1") - bases.b("q0")
    return GroupWord.of((bases.b("q0"), x), (x_plus, a), (alg.basis("J1"), alpha))


def ads2_roots(a: float, x: float) -> Tuple[float, float]:
    """
    沿 E = q0 ± q1 两个类光方向的交点参数 s = N / D±
    N = sin x - a cos x, D± = cos x + a sin x ∓ a；D 为 0 时为无穷
    """
    numerator = math.sin(x) - a * math.cos(x)
    roots = []
    for sign in (1.0, -1.0):
        denominator = math.cos(x) + a * math.sin(x) - sign * a
        roots.append(math.inf if abs(denominator) < _TRANSPORT_EPS else numerator / denominator)
    return roots[0], roots[1]


def ads2_classify(alpha: float, a: float, x: float, tol: Optional[float] = None) -> CausalClass:
    """
    AdS2 点的分类，在 so(2,2) 内计算
    两个交点参数都在未来时为黑洞
    闭式根必须出现在通用二次式的根中，否则抛出 ConsistencyFailure
    """
    tol = config.numerics.tol if tol is None else tol
    alg = get_algebra(2)
    word = ads2_word(alpha, a, x)
    quadratics = [geodesic_quadratic(alg, word, (sign, 0.0)) for sign in (1.0, -1.0)]
    base = quadratics[0]
    s = float(base.scale)
    c = float(base.c)

    if abs(c / s) <= tol * (1.0 + abs(float(base.a) / s) + abs(float(base.b) / s)):
        return CausalClass(
            kind=CausalKind.SINGULAR,
            c=c,
            branch=singular_branch(alg, fundamental_vector(alg, word)),
        )

    roots = ads2_roots(a, x)
    for root, quadratic in zip(roots, quadratics):
        if not math.isfinite(root):
            continue
        generic = singular_times(quadratic).roots
        if not any(abs(root - r) <= 1e-6 * (1.0 + abs(r)) for r in generic):
            raise ConsistencyFailure(
                f"AdS2 根 {root} 与通用二次式的根 {generic} 不一致",
                {"a": a, "x": x, "alpha": alpha, "root": root, "generic": list(generic)},
            )

    eps = config.numerics.future_eps
    black_hole = all(math.isfinite(r) and r > eps for r in roots)
    return CausalClass(
        kind=CausalKind.BLACK_HOLE if black_hole else CausalKind.FREE,
        c=c,
        witness_w2=None if black_hole else 0.0,
        root_table=((0.0, roots),),
    )


__all__ = [
    "WordPath",
    "iota_embed",
    "iota_word",
    "RTransport",
    "rotation_generator",
    "r_transport",
    "transport_word",
    "circle_path",
    "point_path",
    "horizon_bisect",
    "ads2_word",
    "ads2_roots",
    "ads2_classify",
]
