"""
群字与指数映射
exp(t·ad Z) 的四条计算路径、群字的伴随作用、点的规范参数化、
Ad(e^Z)J1 的系数 (a, b, c_k) 以及二次曲面嵌入

约定: 群字 W 表示点 [W⁻¹]，其基本向量为 X = Ad(W)J1
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
import sympy

from infra.logger import logger, log_performance
from library.exceptions import AlgebraMismatch, ResidualComponent
from library.utils import Scalar, is_exact, to_fraction, to_sympy
from services.lie_core import (
    Algebra,
    Element,
    ScalarKind,
    SparseRows,
    _clean,
    _compose_rows,
    ad_matrix,
    bracket,
)
from services.reductive import canonical_bases

Operator = Union[np.ndarray, sympy.Matrix]

_RESIDUAL_TOL = 1e-12


# ==================== 1. 群字 ====================
@dataclass(frozen=True)
class GroupWord:
    """有限个单参数指数的乘积 Π exp(t_i Z_i)，按顺序从左到右"""
    factors: Tuple[Tuple[Element, Scalar], ...] = ()

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls(())

    @classmethod
    def of(cls, *factors: Tuple[Element, Scalar]) -> "GroupWord":
        return cls(tuple(factors))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Tuple[Element, Scalar]]:
        return iter(self.factors)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((z, -t) for z, t in reversed(self.factors)))

    def lowered(self) -> "GroupWord":
        """全部降为浮点"""
        return GroupWord(tuple((z.lower(), float(t)) for z, t in self.factors))

    @property
    def is_exact(self) -> bool:
        return all(z.is_exact and is_exact(t) for z, t in self.factors)


@dataclass(frozen=True)
class PointCoords:
    """点 [e^{αA} e^{Z} e^{x q0}] 的坐标；切片系数按 k=3..n 排列，空元组表示全零"""
    alpha: Tuple[Scalar, Scalar] = (0, 0)
    nu_pp: Scalar = 0
    nu_pm: Scalar = 0
    nu_0p: Tuple[Scalar, ...] = ()
    nu_p0: Tuple[Scalar, ...] = ()
    x: Scalar = 0

    def with_x(self, x: Scalar) -> "PointCoords":
        return PointCoords(self.alpha, self.nu_pp, self.nu_pm, self.nu_0p, self.nu_p0, x)

    def nilpotent_mapping(self, n: int) -> Dict[str, Scalar]:
        """Z 的非零分量 {标签: 系数}"""
        slices = n - 2
        for name, values in (("nu_0p", self.nu_0p), ("nu_p0", self.nu_p0)):
            if len(values) not in (0, slices):
                raise AlgebraMismatch(
                    f"{name} 长度必须为 n-2={slices}，实际为 {len(values)}", {"n": n}
                )
        mapping: Dict[str, Scalar] = {"X++": self.nu_pp, "X+-": self.nu_pm}
        for offset, value in enumerate(self.nu_0p):
            mapping[f"X0+:{offset + 3}"] = value
        for offset, value in enumerate(self.nu_p0):
            mapping[f"X+0:{offset + 3}"] = value
        return {label: value for label, value in mapping.items() if value != 0}


@dataclass(frozen=True)
class ANCoefficients:
    """Ad(e^Z)J1 = J1 + a X++ + b X+- + Σ c_k X+0:k"""
    a: Scalar
    b: Scalar
    c: Tuple[Scalar, ...]

    @property
    def C2(self) -> Scalar:
        return sum((ck * ck for ck in self.c), 0)

    @property
    def M(self) -> Scalar:
        return self.a * self.a - self.b * self.b - self.C2

    @property
    def u(self) -> Scalar:
        return self.a + self.b

    @property
    def v(self) -> Scalar:
        return (Fraction(1) + self.C2 - 4 * self.a * self.b) / 2


# ==================== 2. 路径选择 ====================
class ExpPath(str, Enum):
    """exp(t·ad Z) 的计算路径"""
    CLOSED = "closed"  # Z ∝ q0，三角闭式
    CARTAN = "cartan"  # Z ∈ 𝒜，根基下对角
    NILPOTENT = "nilpotent"  # 级数有限终止
    GENERIC = "generic"  # 缩放平方


def _ad_rows(x: Element) -> SparseRows:
    """精确 ad(x) 的稀疏行"""
    alg = x.algebra
    rows: Dict[int, Dict[int, Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for i, xi in x.nonzero():
        for j in range(alg.dim):
            for m, c in alg.struct.get((i, j), ()):
                rows[m][j] += xi * c
    return {m: _clean(row) for m, row in rows.items() if _clean(row)}


def _q0_multiple(z: Element) -> Optional[Scalar]:
    """若 z = λ q0 返回 λ"""
    bases = canonical_bases(z.algebra)
    coords = bases.b_coords(z)
    i0 = bases.b_labels.index("q0")
    if z.is_exact:
        if any(c != 0 for i, c in enumerate(coords) if i != i0):
            return None
        return coords[i0]
    rest = np.delete(np.abs(coords), i0)
    if rest.size and float(np.max(rest)) > 1e-14 * max(1.0, abs(float(coords[i0]))):
        return None
    return float(coords[i0])


def _cartan_weights(z: Element) -> Optional[np.ndarray]:
    """z ∈ span{J1, J2} 时返回每个根基向量的特征值"""
    alg = z.algebra
    support = {str(alg.labels[i]) for i, _ in z.nonzero()}
    if not support <= {"J1", "J2"}:
        return None
    z1 = float(z.coefficient("J1"))
    z2 = float(z.coefficient("J2"))
    return np.array([label.root[0] * z1 + label.root[1] * z2 for label in alg.labels])


@lru_cache(maxsize=4096)
def nilpotent_degree(z: Element) -> Optional[int]:
    """最小的 k 使 ad(z)^k = 0；不是幂零时返回 None"""
    alg = z.algebra
    if z.is_zero():
        return 1
    if z.is_exact:
        ad = _ad_rows(z)
        power = ad
        for k in range(2, alg.dim + 2):
            power = _compose_rows(power, ad)
            if not power:
                return k
        return None
    ad = ad_matrix(z)
    scale = max(1.0, float(np.max(np.abs(ad))))
    power = ad
    for k in range(2, alg.dim + 2):
        power = power @ ad
        if float(np.max(np.abs(power))) <= 1e-12 * scale ** k:
            return k
    return None


@lru_cache(maxsize=4096)
def select_path(z: Element) -> ExpPath:
    """按 对角 -> 闭式 -> 幂零 -> 通用 的顺序选择路径"""
    if _cartan_weights(z) is not None:
        path = ExpPath.CARTAN
    elif _q0_multiple(z) is not None:
        path = ExpPath.CLOSED
    elif nilpotent_degree(z) is not None:
        path = ExpPath.NILPOTENT
    else:
        path = ExpPath.GENERIC
    logger.debug(f"exp_ad 路径: {path.value} ({len(z.nonzero())} 个非零分量)")
    return path


# ==================== 3. 闭式与通用指数 ====================
_ROTATION_PAIRS = (("J1", "q2"), ("J2", "p1"))


def _rotation_b(labels: Sequence[str], angle: float) -> np.ndarray:
    """
    exp(angle·ad q0) 在 𝔅 坐标下的矩阵
    J1 -> cos J1 + sin q2, J2 -> cos J2 + sin p1, qk -> cos qk + sin pk，其余不动
    """
    index = {label: i for i, label in enumerate(labels)}
    pairs = list(_ROTATION_PAIRS)
    pairs.extend((label, "p" + label[1:]) for label in labels if label[0] == "q" and label not in ("q0", "q2"))
    R = np.eye(len(labels))
    c, s = math.cos(angle), math.sin(angle)
    for first, second in pairs:
        i, j = index[first], index[second]
        R[i, i], R[j, i] = c, s
        R[i, j], R[j, j] = -s, c
    return R


def expm_scaling_squaring(M: np.ndarray, theta: float = 0.5, degree: int = 13) -> np.ndarray:
    """
    缩放平方法矩阵指数

    参数:
        M: 方阵
        theta: 缩放后 1-范数的上限
        degree: Taylor 截断阶数

    返回:
        exp(M)
    """
    M = np.asarray(M, dtype=float)
    norm = float(np.linalg.norm(M, 1))
    squarings = 0 if norm <= theta else int(math.ceil(math.log2(norm / theta)))
    A = M / 2.0 ** squarings
    eye = np.eye(M.shape[0])
    result = eye.copy()
    # Horner: I + A(I + A/2(I + A/3(…)))
    for k in range(degree, 0, -1):
        result = eye + A @ result / k
    for _ in range(squarings):
        result = result @ result
    return result


def _nilpotent_exact(z: Element, t: Fraction) -> sympy.Matrix:
    alg = z.algebra
    step = {m: {j: v * t for j, v in row.items()} for m, row in _ad_rows(z).items()}
    total: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for i in range(alg.dim):
        total[(i, i)] += 1
    power = step
    factorial = 1
    k = 1
    while power:
        factorial *= k
        for m, row in power.items():
            for j, v in row.items():
                total[(m, j)] += v / factorial
        power = _compose_rows(power, step)
        k += 1
    return sympy.Matrix(alg.dim, alg.dim, lambda r, c: to_sympy(total.get((r, c), Fraction(0))))


def exp_ad(z: Element, t: Scalar, method: Optional[Union[ExpPath, str]] = None) -> Operator:
    """
    exp(t·ad Z) 的根基矩阵

    参数:
        z: 生成元
        t: 参数
        method: 强制使用的路径，默认自动选择

    返回:
        numpy 数组；Z 幂零且 Z、t 都精确时返回精确的 sympy.Matrix
    """
    alg = z.algebra
    path = select_path(z) if method is None else ExpPath(method)

    if path is ExpPath.CLOSED:
        lam = _q0_multiple(z)
        if lam is None:
            raise AlgebraMismatch("闭式路径要求 Z 与 q0 成比例")
        bases = canonical_bases(alg)
        rot = _rotation_b(bases.b_labels, float(lam) * float(t))
        return bases.from_b_float @ rot @ bases.to_b_float

    if path is ExpPath.CARTAN:
        weights = _cartan_weights(z)
        if weights is None:
            raise AlgebraMismatch("对角路径要求 Z ∈ span{J1, J2}")
        return np.diag(np.exp(float(t) * weights))

    if path is ExpPath.NILPOTENT:
        degree = nilpotent_degree(z)
        if degree is None:
            raise AlgebraMismatch("幂零路径要求 ad(Z) 幂零")
        if z.is_exact and is_exact(t):
            return _nilpotent_exact(z, to_fraction(t))
        A = float(t) * ad_matrix(z.lower())
        result = np.eye(alg.dim)
        term = np.eye(alg.dim)
        for k in range(1, degree):
            term = term @ A / k
            result = result + term
        return result

    return expm_scaling_squaring(float(t) * ad_matrix(z.lower()))


def as_float_operator(op: Operator) -> np.ndarray:
    if isinstance(op, np.ndarray):
        return op
    return np.array(op.tolist(), dtype=float)


# ==================== 4. 作用在元素上 ====================
def apply_exp(z: Element, t: Scalar, x: Element) -> Element:
    """exp(t·ad Z)·x；Z 幂零且全部精确时结果精确"""
    if t == 0 or z.is_zero():
        return x
    exact = z.is_exact and x.is_exact and is_exact(t)
    path = select_path(z)

    if path is ExpPath.NILPOTENT:
        if exact:
            tf = to_fraction(t)
            total = x
            term = x
            k = 1
            while True:
                term = bracket(z, term) * (tf / k)
                if term.is_zero():
                    return total
                total = total + term
                k += 1
        zf, tf, term = z.lower(), float(t), x.lower()
        total = term
        for k in range(1, nilpotent_degree(z)):
            term = bracket(zf, term) * (tf / k)
            total = total + term
        return total

    if path is ExpPath.CARTAN:
        weights = _cartan_weights(z)
        return Element(x.algebra, np.exp(float(t) * weights) * x.as_array(), ScalarKind.FLOAT)

    return Element(x.algebra, as_float_operator(exp_ad(z, t, path)) @ x.as_array(), ScalarKind.FLOAT)


def apply_word(word: GroupWord, x: Element) -> Element:
    """Ad(W)·x，最右边的因子先作用"""
    for z, t in reversed(word.factors):
        x = apply_exp(z, t, x)
    return x


def ad_word(alg: Algebra, word: GroupWord) -> np.ndarray:
    """Ad(W) 的根基矩阵（浮点）"""
    result = np.eye(alg.dim)
    for z, t in word:
        result = result @ as_float_operator(exp_ad(z, t))
    return result


def group_matrix(alg: Algebra, word: GroupWord) -> np.ndarray:
    """定义表示中的 Π exp(t_i Z_i)"""
    result = np.eye(alg.rep.size)
    for z, t in word:
        result = result @ scipy.linalg.expm(float(t) * alg.float_matrix_of(z.lower()))
    return result


# ==================== 5. 点的参数化 ====================
def _factor(alg: Algebra, mapping: Dict[str, Scalar]) -> Optional[Tuple[Element, Scalar]]:
    if not mapping:
        return None
    if len(mapping) == 1:
        ((label, value),) = mapping.items()
        return alg.basis(label), value
    return alg.element(mapping), 1


def point_word(alg: Algebra, p: PointCoords) -> GroupWord:
    """
    规范参数化 [(q0, x), (Z, 1), (α·A, 1)]，零因子省略
    只有一个非零分量的因子写成 (基向量, 系数)
    """
    bases = canonical_bases(alg)
    factors: List[Tuple[Element, Scalar]] = []
    if p.x != 0:
        factors.append((bases.b("q0"), p.x))
    for mapping in (
        p.nilpotent_mapping(alg.n),
        {label: value for label, value in zip(("J1", "J2"), p.alpha) if value != 0},
    ):
        factor = _factor(alg, mapping)
        if factor is not None:
            factors.append(factor)
    return GroupWord(tuple(factors))


def nilpotent_part(alg: Algebra, p: PointCoords) -> Element:
    mapping = p.nilpotent_mapping(alg.n)
    if not mapping:
        return alg.zero()
    return alg.element(mapping)


def an_coefficients(alg: Algebra, p: PointCoords) -> ANCoefficients:
    """
    Ad(e^Z e^{αA})J1 的系数，x 被忽略

    返回:
        ANCoefficients；输入全部精确时系数精确
    """
    j1 = alg.basis("J1")
    z = nilpotent_part(alg, p)
    x = apply_exp(z, 1, j1)

    allowed = {"J1", "X++", "X+-"} | {f"X+0:{k}" for k in range(3, alg.n + 1)}
    residual = {
        label: value for label, value in x.terms().items()
        if label not in allowed and abs(float(value)) > _RESIDUAL_TOL
    }
    lead = x.coefficient("J1")
    if residual or abs(float(lead) - 1.0) > _RESIDUAL_TOL:
        raise ResidualComponent(
            "Ad(e^Z)J1 含有多余分量", {"residual": {k: float(v) for k, v in residual.items()}, "J1": float(lead)}
        )
    return ANCoefficients(
        a=x.coefficient("X++"),
        b=x.coefficient("X+-"),
        c=tuple(x.coefficient(f"X+0:{k}") for k in range(3, alg.n + 1)),
    )


def quadric_point(alg: Algebra, word: GroupWord) -> np.ndarray:
    """点 [W⁻¹] 在二次曲面 η(v,v)=1 上的坐标 W⁻¹ e0"""
    base = np.array(alg.rep.base_point, dtype=float)
    return group_matrix(alg, word.inverse()) @ base


def fundamental_vector(alg: Algebra, word: GroupWord) -> Element:
    """X = Ad(W)J1，即点 [W⁻¹] 处的 Ad(g⁻¹)J1"""
    start = time.time()
    x = apply_word(word, alg.basis("J1"))
    log_performance("fundamental_vector", (time.time() - start) * 1000, factors=len(word))
    return x


__all__ = [
    "Operator",
    "GroupWord",
    "PointCoords",
    "ANCoefficients",
    "ExpPath",
    "nilpotent_degree",
    "select_path",
    "expm_scaling_squaring",
    "exp_ad",
    "as_float_operator",
    "apply_exp",
    "apply_word",
    "ad_word",
    "group_matrix",
    "point_word",
    "nilpotent_part",
    "an_coefficients",
    "quadric_point",
    "fundamental_vector",
]
