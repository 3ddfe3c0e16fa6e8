"""
工具函数库
有理数转换、网格生成、单位向量采样等通用函数
"""

import math
from fractions import Fraction
from numbers import Integral as _IntegralABC, Rational as _RationalABC
from typing import List, Optional, Tuple, Union

import numpy as np
import sympy

Scalar = Union[int, float, Fraction]

TWO_PI = 2.0 * math.pi


# ==================== 1. 有理数工具 ====================
def is_exact(value) -> bool:
    """是否为精确有理数（int / Fraction / sympy.Rational）"""
    if isinstance(value, bool):
        return False
    return isinstance(value, (_RationalABC, sympy.Rational))


def to_fraction(value) -> Fraction:
    """转换为 Fraction，浮点数不接受"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, _IntegralABC) and not isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"无法精确转换为有理数: {value!r}")


def to_sympy(value: Fraction) -> sympy.Rational:
    """Fraction -> sympy.Rational"""
    return sympy.Rational(value.numerator, value.denominator)


def fraction_str(value: Fraction) -> str:
    """输出 num/den 形式"""
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """有理数开方，不是完全平方时返回 None"""
    if value < 0:
        return None
    root = sympy.sqrt(to_sympy(value))
    if not root.is_Rational:
        return None
    return to_fraction(root)


# ==================== 2. 角度与网格 ====================
def normalize_angle(x: float) -> float:
    """化到 [0, 2π)"""
    y = math.fmod(x, TWO_PI)
    if y < 0:
        y += TWO_PI
    # fmod 的舍入可能得到 2π 本身
    return 0.0 if y >= TWO_PI else y


def chebyshev_lobatto(count: int) -> np.ndarray:
    """
    [-1, 1] 上的 Chebyshev-Lobatto 节点，升序
    count 为奇数时包含 0；count -> 2*count-1 的加密是嵌套的
    """
    if count < 2:
        raise ValueError(f"节点数至少为2: {count}")
    k = np.arange(count)
    nodes = -np.cos(k * np.pi / (count - 1))
    nodes[0], nodes[-1] = -1.0, 1.0
    if count % 2 == 1:
        nodes[count // 2] = 0.0
    # 对称化，消除 cos 的舍入误差
    nodes = 0.5 * (nodes - nodes[::-1])
    return nodes


def refined_grid_size(count: int) -> int:
    """嵌套加密后的节点数"""
    return 2 * count - 1


def check_grid_size(count: int) -> int:
    """分类网格必须是不小于 3 的奇数，保证 w2 = 0 是节点"""
    if count < 3 or count % 2 == 0:
        raise ValueError(f"网格节点数必须是不小于3的奇数: {count}")
    return count


# ==================== 3. 单位向量采样 ====================
def pythagorean_units(dim: int, count: int, seed: int = 0) -> List[Tuple[Fraction, ...]]:
    """
    精确的有理单位向量
    逆球极投影: t ↦ (2t, |t|²-1)/(|t|²+1)，再随机做带符号的坐标置换
    """
    if dim < 1:
        raise ValueError("维数至少为1")
    rng = np.random.default_rng(seed)
    vectors = []
    for _ in range(count):
        if dim == 1:
            vectors.append((Fraction(1 if rng.integers(0, 2) else -1),))
            continue
        t = [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 7))) for _ in range(dim - 1)]
        s = sum(ti * ti for ti in t)
        raw = [2 * ti / (s + 1) for ti in t] + [(s - 1) / (s + 1)]
        order = rng.permutation(dim)
        signs = rng.choice([-1, 1], size=dim)
        vectors.append(tuple(raw[int(j)] * int(sg) for j, sg in zip(order, signs)))
    return vectors


def sphere_samples(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """单位球面均匀采样，shape (count, dim)"""
    raw = rng.normal(size=(count, dim))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return raw / norms


def canonical_direction(w2: float, dim: int) -> np.ndarray:
    """(√(1-w2²), w2, 0, …)"""
    w = np.zeros(dim)
    rho = math.sqrt(max(0.0, 1.0 - w2 * w2))
    w[0] = rho
    w[1] = w2
    return w


# ==================== 4. 导出接口 ====================
__all__ = [
    "Scalar",
    "TWO_PI",
    "is_exact",
    "to_fraction",
    "to_sympy",
    "fraction_str",
    "rational_sqrt",
    "normalize_angle",
    "chebyshev_lobatto",
    "refined_grid_size",
    "check_grid_size",
    "pythagorean_units",
    "sphere_samples",
    "canonical_direction",
]
