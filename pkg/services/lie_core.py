"""
so(2,n) 李代数核心
在 (n+2) 维矩阵实现中构造根空间基，提取结构常数、Killing 型、对合与投影

约定:
    η = diag(+1, +1, -1, …, -1)，坐标 e0, e1 类时，e2, e3 及切片坐标 e_{k+1} (k=3..n) 类空
    u∧v 表示矩阵 u vᵀη - v uᵀη
    J1 = e2∧e1, J2 = e3∧e0, f± = e1 ± e2, g± = e0 ± e3
"""

from __future__ import annotations

import itertools
import time
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from infra.logger import log_checks, log_performance, logger
from library.exceptions import AlgebraMismatch, InvalidDimension, NormalizationFailure
from library.utils import fraction_str, is_exact, rational_sqrt, to_fraction, to_sympy
from schema.report import CheckResult

SparseVec = Dict[int, Fraction]
SparseMat = Dict[Tuple[int, int], Fraction]
SparseRows = Dict[int, Dict[int, Fraction]]
StructTable = Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


# ==================== 1. 枚举与标签 ====================
class ScalarKind(str, Enum):
    """标量类型"""
    EXACT = "exact"
    FLOAT = "binary64"


class Involution(str, Enum):
    """对合"""
    THETA = "theta"
    SIGMA = "sigma"
    SIGMA_THETA = "sigma_theta"


class Subspace(str, Enum):
    """子空间标记，两两交集用两个字母"""
    H = "H"
    Q = "Q"
    K = "K"
    P = "P"
    HK = "HK"
    HP = "HP"
    QK = "QK"
    QP = "QP"


_SIGN = {"+": 1, "-": -1, "0": 0}


@dataclass(frozen=True)
class BasisLabel:
    """根基标签: J1, J2, X±±, X0±:k, X±0:k, R:i:j"""
    kind: str
    i: Optional[int] = None
    j: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "R":
            return f"R:{self.i}:{self.j}"
        if self.i is not None:
            return f"{self.kind}:{self.i}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "BasisLabel":
        parts = text.split(":")
        if parts[0] == "R" and len(parts) == 3:
            return cls("R", int(parts[1]), int(parts[2]))
        if len(parts) == 2:
            return cls(parts[0], int(parts[1]))
        if len(parts) == 1:
            return cls(parts[0])
        raise ValueError(f"无法解析的标签: {text}")

    @property
    def root(self) -> Tuple[int, int]:
        """(ad J1, ad J2) 的特征值对"""
        if self.kind in ("J1", "J2", "R"):
            return (0, 0)
        return (_SIGN[self.kind[1]], _SIGN[self.kind[2]])

    @property
    def block(self) -> str:
        """Killing 正交分解中的块: ZK(A) / A / N2 / N:k"""
        if self.kind == "R":
            return "ZK(A)"
        if self.kind in ("J1", "J2"):
            return "A"
        if self.i is None:
            return "N2"
        return f"N:{self.i}"


def make_labels(n: int) -> Tuple[BasisLabel, ...]:
    """按固定顺序生成全部标签"""
    labels = [BasisLabel(kind) for kind in ("J1", "J2", "X++", "X+-", "X-+", "X--")]
    for k in range(3, n + 1):
        labels.extend(BasisLabel(kind, k) for kind in ("X0+", "X0-", "X+0", "X-0"))
    for i, j in itertools.combinations(range(3, n + 1), 2):
        labels.append(BasisLabel("R", i, j))
    return tuple(labels)


# ==================== 2. 稀疏有理矩阵 ====================
def _clean(entries) -> dict:
    return {key: value for key, value in entries.items() if value != 0}


def _unit(index: int) -> SparseVec:
    return {index: _ONE}


def _vec_add(u: SparseVec, v: SparseVec, sign: int = 1) -> SparseVec:
    out = defaultdict(Fraction, u)
    for key, value in v.items():
        out[key] += sign * value
    return _clean(out)


def _wedge(u: SparseVec, v: SparseVec, eta: Sequence[int]) -> SparseMat:
    """u∧v = u vᵀη - v uᵀη"""
    out: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for a, ua in u.items():
        for b, vb in v.items():
            out[(a, b)] += ua * vb * eta[b]
            out[(b, a)] -= vb * ua * eta[a]
    return _clean(out)


def _matmul(left: SparseMat, right: SparseMat) -> SparseMat:
    by_row: Dict[int, List[Tuple[int, Fraction]]] = defaultdict(list)
    for (r, c), value in right.items():
        by_row[r].append((c, value))
    out: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for (r, k), a in left.items():
        for c, b in by_row.get(k, ()):
            out[(r, c)] += a * b
    return _clean(out)


def _lincomb(*pairs: Tuple[Fraction, SparseMat]) -> SparseMat:
    out: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for coef, mat in pairs:
        for key, value in mat.items():
            out[key] += coef * value
    return _clean(out)


def _commutator(left: SparseMat, right: SparseMat) -> SparseMat:
    return _lincomb((_ONE, _matmul(left, right)), (-_ONE, _matmul(right, left)))


def _transpose(mat: SparseMat) -> SparseMat:
    return {(c, r): value for (r, c), value in mat.items()}


def _trace_product(left: SparseMat, right: SparseMat) -> Fraction:
    return sum((value * right.get((c, r), _ZERO) for (r, c), value in left.items()), _ZERO)


def _ratio(mat: SparseMat, target: SparseMat) -> Optional[Fraction]:
    """若 mat = λ·target 返回 λ"""
    if not target:
        return None
    key = next(iter(target))
    lam = mat.get(key, _ZERO) / target[key]
    if _lincomb((_ONE, mat), (-lam, target)):
        return None
    return lam


def _apply_rows(rows: SparseRows, coeffs: Sequence[Fraction], dim: int) -> Tuple[Fraction, ...]:
    return tuple(
        sum((value * coeffs[col] for col, value in rows.get(r, {}).items()), _ZERO)
        for r in range(dim)
    )


def _compose_rows(left: SparseRows, right: SparseRows) -> SparseRows:
    out: SparseRows = {}
    for r, row in left.items():
        acc: Dict[int, Fraction] = defaultdict(Fraction)
        for k, a in row.items():
            for c, b in right.get(k, {}).items():
                acc[c] += a * b
        cleaned = _clean(acc)
        if cleaned:
            out[r] = cleaned
    return out


def _rows_from_dense(dense: Sequence[Sequence[Fraction]]) -> SparseRows:
    return {
        r: {c: v for c, v in enumerate(row) if v != 0}
        for r, row in enumerate(dense)
        if any(v != 0 for v in row)
    }


def _dense_from_rows(rows: SparseRows, dim: int) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(rows.get(r, {}).get(c, _ZERO) for c in range(dim)) for r in range(dim))


def _identity_rows(dim: int) -> SparseRows:
    return {i: {i: _ONE} for i in range(dim)}


def _rational_rows_to_domain(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    matrix = sympy.Matrix([[to_sympy(v) for v in row] for row in rows])
    return DomainMatrix.from_Matrix(matrix).convert_to(QQ)


def _domain_to_fractions(dm: DomainMatrix) -> List[List[Fraction]]:
    matrix = dm.to_Matrix()
    return [[to_fraction(matrix[r, c]) for c in range(matrix.cols)] for r in range(matrix.rows)]


def rational_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """有理矩阵的零空间基（行化简后按自由列展开）"""
    live = [list(row) for row in rows if any(v != 0 for v in row)]
    if not live:
        return [[_ONE if c == f else _ZERO for c in range(ncols)] for f in range(ncols)]
    reduced, pivots = _rational_rows_to_domain(live).rref()
    rref = _domain_to_fractions(reduced)
    pivots = list(pivots)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [_ZERO] * ncols
        vec[free] = _ONE
        for r, p in enumerate(pivots):
            vec[p] = -rref[r][free]
        basis.append(vec)
    return basis


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    live = [list(row) for row in rows if any(v != 0 for v in row)]
    if not live:
        return 0
    return int(_rational_rows_to_domain(live).rank())


# ==================== 3. 矩阵实现 ====================
@dataclass(frozen=True, eq=False)
class MatrixRealization:
    """定义表示: 度规 η、每个标签的生成元矩阵、基点、σ 的共轭矩阵"""
    eta: Tuple[int, ...]
    gens: Tuple[SparseMat, ...]
    base_point: Tuple[int, ...]
    sigma_conjugator: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.eta)

    def matrix(self, index: int) -> sympy.ImmutableMatrix:
        """第 index 个生成元的精确矩阵"""
        n = self.size
        gen = self.gens[index]
        return sympy.ImmutableMatrix(n, n, lambda r, c: to_sympy(gen.get((r, c), _ZERO)))

    @cached_property
    def float_stack(self) -> np.ndarray:
        """shape (dim, N, N)"""
        stack = np.zeros((len(self.gens), self.size, self.size))
        for m, gen in enumerate(self.gens):
            for (r, c), value in gen.items():
                stack[m, r, c] = float(value)
        return stack


# ==================== 4. 代数容器 ====================
@dataclass(frozen=True, eq=False)
class Algebra:
    """so(2,n) 的不可变容器"""
    n: int
    dim: int
    labels: Tuple[BasisLabel, ...]
    rep: MatrixRealization
    struct: StructTable
    killing: Tuple[Tuple[Fraction, ...], ...]
    theta_mat: Tuple[Tuple[Fraction, ...], ...]
    sigma_mat: Tuple[Tuple[Fraction, ...], ...]
    proj: Mapping[Subspace, Tuple[Tuple[Fraction, ...], ...]]
    coord_rows: SparseRows = field(repr=False)

    # ---- 标签与元素 ----
    @cached_property
    def index(self) -> Dict[str, int]:
        return {str(label): i for i, label in enumerate(self.labels)}

    def index_of(self, label: Union[str, BasisLabel]) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise AlgebraMismatch(f"so(2,{self.n}) 中没有标签 {label}", {"n": self.n}) from None

    def basis(self, label: Union[str, BasisLabel]) -> "Element":
        coeffs = [_ZERO] * self.dim
        coeffs[self.index_of(label)] = _ONE
        return Element(self, coeffs, ScalarKind.EXACT)

    def element(self, mapping: Mapping[str, object]) -> "Element":
        """{标签: 系数} -> 元素；全部系数精确时为精确元素"""
        exact = all(is_exact(v) for v in mapping.values())
        coeffs: list = [_ZERO if exact else 0.0] * self.dim
        for label, value in mapping.items():
            i = self.index_of(label)
            coeffs[i] = coeffs[i] + (to_fraction(value) if exact else float(value))
        return Element(self, coeffs, ScalarKind.EXACT if exact else ScalarKind.FLOAT)

    def zero(self, kind: ScalarKind = ScalarKind.EXACT) -> "Element":
        if kind is ScalarKind.EXACT:
            return Element(self, [_ZERO] * self.dim, kind)
        return Element(self, np.zeros(self.dim), kind)

    def theta(self, x: "Element") -> "Element":
        return apply_involution(Involution.THETA, x)

    def sigma(self, x: "Element") -> "Element":
        return apply_involution(Involution.SIGMA, x)

    # ---- 稀疏缓存 ----
    @cached_property
    def killing_rows(self) -> SparseRows:
        return _rows_from_dense(self.killing)

    @cached_property
    def theta_rows(self) -> SparseRows:
        return _rows_from_dense(self.theta_mat)

    @cached_property
    def sigma_rows(self) -> SparseRows:
        return _rows_from_dense(self.sigma_mat)

    @cached_property
    def proj_rows(self) -> Dict[Subspace, SparseRows]:
        return {space: _rows_from_dense(mat) for space, mat in self.proj.items()}

    # ---- 浮点缓存 ----
    @cached_property
    def struct_float(self) -> np.ndarray:
        """C[i, j, m] = c_ij^m"""
        tensor = np.zeros((self.dim, self.dim, self.dim))
        for (i, j), terms in self.struct.items():
            for m, c in terms:
                tensor[i, j, m] = float(c)
        return tensor

    @cached_property
    def killing_float(self) -> np.ndarray:
        return np.array(self.killing, dtype=float)

    @cached_property
    def theta_float(self) -> np.ndarray:
        return np.array(self.theta_mat, dtype=float)

    @cached_property
    def sigma_float(self) -> np.ndarray:
        return np.array(self.sigma_mat, dtype=float)

    @cached_property
    def proj_float(self) -> Dict[Subspace, np.ndarray]:
        return {space: np.array(mat, dtype=float) for space, mat in self.proj.items()}

    # ---- 矩阵 <-> 坐标 ----
    def coords_of_matrix(self, mat: SparseMat) -> Tuple[Fraction, ...]:
        """so(η) 中矩阵在根基下的坐标，读取 ηX 的上三角"""
        eta = self.rep.eta
        pairs = _upper_pairs(self.rep.size)
        vec = [eta[r] * mat.get((r, c), _ZERO) for r, c in pairs]
        return _apply_rows(self.coord_rows, vec, self.dim)

    def matrix_of(self, x: "Element") -> SparseMat:
        """精确元素的定义表示矩阵"""
        if not x.is_exact:
            raise AlgebraMismatch("matrix_of 需要精确元素；浮点元素请用 float_matrix_of")
        return _lincomb(*((c, self.rep.gens[i]) for i, c in x.nonzero()))

    def float_matrix_of(self, x: "Element") -> np.ndarray:
        return np.einsum("m,mrc->rc", x.as_array(), self.rep.float_stack)

    def wedge(self, a: int, b: int) -> "Element":
        """坐标向量 e_a∧e_b 对应的精确元素"""
        size = self.rep.size
        if not (0 <= a < size and 0 <= b < size) or a == b:
            raise AlgebraMismatch(f"无效的坐标对 ({a}, {b})，矩阵阶数为 {size}")
        mat = _wedge(_unit(a), _unit(b), self.rep.eta)
        return Element(self, self.coords_of_matrix(mat), ScalarKind.EXACT)


def _upper_pairs(size: int) -> List[Tuple[int, int]]:
    return [(r, c) for r in range(size) for c in range(r + 1, size)]


# ==================== 5. 元素 ====================
Number = Union[int, float, Fraction]


class Element:
    """根基下的系数向量，精确（Fraction）或浮点（binary64）"""

    __slots__ = ("algebra", "kind", "_coeffs")

    def __init__(self, algebra: Algebra, coeffs, kind: Optional[ScalarKind] = None):
        if kind is None:
            kind = ScalarKind.EXACT if all(is_exact(c) for c in coeffs) else ScalarKind.FLOAT
        if len(coeffs) != algebra.dim:
            raise AlgebraMismatch(
                f"系数长度 {len(coeffs)} 与代数维数 {algebra.dim} 不一致", {"n": algebra.n}
            )
        self.algebra = algebra
        self.kind = kind
        if kind is ScalarKind.EXACT:
            self._coeffs = tuple(to_fraction(c) for c in coeffs)
        else:
            arr = np.array(coeffs, dtype=float)
            arr.setflags(write=False)
            self._coeffs = arr

    # ---- 基本属性 ----
    @property
    def is_exact(self) -> bool:
        return self.kind is ScalarKind.EXACT

    @property
    def coeffs(self):
        return self._coeffs

    def as_array(self) -> np.ndarray:
        if self.is_exact:
            return np.array([float(c) for c in self._coeffs])
        return self._coeffs

    def lower(self) -> "Element":
        """显式降为浮点"""
        if not self.is_exact:
            return self
        return Element(self.algebra, self.as_array(), ScalarKind.FLOAT)

    def nonzero(self) -> List[Tuple[int, Number]]:
        if self.is_exact:
            return [(i, c) for i, c in enumerate(self._coeffs) if c != 0]
        return [(int(i), float(self._coeffs[i])) for i in np.flatnonzero(self._coeffs)]

    def coefficient(self, label: Union[str, BasisLabel]) -> Number:
        value = self._coeffs[self.algebra.index_of(label)]
        return value if self.is_exact else float(value)

    def terms(self) -> Dict[str, Number]:
        return {str(self.algebra.labels[i]): c for i, c in self.nonzero()}

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.is_exact:
            return all(c == 0 for c in self._coeffs)
        return bool(np.max(np.abs(self._coeffs), initial=0.0) <= tol)

    def is_close(self, other: "Element", tol: float = 1e-10) -> bool:
        _check_same_algebra(self, other)
        return bool(np.max(np.abs(self.as_array() - other.as_array()), initial=0.0) <= tol)

    # ---- 算术 ----
    def _combine(self, other: "Element", sign: int) -> "Element":
        _check_compatible(self, other)
        if self.is_exact:
            return Element(
                self.algebra,
                [a + sign * b for a, b in zip(self._coeffs, other._coeffs)],
                ScalarKind.EXACT,
            )
        return Element(self.algebra, self._coeffs + sign * other._coeffs, ScalarKind.FLOAT)

    def __add__(self, other: "Element") -> "Element":
        return self._combine(other, 1)

    def __sub__(self, other: "Element") -> "Element":
        return self._combine(other, -1)

    def __neg__(self) -> "Element":
        return self * -1

    def __mul__(self, scalar) -> "Element":
        if isinstance(scalar, Element):
            return NotImplemented
        if self.is_exact:
            if not is_exact(scalar):
                raise AlgebraMismatch("精确元素不能直接乘浮点数，请先 lower()")
            s = to_fraction(scalar)
            return Element(self.algebra, [s * c for c in self._coeffs], ScalarKind.EXACT)
        return Element(self.algebra, self._coeffs * float(scalar), ScalarKind.FLOAT)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Element":
        if self.is_exact and is_exact(scalar):
            return self * (1 / to_fraction(scalar))
        return self * (1.0 / float(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra.n != other.algebra.n or self.kind is not other.kind:
            return False
        if self.is_exact:
            return self._coeffs == other._coeffs
        return bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self) -> int:
        if self.is_exact:
            return hash((self.algebra.n, self._coeffs))
        return hash((self.algebra.n, tuple(self._coeffs.tolist())))

    def __repr__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        return " + ".join(f"{c}·{label}" for label, c in terms.items())


def _check_same_algebra(x: Element, y: Element) -> None:
    if x.algebra.n != y.algebra.n:
        raise AlgebraMismatch(
            f"元素来自不同的代数: so(2,{x.algebra.n}) 与 so(2,{y.algebra.n})",
            {"left": x.algebra.n, "right": y.algebra.n},
        )


def _check_compatible(x: Element, y: Element) -> None:
    _check_same_algebra(x, y)
    if x.kind is not y.kind:
        raise AlgebraMismatch(
            f"标量类型不一致: {x.kind.value} 与 {y.kind.value}，请显式 lower()",
            {"left": x.kind.value, "right": y.kind.value},
        )


# ==================== 6. 构造 ====================
def _raw_vectors(n: int) -> Dict[str, SparseVec]:
    e = [_unit(a) for a in range(n + 2)]
    return {
        "f+": _vec_add(e[1], e[2]),
        "f-": _vec_add(e[1], e[2], -1),
        "g+": _vec_add(e[0], e[3]),
        "g-": _vec_add(e[0], e[3], -1),
    }


def _normalize(mat: SparseMat, produced: SparseMat, target: SparseMat, what: str) -> Fraction:
    """
    produced 为 mat 的二次表达式，要求 produced = target
    返回缩放因子 μ，使 μ² · produced = target
    """
    lam = _ratio(produced, target)
    if lam is None or lam <= 0:
        raise NormalizationFailure(f"锚定关系 {what} 无法通过实数缩放满足", {"ratio": str(lam)})
    root = rational_sqrt(1 / lam)
    if root is None:
        raise NormalizationFailure(f"锚定关系 {what} 需要无理缩放", {"ratio": str(lam)})
    return root


def _generators(n: int, eta: Tuple[int, ...]) -> Dict[str, SparseMat]:
    """按锚定关系归一化后的全部生成元，键为标签字符串"""
    vec = _raw_vectors(n)
    e = [_unit(a) for a in range(n + 2)]

    def theta(m: SparseMat) -> SparseMat:
        return _lincomb((-_ONE, _transpose(m)))

    j1 = _wedge(e[2], e[1], eta)
    j2 = _wedge(e[3], e[0], eta)
    h2 = _lincomb((Fraction(4), j1), (Fraction(4), j2))
    h1 = _lincomb((Fraction(4), j1), (Fraction(-4), j2))

    xpp = _wedge(vec["f+"], vec["g+"], eta)
    mu = _normalize(xpp, _commutator(theta(xpp), xpp), h2, "[θX++, X++] = 4(J1+J2)")
    xpp = _lincomb((mu, xpp))

    xpm = _wedge(vec["f+"], vec["g-"], eta)
    mu = _normalize(xpm, _commutator(theta(xpm), xpm), h1, "[θX+-, X+-] = 4(J1-J2)")
    xpm = _lincomb((mu, xpm))

    gens = {
        "J1": j1,
        "J2": j2,
        "X++": xpp,
        "X+-": xpm,
        "X-+": theta(xpm),
        "X--": theta(xpp),
    }

    for k in range(3, n + 1):
        x0p = _wedge(vec["g+"], e[k + 1], eta)
        xp0 = _lincomb((_HALF, _commutator(x0p, xpm)))
        mu = _normalize(x0p, _commutator(x0p, xp0), xpp, f"[X0+:{k}, X+0:{k}] = X++")
        x0p = _lincomb((mu, x0p))
        xp0 = _lincomb((_HALF, _commutator(x0p, xpm)))
        gens[f"X0+:{k}"] = x0p
        gens[f"X0-:{k}"] = theta(x0p)
        gens[f"X+0:{k}"] = xp0
        gens[f"X-0:{k}"] = theta(xp0)

    for i, j in itertools.combinations(range(3, n + 1), 2):
        gens[f"R:{i}:{j}"] = _lincomb((_HALF, _commutator(gens[f"X0+:{i}"], gens[f"X0-:{j}"])))

    return gens


def _check_roots(labels: Sequence[BasisLabel], gens: Sequence[SparseMat], n: int) -> None:
    """根特征值与根空间维数"""
    j1, j2 = gens[0], gens[1]
    counts: Dict[Tuple[int, int], int] = defaultdict(int)
    for label, gen in zip(labels, gens):
        alpha, beta = label.root
        for h, eig, name in ((j1, alpha, "J1"), (j2, beta, "J2")):
            if _lincomb((_ONE, _commutator(h, gen)), (-Fraction(eig), gen)):
                raise NormalizationFailure(
                    f"{label} 不是 ad({name}) 的特征向量（期望特征值 {eig}）", {"label": str(label)}
                )
        counts[label.root] += 1

    expected = {(a, b): 1 for a in (1, -1) for b in (1, -1)}
    for r in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        expected[r] = n - 2
    expected[(0, 0)] = 2 + (n - 2) * (n - 3) // 2
    for root, dim in expected.items():
        if counts.get(root, 0) != dim:
            raise NormalizationFailure(
                f"根空间 {root} 的维数为 {counts.get(root, 0)}，期望 {dim}", {"root": root}
            )


def build_algebra(n: int) -> Algebra:
    """
    构造 so(2,n)

    参数:
        n: 维数参数，n >= 2（对应 AdS_{n+1}）

    返回:
        完整填充的 Algebra
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidDimension(f"so(2,n) 要求整数 n >= 2，收到 {n!r}", {"n": n})

    start = time.time()
    size = n + 2
    dim = (n + 1) * (n + 2) // 2
    eta = (1, 1) + (-1,) * n
    labels = make_labels(n)
    if len(labels) != dim:
        raise NormalizationFailure(f"标签数 {len(labels)} 与维数 {dim} 不一致")

    named = _generators(n, eta)
    gens = tuple(named[str(label)] for label in labels)

    for label, gen in zip(labels, gens):
        # Xᵀη + ηX = 0
        lhs = {(r, c): v * eta[c] for (r, c), v in _transpose(gen).items()}
        rhs = {(r, c): eta[r] * v for (r, c), v in gen.items()}
        if _lincomb((_ONE, lhs), (_ONE, rhs)):
            raise NormalizationFailure(f"{label} 不保持度规 η")

    _check_roots(labels, gens, n)

    # 坐标映射: X ↦ (ηX)_{rc}, r<c
    pairs = _upper_pairs(size)
    coord_matrix = [[eta[r] * gen.get((r, c), _ZERO) for gen in gens] for r, c in pairs]
    try:
        inverse = _domain_to_fractions(_rational_rows_to_domain(coord_matrix).inv())
    except Exception as e:
        raise NormalizationFailure(f"生成元线性相关: {e}") from e
    coord_rows = _rows_from_dense(inverse)

    rep = MatrixRealization(
        eta=eta,
        gens=gens,
        base_point=(1,) + (0,) * (size - 1),
        sigma_conjugator=(1,) + (-1,) * (size - 1),
    )

    def coords(mat: SparseMat) -> Tuple[Fraction, ...]:
        vec = [eta[r] * mat.get((r, c), _ZERO) for r, c in pairs]
        return _apply_rows(coord_rows, vec, dim)

    struct: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
    for i, j in itertools.combinations(range(dim), 2):
        y = coords(_commutator(gens[i], gens[j]))
        terms = tuple((m, c) for m, c in enumerate(y) if c != 0)
        if terms:
            struct[(i, j)] = terms
            struct[(j, i)] = tuple((m, -c) for m, c in terms)

    killing = _killing_from_struct(struct, dim)

    # 对合: θ(X) = -Xᵀ, σ(X) = S X S
    s = rep.sigma_conjugator
    theta_cols = [coords(_lincomb((-_ONE, _transpose(g)))) for g in gens]
    sigma_cols = [coords({(r, c): s[r] * v * s[c] for (r, c), v in g.items()}) for g in gens]
    theta_mat = tuple(tuple(theta_cols[c][r] for c in range(dim)) for r in range(dim))
    sigma_mat = tuple(tuple(sigma_cols[c][r] for c in range(dim)) for r in range(dim))

    proj = _projectors(theta_mat, sigma_mat, dim)

    alg = Algebra(
        n=n,
        dim=dim,
        labels=labels,
        rep=rep,
        struct=struct,
        killing=killing,
        theta_mat=theta_mat,
        sigma_mat=sigma_mat,
        proj=proj,
        coord_rows=coord_rows,
    )

    duration = (time.time() - start) * 1000
    log_performance("build_algebra", duration, n=n, dim=dim)
    logger.debug(f"so(2,{n}) 构造完成: dim={dim}, 非零结构常数对={len(struct) // 2}")
    return alg


def _killing_from_struct(struct: StructTable, dim: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """B_ij = tr(ad b_i · ad b_j)"""
    ad: List[Dict[Tuple[int, int], Fraction]] = [dict() for _ in range(dim)]
    for (i, l), terms in struct.items():
        for m, c in terms:
            ad[i][(m, l)] = c
    killing = [[_ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            value = _trace_product(ad[i], ad[j])
            killing[i][j] = value
            killing[j][i] = value
    return tuple(tuple(row) for row in killing)


def _projectors(theta_mat, sigma_mat, dim: int) -> Dict[Subspace, Tuple[Tuple[Fraction, ...], ...]]:
    """X_H = ½(X+σX), X_Q = ½(X-σX), X_K = ½(X+θX), X_P = ½(X-θX)"""
    theta = _rows_from_dense(theta_mat)
    sigma = _rows_from_dense(sigma_mat)

    def half(sign: int, inv: SparseRows) -> SparseRows:
        out: SparseRows = {}
        for r in range(dim):
            acc: Dict[int, Fraction] = defaultdict(Fraction)
            acc[r] += _HALF
            for c, v in inv.get(r, {}).items():
                acc[c] += sign * _HALF * v
            cleaned = _clean(acc)
            if cleaned:
                out[r] = cleaned
        return out

    base = {
        Subspace.H: half(1, sigma),
        Subspace.Q: half(-1, sigma),
        Subspace.K: half(1, theta),
        Subspace.P: half(-1, theta),
    }
    base[Subspace.HK] = _compose_rows(base[Subspace.H], base[Subspace.K])
    base[Subspace.HP] = _compose_rows(base[Subspace.H], base[Subspace.P])
    base[Subspace.QK] = _compose_rows(base[Subspace.Q], base[Subspace.K])
    base[Subspace.QP] = _compose_rows(base[Subspace.Q], base[Subspace.P])
    return {space: _dense_from_rows(rows, dim) for space, rows in base.items()}


@lru_cache(maxsize=None)
def get_algebra(n: int) -> Algebra:
    """带缓存的 build_algebra（Algebra 不可变）"""
    return build_algebra(n)


# ==================== 7. 基本运算 ====================
def bracket(x: Element, y: Element) -> Element:
    """李括号 [x, y]"""
    _check_compatible(x, y)
    alg = x.algebra
    if x.is_exact:
        out: Dict[int, Fraction] = defaultdict(Fraction)
        ys = y.nonzero()
        for i, xi in x.nonzero():
            for j, yj in ys:
                for m, c in alg.struct.get((i, j), ()):
                    out[m] += xi * yj * c
        return Element(alg, [out.get(m, _ZERO) for m in range(alg.dim)], ScalarKind.EXACT)
    value = np.einsum("i,j,ijm->m", x.as_array(), y.as_array(), alg.struct_float)
    return Element(alg, value, ScalarKind.FLOAT)


def ad_matrix(x: Element):
    """
    ad(x) 在根基下的矩阵，第 j 列为 [x, b_j] 的坐标
    精确元素返回 sympy.Matrix，浮点元素返回 numpy 数组
    """
    alg = x.algebra
    if x.is_exact:
        entries: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
        for i, xi in x.nonzero():
            for j in range(alg.dim):
                for m, c in alg.struct.get((i, j), ()):
                    entries[(m, j)] += xi * c
        return sympy.Matrix(alg.dim, alg.dim, lambda r, c: to_sympy(entries.get((r, c), _ZERO)))
    return np.einsum("i,ijm->mj", x.as_array(), alg.struct_float)


def killing(x: Element, y: Element) -> Number:
    """Killing 型 B(x, y)"""
    _check_compatible(x, y)
    alg = x.algebra
    if x.is_exact:
        total = _ZERO
        yc = y.coeffs
        for i, xi in x.nonzero():
            for j, kij in alg.killing_rows.get(i, {}).items():
                if yc[j] != 0:
                    total += xi * kij * yc[j]
        return total
    return float(x.as_array() @ alg.killing_float @ y.as_array())


def norm2(x: Element) -> Number:
    """平方范数 -B(x,x)/(2n)，洛伦兹号差下可为负"""
    value = killing(x, x)
    if x.is_exact:
        return -value / (2 * x.algebra.n)
    return -value / (2.0 * x.algebra.n)


def apply_involution(which: Union[Involution, str], x: Element) -> Element:
    """应用 θ、σ 或 σθ"""
    which = Involution(which)
    alg = x.algebra
    if x.is_exact:
        coeffs = x.coeffs
        if which in (Involution.THETA, Involution.SIGMA_THETA):
            coeffs = _apply_rows(alg.theta_rows, coeffs, alg.dim)
        if which in (Involution.SIGMA, Involution.SIGMA_THETA):
            coeffs = _apply_rows(alg.sigma_rows, coeffs, alg.dim)
        return Element(alg, coeffs, ScalarKind.EXACT)
    vec = x.as_array()
    if which in (Involution.THETA, Involution.SIGMA_THETA):
        vec = alg.theta_float @ vec
    if which in (Involution.SIGMA, Involution.SIGMA_THETA):
        vec = alg.sigma_float @ vec
    return Element(alg, vec, ScalarKind.FLOAT)


def project(space: Union[Subspace, str], x: Element) -> Element:
    """投影到 H、Q、K、P 或其交集"""
    space = Subspace(space)
    alg = x.algebra
    if x.is_exact:
        return Element(alg, _apply_rows(alg.proj_rows[space], x.coeffs, alg.dim), ScalarKind.EXACT)
    return Element(alg, alg.proj_float[space] @ x.as_array(), ScalarKind.FLOAT)


@lru_cache(maxsize=None)
def compact_center(alg: Algebra) -> Tuple[Element, ...]:
    """Z(K) 的精确基；n=2 时二维，n>=3 时一维"""
    candidates: List[Element] = []
    seen = set()
    for i in range(alg.dim):
        b = alg.basis(alg.labels[i])
        k = b + alg.theta(b)
        if k.is_zero():
            continue
        lead = next(c for c in k.coeffs if c != 0)
        key = tuple(c / lead for c in k.coeffs)
        if key in seen:
            continue
        seen.add(key)
        candidates.append(k)

    rows: List[List[Fraction]] = []
    brackets = [[bracket(a, b).coeffs for a in candidates] for b in candidates]
    for per_b in brackets:
        for m in range(alg.dim):
            rows.append([per_b[a][m] for a in range(len(candidates))])
    center = []
    for vec in rational_nullspace(rows, len(candidates)):
        z = alg.zero()
        for coef, k in zip(vec, candidates):
            if coef != 0:
                z = z + k * coef
        center.append(z)
    return tuple(center)


# ==================== 8. 验证套件 ====================
def _struct_apply(alg: Algebra, i: int, vec: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    """[b_i, Σ v_m b_m]"""
    out: Dict[int, Fraction] = defaultdict(Fraction)
    for m, vm in vec.items():
        for p, c in alg.struct.get((i, m), ()):
            out[p] += vm * c
    return _clean(out)


def _fmt_terms(alg: Algebra, vec: Mapping[int, Fraction]) -> str:
    return ", ".join(f"{alg.labels[m]}:{fraction_str(v)}" for m, v in sorted(vec.items()))


def _relations(alg: Algebra) -> Iterator[Tuple[str, str, Element, Element]]:
    """已知对易关系表: (族, 描述, 左边, 右边)"""
    B = alg.basis
    br = bracket
    th = alg.theta
    zero = alg.zero()
    j1, j2 = B("J1"), B("J2")
    h1, h2 = j1 - j2, j1 + j2
    xpp, xpm, xmp, xmm = B("X++"), B("X+-"), B("X-+"), B("X--")
    slices = list(range(3, alg.n + 1))

    yield "iwasawa", "[J1,X++]=X++", br(j1, xpp), xpp
    yield "iwasawa", "[J2,X++]=X++", br(j2, xpp), xpp
    yield "iwasawa", "[J1,X+-]=X+-", br(j1, xpm), xpm
    yield "iwasawa", "[J2,X+-]=-X+-", br(j2, xpm), -xpm
    yield "iwasawa", "[X++,X+-]=0", br(xpp, xpm), zero
    for k in slices:
        x0p, xp0 = B(f"X0+:{k}"), B(f"X+0:{k}")
        yield "iwasawa", f"[J1,X+0:{k}]=X+0:{k}", br(j1, xp0), xp0
        yield "iwasawa", f"[J2,X0+:{k}]=X0+:{k}", br(j2, x0p), x0p
        yield "iwasawa", f"[J1,X0+:{k}]=0", br(j1, x0p), zero
        yield "iwasawa", f"[J2,X+0:{k}]=0", br(j2, xp0), zero
        yield "iwasawa", f"[X0+:{k},X+-]=2X+0:{k}", br(x0p, xpm), xp0 * 2
        yield "iwasawa", f"[X++,X0+:{k}]=0", br(xpp, x0p), zero
        yield "iwasawa", f"[X++,X+0:{k}]=0", br(xpp, xp0), zero
        yield "iwasawa", f"[X+-,X+0:{k}]=0", br(xpm, xp0), zero
        for k2 in slices:
            delta = 1 if k == k2 else 0
            yield "iwasawa", f"[X0+:{k},X+0:{k2}]=δX++", br(x0p, B(f"X+0:{k2}")), xpp * delta
            yield "iwasawa", f"[X0+:{k},X0+:{k2}]=0", br(x0p, B(f"X0+:{k2}")), zero
            yield "iwasawa", f"[X+0:{k},X+0:{k2}]=0", br(xp0, B(f"X+0:{k2}")), zero

    yield "pyatetskii_shapiro", "[H1,X+-]=2X+-", br(h1, xpm), xpm * 2
    yield "pyatetskii_shapiro", "[H2,X++]=2X++", br(h2, xpp), xpp * 2
    yield "pyatetskii_shapiro", "[H1,X++]=0", br(h1, xpp), zero
    yield "pyatetskii_shapiro", "[H2,X+-]=0", br(h2, xpm), zero
    for k in slices:
        x0p, xp0 = B(f"X0+:{k}"), B(f"X+0:{k}")
        yield "pyatetskii_shapiro", f"[H2,X0+:{k}]=X0+:{k}", br(h2, x0p), x0p
        yield "pyatetskii_shapiro", f"[H2,X+0:{k}]=X+0:{k}", br(h2, xp0), xp0
        yield "pyatetskii_shapiro", f"[H1,X0+:{k}]=-X0+:{k}", br(h1, x0p), -x0p
        yield "pyatetskii_shapiro", f"[H1,X+0:{k}]=X+0:{k}", br(h1, xp0), xp0
        yield "pyatetskii_shapiro", f"[X+-,X0+:{k}]=-2X+0:{k}", br(xpm, x0p), xp0 * -2

    yield "theta", "θX++=X--", th(xpp), xmm
    yield "theta", "θX+-=X-+", th(xpm), xmp
    yield "theta", "[θX++,X++]=4(J1+J2)", br(th(xpp), xpp), h2 * 4
    yield "theta", "[θX+-,X+-]=4(J1-J2)", br(th(xpm), xpm), h1 * 4
    for k in slices:
        x0p, xp0 = B(f"X0+:{k}"), B(f"X+0:{k}")
        yield "theta", f"[θX+0:{k},X++]=2X0+:{k}", br(th(xp0), xpp), x0p * 2
        yield "theta", f"[θX0+:{k},X0+:{k}]=2J2", br(th(x0p), x0p), j2 * 2
        yield "theta", f"[θX++,X0+:{k}]=2X-0:{k}", br(th(xpp), x0p), B(f"X-0:{k}") * 2
        yield "theta", f"[θX+-,X+0:{k}]=2X0+:{k}", br(th(xpm), xp0), x0p * 2

    for i in slices:
        for j in slices:
            delta = 1 if i == j else 0
            x0p_i, xp0_i = B(f"X0+:{i}"), B(f"X+0:{i}")
            yield "higher_root", f"[X0+:{i},X-0:{j}]=-δX-+", br(x0p_i, B(f"X-0:{j}")), xmp * -delta
            yield "higher_root", f"[X0+:{i},X+0:{j}]=δX++", br(x0p_i, B(f"X+0:{j}")), xpp * delta
            yield "higher_root", f"[X+0:{i},X0+:{j}]=-δX++", br(xp0_i, B(f"X0+:{j}")), xpp * -delta
            yield "higher_root", f"[X+0:{i},X0-:{j}]=δX+-", br(xp0_i, B(f"X0-:{j}")), xpm * delta

    for k in slices:
        x0p, xp0 = B(f"X0+:{k}"), B(f"X+0:{k}")
        yield "derived", f"[θX0+:{k},X++]=-2X+0:{k}", br(th(x0p), xpp), xp0 * -2
        yield "derived", f"[θX+0:{k},X+-]=-2X0-:{k}", br(th(xp0), xpm), B(f"X0-:{k}") * -2
        yield "derived", f"[θX++,X+0:{k}]=-2X0-:{k}", br(th(xpp), xp0), B(f"X0-:{k}") * -2
        yield "derived", f"[X-+,X0-:{k}]=-2X-0:{k}", br(xmp, B(f"X0-:{k}")), B(f"X-0:{k}") * -2

    for i, j in itertools.combinations(slices, 2):
        r = B(f"R:{i}:{j}")
        yield "compact", f"[X0+:{i},X0-:{j}]=2R:{i}:{j}", br(B(f"X0+:{i}"), B(f"X0-:{j}")), r * 2
        yield "compact", f"[X0-:{i},X0+:{j}]=2R:{i}:{j}", br(B(f"X0-:{i}"), B(f"X0+:{j}")), r * 2
        yield "compact", f"[R:{i}:{j},X+0:{j}]=-X+0:{i}", br(r, B(f"X+0:{j}")), -B(f"X+0:{i}")
        yield "compact", f"[R:{i}:{j},X0+:{j}]=-X0+:{i}", br(r, B(f"X0+:{j}")), -B(f"X0+:{i}")
        yield "compact", f"[R:{i}:{j},X0+:{i}]=X0+:{j}", br(r, B(f"X0+:{i}")), B(f"X0+:{j}")
        yield "compact", f"[R:{i}:{j},X++]=0", br(r, xpp), zero
        yield "compact", f"[R:{i}:{j},X+-]=0", br(r, xpm), zero
        for k in slices:
            if k in (i, j):
                continue
            yield "compact", f"[R:{i}:{j},X+0:{k}]=0", br(r, B(f"X+0:{k}")), zero
            yield "compact", f"[R:{i}:{j},X0+:{k}]=0", br(r, B(f"X0+:{k}")), zero


def verify_algebra(alg: Algebra) -> List[CheckResult]:
    """对单个代数运行精确检查，失败作为数据返回"""
    n, dim = alg.n, alg.dim
    results: List[CheckResult] = []

    def record(name: str, counterexample: Optional[str], detail: Optional[str] = None) -> None:
        results.append(CheckResult(
            suite="structure", name=name, n=n,
            passed=counterexample is None, counterexample=counterexample, detail=detail,
        ))

    # 反对称
    bad = None
    for (i, j), terms in alg.struct.items():
        partner = dict(alg.struct.get((j, i), ()))
        if dict(terms) != {m: -c for m, c in partner.items()}:
            bad = f"({alg.labels[i]}, {alg.labels[j]})"
            break
    record("antisymmetry", bad)

    # Jacobi
    bad = None
    for i, j, k in itertools.combinations(range(dim), 3):
        total: Dict[int, Fraction] = defaultdict(Fraction)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, v in _struct_apply(alg, a, dict(alg.struct.get((b, c), ()))).items():
                total[m] += v
        total = _clean(total)
        if total:
            bad = f"({alg.labels[i]}, {alg.labels[j]}, {alg.labels[k]}) -> {_fmt_terms(alg, total)}"
            break
    record("jacobi", bad, f"{dim * (dim - 1) * (dim - 2) // 6} triples")

    # ad 不变性: B([z,x],y) + B(x,[z,y]) = 0
    bad = None
    K = alg.killing_rows
    for z in range(dim):
        for x in range(dim):
            zx = alg.struct.get((z, x), ())
            for y in range(dim):
                zy = alg.struct.get((z, y), ())
                value = sum((c * K.get(m, {}).get(y, _ZERO) for m, c in zx), _ZERO)
                value += sum((c * K.get(x, {}).get(m, _ZERO) for m, c in zy), _ZERO)
                if value != 0:
                    bad = f"z={alg.labels[z]}, x={alg.labels[x]}, y={alg.labels[y]}: {fraction_str(value)}"
                    break
            if bad:
                break
        if bad:
            break
    record("ad_invariance", bad)

    # B = n·tr 在定义表示中
    bad = None
    gens = alg.rep.gens
    for i in range(dim):
        for j in range(i, dim):
            expected = n * _trace_product(gens[i], gens[j])
            if alg.killing[i][j] != expected or alg.killing[j][i] != alg.killing[i][j]:
                bad = f"({alg.labels[i]}, {alg.labels[j]}): {alg.killing[i][j]} != {expected}"
                break
        if bad:
            break
    record("killing_trace", bad)

    j2 = alg.index_of("J2")
    value = alg.killing[j2][j2]
    record("killing_j2", None if value == 2 * n else f"B(J2,J2)={value}, expected {2 * n}")

    # 对合
    ident = _identity_rows(dim)
    th, sg = alg.theta_rows, alg.sigma_rows
    bad = []
    if _compose_rows(th, th) != ident:
        bad.append("θ² != 1")
    if _compose_rows(sg, sg) != ident:
        bad.append("σ² != 1")
    if _compose_rows(th, sg) != _compose_rows(sg, th):
        bad.append("θσ != σθ")
    record("involutions", "; ".join(bad) or None)

    # 投影
    bad = []
    for a, b in ((Subspace.H, Subspace.Q), (Subspace.K, Subspace.P)):
        pa, pb = alg.proj_rows[a], alg.proj_rows[b]
        total_rows: SparseRows = {}
        for r in range(dim):
            acc = defaultdict(Fraction, pa.get(r, {}))
            for c, v in pb.get(r, {}).items():
                acc[c] += v
            cleaned = _clean(acc)
            if cleaned:
                total_rows[r] = cleaned
        if total_rows != ident:
            bad.append(f"P_{a.value}+P_{b.value} != 1")
    for space, rows in alg.proj_rows.items():
        if _compose_rows(rows, rows) != rows:
            bad.append(f"P_{space.value} 非幂等")
    record("projectors", "; ".join(bad) or None)

    # σ 固定 e0 的稳定子，θ 固定紧部分
    bad = None
    for space, check in ((Subspace.H, "stabilizer"), (Subspace.K, "antisymmetric")):
        rows = alg.proj_rows[space]
        for col in range(dim):
            vec = {r: rows[r][col] for r in rows if col in rows[r]}
            if not vec:
                continue
            mat = _lincomb(*((v, gens[m]) for m, v in vec.items()))
            if check == "stabilizer" and any(c == 0 and v != 0 for (r, c), v in mat.items()):
                bad = f"P_H({alg.labels[col]}) 不固定基点"
            if check == "antisymmetric" and _lincomb((_ONE, mat), (_ONE, _transpose(mat))):
                bad = f"P_K({alg.labels[col]}) 不是反对称矩阵"
            if bad:
                break
        if bad:
            break
    record("involution_fixed_parts", bad)

    # 已知关系
    families: Dict[str, Optional[str]] = {}
    counts: Dict[str, int] = defaultdict(int)
    for family, description, lhs, rhs in _relations(alg):
        counts[family] += 1
        families.setdefault(family, None)
        if families[family] is None and lhs != rhs:
            families[family] = f"{description}: got {lhs!r}"
    for family, bad in families.items():
        record(f"relations:{family}", bad, f"{counts[family]} relations")

    # Killing 正交分解 Z_K(A) ⊕ A ⊕ Ñ2 ⊕ Ñk
    bad = None
    for i in range(dim):
        for j, v in alg.killing_rows.get(i, {}).items():
            if alg.labels[i].block != alg.labels[j].block:
                bad = f"B({alg.labels[i]}, {alg.labels[j]}) = {fraction_str(v)}"
                break
        if bad:
            break
    record("killing_orthogonal_blocks", bad)

    # 紧部分的中心
    center = compact_center(alg)
    expected_dim = 2 if n == 2 else 1
    record(
        "compact_center",
        None if len(center) == expected_dim else f"dim Z(K) = {len(center)}, expected {expected_dim}",
    )

    return results


def verify_structure(n_max: int) -> List[CheckResult]:
    """
    对 n = 2..n_max 运行结构检查

    参数:
        n_max: 最大的 n

    返回:
        全部检查结果（失败作为数据，不抛异常）
    """
    if n_max < 2:
        raise InvalidDimension(f"n_max 必须 >= 2，收到 {n_max}")
    start = time.time()
    results: List[CheckResult] = []
    for n in range(2, n_max + 1):
        results.extend(verify_algebra(get_algebra(n)))
    log_performance("verify_structure", (time.time() - start) * 1000, n_max=n_max)
    log_checks("structure", results, n_max=n_max)
    return results


def with_perturbed_constant(
    alg: Algebra, left: str, right: str, target: str, delta: Fraction = _ONE
) -> Algebra:
    """
    故障注入: 把 c_{left,right}^{target} 加 delta（同时保持反对称）
    只用于测试验证套件能否发现错误
    """
    i, j, m = alg.index_of(left), alg.index_of(right), alg.index_of(target)
    struct = dict(alg.struct)
    for a, b, sign in ((i, j, 1), (j, i, -1)):
        terms = defaultdict(Fraction, dict(struct.get((a, b), ())))
        terms[m] += sign * to_fraction(delta)
        cleaned = tuple(sorted((k, v) for k, v in terms.items() if v != 0))
        if cleaned:
            struct[(a, b)] = cleaned
        else:
            struct.pop((a, b), None)
    logger.debug(f"注入结构常数扰动: [{left},{right}] 的 {target} 分量 += {delta}")
    return replace(alg, struct=struct)


# ==================== 9. 导出 ====================
def dump_structure(alg: Algebra) -> dict:
    """结构常数 JSON"""
    brackets = []
    for i, j in itertools.combinations(range(alg.dim), 2):
        terms = alg.struct.get((i, j))
        if not terms:
            continue
        brackets.append({
            "i": i,
            "j": j,
            "terms": [{"m": m, "num": c.numerator, "den": c.denominator} for m, c in terms],
        })
    return {
        "n": alg.n,
        "labels": [str(label) for label in alg.labels],
        "brackets": brackets,
        "killing": [[fraction_str(v) for v in row] for row in alg.killing],
    }


__all__ = [
    "ScalarKind",
    "Involution",
    "Subspace",
    "BasisLabel",
    "make_labels",
    "MatrixRealization",
    "Algebra",
    "Element",
    "build_algebra",
    "get_algebra",
    "bracket",
    "ad_matrix",
    "killing",
    "norm2",
    "apply_involution",
    "project",
    "compact_center",
    "rational_nullspace",
    "rational_rank",
    "verify_algebra",
    "verify_structure",
    "with_perturbed_constant",
    "dump_structure",
]
