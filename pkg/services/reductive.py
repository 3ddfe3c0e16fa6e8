"""
约化分解
构造 Q 的基 {q_i}、H 的基、Killing 正交基 𝔅、交织元，并运行约化定理检查
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from infra.config import config
from infra.logger import log_checks, log_performance, logger
from library.exceptions import AlgebraMismatch, ConsistencyFailure, NormalizationFailure, NotUnit
from library.utils import fraction_str, is_exact, pythagorean_units, to_fraction
from schema.report import CheckResult
from services.lie_core import (
    Algebra,
    Element,
    Subspace,
    _domain_to_fractions,
    _rational_rows_to_domain,
    ad_matrix,
    bracket,
    compact_center,
    killing,
    norm2,
    project,
    rational_rank,
)

_ONE = Fraction(1)


# ==================== 1. 数据结构 ====================
@dataclass(frozen=True, eq=False)
class CanonicalBases:
    """
    约化分解的各组基

    q: [q0, q1, …, qn]，q1 = J2
    h_basis: H = [Q,Q] 的基 {J1, p1, s1, pk, rk, sk, r_ij}
    b_basis: 𝔅 ∪ {r_ij}，顺序与 b_labels 一致
    to_b / from_b: 根基坐标与 𝔅 坐标之间的精确换基矩阵
    """
    algebra: Algebra
    q: Tuple[Element, ...]
    h_basis: Tuple[Element, ...]
    h_labels: Tuple[str, ...]
    b_basis: Tuple[Element, ...]
    b_labels: Tuple[str, ...]
    to_b: Tuple[Tuple[Fraction, ...], ...]
    from_b: Tuple[Tuple[Fraction, ...], ...]

    def b(self, label: str) -> Element:
        """按 𝔅 标签取元素"""
        try:
            return self.b_basis[self.b_labels.index(label)]
        except ValueError:
            raise AlgebraMismatch(f"𝔅 中没有 {label}", {"n": self.algebra.n}) from None

    def b_coords(self, x: Element):
        """x 在 𝔅 下的坐标；精确元素返回 Fraction 元组，浮点元素返回数组"""
        if x.is_exact:
            coeffs = x.coeffs
            return tuple(
                sum((row[m] * coeffs[m] for m in range(len(coeffs)) if row[m] != 0), Fraction(0))
                for row in self.to_b
            )
        return self.to_b_float @ x.as_array()

    @property
    def to_b_float(self) -> np.ndarray:
        return _float_cache(self)[0]

    @property
    def from_b_float(self) -> np.ndarray:
        return _float_cache(self)[1]


@lru_cache(maxsize=None)
def _float_cache(bases: CanonicalBases) -> Tuple[np.ndarray, np.ndarray]:
    return np.array(bases.to_b, dtype=float), np.array(bases.from_b, dtype=float)


@dataclass(frozen=True, eq=False)
class Intertwiners:
    """X1 = -[J2,q0], X2 = [J1,X1], Xk = -[J2,qk]"""
    X1: Element
    X2: Element
    Xk: Tuple[Element, ...]


# 每个 𝔅 元素声称所在的子空间交集与根块
_MEMBERSHIP = {
    "J1": (Subspace.HP, "A"),
    "J2": (Subspace.QP, "A"),
    "q0": (Subspace.QK, "N2"),
    "q2": (Subspace.QP, "N2"),
    "p1": (Subspace.HP, "N2"),
    "s1": (Subspace.HK, "N2"),
    "q": (Subspace.QP, "N"),
    "p": (Subspace.HP, "N"),
    "r": (Subspace.HK, "N"),
    "s": (Subspace.HK, "N"),
    "R": (Subspace.HK, "ZK(A)"),
}


def _advertised(label: str) -> Tuple[Subspace, str]:
    if label in _MEMBERSHIP:
        return _MEMBERSHIP[label]
    if ":" in label:
        return _MEMBERSHIP["R"]
    space, block = _MEMBERSHIP[label[0]]
    return space, f"N:{label[1:]}"


def _blocks_of(x: Element) -> set:
    return {x.algebra.labels[i].block for i, _ in x.nonzero()}


# ==================== 2. 构造 ====================
def _q0(alg: Algebra) -> Element:
    """
    q0 = (X++) 在 Z(K) 上的 Killing 正交投影
    n=2 时 Z(K) 是二维的，改用 ¼(X++ + X-- + X+- + X-+)
    """
    B = alg.basis
    quarter = (B("X++") + B("X--") + B("X+-") + B("X-+")) * Fraction(1, 4)
    if alg.n == 2:
        return quarter
    (z,) = compact_center(alg)
    return z * (killing(B("X++"), z) / killing(z, z))


@lru_cache(maxsize=None)
def canonical_bases(alg: Algebra) -> CanonicalBases:
    """
    构造 q_i、H 基与 𝔅，检查每个元素落在声称的子空间交集中

    参数:
        alg: 已构造的代数

    返回:
        CanonicalBases
    """
    start = time.time()
    B = alg.basis
    slices = list(range(3, alg.n + 1))

    j1, j2 = B("J1"), B("J2")
    q0 = _q0(alg)
    q2 = -bracket(j1, q0)
    half_diff = (B("X+-") - B("X++")) * Fraction(1, 2)
    p1 = project(Subspace.P, half_diff)
    s1 = project(Subspace.K, half_diff)

    named: Dict[str, Element] = {"J1": j1, "J2": j2, "q0": q0, "q2": q2, "p1": p1, "s1": s1}
    q: List[Element] = [q0, j2, q2]
    h: List[Tuple[str, Element]] = [("J1", j1), ("p1", p1), ("s1", s1)]
    for k in slices:
        x0p, xp0 = B(f"X0+:{k}"), B(f"X+0:{k}")
        named[f"q{k}"] = project(Subspace.P, x0p)
        named[f"p{k}"] = -project(Subspace.P, xp0)
        named[f"r{k}"] = project(Subspace.K, x0p)
        named[f"s{k}"] = -project(Subspace.K, xp0)
        q.append(named[f"q{k}"])
        h.extend((f"{name}{k}", named[f"{name}{k}"]) for name in ("p", "r", "s"))
    for i, j in itertools.combinations(slices, 2):
        named[f"r{i}:{j}"] = B(f"R:{i}:{j}")
        h.append((f"r{i}:{j}", named[f"r{i}:{j}"]))

    for label, x in named.items():
        space, block = _advertised(label)
        if project(space, x) != x:
            raise NormalizationFailure(f"{label} 不在 {space.value} 中", {"label": label})
        if _blocks_of(x) != {block}:
            raise NormalizationFailure(
                f"{label} 不在根块 {block} 中: {sorted(_blocks_of(x))}", {"label": label}
            )

    b_labels = tuple(named)
    b_basis = tuple(named.values())
    from_b = tuple(tuple(x.coeffs[m] for x in b_basis) for m in range(alg.dim))
    try:
        to_b = _domain_to_fractions(_rational_rows_to_domain(from_b).inv())
    except Exception as e:
        raise NormalizationFailure(f"𝔅 不是基: {e}") from e

    bases = CanonicalBases(
        algebra=alg,
        q=tuple(q),
        h_basis=tuple(x for _, x in h),
        h_labels=tuple(name for name, _ in h),
        b_basis=b_basis,
        b_labels=b_labels,
        to_b=tuple(tuple(row) for row in to_b),
        from_b=from_b,
    )
    log_performance("canonical_bases", (time.time() - start) * 1000, n=alg.n)
    logger.debug(f"𝔅 构造完成: n={alg.n}, |𝔅|={len(b_basis)}, dim H={len(h)}")
    return bases


@lru_cache(maxsize=None)
def intertwiners(alg: Algebra) -> Intertwiners:
    """构造交织元并精确检查八条交织关系"""
    bases = canonical_bases(alg)
    j1, j2 = bases.b("J1"), bases.b("J2")
    q = bases.q
    x1 = -bracket(j2, q[0])
    x2 = bracket(j1, x1)
    xk = tuple(-bracket(j2, q[k]) for k in range(3, alg.n + 1))
    result = Intertwiners(X1=x1, X2=x2, Xk=xk)

    failed = [desc for desc, lhs, rhs in _intertwining_relations(alg, result) if lhs != rhs]
    if failed:
        raise NormalizationFailure(f"交织关系不成立: {failed}", {"n": alg.n})
    return result


def _intertwining_relations(alg: Algebra, tw: Intertwiners):
    bases = canonical_bases(alg)
    q = bases.q
    j1 = bases.b("J1")
    yield "ad(X1)q1=q0", bracket(tw.X1, q[1]), q[0]
    yield "ad(X1)q0=q1", bracket(tw.X1, q[0]), q[1]
    yield "ad(X2)q2=q1", bracket(tw.X2, q[2]), q[1]
    yield "ad(X2)q1=-q2", bracket(tw.X2, q[1]), -q[2]
    for offset, xk in enumerate(tw.Xk):
        k = offset + 3
        yield f"ad(X{k})q{k}=-q1", bracket(xk, q[k]), -q[1]
        yield f"ad(X{k})q1=q{k}", bracket(xk, q[1]), q[k]
    yield "ad(J1)q0=-q2", bracket(j1, q[0]), -q[2]
    yield "ad(J1)q2=-q0", bracket(j1, q[2]), -q[0]


# ==================== 3. 类光元 ====================
def lightlike(alg: Algebra, w: Sequence, check: bool = True) -> Element:
    """
    E(w) = q0 + Σ w_i q_i

    参数:
        alg: 代数
        w: 长度为 n 的单位向量（精确或浮点）
        check: 是否检查 norm2(E)=0 与 ad(E)³=0

    返回:
        类光元 E(w)
    """
    if len(w) != alg.n:
        raise NotUnit(f"方向长度必须为 n={alg.n}，收到 {len(w)}", {"n": alg.n})
    exact = all(is_exact(v) for v in w)
    bases = canonical_bases(alg)
    q = bases.q
    if exact:
        wf = [to_fraction(v) for v in w]
        if sum(v * v for v in wf) != 1:
            raise NotUnit(f"|w|² = {fraction_str(sum(v * v for v in wf))} ≠ 1")
        e = q[0]
        for coef, qi in zip(wf, q[1:]):
            if coef != 0:
                e = e + qi * coef
    else:
        arr = np.asarray(w, dtype=float)
        deviation = abs(float(arr @ arr) - 1.0)
        if deviation > config.numerics.unit_tol:
            raise NotUnit(f"|w|² 偏离 1 达 {deviation:.3e}", {"deviation": deviation})
        coeffs = q[0].as_array() + sum(v * qi.as_array() for v, qi in zip(arr, q[1:]))
        e = Element(alg, coeffs)

    if check:
        _check_lightlike(e)
    return e


def _check_lightlike(e: Element) -> None:
    if e.is_exact:
        if norm2(e) != 0:
            raise ConsistencyFailure(f"norm2(E) = {norm2(e)} ≠ 0")
        if not ad_cubed_vanishes(e):
            raise ConsistencyFailure("ad(E)³ ≠ 0")
        return
    ad = ad_matrix(e)
    scale = max(1.0, float(np.max(np.abs(ad))))
    if abs(norm2(e)) > 1e-9 or np.max(np.abs(ad @ ad @ ad)) > 1e-9 * scale ** 3:
        raise ConsistencyFailure("浮点类光元检查失败", {"norm2": norm2(e)})


def ad_cubed_vanishes(e: Element) -> bool:
    """精确判断 ad(E)³ = 0（逐个基向量作用三次括号）"""
    alg = e.algebra
    for label in alg.labels:
        y = alg.basis(label)
        for _ in range(3):
            y = bracket(e, y)
            if y.is_zero():
                break
        if not y.is_zero():
            return False
    return True


def exact_unit_vectors(dim: int, count: int, seed: Optional[int] = None) -> List[Tuple[Fraction, ...]]:
    """精确有理单位向量（逆球极投影）"""
    return pythagorean_units(dim, count, config.numerics.seed if seed is None else seed)


# ==================== 4. 约化定理检查 ====================
def verify_reductive(alg: Algebra, seed: Optional[int] = None, samples: int = 20) -> List[CheckResult]:
    """
    约化分解的定理检查，失败作为数据返回

    参数:
        alg: 代数
        seed: 幂零检查的随机种子
        samples: 精确单位向量个数

    返回:
        检查结果列表
    """
    start = time.time()
    n = alg.n
    results: List[CheckResult] = []

    def record(name: str, counterexample: Optional[str], detail: Optional[str] = None) -> None:
        results.append(CheckResult(
            suite="reductive", name=name, n=n,
            passed=counterexample is None, counterexample=counterexample, detail=detail,
        ))

    try:
        bases = canonical_bases(alg)
    except NormalizationFailure as e:
        record("canonical_bases", e.message)
        return results
    record("canonical_bases", None, f"{len(bases.b_basis)} elements")

    try:
        intertwiners(alg)
        record("intertwining", None)
    except NormalizationFailure as e:
        record("intertwining", e.message)

    q = bases.q
    B = alg.basis
    quarter = (B("X++") + B("X--") + B("X+-") + B("X-+")) * Fraction(1, 4)
    record("q0_four_term", None if q[0] == quarter else f"q0 = {q[0]!r}")

    # ad(q_i)² q_j = ±q_j
    bad = None
    for i, j in itertools.permutations(range(len(q)), 2):
        expected = -q[j] if i == 0 else q[j]
        if bracket(q[i], bracket(q[i], q[j])) != expected:
            bad = f"ad(q{i})²q{j} ≠ {'-' if i == 0 else ''}q{j}"
            break
    record("ad_square", bad)

    # [Q,Q] ⊂ H, [H,Q] ⊂ Q
    bad = None
    for i, j in itertools.combinations(range(len(q)), 2):
        if not project(Subspace.Q, bracket(q[i], q[j])).is_zero():
            bad = f"[q{i},q{j}] ∉ H"
            break
    if bad is None:
        for label, h in zip(bases.h_labels, bases.h_basis):
            for j, qj in enumerate(q):
                if not project(Subspace.H, bracket(h, qj)).is_zero():
                    bad = f"[{label},q{j}] ∉ Q"
                    break
            if bad:
                break
    record("reductivity", bad)

    # H = [Q,Q]
    qq = [list(bracket(q[i], q[j]).coeffs) for i, j in itertools.combinations(range(len(q)), 2)]
    hb = [list(h.coeffs) for h in bases.h_basis]
    rank_qq, rank_h, rank_both = rational_rank(qq), rational_rank(hb), rational_rank(qq + hb)
    ok = rank_qq == rank_h == rank_both == len(bases.h_basis)
    record(
        "h_equals_qq",
        None if ok else f"rank[Q,Q]={rank_qq}, rank H={rank_h}, rank both={rank_both}",
        f"dim H = {len(bases.h_basis)}",
    )

    # 范数表
    positive = {"q0", "s1"}
    bad = None
    for label, x in zip(bases.b_labels, bases.b_basis):
        is_pos = label in positive or label[0] in ("r", "s")
        expected = _ONE if is_pos else -_ONE
        if norm2(x) != expected:
            bad = f"norm2({label}) = {norm2(x)}, expected {expected}"
            break
    record("norm_table", bad)

    # 正交性
    bad = None
    for (la, xa), (lb, xb) in itertools.combinations(zip(bases.b_labels, bases.b_basis), 2):
        if killing(xa, xb) != 0:
            bad = f"B({la},{lb}) = {killing(xa, xb)}"
            break
    record("b_orthogonal", bad)

    # 括号封闭于 {0, ±𝔅}，以及 ad(X)²Y 的符号
    closure_bad = None
    sign_bad = None
    in_p = {label: project(Subspace.P, x) == x for label, x in zip(bases.b_labels, bases.b_basis)}
    for (la, xa), (lb, xb) in itertools.product(zip(bases.b_labels, bases.b_basis), repeat=2):
        if la == lb:
            continue
        y = bracket(xa, xb)
        if y.is_zero():
            continue
        coords = [c for c in bases.b_coords(y) if c != 0]
        if closure_bad is None and (len(coords) != 1 or abs(coords[0]) != 1):
            closure_bad = f"[{la},{lb}] = {y!r}"
        if sign_bad is None:
            expected = xb if in_p[la] else -xb
            if bracket(xa, y) != expected:
                sign_bad = f"ad({la})²{lb} ≠ {'+' if in_p[la] else '-'}{lb}"
        if closure_bad and sign_bad:
            break
    record("b_closure", closure_bad)
    record("ad_square_sign", sign_bad)

    # 幂零
    bad = None
    units = exact_unit_vectors(n, samples, seed)
    ad_sq_zero = 0
    for w in units:
        e = lightlike(alg, w, check=False)
        if norm2(e) != 0 or not ad_cubed_vanishes(e):
            bad = f"w = ({', '.join(fraction_str(v) for v in w)})"
            break
        if project(Subspace.Q, e) != e:
            bad = f"E(w) ∉ Q for w = {w}"
            break
        if all(bracket(e, bracket(e, alg.basis(label))).is_zero() for label in alg.labels):
            ad_sq_zero += 1
    record("nilpotency", bad, f"{len(units)} exact directions, ad(E)²=0 for {ad_sq_zero}")

    # θ = exp(π ad q0)
    from services.exp_group import exp_ad

    deviation = float(np.max(np.abs(exp_ad(q[0], np.pi, method="closed") - alg.theta_float)))
    generic = float(np.max(np.abs(exp_ad(q[0], np.pi, method="generic") - alg.theta_float)))
    worst = max(deviation, generic)
    record(
        "theta_inner",
        None if worst < 1e-10 else f"max deviation {worst:.3e}",
        f"closed {deviation:.1e}, scaling-squaring {generic:.1e}",
    )

    log_performance("verify_reductive", (time.time() - start) * 1000, n=n)
    log_checks("reductive", results, n=n)
    return results


# ==================== 5. 导出 ====================
def b_basis_dump(bases: CanonicalBases) -> dict:
    """结构常数导出中的 b_basis 部分"""
    return {
        "labels": list(bases.b_labels),
        "to_b": [[fraction_str(v) for v in row] for row in bases.to_b],
        "from_b": [[fraction_str(v) for v in row] for row in bases.from_b],
    }


__all__ = [
    "CanonicalBases",
    "Intertwiners",
    "canonical_bases",
    "intertwiners",
    "lightlike",
    "ad_cubed_vanishes",
    "exact_unit_vectors",
    "verify_reductive",
    "b_basis_dump",
]
