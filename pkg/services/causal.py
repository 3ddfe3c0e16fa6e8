"""
因果结构分析
奇异性判据、类光测地线与奇异集相交的二次式、点的因果分类、
AN 点的奇异角与 n_P(x) 曲线

测地线: s ↦ [g e^{sE}]，E = q0 + Σ w_i q_i，s > 0 为未来
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from infra.config import config
from infra.logger import logger, log_performance
from library.exceptions import ConsistencyFailure, InconclusiveNearBoundary
from library.utils import Scalar, chebyshev_lobatto, normalize_angle, refined_grid_size, sphere_samples
from schema.causal import AnglesResult, Branch, CausalKind, ClassificationResult, PointType
from services.exp_group import (
    ANCoefficients,
    GroupWord,
    PointCoords,
    an_coefficients,
    fundamental_vector,
    point_word,
    quadric_point,
)
from services.lie_core import (
    Algebra,
    Element,
    Involution,
    Subspace,
    apply_involution,
    bracket,
    get_algebra,
    killing,
    norm2,
    project,
)
from services.reductive import canonical_bases, lightlike


# ==================== 1. 数据结构 ====================
@dataclass(frozen=True)
class QuadraticCoeffs:
    """
    a s² + b s + c，Killing 单位
    scale 为比较用的参考值: 测地线二次式取 B(q2,q2)，闭式假设取 B(q0,q0)
    """
    a: Scalar
    b: Scalar
    c: Scalar
    scale: Scalar
    hypothesis: bool = False
    noise: float = field(default=0.0, compare=False)  # a、b、c 的绝对误差界

    def ratios(self) -> Tuple[float, float, float]:
        s = float(self.scale)
        return float(self.a) / s, float(self.b) / s, float(self.c) / s

    def as_array(self) -> np.ndarray:
        return np.array([float(self.a), float(self.b), float(self.c)])


@dataclass(frozen=True)
class RootAnalysis:
    """实根（升序）与是否在未来与奇异集相交"""
    roots: Tuple[float, ...]
    future_hit: bool
    always_singular: bool = False


@dataclass(frozen=True)
class CausalClass:
    """
    分类结果；witness、root_table 等诊断字段不参与相等比较

    FREE 有见证方向，是确定的结论。BLACK_HOLE 只表示每个 w2 节点上
    被扫描的方向（规范补全、镜像补全和 completions 个随机补全）都在未来
    与奇异集相交；一般点的系数不只依赖 w2（w2_sufficient 为 False），
    此时未扫描到的方向仍可能逃逸
    """
    kind: CausalKind
    c: float
    witness_w2: Optional[float] = None
    branch: Optional[Branch] = None
    point_type: Optional[PointType] = None
    witness: Optional[Tuple[float, ...]] = field(default=None, compare=False)
    root_table: Optional[Tuple[Tuple[float, Tuple[float, ...]], ...]] = field(default=None, compare=False)
    w2_sufficient: Optional[bool] = field(default=None, compare=False)
    completions: Optional[int] = field(default=None, compare=False)  # 每个节点的随机补全数

    def to_result(self) -> ClassificationResult:
        return ClassificationResult(
            kind=self.kind,
            c=self.c,
            witness_w2=self.witness_w2,
            branch=self.branch,
            point_type=self.point_type,
        )

    @classmethod
    def from_result(cls, result: ClassificationResult) -> "CausalClass":
        return cls(
            kind=result.kind,
            c=result.c,
            witness_w2=result.witness_w2,
            branch=result.branch,
            point_type=result.point_type,
        )


@dataclass(frozen=True)
class CurveParams:
    """n_P(x) = u sin 2x + v cos 2x - v"""
    u: float
    v: float


# ==================== 2. 奇异性 ====================
def _q_part(alg: Algebra, word: GroupWord) -> Element:
    return project(Subspace.Q, fundamental_vector(alg, word))


def singularity_norm2(alg: Algebra, word: GroupWord) -> Scalar:
    """
    norm2(X_Q)，X = Ad(W)J1；为 0 当且仅当点 [W⁻¹] 在奇异集上
    洛伦兹号差下可以为负
    """
    return norm2(_q_part(alg, word))


def singularity_killing(alg: Algebra, word: GroupWord) -> Scalar:
    """Killing 单位下的奇异值 -B(X_Q, X_Q) = 2n·norm2"""
    xq = _q_part(alg, word)
    return -killing(xq, xq)


def fit_singular_coordinates(n: int, samples: int = 32, seed: Optional[int] = None) -> Dict[str, float]:
    """
    拟合二次曲面坐标中的 (t, y)，使 singularity_norm2 = y² - t²

    返回:
        {"t_index", "y_index", "residual"}
    """
    alg = get_algebra(n)
    rng = np.random.default_rng(config.numerics.seed if seed is None else seed)
    points = []
    values = []
    for _ in range(samples):
        coords = PointCoords(
            alpha=tuple(rng.normal(size=2) * 0.5),
            nu_pp=float(rng.normal()),
            nu_pm=float(rng.normal()),
            nu_0p=tuple(rng.normal(size=n - 2) * 0.5),
            nu_p0=tuple(rng.normal(size=n - 2) * 0.5),
            x=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        word = point_word(alg, coords)
        points.append(quadric_point(alg, word))
        values.append(float(singularity_norm2(alg, word)))
    v = np.array(points)
    s = np.array(values)
    best = None
    for i, j in itertools.permutations(range(alg.rep.size), 2):
        residual = float(np.max(np.abs(s - (v[:, j] ** 2 - v[:, i] ** 2))))
        if best is None or residual < best[2]:
            best = (i, j, residual)
    logger.debug(f"奇异坐标拟合: t=v[{best[0]}], y=v[{best[1]}], 残差 {best[2]:.2e}")
    return {"t_index": best[0], "y_index": best[1], "residual": best[2]}


# ==================== 3. 测地线二次式 ====================
# 浮点系数的相对误差量级（群作用、指数与 Killing 型的累积舍入）
_NOISE_REL = 1e-12


def _scale(alg: Algebra) -> Scalar:
    q2 = canonical_bases(alg).b("q2")
    return killing(q2, q2)


def quadratic_from_vector(x: Element, e: Element) -> QuadraticCoeffs:
    """
    直接由 Killing 型计算:
        a = -B([E,X], σ[E,X]), b = -2B(X_Q, [E,X_H]), c = B(X_Q, X_Q)
    并用 Gram 展开 ‖X_Q - s[E,X_H] + s²/2 [E,[E,X_Q]]‖² 校验
    """
    if x.is_exact != e.is_exact:
        x, e = x.lower(), e.lower()
    alg = x.algebra
    half = Fraction(1, 2) if x.is_exact else 0.5
    xh, xq = project(Subspace.H, x), project(Subspace.Q, x)
    ad_ex = bracket(e, x)
    a = -killing(ad_ex, apply_involution(Involution.SIGMA, ad_ex))
    b = -2 * killing(xq, bracket(e, xh))
    c = killing(xq, xq)

    v = (xq, -bracket(e, xh), bracket(e, bracket(e, xq)) * half)
    g = [[killing(v[i], v[j]) for j in range(3)] for i in range(3)]
    expanded = (
        g[0][0],
        2 * g[0][1],
        g[1][1] + 2 * g[0][2],
        2 * g[1][2],
        g[2][2],
    )
    target = (c, b, a, 0, 0)
    noise = 0.0
    if x.is_exact:
        bad = [k for k in range(5) if expanded[k] != target[k]]
    else:
        ref = max(1.0, *(abs(float(g[i][j])) for i in range(3) for j in range(3)))
        bad = [k for k in range(5) if abs(float(expanded[k]) - float(target[k])) > 1e-10 * ref]
        noise = _NOISE_REL * sum(abs(float(g[i][j])) for i in range(3) for j in range(3))
    if bad:
        raise ConsistencyFailure(
            f"Gram 展开与公式不一致，次数 {bad}",
            {"expanded": [float(v) for v in expanded], "formula": [float(v) for v in target]},
        )
    return QuadraticCoeffs(a=a, b=b, c=c, scale=_scale(alg), noise=noise)


def geodesic_quadratic(alg: Algebra, word: GroupWord, w: Sequence[Scalar]) -> QuadraticCoeffs:
    """
    点 [W⁻¹] 沿方向 w 的类光测地线与奇异集相交的二次式（权威计算）

    参数:
        alg: 代数
        word: 群字
        w: 长度为 n 的单位向量

    返回:
        QuadraticCoeffs
    """
    return quadratic_from_vector(fundamental_vector(alg, word), lightlike(alg, w))


def closed_form_quadratic(alg: Algebra, coeffs: ANCoefficients, x: float, w2: float) -> QuadraticCoeffs:
    """
    闭式假设（以 B(q0,q0) 为单位）:
        a = M(w2² + cos x·w2 + cos²x), b = -2M sin x (w2 + cos x), c = M sin²x
    结果只作为待检验的假设，分类不依赖它
    """
    q0 = canonical_bases(alg).b("q0")
    unit = float(killing(q0, q0))
    M = float(coeffs.M)
    cx, sx = math.cos(x), math.sin(x)
    return QuadraticCoeffs(
        a=unit * M * (w2 * w2 + cx * w2 + cx * cx),
        b=unit * -2.0 * M * sx * (w2 + cx),
        c=unit * M * sx * sx,
        scale=unit,
        hypothesis=True,
    )


def compare_quadratics(truth: QuadraticCoeffs, hypothesis: QuadraticCoeffs) -> Dict[str, object]:
    """按最优整体缩放比较两组系数，记录相对残差"""
    t = truth.as_array()
    h = hypothesis.as_array()
    t_norm = float(np.linalg.norm(t))
    h_norm = float(np.linalg.norm(h))
    if h_norm == 0.0:
        factor = None
        residual = 0.0 if t_norm == 0.0 else 1.0
    else:
        factor = float(t @ h) / (h_norm * h_norm)
        residual = float(np.linalg.norm(t - factor * h)) / max(t_norm, np.finfo(float).tiny)
    raw = float(np.linalg.norm(t - h)) / max(t_norm, np.finfo(float).tiny)
    report = {
        "factor": factor,
        "residual": residual,
        "raw_residual": raw,
        "truth": t.tolist(),
        "hypothesis": h.tolist(),
    }
    if residual > 1e-9:
        logger.warning(f"闭式二次式与直接计算不一致: 缩放后残差 {residual:.3e}")
    return report


@dataclass(frozen=True)
class QuadraticField:
    """
    二次式系数作为方向 w 的函数: a = ŵᵀGŵ, b = h·ŵ, c 常数，ŵ = (1, w)
    用于批量扫描方向
    """
    G: np.ndarray
    h: np.ndarray
    c: float
    scale: float
    noise: float = 0.0

    def at(self, w: Sequence[float]) -> QuadraticCoeffs:
        hat = np.concatenate(([1.0], np.asarray(w, dtype=float)))
        return QuadraticCoeffs(
            a=float(hat @ self.G @ hat),
            b=float(self.h @ hat),
            c=self.c,
            scale=self.scale,
            noise=self.noise,
        )

    def batch(self, ws: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """ws 形状 (m, n)，返回 (a, b) 两个长度 m 的数组"""
        hat = np.hstack([np.ones((ws.shape[0], 1)), ws])
        a = np.einsum("ij,jk,ik->i", hat, self.G, hat)
        return a, hat @ self.h


def quadratic_field(alg: Algebra, x: Element) -> QuadraticField:
    """由基本向量 X 构造 QuadraticField"""
    xf = x.lower()
    q = [qi.lower() for qi in canonical_bases(alg).q]
    xh, xq = project(Subspace.H, xf), project(Subspace.Q, xf)
    K = alg.killing_float
    Y = np.stack([bracket(qi, xf).as_array() for qi in q])
    G = -(Y @ K @ alg.sigma_float @ Y.T)
    U = np.stack([bracket(qi, xh).as_array() for qi in q])
    xq_arr = xq.as_array()
    G = 0.5 * (G + G.T)
    h = -2.0 * (U @ K @ xq_arr)
    c = float(xq_arr @ K @ xq_arr)
    # ŵ 的分量都不超过 1，系数误差不超过条目绝对值之和的相对舍入
    noise = _NOISE_REL * float(np.abs(G).sum() + np.abs(h).sum() + abs(c))
    return QuadraticField(G=G, h=h, c=c, scale=float(_scale(alg)), noise=noise)


# ==================== 4. 求根 ====================
_LINEAR_EPS = 1e-14


def _disc_slack(a, b, c, noise):
    """
    判别式的误差界: 舍入项加上系数误差 noise 传播的一阶项
    |Δ(b² - 4ac)| <= 2|b|δ + 4|c|δ + 4|a|δ
    """
    return 1e-12 * (b * b + 4.0 * abs(a * c)) + 4.0 * noise * (abs(a) + abs(b) + abs(c))


def singular_times(q: QuadraticCoeffs, eps: Optional[float] = None) -> RootAnalysis:
    """
    解 a s² + b s + c = 0（含退化情形）

    返回:
        RootAnalysis；a=b=c=0 时 always_singular
    """
    eps = config.numerics.future_eps if eps is None else eps
    a, b, c = float(q.a), float(q.b), float(q.c)
    noise = float(q.noise)
    if a == 0.0 and b == 0.0 and c == 0.0:
        return RootAnalysis(roots=(), future_hit=True, always_singular=True)

    if abs(a) <= _LINEAR_EPS * (abs(b) + abs(c)):
        if abs(b) <= _LINEAR_EPS * abs(c):
            return RootAnalysis(roots=(), future_hit=False)
        root = -c / b
        return RootAnalysis(roots=(root,), future_hit=root > eps)

    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc < -_disc_slack(a, b, c, noise):
            return RootAnalysis(roots=(), future_hit=False)
        # 误差范围内视为切向重根 -b/(2a)
        disc = 0.0
    root_q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    first = root_q / a
    second = c / root_q if root_q != 0.0 else first
    roots = tuple(sorted((first, second)))
    return RootAnalysis(roots=roots, future_hit=any(r > eps for r in roots))


def future_hits(a: np.ndarray, b: np.ndarray, c: float, eps: float, noise: float = 0.0) -> np.ndarray:
    """singular_times 的向量化版本，只返回 future_hit"""
    with np.errstate(divide="ignore", invalid="ignore"):
        linear = np.abs(a) <= _LINEAR_EPS * (np.abs(b) + abs(c))
        flat = np.abs(b) <= _LINEAR_EPS * abs(c)
        linear_root = -c / b
        disc = b * b - 4.0 * a * c
        near_zero = (disc < 0.0) & (disc >= -_disc_slack(a, b, c, noise))
        disc = np.where(near_zero, 0.0, disc)
        real = disc >= 0.0
        root_q = -0.5 * (b + np.copysign(np.sqrt(np.where(real, disc, 0.0)), b))
        first = root_q / a
        second = np.where(root_q != 0.0, c / np.where(root_q != 0.0, root_q, 1.0), first)
        quad_hit = real & ((first > eps) | (second > eps))
        linear_hit = ~flat & (linear_root > eps)
    return np.where(linear, linear_hit, quad_hit)


# ==================== 5. 分类 ====================
_STABLE_ATTEMPTS = 3


@dataclass(frozen=True)
class _ScanOutcome:
    free: bool
    witness_w2: Optional[float]
    witness: Optional[Tuple[float, ...]]
    defect: float
    nodes: np.ndarray
    canonical_a: np.ndarray
    canonical_b: np.ndarray


def _completion_offsets(n: int, count: int, seed: int) -> np.ndarray:
    """
    补全方向在 w2 的正交补球面上的单位向量，前两行固定为 ±(1, 0, …)
    形状 (2 + count, n - 1)
    """
    rng = np.random.default_rng(seed)
    base = np.zeros((2, n - 1))
    base[0, 0], base[1, 0] = 1.0, -1.0
    if count == 0:
        return base
    return np.vstack([base, sphere_samples(n - 1, count, rng)])


def _directions(nodes: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """形状 (len(nodes), len(offsets), n)"""
    rho = np.sqrt(np.clip(1.0 - nodes * nodes, 0.0, None))
    n = offsets.shape[1] + 1
    dirs = np.empty((nodes.size, offsets.shape[0], n))
    dirs[:, :, 0] = rho[:, None] * offsets[None, :, 0]
    dirs[:, :, 1] = nodes[:, None]
    dirs[:, :, 2:] = rho[:, None, None] * offsets[None, :, 1:]
    return dirs


def _scan(qf: QuadraticField, count: int, offsets: np.ndarray, eps: float) -> _ScanOutcome:
    nodes = chebyshev_lobatto(count)
    dirs = _directions(nodes, offsets)
    flat = dirs.reshape(-1, dirs.shape[2])
    a, b = qf.batch(flat)
    a = a.reshape(dirs.shape[:2])
    b = b.reshape(dirs.shape[:2])
    escape = ~future_hits(a, b, qf.c, eps, qf.noise)

    defect = float(max(np.max(np.ptp(a, axis=1)), np.max(np.ptp(b, axis=1)))) / abs(qf.scale)
    escaping = np.flatnonzero(escape.any(axis=1))
    if escaping.size == 0:
        return _ScanOutcome(False, None, None, defect, nodes, a[:, 0], b[:, 0])
    node = int(escaping[np.argmin(np.abs(nodes[escaping]))])
    column = int(np.flatnonzero(escape[node])[0])
    return _ScanOutcome(
        True, float(nodes[node]), tuple(float(v) for v in dirs[node, column]), defect, nodes, a[:, 0], b[:, 0]
    )


def singular_branch(alg: Algebra, x: Element) -> Optional[Branch]:
    """
    奇异点所在的闭轨道分支
    由 X_Q 所在的直线 (q0∓q2) 与 X 的 J1 系数符号决定
    """
    bases = canonical_bases(alg)
    coords = np.asarray(bases.b_coords(x.lower()), dtype=float)
    index = {label: i for i, label in enumerate(bases.b_labels)}
    tol = 1e-8 * max(1.0, float(np.max(np.abs(coords))))
    j1 = coords[index["J1"]]
    if abs(j1) <= tol:
        return None
    positive = j1 > 0

    c0, c2 = coords[index["q0"]], coords[index["q2"]]
    others = [coords[index[label]] for label in bases.b_labels if label == "J2" or (label[0] == "q" and label not in ("q0", "q2"))]
    if max([abs(c0), abs(c2)] + [abs(v) for v in others]) <= tol:
        return Branch.AN if positive else Branch.AN_K_THETA
    if others and max(abs(v) for v in others) > tol:
        return None
    if abs(c0 + c2) <= tol:
        return Branch.AN if positive else Branch.ABAR_N_K_THETA
    if abs(c0 - c2) <= tol:
        return Branch.ABAR_N if positive else Branch.AN_K_THETA
    return None


def point_type(alg: Algebra, coords: PointCoords) -> PointType:
    """u = a + b 非零为 II 型，否则 I 型"""
    u = float(an_coefficients(alg, coords).u)
    return PointType.TYPE_II if abs(u) > 1e-12 else PointType.TYPE_I


def classify_point(
    alg: Algebra,
    word: GroupWord,
    grid: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    coords: Optional[PointCoords] = None,
    completions: Optional[int] = None,
    with_roots: bool = False,
) -> CausalClass:
    """
    点 [W⁻¹] 的因果分类

    参数:
        alg: 代数
        word: 群字
        grid: w2 的 Chebyshev-Lobatto 节点数
        tol: 奇异性容差
        seed: 随机补全方向的种子
        coords: 点坐标（给出时附带 I/II 型）
        completions: 每个节点的随机补全方向数
        with_roots: 黑洞点是否附带每个 w2 的根表

    返回:
        CausalClass
    """
    start = time.time()
    num = config.numerics
    grid = num.grid if grid is None else grid
    tol = num.tol if tol is None else tol
    seed = num.seed if seed is None else seed
    completions = num.completions if completions is None else completions

    x = fundamental_vector(alg, word)
    qf = quadratic_field(alg, x)
    s = qf.scale
    e1 = np.zeros(alg.n)
    e1[0] = 1.0
    base = qf.at(e1)
    kind_type = point_type(alg, coords) if coords is not None else None

    if abs(qf.c / s) <= tol * (1.0 + abs(float(base.a) / s) + abs(float(base.b) / s)):
        result = CausalClass(
            kind=CausalKind.SINGULAR,
            c=qf.c,
            branch=singular_branch(alg, x),
            point_type=kind_type,
        )
        logger.debug(f"分类: singular, branch={result.branch}")
        return result

    offsets = _completion_offsets(alg.n, completions, seed)
    outcome = _scan(qf, grid, offsets, num.future_eps)
    refined = _scan(qf, refined_grid_size(grid), offsets, num.future_eps)
    if outcome.free != refined.free:
        raise InconclusiveNearBoundary(
            f"网格 {grid} 与加密网格结果不同，点离视界过近",
            {"grid": grid, "refined_free": refined.free, "refined_witness_w2": refined.witness_w2},
        )

    sufficient = max(outcome.defect, refined.defect) <= 1e-9
    if not sufficient:
        logger.debug(f"二次式在固定 w2 下依赖其余方向分量: 相对变化 {outcome.defect:.3e}")

    if outcome.free:
        result = CausalClass(
            kind=CausalKind.FREE,
            c=qf.c,
            witness_w2=outcome.witness_w2,
            witness=outcome.witness,
            point_type=kind_type,
            w2_sufficient=sufficient,
            completions=completions,
        )
    else:
        table = None
        if with_roots:
            table = tuple(
                (float(w2), singular_times(QuadraticCoeffs(a, b, qf.c, s, noise=qf.noise)).roots)
                for w2, a, b in zip(outcome.nodes, outcome.canonical_a, outcome.canonical_b)
            )
        result = CausalClass(
            kind=CausalKind.BLACK_HOLE,
            c=qf.c,
            root_table=table,
            point_type=kind_type,
            w2_sufficient=sufficient,
            completions=completions,
        )
    log_performance("classify_point", (time.time() - start) * 1000, kind=result.kind.value)
    logger.debug(f"分类: {result.kind.value}, witness_w2={result.witness_w2}")
    return result


def classify_stable(
    alg: Algebra,
    word: GroupWord,
    grid: Optional[int] = None,
    attempts: int = _STABLE_ATTEMPTS,
    **kwargs,
) -> CausalClass:
    """
    classify_point，网格与加密网格结论不同时逐步加密重试
    attempts 次后仍不稳定则抛出 InconclusiveNearBoundary
    """
    grid = config.numerics.grid if grid is None else grid
    for attempt in range(attempts):
        try:
            return classify_point(alg, word, grid=grid, **kwargs)
        except InconclusiveNearBoundary:
            if attempt == attempts - 1:
                raise
            grid = refined_grid_size(grid)
            logger.debug(f"分类不稳定，加密网格到 {grid}")


def sufficiency_defect(
    alg: Algebra,
    word: GroupWord,
    w2: float,
    completions: int = 20,
    seed: Optional[int] = None,
) -> float:
    """固定 w2 时，系数在其余球面坐标上的最大相对变化"""
    qf = quadratic_field(alg, fundamental_vector(alg, word))
    offsets = _completion_offsets(alg.n, completions, config.numerics.seed if seed is None else seed)
    dirs = _directions(np.array([w2]), offsets)[0]
    a, b = qf.batch(dirs)
    return float(max(np.ptp(a), np.ptp(b))) / abs(qf.scale)


# ==================== 6. 奇异角与曲线 ====================
def curve_params(coeffs: ANCoefficients) -> CurveParams:
    return CurveParams(u=float(coeffs.u), v=float(coeffs.v))


def curve_value(params: CurveParams, x):
    """n_P(x)，x 可以是数组"""
    return params.u * np.sin(2 * x) + params.v * np.cos(2 * x) - params.v


def singular_angles(alg: Algebra, coords: PointCoords) -> AnglesResult:
    """
    n_P(x) = 2 sin x (u cos x - v sin x) 在 [0, 2π) 上的零点
    0 与 π 总是零点；u ≠ 0 时另有 atan2(u, v) 与其 +π
    """
    params = curve_params(an_coefficients(alg, coords))
    angles = [0.0, math.pi]
    kind = PointType.TYPE_I
    if abs(params.u) > 1e-12:
        kind = PointType.TYPE_II
        first = normalize_angle(math.atan2(params.u, params.v))
        second = normalize_angle(first + math.pi)
        if abs(normalize_angle(second - first) - math.pi) > 1e-12:
            raise ConsistencyFailure("非平凡奇异角不是相差 π 的一对", {"angles": [first, second]})
        angles.extend((first, second))
    return AnglesResult(angles=sorted(angles), point_type=kind, u=params.u, v=params.v)


__all__ = [
    "QuadraticCoeffs",
    "RootAnalysis",
    "CausalClass",
    "CurveParams",
    "QuadraticField",
    "singularity_norm2",
    "singularity_killing",
    "fit_singular_coordinates",
    "quadratic_from_vector",
    "geodesic_quadratic",
    "closed_form_quadratic",
    "compare_quadratics",
    "quadratic_field",
    "singular_times",
    "future_hits",
    "singular_branch",
    "point_type",
    "classify_point",
    "classify_stable",
    "sufficiency_defect",
    "curve_params",
    "curve_value",
    "singular_angles",
]
