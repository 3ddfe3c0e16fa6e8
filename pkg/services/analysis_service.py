"""
分析服务
命令行与 HTTP 接口共用的业务入口: 验证、分类、圆周扫描、曲线、奇异角、视界、结构常数表
"""

import math
from typing import List, Optional, Union

import numpy as np

from infra.config import config
from infra.logger import error, info, logger
from library.exceptions import InvalidDimension, UsageError
from library.utils import canonical_direction
from schema.causal import AnglesResult, ClassificationResult, CurveRow, HorizonResult, ScanRow
from schema.point import PointCoordsModel
from schema.report import Report
from services.causal import (
    classify_stable,
    curve_params,
    curve_value,
    geodesic_quadratic,
    singular_angles,
    singular_times,
)
from services.exp_group import PointCoords, an_coefficients, point_word
from services.induction import circle_path, horizon_bisect, point_path
from services.lie_core import dump_structure, get_algebra, verify_structure
from services.reductive import b_basis_dump, canonical_bases, verify_reductive

PointInput = Union[PointCoords, PointCoordsModel]

def _check_n(n: int) -> None:
    if n < 2:
        raise InvalidDimension(f"n 必须 >= 2，收到 {n}", {"n": n})
    if n > config.numerics.max_n:
        raise InvalidDimension(
            f"n={n} 超过上限 ADSCAUSAL_MAX_N={config.numerics.max_n}", {"n": n}
        )


def _coords(n: int, point: Optional[PointInput]) -> PointCoords:
    if point is None:
        return PointCoords(nu_0p=(0.0,) * (n - 2), nu_p0=(0.0,) * (n - 2))
    if isinstance(point, PointCoords):
        return point
    try:
        return point.to_domain(n)
    except ValueError as e:
        raise UsageError(str(e), {"n": n}) from e


def _match_roots(roots, analytic) -> List[Optional[float]]:
    """把数值根按最近原则对应到 (s_plus, s_minus) 的解析值"""
    matched = []
    for value in analytic:
        if not math.isfinite(value) or not roots:
            matched.append(None)
            continue
        matched.append(min(roots, key=lambda r: abs(r - value)))
    return matched


class AnalysisService:
    """
    分析服务
    所有方法都是无状态的纯函数，代数按 n 缓存
    """

    @staticmethod
    def verify(n: int, seed: Optional[int] = None) -> Report:
        """
        运行结构与约化两套检查，n 取 2..n

        参数:
            n: 最大的 n
            seed: 随机检查的种子

        返回:
            Report
        """
        try:
            _check_n(n)
            report = Report().extend(verify_structure(n))
            for m in range(2, n + 1):
                report.extend(verify_reductive(get_algebra(m), seed=seed))
            summary = report.summary()
            info(f"验证完成: {summary}", n=n)
            return report
        except Exception as e:
            error(f"验证失败: {e}", n=n)
            raise

    @staticmethod
    def classify(
        n: int,
        point: Optional[PointInput],
        grid: Optional[int] = None,
        tol: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> ClassificationResult:
        """单点分类"""
        try:
            _check_n(n)
            alg = get_algebra(n)
            coords = _coords(n, point)
            result = classify_stable(alg, point_word(alg, coords), grid=grid, tol=tol, seed=seed, coords=coords)
            logger.info(f"分类: n={n}, x={float(coords.x):.6f} -> {result.kind.value}")
            return result.to_result()
        except Exception as e:
            error(f"分类失败: {e}", n=n)
            raise

    @staticmethod
    def scan_circle(
        n: int,
        samples: int,
        w2: float = 0.5,
        grid: Optional[int] = None,
        tol: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> List[ScanRow]:
        """
        SO(2) 圆周 x = 2πi/samples 上的分类
        s_plus / s_minus 为方向 (√(1-w2²), w2, 0, …) 上的两个交点参数
        """
        try:
            _check_n(n)
            if samples < 1:
                raise UsageError(f"samples 必须 >= 1，收到 {samples}")
            alg = get_algebra(n)
            path = circle_path(alg)
            direction = canonical_direction(w2, n)
            rows = []
            for i in range(samples):
                x = 2.0 * math.pi * i / samples
                word = path(x)
                result = classify_stable(alg, word, grid=grid, tol=tol, seed=seed)
                roots = singular_times(geodesic_quadratic(alg, word, direction)).roots
                sx, cx = math.sin(x), math.cos(x)
                analytic = [
                    sx / (cx - w2) if abs(cx - w2) > 1e-15 else math.inf,
                    sx / (cx + w2) if abs(cx + w2) > 1e-15 else math.inf,
                ]
                s_plus, s_minus = _match_roots(roots, analytic)
                rows.append(ScanRow(x=x, kind=result.kind, s_plus=s_plus, s_minus=s_minus, c=result.c))
            logger.info(f"圆周扫描完成: n={n}, samples={samples}")
            return rows
        except Exception as e:
            error(f"圆周扫描失败: {e}", n=n)
            raise

    @staticmethod
    def curve(n: int, point: Optional[PointInput], samples: int) -> List[CurveRow]:
        """AN 点的 n_P(x) 曲线，x = 2πi/samples"""
        _check_n(n)
        alg = get_algebra(n)
        params = curve_params(an_coefficients(alg, _coords(n, point)))
        xs = 2.0 * np.pi * np.arange(samples) / samples
        values = curve_value(params, xs)
        return [CurveRow(x=float(x), n_p=float(v)) for x, v in zip(xs, values)]

    @staticmethod
    def angles(n: int, point: Optional[PointInput]) -> AnglesResult:
        _check_n(n)
        return singular_angles(get_algebra(n), _coords(n, point))

    @staticmethod
    def horizon(
        n: int,
        lo: float = math.pi / 4,
        hi: float = 3 * math.pi / 4,
        tol: Optional[float] = None,
        point: Optional[PointInput] = None,
        grid: Optional[int] = None,
    ) -> HorizonResult:
        """
        沿路径二分视界；不给点时沿 SO(2) 圆周，给点时固定 AN 部分沿 x
        """
        try:
            _check_n(n)
            alg = get_algebra(n)
            path = circle_path(alg) if point is None else point_path(alg, _coords(n, point))
            result = horizon_bisect(alg, path, lo, hi, tol=tol, grid=grid)
            logger.info(f"视界: n={n}, t*={result.t_star:.9f}, 迭代 {result.iterations} 次")
            return result
        except Exception as e:
            error(f"视界二分失败: {e}", n=n)
            raise

    @staticmethod
    def table(n: int) -> dict:
        """结构常数表，附 𝔅 换基矩阵"""
        _check_n(n)
        alg = get_algebra(n)
        dump = dump_structure(alg)
        dump["b_basis"] = b_basis_dump(canonical_bases(alg))
        return dump


__all__ = ["AnalysisService", "PointInput"]
