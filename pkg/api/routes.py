"""
分析相关路由
验证、结构常数表、分类、圆周扫描、曲线、奇异角、视界
"""

from typing import List

from fastapi import APIRouter, Query

from api.dependencies import DimensionDep, RateLimitDep, ServiceDep
from infra.logger import debug
from schema.causal import (
    AnglesResult,
    ClassificationResult,
    ClassifyRequest,
    CurveRequest,
    CurveRow,
    HorizonRequest,
    HorizonResult,
    ScanRow,
)
from schema.report import Report

router = APIRouter()


# ==================== 结构 ====================
@router.get("/verify", dependencies=[RateLimitDep])
def verify(n: int = DimensionDep, seed: int = Query(0), service=ServiceDep) -> dict:
    """运行 n = 2..n 的定理检查，失败作为数据返回"""
    report: Report = service.verify(n, seed=seed)
    return {"summary": report.summary(), "checks": [c.model_dump() for c in report.checks]}


@router.get("/table")
def table(n: int = DimensionDep, service=ServiceDep) -> dict:
    return service.table(n)


# ==================== 因果结构 ====================
@router.post("/classify", response_model=ClassificationResult, dependencies=[RateLimitDep])
def classify(data: ClassifyRequest, service=ServiceDep) -> ClassificationResult:
    """单点分类，键为 class/c/witness_w2/branch/type"""
    debug(f"分类请求: n={data.n}", grid=data.grid, tol=data.tol)
    return service.classify(data.n, data.point, grid=data.grid, tol=data.tol)


@router.get("/scan-circle", response_model=List[ScanRow], dependencies=[RateLimitDep])
def scan_circle(
    n: int = DimensionDep,
    samples: int = Query(64, ge=1, le=4096),
    w2: float = Query(0.5, ge=-1.0, le=1.0),
    service=ServiceDep,
) -> List[ScanRow]:
    return service.scan_circle(n, samples, w2=w2)


@router.post("/curve", response_model=List[CurveRow])
def curve(data: CurveRequest, service=ServiceDep) -> List[CurveRow]:
    return service.curve(data.n, data.point, data.samples)


@router.post("/angles", response_model=AnglesResult)
def angles(data: ClassifyRequest, service=ServiceDep) -> AnglesResult:
    return service.angles(data.n, data.point)


@router.post("/horizon", response_model=HorizonResult, dependencies=[RateLimitDep])
def horizon(data: HorizonRequest, service=ServiceDep) -> HorizonResult:
    """沿圆周（或给定点的 x 方向）二分视界"""
    return service.horizon(data.n, lo=data.lo, hi=data.hi, tol=data.tol, point=data.point)


__all__ = ["router"]
