"""
API 依赖注入
分析服务、维数检查、速率限制等依赖
"""

import secrets
import time
from typing import Dict, List, Optional

from fastapi import Depends, HTTPException, Query, Request, status

from infra.config import config
from infra.logger import logger
from services.analysis_service import AnalysisService


# ==================== 服务依赖 ====================
def get_service() -> type:
    """分析服务是无状态的，直接返回类本身"""
    return AnalysisService


ServiceDep = Depends(get_service)


def dimension(n: int = Query(..., ge=2, description="so(2,n) 的 n")) -> int:
    """查询参数 n，上限取 ADSCAUSAL_MAX_N"""
    if n > config.numerics.max_n:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=f"n={n} 超过上限 {config.numerics.max_n}",
        )
    return n


DimensionDep = Depends(dimension)


# ==================== 速率限制依赖 ====================
class RateLimiter:
    """
    按客户端 IP 的滑动窗口限流
    分类与视界二分是 CPU 密集的，防止被刷
    """

    def __init__(self, requests_per_minute: int = 60, window: float = 60.0):
        self.requests_per_minute = requests_per_minute
        self.window = window
        self.requests: Dict[str, List[float]] = {}
        self._last_sweep = 0.0

    def _sweep(self, now: float) -> None:
        """每个窗口清理一次窗口内没有请求的 IP"""
        if now - self._last_sweep < self.window:
            return
        self._last_sweep = now
        stale = [ip for ip, times in self.requests.items() if not times or now - times[-1] >= self.window]
        for ip in stale:
            del self.requests[ip]

    def is_allowed(self, client_ip: str, now: Optional[float] = None) -> bool:
        now = time.time() if now is None else now
        self._sweep(now)
        recent = [t for t in self.requests.get(client_ip, []) if now - t < self.window]
        if len(recent) >= self.requests_per_minute:
            self.requests[client_ip] = recent
            return False
        recent.append(now)
        self.requests[client_ip] = recent
        return True


rate_limiter = RateLimiter(requests_per_minute=120)


def get_rate_limiter() -> RateLimiter:
    return rate_limiter


def limit_rate(request: Request, limiter: RateLimiter = Depends(get_rate_limiter)) -> None:
    client_ip = get_client_ip(request)
    if not limiter.is_allowed(client_ip):
        logger.warning(f"请求过于频繁: {client_ip}")
        raise HTTPException(status_code=status.HTTP_429_TOO_MANY_REQUESTS, detail="请求过于频繁")


RateLimitDep = Depends(limit_rate)


# ==================== 工具函数 ====================
def get_client_ip(request) -> str:
    """获取客户端IP地址"""
    forwarded = request.headers.get("X-Forwarded-For")
    if forwarded:
        return forwarded.split(",")[0]
    return request.client.host if request.client else "unknown"


def generate_request_id() -> str:
    return f"req_{secrets.token_hex(4)}"


__all__ = [
    "get_service",
    "ServiceDep",
    "dimension",
    "DimensionDep",
    "RateLimiter",
    "get_rate_limiter",
    "limit_rate",
    "RateLimitDep",
    "get_client_ip",
    "generate_request_id",
]
