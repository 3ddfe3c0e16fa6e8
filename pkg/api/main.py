"""
FastAPI 主应用
AdS 因果结构分析的 HTTP 服务入口
"""

import os
import sys
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

# 添加项目根目录
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)) + "/..")

from api.dependencies import generate_request_id, get_client_ip
from api.routes import router as analysis_router
from infra.config import Environment, config
from infra.logger import exception, log_request, logger, warning
from library.exceptions import AdsCausalError, ConsistencyFailure, NormalizationFailure
from services.lie_core import get_algebra


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    应用生命周期管理
    启动时预热小维数的代数缓存
    """
    logger.info("启动 AdS 因果结构分析服务")
    logger.info(f"   环境: {config.app.env.value}")
    logger.info(f"   调试模式: {config.app.debug}")
    logger.info(f"   地址: {config.app.host}:{config.app.port}")

    for message in config.validate():
        logger.warning(f"配置警告: {message}")

    start = time.time()
    for n in (2, 3):
        get_algebra(n)
    logger.info(f"代数缓存预热完成: {(time.time() - start) * 1000:.1f}ms")

    yield

    logger.info("关闭服务")


app = FastAPI(
    title="AdS 因果结构分析 API",
    description="so(2,n) 精确结构常数、BTZ 奇异性判据与黑洞/自由区域分类",
    version="1.0.0",
    docs_url="/docs" if config.app.debug else None,
    redoc_url="/redoc" if config.app.debug else None,
    openapi_url="/openapi.json" if config.app.debug else None,
    lifespan=lifespan,
)


# ==================== 中间件 ====================
@app.middleware("http")
async def logging_middleware(request: Request, call_next):
    """记录所有 HTTP 请求"""
    request_id = generate_request_id()
    start_time = time.time()
    client_ip = get_client_ip(request)

    try:
        response = await call_next(request)
    except Exception as e:
        duration = (time.time() - start_time) * 1000
        log_request(request.method, request.url.path, client_ip, 500, duration, request_id=request_id)
        logger.error(f"请求异常 [{request_id}]: {e}")
        raise

    duration = (time.time() - start_time) * 1000
    log_request(
        request.method, request.url.path, client_ip, response.status_code, duration, request_id=request_id
    )
    response.headers["X-Request-ID"] = request_id
    response.headers["X-Process-Time"] = f"{duration / 1000:.3f}"
    return response


if config.app.env == Environment.DEVELOPMENT:
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )


# ==================== 路由 ====================
@app.get("/")
async def root():
    """API 信息"""
    return {
        "message": "AdS 因果结构分析 API",
        "version": "1.0.0",
        "docs": "/docs" if config.app.debug else None,
        "health": "/health",
        "endpoints": {
            "定理检查": "GET /api/verify?n=",
            "结构常数表": "GET /api/table?n=",
            "点分类": "POST /api/classify",
            "圆周扫描": "GET /api/scan-circle?n=&samples=",
            "n_P 曲线": "POST /api/curve",
            "奇异角": "POST /api/angles",
            "视界二分": "POST /api/horizon",
        },
    }


@app.get("/health")
async def health():
    return {"status": "ok", "env": config.app.env.value, "numerics": config.to_dict()["numerics"]}


app.include_router(analysis_router, prefix="/api")


# ==================== 异常处理 ====================
@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """请求验证异常"""
    logger.warning(f"请求验证失败: {exc.errors()}")
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": "请求数据格式错误", "errors": jsonable_errors(exc)},
    )


def jsonable_errors(exc: RequestValidationError) -> list:
    """errors() 里的 ctx 可能带异常对象，转成字符串"""
    errors = []
    for err in exc.errors():
        err = dict(err)
        if "ctx" in err:
            err["ctx"] = {k: str(v) for k, v in err["ctx"].items()}
        errors.append(err)
    return errors


@app.exception_handler(AdsCausalError)
async def domain_exception_handler(request: Request, exc: AdsCausalError):
    """领域错误: 输入不合法或点离视界过近"""
    warning(f"领域错误: {type(exc).__name__} - {exc.message}", path=request.url.path)
    return JSONResponse(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, content=exc.to_dict())


@app.exception_handler(NormalizationFailure)
@app.exception_handler(ConsistencyFailure)
async def internal_domain_exception_handler(request: Request, exc: AdsCausalError):
    """内部一致性失败，说明实现有缺陷"""
    logger.error(f"内部一致性失败: {type(exc).__name__} - {exc.message}")
    return JSONResponse(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, content=exc.to_dict())


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    logger.warning(f"HTTP异常: {exc.status_code} - {exc.detail}")
    return JSONResponse(
        status_code=exc.status_code,
        content={"detail": exc.detail},
        headers=exc.headers or {},
    )


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    exception(f"未处理异常: {exc}", exc, path=request.url.path)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={
            "detail": "服务器内部错误",
            "message": str(exc) if config.app.debug else "请稍后重试",
        },
    )


# ==================== 运行应用 ====================
if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "api.main:app",
        host=config.app.host,
        port=config.app.port,
        reload=config.app.debug,
        log_level="info" if config.app.debug else "warning",
    )
