"""
配置管理模块
数值容差、网格规模、随机种子与服务参数统一从环境变量读取
"""

import os
from typing import List, Dict, Any
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from dotenv import load_dotenv

from library.utils import check_grid_size

# 加载环境变量
load_dotenv()


# ==================== 枚举定义 ====================
class Environment(str, Enum):
    """运行环境枚举"""
    DEVELOPMENT = "development"
    TESTING = "testing"
    PRODUCTION = "production"


class OutputFormat(str, Enum):
    """命令行输出格式"""
    JSON = "json"
    CSV = "csv"


# ==================== 子配置类定义 ====================
@dataclass
class NumericsConfig:
    """数值计算配置"""
    tol: float = 1e-9
    grid: int = 257
    seed: int = 0
    horizon_tol: float = 1e-6
    future_eps: float = 1e-12
    unit_tol: float = 1e-12
    completions: int = 8
    max_n: int = 10

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"容差必须大于0: {self.tol}")

        # Chebyshev-Lobatto 网格需要奇数个节点才包含 w2=0
        check_grid_size(self.grid)

        if self.horizon_tol <= 0:
            raise ValueError("视界二分容差必须大于0")

        if self.completions < 0:
            raise ValueError("球面补全方向数不能为负")

        if self.max_n < 2:
            raise ValueError(f"最大维数至少为2: {self.max_n}")


@dataclass
class AppConfig:
    """应用配置"""
    env: Environment = Environment.DEVELOPMENT
    log_level: str = "INFO"
    port: int = 8000
    host: str = "0.0.0.0"
    debug: bool = True

    def __post_init__(self):
        if self.port < 1 or self.port > 65535:
            raise ValueError(f"端口号无效: {self.port}")

        if self.log_level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"未知的日志级别: {self.log_level}")


@dataclass
class LogFileConfig:
    """日志文件配置"""
    enabled: bool = True
    log_dir: str = "./logs"
    rotation: str = "10 MB"
    retention: str = "30 days"

    @property
    def path(self) -> Path:
        return Path(self.log_dir)


# ==================== 主配置类 ====================
@dataclass
class Config:
    """总配置类"""
    numerics: NumericsConfig
    app: AppConfig
    log_file: LogFileConfig

    @classmethod
    def load(cls) -> "Config":
        """从环境变量加载配置"""
        env_str = os.getenv("APP_ENV", "development").lower()
        try:
            env = Environment(env_str)
        except ValueError:
            env = Environment.DEVELOPMENT
            print(f"⚠️  未知的环境: {env_str}，使用默认值: development")

        config = cls(
            numerics=NumericsConfig(
                tol=float(os.getenv("ADSCAUSAL_TOL", "1e-9")),
                grid=int(os.getenv("ADSCAUSAL_GRID", "257")),
                seed=int(os.getenv("ADSCAUSAL_SEED", "0")),
                horizon_tol=float(os.getenv("ADSCAUSAL_HORIZON_TOL", "1e-6")),
                completions=int(os.getenv("ADSCAUSAL_COMPLETIONS", "8")),
                max_n=int(os.getenv("ADSCAUSAL_MAX_N", "10")),
            ),
            app=AppConfig(
                env=env,
                log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
                port=int(os.getenv("APP_PORT", "8000")),
                host=os.getenv("APP_HOST", "0.0.0.0"),
                debug=os.getenv("APP_DEBUG", "true").lower() == "true",
            ),
            log_file=LogFileConfig(
                enabled=os.getenv("ADSCAUSAL_LOG_FILE", "true").lower() == "true",
                log_dir=os.getenv("ADSCAUSAL_LOG_DIR", "./logs"),
            ),
        )

        return config

    def validate(self) -> List[str]:
        """验证配置，返回警告列表"""
        errors = []

        if self.numerics.tol > 1e-6:
            errors.append(f"ADSCAUSAL_TOL={self.numerics.tol} 偏大，奇异点判定可能误报")

        if self.numerics.grid < 33:
            errors.append(f"ADSCAUSAL_GRID={self.numerics.grid} 偏小，分类可能不稳定")

        if self.app.env == Environment.PRODUCTION and self.app.debug:
            errors.append("生产环境不应开启调试模式")

        return errors

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "numerics": {
                "tol": self.numerics.tol,
                "grid": self.numerics.grid,
                "seed": self.numerics.seed,
                "horizon_tol": self.numerics.horizon_tol,
                "completions": self.numerics.completions,
                "max_n": self.numerics.max_n,
            },
            "app": {
                "env": self.app.env.value,
                "log_level": self.app.log_level,
                "port": self.app.port,
                "host": self.app.host,
                "debug": self.app.debug,
            },
            "log_file": {
                "enabled": self.log_file.enabled,
                "log_dir": self.log_file.log_dir,
            },
        }


# ==================== 创建全局实例 ====================
config = Config.load()


# ==================== 测试代码 ====================
if __name__ == "__main__":
    print("🔧 配置模块测试")
    print("=" * 50)

    errors = config.validate()
    if errors:
        print("⚠️  配置警告:")
        for error in errors:
            print(f"  - {error}")
    else:
        print("✅ 配置验证通过")

    print(f"\n📐 默认容差: {config.numerics.tol}")
    print(f"📊 分类网格: {config.numerics.grid}")
    print(f"🎲 随机种子: {config.numerics.seed}")

    print("=" * 50)
