"""
命令行命令模式
argparse 解析完后再用 pydantic 校验一遍，n >= 2 等约束集中在这里
"""

import json
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from infra.config import OutputFormat
from library.utils import check_grid_size
from schema.point import PointCoordsModel


class Subcommand(str, Enum):
    """子命令"""
    VERIFY = "verify"
    CLASSIFY = "classify"
    SCAN_CIRCLE = "scan-circle"
    CURVE = "curve"
    HORIZON = "horizon"
    TABLE = "table"


class Command(BaseModel):
    """一次命令行调用"""
    subcommand: Subcommand
    n: int = Field(ge=2, description="so(2,n) 的 n")
    point: Optional[PointCoordsModel] = None
    samples: int = Field(default=64, ge=1)
    tol: Optional[float] = Field(default=None, gt=0)
    grid: Optional[int] = Field(default=None, ge=3)
    format: Optional[OutputFormat] = Field(default=None, description="不给时按子命令取默认格式")
    out: Optional[str] = None
    seed: int = 0
    w2: float = Field(default=0.5, ge=-1.0, le=1.0)
    lo: Optional[float] = None
    hi: Optional[float] = None

    @field_validator("grid")
    @classmethod
    def odd_grid(cls, v):
        return v if v is None else check_grid_size(v)

    @field_validator("point", mode="before")
    @classmethod
    def parse_point(cls, v):
        """接受 JSON 字符串或 @文件路径"""
        if v is None or isinstance(v, (dict, PointCoordsModel)):
            return v
        text = str(v).strip()
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        return json.loads(text)


__all__ = ["Subcommand", "Command"]
