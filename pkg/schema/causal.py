"""
因果分类相关数据模式
分类结果 JSON、扫描 CSV 行、视界二分结果，以及 HTTP 请求体
"""

import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from library.utils import check_grid_size
from schema.point import PointCoordsModel


# ==================== 1. 枚举 ====================
class CausalKind(str, Enum):
    """因果类别"""
    SINGULAR = "singular"
    BLACK_HOLE = "black_hole"
    FREE = "free"


class Branch(str, Enum):
    """奇异点所在的闭轨道分支"""
    AN = "AN"
    AN_K_THETA = "ANktheta"
    ABAR_N = "AbarN"
    ABAR_N_K_THETA = "AbarNktheta"


class PointType(str, Enum):
    """AN 点的类型: n_P 有 2 个零点为 I，4 个为 II"""
    TYPE_I = "I"
    TYPE_II = "II"


# ==================== 2. 分类结果 ====================
class ClassificationResult(BaseModel):
    """分类结果，JSON 键固定为 class/c/witness_w2/branch/type"""
    model_config = ConfigDict(populate_by_name=True)

    kind: CausalKind = Field(alias="class")
    c: float = Field(description="B(X_Q, X_Q)，Killing 单位")
    witness_w2: Optional[float] = Field(default=None, description="自由点的逃逸方向 w2")
    branch: Optional[Branch] = None
    point_type: Optional[PointType] = Field(default=None, alias="type")

    def to_json_dict(self) -> dict:
        return self.model_dump(by_alias=True, mode="json")


# ==================== 3. 表格行 ====================
class ScanRow(BaseModel):
    """圆周扫描的一行: x,class,s_plus,s_minus,c"""
    x: float
    kind: CausalKind
    s_plus: Optional[float] = None
    s_minus: Optional[float] = None
    c: float

    def csv_fields(self) -> List[str]:
        return [
            repr(self.x),
            self.kind.value,
            "" if self.s_plus is None or not math.isfinite(self.s_plus) else repr(self.s_plus),
            "" if self.s_minus is None or not math.isfinite(self.s_minus) else repr(self.s_minus),
            repr(self.c),
        ]


class CurveRow(BaseModel):
    """n_P(x) 曲线的一行"""
    x: float
    n_p: float


class AnglesResult(BaseModel):
    """奇异角"""
    angles: List[float]
    point_type: PointType = Field(alias="type")
    u: float
    v: float

    model_config = ConfigDict(populate_by_name=True)


class HorizonResult(BaseModel):
    """视界二分结果"""
    n: int
    t_star: float
    lo: float
    hi: float
    lo_class: CausalKind
    hi_class: CausalKind
    iterations: int


# ==================== 4. HTTP 请求体 ====================
class ClassifyRequest(BaseModel):
    """分类请求"""
    n: int = Field(ge=2, le=12)
    point: PointCoordsModel
    grid: Optional[int] = Field(default=None, ge=3)
    tol: Optional[float] = Field(default=None, gt=0)

    @field_validator("grid")
    @classmethod
    def odd_grid(cls, v):
        return v if v is None else check_grid_size(v)


class CurveRequest(BaseModel):
    """曲线请求"""
    n: int = Field(ge=2, le=12)
    point: PointCoordsModel
    samples: int = Field(default=64, ge=1, le=100000)


class HorizonRequest(BaseModel):
    """视界二分请求；不给 point 时沿 SO(2) 圆周"""
    n: int = Field(ge=2, le=12)
    lo: float = Field(default=math.pi / 4)
    hi: float = Field(default=3 * math.pi / 4)
    tol: Optional[float] = Field(default=None, gt=0)
    point: Optional[PointCoordsModel] = None


__all__ = [
    "CausalKind",
    "Branch",
    "PointType",
    "ClassificationResult",
    "ScanRow",
    "CurveRow",
    "AnglesResult",
    "HorizonResult",
    "ClassifyRequest",
    "CurveRequest",
    "HorizonRequest",
]
