"""
点坐标数据模式
PointCoords 的 JSON 形式: {"alpha":[f,f],"nu":{"pp":f,"pm":f,"zp":[...],"pz":[...]},"x":f}
"""

from typing import List, Tuple

from pydantic import BaseModel, Field, field_validator

from library.utils import normalize_angle


# ==================== 1. 幂零部分 ====================
class NuModel(BaseModel):
    """𝒩 部分的坐标"""
    pp: float = Field(default=0.0, description="X++ 系数")
    pm: float = Field(default=0.0, description="X+- 系数")
    zp: List[float] = Field(default_factory=list, description="X0+:k 系数, k=3..n")
    pz: List[float] = Field(default_factory=list, description="X+0:k 系数, k=3..n")


# ==================== 2. 点坐标 ====================
class PointCoordsModel(BaseModel):
    """点坐标"""
    alpha: Tuple[float, float] = Field(default=(0.0, 0.0), description="𝒜 部分 (α1, α2)")
    nu: NuModel = Field(default_factory=NuModel)
    x: float = Field(default=0.0, description="紧角度，化到 [0, 2π)")

    @field_validator("x")
    @classmethod
    def reduce_angle(cls, v: float) -> float:
        """角度取模 2π"""
        return normalize_angle(v)

    def to_domain(self, n: int):
        """转换为领域对象，并检查切片长度"""
        from services.exp_group import PointCoords

        slices = n - 2
        if len(self.nu.zp) not in (0, slices) or len(self.nu.pz) not in (0, slices):
            raise ValueError(
                f"zp/pz 长度必须为 n-2={slices}，实际为 {len(self.nu.zp)}/{len(self.nu.pz)}"
            )
        zp = tuple(self.nu.zp) if self.nu.zp else (0.0,) * slices
        pz = tuple(self.nu.pz) if self.nu.pz else (0.0,) * slices
        return PointCoords(
            alpha=tuple(self.alpha),
            nu_pp=self.nu.pp,
            nu_pm=self.nu.pm,
            nu_0p=zp,
            nu_p0=pz,
            x=self.x,
        )

    @classmethod
    def from_domain(cls, coords) -> "PointCoordsModel":
        return cls(
            alpha=(float(coords.alpha[0]), float(coords.alpha[1])),
            nu=NuModel(
                pp=float(coords.nu_pp),
                pm=float(coords.nu_pm),
                zp=[float(v) for v in coords.nu_0p],
                pz=[float(v) for v in coords.nu_p0],
            ),
            x=float(coords.x),
        )


__all__ = ["NuModel", "PointCoordsModel"]
