"""
异常定义
所有领域错误都继承 AdsCausalError，命令行和 HTTP 层据此映射退出码 / 状态码
"""

from typing import Any, Dict, Optional


class AdsCausalError(Exception):
    """领域异常基类"""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, "context": self.context}


# ==================== 1. 输入错误 ====================
class InvalidDimension(AdsCausalError):
    """so(2,n) 要求 n >= 2"""


class AlgebraMismatch(AdsCausalError):
    """元素来自不同的代数或不同的标量类型"""


class NotUnit(AdsCausalError):
    """方向向量不在单位球面上"""


class Degenerate(AdsCausalError):
    """R 变换的最后两个分量同时为零"""


class NoCrossing(AdsCausalError):
    """二分区间两端分类相同"""


class UsageError(AdsCausalError):
    """命令行参数错误"""


# ==================== 2. 计算错误 ====================
class NormalizationFailure(AdsCausalError):
    """根空间维数或锚定关系不成立，说明实现有缺陷"""


class ResidualComponent(AdsCausalError):
    """Ad(e^Z)J1 展开出现了不应有的分量"""


class ConsistencyFailure(AdsCausalError):
    """两条独立计算路径结果不一致"""


class InconclusiveNearBoundary(AdsCausalError):
    """网格加密后分类发生翻转，点离视界太近"""


__all__ = [
    "AdsCausalError",
    "InvalidDimension",
    "AlgebraMismatch",
    "NotUnit",
    "Degenerate",
    "NoCrossing",
    "UsageError",
    "NormalizationFailure",
    "ResidualComponent",
    "ConsistencyFailure",
    "InconclusiveNearBoundary",
]
