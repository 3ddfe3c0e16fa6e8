"""
验证报告数据模式
定理检查套件的输出结构
"""

from typing import List, Optional

from pydantic import BaseModel, Field


# ==================== 1. 单项检查 ====================
class CheckResult(BaseModel):
    """单项检查结果"""
    suite: str = Field(description="所属套件: structure / reductive")
    name: str = Field(description="检查名称")
    n: int = Field(ge=2, description="so(2,n) 的 n")
    passed: bool
    counterexample: Optional[str] = Field(default=None, description="失败时的反例")
    detail: Optional[str] = None


# ==================== 2. 汇总报告 ====================
class Report(BaseModel):
    """验证报告"""
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def extend(self, checks: List[CheckResult]) -> "Report":
        self.checks.extend(checks)
        return self

    def find(self, name: str, n: Optional[int] = None) -> List[CheckResult]:
        """按名称（和 n）查找检查项"""
        return [c for c in self.checks if c.name == name and (n is None or c.n == n)]

    def summary(self) -> dict:
        return {
            "total": len(self.checks),
            "failed": len(self.failures),
            "passed": self.passed,
        }


__all__ = ["CheckResult", "Report"]
