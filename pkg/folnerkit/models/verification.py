"""Verification suite results."""

from typing import List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    family: str
    name: str
    passed: bool
    detail: str = ""


class VerificationSummary(BaseModel):
    level: str
    mutation: Optional[str] = None
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_families(self) -> List[str]:
        return sorted({c.family for c in self.checks if not c.passed})
