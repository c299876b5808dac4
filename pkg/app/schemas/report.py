from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.equivariant.schemas import CheckFailure, CheckReport


class CheckEntry(BaseModel):
    """검사 작업 하나의 결과"""
    name: str = Field(..., description="작업 이름 (--only 로 재실행 가능)")
    family: str = Field(..., description="검사 계열")
    status: str = Field(..., description="pass | fail | error")
    checked: int = 0
    failed: int = 0
    failures: List[CheckFailure] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[str] = Field(None, description="작업이 예외로 끝난 경우의 메시지")
    rerun: Optional[str] = Field(None, description="이 작업만 다시 돌리는 명령 인자")

    @classmethod
    def from_report(cls, name: str, report: CheckReport) -> "CheckEntry":
        return cls(
            name=name,
            family=name.split("/")[0],
            status="pass" if report.passed else "fail",
            checked=report.checked,
            failed=report.failed,
            failures=report.failures,
            notes=report.notes,
        )

    @classmethod
    def from_error(cls, name: str, error: Exception) -> "CheckEntry":
        return cls(
            name=name,
            family=name.split("/")[0],
            status="error",
            failed=1,
            error=f"{type(error).__name__}: {error}",
        )


class Report(BaseModel):
    """명령 하나의 전체 보고서 (report.json)"""
    session: str
    command: str
    backend: Optional[str] = None
    prime: Optional[int] = None
    group_order: Optional[int] = None
    seed: int
    scope: str
    passed: bool = True
    checked: int = 0
    failed: int = 0
    entries: List[CheckEntry] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list, description="함께 쓴 파일 이름")

    def add(self, entry: CheckEntry):
        if entry.status != "pass" and entry.rerun is None:
            entry.rerun = f"{self.command} --seed {self.seed} --only {entry.name}"
        self.entries.append(entry)
        self.checked += entry.checked
        self.failed += entry.failed
        if entry.status != "pass":
            self.passed = False

    def finalize(self) -> "Report":
        self.entries.sort(key=lambda e: e.name)
        self.artifacts.sort()
        return self

    def failing(self) -> List[str]:
        return [e.name for e in self.entries if e.status != "pass"]
