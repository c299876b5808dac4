"""
등변 엔진 결과 스키마 정의

검증 결과(CheckReport), K0 표(K0Table), 블록 구조(BlockInfo) 등
JSON 으로 내보내는 경계 데이터만 pydantic 모델로 둡니다.
행렬/객체 같은 내부 값은 numpy 기반 dataclass 입니다.
"""

from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from app.config import settings


def jsonable(value: Any) -> Any:
    """numpy 값/튜플을 JSON 직렬화 가능한 형태로 변환"""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


# ============================================================
# 검증 리포트
# ============================================================

class CheckFailure(BaseModel):
    """실패한 항등식 하나와 재현용 증거(witness)"""
    check: str = Field(..., description="실패한 항등식/다이어그램 이름")
    message: str = Field("", description="설명")
    witness: Dict[str, Any] = Field(default_factory=dict, description="재현에 필요한 부분군/원소/행렬")


class CheckReport(BaseModel):
    """검증 결과 (통과/실패 + 실패 증거)"""
    name: str = Field(..., description="검증 이름")
    passed: bool = Field(True, description="전체 통과 여부")
    checked: int = Field(0, description="검사한 항등식 수")
    failed: int = Field(0, description="실패한 항등식 수")
    failures: List[CheckFailure] = Field(default_factory=list, description="실패 증거 (최대 MAX_FAILURES 개)")
    notes: Dict[str, Any] = Field(default_factory=dict, description="부가 정보 (차원, 오차 한계 등)")

    def record(self, ok: bool, check: str, message: str = "", **witness: Any) -> bool:
        """항등식 하나의 결과 기록"""
        self.checked += 1
        if not ok:
            self.passed = False
            self.failed += 1
            if len(self.failures) < settings.MAX_FAILURES:
                self.failures.append(
                    CheckFailure(check=check, message=message, witness=jsonable(witness))
                )
        return bool(ok)

    def absorb(self, other: "CheckReport") -> "CheckReport":
        """하위 리포트 병합"""
        self.checked += other.checked
        self.failed += other.failed
        self.passed = self.passed and other.passed
        for failure in other.failures:
            if len(self.failures) >= settings.MAX_FAILURES:
                break
            self.failures.append(
                CheckFailure(
                    check=f"{other.name}/{failure.check}",
                    message=failure.message,
                    witness=failure.witness,
                )
            )
        if other.notes:
            self.notes.setdefault(other.name, jsonable(other.notes))
        return self

    def note(self, **values: Any) -> None:
        self.notes.update(jsonable(values))


# ============================================================
# K0 표
# ============================================================

class SubgroupInfo(BaseModel):
    """부분군 정보"""
    index: int = Field(..., description="부분군 격자 안의 인덱스")
    elements: List[int] = Field(..., description="정렬된 원소 인덱스")
    order: int = Field(..., description="위수")
    label: str = Field(..., description="표시용 라벨")


class SimpleInfo(BaseModel):
    """𝒞^H 의 단순 대상 하나"""
    label: str = Field(..., description="라벨 (예: H3.S1)")
    multiplicities: List[int] = Field(..., description="기저 대상 중복도 벡터")
    total_dim: int = Field(..., description="기저 대상 전체 차원")
    degree: int = Field(..., description="dim End (잉여체 차수)")
    character: List[int] = Field(default_factory=list, description="기저 불변 trace 키")


class K0Table(BaseModel):
    """
    K0 표 (Mackey/Green 함자 표)

    행렬 규약: 열 = 원본 단순 대상, 행 = 대상 단순 대상, 성분 = 중복도.
    키 형식: 제한/유도 "H>K" (H, K 는 부분군 인덱스), 켤레 "H@x".
    """
    prime: int = Field(..., description="소수 p")
    group_order: int = Field(..., description="|G|")
    subgroups: List[SubgroupInfo] = Field(default_factory=list)
    simples: Dict[str, List[SimpleInfo]] = Field(default_factory=dict, description="부분군 인덱스별 단순 대상 목록")
    restriction: Dict[str, List[List[int]]] = Field(default_factory=dict, description="R^H_K")
    induction: Dict[str, List[List[int]]] = Field(default_factory=dict, description="I^H_K")
    conjugation: Dict[str, List[List[int]]] = Field(default_factory=dict, description="c_{H,x}")
    fusion: Dict[str, List[List[List[int]]]] = Field(default_factory=dict, description="N[a][b][c] = [S_a ⊗ S_b : S_c]")
    unit: Dict[str, List[int]] = Field(default_factory=dict, description="단위 대상의 K0 벡터")

    @property
    def monoidal(self) -> bool:
        return bool(self.fusion)

    def rank(self, h: int) -> int:
        return len(self.simples[str(h)])

    def degrees(self, h: int) -> np.ndarray:
        return np.array([s.degree for s in self.simples[str(h)]], dtype=np.int64)

    def res(self, h: int, k: int) -> np.ndarray:
        return np.array(self.restriction[f"{h}>{k}"], dtype=np.int64).reshape(self.rank(k), self.rank(h))

    def ind(self, h: int, k: int) -> np.ndarray:
        return np.array(self.induction[f"{h}>{k}"], dtype=np.int64).reshape(self.rank(h), self.rank(k))

    def conj(self, h: int, x: int, target: int) -> np.ndarray:
        return np.array(self.conjugation[f"{h}@{x}"], dtype=np.int64).reshape(self.rank(target), self.rank(h))

    def fusion_tensor(self, h: int) -> np.ndarray:
        r = self.rank(h)
        return np.array(self.fusion[str(h)], dtype=np.int64).reshape(r, r, r)

    def unit_vector(self, h: int) -> np.ndarray:
        return np.array(self.unit[str(h)], dtype=np.int64)


# ============================================================
# 대수 블록 구조
# ============================================================

class BlockInfo(BaseModel):
    """반단순 대수의 단순 블록 M_size(F_{p^degree})"""
    size: int = Field(..., description="행렬 블록 크기")
    degree: int = Field(..., description="잉여체 차수")
    dimension: Optional[int] = Field(None, description="블록의 F_p 차원 = size²·degree")
