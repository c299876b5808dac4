from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, root_validator, validator

from app.config import settings
from app.core.equivariant.exactla import is_prime


class Backend(str, Enum):
    """계산 층"""
    ABSTRACT = "abstract"  # (σ, λ) 작용 데이터
    POINTED = "pointed"  # + 라벨 군 E 와 τ
    SMASH = "smash"  # 군 작용이 있는 대수


class Scope(str, Enum):
    """검사 범위"""
    ALL = "all"
    SAMPLED = "sampled"


RandomSeed = Dict[str, int]  # {"random": seed}


class GroupSpec(BaseModel):
    """
    군 입력 (셋 중 하나)

    원소 인덱스는 닫힘 순서(항등원 0, 생성원 왼쪽 곱 BFS)를 따릅니다.
    """
    name: Optional[str] = Field(None, description="표시용 이름")
    preset: Optional[str] = Field(None, description="C<n> | D<2n> | S<n>")
    table: Optional[List[List[int]]] = Field(None, description="곱셈표 (0 = 항등원)")
    permutations: Optional[List[List[int]]] = Field(None, description="순열 생성원")
    generators: Optional[List[int]] = Field(None, description="sigma_generators 에 대응하는 생성원 원소 인덱스")

    @root_validator(skip_on_failure=True)
    def exactly_one_source(cls, values):
        given = [k for k in ("preset", "table", "permutations") if values.get(k) is not None]
        if len(given) != 1:
            raise ValueError(f"preset, table, permutations 중 정확히 하나가 필요합니다 (주어진 것: {given})")
        return values


class ActionSpec(BaseModel):
    """작용 데이터 (σ, λ)"""
    n: Optional[int] = Field(None, ge=1, description="단순 대상 수 (기본: abstract 1, pointed |E|)")
    sigma: Optional[List[List[int]]] = Field(None, description="원소별 σ_g 순열")
    sigma_generators: Optional[List[List[int]]] = Field(None, description="생성원별 σ 순열")
    lam: Optional[Union[RandomSeed, List[List[List[int]]]]] = Field(
        None, alias="lambda", description="λ[g][h][i] 또는 {\"random\": seed}"
    )
    labels: List[str] = Field(default_factory=list, description="단순 대상 이름")

    class Config:
        allow_population_by_field_name = True

    @root_validator(skip_on_failure=True)
    def one_sigma(cls, values):
        if values.get("sigma") is not None and values.get("sigma_generators") is not None:
            raise ValueError("sigma 와 sigma_generators 는 함께 쓸 수 없습니다")
        lam = values.get("lam")
        if isinstance(lam, dict) and set(lam) != {"random"}:
            raise ValueError("lambda 사전은 {\"random\": seed} 형식이어야 합니다")
        return values


class PointedSpec(BaseModel):
    """점화 층 데이터"""
    E: GroupSpec = Field(..., description="단순 대상 라벨 군")
    tau: Optional[Union[RandomSeed, List[List[List[int]]]]] = Field(
        None, description="τ[g][i][j] 또는 {\"random\": seed} (이 경우 λ 도 함께 생성)"
    )


class AlgebraSpec(BaseModel):
    """smash 백엔드 대수"""
    kind: str = Field("permutation_product", description="permutation_product | structure")
    structure: Optional[List[List[List[int]]]] = Field(None, description="c[i][j][k] = (e_i e_j)_k")
    unit: Optional[List[int]] = None
    automorphisms: Optional[List[List[List[int]]]] = Field(None, description="A[g][k][j] = (g·e_j)_k")

    @root_validator(skip_on_failure=True)
    def structure_payload(cls, values):
        kind = values.get("kind")
        if kind not in ("permutation_product", "structure"):
            raise ValueError(f"알 수 없는 대수 종류: {kind}")
        if kind == "structure" and any(values.get(k) is None for k in ("structure", "unit", "automorphisms")):
            raise ValueError("structure 대수에는 structure, unit, automorphisms 가 필요합니다")
        return values


class SessionSpec(BaseModel):
    """세션 입력 스펙 (JSON)"""
    name: str = Field("session", description="세션 이름")
    p: int = Field(..., description="소수 p")
    seed: Optional[int] = Field(None, description="난수 시드 (기본: DEFAULT_SEED)")
    group: GroupSpec
    backend: Backend = Backend.ABSTRACT
    action: ActionSpec = Field(default_factory=ActionSpec)
    pointed: Optional[PointedSpec] = None
    algebra: Optional[AlgebraSpec] = None
    checks: List[str] = Field(default_factory=list, description="demo 에서 돌릴 명령 (기본: 전부)")
    scope: Scope = Scope.ALL
    subgroups: Optional[List[List[int]]] = Field(None, description="검사할 부분군 (기본: 전체 격자)")

    @validator("p")
    def prime_in_range(cls, p):
        if not is_prime(p):
            raise ValueError(f"p={p} 는 소수가 아닙니다")
        if p <= settings.D_MAX:
            raise ValueError(f"p={p} 는 D_MAX={settings.D_MAX} 보다 커야 합니다")
        if p > settings.PRIME_LIMIT:
            raise ValueError(f"p={p} 가 PRIME_LIMIT={settings.PRIME_LIMIT} 을 넘습니다")
        return p

    @root_validator(skip_on_failure=True)
    def backend_payload(cls, values):
        backend = values.get("backend")
        if backend == Backend.POINTED and values.get("pointed") is None:
            raise ValueError("pointed 백엔드에는 pointed 항목이 필요합니다")
        if backend == Backend.SMASH and values.get("algebra") is None:
            raise ValueError("smash 백엔드에는 algebra 항목이 필요합니다")
        return values
