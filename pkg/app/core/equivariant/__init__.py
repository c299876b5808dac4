"""
등변화(equivariantization) 검증 엔진

유한군 G 가 반단순 범주 𝒞 에 작용할 때 𝒞^H 와 Res/Ind/c 함자, 그 사이의
자연변환을 블록 행렬로 만들고 Mackey/Green 공리를 정확히 검사합니다.

주요 구성:
- exactla: F_p 정확 선형대수, 다항식 인수분해, 최소다항식
- groups: 곱셈표 군, 부분군 격자, 좌/양쪽잉여류 대표원
- sscat: 반단순 범주 모델, 군 작용 데이터, 등변 대상/사상, Hom 풀이
- functors: Res/Ind/c 와 자연변환 𝐂, 𝐂𝐈, 𝐈
- mackey: Mackey 분해 증인과 Ind ⊣ Res 수반
- coherence: coherence 다이어그램 검사
- pointed: 점화 모노이달 층 (텐서, 모듈 구조, 범주 수준 Green 검사)
- split: 반단순 대수 분해와 단순 대상 추출
- green: K0 표와 Mackey/Green 공리
- smash: smash product 교차 검증
"""

from .exactla import Poly, PrimeField, factor, min_poly, roots_of_unity
from .exceptions import (
    ContainmentError,
    DecompositionError,
    DimensionMismatchError,
    EquivarianceError,
    EquivariantError,
    RepresentativeError,
    SingularMatrixError,
    SpecError,
    SplittingError,
    UnknownDiagramError,
    UnsupportedAlgebraError,
)
from .groups import (
    CosetReps,
    DoubleCosetReps,
    Group,
    Subgroup,
    conjugate,
    coset_reps,
    double_cosets,
    intersection,
    subgroups,
)
from .sscat import (
    ActionData,
    EqMorphism,
    EqObject,
    Mor,
    Obj,
    hom_basis,
    hom_dim,
    is_iso,
    random_cocycle,
    validate_action,
    validate_eq_morphism,
    validate_eq_object,
)
from .functors import conj, ind, nat_C, nat_CI, nat_I, nat_I_reverse, res
from .mackey import adjunction_check, mackey_iso
from .coherence import DIAGRAMS, DiagramContext, coherence_check, object_subgroup
from .pointed import (
    GreenContext,
    PointedData,
    frobenius_iso,
    green_categorical_check,
    module_functor_check,
    random_pointed,
    tensor_eq,
    validate_pointed,
)
from .split import MatAlgebra, SimpleClass, center, certify_simples, primitive_idempotents, simples_of
from .green import (
    K0Builder,
    cross_check_mackey,
    decompose,
    render_table,
    verify_green_axioms,
    verify_mackey_axioms,
)
from .smash import GAlgebra, block_structure, compare_with_abstract, smash_product, validate_galgebra
from .schemas import BlockInfo, CheckFailure, CheckReport, K0Table

__all__ = [
    # 선형대수 / 군
    "PrimeField",
    "Poly",
    "factor",
    "min_poly",
    "roots_of_unity",
    "Group",
    "Subgroup",
    "CosetReps",
    "DoubleCosetReps",
    "coset_reps",
    "double_cosets",
    "conjugate",
    "intersection",
    "subgroups",
    # 범주 모델
    "Obj",
    "Mor",
    "ActionData",
    "EqObject",
    "EqMorphism",
    "validate_action",
    "validate_eq_object",
    "validate_eq_morphism",
    "random_cocycle",
    "hom_basis",
    "hom_dim",
    "is_iso",
    # 함자 / 자연변환
    "res",
    "ind",
    "conj",
    "nat_C",
    "nat_CI",
    "nat_I",
    "nat_I_reverse",
    "mackey_iso",
    "adjunction_check",
    "DIAGRAMS",
    "DiagramContext",
    "coherence_check",
    "object_subgroup",
    # 점화 층
    "PointedData",
    "validate_pointed",
    "tensor_eq",
    "frobenius_iso",
    "module_functor_check",
    "GreenContext",
    "green_categorical_check",
    "random_pointed",
    # 분해 / K0
    "MatAlgebra",
    "SimpleClass",
    "center",
    "primitive_idempotents",
    "simples_of",
    "certify_simples",
    "K0Builder",
    "decompose",
    "verify_mackey_axioms",
    "verify_green_axioms",
    "cross_check_mackey",
    "render_table",
    # smash product
    "GAlgebra",
    "smash_product",
    "block_structure",
    "compare_with_abstract",
    "validate_galgebra",
    # 스키마
    "CheckFailure",
    "CheckReport",
    "K0Table",
    "BlockInfo",
    # 예외
    "EquivariantError",
    "DimensionMismatchError",
    "SingularMatrixError",
    "ContainmentError",
    "RepresentativeError",
    "EquivarianceError",
    "SplittingError",
    "DecompositionError",
    "SpecError",
    "UnknownDiagramError",
    "UnsupportedAlgebraError",
]
