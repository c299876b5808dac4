"""
대수 분해 / 단순 대상 추출 테스트
"""
import numpy as np
import pytest

from app.core.equivariant.exceptions import SplittingError
from app.core.equivariant.split import (
    MatAlgebra,
    block_structure,
    center,
    certify_simples,
    check_idempotents,
    primitive_idempotents,
    simples_of,
    validate_algebra,
)
from conftest import c2_lambda


def _diagonal(fld, n):
    units = []
    for i in range(n):
        m = fld.zeros(n, n)
        m[i, i] = 1
        units.append(m)
    return MatAlgebra.from_matrices(fld, units)


# ============================================================
# 행렬 대수
# ============================================================

def test_full_matrix_algebra(f5):
    A = MatAlgebra.full(f5, 2)
    assert A.dim == 4
    assert validate_algebra(A).passed
    assert center(A).dim == 1
    assert [(b.size, b.degree) for b in block_structure(A)] == [(2, 1)]


def test_diagonal_algebra(f5):
    A = _diagonal(f5, 2)
    assert center(A).dim == 2
    assert [(b.size, b.degree) for b in block_structure(A)] == [(1, 1), (1, 1)]


def test_field_extension_block(f5):
    # C² = 2 이고 2 는 F_5 의 제곱잉여가 아님 → F_25
    C = f5.array([[0, 2], [1, 0]])
    A = MatAlgebra.from_matrices(f5, [f5.eye(2), C])
    assert [(b.size, b.degree) for b in block_structure(A, np.random.default_rng(1))] == [(1, 2)]


def test_primitive_idempotents_are_complete(f5):
    A = _diagonal(f5, 3)
    idems = primitive_idempotents(A, np.random.default_rng(0))
    assert len(idems) == 3
    assert check_idempotents(f5, idems, A.unit).passed


def test_non_semisimple_commutative_algebra(f5):
    # F_5[x]/(x²) 는 반단순이 아님
    N = f5.array([[0, 0], [1, 0]])
    A = MatAlgebra.from_matrices(f5, [f5.eye(2), N])
    with pytest.raises(SplittingError):
        primitive_idempotents(A, np.random.default_rng(0))


# ============================================================
# 단순 대상
# ============================================================

def test_s3_simple_counts(trivial_s3, s3_subs):
    counts = [len(simples_of(trivial_s3, H, np.random.default_rng(0))) for H in s3_subs]
    assert counts == [1, 2, 2, 2, 3, 3]


def test_s3_simples_sorted_and_certified(trivial_s3, s3_subs):
    S3 = s3_subs[5]
    simples = simples_of(trivial_s3, S3, np.random.default_rng(0))
    assert [s.obj.dim for s in simples] == [1, 1, 2]
    assert [s.degree for s in simples] == [1, 1, 1]
    # 자명 표현이 부호 표현보다 먼저
    assert simples[0].character == (1, 1, 1, 1, 1, 1)
    assert [s.obj.label for s in simples] == ["S0", "S1", "S2"]
    assert certify_simples(trivial_s3, S3, simples, np.random.default_rng(0)).passed


def test_swap_simples(swap_s3, s3_subs):
    # 궤도 하나, 안정자 <4> 위의 단순 대상 2개
    simples = simples_of(swap_s3, s3_subs[5], np.random.default_rng(0))
    assert [s.obj.obj.m for s in simples] == [(1, 1, 1), (1, 1, 1)]
    assert certify_simples(swap_s3, s3_subs[5], simples).passed


def test_twisted_c2_square_class(f5):
    # λ^{t,t} = 4 는 제곱수 → μ^t ∈ {2, 3}
    action = c2_lambda(f5, 4)
    simples = simples_of(action, action.group.whole(), np.random.default_rng(0))
    assert len(simples) == 2
    assert sorted(int(s.obj.mu[1].blocks[0][0, 0]) for s in simples) == [2, 3]


def test_twisted_c2_non_square_class(f5):
    # λ^{t,t} = 2 는 제곱수가 아님 → 차원 2, 잉여체 F_25
    action = c2_lambda(f5, 2)
    simples = simples_of(action, action.group.whole(), np.random.default_rng(0))
    assert len(simples) == 1
    assert simples[0].obj.dim == 2
    assert simples[0].degree == 2
    assert certify_simples(action, action.group.whole(), simples).passed
