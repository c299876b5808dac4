"""
smash product 비교 경로 테스트
"""
import numpy as np
import pytest

from app.core.equivariant.exceptions import UnsupportedAlgebraError
from app.core.equivariant.groups import Group, subgroups
from app.core.equivariant.smash import (
    GAlgebra,
    algebra_from_spec,
    block_structure,
    compare_with_abstract,
    smash_product,
    validate_algebra_data,
    validate_galgebra,
)


def _blocks(S, H):
    return [(b.size, b.degree) for b in block_structure(smash_product(S, H), np.random.default_rng(0))]


def test_group_algebra_of_c2(f5):
    c2 = Group.cyclic(2)
    S = GAlgebra.permutation_product(f5, c2, [[0], [0]])
    assert validate_galgebra(S).passed
    assert _blocks(S, c2.whole()) == [(1, 1), (1, 1)]


def test_swap_gives_full_matrix_algebra(f5):
    c2 = Group.cyclic(2)
    S = GAlgebra.permutation_product(f5, c2, [[0, 1], [1, 0]])
    A = smash_product(S, c2.whole())
    assert A.dim == 4
    assert validate_algebra_data(A).passed
    assert _blocks(S, c2.whole()) == [(2, 1)]


def test_s3_on_three_points(f5, s3):
    S = GAlgebra.permutation_product(f5, s3, s3.permutations)
    assert validate_galgebra(S).passed
    assert len(_blocks(S, s3.whole())) == 2


@pytest.mark.parametrize("index", range(6))
def test_compare_with_abstract_engine(f5, s3, index):
    S = GAlgebra.permutation_product(f5, s3, s3.permutations)
    H = subgroups(s3)[index]
    report = compare_with_abstract(S, H, np.random.default_rng(0))
    assert report.passed, report.failures[:1]


def test_compare_requires_permutation_algebra(f5, c2):
    structure = np.zeros((1, 1, 1), dtype=np.int64)
    structure[0, 0, 0] = 1
    S = algebra_from_spec(f5, c2, structure, [1], [[[1]], [[1]]])
    assert validate_galgebra(S).passed
    with pytest.raises(UnsupportedAlgebraError):
        compare_with_abstract(S, c2.whole())


def test_broken_automorphism_detected(f5, c2):
    structure = np.zeros((2, 2, 2), dtype=np.int64)
    structure[0, 0, 0] = structure[1, 1, 1] = 1
    # 2·e_0 는 곱을 보존하지 않음
    S = algebra_from_spec(f5, c2, structure, [1, 1], [[[1, 0], [0, 1]], [[2, 0], [0, 1]]])
    report = validate_galgebra(S)
    assert not report.passed
    assert {f.check for f in report.failures} >= {"multiplicative"}
