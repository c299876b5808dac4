"""
반단순 범주 / 군 작용 / 등변 대상 테스트
"""
import numpy as np
import pytest

from app.config import settings
from app.core.equivariant.exactla import PrimeField
from app.core.equivariant.exceptions import DimensionMismatchError, EquivarianceError, EquivariantError
from app.core.equivariant.functors import ind
from app.core.equivariant.groups import Group
from app.core.equivariant.sscat import (
    ActionData,
    EqMorphism,
    EqObject,
    Mor,
    Obj,
    direct_sum,
    ensure_morphism,
    ensure_valid,
    hom_basis,
    hom_dim,
    is_iso,
    random_cocycle,
    validate_action,
    validate_eq_object,
    with_lambda,
)
from conftest import c2_lambda


# ============================================================
# 작용 데이터 검증
# ============================================================

def test_trivial_and_swap_actions_validate(trivial_s3, swap_s3):
    assert validate_action(trivial_s3).passed
    assert validate_action(swap_s3).passed
    assert swap_s3.sigma[2].tolist() == [1, 2, 0]


def test_broken_normalization_reports_witness(trivial_s3):
    lam = trivial_s3.lam.copy()
    lam[1, 0, 0] = 2
    report = validate_action(with_lambda(trivial_s3, lam))
    assert not report.passed
    failure = report.failures[0]
    assert failure.check == "normalization"
    assert failure.witness == {"g": 1, "i": 0, "h": 0}


def test_maschke_violation(s3):
    report = validate_action(ActionData.trivial(PrimeField(3), s3))
    assert not report.passed
    assert report.failures[0].check == "maschke"


def test_broken_cocycle(f7, s3):
    action = ActionData.trivial(f7, s3)
    lam = action.lam.copy()
    lam[1, 2, 0] = 3
    report = validate_action(with_lambda(action, lam))
    assert not report.passed
    assert {f.check for f in report.failures} == {"cocycle"}


def test_inconsistent_generator_perms(f7, s3):
    with pytest.raises(EquivariantError):
        # (01) 를 3-순환으로 보내면 준동형이 아님
        ActionData.from_generator_perms(f7, s3, [1, 2], [(1, 2, 0), (1, 2, 0)])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_cocycle_is_valid(swap_s3, seed):
    lam = random_cocycle(swap_s3, np.random.default_rng(seed))
    assert validate_action(with_lambda(swap_s3, lam)).passed


@pytest.mark.parametrize("seed", [0, 5])
def test_random_cocycle_cyclic(f5, seed):
    c4 = Group.cyclic(4)
    action = ActionData.from_generator_perms(f5, c4, [1], [(1, 0)])
    assert validate_action(with_lambda(action, random_cocycle(action, np.random.default_rng(seed)))).passed


# ============================================================
# 등변 대상
# ============================================================

def test_from_generators_checks_cocycle(f5):
    action = c2_lambda(f5, 1)
    C2 = action.group.whole()
    X = Obj((1,))
    good = EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [4], 5)})
    assert validate_eq_object(good).passed
    with pytest.raises(EquivarianceError):
        EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [2], 5)})


def test_debug_validation_rejects_bad_structure(f5, monkeypatch):
    action = c2_lambda(f5, 1)
    C2 = action.group.whole()
    X = Obj((1,))
    # μ^t ∘ T^t(μ^t) = 4 ≠ λ^{t,t} = 1
    bad = EqObject(action, C2, X, {0: Mor.identity(X, 5), 1: Mor.scalar_blocks(X, [2], 5)})
    with pytest.raises(EquivarianceError):
        ensure_valid(bad)
    with pytest.raises(EquivarianceError):
        direct_sum([bad])
    monkeypatch.setattr(settings, "DEBUG_VALIDATE", False)
    assert ensure_valid(bad) is bad


def test_debug_validation_rejects_non_equivariant_map(f5):
    action = c2_lambda(f5, 1)
    C2 = action.group.whole()
    X = Obj((1,))
    plus = EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [1], 5)})
    minus = EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [4], 5)})
    with pytest.raises(EquivarianceError):
        ensure_morphism(EqMorphism(plus, minus, Mor.identity(X, 5)))
    assert validate_eq_object(plus).passed


def test_twisted_structure_square_root(f5):
    # λ^{t,t} = 4 이면 μ^t 는 4 의 제곱근 (2 또는 3)
    action = c2_lambda(f5, 4)
    C2 = action.group.whole()
    X = Obj((1,))
    for root in (2, 3):
        EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [root], 5)})
    with pytest.raises(EquivarianceError):
        EqObject.from_generators(action, C2, X, {1: Mor.scalar_blocks(X, [1], 5)})


def test_negative_multiplicity_rejected():
    with pytest.raises(EquivariantError):
        Obj((1, -1))


def test_morphism_shape_checked():
    with pytest.raises(DimensionMismatchError):
        Mor(Obj((1,)), Obj((2,)), (np.zeros((1, 1), dtype=np.int64),), 7)


# ============================================================
# Hom
# ============================================================

def test_hom_between_simples(swap_s3):
    X0, X1 = EqObject.simple(swap_s3, 0), EqObject.simple(swap_s3, 1)
    assert hom_dim(X0, X0) == 1
    assert hom_dim(X0, X1) == 0


def test_regular_end_dimension(trivial_s3, swap_s3):
    trivial = trivial_s3.group.trivial()
    S3 = trivial_s3.group.whole()
    regular = ind(trivial, S3, EqObject.simple(trivial_s3, 0))
    assert regular.obj.m == (6,)
    assert hom_dim(regular, regular) == 6
    permuted = ind(trivial, S3, EqObject.simple(swap_s3, 0))
    assert permuted.obj.m == (2, 2, 2)
    assert hom_dim(permuted, permuted) == 2


def test_hom_basis_is_equivariant(swap_s3):
    trivial = swap_s3.group.trivial()
    S3 = swap_s3.group.whole()
    M = ind(trivial, S3, EqObject.simple(swap_s3, 0))
    for phi in hom_basis(M, M):
        lhs = [M.mu[g] @ swap_s3.act_mor(g, phi.f) for g in S3.elements]
        rhs = [phi.f @ M.mu[g] for g in S3.elements]
        assert all(a.equals(b) for a, b in zip(lhs, rhs))


def test_hom_basis_independent_of_unknown_order(swap_s3):
    trivial = swap_s3.group.trivial()
    S3 = swap_s3.group.whole()
    M = ind(trivial, S3, EqObject.simple(swap_s3, 0))
    shuffled = hom_basis(M, M, shuffle_rng=np.random.default_rng(4))
    assert len(shuffled) == hom_dim(M, M)


def test_is_iso_finds_witness(swap_s3):
    trivial = swap_s3.group.trivial()
    S3 = swap_s3.group.whole()
    A = ind(trivial, S3, EqObject.simple(swap_s3, 0))
    B = ind(trivial, S3, EqObject.simple(swap_s3, 1))
    result = is_iso(A, B, 10, np.random.default_rng(0))
    assert result.is_iso and result.certified
    assert result.witness.is_invertible()


def test_is_iso_rejects_different_objects(swap_s3):
    result = is_iso(EqObject.simple(swap_s3, 0), EqObject.simple(swap_s3, 1), 5, np.random.default_rng(0))
    assert not result.is_iso
    assert result.certified


def test_direct_sum_injections_and_projections(swap_s3):
    X0, X1 = EqObject.simple(swap_s3, 0), EqObject.simple(swap_s3, 1)
    total = direct_sum([X0, X1])
    assert total.obj.obj.m == (1, 1, 0)
    for k, obj in enumerate((X0, X1)):
        composite = total.projections[k] @ total.injections[k]
        assert composite.f.equals(swap_s3.identity(obj.obj))
    assert (total.projections[1] @ total.injections[0]).f.is_zero
