"""
점화 모노이달 층 테스트
"""
import numpy as np
import pytest

import app.core.equivariant.pointed as pointed_module
from app.core.equivariant.exactla import PrimeField
from app.core.equivariant.exceptions import EquivariantError
from app.core.equivariant.green import K0Builder, verify_green_axioms
from app.core.equivariant.groups import Group
from app.core.equivariant.pointed import (
    GreenContext,
    PointedData,
    associator,
    distributor,
    frobenius_iso,
    gauge_pointed,
    green_categorical_check,
    ind_module_structure,
    module_functor_check,
    random_pointed,
    right_distributor,
    tensor_eq,
    tensor_eq_mor,
    tensor_mor,
    tensor_obj,
    unit_eq,
    validate_pointed,
)
from app.core.equivariant.sscat import (
    ActionData,
    EqMorphism,
    Mor,
    Obj,
    direct_sum,
    random_beta,
    validate_eq_morphism,
    validate_eq_object,
)
from app.core.equivariant.split import simples_of


def test_trivial_data_validates(pointed_c3_c2):
    report = validate_pointed(pointed_c3_c2)
    assert report.passed, report.failures[:1]


def test_label_group_must_match(f7):
    action = ActionData.trivial(f7, Group.cyclic(2), 2)
    with pytest.raises(EquivariantError):
        PointedData.trivial(action, Group.cyclic(3))


def test_non_automorphism_rejected(f7):
    # C3 의 0 을 움직이는 순열은 자기동형이 아님
    action = ActionData.from_generator_perms(f7, Group.cyclic(2), [1], [(1, 0, 2)])
    report = validate_pointed(PointedData.trivial(action, Group.cyclic(3)))
    assert not report.passed
    assert report.failures[0].check == "automorphism"


def test_broken_hexagon(pointed_c3_c2):
    tau = pointed_c3_c2.tau.copy()
    tau[1, 1, 1] = 3
    report = validate_pointed(PointedData(pointed_c3_c2.action, pointed_c3_c2.E, tau))
    assert not report.passed
    assert "hexagon" in {f.check for f in report.failures}


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_pointed_inversion(pointed_c3_c2, seed):
    P = random_pointed(pointed_c3_c2.action, Group.cyclic(3), np.random.default_rng(seed))
    assert validate_pointed(P).passed


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_pointed_bicharacter(seed):
    # C3 가 C3 에 자명하게 작용: 비자명 τ 에서 시작
    c3 = Group.cyclic(3)
    action = ActionData.trivial(PrimeField(7), c3, 3)
    P = random_pointed(action, c3, np.random.default_rng(seed))
    assert validate_pointed(P).passed


# ============================================================
# 텐서
# ============================================================

def test_tensor_obj_follows_label_group(pointed_c3_c2):
    P = pointed_c3_c2
    assert tensor_obj(P, Obj((0, 1, 0)), Obj((0, 1, 0))).m == (0, 0, 1)
    assert tensor_obj(P, Obj((0, 1, 1)), Obj((0, 1, 1))).m == (2, 1, 1)


def test_tensor_of_equivariant_objects(pointed_c3_c2):
    P = pointed_c3_c2
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    for A in simples:
        for B in simples:
            assert validate_eq_object(tensor_eq(P, A, B)).passed
    one = unit_eq(P, C2)
    assert tensor_eq(P, one, simples[-1]).obj == simples[-1].obj


def test_associator_is_equivariant(pointed_c3_c2):
    P = random_pointed(pointed_c3_c2.action, Group.cyclic(3), np.random.default_rng(5))
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    A, B = simples[0], simples[-1]
    phi = associator(P, A, B, B)
    assert validate_eq_morphism(phi).passed
    assert phi.is_invertible()


# ============================================================
# 모듈 함자 / Frobenius / Green
# ============================================================

@pytest.fixture
def gauged(pointed_c3_c2):
    return random_pointed(pointed_c3_c2.action, Group.cyclic(3), np.random.default_rng(2))


def test_module_functor_and_frobenius(gauged):
    P = gauged
    G = P.action.group
    C2, one = G.whole(), G.trivial()
    upper = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    lower = [s.obj for s in simples_of(P.action, one, np.random.default_rng(0))]
    assert module_functor_check(P, one, C2, upper[0], upper[-1], lower[1]).passed
    witness, report = frobenius_iso(P, one, C2, lower[2], upper[-1])
    assert report.passed, report.failures[:1]
    assert witness.is_invertible()


def test_green_categorical(gauged):
    P = gauged
    G = P.action.group
    C2, one = G.whole(), G.trivial()
    upper = tuple(s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))[:2])
    lower = tuple(s.obj for s in simples_of(P.action, one, np.random.default_rng(0))[:2])
    ctx = GreenContext(H=C2, K=one, L=one, upper=upper, lower=lower, elements=(0, 1))
    report = green_categorical_check(P, ctx)
    assert report.passed, report.failures[:1]


def test_green_categorical_checks_every_module_pair(gauged, monkeypatch):
    P = gauged
    G = P.action.group
    C2, one = G.whole(), G.trivial()
    upper = tuple(s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))[:2])
    lower = tuple(s.obj for s in simples_of(P.action, one, np.random.default_rng(0))[:1])
    seen = []
    original = pointed_module.module_functor_check

    def recording(P, L, H, A, B, V):
        seen.append((id(A), id(B)))
        return original(P, L, H, A, B, V)

    monkeypatch.setattr(pointed_module, "module_functor_check", recording)
    ctx = GreenContext(H=C2, K=one, L=one, upper=upper, lower=lower, elements=(0, 1))
    report = green_categorical_check(P, ctx)
    assert report.passed, report.failures[:1]
    assert {(id(A), id(B)) for A in upper for B in upper} == set(seen)


def test_tensor_of_identities(pointed_c3_c2):
    P = pointed_c3_c2
    A, B = Obj((1, 2, 0)), Obj((0, 1, 1))
    f = tensor_mor(P, Mor.identity(A, P.p), Mor.identity(B, P.p))
    assert f.equals(Mor.identity(tensor_obj(P, A, B), P.p))


def test_tensor_eq_mor_of_identities(gauged):
    P = gauged
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    phi = tensor_eq_mor(P, EqMorphism.identity(simples[0]), EqMorphism.identity(simples[-1]))
    assert validate_eq_morphism(phi).passed
    assert phi.is_invertible()


@pytest.mark.parametrize("seed", [0, 4])
def test_gauge_keeps_data_valid(pointed_c3_c2, seed):
    P = pointed_c3_c2
    beta = random_beta(P.action, np.random.default_rng(seed), fixed=(0,))
    assert validate_pointed(gauge_pointed(P, beta)).passed


def test_ind_module_structure_is_iso(gauged):
    P = gauged
    G = P.action.group
    C2, one = G.whole(), G.trivial()
    M = simples_of(P.action, C2, np.random.default_rng(0))[-1].obj
    V = simples_of(P.action, one, np.random.default_rng(0))[1].obj
    phi = ind_module_structure(P, one, C2, M, V)
    assert validate_eq_morphism(phi).passed
    assert phi.is_invertible()


# ============================================================
# 비자명 σ, τ 위의 텐서
# ============================================================

@pytest.mark.parametrize("seed", range(8))
def test_tensor_eq_with_random_tau(pointed_c3_c2, seed):
    P = random_pointed(pointed_c3_c2.action, Group.cyclic(3), np.random.default_rng(seed))
    assert validate_pointed(P).passed
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    for A in simples:
        for B in simples:
            report = validate_eq_object(tensor_eq(P, A, B))
            assert report.passed, (A.label, B.label, report.failures[:1])


@pytest.mark.parametrize("seed", [0, 3, 6])
def test_fusion_table_with_random_tau(pointed_c3_c2, seed):
    P = random_pointed(pointed_c3_c2.action, Group.cyclic(3), np.random.default_rng(seed))
    table = K0Builder(P.action, pointed=P, seed=seed).build()
    assert [table.rank(h) for h in range(2)] == [3, 3]
    # W ⊗ W = 1 + χ + W, 나머지 곱은 단순 대상 하나
    assert int(table.fusion_tensor(1).sum()) == 11
    assert int(table.fusion_tensor(0).sum()) == 9
    report = verify_green_axioms(table, P.action.group)
    assert report.passed, report.failures[:1]


# ============================================================
# 직합 분배
# ============================================================

def _is_permutation(f: Mor) -> bool:
    for block in f.blocks:
        if block.shape[0] != block.shape[1]:
            return False
        if not np.isin(block, (0, 1)).all():
            return False
        if block.size and not ((block.sum(axis=0) == 1).all() and (block.sum(axis=1) == 1).all()):
            return False
    return True


def test_distributor_is_equivariant_permutation(gauged):
    P = gauged
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    A, B, C = simples[-1], simples[0], simples[-1]
    f = distributor(P, A.obj, [B.obj, C.obj])
    assert _is_permutation(f)
    phi = EqMorphism(
        direct_sum([tensor_eq(P, A, B), tensor_eq(P, A, C)]).obj,
        tensor_eq(P, A, direct_sum([B, C]).obj),
        f,
    )
    report = validate_eq_morphism(phi)
    assert report.passed, report.failures[:1]
    assert phi.is_invertible()


def test_right_distributor_is_equivariant_permutation(gauged):
    P = gauged
    C2 = P.action.group.whole()
    simples = [s.obj for s in simples_of(P.action, C2, np.random.default_rng(0))]
    A, B, C = simples[-1], simples[1], simples[-1]
    f = right_distributor(P, [B.obj, C.obj], A.obj)
    assert _is_permutation(f)
    phi = EqMorphism(
        direct_sum([tensor_eq(P, B, A), tensor_eq(P, C, A)]).obj,
        tensor_eq(P, direct_sum([B, C]).obj, A),
        f,
    )
    report = validate_eq_morphism(phi)
    assert report.passed, report.failures[:1]
    assert phi.is_invertible()
