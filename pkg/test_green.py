"""
K0 표 / Mackey·Green 공리 테스트
"""
import numpy as np
import pytest

from app.core.equivariant.exactla import PrimeField
from app.core.equivariant.exceptions import ContainmentError
from app.core.equivariant.green import (
    K0Builder,
    cross_check_mackey,
    render_table,
    verify_green_axioms,
    verify_mackey_axioms,
)
from app.core.equivariant.groups import Group, subgroups
from app.core.equivariant.pointed import PointedData
from app.core.equivariant.sscat import ActionData


@pytest.fixture(scope="module")
def s3_builder():
    s3 = Group.symmetric(3)
    return K0Builder(ActionData.trivial(PrimeField(7), s3), seed=0)


@pytest.fixture(scope="module")
def s3_table(s3_builder):
    return s3_builder.build()


@pytest.fixture(scope="module")
def pointed_table():
    c2 = Group.cyclic(2)
    action = ActionData.from_generator_perms(PrimeField(7), c2, [1], [(0, 2, 1)])
    P = PointedData.trivial(action, Group.cyclic(3))
    return K0Builder(action, pointed=P, seed=0).build()


# ============================================================
# 표 값
# ============================================================

def test_s3_ranks(s3_table):
    assert [s3_table.rank(h) for h in range(6)] == [1, 2, 2, 2, 3, 3]


def test_s3_induction_from_c2(s3_table):
    # I^{S3}_{<1>}(자명) = 자명 + 표준
    assert s3_table.ind(5, 1)[:, 0].tolist() == [1, 0, 1]


def test_s3_regular_decomposition(s3_table):
    assert s3_table.ind(5, 0)[:, 0].tolist() == [1, 1, 2]


def test_s3_restriction_to_c2(s3_table):
    assert s3_table.res(5, 1).tolist() == [[1, 0, 1], [0, 1, 1]]


def test_conjugation_is_permutation(s3_table):
    # <1> 을 원소 2 로 켤레하면 다른 위수 2 부분군
    c = s3_table.conj(1, 2, 3)
    assert sorted(c.sum(axis=0).tolist()) == [1, 1]


def test_table_is_json_ready(s3_table):
    data = s3_table.dict()
    assert set(data["restriction"]) >= {"5>1", "5>0", "1>0"}
    assert "1>4" not in data["restriction"]
    assert data["fusion"] == {}


# ============================================================
# 공리
# ============================================================

def test_mackey_axioms_hold(s3_table):
    report = verify_mackey_axioms(s3_table, Group.symmetric(3))
    assert report.passed, report.failures[:1]
    assert report.notes["ranks"] == [1, 2, 2, 2, 3, 3]


def test_mackey_axioms_detect_corruption(s3_table):
    broken = s3_table.copy(deep=True)
    broken.induction["5>1"] = [[1, 0], [0, 0], [1, 1]]
    report = verify_mackey_axioms(broken, Group.symmetric(3))
    assert not report.passed
    assert report.failed > 0


def test_cross_check_with_witnesses(s3_builder, s3_table):
    report = cross_check_mackey(s3_builder, s3_table, [(5, 1, 1), (5, 1, 4), (4, 0, 0)])
    assert report.passed


def test_green_axioms_need_fusion(s3_table):
    report = verify_green_axioms(s3_table, Group.symmetric(3))
    assert not report.passed
    assert report.failures[0].check == "monoidal"


def test_pointed_ranks_and_green_axioms(pointed_table):
    assert pointed_table.rank(0) == 3
    assert pointed_table.rank(1) == 3
    assert verify_mackey_axioms(pointed_table, Group.cyclic(2)).passed
    report = verify_green_axioms(pointed_table, Group.cyclic(2))
    assert report.passed, report.failures[:1]


def test_pointed_unit_is_simple(pointed_table):
    for h in (0, 1):
        unit = pointed_table.unit_vector(h)
        assert unit.sum() == 1
        assert np.array_equal(pointed_table.fusion_tensor(h)[int(unit.argmax())], np.eye(3, dtype=np.int64))


# ============================================================
# 범위 / 출력
# ============================================================

def test_scope_must_be_conjugation_closed():
    s3 = Group.symmetric(3)
    subs = subgroups(s3)
    with pytest.raises(ContainmentError):
        K0Builder(ActionData.trivial(PrimeField(7), s3), scope=[subs[0], subs[1], subs[5]])


def test_render_table(s3_table):
    text = render_table(s3_table)
    assert text.startswith("K0 table  p=7  |G|=6")
    assert "R H5 -> H1" in text
    assert text.endswith("\n")
