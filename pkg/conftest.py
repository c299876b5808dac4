"""
공용 테스트 픽스처

S3 원소 순서 (순열 생성원 (1,0,2), (1,2,0) 의 BFS):
    0 = id, 1 = (01), 2 = (012), 3 = (02), 4 = (12), 5 = (021)
S3 부분군 인덱스: 0 = 1, 1 = <1>, 2 = <3>, 3 = <4>, 4 = A3, 5 = S3
"""
from pathlib import Path

import numpy as np
import pytest

from app.config import settings
from app.core.equivariant.exactla import PrimeField
from app.core.equivariant.groups import Group, subgroups
from app.core.equivariant.pointed import PointedData
from app.core.equivariant.sscat import ActionData

ROOT = Path(__file__).resolve().parent
SPECS = ROOT / "specs"
GOLDEN = SPECS / "golden"


@pytest.fixture(autouse=True)
def debug_validate(monkeypatch):
    """모든 테스트에서 함자 출력의 등변 조건을 재검증"""
    monkeypatch.setattr(settings, "DEBUG_VALIDATE", True)


@pytest.fixture
def f5() -> PrimeField:
    return PrimeField(5)


@pytest.fixture
def f7() -> PrimeField:
    return PrimeField(7)


@pytest.fixture
def s3() -> Group:
    return Group.symmetric(3)


@pytest.fixture
def s3_subs(s3):
    return subgroups(s3)


@pytest.fixture
def trivial_s3(f7, s3) -> ActionData:
    """S3 가 Vec 에 자명하게 작용"""
    return ActionData.trivial(f7, s3)


@pytest.fixture
def swap_s3(f7, s3) -> ActionData:
    """S3 가 세 단순 대상을 치환"""
    return ActionData.from_generator_perms(f7, s3, [1, 2], [(1, 0, 2), (1, 2, 0)])


@pytest.fixture
def c2() -> Group:
    return Group.cyclic(2)


def c2_lambda(fld: PrimeField, value: int) -> ActionData:
    """C2 가 Vec 에 자명하게 작용하고 λ^{t,t} = value"""
    lam = np.ones((2, 2, 1), dtype=np.int64)
    lam[1, 1, 0] = value
    return ActionData(fld, Group.cyclic(2), np.zeros((2, 1), dtype=np.int64), lam)


@pytest.fixture
def pointed_c3_c2(f7) -> PointedData:
    """E = C3, G = C2 가 반전으로 작용 (τ, λ 자명)"""
    G = Group.cyclic(2)
    action = ActionData.from_generator_perms(f7, G, [1], [(0, 2, 1)])
    return PointedData.trivial(action, Group.cyclic(3))
