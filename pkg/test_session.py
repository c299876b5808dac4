"""
세션 스펙 로더 테스트
"""
import json

import pytest
from pydantic import ValidationError

from app.core.equivariant.exceptions import SpecError
from app.schemas.session import Backend, SessionSpec
from app.services.session import SessionLoader
from conftest import SPECS


def _spec(**overrides) -> SessionSpec:
    data = {"name": "t", "p": 7, "group": {"preset": "S3"}}
    data.update(overrides)
    return SessionSpec.parse_obj(data)


# ============================================================
# 동봉된 스펙
# ============================================================

@pytest.mark.parametrize(
    "name,order,n,subgroup_count",
    [
        ("trivial_s3", 6, 1, 6),
        ("twisted_c2", 2, 1, 2),
        ("random_c4", 4, 2, 3),
        ("pointed_c3_c2", 2, 3, 2),
        ("smash_s3", 6, 3, 6),
    ],
)
def test_bundled_specs_load(name, order, n, subgroup_count):
    session = SessionLoader.load(SPECS / f"{name}.json")
    assert session.name == name
    assert session.group.order == order
    assert session.action.n == n
    assert len(session.subgroups) == subgroup_count


def test_pointed_spec_builds_pointed_data():
    session = SessionLoader.load(SPECS / "pointed_c3_c2.json")
    assert session.backend == Backend.POINTED
    assert session.pointed is not None
    assert session.pointed.E.order == 3
    assert session.action is session.pointed.action


def test_smash_spec_builds_algebra():
    session = SessionLoader.load(SPECS / "smash_s3.json")
    assert session.galgebra is not None
    assert session.spec.checks[-1] == "smash-compare"


def test_twisted_lambda_is_kept():
    session = SessionLoader.load(SPECS / "twisted_c2.json")
    assert int(session.action.lam[1, 1, 0]) == 4


# ============================================================
# 입력 오류
# ============================================================

def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        SessionLoader.load(tmp_path / "nope.json")


def test_schema_error_becomes_spec_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 4, "group": {"preset": "C2"}}), encoding="utf-8")
    with pytest.raises(SpecError):
        SessionLoader.read(path)


@pytest.mark.parametrize("p", [4, 9, 3])
def test_prime_validation(p):
    # 합성수, 또는 D_MAX 이하의 소수
    with pytest.raises(ValidationError):
        _spec(p=p)


def test_exactly_one_group_source():
    with pytest.raises(ValidationError):
        _spec(group={"preset": "C2", "table": [[0, 1], [1, 0]]})
    with pytest.raises(ValidationError):
        _spec(group={})


def test_sigma_forms_are_exclusive():
    with pytest.raises(ValidationError):
        _spec(action={"sigma": [[0]] * 6, "sigma_generators": [[0], [0]]})


def test_backend_needs_payload():
    with pytest.raises(ValidationError):
        _spec(backend="pointed")
    with pytest.raises(ValidationError):
        _spec(backend="smash")


def test_lambda_alias():
    spec = _spec(group={"preset": "C2"}, action={"lambda": {"random": 5}})
    assert spec.action.lam == {"random": 5}


@pytest.mark.parametrize("p,preset", [(7, "C7"), (5, "C10"), (7, "D14")])
def test_prime_dividing_group_order(p, preset):
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(p=p, group={"preset": preset}))


@pytest.mark.parametrize("preset", ["D4", "X3", "C", "S"])
def test_bad_preset(preset):
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(group={"preset": preset}))


def test_labels_must_match_n():
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(action={"n": 1, "labels": ["a", "b"]}))


def test_sigma_generators_count():
    # S3 preset 의 탐욕적 생성원은 두 개
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(action={"sigma_generators": [[1, 0]]}))


def test_sigma_must_be_permutations():
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(group={"preset": "C2"}, action={"sigma": [[0, 1], [0, 0]]}))


def test_pointed_n_must_match_label_group():
    spec = _spec(
        group={"preset": "C2"},
        backend="pointed",
        action={"n": 2},
        pointed={"E": {"preset": "C3"}},
    )
    with pytest.raises(SpecError):
        SessionLoader.build(spec)


def test_group_order_limit():
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(p=53, group={"preset": "C49"}))


# ============================================================
# 범위 / 난수
# ============================================================

def test_explicit_scope_is_closed_under_conjugation():
    session = SessionLoader.build(_spec(subgroups=[[0, 1]]))
    assert [H.order for H in session.subgroups] == [2, 2, 2]


def test_non_subgroup_scope_rejected():
    with pytest.raises(SpecError):
        SessionLoader.build(_spec(subgroups=[[0, 2]]))


def test_default_seed_and_rng_determinism():
    session = SessionLoader.build(_spec())
    assert session.seed == 0
    a = session.rng(3, 1).integers(0, 1000, 8).tolist()
    b = session.rng(3, 1).integers(0, 1000, 8).tolist()
    c = session.rng(3, 2).integers(0, 1000, 8).tolist()
    assert a == b
    assert a != c
