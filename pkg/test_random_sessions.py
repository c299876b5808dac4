"""
무작위 세션 격자 테스트

시드마다 (λ) 또는 (λ, τ) 를 새로 뽑아 실행기로 mackey / coherence / adjunction / tables 를 모두 돌립니다.
"""
import numpy as np
import pytest

from app.core.equivariant.exactla import Poly, factor, is_irreducible
from app.core.equivariant.pointed import validate_pointed
from app.core.equivariant.sscat import validate_action
from app.schemas.session import Scope, SessionSpec
from app.services.runner import CheckRunner
from app.services.session import SessionLoader

SEEDS = list(range(20))
COMMANDS = ("mackey", "coherence", "adjunction", "tables")


def c4_on_c2(seed: int) -> dict:
    """C4 가 E = C2 에 자명하게 작용, 비자명 쌍지표 τ"""
    return {
        "name": f"c4_on_c2_{seed}",
        "p": 5,
        "seed": seed,
        "group": {"preset": "C4"},
        "backend": "pointed",
        "pointed": {"E": {"preset": "C2"}, "tau": {"random": seed}},
    }


def c2_on_c3(seed: int) -> dict:
    """C2 가 E = C3 에 반전으로 작용, 무작위 게이지 (λ, τ)"""
    return {
        "name": f"c2_on_c3_{seed}",
        "p": 7,
        "seed": seed,
        "group": {"preset": "C2"},
        "backend": "pointed",
        "action": {"sigma_generators": [[0, 2, 1]]},
        "pointed": {"E": {"preset": "C3"}, "tau": {"random": seed}},
    }


def d8_on_square(seed: int) -> dict:
    """D8 이 정사각형 꼭짓점 네 개를 치환, 무작위 λ"""
    square = [[1, 2, 3, 0], [3, 2, 1, 0]]
    return {
        "name": f"d8_on_square_{seed}",
        "p": 5,
        "seed": seed,
        "group": {"permutations": square, "name": "D8"},
        "action": {"sigma_generators": square, "lambda": {"random": seed}},
    }


def _session(data: dict):
    return SessionLoader.build(SessionSpec.parse_obj(data))


def _run_all(data: dict):
    session = _session(data)
    runner = CheckRunner(session, jobs=2, scope=Scope.SAMPLED)
    for command in COMMANDS:
        entries = runner.run(command)
        failing = [(e.name, e.error or [f.message for f in e.failures[:1]]) for e in entries if e.status != "pass"]
        assert entries, command
        assert not failing, (command, failing)
    return runner


# ============================================================
# 실행기 격자
# ============================================================

@pytest.mark.parametrize("seed", SEEDS)
def test_c4_on_c2_pointed(seed):
    runner = _run_all(c4_on_c2(seed))
    assert validate_pointed(runner.session.pointed).passed
    # 자명 σ, 순환 G: 모든 부분군에서 단순 대상 수는 |E|·|H| 이하
    for h, H in enumerate(runner.subgroups):
        assert 1 <= runner.table.rank(h) <= 2 * H.order
    assert runner.table.monoidal


@pytest.mark.parametrize("seed", SEEDS)
def test_c2_on_c3_pointed(seed):
    runner = _run_all(c2_on_c3(seed))
    assert validate_pointed(runner.session.pointed).passed
    # 게이지 동치이므로 자명 데이터와 같은 표: 고정점 하나 → 2, 궤도 {1, 2} → 1
    assert [runner.table.rank(h) for h in range(2)] == [3, 3]
    assert int(runner.table.fusion_tensor(1).sum()) == 11


@pytest.mark.parametrize("seed", SEEDS)
def test_d8_random_lambda(seed):
    runner = _run_all(d8_on_square(seed))
    assert validate_action(runner.session.action).passed
    top = runner.builder.index(runner.session.group.whole())
    # 추이적 작용: 꼭짓점 안정자 {1, 반사} 의 기약 표현 둘
    assert runner.table.rank(top) == 2


# ============================================================
# 인수분해
# ============================================================

def _random_poly(rng: np.random.Generator, p: int, degree: int) -> Poly:
    coeffs = rng.integers(0, p, degree + 1).tolist()
    coeffs[-1] = int(rng.integers(1, p))
    return Poly(tuple(coeffs), p)


@pytest.mark.parametrize("seed", range(10))
def test_factor_random_polynomials(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        p = int(rng.choice([5, 7, 11, 13]))
        # g · h^e 로 중복 인수도 섞음
        e = int(rng.integers(1, 4))
        h_deg = int(rng.integers(0, 12 // e // 2 + 1))
        g_deg = int(rng.integers(1, 12 - e * h_deg + 1))
        f = _random_poly(rng, p, g_deg)
        h = _random_poly(rng, p, h_deg)
        for _ in range(e):
            f = f * h
        assert 1 <= f.degree <= 12

        factors = factor(f, rng)
        product = Poly.one(p)
        for g, mult in factors:
            assert g.lead == 1
            assert is_irreducible(g), (f, g)
            for _ in range(mult):
                product = product * g
        assert product * f.lead == f
        assert len({g for g, _ in factors}) == len(factors)
