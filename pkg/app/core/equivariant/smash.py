"""
군 작용이 있는 대수와 smash product S # F_p[H]

추상 엔진과 독립된 두 번째 계산 경로입니다. S 가 F_p 사본들의 곱이고 G 가
좌표를 치환하는 경우, S#F_p[H] 의 블록 구조가 𝒞^H 의 단순 대상 목록과
같은 K0 데이터를 주는지 비교합니다.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from app.config import settings

from .exactla import Matrix, PrimeField
from .exceptions import UnsupportedAlgebraError
from .groups import Group, Subgroup
from .schemas import BlockInfo, CheckReport
from .split import MatAlgebra, block_structure as split_blocks, simples_of
from .sscat import ActionData

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Algebra:
    """
    구조 상수로 주어진 유한 차원 결합 대수

    structure[i, j, k] = e_i·e_j 의 e_k 계수, unit 은 단위원의 좌표.
    """
    field: PrimeField
    structure: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        p = self.field.p
        c = np.asarray(self.structure, dtype=np.int64) % p
        d = c.shape[0]
        if c.shape != (d, d, d):
            raise UnsupportedAlgebraError(f"구조 상수 모양 {c.shape} 이 (d, d, d) 가 아닙니다")
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "unit", np.asarray(self.unit, dtype=np.int64) % p)

    @property
    def dim(self) -> int:
        return int(self.structure.shape[0])

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.field.p

    def left_regular(self, x: np.ndarray) -> Matrix:
        """L_x[k, j] = (x·e_j)_k"""
        return np.einsum("i,ijk->kj", x, self.structure) % self.field.p

    def regular(self) -> MatAlgebra:
        """왼쪽 정칙 표현의 상 (단위원이 있으므로 충실)"""
        eye = np.eye(self.dim, dtype=np.int64)
        return MatAlgebra.from_matrices(self.field, [self.left_regular(eye[i]) for i in range(self.dim)])


def validate_algebra_data(A: Algebra, name: str = "algebra") -> CheckReport:
    """결합법칙과 단위원"""
    report = CheckReport(name=name)
    p = A.field.p
    c = A.structure
    left = np.einsum("ijm,mkl->ijkl", c, c) % p
    right = np.einsum("jkm,iml->ijkl", c, c) % p
    bad = np.argwhere(left != right)
    report.record(
        bad.size == 0,
        "associative",
        "(e_ie_j)e_k ≠ e_i(e_je_k)",
        **({"i": int(bad[0][0]), "j": int(bad[0][1]), "k": int(bad[0][2])} if bad.size else {}),
    )
    eye = np.eye(A.dim, dtype=np.int64)
    unit_left = np.einsum("i,ijk->jk", A.unit, c) % p
    unit_right = np.einsum("j,ijk->ik", A.unit, c) % p
    report.record(
        np.array_equal(unit_left, eye) and np.array_equal(unit_right, eye),
        "unit",
        "1·e_j ≠ e_j 또는 e_j·1 ≠ e_j",
    )
    report.note(dim=A.dim)
    return report


@dataclass(frozen=True, eq=False)
class GAlgebra:
    """
    G 가 자기동형으로 작용하는 대수

    automorphisms[g][k, j] = (g·e_j)_k. permutation 이 있으면 F_p^d 의 좌표 치환입니다.
    """
    algebra: Algebra
    group: Group
    automorphisms: np.ndarray
    permutation: Optional[np.ndarray] = None

    @classmethod
    def permutation_product(cls, fld: PrimeField, group: Group, perms: np.ndarray) -> "GAlgebra":
        """S = F_p^d (원시 멱등원 기저), g·e_i = e_{σ_g(i)}"""
        perms = np.asarray(perms, dtype=np.int64)
        d = perms.shape[1]
        structure = np.zeros((d, d, d), dtype=np.int64)
        idx = np.arange(d)
        structure[idx, idx, idx] = 1
        autos = np.zeros((group.order, d, d), dtype=np.int64)
        for g in range(group.order):
            autos[g, perms[g], idx] = 1
        return cls(Algebra(fld, structure, np.ones(d, dtype=np.int64)), group, autos, perms)

    @property
    def field(self) -> PrimeField:
        return self.algebra.field


def validate_galgebra(S: GAlgebra) -> CheckReport:
    """대수 공리, 각 g 의 곱/단위 보존, A_{gh} = A_g A_h"""
    report = CheckReport(name="galgebra")
    report.absorb(validate_algebra_data(S.algebra))
    p = S.field.p
    c = S.algebra.structure
    A = S.automorphisms % p
    order = S.group.order
    d = S.algebra.dim
    if A.shape != (order, d, d):
        report.record(False, "shape", f"자기동형 모양 {A.shape} != {(order, d, d)}")
        return report
    for g in range(order):
        Ag = A[g]
        lhs = np.einsum("ijk,lk->ijl", c, Ag) % p
        rhs = np.einsum("ai,bj,abl->ijl", Ag, Ag, c) % p
        report.record(np.array_equal(lhs, rhs), "multiplicative", "g(xy) ≠ g(x)g(y)", g=g)
        report.record(np.array_equal(Ag @ S.algebra.unit % p, S.algebra.unit), "unital", "g(1) ≠ 1", g=g)
    for g in range(order):
        for h in range(order):
            gh = S.group.mul(g, h)
            report.record(np.array_equal(A[g] @ A[h] % p, A[gh]), "group_law", "A_g A_h ≠ A_{gh}", g=g, h=h)
    return report


def smash_product(S: GAlgebra, H: Subgroup) -> Algebra:
    """
    S # F_p[H], 기저 e_a # h (a 바깥, H 원소 순서 안쪽)

    (s#h)(s′#h′) = s·(h·s′) # hh′
    """
    p = S.field.p
    c = S.algebra.structure
    d = S.algebra.dim
    elems = list(H.elements)
    pos = {h: i for i, h in enumerate(elems)}
    m = len(elems)
    structure = np.zeros((d * m, d * m, d * m), dtype=np.int64)
    for hi, h in enumerate(elems):
        # twisted[a, b, c] = (e_a · (h·e_b))_c
        twisted = np.einsum("akc,kb->abc", c, S.automorphisms[h]) % p
        for hj, h2 in enumerate(elems):
            hk = pos[S.group.mul(h, h2)]
            structure[hi::m, hj::m, hk::m] = twisted
    unit = np.zeros(d * m, dtype=np.int64)
    unit[pos[0]::m] = S.algebra.unit
    out = Algebra(S.field, structure, unit)
    logger.debug(f"smash product: dim={out.dim} (d={d}, |H|={m})")
    return out


def block_structure(A: Algebra, rng: Optional[np.random.Generator] = None) -> List[BlockInfo]:
    """정칙 표현 위에서 단순 블록 (size, degree)"""
    return split_blocks(A.regular(), rng)


def abstract_action(S: GAlgebra) -> ActionData:
    """좌표 치환 대수에 대응하는 추상 작용 (n = d, σ = 치환, λ ≡ 1)"""
    if S.permutation is None:
        raise UnsupportedAlgebraError("F_p 사본의 곱에 좌표 치환으로 작용하는 대수만 비교할 수 있습니다")
    order = S.group.order
    d = S.algebra.dim
    return ActionData(S.field, S.group, S.permutation, np.ones((order, order, d), dtype=np.int64))


def compare_with_abstract(S: GAlgebra, H: Subgroup, rng: Optional[np.random.Generator] = None) -> CheckReport:
    """
    S#F_p[H] 의 블록 데이터와 𝒞^H 의 단순 대상 데이터 비교

    블록 수 = 단순 대상 수, 그리고 (단순 가군 차원 size·degree, degree) 의 중복집합이
    (기저 대상 차원, End 차수) 의 중복집합과 같아야 합니다.
    """
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    report = CheckReport(name="smash_compare")
    action = abstract_action(S)
    A = smash_product(S, H)
    report.absorb(validate_algebra_data(A, name="smash_product"))
    report.record(
        A.dim == S.algebra.dim * H.order,
        "dimension",
        "dim(S#F_p[H]) ≠ dim S·|H|",
        dim=A.dim,
        expected=S.algebra.dim * H.order,
    )
    blocks = block_structure(A, rng)
    simples = simples_of(action, H, rng)
    block_data = Counter((b.size * b.degree, b.degree) for b in blocks)
    simple_data = Counter((s.obj.dim, s.degree) for s in simples)
    context = {"H": list(H.elements)}
    report.record(len(blocks) == len(simples), "count", "블록 수 ≠ 단순 대상 수", blocks=len(blocks), simples=len(simples), **context)
    report.record(
        block_data == simple_data,
        "k0_data",
        "블록 (가군 차원, 차수) ≠ 단순 대상 (차원, 차수)",
        blocks=sorted(block_data.elements()),
        simples=sorted(simple_data.elements()),
        **context,
    )
    report.note(blocks=[b.dict() for b in blocks], simples=len(simples), **context)
    return report


def algebra_from_spec(fld: PrimeField, group: Group, structure: Sequence, unit: Sequence, automorphisms: Sequence) -> GAlgebra:
    return GAlgebra(Algebra(fld, np.asarray(structure), np.asarray(unit)), group, np.asarray(automorphisms, dtype=np.int64))
