"""
반단순 범주 모델

- Obj: 단순 대상 X_1..X_n 의 중복도 벡터
- Mor: 단순 대상별 블록 행렬 (target.m[i] × source.m[i])
- ActionData: 군 작용 (σ_g 순열 + λ^{g,h}_i 스칼라), T^g(X_i) = X_{σ_g(i)}
- EqObject / EqMorphism: 등변 대상/사상
- hom_basis: 등변 Hom 공간 기저 (선형계 풀이)

블록 조립(assemble)과 라벨 매칭(label_morphism)은 직합/텐서 사이의
표준 치환 사상을 만드는 데 쓰입니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.config import settings

from .exactla import Matrix, PrimeField
from .exceptions import DimensionMismatchError, EquivarianceError, EquivariantError, SingularMatrixError
from .groups import Group, Subgroup
from .schemas import CheckReport

logger = logging.getLogger(__name__)

Labels = List[List[Hashable]]


# ============================================================
# 대상과 사상
# ============================================================

@dataclass(frozen=True)
class Obj:
    """중복도 벡터 m (길이 n)"""
    m: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if any(v < 0 for v in self.m):
            raise EquivariantError(f"중복도는 음수가 될 수 없습니다: {self.m}")

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def dim(self) -> int:
        return sum(self.m)

    @classmethod
    def simple(cls, n: int, i: int, copies: int = 1) -> "Obj":
        return cls(tuple(copies if j == i else 0 for j in range(n)))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.m) if v)


@dataclass(frozen=True, eq=False)
class Mor:
    """단순 대상별 블록 행렬 사상"""
    source: Obj
    target: Obj
    blocks: Tuple[Matrix, ...]
    p: int

    def __post_init__(self):
        if self.source.n != self.target.n or len(self.blocks) != self.source.n:
            raise DimensionMismatchError("사상의 단순 대상 수가 맞지 않습니다")
        for i, b in enumerate(self.blocks):
            if b.shape != (self.target.m[i], self.source.m[i]):
                raise DimensionMismatchError(
                    f"블록 {i} 모양 {b.shape} != {(self.target.m[i], self.source.m[i])}"
                )

    @classmethod
    def identity(cls, obj: Obj, p: int) -> "Mor":
        return cls(obj, obj, tuple(np.eye(v, dtype=np.int64) for v in obj.m), p)

    @classmethod
    def zero(cls, source: Obj, target: Obj, p: int) -> "Mor":
        return cls(
            source, target, tuple(np.zeros((t, s), dtype=np.int64) for s, t in zip(source.m, target.m)), p
        )

    @classmethod
    def scalar_blocks(cls, obj: Obj, scalars: Sequence[int], p: int) -> "Mor":
        """단순 대상 i 블록이 scalars[i]·I 인 자기사상"""
        return cls(
            obj, obj, tuple((np.eye(v, dtype=np.int64) * (int(c) % p)) % p for v, c in zip(obj.m, scalars)), p
        )

    def __matmul__(self, other: "Mor") -> "Mor":
        """합성 self ∘ other"""
        if other.target != self.source:
            raise DimensionMismatchError(f"합성 불가: {other.target.m} -> {self.source.m}")
        return Mor(
            other.source,
            self.target,
            tuple((a @ b) % self.p for a, b in zip(self.blocks, other.blocks)),
            self.p,
        )

    def __add__(self, other: "Mor") -> "Mor":
        if other.source != self.source or other.target != self.target:
            raise DimensionMismatchError("합이 정의되지 않는 사상입니다")
        return Mor(self.source, self.target, tuple((a + b) % self.p for a, b in zip(self.blocks, other.blocks)), self.p)

    def scale(self, c: int) -> "Mor":
        return Mor(self.source, self.target, tuple((b * (int(c) % self.p)) % self.p for b in self.blocks), self.p)

    def equals(self, other: "Mor") -> bool:
        return (
            self.source == other.source
            and self.target == other.target
            and all(np.array_equal(a % self.p, b % self.p) for a, b in zip(self.blocks, other.blocks))
        )

    @property
    def is_zero(self) -> bool:
        return all(not b.any() for b in self.blocks)

    def is_invertible(self, fld: PrimeField) -> bool:
        if self.source != self.target:
            return False
        return all(b.shape[0] == b.shape[1] and fld.is_invertible(b) for b in self.blocks if b.size)

    def inverse(self, fld: PrimeField) -> "Mor":
        if self.source.m != self.target.m:
            raise SingularMatrixError("중복도가 다른 대상 사이의 사상은 가역이 아닙니다")
        return Mor(self.target, self.source, tuple(fld.inverse(b) for b in self.blocks), self.p)

    def to_matrix(self) -> Matrix:
        """블록 대각 행렬로 평탄화 (자기사상 대수 표현용)"""
        rows, cols = self.target.dim, self.source.dim
        out = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for b in self.blocks:
            out[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    @classmethod
    def from_matrix(cls, source: Obj, target: Obj, matrix: Matrix, p: int) -> "Mor":
        blocks = []
        r = c = 0
        for s, t in zip(source.m, target.m):
            blocks.append(np.array(matrix[r : r + t, c : c + s], dtype=np.int64) % p)
            r += t
            c += s
        return cls(source, target, tuple(blocks), p)

    def witness(self) -> Dict[str, object]:
        return {
            "source": list(self.source.m),
            "target": list(self.target.m),
            "blocks": [b.tolist() for b in self.blocks],
        }


# ============================================================
# 직합 블록 조립
# ============================================================

def direct_sum_obj(parts: Sequence[Obj], n: Optional[int] = None) -> Obj:
    if not parts:
        if n is None:
            raise EquivariantError("빈 직합의 단순 대상 수를 알 수 없습니다")
        return Obj((0,) * n)
    return Obj(tuple(sum(col) for col in zip(*(q.m for q in parts))))


def part_offsets(parts: Sequence[Obj]) -> np.ndarray:
    """offsets[k, i] = 단순 대상 i 블록에서 k 번째 조각의 시작 위치"""
    arr = np.array([q.m for q in parts], dtype=np.int64).reshape(len(parts), -1)
    out = np.zeros((len(parts) + 1, arr.shape[1]), dtype=np.int64)
    out[1:] = np.cumsum(arr, axis=0)
    return out


def assemble(
    target_parts: Sequence[Obj],
    source_parts: Sequence[Obj],
    components: Mapping[Tuple[int, int], Mor],
    p: int,
) -> Mor:
    """
    직합 사이 사상 조립

    Args:
        target_parts: 공역 직합 조각
        source_parts: 정의역 직합 조각
        components: (r, c) → 조각 c 에서 조각 r 로 가는 사상
    """
    target = direct_sum_obj(target_parts)
    source = direct_sum_obj(source_parts)
    to = part_offsets(target_parts)
    so = part_offsets(source_parts)
    blocks = [np.zeros((target.m[i], source.m[i]), dtype=np.int64) for i in range(target.n)]
    for (r, c), f in components.items():
        if f.source != source_parts[c] or f.target != target_parts[r]:
            raise DimensionMismatchError(f"조각 ({r},{c}) 의 정의역/공역이 맞지 않습니다")
        for i, b in enumerate(f.blocks):
            if b.size:
                blocks[i][to[r, i] : to[r + 1, i], so[c, i] : so[c + 1, i]] = b
    return Mor(source, target, tuple(blocks), p)


def extract(
    f: Mor, target_parts: Sequence[Obj], source_parts: Sequence[Obj], r: int, c: int
) -> Mor:
    """조립된 사상에서 (r, c) 조각 추출"""
    to = part_offsets(target_parts)
    so = part_offsets(source_parts)
    blocks = tuple(
        np.array(b[to[r, i] : to[r + 1, i], so[c, i] : so[c + 1, i]], dtype=np.int64)
        for i, b in enumerate(f.blocks)
    )
    return Mor(source_parts[c], target_parts[r], blocks, f.p)


def block_diagonal(mors: Sequence[Mor], p: int) -> Mor:
    return assemble(
        [f.target for f in mors], [f.source for f in mors], {(k, k): f for k, f in enumerate(mors)}, p
    )


# ============================================================
# 라벨 기반 치환 사상 (결합자/분배자/모노이달 구조)
# ============================================================

def base_labels(obj: Obj) -> Labels:
    """각 단순 대상의 복사본 라벨 0..m_i-1"""
    return [list(range(v)) for v in obj.m]


def sum_labels(parts: Sequence[Labels]) -> Labels:
    n = len(parts[0])
    return [[(k, lab) for k, part in enumerate(parts) for lab in part[i]] for i in range(n)]


def label_morphism(
    source: Obj,
    source_labels: Labels,
    target: Obj,
    target_labels: Labels,
    mapping: Callable[[Hashable], Hashable],
    p: int,
    scalar: Optional[Callable[[Hashable], int]] = None,
) -> Mor:
    """
    라벨 대응으로 만든 (스칼라배) 치환 사상

    같은 단순 대상 블록 안에서 source 라벨 lab 를 target 라벨 mapping(lab) 로 보냅니다.
    """
    blocks = []
    for i in range(source.n):
        src = source_labels[i]
        tgt = {lab: pos for pos, lab in enumerate(target_labels[i])}
        if len(src) != source.m[i] or len(tgt) != target.m[i] or len(src) != len(tgt):
            raise DimensionMismatchError(f"단순 대상 {i} 의 라벨 수가 맞지 않습니다")
        block = np.zeros((target.m[i], source.m[i]), dtype=np.int64)
        for q, lab in enumerate(src):
            image = mapping(lab)
            if image not in tgt:
                raise DimensionMismatchError(f"라벨 {image} 가 공역에 없습니다")
            block[tgt[image], q] = 1 if scalar is None else int(scalar(lab)) % p
        if block.size and not np.array_equal(np.count_nonzero(block, axis=0), np.ones(block.shape[1])):
            raise DimensionMismatchError(f"단순 대상 {i} 의 라벨 대응이 전단사가 아닙니다")
        blocks.append(block)
    return Mor(source, target, tuple(blocks), p)


# ============================================================
# 군 작용
# ============================================================

@dataclass(frozen=True, eq=False)
class ActionData:
    """
    반단순 범주 위의 군 작용

    sigma[g, i] = σ_g(i), lam[g, h, i] = λ^{g,h}_i (T₂^{g,h} 의 X_i 성분).
    """
    field: PrimeField
    group: Group
    sigma: np.ndarray
    lam: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=np.int64)
        lam = np.asarray(self.lam, dtype=np.int64) % self.field.p
        order = self.group.order
        if sigma.ndim != 2 or sigma.shape[0] != order:
            raise EquivariantError(f"sigma 모양이 올바르지 않습니다: {sigma.shape}")
        n = sigma.shape[1]
        if lam.shape != (order, order, n):
            raise EquivariantError(f"lambda 모양 {lam.shape} != {(order, order, n)}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigma_inv", np.argsort(sigma, axis=1).astype(np.int64))

    @property
    def n(self) -> int:
        return int(self.sigma.shape[1])

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def trivial(cls, fld: PrimeField, group: Group, n: int = 1) -> "ActionData":
        order = group.order
        return cls(
            fld,
            group,
            np.tile(np.arange(n, dtype=np.int64), (order, 1)),
            np.ones((order, order, n), dtype=np.int64),
        )

    @classmethod
    def from_generator_perms(
        cls,
        fld: PrimeField,
        group: Group,
        generators: Sequence[int],
        perms: Sequence[Sequence[int]],
        lam: Optional[np.ndarray] = None,
    ) -> "ActionData":
        """
        생성원의 σ 만 주어졌을 때 준동형으로 확장

        σ_{s·g} = σ_s ∘ σ_g 로 BFS 확장하며 모순이 있으면 예외를 던집니다.
        """
        n = len(perms[0]) if perms else 1
        known: Dict[int, Tuple[int, ...]] = {0: tuple(range(n))}
        queue = [0]
        while queue:
            g = queue.pop(0)
            for s, ps in zip(generators, perms):
                h = group.mul(s, g)
                image = tuple(int(ps[known[g][i]]) for i in range(n))
                if h not in known:
                    known[h] = image
                    queue.append(h)
                elif known[h] != image:
                    raise EquivariantError(f"생성원 순열이 준동형으로 확장되지 않습니다 (원소 {h})")
        if len(known) != group.order:
            raise EquivariantError("생성원이 군 전체를 생성하지 않습니다")
        sigma = np.array([known[g] for g in range(group.order)], dtype=np.int64)
        if lam is None:
            lam = np.ones((group.order, group.order, n), dtype=np.int64)
        return cls(fld, group, sigma, lam)

    # ============================================================
    # T^g 와 T₂
    # ============================================================

    def act_obj(self, g: int, obj: Obj) -> Obj:
        """T^g(M): result[j] = m[σ_g⁻¹(j)]"""
        return Obj(tuple(obj.m[k] for k in self.sigma_inv[g]))

    def act_mor(self, g: int, f: Mor) -> Mor:
        return Mor(
            self.act_obj(g, f.source),
            self.act_obj(g, f.target),
            tuple(f.blocks[k] for k in self.sigma_inv[g]),
            f.p,
        )

    def act_labels(self, g: int, labels: Labels) -> Labels:
        return [list(labels[k]) for k in self.sigma_inv[g]]

    def t2(self, g: int, h: int, obj: Obj) -> Mor:
        """(T₂^{g,h})_M : T^gT^h(M) → T^{gh}(M), 블록 j 는 λ^{g,h}_{σ_{gh}⁻¹(j)}·I"""
        gh = self.group.mul(g, h)
        target = self.act_obj(gh, obj)
        scalars = [self.lam[g, h, k] for k in self.sigma_inv[gh]]
        return Mor.scalar_blocks(target, scalars, self.p)

    def t2_inv(self, g: int, h: int, obj: Obj) -> Mor:
        gh = self.group.mul(g, h)
        target = self.act_obj(gh, obj)
        scalars = [self.field.inv(self.lam[g, h, k]) for k in self.sigma_inv[gh]]
        return Mor.scalar_blocks(target, scalars, self.p)

    def identity(self, obj: Obj) -> Mor:
        return Mor.identity(obj, self.p)

    def orbits(self, H: Subgroup) -> List[Tuple[int, ...]]:
        """H 의 단순 대상 라벨 궤도 (최소 라벨 순)"""
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen:
                continue
            orbit = tuple(sorted({int(self.sigma[g, i]) for g in H.elements}))
            seen.update(orbit)
            out.append(orbit)
        return out


def validate_action(action: ActionData) -> CheckReport:
    """
    작용 데이터 검증 (σ 준동형, λ 정규화, cocycle, p ∤ |G|)

    실패 시 위반한 (g, h, l, i) 를 증거로 남깁니다.
    """
    report = CheckReport(name="validate_action")
    g_order = action.group.order
    n = action.n
    p = action.p
    sigma, lam, table = action.sigma, action.lam, action.group.table

    report.record(g_order % p != 0, "maschke", f"p={p} 가 |G|={g_order} 를 나눕니다", p=p, order=g_order)
    for g in range(g_order):
        if sorted(sigma[g].tolist()) != list(range(n)):
            report.record(False, "sigma_permutation", "σ_g 가 순열이 아닙니다", g=g, sigma=sigma[g])
            return report
    report.record(np.array_equal(sigma[0], np.arange(n)), "sigma_identity", "σ_1 ≠ id", sigma=sigma[0])

    composed = sigma[np.arange(g_order)[:, None, None], sigma[None, :, :]]  # σ_g(σ_h(i))
    product = sigma[table]
    bad = np.argwhere(composed != product)
    report.record(bad.size == 0, "sigma_homomorphism", "σ_g∘σ_h ≠ σ_{gh}", **_first(bad, ("g", "h", "i")))

    bad = np.argwhere(lam % p == 0)
    report.record(bad.size == 0, "lambda_nonzero", "λ 가 0 입니다", **_first(bad, ("g", "h", "i")))

    bad_right = np.argwhere(lam[:, 0, :] != 1)
    report.record(
        bad_right.size == 0, "normalization", "λ^{g,1}_i ≠ 1", **_first(bad_right, ("g", "i"), extra={"h": 0})
    )
    bad_left = np.argwhere(lam[0, :, :] != 1)
    report.record(
        bad_left.size == 0, "normalization", "λ^{1,g}_i ≠ 1", **_first(bad_left, ("h", "i"), extra={"g": 0})
    )

    if bad.size == 0 and report.passed:
        ar = np.arange(g_order)
        g = ar[:, None, None, None]
        h = ar[None, :, None, None]
        l = ar[None, None, :, None]
        i = np.arange(n)[None, None, None, :]
        lhs = lam[table[g, h], l, i] * lam[g, h, sigma[l, i]] % p
        rhs = lam[g, table[h, l], i] * lam[h, l, i] % p
        bad = np.argwhere(lhs != rhs)
        report.record(
            bad.size == 0,
            "cocycle",
            "λ^{gh,l}_i·λ^{g,h}_{σ_l(i)} ≠ λ^{g,hl}_i·λ^{h,l}_i",
            **_first(bad, ("g", "h", "l", "i")),
        )
    report.note(order=g_order, n=n, p=p)
    return report


def _first(bad: np.ndarray, names: Sequence[str], extra: Optional[Dict[str, int]] = None) -> Dict[str, int]:
    if bad.size == 0:
        return {}
    out = {name: int(v) for name, v in zip(names, bad[0])}
    out.update(extra or {})
    return out


# ============================================================
# 무작위 cocycle / 게이지
# ============================================================

def coboundary(action: ActionData, beta: np.ndarray) -> np.ndarray:
    """
    (δβ)^{g,h}_i = β^g_{σ_h(i)}·β^h_i / β^{gh}_i  (β^1 ≡ 1 이어야 정규화 유지)
    """
    p = action.p
    order = action.group.order
    table = action.group.table
    beta = np.asarray(beta, dtype=np.int64) % p
    inv_beta = np.vectorize(lambda v: pow(int(v), p - 2, p))(beta).astype(np.int64)
    ar = np.arange(order)
    g = ar[:, None]
    h = ar[None, :]
    first = beta[g[..., None], action.sigma[h]]          # β^g_{σ_h(i)}
    second = beta[h]                                       # β^h_i
    third = inv_beta[table[g, h]]                          # 1/β^{gh}_i
    return (first * second % p) * third % p


def random_beta(action: ActionData, rng: np.random.Generator, fixed: Sequence[int] = ()) -> np.ndarray:
    """정규화된 무작위 게이지 β (β^1 ≡ 1, fixed 라벨은 1)"""
    order = action.group.order
    beta = np.ones((order, action.n), dtype=np.int64)
    if order > 1:
        beta[1:] = rng.integers(1, action.p, size=(order - 1, action.n))
    for i in fixed:
        beta[:, i] = 1
    return beta


def carry_cocycle(action: ActionData, values: Sequence[int]) -> np.ndarray:
    """
    순환군 C_m = <t> 의 carry cocycle: λ^{t^a,t^b}_i = values[i] (a+b ≥ m), 그 외 1

    values 는 σ-궤도 위에서 상수여야 합니다.
    """
    order = action.group.order
    exponent = action.group.exponents()
    lam = np.ones((order, order, action.n), dtype=np.int64)
    for g in range(order):
        for h in range(order):
            if exponent[g] + exponent[h] >= order:
                lam[g, h] = np.asarray(values, dtype=np.int64) % action.p
    return lam


def random_cocycle(action: ActionData, rng: np.random.Generator, carry: bool = True) -> np.ndarray:
    """
    무작위 유효 λ (순환군이면 궤도 상수 carry cocycle × 무작위 coboundary)
    """
    p = action.p
    lam = coboundary(action, random_beta(action, rng))
    if carry and action.group.is_cyclic() and action.group.order > 1:
        values = np.ones(action.n, dtype=np.int64)
        for orbit in action.orbits(action.group.whole()):
            c = int(rng.integers(1, p))
            for i in orbit:
                values[i] = c
        lam = lam * carry_cocycle(action, values) % p
    return lam


def with_lambda(action: ActionData, lam: np.ndarray) -> ActionData:
    return ActionData(action.field, action.group, action.sigma, lam, action.labels)


def gauge_action(action: ActionData, beta: np.ndarray) -> ActionData:
    return with_lambda(action, action.lam * coboundary(action, beta) % action.p)


# ============================================================
# 등변 대상 / 사상
# ============================================================

@dataclass(frozen=True, eq=False)
class EqObject:
    """
    H-등변 대상 (M, μ)

    mu[g] : T^g(M) → M, 모든 g ∈ H 에 대해 저장합니다.
    """
    action: ActionData
    H: Subgroup
    obj: Obj
    mu: Mapping[int, Mor]
    label: str = ""

    @property
    def dim(self) -> int:
        return self.obj.dim

    @property
    def p(self) -> int:
        return self.action.p

    def same_as(self, other: "EqObject") -> bool:
        """데이터 동일성 (부분군, 중복도, 모든 μ 블록)"""
        return (
            self.H == other.H
            and self.obj == other.obj
            and all(self.mu[g].equals(other.mu[g]) for g in self.H.elements)
        )

    @classmethod
    def trivial_structure(cls, action: ActionData, obj: Obj, label: str = "") -> "EqObject":
        """자명 부분군 위의 대상"""
        return cls(action, action.group.trivial(), obj, {0: action.identity(obj)}, label)

    @classmethod
    def simple(cls, action: ActionData, i: int) -> "EqObject":
        return cls.trivial_structure(action, Obj.simple(action.n, i), label=f"X{i}")

    @classmethod
    def from_generators(
        cls, action: ActionData, H: Subgroup, obj: Obj, generators: Mapping[int, Mor], label: str = ""
    ) -> "EqObject":
        """
        생성원의 구조 사상만으로 전체 μ 생성 후 모든 쌍에 대해 cocycle 조건 검증

        μ^{sg} = μ^s ∘ T^s(μ^g) ∘ (T₂^{s,g})⁻¹
        """
        mu: Dict[int, Mor] = {0: action.identity(obj)}
        queue = [0]
        while queue:
            g = queue.pop(0)
            for s, mu_s in generators.items():
                sg = action.group.mul(s, g)
                if sg in mu:
                    continue
                mu[sg] = mu_s @ action.act_mor(s, mu[g]) @ action.t2_inv(s, g, obj)
                queue.append(sg)
        if set(mu) != set(H.elements):
            raise EquivarianceError("생성원이 H 를 생성하지 않습니다")
        result = cls(action, H, obj, mu, label)
        report = validate_eq_object(result)
        if not report.passed:
            raise EquivarianceError(f"생성원 구조가 cocycle 조건을 만족하지 않습니다: {report.failures[0].message}")
        return result

    def witness(self) -> Dict[str, object]:
        return {
            "H": list(self.H.elements),
            "m": list(self.obj.m),
            "mu": {str(g): [b.tolist() for b in self.mu[g].blocks] for g in self.H.elements},
        }


@dataclass(frozen=True, eq=False)
class EqMorphism:
    """등변 사상 f : (M, μ) → (N, ν)"""
    source: EqObject
    target: EqObject
    f: Mor

    def __matmul__(self, other: "EqMorphism") -> "EqMorphism":
        return EqMorphism(other.source, self.target, self.f @ other.f)

    @classmethod
    def identity(cls, obj: EqObject) -> "EqMorphism":
        return cls(obj, obj, obj.action.identity(obj.obj))

    def equals(self, other: "EqMorphism") -> bool:
        return self.f.equals(other.f)

    def is_invertible(self) -> bool:
        return self.f.is_invertible(self.source.action.field)

    def inverse(self) -> "EqMorphism":
        return EqMorphism(self.target, self.source, self.f.inverse(self.source.action.field))

    def __add__(self, other: "EqMorphism") -> "EqMorphism":
        return EqMorphism(self.source, self.target, self.f + other.f)

    def scale(self, c: int) -> "EqMorphism":
        return EqMorphism(self.source, self.target, self.f.scale(c))


def validate_eq_object(obj: EqObject, name: str = "eq_object") -> CheckReport:
    """블록별 검증: μ^1 = id, μ^g 가역, μ^g∘T^g(μ^h) = μ^{gh}∘T₂^{g,h}"""
    report = CheckReport(name=name)
    a = obj.action
    fld = a.field
    elems = obj.H.elements
    if set(obj.mu) != set(elems):
        report.record(False, "domain", "μ 가 H 전체에 정의되지 않았습니다", H=list(elems), keys=sorted(obj.mu))
        return report
    report.record(obj.mu[0].equals(a.identity(obj.obj)), "unit", "μ^1 ≠ id", mu=obj.mu[0].witness())
    for g in elems:
        mg = obj.mu[g]
        ok = mg.source == a.act_obj(g, obj.obj) and mg.target == obj.obj
        if not report.record(ok, "shape", "μ^g 의 정의역/공역이 맞지 않습니다", g=g):
            return report
        report.record(mg.is_invertible(fld), "invertible", "μ^g 가 가역이 아닙니다", g=g, mu=mg.witness())
    for g in elems:
        for h in elems:
            gh = a.group.mul(g, h)
            lhs = obj.mu[g] @ a.act_mor(g, obj.mu[h])
            rhs = obj.mu[gh] @ a.t2(g, h, obj.obj)
            report.record(
                lhs.equals(rhs),
                "cocycle",
                "μ^g∘T^g(μ^h) ≠ μ^{gh}∘T₂^{g,h}",
                g=g,
                h=h,
                object=obj.witness(),
            )
    return report


def validate_eq_morphism(phi: EqMorphism, name: str = "eq_morphism") -> CheckReport:
    """등변성: ν^g ∘ T^g(f) = f ∘ μ^g (모든 g ∈ H)"""
    report = CheckReport(name=name)
    a = phi.source.action
    if phi.source.H != phi.target.H:
        report.record(False, "subgroup", "정의역/공역 부분군이 다릅니다")
        return report
    if phi.f.source != phi.source.obj or phi.f.target != phi.target.obj:
        report.record(False, "shape", "사상의 정의역/공역이 대상과 맞지 않습니다")
        return report
    for g in phi.source.H.elements:
        lhs = phi.target.mu[g] @ a.act_mor(g, phi.f)
        rhs = phi.f @ phi.source.mu[g]
        report.record(lhs.equals(rhs), "equivariance", "ν^g∘T^g(f) ≠ f∘μ^g", g=g, f=phi.f.witness())
    return report


def ensure_valid(obj: EqObject) -> EqObject:
    """DEBUG_VALIDATE 모드에서만 출력 대상을 재검증"""
    if settings.DEBUG_VALIDATE:
        report = validate_eq_object(obj)
        if not report.passed:
            raise EquivarianceError(f"등변 대상 검증 실패: {report.failures[0].message} {report.failures[0].witness}")
    return obj


def ensure_morphism(phi: EqMorphism) -> EqMorphism:
    if settings.DEBUG_VALIDATE:
        report = validate_eq_morphism(phi)
        if not report.passed:
            raise EquivarianceError(f"등변 사상 검증 실패: {report.failures[0].witness}")
    return phi


def character_key(obj: EqObject) -> Tuple[int, ...]:
    """기저 불변 trace 키: g ∈ H 마다 σ_g 고정 단순 대상 블록의 tr μ^g_j 합"""
    a = obj.action
    key = []
    for g in obj.H.elements:
        total = 0
        for j in range(a.n):
            if a.sigma[g, j] == j and obj.obj.m[j]:
                total += int(np.trace(obj.mu[g].blocks[j]))
        key.append(total % a.p)
    return tuple(key)


# ============================================================
# Hom 풀이
# ============================================================

def hom_basis(
    M: EqObject, N: EqObject, shuffle_rng: Optional[np.random.Generator] = None
) -> List[EqMorphism]:
    """
    Hom_{𝒞^H}(M, N) 기저

    미지수는 단순 대상별 f_i 블록 성분(행 우선)이며, H 생성원 g 마다
    ν^g_j f_{σ_g⁻¹(j)} - f_j μ^g_j = 0 을 세웁니다.

    Args:
        shuffle_rng: 주어지면 미지수 순서를 섞어서 풀이 (기저 선택 독립성 확인용)
    """
    if M.H != N.H:
        raise EquivariantError("Hom 은 같은 부분군 위의 대상 사이에서만 정의됩니다")
    a = M.action
    fld = a.field
    n = a.n
    mm, nm = M.obj.m, N.obj.m
    offsets: Dict[int, int] = {}
    total = 0
    for i in range(n):
        size = nm[i] * mm[i]
        if size:
            offsets[i] = total
            total += size
    if total == 0:
        return []
    rows = []
    for g in M.H.generators():
        mu, nu = M.mu[g], N.mu[g]
        for j in range(n):
            k = int(a.sigma_inv[g, j])
            height = nm[j] * mm[k]
            if height == 0:
                continue
            block = np.zeros((height, total), dtype=np.int64)
            if k in offsets:
                off = offsets[k]
                block[:, off : off + nm[k] * mm[k]] += np.kron(nu.blocks[j], np.eye(mm[k], dtype=np.int64))
            if j in offsets:
                off = offsets[j]
                block[:, off : off + nm[j] * mm[j]] -= np.kron(np.eye(nm[j], dtype=np.int64), mu.blocks[j].T)
            rows.append(block % fld.p)
    system = np.vstack(rows) if rows else fld.zeros(0, total)
    if shuffle_rng is not None:
        perm = shuffle_rng.permutation(total)
        shuffled = fld.nullspace(system[:, perm])
        null = np.zeros_like(shuffled)
        null[:, perm] = shuffled
    else:
        null = fld.nullspace(system)
    basis = []
    for vec in null:
        blocks = []
        for i in range(n):
            if i in offsets:
                off = offsets[i]
                blocks.append(vec[off : off + nm[i] * mm[i]].reshape(nm[i], mm[i]) % fld.p)
            else:
                blocks.append(np.zeros((nm[i], mm[i]), dtype=np.int64))
        basis.append(EqMorphism(M, N, Mor(M.obj, N.obj, tuple(blocks), fld.p)))
    return basis


def hom_dim(M: EqObject, N: EqObject) -> int:
    return len(hom_basis(M, N))


@dataclass(frozen=True)
class IsoResult:
    """is_iso 결과 - yes 는 증명됨(witness), no 는 한쪽 오차 error_bound"""
    is_iso: bool
    witness: Optional[EqMorphism]
    certified: bool
    error_bound: float


def is_iso(M: EqObject, N: EqObject, trials: int, rng: np.random.Generator) -> IsoResult:
    """
    확률적 동형 판정

    Hom 기저의 무작위 결합이 가역이면 그 사상을 증거로 반환합니다.
    모든 시도가 실패하면 "no" 이며 오차는 (D/p)^trials 이하입니다.
    """
    if M.H != N.H or M.obj != N.obj:
        return IsoResult(False, None, True, 0.0)
    basis = hom_basis(M, N)
    if not basis:
        return IsoResult(False, None, True, 0.0)
    fld = M.action.field
    for _ in range(max(trials, 1)):
        coeffs = rng.integers(0, fld.p, size=len(basis))
        f = Mor.zero(M.obj, N.obj, fld.p)
        for c, b in zip(coeffs, basis):
            f = f + b.f.scale(int(c))
        if f.is_invertible(fld):
            witness = EqMorphism(M, N, f)
            if validate_eq_morphism(witness).passed:
                return IsoResult(True, witness, True, 0.0)
    bound = min(1.0, (M.dim / fld.p) ** max(trials, 1))
    return IsoResult(False, None, False, bound)


# ============================================================
# 직합
# ============================================================

@dataclass(frozen=True, eq=False)
class DirectSum:
    """직합 대상 + 포함/사영 사상"""
    obj: EqObject
    injections: Tuple[EqMorphism, ...]
    projections: Tuple[EqMorphism, ...]


def direct_sum(objects: Sequence[EqObject], label: str = "") -> DirectSum:
    if not objects:
        raise EquivariantError("빈 직합은 지원하지 않습니다")
    H = objects[0].H
    if any(o.H != H for o in objects):
        raise EquivariantError("직합은 같은 부분군 위의 대상끼리만 가능합니다")
    a = objects[0].action
    p = a.p
    parts = [o.obj for o in objects]
    total = direct_sum_obj(parts)
    mu = {}
    for g in H.elements:
        mu[g] = assemble(parts, [a.act_obj(g, q) for q in parts], {(k, k): o.mu[g] for k, o in enumerate(objects)}, p)
    result = ensure_valid(EqObject(a, H, total, mu, label or "+".join(o.label for o in objects)))
    injections = []
    projections = []
    for k, o in enumerate(objects):
        inj = assemble(parts, [o.obj], {(k, 0): a.identity(o.obj)}, p)
        proj = assemble([o.obj], parts, {(0, k): a.identity(o.obj)}, p)
        injections.append(EqMorphism(o, result, inj))
        projections.append(EqMorphism(result, o, proj))
    return DirectSum(result, tuple(injections), tuple(projections))
