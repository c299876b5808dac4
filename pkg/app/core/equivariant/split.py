"""
반단순 대수 분해

End 대수를 행렬 대수(MatAlgebra)로 두고 중심, 원시 멱등원, 블록 구조를 구합니다.
멱등원은 무작위 원소의 최소다항식을 준소(primary) 인수로 나눈 뒤
중국인의 나머지 정리로 만든 다항식 멱등원입니다.

simples_of 는 Ind_1^H(X_i) 의 End 를 분해해 𝒞^H 의 단순 대상 동형류를 하나씩 뽑습니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings

from .exactla import Matrix, Poly, PrimeField, factor, min_poly, poly_inverse_mod
from .exceptions import DecompositionError, EquivarianceError, SplittingError
from .functors import ind
from .groups import Subgroup
from .schemas import BlockInfo, CheckReport
from .sscat import (
    ActionData,
    EqMorphism,
    EqObject,
    Mor,
    Obj,
    character_key,
    direct_sum,
    hom_basis,
    hom_dim,
    is_iso,
    validate_eq_object,
)

logger = logging.getLogger(__name__)


# ============================================================
# 행렬 대수
# ============================================================

@dataclass(frozen=True, eq=False)
class MatAlgebra:
    """
    n×n 행렬들의 span 으로 주어진 대수

    basis 는 일차독립이며 unit 은 span 안의 단위원입니다 (모서리 대수 eAe 에서는 e).
    """
    field: PrimeField
    basis: Tuple[Matrix, ...]
    unit: Matrix

    @classmethod
    def from_matrices(
        cls, fld: PrimeField, matrices: Sequence[Matrix], unit: Optional[Matrix] = None
    ) -> "MatAlgebra":
        """span 의 일차독립 기저로 정리해 생성"""
        if not matrices:
            raise SplittingError("빈 대수는 지원하지 않습니다")
        size = matrices[0].shape[0]
        stacked = np.stack([np.asarray(m, dtype=np.int64).reshape(-1) for m in matrices]) % fld.p
        reduced, pivots = fld.rref(stacked)
        basis = tuple(reduced[k].reshape(size, size).copy() for k in range(len(pivots)))
        one = fld.eye(size) if unit is None else np.asarray(unit, dtype=np.int64) % fld.p
        return cls(fld, basis, one)

    @classmethod
    def full(cls, fld: PrimeField, size: int) -> "MatAlgebra":
        units = []
        for r in range(size):
            for c in range(size):
                m = fld.zeros(size, size)
                m[r, c] = 1
                units.append(m)
        return cls.from_matrices(fld, units)

    @property
    def size(self) -> int:
        return int(self.unit.shape[0])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _span(self) -> Matrix:
        return np.stack([b.reshape(-1) for b in self.basis], axis=1)

    def contains(self, x: Matrix) -> bool:
        return self.field.solve(self._span(), x.reshape(-1, 1) % self.field.p).consistent

    def random_element(self, rng: np.random.Generator) -> Matrix:
        coeffs = rng.integers(0, self.field.p, size=self.dim)
        out = self.field.zeros(self.size, self.size)
        for c, b in zip(coeffs, self.basis):
            out = (out + int(c) * b) % self.field.p
        return out

    def corner(self, e: Matrix) -> "MatAlgebra":
        """eAe (단위원 e)"""
        mm = self.field.matmul
        return MatAlgebra.from_matrices(self.field, [mm(mm(e, b), e) for b in self.basis], unit=e)

    def is_commutative(self) -> bool:
        mm = self.field.matmul
        return all(
            np.array_equal(mm(a, b), mm(b, a)) for i, a in enumerate(self.basis) for b in self.basis[i + 1 :]
        )


def validate_algebra(A: MatAlgebra) -> CheckReport:
    """곱에 대한 닫힘과 단위원 검증"""
    report = CheckReport(name="mat_algebra")
    mm = A.field.matmul
    report.record(A.contains(A.unit), "unit", "단위원이 span 에 없습니다")
    for i, a in enumerate(A.basis):
        report.record(np.array_equal(mm(A.unit, a), a) and np.array_equal(mm(a, A.unit), a), "unit_law", "1·b ≠ b", index=i)
        for j, b in enumerate(A.basis):
            report.record(A.contains(mm(a, b)), "closure", "곱이 span 밖으로 나갑니다", left=i, right=j)
    report.note(dim=A.dim, size=A.size)
    return report


def center(A: MatAlgebra) -> MatAlgebra:
    """Z(A) = {z : zb = bz ∀ b}"""
    fld = A.field
    mm = fld.matmul
    columns = []
    for bk in A.basis:
        columns.append(np.concatenate([((mm(bk, bj) - mm(bj, bk)) % fld.p).reshape(-1) for bj in A.basis]))
    system = np.stack(columns, axis=1)
    null = fld.nullspace(system)
    elements = []
    for coeffs in null:
        z = fld.zeros(A.size, A.size)
        for c, b in zip(coeffs, A.basis):
            z = (z + int(c) * b) % fld.p
        elements.append(z)
    Z = MatAlgebra.from_matrices(fld, elements, unit=A.unit)
    if not Z.is_commutative():
        raise SplittingError("중심이 가환이 아닙니다")
    return Z


# ============================================================
# 멱등원
# ============================================================

def _primary_idempotents(fld: PrimeField, y: Matrix, unit: Matrix, m: Poly, factors) -> List[Matrix]:
    """m = ∏ f_i^{k_i} 일 때 u_i ≡ 1 (mod f_i^{k_i}), ≡ 0 (mod 나머지) 를 y 에 대입"""
    out = []
    for f, k in factors:
        primary = Poly.one(fld.p)
        for _ in range(k):
            primary = primary * f
        rest = m // primary
        u = (rest * poly_inverse_mod(rest % primary, primary)) % m
        e = u.at_matrix(fld, y, unit)
        if not np.array_equal(fld.matmul(e, e), e):
            raise SplittingError("다항식 멱등원이 멱등이 아닙니다")
        out.append(e)
    return out


def _split_once(A: MatAlgebra, rng: np.random.Generator, commutative: bool) -> Optional[List[Matrix]]:
    """
    A 의 단위원을 직교 멱등원들로 한 번 분해

    Returns:
        None 이면 A 는 체 (단위원이 원시 멱등원)
    """
    if A.dim == 1:
        return None
    fld = A.field
    for attempt in range(settings.SPLIT_RETRY_BUDGET):
        y = A.random_element(rng)
        m = min_poly(fld, y, unit=A.unit)
        factors = factor(m, rng)
        if commutative and any(k > 1 for _, k in factors):
            raise SplittingError(f"가환 대수 원소의 최소다항식이 무제곱이 아닙니다 (반단순이 아님): {m}")
        if len(factors) >= 2:
            return _primary_idempotents(fld, y, A.unit, m, factors)
        if factors[0][1] == 1 and m.degree == A.dim:
            return None
        logger.debug(f"분해 재시도 {attempt + 1}: dim={A.dim}, min_poly 차수={m.degree}")
    raise SplittingError(f"재시도 한도 {settings.SPLIT_RETRY_BUDGET} 안에 분해하지 못했습니다 (dim={A.dim})")


def primitive_idempotents(A: MatAlgebra, rng: Optional[np.random.Generator] = None) -> List[Matrix]:
    """
    완전한 직교 원시 멱등원 집합 (합 = 단위원)

    A 가 가환이면 각 멱등원의 국소 대수가 체이며, 최소다항식에 반복 인수가 나오면
    반단순이 아니라고 보고 SplittingError 를 던집니다.
    """
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    commutative = A.is_commutative()
    pending = [A]
    done: List[Matrix] = []
    while pending:
        piece = pending.pop(0)
        parts = _split_once(piece, rng, commutative)
        if parts is None:
            done.append(piece.unit)
            continue
        pending.extend(piece.corner(e) for e in parts)
    return done


def central_idempotents(A: MatAlgebra, rng: Optional[np.random.Generator] = None) -> List[Matrix]:
    return primitive_idempotents(center(A), rng)


def one_primitive(A: MatAlgebra, rng: np.random.Generator) -> Tuple[Matrix, int]:
    """
    원시 멱등원 하나와 잉여체 차수

    분해된 조각 중 계수가 가장 작은 쪽으로 내려갑니다.
    """
    piece = A
    fld = A.field
    while True:
        parts = _split_once(piece, rng, commutative=False)
        if parts is None:
            return piece.unit, piece.dim
        piece = piece.corner(min(parts, key=lambda e: (fld.rank(e), e.tobytes())))


def check_idempotents(fld: PrimeField, idempotents: Sequence[Matrix], unit: Matrix) -> CheckReport:
    """e² = e, e_ie_j = 0, ∑e = 1"""
    report = CheckReport(name="idempotents")
    mm = fld.matmul
    for i, e in enumerate(idempotents):
        report.record(np.array_equal(mm(e, e), e), "idempotent", "e² ≠ e", index=i)
        for j, f in enumerate(idempotents):
            if i != j:
                report.record(not mm(e, f).any(), "orthogonal", "e_ie_j ≠ 0", left=i, right=j)
    total = sum(idempotents, fld.zeros(*unit.shape)) % fld.p
    report.record(np.array_equal(total, unit), "complete", "∑e ≠ 1", count=len(idempotents))
    return report


def block_structure(A: MatAlgebra, rng: Optional[np.random.Generator] = None) -> List[BlockInfo]:
    """
    단순 블록 M_size(F_{p^degree}) 목록 (∑ size²·degree = dim A)

    중심 원시 멱등원 c 마다 cA 의 원시 멱등원 e 를 하나 구해 degree = dim eAe 로 둡니다.
    """
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    blocks = []
    for c in central_idempotents(A, rng):
        local = A.corner(c)
        _, degree = one_primitive(local, rng)
        size = isqrt(local.dim // degree)
        if size * size * degree != local.dim:
            raise SplittingError(f"블록 차원 {local.dim} 이 size²·degree 꼴이 아닙니다")
        blocks.append(BlockInfo(size=size, degree=degree, dimension=local.dim))
    blocks.sort(key=lambda b: (b.size, b.degree))
    if sum(b.dimension for b in blocks) != A.dim:
        raise SplittingError("블록 차원의 합이 대수 차원과 다릅니다")
    return blocks


# ============================================================
# End 대수와 단순 대상
# ============================================================

def end_algebra(M: EqObject) -> Tuple[MatAlgebra, List[EqMorphism]]:
    """End_{𝒞^H}(M) 를 블록 대각 행렬 대수로"""
    basis = hom_basis(M, M)
    fld = M.action.field
    return MatAlgebra.from_matrices(fld, [phi.f.to_matrix() for phi in basis]), basis


def image_of(M: EqObject, e: Matrix, label: str = "") -> Tuple[EqObject, Mor, Mor]:
    """
    등변 멱등원 e 의 상

    단순 대상 블록 j 마다 P = e_j 의 피벗 열, Q 는 e_j = PQ 의 해.
    μ_S^g = Q ∘ μ^g ∘ T^g(P).

    Returns:
        (상 대상, 포함 P, 사영 Q)
    """
    a = M.action
    fld = a.field
    idem = Mor.from_matrix(M.obj, M.obj, e, a.p)
    inc_blocks, proj_blocks = [], []
    for block in idem.blocks:
        if block.size == 0:
            inc_blocks.append(fld.zeros(block.shape[0], 0))
            proj_blocks.append(fld.zeros(0, block.shape[1]))
            continue
        _, pivots = fld.rref(block)
        P = block[:, pivots].copy()
        sol = fld.solve(P, block)
        if not sol.consistent:
            raise SplittingError("멱등원 상의 기저를 구하지 못했습니다")
        inc_blocks.append(P)
        proj_blocks.append(sol.particular)
    image = Obj(tuple(b.shape[1] for b in inc_blocks))
    inclusion = Mor(image, M.obj, tuple(inc_blocks), a.p)
    projection = Mor(M.obj, image, tuple(proj_blocks), a.p)
    mu = {g: projection @ M.mu[g] @ a.act_mor(g, inclusion) for g in M.H.elements}
    S = EqObject(a, M.H, image, mu, label)
    report = validate_eq_object(S, name="image")
    if not report.passed:
        raise EquivarianceError(f"멱등원 상의 등변 구조가 올바르지 않습니다: {report.failures[0].message}")
    return S, inclusion, projection


@dataclass(frozen=True, eq=False)
class SimpleClass:
    """𝒞^H 의 단순 대상 동형류 대표 + End 차수"""
    obj: EqObject
    degree: int
    character: Tuple[int, ...]
    origin: int

    @property
    def sort_key(self) -> Tuple:
        return (self.obj.dim, self.degree, self.character, self.origin)


def generators_of(action: ActionData, H: Subgroup) -> List[Tuple[int, EqObject]]:
    """단순 대상 생성원 Ind_1^H(X_i) (i 는 H-궤도 대표)"""
    trivial = action.group.trivial()
    out = []
    for orbit in action.orbits(H):
        i = orbit[0]
        out.append((i, ind(trivial, H, EqObject.simple(action, i))))
    return out


def simples_of(action: ActionData, H: Subgroup, rng: Optional[np.random.Generator] = None) -> List[SimpleClass]:
    """
    𝒞^H 의 단순 대상 동형류 (정렬됨)

    Ind_1^H(X_i) 의 End 를 중심 원시 멱등원으로 블록 분해하고, 블록마다 원시 멱등원
    하나의 상을 취합니다. 이미 찾은 대상과 Hom 이 0 이 아니면 같은 동형류입니다.
    """
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    found: List[SimpleClass] = []
    discovery = 0
    for i, A in generators_of(action, H):
        algebra, _ = end_algebra(A)
        for c in central_idempotents(algebra, rng):
            e, degree = one_primitive(algebra.corner(c), rng)
            S, _, _ = image_of(A, e)
            if any(S.obj == T.obj.obj and hom_dim(S, T.obj) > 0 for T in found):
                continue
            found.append(SimpleClass(S, degree, character_key(S), discovery))
            discovery += 1
        logger.debug(f"H={H.label}: X{i} 에서 단순 대상 누적 {len(found)}개")
    found.sort(key=lambda s: s.sort_key)
    out = []
    for k, s in enumerate(found):
        labelled = EqObject(action, H, s.obj.obj, s.obj.mu, f"S{k}")
        out.append(SimpleClass(labelled, s.degree, s.character, s.origin))
    return out


def multiplicity(S: SimpleClass, M: EqObject) -> int:
    """[M : S] = dim Hom(S, M) / dim End(S)"""
    dim = hom_dim(S.obj, M)
    if dim % S.degree:
        raise DecompositionError(f"dim Hom(S, M)={dim} 가 End 차수 {S.degree} 로 나누어떨어지지 않습니다")
    return dim // S.degree


def certify_simples(
    action: ActionData, H: Subgroup, simples: Sequence[SimpleClass], rng: Optional[np.random.Generator] = None
) -> CheckReport:
    """
    단순 대상 목록 인증

    End 차수, 서로 다른 단순 대상 사이 Hom = 0, 완전성 dim End(A) = ∑ m_S²·deg_S,
    그리고 A ≅ ⊕ S^{m_S} 재구성 증인.
    """
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    report = CheckReport(name="simples")
    for k, s in enumerate(simples):
        report.record(hom_dim(s.obj, s.obj) == s.degree, "end_degree", "dim End(S) ≠ 잉여체 차수", simple=k)
        for j, t in enumerate(simples):
            if j != k:
                report.record(hom_dim(s.obj, t.obj) == 0, "orthogonal", "서로 다른 단순 대상 사이 Hom ≠ 0", left=k, right=j)
    for i, A in generators_of(action, H):
        mults = [multiplicity(s, A) for s in simples]
        expected = sum(m * m * s.degree for m, s in zip(mults, simples))
        report.record(
            hom_dim(A, A) == expected,
            "completeness",
            "dim End(A) ≠ ∑ m²·deg",
            generator=i,
            multiplicities=mults,
        )
        pieces = [s.obj for m, s in zip(mults, simples) for _ in range(m)]
        if pieces:
            rebuilt = direct_sum(pieces).obj
            iso = is_iso(A, rebuilt, settings.ISO_TRIALS, rng)
            report.record(iso.is_iso, "reconstruction", "A ≇ ⊕ S^{m_S}", generator=i, error_bound=iso.error_bound)
    report.note(H=list(H.elements), rank=len(simples), degrees=[s.degree for s in simples])
    return report
