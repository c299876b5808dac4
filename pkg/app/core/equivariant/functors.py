"""
제한/유도/켤레 함자와 자연변환

모든 유도는 기본적으로 canonical 잉여류 대표원을 씁니다. 다른 대표원 집합
(xRx⁻¹, RS, ⊔R_x) 이 필요한 곳에서는 reindex_induction 으로 명시적으로
canonical 쪽으로 옮깁니다.

규약:
- ind 의 정의역 조각 순서는 대표원 순서와 같습니다.
- Ind_K^H Ind_J^K 의 조각은 (바깥 대표원, 안쪽 대표원) 사전식 순서입니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions import ContainmentError
from .groups import CosetReps, Subgroup, conjugate, coset_reps, require_subgroup
from .sscat import (
    EqMorphism,
    EqObject,
    Mor,
    Obj,
    assemble,
    block_diagonal,
    direct_sum_obj,
    ensure_morphism,
    ensure_valid,
)

logger = logging.getLogger(__name__)


# ============================================================
# 제한
# ============================================================

def res(K: Subgroup, M: EqObject) -> EqObject:
    """Res_K^H: 같은 대상, μ 를 K 로 제한"""
    if not K.is_subgroup_of(M.H):
        raise ContainmentError(f"{K.label} 가 {M.H.label} 에 포함되지 않습니다")
    if K == M.H:
        return M
    return EqObject(M.action, K, M.obj, {g: M.mu[g] for g in K.elements}, M.label)


def res_mor(K: Subgroup, phi: EqMorphism) -> EqMorphism:
    return EqMorphism(res(K, phi.source), res(K, phi.target), phi.f)


# ============================================================
# 유도
# ============================================================

@dataclass(frozen=True, eq=False)
class Induction:
    """유도 대상 + 대표원/조각 정보 (블록 조립용)"""
    obj: EqObject
    V: EqObject
    reps: Tuple[int, ...]
    parts: Tuple[Obj, ...]


def _induce(acting: Subgroup, L: Subgroup, reps: Sequence[int], V: EqObject) -> Induction:
    """
    ⊕_{t∈reps} T^t(V) 위의 acting-등변 구조

    reps 는 L 의 좌잉여류 일부를 덮는 대표원이며, acting 의 왼쪽 곱에 대해
    닫혀 있어야 합니다 (완전한 대표원 집합이면 acting = H).
    g·t = s·h (s ∈ reps, h ∈ L) 일 때 (s, t) 성분은 T^s(μ^h)∘(T₂^{s,h})⁻¹∘T₂^{g,t}.
    """
    a = V.action
    lookup = CosetReps.from_reps(L, a.group.whole(), reps, complete=False)
    parts = tuple(a.act_obj(t, V.obj) for t in reps)
    mu: Dict[int, Mor] = {}
    for g in acting.elements:
        components: Dict[Tuple[int, int], Mor] = {}
        for col, t in enumerate(reps):
            s, h = lookup.factor(a.group.mul(g, t))
            components[(lookup.position(s), col)] = (
                a.act_mor(s, V.mu[h]) @ a.t2_inv(s, h, V.obj) @ a.t2(g, t, V.obj)
            )
        mu[g] = assemble(parts, [a.act_obj(g, q) for q in parts], components, a.p)
    total = direct_sum_obj(parts, a.n)
    obj = ensure_valid(EqObject(a, acting, total, mu, f"Ind({V.label})"))
    return Induction(obj, V, tuple(int(t) for t in reps), parts)


def induction(L: Subgroup, H: Subgroup, V: EqObject, reps: Optional[Sequence[int]] = None) -> Induction:
    """Ind_L^H(V) (reps 를 주지 않으면 canonical 대표원)"""
    if V.H != L:
        raise ContainmentError(f"V 는 {L.label} 위의 대상이어야 합니다")
    require_subgroup(L, H)
    if reps is None:
        reps = coset_reps(L, H).reps
    else:
        reps = CosetReps.from_reps(L, H, reps).reps
    return _induce(H, L, reps, V)


def ind(L: Subgroup, H: Subgroup, V: EqObject) -> EqObject:
    return induction(L, H, V).obj


def ind_mor(L: Subgroup, H: Subgroup, phi: EqMorphism) -> EqMorphism:
    """Ind(f) = ⊕_t T^t(f)"""
    a = phi.source.action
    reps = coset_reps(L, H).reps
    f = block_diagonal([a.act_mor(t, phi.f) for t in reps], a.p)
    return ensure_morphism(EqMorphism(ind(L, H, phi.source), ind(L, H, phi.target), f))


def nested_parts(outer: Induction, inner: Induction) -> List[Obj]:
    """Ind_K^H(Ind_J^K M) 의 세분 조각 T^rT^s(M) (r 바깥, s 안쪽)"""
    a = outer.V.action
    return [a.act_obj(r, q) for r in outer.reps for q in inner.parts]


def reindex_induction(
    L: Subgroup, H: Subgroup, reps_from: Sequence[int], reps_to: Sequence[int], V: EqObject
) -> EqMorphism:
    """
    대표원 교체 동형 Ind^{reps_from}(V) → Ind^{reps_to}(V)

    t′ = t·l (t ∈ reps_to, l ∈ L) 이면 T^{t′}(V) → T^t(V) 성분은 T^t(μ^l)∘(T₂^{t,l})⁻¹.
    """
    a = V.action
    source = induction(L, H, V, reps_from)
    target = induction(L, H, V, reps_to)
    lookup = CosetReps.from_reps(L, H, target.reps)
    components: Dict[Tuple[int, int], Mor] = {}
    for col, t_prime in enumerate(source.reps):
        t, l = lookup.factor(t_prime)
        components[(lookup.position(t), col)] = a.act_mor(t, V.mu[l]) @ a.t2_inv(t, l, V.obj)
    f = assemble(target.parts, source.parts, components, a.p)
    return ensure_morphism(EqMorphism(source.obj, target.obj, f))


# ============================================================
# 켤레
# ============================================================

def conj(H: Subgroup, x: int, M: EqObject) -> EqObject:
    """
    c_{H,x}: 𝒞^H → 𝒞^{ˣH}

    xhx⁻¹ 의 구조 사상은 T^x(μ^h)∘(T₂^{x,h})⁻¹∘T₂^{xhx⁻¹,x}.
    """
    if M.H != H:
        raise ContainmentError(f"M 은 {H.label} 위의 대상이어야 합니다")
    a = M.action
    target_group = conjugate(H, x)
    mu: Dict[int, Mor] = {}
    for h in H.elements:
        xh = a.group.conj_elem(x, h)
        mu[xh] = a.act_mor(x, M.mu[h]) @ a.t2_inv(x, h, M.obj) @ a.t2(xh, x, M.obj)
    label = M.label if x == 0 else f"c{x}({M.label})"
    return ensure_valid(EqObject(a, target_group, a.act_obj(x, M.obj), mu, label))


def conj_mor(x: int, phi: EqMorphism) -> EqMorphism:
    a = phi.source.action
    H = phi.source.H
    return ensure_morphism(EqMorphism(conj(H, x, phi.source), conj(H, x, phi.target), a.act_mor(x, phi.f)))


# ============================================================
# 자연변환
# ============================================================

def nat_C(a_elem: int, b_elem: int, H: Subgroup, M: EqObject) -> EqMorphism:
    """c_{H,ab}(M) → c_{ᵇH,a} c_{H,b}(M), 성분 (T₂^{a,b})⁻¹_M"""
    a = M.action
    ab = a.group.mul(a_elem, b_elem)
    source = conj(H, ab, M)
    target = conj(conjugate(H, b_elem), a_elem, conj(H, b_elem, M))
    return ensure_morphism(EqMorphism(source, target, a.t2_inv(a_elem, b_elem, M.obj)))


def nat_CI(x: int, L: Subgroup, H: Subgroup, M: EqObject) -> EqMorphism:
    """
    c_{H,x} Ind_L^H(M) → Ind_{ˣL}^{ˣH} c_{L,x}(M)

    성분 (T₂^{xrx⁻¹,x})⁻¹∘T₂^{x,r} 로 대표원 xRx⁻¹ 의 유도에 보낸 뒤
    canonical 대표원으로 reindex 합니다.
    """
    a = M.action
    outer = induction(L, H, M)
    source = conj(H, x, outer.obj)
    xL, xH = conjugate(L, x), conjugate(H, x)
    cM = conj(L, x, M)
    twisted_reps = [a.group.conj_elem(x, r) for r in outer.reps]
    blocks = []
    for r, xr in zip(outer.reps, twisted_reps):
        blocks.append(a.t2_inv(xr, x, M.obj) @ a.t2(x, r, M.obj))
    f = block_diagonal(blocks, a.p)
    to_canonical = reindex_induction(xL, xH, twisted_reps, coset_reps(xL, xH).reps, cM)
    return ensure_morphism(EqMorphism(source, to_canonical.target, to_canonical.f @ f))


def _nat_I_blocks(J: Subgroup, K: Subgroup, H: Subgroup, M: EqObject, inverse: bool):
    a = M.action
    inner = induction(J, K, M)
    outer = induction(K, H, inner.obj)
    product_reps = [a.group.mul(r, s) for r in outer.reps for s in inner.reps]
    blocks = []
    for r in outer.reps:
        for s in inner.reps:
            blocks.append(a.t2(r, s, M.obj) if inverse else a.t2_inv(r, s, M.obj))
    return outer, product_reps, block_diagonal(blocks, a.p)


def nat_I(J: Subgroup, K: Subgroup, H: Subgroup, M: EqObject) -> EqMorphism:
    """
    Ind_J^H(M) → Ind_K^H Ind_J^K(M)   (J ≤ K ≤ H)

    canonical → RS 재색인 후 (r, s) 조각마다 (T₂^{r,s})⁻¹.
    """
    require_subgroup(J, K)
    require_subgroup(K, H)
    outer, product_reps, blocks = _nat_I_blocks(J, K, H, M, inverse=False)
    reindex = reindex_induction(J, H, coset_reps(J, H).reps, product_reps, M)
    return ensure_morphism(EqMorphism(reindex.source, outer.obj, blocks @ reindex.f))


def nat_I_reverse(J: Subgroup, K: Subgroup, H: Subgroup, M: EqObject) -> EqMorphism:
    """역방향 Ind_K^H Ind_J^K(M) → Ind_J^H(M), 조각마다 T₂^{r,s} 후 canonical 로 재색인"""
    require_subgroup(J, K)
    require_subgroup(K, H)
    outer, product_reps, blocks = _nat_I_blocks(J, K, H, M, inverse=True)
    reindex = reindex_induction(J, H, product_reps, coset_reps(J, H).reps, M)
    return ensure_morphism(EqMorphism(outer.obj, reindex.target, reindex.f @ blocks))

