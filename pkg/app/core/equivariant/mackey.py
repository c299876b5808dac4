"""
Mackey 분해 동형과 Ind ⊣ Res 수반 검증

mackey_iso 는 Res_K^H Ind_L^H(V) → ⊕_{x∈K\\H/L} Ind^K_{K∩ˣL} Res c_{L,x}(V) 의
명시적 증인을 만들고 CheckReport 로 검증 결과를 함께 돌려줍니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .functors import (
    _induce,
    conj,
    coset_reps,
    ind,
    ind_mor,
    induction,
    reindex_induction,
    res,
    res_mor,
)
from .groups import Subgroup, conjugate, double_cosets, intersection, require_subgroup
from .schemas import CheckReport
from .sscat import (
    EqMorphism,
    EqObject,
    assemble,
    block_diagonal,
    direct_sum,
    hom_dim,
    validate_eq_morphism,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MackeySummand:
    """양쪽잉여류 x 하나의 조각: F_x, G_x(canonical), 그리고 N_x"""
    x: int
    reps: Tuple[int, ...]
    intersection: Subgroup
    F: EqObject
    G: EqObject
    N: EqMorphism


def mackey_summands(K: Subgroup, L: Subgroup, H: Subgroup, V: EqObject) -> Tuple[List[MackeySummand], EqMorphism]:
    """
    각 x 의 (F_x, G_x, N_x) 와 canonical → ⊔R_x 재색인 사상

    N_x 성분은 a ∈ R_x 마다 (T₂^{ax⁻¹,x})⁻¹_V 이고, 그 뒤 R_x x⁻¹ → canonical 로 재색인합니다.
    """
    require_subgroup(K, H)
    require_subgroup(L, H)
    a = V.action
    grp = a.group
    D = double_cosets(K, H, L)
    reindex = reindex_induction(L, H, coset_reps(L, H).reps, D.union_reps(), V)
    summands = []
    for x in D.reps:
        rx = D.blocks[x]
        x_inv = grp.inv(x)
        meet = intersection(K, conjugate(L, x))
        F = _induce(K, L, rx, V).obj
        shifted = [grp.mul(r, x_inv) for r in rx]
        W = res(meet, conj(L, x, V))
        N = block_diagonal([a.t2_inv(s, x, V.obj) for s in shifted], a.p)
        to_canonical = reindex_induction(meet, K, shifted, coset_reps(meet, K).reps, W)
        witness = EqMorphism(F, to_canonical.target, to_canonical.f @ N)
        summands.append(MackeySummand(x, tuple(rx), meet, F, to_canonical.target, witness))
        logger.debug(f"x={x}: R_x={rx}, K∩ˣL={meet.label}, shifted={shifted}")
    return summands, reindex


def mackey_iso(K: Subgroup, L: Subgroup, H: Subgroup, V: EqObject) -> Tuple[EqMorphism, CheckReport]:
    """
    Res_K^H Ind_L^H(V) ≅ ⊕_x Ind^K_{K∩ˣL} Res^{ˣL}_{K∩ˣL} c_{L,x}(V)

    Returns:
        (전체 증인 EqMorphism, 검증 리포트)
    """
    report = CheckReport(name="mackey_iso")
    fld = V.action.field
    context = {"K": list(K.elements), "L": list(L.elements), "H": list(H.elements), "V": V.label}
    lhs = res(K, ind(L, H, V))
    summands, reindex = mackey_summands(K, L, H, V)

    stable = direct_sum([s.F for s in summands]).obj
    report.record(
        stable.same_as(res(K, reindex.target)),
        "stability",
        "⊕F_x 가 Res_K Ind^{⊔R_x} 와 같지 않습니다",
        **context,
    )
    for s in summands:
        sub = validate_eq_morphism(s.N, name=f"N_{s.x}")
        sub.record(s.N.is_invertible(), "invertible", "N_x 가 가역이 아닙니다", x=s.x, **context)
        report.absorb(sub)

    index_sum = sum(K.order // s.intersection.order for s in summands)
    report.record(
        index_sum == H.order // L.order,
        "dimension",
        "∑[K:K∩ˣL] ≠ [H:L]",
        index_sum=index_sum,
        index=H.order // L.order,
        **context,
    )

    rhs = direct_sum([s.G for s in summands])
    body = block_diagonal([s.N.f for s in summands], fld.p)
    witness = EqMorphism(lhs, rhs.obj, body @ reindex.f)
    total = validate_eq_morphism(witness, name="witness")
    total.record(witness.is_invertible(), "invertible", "전체 증인이 가역이 아닙니다", **context)
    report.absorb(total)
    report.note(
        double_cosets=[s.x for s in summands],
        summand_dims=[s.G.dim for s in summands],
        dim=lhs.dim,
    )
    return witness, report


# ============================================================
# 수반 Ind ⊣ Res
# ============================================================

def unit_map(L: Subgroup, H: Subgroup, V: EqObject) -> EqMorphism:
    """η_V: V → Res_L Ind_L^H(V), 항등 대표원 성분으로의 포함"""
    a = V.action
    induced = induction(L, H, V)
    f = assemble(induced.parts, [V.obj], {(0, 0): a.identity(V.obj)}, a.p)
    return EqMorphism(V, res(L, induced.obj), f)


def counit_map(L: Subgroup, H: Subgroup, M: EqObject) -> EqMorphism:
    """ε_M: Ind_L^H Res_L(M) → M, 대표원 t 성분은 μ_M^t"""
    a = M.action
    induced = induction(L, H, res(L, M))
    f = assemble([M.obj], induced.parts, {(0, k): M.mu[t] for k, t in enumerate(induced.reps)}, a.p)
    return EqMorphism(induced.obj, M, f)


def adjunction_check(
    L: Subgroup, H: Subgroup, V_samples: Sequence[EqObject], M_samples: Sequence[EqObject]
) -> CheckReport:
    """
    단위/쌍대단위의 등변성, 두 삼각 항등식, Hom 차원 일치 검증
    """
    report = CheckReport(name="adjunction")
    require_subgroup(L, H)
    for V in V_samples:
        eta = unit_map(L, H, V)
        report.absorb(validate_eq_morphism(eta, name="unit"))
        IV = ind(L, H, V)
        eps = counit_map(L, H, IV)
        report.absorb(validate_eq_morphism(eps, name="counit"))
        left = eps.f @ ind_mor(L, H, eta).f
        report.record(
            left.equals(IV.action.identity(IV.obj)),
            "triangle_ind",
            "ε_{Ind V}∘Ind(η_V) ≠ id",
            V=V.label,
            composite=left.witness(),
        )
    for M in M_samples:
        RM = res(L, M)
        eta = unit_map(L, H, RM)
        eps = counit_map(L, H, M)
        right = res_mor(L, eps).f @ eta.f
        report.record(
            right.equals(M.action.identity(M.obj)),
            "triangle_res",
            "Res(ε_M)∘η_{Res M} ≠ id",
            M=M.label,
            composite=right.witness(),
        )
    dims: Dict[str, int] = {}
    for V in V_samples:
        IV = ind(L, H, V)
        for M in M_samples:
            lhs = hom_dim(IV, M)
            rhs = hom_dim(V, res(L, M))
            dims[f"{V.label}|{M.label}"] = lhs
            report.record(lhs == rhs, "hom_dimension", "dim Hom(Ind V, M) ≠ dim Hom(V, Res M)", V=V.label, M=M.label, lhs=lhs, rhs=rhs)
    report.note(L=list(L.elements), H=list(H.elements), hom_dims=dims)
    return report
