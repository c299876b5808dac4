"""
점화(pointed) 모노이달 층

단순 대상 라벨이 유한군 E 를 이루고 X_i ⊗ X_j = X_{ij}, 결합자는 자명합니다.
T^g 의 모노이달 구조는 스칼라 τ^g_{i,j} 로 주어집니다:

    (T₂^g)_{M,N} : T^g(M) ⊗ T^g(N) → T^g(M ⊗ N)

텐서 슬롯 순서: 단순 대상 k 블록 안에서 (i, j) 쌍을 i 오름차순으로,
각 쌍 안에서는 Kronecker 순서(M 복사본 바깥, N 복사본 안쪽)입니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Sequence, Tuple

import numpy as np

from .exactla import roots_of_unity
from .exceptions import ContainmentError, EquivariantError
from .functors import _induce, conj, ind, ind_mor, res
from .groups import Group, Subgroup, conjugate, coset_reps, double_cosets, intersection, require_subgroup
from .schemas import CheckReport
from .sscat import (
    ActionData,
    EqMorphism,
    EqObject,
    Labels,
    Mor,
    Obj,
    base_labels,
    block_diagonal,
    carry_cocycle,
    coboundary,
    direct_sum_obj,
    ensure_morphism,
    ensure_valid,
    hom_dim,
    label_morphism,
    random_beta,
    sum_labels,
    validate_action,
    validate_eq_morphism,
    with_lambda,
)

logger = logging.getLogger(__name__)


# ============================================================
# 데이터
# ============================================================

@dataclass(frozen=True, eq=False)
class PointedData:
    """
    작용 데이터 + 라벨 군 E + τ

    tau[g, i, j] = τ^g_{i,j}. 라벨 i 는 E 의 원소 인덱스이며 0 이 단위 라벨입니다.
    """
    action: ActionData
    E: Group
    tau: np.ndarray
    pairs: Tuple[Tuple[Tuple[int, int], ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = self.action.n
        if self.E.order != n:
            raise EquivariantError(f"|E|={self.E.order} 가 단순 대상 수 {n} 과 다릅니다")
        tau = np.asarray(self.tau, dtype=np.int64) % self.action.p
        if tau.shape != (self.action.group.order, n, n):
            raise EquivariantError(f"tau 모양 {tau.shape} 이 올바르지 않습니다")
        object.__setattr__(self, "tau", tau)
        table = self.E.table
        inverse = self.E.inverse
        pairs = tuple(
            tuple((i, int(table[inverse[i], k])) for i in range(n)) for k in range(n)
        )
        object.__setattr__(self, "pairs", pairs)

    @property
    def p(self) -> int:
        return self.action.p

    @property
    def n(self) -> int:
        return self.action.n

    @classmethod
    def trivial(cls, action: ActionData, E: Group) -> "PointedData":
        order = action.group.order
        return cls(action, E, np.ones((order, E.order, E.order), dtype=np.int64))


def validate_pointed(P: PointedData) -> CheckReport:
    """σ_g ∈ Aut(E), 단위 공리, 육각형(자명 결합자), λ 와의 호환성 검사"""
    report = CheckReport(name="validate_pointed")
    report.absorb(validate_action(P.action))
    a = P.action
    p = P.p
    sigma, lam, tau = a.sigma, a.lam, P.tau
    et = P.E.table
    order = a.group.order
    n = P.n

    for g in range(order):
        s = sigma[g]
        bad = np.argwhere(s[et] != et[s[:, None], s[None, :]])
        report.record(
            bad.size == 0,
            "automorphism",
            "σ_g 가 E 의 자기동형이 아닙니다",
            g=g,
            **({"i": int(bad[0][0]), "j": int(bad[0][1])} if bad.size else {}),
        )
    if not report.passed:
        return report

    bad = np.argwhere((tau[:, 0, :] != 1) | (tau[:, :, 0] != 1))
    report.record(bad.size == 0, "unit", "τ^g_{e,j} 또는 τ^g_{i,e} ≠ 1", **_witness(bad, ("g", "i")))

    i = np.arange(n)[:, None, None]
    j = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    for g in range(order):
        t = tau[g]
        lhs = t[i, j] * t[et[i, j], k] % p
        rhs = t[j, k] * t[i, et[j, k]] % p
        bad = np.argwhere(lhs != rhs)
        report.record(bad.size == 0, "hexagon", "τ_{i,j}τ_{ij,k} ≠ τ_{j,k}τ_{i,jk}", g=g, **_witness(bad, ("i", "j", "k")))

    ar = np.arange(order)
    G_ = ar[:, None, None, None]
    H_ = ar[None, :, None, None]
    I_ = np.arange(n)[None, None, :, None]
    J_ = np.arange(n)[None, None, None, :]
    gh = a.group.table[G_, H_]
    lhs = tau[gh, I_, J_] * lam[G_, H_, et[I_, J_]] % p
    rhs = lam[G_, H_, I_] * lam[G_, H_, J_] % p
    rhs = rhs * tau[G_, sigma[H_, I_], sigma[H_, J_]] % p
    rhs = rhs * tau[H_, I_, J_] % p
    bad = np.argwhere(lhs != rhs)
    report.record(
        bad.size == 0,
        "compatibility",
        "τ^{gh}_{i,j}λ^{g,h}_{ij} ≠ λ^{g,h}_iλ^{g,h}_jτ^g_{σ_h i,σ_h j}τ^h_{i,j}",
        **_witness(bad, ("g", "h", "i", "j")),
    )
    report.note(E=P.E.name, n=n)
    return report


def _witness(bad: np.ndarray, names: Sequence[str]) -> Dict[str, int]:
    if bad.size == 0:
        return {}
    return {name: int(v) for name, v in zip(names, bad[0])}


# ============================================================
# 텐서
# ============================================================

def tensor_obj(P: PointedData, M: Obj, N: Obj) -> Obj:
    return Obj(tuple(sum(M.m[i] * N.m[j] for i, j in P.pairs[k]) for k in range(P.n)))


def tensor_labels(P: PointedData, left: Labels, right: Labels) -> Labels:
    """슬롯 라벨 (i, 왼쪽 라벨, j, 오른쪽 라벨)"""
    return [
        [(i, lm, j, ln) for i, j in P.pairs[k] for lm in left[i] for ln in right[j]]
        for k in range(P.n)
    ]


def tensor_mor(P: PointedData, f: Mor, g: Mor) -> Mor:
    """f ⊗ g: 블록 k 는 ij = k 인 쌍마다 kron(f_i, g_j) 의 블록 대각합"""
    fld = P.action.field
    blocks = []
    for k in range(P.n):
        pieces = [fld.kron(f.blocks[i], g.blocks[j]) for i, j in P.pairs[k]]
        rows = sum(b.shape[0] for b in pieces)
        cols = sum(b.shape[1] for b in pieces)
        block = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for b in pieces:
            block[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        blocks.append(block)
    return Mor(tensor_obj(P, f.source, g.source), tensor_obj(P, f.target, g.target), tuple(blocks), P.p)


def tau_map(P: PointedData, g: int, M: Obj, N: Obj) -> Mor:
    """(T₂^g)_{M,N}: T^gM ⊗ T^gN → T^g(M⊗N), 슬롯 (σi, a, σj, b) ↦ (i, a, j, b) 에 (τ^g_{i,j})⁻¹"""
    a = P.action
    ml, nl = base_labels(M), base_labels(N)
    source = tensor_obj(P, a.act_obj(g, M), a.act_obj(g, N))
    source_labels = tensor_labels(P, a.act_labels(g, ml), a.act_labels(g, nl))
    target = a.act_obj(g, tensor_obj(P, M, N))
    target_labels = a.act_labels(g, tensor_labels(P, ml, nl))
    back = a.sigma_inv[g]

    def mapping(label):
        i, lm, j, ln = label
        return (int(back[i]), lm, int(back[j]), ln)

    def scalar(label):
        i, _, j, _ = label
        return pow(int(P.tau[g, back[i], back[j]]), P.p - 2, P.p)

    return label_morphism(source, source_labels, target, target_labels, mapping, P.p, scalar)


def tau_inverse(P: PointedData, g: int, M: Obj, N: Obj) -> Mor:
    return tau_map(P, g, M, N).inverse(P.action.field)


def unit_obj(P: PointedData) -> Obj:
    return Obj.simple(P.n, 0)


def unit_eq(P: PointedData, H: Subgroup) -> EqObject:
    """단위 대상 (μ ≡ id, λ^{g,h}_e = 1 이므로 유효)"""
    one = unit_obj(P)
    identity = P.action.identity(one)
    return EqObject(P.action, H, one, {g: identity for g in H.elements}, "1")


def _common(M: EqObject, N: EqObject) -> Tuple[EqObject, EqObject]:
    if M.H == N.H:
        return M, N
    if N.H.is_subgroup_of(M.H):
        return res(N.H, M), N
    if M.H.is_subgroup_of(N.H):
        return M, res(M.H, N)
    raise ContainmentError(f"{M.H.label} 와 {N.H.label} 중 하나가 다른 하나를 포함해야 합니다")


def tensor_eq(P: PointedData, M: EqObject, N: EqObject) -> EqObject:
    """
    M ⊗ N (더 큰 쪽을 작은 부분군으로 제한)

    ν^h = (μ_M^h ⊗ μ_N^h) ∘ (T₂^h)⁻¹_{M,N}
    """
    M, N = _common(M, N)
    mu = {}
    for h in M.H.elements:
        mu[h] = tensor_mor(P, M.mu[h], N.mu[h]) @ tau_inverse(P, h, M.obj, N.obj)
    label = f"{M.label}⊗{N.label}"
    return ensure_valid(EqObject(P.action, M.H, tensor_obj(P, M.obj, N.obj), mu, label))


def tensor_eq_mor(P: PointedData, phi: EqMorphism, psi: EqMorphism) -> EqMorphism:
    return ensure_morphism(
        EqMorphism(
            tensor_eq(P, phi.source, psi.source),
            tensor_eq(P, phi.target, psi.target),
            tensor_mor(P, phi.f, psi.f),
        )
    )


# ============================================================
# 구조 치환 사상
# ============================================================

def associator(P: PointedData, A: EqObject, B: EqObject, V: EqObject) -> EqMorphism:
    """(A⊗B)⊗V → A⊗(B⊗V) 슬롯 재배열"""
    al, bl, vl = base_labels(A.obj), base_labels(B.obj), base_labels(V.obj)
    et = P.E.table
    source = tensor_eq(P, tensor_eq(P, A, B), V)
    target = tensor_eq(P, A, tensor_eq(P, B, V))

    def mapping(label):
        _, (i, la, j, lb), k, lv = label
        return (i, la, int(et[j, k]), (j, lb, k, lv))

    f = label_morphism(
        source.obj,
        tensor_labels(P, tensor_labels(P, al, bl), vl),
        target.obj,
        tensor_labels(P, al, tensor_labels(P, bl, vl)),
        mapping,
        P.p,
    )
    return ensure_morphism(EqMorphism(source, target, f))


def distributor(P: PointedData, M: Obj, parts: Sequence[Obj]) -> Mor:
    """⊕_a (M ⊗ W_a) → M ⊗ (⊕_a W_a)"""
    ml = base_labels(M)
    source = direct_sum_obj([tensor_obj(P, M, W) for W in parts], P.n)
    target = tensor_obj(P, M, direct_sum_obj(parts, P.n))
    source_labels = sum_labels([tensor_labels(P, ml, base_labels(W)) for W in parts])
    target_labels = tensor_labels(P, ml, sum_labels([base_labels(W) for W in parts]))

    def mapping(label):
        k, (i, lm, j, lw) = label
        return (i, lm, j, (k, lw))

    return label_morphism(source, source_labels, target, target_labels, mapping, P.p)


def right_distributor(P: PointedData, parts: Sequence[Obj], A: Obj) -> Mor:
    """⊕_a (W_a ⊗ A) → (⊕_a W_a) ⊗ A"""
    al = base_labels(A)
    source = direct_sum_obj([tensor_obj(P, W, A) for W in parts], P.n)
    target = tensor_obj(P, direct_sum_obj(parts, P.n), A)
    source_labels = sum_labels([tensor_labels(P, base_labels(W), al) for W in parts])
    target_labels = tensor_labels(P, sum_labels([base_labels(W) for W in parts]), al)

    def mapping(label):
        k, (i, lw, j, la) = label
        return (i, (k, lw), j, la)

    return label_morphism(source, source_labels, target, target_labels, mapping, P.p)


# ============================================================
# 모듈 구조
# ============================================================

def _left_module(
    P: PointedData, acting: Subgroup, L: Subgroup, reps: Sequence[int], M: EqObject, V: EqObject
) -> EqMorphism:
    """Ind^{reps}(Res M ⊗ V) → M ⊗ Ind^{reps}(V), 조각 a 는 (μ_M^a ⊗ 1)∘(T₂^a)⁻¹"""
    a = P.action
    MV = tensor_eq(P, M, V)
    source = _induce(acting, L, reps, MV)
    induced = _induce(acting, L, reps, V)
    blocks = []
    for t in reps:
        Wt = a.act_obj(t, V.obj)
        blocks.append(tensor_mor(P, M.mu[t], a.identity(Wt)) @ tau_inverse(P, t, M.obj, V.obj))
    f = distributor(P, M.obj, induced.parts) @ block_diagonal(blocks, P.p)
    target = tensor_eq(P, res(acting, M), induced.obj)
    return EqMorphism(source.obj, target, f)


def _right_module(
    P: PointedData, acting: Subgroup, L: Subgroup, reps: Sequence[int], W: EqObject, A: EqObject
) -> EqMorphism:
    """Ind^{reps}(W ⊗ Res A) → Ind^{reps}(W) ⊗ A, 조각 a 는 (1 ⊗ μ_A^a)∘(T₂^a)⁻¹"""
    a = P.action
    WA = tensor_eq(P, W, A)
    source = _induce(acting, L, reps, WA)
    induced = _induce(acting, L, reps, W)
    blocks = []
    for t in reps:
        Wt = a.act_obj(t, W.obj)
        blocks.append(tensor_mor(P, a.identity(Wt), A.mu[t]) @ tau_inverse(P, t, W.obj, A.obj))
    f = right_distributor(P, induced.parts, A.obj) @ block_diagonal(blocks, P.p)
    target = tensor_eq(P, induced.obj, res(acting, A))
    return EqMorphism(source.obj, target, f)


def ind_module_structure(P: PointedData, L: Subgroup, H: Subgroup, M: EqObject, V: EqObject) -> EqMorphism:
    """
    (Ind_L^H)₂^{M,V}: Ind_L^H(Res M ⊗ V) → M ⊗ Ind_L^H(V)

    Args:
        M: H 위의 대상
        V: L 위의 대상
    """
    require_subgroup(L, H)
    if M.H != H or V.H != L:
        raise ContainmentError("M 은 H 위, V 는 L 위의 대상이어야 합니다")
    return ensure_morphism(_left_module(P, H, L, coset_reps(L, H).reps, M, V))


def right_module_structure(P: PointedData, L: Subgroup, H: Subgroup, W: EqObject, A: EqObject) -> EqMorphism:
    """Ind_L^H(W ⊗ Res A) → Ind_L^H(W) ⊗ A"""
    require_subgroup(L, H)
    if W.H != L or A.H != H:
        raise ContainmentError("W 는 L 위, A 는 H 위의 대상이어야 합니다")
    return ensure_morphism(_right_module(P, H, L, coset_reps(L, H).reps, W, A))


def frobenius_iso(
    P: PointedData, L: Subgroup, H: Subgroup, M: EqObject, V: EqObject
) -> Tuple[EqMorphism, CheckReport]:
    """
    Ind_L^H(M) ⊗ V ≅ Ind_L^H(M ⊗ Res V)

    오른쪽 모듈 구조의 역을 증인으로 돌려줍니다.
    """
    report = CheckReport(name="frobenius")
    structure = right_module_structure(P, L, H, M, V)
    fld = P.action.field
    invertible = structure.is_invertible()
    report.record(invertible, "invertible", "Frobenius 사상이 가역이 아닙니다", M=M.label, V=V.label)
    if not invertible:
        return structure, report
    witness = structure.inverse()
    report.absorb(validate_eq_morphism(witness, name="witness"))
    left, right = witness.source, witness.target
    report.record(
        hom_dim(left, left) == hom_dim(right, right),
        "end_dimension",
        "양쪽 End 차원이 다릅니다",
        M=M.label,
        V=V.label,
    )
    report.note(dim=left.dim, p=fld.p)
    return witness, report


def conj_monoidal(P: PointedData, x: int, A: EqObject, B: EqObject) -> EqMorphism:
    """c_{H,x}(A⊗B) → c_{H,x}(A) ⊗ c_{H,x}(B), 성분 (T₂^x)⁻¹"""
    if A.H != B.H:
        raise ContainmentError("A, B 는 같은 부분군 위의 대상이어야 합니다")
    H = A.H
    source = conj(H, x, tensor_eq(P, A, B))
    target = tensor_eq(P, conj(H, x, A), conj(H, x, B))
    return EqMorphism(source, target, tau_inverse(P, x, A.obj, B.obj))


def conj_module(P: PointedData, x: int, M: EqObject, V: EqObject) -> EqMorphism:
    """
    c_{L,x}(Res M ⊗ V) → Res M ⊗ c_{L,x}(V)   (x ∈ M.H, L = V.H ≤ M.H)
    """
    L = V.H
    if x not in M.H or not L.is_subgroup_of(M.H):
        raise ContainmentError("x 와 V 의 부분군이 M 의 부분군에 포함되어야 합니다")
    a = P.action
    source = conj(L, x, tensor_eq(P, M, V))
    target = tensor_eq(P, res(conjugate(L, x), M), conj(L, x, V))
    f = tensor_mor(P, M.mu[x], a.identity(a.act_obj(x, V.obj))) @ tau_inverse(P, x, M.obj, V.obj)
    return EqMorphism(source, target, f)


# ============================================================
# 모노이달/모듈 검증
# ============================================================

def module_functor_check(
    P: PointedData, L: Subgroup, H: Subgroup, A: EqObject, B: EqObject, V: EqObject
) -> CheckReport:
    """Ind 의 모듈 함자 다이어그램 (UM), (HM)"""
    report = CheckReport(name="module_functor")
    one = unit_eq(P, H)
    um = ind_module_structure(P, L, H, one, V)
    report.absorb(validate_eq_morphism(um, name="UM.structure"))
    report.record(
        um.f.equals(P.action.identity(um.source.obj)),
        "UM",
        "(Ind)₂^{1,V} 가 항등사상이 아닙니다",
        V=V.label,
    )

    AB = tensor_eq(P, A, B)
    path1 = associator(P, A, B, ind(L, H, V)) @ ind_module_structure(P, L, H, AB, V)
    BV = tensor_eq(P, B, V)
    path2 = (
        tensor_eq_mor(P, EqMorphism.identity(A), ind_module_structure(P, L, H, B, V))
        @ ind_module_structure(P, L, H, A, BV)
        @ ind_mor(L, H, associator(P, res(L, A), res(L, B), V))
    )
    for name, path in (("HM.path1", path1), ("HM.path2", path2)):
        report.absorb(validate_eq_morphism(path, name=name))
    report.record(
        path1.f.equals(path2.f),
        "HM",
        "(HM) 두 경로가 다릅니다",
        A=A.label,
        B=B.label,
        V=V.label,
        path1=path1.f.witness(),
        path2=path2.f.witness(),
    )
    return report


@dataclass(frozen=True)
class GreenContext:
    """
    범주 수준 Green 검사 범위

    upper: H 위의 표본 대상, lower: L 위의 표본 대상, elements: 켤레에 쓸 원소
    """
    H: Subgroup
    K: Subgroup
    L: Subgroup
    upper: Tuple[EqObject, ...]
    lower: Tuple[EqObject, ...]
    elements: Tuple[int, ...] = ()


def _mackey_module_square(P: PointedData, ctx: GreenContext, M: EqObject, V: EqObject, report: CheckReport) -> None:
    """양쪽잉여류 x 조각마다 유도의 모듈 구조가 Mackey 이동 사상과 가환하는지"""
    a = P.action
    grp = a.group
    K, L, H = ctx.K, ctx.L, ctx.H
    D = double_cosets(K, H, L)
    MV = tensor_eq(P, M, V)
    MK = res(K, M)
    for x in D.reps:
        rx = D.blocks[x]
        x_inv = grp.inv(x)
        shifted = [grp.mul(r, x_inv) for r in rx]
        meet = intersection(K, conjugate(L, x))

        split_module = _left_module(P, K, L, rx, M, V)
        shift_V = block_diagonal([a.t2_inv(s, x, V.obj) for s in shifted], P.p)
        shift_MV = block_diagonal([a.t2_inv(s, x, MV.obj) for s in shifted], P.p)
        left = tensor_mor(P, a.identity(M.obj), shift_V) @ split_module.f

        cm = conj_module(P, x, M, V)
        ind_cm = block_diagonal([a.act_mor(s, cm.f) for s in shifted], P.p)
        W = res(meet, conj(L, x, V))
        conj_module_map = _left_module(P, K, meet, shifted, M, W)
        right = conj_module_map.f @ ind_cm @ shift_MV

        shifted_V = _induce(K, meet, shifted, W).obj
        square = EqMorphism(split_module.source, tensor_eq(P, MK, shifted_V), left)
        report.absorb(validate_eq_morphism(square, name=f"mackey_module.{x}"))
        report.record(
            left.equals(right),
            "mackey_module",
            "모듈 구조가 Mackey 이동 사상과 가환하지 않습니다",
            x=x,
            K=list(K.elements),
            L=list(L.elements),
            M=M.label,
            V=V.label,
        )


def _nat_C_monoidal(P: PointedData, a_elem: int, b_elem: int, M: EqObject, N: EqObject, report: CheckReport) -> None:
    """𝐂^{a,b} 가 켤레의 모노이달 구조와 호환되는지 (두 경로 비교)"""
    a = P.action
    ab = a.group.mul(a_elem, b_elem)
    MN = tensor_obj(P, M.obj, N.obj)
    bM, bN = a.act_obj(b_elem, M.obj), a.act_obj(b_elem, N.obj)
    double_tau = tau_inverse(P, a_elem, bM, bN) @ a.act_mor(a_elem, tau_inverse(P, b_elem, M.obj, N.obj))
    left = double_tau @ a.t2_inv(a_elem, b_elem, MN)
    right = tensor_mor(P, a.t2_inv(a_elem, b_elem, M.obj), a.t2_inv(a_elem, b_elem, N.obj)) @ tau_inverse(
        P, ab, M.obj, N.obj
    )
    H = M.H
    source = conj(H, ab, tensor_eq(P, M, N))
    bH = conjugate(H, b_elem)
    target = tensor_eq(P, conj(bH, a_elem, conj(H, b_elem, M)), conj(bH, a_elem, conj(H, b_elem, N)))
    report.absorb(validate_eq_morphism(EqMorphism(source, target, left), name="nat_C_monoidal.map"))
    report.record(
        left.equals(right),
        "nat_C_monoidal",
        "𝐂(M⊗N) 와 𝐂(M)⊗𝐂(N) 경로가 다릅니다",
        a=a_elem,
        b=b_elem,
        M=M.label,
        N=N.label,
    )


def green_categorical_check(P: PointedData, ctx: GreenContext) -> CheckReport:
    """
    범주 수준 Green 검사

    (a) res 의 strict 모노이달성, (b) 켤레의 모노이달 구조, (c) Mackey 이동 사상의 모듈 호환성,
    (d) 𝐂 의 모노이달 자연변환 법칙, 그리고 Ind 의 모듈 함자 다이어그램과 Frobenius 동형
    """
    report = CheckReport(name="green_categorical")
    require_subgroup(ctx.K, ctx.H)
    require_subgroup(ctx.L, ctx.H)
    upper = list(ctx.upper)
    lower = list(ctx.lower)

    # (a)
    report.record(
        res(ctx.K, unit_eq(P, ctx.H)).same_as(unit_eq(P, ctx.K)),
        "res_unit",
        "Res(1) ≠ 1",
    )
    for A in upper:
        for B in upper:
            report.record(
                res(ctx.K, tensor_eq(P, A, B)).same_as(tensor_eq(P, res(ctx.K, A), res(ctx.K, B))),
                "res_monoidal",
                "Res(A⊗B) ≠ Res A ⊗ Res B",
                A=A.label,
                B=B.label,
            )

    # (b)
    for x in ctx.elements:
        report.record(
            conj(ctx.H, x, unit_eq(P, ctx.H)).same_as(unit_eq(P, conjugate(ctx.H, x))),
            "conj_unit",
            "c_x(1) ≠ 1",
            x=x,
        )
        for A in upper:
            for B in upper:
                phi = conj_monoidal(P, x, A, B)
                sub = validate_eq_morphism(phi, name="conj_monoidal")
                sub.record(phi.is_invertible(), "invertible", "켤레 모노이달 구조가 가역이 아닙니다", x=x)
                report.absorb(sub)

    # (c)
    for M in upper:
        for V in lower:
            _mackey_module_square(P, ctx, M, V, report)

    # (d)
    for a_elem in ctx.elements:
        for b_elem in ctx.elements:
            for M in upper:
                for N in upper:
                    _nat_C_monoidal(P, a_elem, b_elem, M, N, report)

    # 모듈 함자 / Frobenius
    for A in upper:
        for V in lower:
            for B in upper:
                report.absorb(module_functor_check(P, ctx.L, ctx.H, A, B, V))
            _, frob = frobenius_iso(P, ctx.L, ctx.H, V, A)
            report.absorb(frob)
    report.note(H=list(ctx.H.elements), K=list(ctx.K.elements), L=list(ctx.L.elements))
    return report


# ============================================================
# 무작위 데이터
# ============================================================

def gauge_pointed(P: PointedData, beta: np.ndarray) -> PointedData:
    """
    게이지 변환: λ ← λ·δβ, τ^g_{i,j} ← τ^g_{i,j}·β^g_{ij}/(β^g_i β^g_j)

    β^1 ≡ 1, β^g_e = 1 이어야 정규화가 유지됩니다.
    """
    p = P.p
    beta = np.asarray(beta, dtype=np.int64) % p
    inv = np.vectorize(lambda v: pow(int(v), p - 2, p))(beta).astype(np.int64)
    et = P.E.table
    factor = beta[:, et] * inv[:, :, None] % p * inv[:, None, :] % p
    action = with_lambda(P.action, P.action.lam * coboundary(P.action, beta) % p)
    return PointedData(action, P.E, P.tau * factor % p)


def twisted_cyclic_pointed(action: ActionData, E: Group, rng: np.random.Generator) -> PointedData:
    """
    순환군 G = <t> 가 순환군 E 에 자명하게 작용하는 경우의 비자명 데이터

    τ^{t^a}_{i,j} = ζ^{a·e_i·e_j} (ζ^{gcd(|E|,|G|)} = 1), λ 는 값 η^{e_i} 의 carry cocycle (η^{|E|} = 1).
    e_i 는 E 안에서 i 의 지수입니다.
    """
    grp = action.group
    p = action.p
    m, k = grp.order, E.order
    if not np.array_equal(action.sigma, np.tile(np.arange(k), (m, 1))):
        raise EquivariantError("자명한 σ 에서만 지원합니다")
    exp_g = np.asarray(grp.exponents(), dtype=np.int64)
    exp_e = np.asarray(E.exponents(), dtype=np.int64)
    zetas = roots_of_unity(p, gcd(k, m))
    etas = roots_of_unity(p, k)
    zeta = zetas[int(rng.integers(1, len(zetas)))] if len(zetas) > 1 else 1
    eta = etas[int(rng.integers(1, len(etas)))] if len(etas) > 1 else 1

    powers = exp_g[:, None, None] * exp_e[None, :, None] * exp_e[None, None, :]
    tau = np.vectorize(lambda e: pow(zeta, int(e), p))(powers).astype(np.int64)
    lam = carry_cocycle(action, [pow(eta, int(e), p) for e in exp_e])
    logger.debug(f"twisted pointed data: ζ={zeta}, η={eta}")
    return PointedData(with_lambda(action, lam), E, tau)


def random_pointed(action: ActionData, E: Group, rng: np.random.Generator) -> PointedData:
    """
    무작위 유효 점화 데이터

    σ 가 자명하고 G, E 가 순환군이면 비자명 쌍지표 데이터에서 시작하고,
    그 외에는 자명 데이터에서 시작해 무작위 게이지를 적용합니다.
    """
    base = with_lambda(action, np.ones_like(action.lam))
    trivial_sigma = np.array_equal(action.sigma, np.tile(np.arange(action.n), (action.group.order, 1)))
    if trivial_sigma and action.group.is_cyclic() and E.is_cyclic():
        P = twisted_cyclic_pointed(base, E, rng)
    else:
        P = PointedData.trivial(base, E)
    return gauge_pointed(P, random_beta(action, rng, fixed=(0,)))
