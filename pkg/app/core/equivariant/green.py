"""
K0 추출과 Mackey/Green 함자 표

K0Builder 가 부분군마다 단순 대상 목록을 만들고, 각 단순 대상의
Res/Ind/c 상(과 점화 층에서는 텐서곱)을 분해해 정수 행렬 표를 채웁니다.
verify_mackey_axioms / verify_green_axioms 는 그 표 위의 정수 항등식만 봅니다.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings

from .exceptions import ContainmentError, DecompositionError
from .functors import conj, ind, res
from .groups import Group, Subgroup, conjugate, double_cosets, intersection, subgroups
from .mackey import mackey_summands
from .pointed import PointedData, tensor_eq, unit_eq
from .schemas import CheckReport, K0Table, SimpleInfo, SubgroupInfo
from .sscat import ActionData, EqObject, direct_sum, is_iso
from .split import SimpleClass, certify_simples, multiplicity, simples_of

logger = logging.getLogger(__name__)


# ============================================================
# 분해
# ============================================================

def decompose(simples: Sequence[SimpleClass], M: EqObject) -> np.ndarray:
    """K0 벡터 m_S = dim Hom(S, M) / dim End(S), 전체 차원 일치 확인 포함"""
    vector = np.array([multiplicity(s, M) for s in simples], dtype=np.int64)
    total = sum(int(m) * s.obj.dim for m, s in zip(vector, simples))
    if total != M.dim:
        raise DecompositionError(f"분해 차원 {total} 이 대상 차원 {M.dim} 과 다릅니다 ({M.label})")
    return vector


def decompose_certified(
    simples: Sequence[SimpleClass], M: EqObject, rng: np.random.Generator
) -> Tuple[np.ndarray, CheckReport]:
    """분해 + ⊕ S^{m_S} ≅ M 증인"""
    report = CheckReport(name="decompose")
    vector = decompose(simples, M)
    pieces = [s.obj for m, s in zip(vector, simples) for _ in range(int(m))]
    if pieces:
        iso = is_iso(M, direct_sum(pieces).obj, settings.ISO_TRIALS, rng)
        report.record(iso.is_iso, "certificate", "⊕ S^{m_S} ≇ M", M=M.label, vector=vector, error_bound=iso.error_bound)
    else:
        report.record(M.dim == 0, "certificate", "영 벡터인데 대상이 0 이 아닙니다", M=M.label)
    return vector, report


# ============================================================
# 표 생성
# ============================================================

class K0Builder:
    """
    부분군 집합 위의 K0 표 생성기

    단순 대상 목록은 부분군마다 (seed, 부분군 인덱스) 로 시드를 고정해 캐시합니다.
    """

    def __init__(
        self,
        action: ActionData,
        scope: Optional[Sequence[Subgroup]] = None,
        pointed: Optional[PointedData] = None,
        seed: Optional[int] = None,
    ):
        """
        Args:
            action: 군 작용
            scope: 켤레에 대해 닫힌 부분군 목록 (기본: 전체 부분군)
            pointed: 주어지면 융합 상수와 단위 벡터도 계산
            seed: 분해 난수 시드
        """
        self.action = action
        self.group: Group = action.group
        self.subgroups: List[Subgroup] = list(scope) if scope is not None else subgroups(
            self.group, settings.MAX_GROUP_ORDER
        )
        self.position: Dict[Subgroup, int] = {s: i for i, s in enumerate(self.subgroups)}
        self.pointed = pointed
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self._simples: Dict[int, List[SimpleClass]] = {}
        for s in self.subgroups:
            for x in range(self.group.order):
                if conjugate(s, x) not in self.position:
                    raise ContainmentError(f"부분군 집합이 켤레에 대해 닫혀 있지 않습니다: {s.label}, x={x}")

    def rng(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, index])

    def index(self, H: Subgroup) -> int:
        return self.position[H]

    def simples(self, index: int) -> List[SimpleClass]:
        if index not in self._simples:
            self._simples[index] = simples_of(self.action, self.subgroups[index], self.rng(index))
            logger.debug(f"부분군 {index}: 단순 대상 {len(self._simples[index])}개")
        return self._simples[index]

    def certify(self, index: int) -> CheckReport:
        return certify_simples(self.action, self.subgroups[index], self.simples(index), self.rng(index))

    def decompose(self, index: int, M: EqObject) -> np.ndarray:
        return decompose(self.simples(index), M)

    def _columns(self, index: int, images: Sequence[EqObject]) -> List[List[int]]:
        """열 j = images[j] 의 K0 벡터, 결과는 행 우선 행렬"""
        if not images:
            return []
        cols = np.stack([self.decompose(index, M) for M in images], axis=1)
        return cols.tolist()

    def restriction(self, h: int, k: int) -> List[List[int]]:
        K = self.subgroups[k]
        return self._columns(k, [res(K, s.obj) for s in self.simples(h)])

    def induction(self, h: int, k: int) -> List[List[int]]:
        K, H = self.subgroups[k], self.subgroups[h]
        return self._columns(h, [ind(K, H, s.obj) for s in self.simples(k)])

    def conjugation(self, h: int, x: int) -> List[List[int]]:
        H = self.subgroups[h]
        target = self.index(conjugate(H, x))
        return self._columns(target, [conj(H, x, s.obj) for s in self.simples(h)])

    def fusion(self, h: int) -> List[List[List[int]]]:
        simples = self.simples(h)
        return [[self.decompose(h, tensor_eq(self.pointed, a.obj, b.obj)).tolist() for b in simples] for a in simples]

    def build(self) -> K0Table:
        """모든 포함 쌍 (K ≤ H) 의 R/I, 모든 (H, x) 의 c, 점화 층이면 융합 상수"""
        a = self.action
        table = K0Table(prime=a.p, group_order=self.group.order)
        for i, s in enumerate(self.subgroups):
            table.subgroups.append(SubgroupInfo(index=i, elements=list(s.elements), order=s.order, label=s.label))
            table.simples[str(i)] = [
                SimpleInfo(
                    label=f"H{i}.S{k}",
                    multiplicities=list(c.obj.obj.m),
                    total_dim=c.obj.dim,
                    degree=c.degree,
                    character=list(c.character),
                )
                for k, c in enumerate(self.simples(i))
            ]
        for h, H in enumerate(self.subgroups):
            for k, K in enumerate(self.subgroups):
                if K.is_subgroup_of(H):
                    table.restriction[f"{h}>{k}"] = self.restriction(h, k)
                    table.induction[f"{h}>{k}"] = self.induction(h, k)
            for x in range(self.group.order):
                table.conjugation[f"{h}@{x}"] = self.conjugation(h, x)
            if self.pointed is not None:
                table.fusion[str(h)] = self.fusion(h)
                table.unit[str(h)] = self.decompose(h, unit_eq(self.pointed, H)).tolist()
        logger.info(f"K0 표: 부분군 {len(self.subgroups)}개, 계수 {[table.rank(i) for i in range(len(self.subgroups))]}")
        return table


# ============================================================
# Mackey 공리
# ============================================================

def _record_matrix(report: CheckReport, check: str, message: str, lhs: np.ndarray, rhs: np.ndarray, **context) -> bool:
    ok = lhs.shape == rhs.shape and np.array_equal(lhs, rhs)
    return report.record(ok, check, message, lhs=lhs, rhs=rhs, **context)


def _subgroup_index(T: K0Table) -> Dict[Tuple[int, ...], int]:
    return {tuple(s.elements): s.index for s in T.subgroups}


def _contains(T: K0Table, h: int, k: int) -> bool:
    return f"{h}>{k}" in T.restriction


def verify_mackey_axioms(T: K0Table, group: Group) -> CheckReport:
    """
    항등, R∘R 과 I∘I 의 추이성, c∘c 와 c 의 R/I 호환, 양쪽잉여류 Mackey 공식,
    Frobenius 짝, 켤레 행렬의 치환성
    """
    report = CheckReport(name="mackey_axioms")
    lookup = _subgroup_index(T)
    subs = [group.subgroup(s.elements) for s in T.subgroups]
    n = len(subs)

    def conj_index(h: int, x: int) -> int:
        return lookup[conjugate(subs[h], x).elements]

    # 항등
    for h in range(n):
        eye = np.eye(T.rank(h), dtype=np.int64)
        _record_matrix(report, "identity.res", "R^H_H ≠ 1", T.res(h, h), eye, H=h)
        _record_matrix(report, "identity.ind", "I^H_H ≠ 1", T.ind(h, h), eye, H=h)
        for x in subs[h].elements:
            _record_matrix(report, "identity.conj", "c_{H,h} ≠ 1 (h ∈ H)", T.conj(h, x, h), eye, H=h, x=x)

    # 추이성
    for h in range(n):
        for k in range(n):
            if not _contains(T, h, k):
                continue
            for j in range(n):
                if not _contains(T, k, j):
                    continue
                _record_matrix(report, "transitive.res", "R^K_J R^H_K ≠ R^H_J", T.res(k, j) @ T.res(h, k), T.res(h, j), H=h, K=k, J=j)
                _record_matrix(report, "transitive.ind", "I^H_K I^K_J ≠ I^H_J", T.ind(h, k) @ T.ind(k, j), T.ind(h, j), H=h, K=k, J=j)

    # 켤레
    for h in range(n):
        for x in range(group.order):
            xh = conj_index(h, x)
            for y in range(group.order):
                yx = group.mul(y, x)
                _record_matrix(
                    report,
                    "conj.compose",
                    "c_{ˣH,y} c_{H,x} ≠ c_{H,yx}",
                    T.conj(xh, y, conj_index(xh, y)) @ T.conj(h, x, xh),
                    T.conj(h, yx, conj_index(h, yx)),
                    H=h,
                    x=x,
                    y=y,
                )
            for k in range(n):
                if not _contains(T, h, k):
                    continue
                xk = conj_index(k, x)
                _record_matrix(
                    report,
                    "conj.res",
                    "c_{K,x} R^H_K ≠ R^{ˣH}_{ˣK} c_{H,x}",
                    T.conj(k, x, xk) @ T.res(h, k),
                    T.res(xh, xk) @ T.conj(h, x, xh),
                    H=h,
                    K=k,
                    x=x,
                )
                _record_matrix(
                    report,
                    "conj.ind",
                    "c_{H,x} I^H_K ≠ I^{ˣH}_{ˣK} c_{K,x}",
                    T.conj(h, x, xh) @ T.ind(h, k),
                    T.ind(xh, xk) @ T.conj(k, x, xk),
                    H=h,
                    K=k,
                    x=x,
                )

    # Mackey 공식
    for h in range(n):
        for k in range(n):
            if not _contains(T, h, k):
                continue
            for l in range(n):
                if not _contains(T, h, l):
                    continue
                lhs = T.res(h, k) @ T.ind(h, l)
                rhs = np.zeros_like(lhs)
                D = double_cosets(subs[k], subs[h], subs[l])
                for x in D.reps:
                    xl = conj_index(l, x)
                    meet = lookup[intersection(subs[k], subs[xl]).elements]
                    rhs = rhs + T.ind(k, meet) @ T.res(xl, meet) @ T.conj(l, x, xl)
                _record_matrix(report, "mackey_formula", "R^H_K I^H_L ≠ ∑_x I R c", lhs, rhs, H=h, K=k, L=l, double_cosets=list(D.reps))

    # Frobenius 짝: deg_H(b)·I[b, a] = deg_K(a)·R[a, b]
    for h in range(n):
        for k in range(n):
            if not _contains(T, h, k):
                continue
            left = T.degrees(h)[:, None] * T.ind(h, k)
            right = (T.degrees(k)[:, None] * T.res(h, k)).T
            _record_matrix(report, "frobenius", "⟨I(a), b⟩_H ≠ ⟨a, R(b)⟩_K", left, right, H=h, K=k)

    # 켤레 행렬 치환성
    for h in range(n):
        for x in range(group.order):
            xh = conj_index(h, x)
            c = T.conj(h, x, xh)
            square = c.shape[0] == c.shape[1]
            perm = square and set(np.unique(c).tolist()) <= {0, 1} and bool(
                np.all(c.sum(axis=0) == 1) and np.all(c.sum(axis=1) == 1)
            )
            report.record(perm, "conj_permutation", "c_{H,x} 가 치환 행렬이 아닙니다", H=h, x=x, matrix=c)
            if perm:
                _record_matrix(report, "conj_degree", "c_{H,x} 가 End 차수를 보존하지 않습니다", c @ T.degrees(h), T.degrees(xh), H=h, x=x)

    report.note(subgroups=n, ranks=[T.rank(h) for h in range(n)])
    return report


def cross_check_mackey(builder: K0Builder, T: K0Table, triples: Sequence[Tuple[int, int, int]]) -> CheckReport:
    """
    Mackey 공식 좌변의 열을 mackey_iso 가 실제로 만든 조각들의 분해 합과 비교

    triples: (H, K, L) 부분군 인덱스
    """
    report = CheckReport(name="mackey_cross_check")
    for h, k, l in triples:
        H, K, L = (builder.subgroups[i] for i in (h, k, l))
        lhs = T.res(h, k) @ T.ind(h, l)
        for j, V in enumerate(builder.simples(l)):
            summands, _ = mackey_summands(K, L, H, V.obj)
            total = sum((builder.decompose(k, s.G) for s in summands), np.zeros(T.rank(k), dtype=np.int64))
            _record_matrix(report, "mackey_witness", "표의 Mackey 공식 좌변과 Mackey 증인 분해가 다릅니다", lhs[:, j], total, H=h, K=k, L=l, V=j)
    return report


# ============================================================
# Green 공리
# ============================================================

def _product(N: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """K0 곱 (x·y)_c = ∑ x_a y_b N[a, b, c]"""
    return np.einsum("a,b,abc->c", x, y, N)


def verify_green_axioms(T: K0Table, group: Group) -> CheckReport:
    """
    환 구조(결합/단위), R 과 c 가 단위 보존 환 준동형, 양쪽 Frobenius 상호성
    I(a·R(b)) = I(a)·b, I(R(b)·a) = b·I(a)
    """
    report = CheckReport(name="green_axioms")
    if not T.monoidal:
        report.record(False, "monoidal", "융합 상수가 없는 표입니다")
        return report
    lookup = _subgroup_index(T)
    subs = [group.subgroup(s.elements) for s in T.subgroups]
    n = len(subs)

    for h in range(n):
        N = T.fusion_tensor(h)
        u = T.unit_vector(h)
        r = T.rank(h)
        left = np.einsum("abd,dce->abce", N, N)
        right = np.einsum("bcd,ade->abce", N, N)
        report.record(np.array_equal(left, right), "ring.associative", "(ab)c ≠ a(bc)", H=h)
        eye = np.eye(r, dtype=np.int64)
        report.record(
            np.array_equal(np.einsum("a,abc->bc", u, N), eye) and np.array_equal(np.einsum("b,abc->ac", u, N), eye),
            "ring.unit",
            "1·a ≠ a 또는 a·1 ≠ a",
            H=h,
            unit=u,
        )

    def ring_map(check: str, M: np.ndarray, src: int, dst: int, **context) -> None:
        Ns, Nd = T.fusion_tensor(src), T.fusion_tensor(dst)
        _record_matrix(report, f"{check}.unit", "단위를 보존하지 않습니다", M @ T.unit_vector(src), T.unit_vector(dst), **context)
        lhs = np.einsum("abc,dc->abd", Ns, M)
        rhs = np.einsum("ia,jb,ijd->abd", M, M, Nd)
        _record_matrix(report, f"{check}.multiplicative", "곱을 보존하지 않습니다", lhs, rhs, **context)

    for h in range(n):
        for k in range(n):
            if not _contains(T, h, k):
                continue
            ring_map("ring_map.res", T.res(h, k), h, k, H=h, K=k)
            R, I = T.res(h, k), T.ind(h, k)
            NH, NK = T.fusion_tensor(h), T.fusion_tensor(k)
            for a in range(T.rank(k)):
                ea = np.eye(T.rank(k), dtype=np.int64)[a]
                for b in range(T.rank(h)):
                    eb = np.eye(T.rank(h), dtype=np.int64)[b]
                    _record_matrix(
                        report, "frobenius.right", "I(a·R(b)) ≠ I(a)·b",
                        I @ _product(NK, ea, R @ eb), _product(NH, I @ ea, eb), H=h, K=k, a=a, b=b,
                    )
                    _record_matrix(
                        report, "frobenius.left", "I(R(b)·a) ≠ b·I(a)",
                        I @ _product(NK, R @ eb, ea), _product(NH, eb, I @ ea), H=h, K=k, a=a, b=b,
                    )
        for x in range(group.order):
            xh = lookup[conjugate(subs[h], x).elements]
            ring_map("ring_map.conj", T.conj(h, x, xh), h, xh, H=h, x=x)
    return report


# ============================================================
# 텍스트 표
# ============================================================

def _render_matrix(title: str, rows: Sequence[str], cols: Sequence[str], matrix: Sequence[Sequence[int]]) -> List[str]:
    width = max([len(c) for c in cols] + [len(str(v)) for row in matrix for v in row] + [1])
    head = max([len(r) for r in rows] + [1])
    lines = [title, " " * head + " | " + " ".join(c.rjust(width) for c in cols)]
    lines.append("-" * len(lines[-1]))
    for label, row in zip(rows, matrix):
        lines.append(label.ljust(head) + " | " + " ".join(str(v).rjust(width) for v in row))
    return lines + [""]


def render_table(T: K0Table) -> str:
    """사람이 읽는 정렬된 텍스트 표"""
    names = {h: [s.label for s in T.simples[h]] for h in T.simples}
    lines = [f"K0 table  p={T.prime}  |G|={T.group_order}", ""]
    for s in T.subgroups:
        simples = T.simples[str(s.index)]
        desc = ", ".join(f"{x.label}(dim={x.total_dim},deg={x.degree})" for x in simples)
        lines.append(f"H{s.index} {s.label} order={s.order} rank={len(simples)}: {desc}")
    lines.append("")
    for key in sorted(T.restriction, key=lambda k: tuple(int(v) for v in k.split(">"))):
        h, k = key.split(">")
        if h == k:
            continue
        lines += _render_matrix(f"R H{h} -> H{k}", names[k], names[h], T.restriction[key])
        lines += _render_matrix(f"I H{k} -> H{h}", names[h], names[k], T.induction[key])
    for h in sorted(T.fusion, key=int):
        N = T.fusion_tensor(int(h))
        for a, label in enumerate(names[h]):
            lines += _render_matrix(f"fusion H{h}: {label} ⊗ -", names[h], names[h], N[a].T.tolist())
    return "\n".join(lines).rstrip() + "\n"
