"""
Coherence 다이어그램 검증

다이어그램 ID:
- R, RRC, RCC: 제한이 strict 하므로 데이터 동일성으로 검사
- C, I, IIC, ICC: 두 합성 사상을 블록 단위로 비교
- degeneracy: 단위원/자명 부분군에서 자연변환이 항등사상이 되는지 검사
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from .exceptions import ContainmentError, UnknownDiagramError
from .functors import (
    conj,
    conj_mor,
    ind,
    ind_mor,
    nat_C,
    nat_CI,
    nat_I,
    nat_I_reverse,
    res,
    res_mor,
)
from .groups import Subgroup, conjugate, require_subgroup
from .schemas import CheckReport
from .sscat import EqMorphism, EqObject, validate_eq_morphism

logger = logging.getLogger(__name__)

DIAGRAMS = ("R", "I", "C", "RRC", "RCC", "IIC", "ICC", "degeneracy")


@dataclass(frozen=True)
class DiagramContext:
    """
    다이어그램이 정량화하는 부분군/원소

    tower: 포함 사슬 (작은 것부터). I 는 길이 4, IIC 는 길이 3, 나머지는 2 이상.
    elements: 원소 (C 는 a, b, c 순서; ICC 는 y, x; IIC/RRC 는 x)
    M 은 항상 tower[0] 위의 대상입니다.
    """
    tower: tuple
    elements: tuple = ()

    def describe(self) -> Dict[str, object]:
        return {"tower": [list(s.elements) for s in self.tower], "elements": list(self.elements)}


def _compare(
    report: CheckReport, check: str, left: EqMorphism, right: EqMorphism, ctx: DiagramContext
) -> None:
    for name, path in (("path1", left), ("path2", right)):
        sub = validate_eq_morphism(path, name=f"{check}.{name}")
        report.absorb(sub)
    report.record(
        left.f.equals(right.f),
        check,
        "두 합성 사상이 다릅니다",
        path1=left.f.witness(),
        path2=right.f.witness(),
        **ctx.describe(),
    )


# ============================================================
# 다이어그램별 합성
# ============================================================

def _diagram_C(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """c_{H,abc} ⇒ c_a c_b c_c 의 두 경로"""
    H = ctx.tower[0]
    a_elem, b_elem, c_elem = ctx.elements
    grp = M.action.group
    ab = grp.mul(a_elem, b_elem)
    bc = grp.mul(b_elem, c_elem)
    cM = conj(H, c_elem, M)
    cH = conjugate(H, c_elem)
    path1 = nat_C(a_elem, b_elem, cH, cM) @ nat_C(ab, c_elem, H, M)
    path2 = conj_mor(a_elem, nat_C(b_elem, c_elem, H, M)) @ nat_C(a_elem, bc, H, M)
    _compare(report, "C", path1, path2, ctx)


def _diagram_I(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """Ind_J^H ⇒ Ind_L^H Ind_K^L Ind_J^K 의 두 경로와 역방향 확인"""
    J, K, L, H = ctx.tower
    path1 = ind_mor(L, H, nat_I(J, K, L, M)) @ nat_I(J, L, H, M)
    path2 = nat_I(K, L, H, ind(J, K, M)) @ nat_I(J, K, H, M)
    _compare(report, "I", path1, path2, ctx)

    forward = nat_I(J, K, H, M)
    backward = nat_I_reverse(J, K, H, M)
    report.absorb(validate_eq_morphism(backward, name="I.reverse"))
    report.record(
        (backward @ forward).f.equals(M.action.identity(forward.source.obj)),
        "I.orientation",
        "역방향 I 가 정방향의 역이 아닙니다",
        **ctx.describe(),
    )


def _diagram_IIC(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """c_x Ind_J^H ⇒ Ind_{ˣK}^{ˣH} Ind_{ˣJ}^{ˣK} c_x"""
    J, K, H = ctx.tower
    (x,) = ctx.elements
    xJ, xK, xH = conjugate(J, x), conjugate(K, x), conjugate(H, x)
    path1 = (
        ind_mor(xK, xH, nat_CI(x, J, K, M))
        @ nat_CI(x, K, H, ind(J, K, M))
        @ conj_mor(x, nat_I(J, K, H, M))
    )
    path2 = nat_I(xJ, xK, xH, conj(J, x, M)) @ nat_CI(x, J, H, M)
    _compare(report, "IIC", path1, path2, ctx)


def _diagram_ICC(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """c_{H,yx} Ind_L^H ⇒ Ind_{ʸˣL}^{ʸˣH} c_y c_x"""
    L, H = ctx.tower
    y, x = ctx.elements
    grp = M.action.group
    yx = grp.mul(y, x)
    xL, xH = conjugate(L, x), conjugate(H, x)
    path1 = (
        nat_CI(y, xL, xH, conj(L, x, M))
        @ conj_mor(y, nat_CI(x, L, H, M))
        @ nat_C(y, x, H, ind(L, H, M))
    )
    yxL, yxH = conjugate(L, yx), conjugate(H, yx)
    path2 = ind_mor(yxL, yxH, nat_C(y, x, L, M)) @ nat_CI(yx, L, H, M)
    _compare(report, "ICC", path1, path2, ctx)


def _diagram_R(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """Res_J^K Res_K^H = Res_J^H (데이터 동일성)"""
    subs = ctx.tower
    top = subs[-1]
    for i in range(len(subs) - 1):
        for j in range(i + 1, len(subs)):
            J, K = subs[i], subs[j]
            report.record(
                res(J, res(K, M)).same_as(res(J, M)),
                "R",
                "Res 의 합성이 Res 와 다릅니다",
                J=list(J.elements),
                K=list(K.elements),
                H=list(top.elements),
            )


def _diagram_RRC(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """c_{K,x} Res_K^H = Res_{ˣK}^{ˣH} c_{H,x} (데이터 동일성)"""
    K, H = ctx.tower[0], ctx.tower[-1]
    (x,) = ctx.elements
    left = conj(K, x, res(K, M))
    right = res(conjugate(K, x), conj(H, x, M))
    report.record(left.same_as(right), "RRC", "c∘Res ≠ Res∘c", left=left.witness(), right=right.witness(), **ctx.describe())


def _diagram_RCC(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """Res(𝐂_{a,b} at M) = 𝐂_{a,b} at Res M"""
    K, H = ctx.tower[0], ctx.tower[-1]
    a_elem, b_elem = ctx.elements
    ab = M.action.group.mul(a_elem, b_elem)
    restricted = res_mor(conjugate(K, ab), nat_C(a_elem, b_elem, H, M))
    direct = nat_C(a_elem, b_elem, K, res(K, M))
    same = (
        restricted.f.equals(direct.f)
        and restricted.source.same_as(direct.source)
        and restricted.target.same_as(direct.target)
    )
    report.record(same, "RCC", "Res(𝐂) ≠ 𝐂(Res)", **ctx.describe())


def _diagram_degeneracy(ctx: DiagramContext, M: EqObject, report: CheckReport) -> None:
    """I_{J,J}^H = I_{J,H}^H = id, 𝐂_{1,a} = 𝐂_{a,1} = id, 𝐂𝐈_{1} = id"""
    J, H = ctx.tower[0], ctx.tower[-1]
    identity = M.action.identity
    cases = {
        "I.lower": nat_I(J, J, H, M),
        "I.upper": nat_I(J, H, H, M),
        "CI.unit": nat_CI(0, J, H, M),
    }
    for a_elem in ctx.elements:
        cases[f"C.left.{a_elem}"] = nat_C(0, a_elem, J, M)
        cases[f"C.right.{a_elem}"] = nat_C(a_elem, 0, J, M)
    for name, phi in cases.items():
        report.record(
            phi.f.equals(identity(phi.source.obj)) and phi.source.same_as(phi.target),
            name,
            "항등사상이어야 하는 자연변환이 항등이 아닙니다",
            **ctx.describe(),
        )
    report.record(conj(J, 0, M).same_as(M), "C.zero", "c_{H,1} ≠ id", **ctx.describe())


_HANDLERS: Dict[str, Callable[[DiagramContext, EqObject, CheckReport], None]] = {
    "C": _diagram_C,
    "I": _diagram_I,
    "IIC": _diagram_IIC,
    "ICC": _diagram_ICC,
    "R": _diagram_R,
    "RRC": _diagram_RRC,
    "RCC": _diagram_RCC,
    "degeneracy": _diagram_degeneracy,
}

_TOWER_LENGTH = {"I": 4, "IIC": 3, "ICC": 2, "C": 1, "RRC": 2, "RCC": 2, "R": 2, "degeneracy": 2}
_ELEMENT_COUNT = {"C": 3, "ICC": 2, "IIC": 1, "RRC": 1, "RCC": 2}


def coherence_check(diagram: str, ctx: DiagramContext, M: EqObject, report: Optional[CheckReport] = None) -> CheckReport:
    """
    다이어그램 하나를 M 에서 평가

    Args:
        diagram: DIAGRAMS 중 하나
        ctx: 부분군 사슬과 원소
        M: ctx.tower[0] 위의 등변 대상 (RRC/RCC 는 tower[-1] 위의 대상)
    """
    handler = _HANDLERS.get(diagram)
    if handler is None:
        raise UnknownDiagramError(f"알 수 없는 다이어그램: {diagram} (가능: {', '.join(DIAGRAMS)})")
    need = _TOWER_LENGTH[diagram]
    if diagram in ("R", "degeneracy"):
        ok = len(ctx.tower) >= need
    else:
        ok = len(ctx.tower) == need
    if not ok:
        raise ContainmentError(f"{diagram}: 부분군 사슬 길이 {len(ctx.tower)} 가 맞지 않습니다")
    if diagram in _ELEMENT_COUNT and len(ctx.elements) != _ELEMENT_COUNT[diagram]:
        raise UnknownDiagramError(f"{diagram}: 원소 {_ELEMENT_COUNT[diagram]} 개가 필요합니다")
    for inner, outer in zip(ctx.tower, ctx.tower[1:]):
        require_subgroup(inner, outer)

    report = report or CheckReport(name=f"coherence.{diagram}")
    handler(ctx, M, report)
    logger.debug(f"{diagram}: checked={report.checked} failed={report.failed}")
    return report


def object_subgroup(diagram: str, ctx: DiagramContext) -> Subgroup:
    """다이어그램이 요구하는 M 의 부분군"""
    if diagram in ("R", "RRC", "RCC"):
        return ctx.tower[-1]
    return ctx.tower[0]
