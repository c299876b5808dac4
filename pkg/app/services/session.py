"""
세션 스펙 로더
JSON 스펙을 검증하고 엔진 객체(군, 작용, 점화 데이터, 대수)로 조립합니다.
"""
import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from app.config import settings
from app.core.equivariant.exactla import PrimeField
from app.core.equivariant.exceptions import EquivariantError, SpecError
from app.core.equivariant.groups import Group, Subgroup, conjugate, subgroups
from app.core.equivariant.pointed import PointedData, random_pointed
from app.core.equivariant.smash import GAlgebra, algebra_from_spec
from app.core.equivariant.sscat import ActionData, random_cocycle
from app.schemas.session import Backend, GroupSpec, SessionSpec

logger = logging.getLogger(__name__)

_PRESET = re.compile(r"^([CDS])(\d+)$")


@dataclass
class Session:
    """조립된 세션 (명령 실행에 필요한 모든 엔진 객체)"""
    spec: SessionSpec
    field: PrimeField
    group: Group
    generators: Tuple[int, ...]
    action: ActionData
    subgroups: List[Subgroup]
    seed: int
    pointed: Optional[PointedData] = None
    galgebra: Optional[GAlgebra] = None

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def backend(self) -> Backend:
        return self.spec.backend

    def rng(self, *key: int) -> np.random.Generator:
        """(seed, key...) 로 고정된 난수 생성기"""
        return np.random.default_rng([self.seed, *key])


class SessionLoader:
    """스펙 → Session 조립"""

    @staticmethod
    def read(path: Union[str, Path]) -> SessionSpec:
        """
        JSON 스펙 파일 읽기

        Raises:
            SpecError: 파일이 없거나 스키마 검증 실패
        """
        path = Path(path)
        if not path.is_file():
            raise SpecError(f"스펙 파일이 없습니다: {path}")
        try:
            return SessionSpec.parse_file(path)
        except (ValidationError, json.JSONDecodeError) as e:
            raise SpecError(f"스펙 검증 실패 ({path.name}): {e}") from e

    @staticmethod
    def build_group(spec: GroupSpec) -> Tuple[Group, Tuple[int, ...]]:
        """
        군과 생성원 원소 인덱스

        preset 과 table 은 탐욕적 생성원, permutations 는 주어진 순열 순서를 따릅니다.
        """
        generators: Optional[Tuple[int, ...]] = None
        if spec.preset is not None:
            match = _PRESET.match(spec.preset)
            if match is None:
                raise SpecError(f"알 수 없는 preset: {spec.preset}")
            kind, size = match.group(1), int(match.group(2))
            if kind == "C" and size >= 1:
                group = Group.cyclic(size)
            elif kind == "D" and size >= 6 and size % 2 == 0:
                group = Group.dihedral(size // 2)
            elif kind == "S" and size >= 1:
                group = Group.symmetric(size)
            else:
                raise SpecError(f"지원하지 않는 preset: {spec.preset}")
        elif spec.table is not None:
            group = Group.from_table(spec.table, name=spec.name or "")
        else:
            group = Group.from_permutations(spec.permutations, name=spec.name or "", max_order=settings.MAX_GROUP_ORDER)
            generators = tuple(group.permutations.index(tuple(p)) for p in spec.permutations)

        if group.order > settings.MAX_GROUP_ORDER:
            raise SpecError(f"|G|={group.order} 가 MAX_GROUP_ORDER={settings.MAX_GROUP_ORDER} 를 넘습니다")
        if spec.name:
            group.name = spec.name
        if spec.generators is not None:
            if any(g < 0 or g >= group.order for g in spec.generators):
                raise SpecError(f"생성원 인덱스가 범위를 벗어났습니다: {spec.generators}")
            generators = tuple(spec.generators)
        if generators is None:
            generators = group.whole().generators()
        return group, generators

    @staticmethod
    def build_action(spec: SessionSpec, fld: PrimeField, group: Group, generators: Sequence[int], n: int) -> ActionData:
        """σ 와 λ 조립 (λ 기본값은 1)"""
        a = spec.action
        order = group.order
        if a.sigma is not None:
            sigma = np.asarray(a.sigma, dtype=np.int64)
        elif a.sigma_generators is not None:
            if len(a.sigma_generators) != len(generators):
                raise SpecError(f"sigma_generators {len(a.sigma_generators)}개 ≠ 생성원 {len(generators)}개")
            sigma = ActionData.from_generator_perms(fld, group, generators, a.sigma_generators).sigma
        else:
            sigma = np.tile(np.arange(n, dtype=np.int64), (order, 1))
        if sigma.ndim != 2 or sigma.shape[1] != n:
            raise SpecError(f"σ 의 단순 대상 수 {sigma.shape[-1]} ≠ n={n}")
        if any(sorted(row) != list(range(n)) for row in sigma.tolist()):
            raise SpecError("σ_g 가 순열이 아닙니다")

        labels = tuple(a.labels)
        if labels and len(labels) != n:
            raise SpecError(f"labels {len(labels)}개 ≠ n={n}")
        action = ActionData(fld, group, sigma, np.ones((order, order, n), dtype=np.int64), labels)
        if isinstance(a.lam, dict):
            lam = random_cocycle(action, np.random.default_rng(a.lam["random"]))
        elif a.lam is not None:
            lam = np.asarray(a.lam, dtype=np.int64)
        else:
            return action
        return ActionData(fld, group, sigma, lam, labels)

    @staticmethod
    def build_scope(spec: SessionSpec, group: Group) -> List[Subgroup]:
        """검사 부분군 (명시된 경우 켤레로 닫음)"""
        if spec.subgroups is None:
            return subgroups(group, settings.MAX_GROUP_ORDER)
        found = {}
        for elems in spec.subgroups:
            H = group.subgroup(elems)
            for x in range(group.order):
                xH = conjugate(H, x)
                found.setdefault(xH.elements, xH)
        return sorted(found.values(), key=lambda s: (s.order, s.elements))

    @classmethod
    def build(cls, spec: SessionSpec) -> Session:
        """
        스펙 → Session

        Raises:
            SpecError: p | |G|, 크기 불일치, 잘못된 군/작용 데이터
        """
        try:
            fld = PrimeField(spec.p, settings.PRIME_LIMIT)
            group, generators = cls.build_group(spec.group)
            if group.order % spec.p == 0:
                raise SpecError(f"p={spec.p} 가 |G|={group.order} 를 나눕니다 (반단순성 깨짐)")

            E = None
            n = spec.action.n
            if spec.backend == Backend.POINTED:
                E, _ = cls.build_group(spec.pointed.E)
                if n is not None and n != E.order:
                    raise SpecError(f"n={n} ≠ |E|={E.order}")
                n = E.order
            if n is None:
                n = len(spec.action.sigma[0]) if spec.action.sigma else (
                    len(spec.action.sigma_generators[0]) if spec.action.sigma_generators else 1
                )
            action = cls.build_action(spec, fld, group, generators, n)
            seed = settings.DEFAULT_SEED if spec.seed is None else spec.seed

            pointed = None
            if E is not None:
                tau = spec.pointed.tau
                if isinstance(tau, dict):
                    pointed = random_pointed(action, E, np.random.default_rng(tau["random"]))
                elif tau is not None:
                    pointed = PointedData(action, E, np.asarray(tau, dtype=np.int64))
                else:
                    pointed = PointedData.trivial(action, E)
                action = pointed.action

            galgebra = None
            if spec.backend == Backend.SMASH:
                alg = spec.algebra
                if alg.kind == "permutation_product":
                    galgebra = GAlgebra.permutation_product(fld, group, action.sigma)
                else:
                    galgebra = algebra_from_spec(fld, group, alg.structure, alg.unit, alg.automorphisms)

            session = Session(
                spec=spec,
                field=fld,
                group=group,
                generators=generators,
                action=action,
                subgroups=cls.build_scope(spec, group),
                seed=seed,
                pointed=pointed,
                galgebra=galgebra,
            )
        except SpecError:
            raise
        except EquivariantError as e:
            raise SpecError(f"스펙 데이터 오류: {e}") from e

        logger.info(
            f"세션 '{spec.name}': p={spec.p}, |G|={group.order}, n={action.n}, "
            f"backend={spec.backend.value}, 부분군 {len(session.subgroups)}개"
        )
        return session

    @classmethod
    def load(cls, path: Union[str, Path]) -> Session:
        return cls.build(cls.read(path))
