"""
검사 실행기
명령을 이름 붙은 검사 작업들로 펼치고 asyncio + 스레드 풀로 병렬 실행합니다.

작업 이름은 "계열/부분군/원소" 형식이며 --only 로 하나만 다시 돌릴 수 있습니다.
"""
import asyncio
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.config import settings
from app.core.equivariant.coherence import DIAGRAMS, DiagramContext, coherence_check, object_subgroup
from app.core.equivariant.exceptions import EquivariantError, SpecError
from app.core.equivariant.green import (
    K0Builder,
    cross_check_mackey,
    verify_green_axioms,
    verify_mackey_axioms,
)
from app.core.equivariant.groups import Subgroup
from app.core.equivariant.mackey import adjunction_check, mackey_iso
from app.core.equivariant.pointed import GreenContext, green_categorical_check, validate_pointed
from app.core.equivariant.schemas import CheckReport, K0Table
from app.core.equivariant.smash import compare_with_abstract, validate_galgebra
from app.core.equivariant.sscat import validate_action
from app.middleware.performance import measure
from app.schemas.report import CheckEntry
from app.schemas.session import Backend, Scope
from app.services.session import Session

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "mackey", "coherence", "adjunction", "tables", "smash-compare")

# 표본 추출 난수 키 (계열별로 독립)
_SAMPLE_KEYS = {"mackey": 11, "coherence": 12, "adjunction": 13, "tables": 14, "smash-compare": 15}
_SMASH_KEY = 21

# 다이어그램별 (사슬 길이, 원소 개수)
_DIAGRAM_SHAPE = {
    "R": (3, 0),
    "I": (4, 0),
    "C": (1, 3),
    "RRC": (2, 1),
    "RCC": (2, 2),
    "IIC": (3, 1),
    "ICC": (2, 2),
    "degeneracy": (2, 0),
}


@dataclass(frozen=True)
class CheckJob:
    """이름 + 리포트를 돌려주는 계산"""
    name: str
    run: Callable[[], CheckReport]


class CheckRunner:
    """한 세션의 명령 실행"""

    def __init__(self, session: Session, jobs: int = 1, scope: Optional[Scope] = None, only: Optional[str] = None):
        """
        Args:
            session: 조립된 세션
            jobs: 동시 실행 작업 수
            scope: 검사 범위 (기본: 스펙의 scope)
            only: 이 이름(또는 접두사)의 작업만 실행
        """
        self.session = session
        self.jobs = max(1, jobs)
        self.scope = scope or session.spec.scope
        self.only = only
        self.builder = K0Builder(session.action, session.subgroups, session.pointed, session.seed)
        self.table: Optional[K0Table] = None

    # ============================================================
    # 공통 도우미
    # ============================================================

    @property
    def subgroups(self) -> List[Subgroup]:
        return self.builder.subgroups

    def _sample(self, family: str, items: List, *key: int) -> List:
        """sampled 범위에서 SAMPLE_SIZE 개를 비복원 추출 (원래 순서 유지)"""
        if self.scope != Scope.SAMPLED or len(items) <= settings.SAMPLE_SIZE:
            return items
        rng = self.session.rng(_SAMPLE_KEYS[family], *key)
        picked = sorted(rng.choice(len(items), size=settings.SAMPLE_SIZE, replace=False).tolist())
        return [items[i] for i in picked]

    def _pairs(self) -> List[Tuple[int, int]]:
        """(작은 것, 큰 것) 포함 쌍"""
        subs = self.subgroups
        return [(k, h) for h in range(len(subs)) for k in range(len(subs)) if subs[k].is_subgroup_of(subs[h])]

    def _chains(self, length: int) -> List[Tuple[int, ...]]:
        """길이 length 의 (비엄격) 포함 사슬, 작은 것부터"""
        subs = self.subgroups
        chains = [(i,) for i in range(len(subs))]
        for _ in range(length - 1):
            chains = [c + (j,) for c in chains for j in range(len(subs)) if subs[c[-1]].is_subgroup_of(subs[j])]
        return chains

    def _simple_objects(self, index: int):
        return [s.obj for s in self.builder.simples(index)]

    @staticmethod
    def _tag(indices: Sequence[int], prefix: str = "") -> str:
        return prefix + "-".join(str(i) for i in indices)

    # ============================================================
    # 명령별 작업
    # ============================================================

    def validate_jobs(self) -> List[CheckJob]:
        s = self.session
        jobs = []
        if s.backend == Backend.POINTED:
            jobs.append(CheckJob("validate/pointed", lambda: validate_pointed(s.pointed)))
        else:
            jobs.append(CheckJob("validate/action", lambda: validate_action(s.action)))
        if s.backend == Backend.SMASH:
            jobs.append(CheckJob("validate/galgebra", lambda: validate_galgebra(s.galgebra)))
        return jobs

    def _mackey_report(self, h: int, k: int, l: int) -> CheckReport:
        H, K, L = (self.subgroups[i] for i in (h, k, l))
        report = CheckReport(name=f"mackey.H{h}.K{k}.L{l}")
        for V in self._simple_objects(l):
            _, sub = mackey_iso(K, L, H, V)
            report.absorb(sub)
        return report

    def mackey_jobs(self) -> List[CheckJob]:
        pairs = self._pairs()
        triples = [(h, k, l) for (k, h) in pairs for (l, h2) in pairs if h2 == h]
        triples.sort()
        return [
            CheckJob(f"mackey/H{h}/K{k}/L{l}", lambda h=h, k=k, l=l: self._mackey_report(h, k, l))
            for h, k, l in self._sample("mackey", triples)
        ]

    def _coherence_report(self, diagram: str, ctx: DiagramContext) -> CheckReport:
        report = CheckReport(name=f"coherence.{diagram}")
        index = self.builder.index(object_subgroup(diagram, ctx))
        for M in self._simple_objects(index):
            coherence_check(diagram, ctx, M, report)
        return report

    def coherence_jobs(self, diagrams: Sequence[str] = DIAGRAMS) -> List[CheckJob]:
        order = self.session.group.order
        contexts = []
        for diagram in diagrams:
            length, count = _DIAGRAM_SHAPE[diagram]
            element_sets = list(itertools.product(range(order), repeat=count))
            if diagram == "degeneracy":
                element_sets = [tuple(range(order))]
            found = [(diagram, tower, elements) for tower in self._chains(length) for elements in element_sets]
            contexts += self._sample("coherence", found, DIAGRAMS.index(diagram))
        jobs = []
        for diagram, tower, elements in contexts:
            ctx = DiagramContext(tuple(self.subgroups[i] for i in tower), tuple(elements))
            name = f"coherence/{diagram}/{self._tag(tower, 'T')}"
            if diagram != "degeneracy" and elements:
                name += f"/{self._tag(elements, 'x')}"
            jobs.append(CheckJob(name, lambda d=diagram, c=ctx: self._coherence_report(d, c)))
        return jobs

    def adjunction_jobs(self) -> List[CheckJob]:
        jobs = []
        for l, h in self._sample("adjunction", self._pairs()):
            L, H = self.subgroups[l], self.subgroups[h]
            jobs.append(
                CheckJob(
                    f"adjunction/H{h}/L{l}",
                    lambda L=L, H=H, l=l, h=h: adjunction_check(L, H, self._simple_objects(l), self._simple_objects(h)),
                )
            )
        return jobs

    def _build_table(self) -> CheckReport:
        self.table = self.builder.build()
        report = CheckReport(name="k0_table")
        report.record(True, "built")
        report.note(ranks=[self.table.rank(i) for i in range(len(self.subgroups))])
        return report

    def _green_context(self, k: int, l: int) -> GreenContext:
        top = self.builder.index(self.session.group.whole())
        elements = tuple(sorted(set((0,) + tuple(self.session.generators))))
        return GreenContext(
            H=self.subgroups[top],
            K=self.subgroups[k],
            L=self.subgroups[l],
            upper=tuple(self._simple_objects(top)[:2]),
            lower=tuple(self._simple_objects(l)[:2]),
            elements=elements,
        )

    def tables_jobs(self) -> List[CheckJob]:
        """K0 표 생성 후 실행되는 작업 (표 생성 자체는 run 에서 먼저)"""
        group = self.session.group
        jobs = [
            CheckJob(f"tables/simples/H{i}", lambda i=i: self.builder.certify(i))
            for i in range(len(self.subgroups))
        ]
        jobs.append(CheckJob("tables/mackey_axioms", lambda: verify_mackey_axioms(self.table, group)))
        pairs = self._pairs()
        triples = sorted((h, k, l) for (k, h) in pairs for (l, h2) in pairs if h2 == h)
        for h, k, l in self._sample("tables", triples):
            jobs.append(
                CheckJob(
                    f"tables/cross_check/H{h}/K{k}/L{l}",
                    lambda t=(h, k, l): cross_check_mackey(self.builder, self.table, [t]),
                )
            )
        if self.session.pointed is not None:
            jobs.append(CheckJob("tables/green_axioms", lambda: verify_green_axioms(self.table, group)))
        top = self.builder.position.get(group.whole())
        if self.session.pointed is not None and top is not None:
            below = [(k, l) for k in range(len(self.subgroups)) for l in range(len(self.subgroups))]
            for k, l in self._sample("tables", below, 1):
                jobs.append(
                    CheckJob(
                        f"tables/green_categorical/H{top}/K{k}/L{l}",
                        lambda k=k, l=l: green_categorical_check(self.session.pointed, self._green_context(k, l)),
                    )
                )
        return jobs

    def smash_jobs(self) -> List[CheckJob]:
        s = self.session
        if s.galgebra is None:
            raise SpecError("smash-compare 는 smash 백엔드 스펙에서만 실행할 수 있습니다")
        jobs = [CheckJob("smash-compare/galgebra", lambda: validate_galgebra(s.galgebra))]
        for h in self._sample("smash-compare", list(range(len(self.subgroups)))):
            H = self.subgroups[h]
            jobs.append(
                CheckJob(f"smash-compare/H{h}", lambda H=H, h=h: compare_with_abstract(s.galgebra, H, s.rng(_SMASH_KEY, h)))
            )
        return jobs

    def jobs_for(self, command: str) -> List[CheckJob]:
        builders: Dict[str, Callable[[], List[CheckJob]]] = {
            "validate": self.validate_jobs,
            "mackey": self.mackey_jobs,
            "coherence": self.coherence_jobs,
            "adjunction": self.adjunction_jobs,
            "tables": self.tables_jobs,
            "smash-compare": self.smash_jobs,
        }
        if command not in builders:
            raise SpecError(f"알 수 없는 명령: {command} (가능: {', '.join(COMMANDS)})")
        jobs = builders[command]()
        if self.only:
            jobs = [j for j in jobs if j.name == self.only or j.name.startswith(self.only.rstrip("/") + "/")]
        return jobs

    # ============================================================
    # 실행
    # ============================================================

    def _execute(self, job: CheckJob) -> CheckEntry:
        try:
            with measure(job.name):
                report = job.run()
        except EquivariantError as e:
            logger.error(f"작업 실패: {job.name} - {e}")
            return CheckEntry.from_error(job.name, e)
        if not report.passed:
            logger.warning(f"검사 실패: {job.name} ({report.failed}/{report.checked})")
        return CheckEntry.from_report(job.name, report)

    async def _gather(self, executor: ThreadPoolExecutor, calls: Sequence[Callable]) -> List:
        loop = asyncio.get_running_loop()
        return await asyncio.gather(*(loop.run_in_executor(executor, call) for call in calls))

    async def _run(self, command: str, jobs: List[CheckJob]) -> List[CheckEntry]:
        with ThreadPoolExecutor(max_workers=self.jobs) as executor:
            if command != "validate":
                # 부분군별 분해는 서로 독립
                await self._gather(executor, [lambda i=i: self.builder.simples(i) for i in range(len(self.subgroups))])
            if command == "tables":
                entries = [self._execute(CheckJob("tables/build", self._build_table))]
                if entries[0].status != "pass":
                    return entries
            else:
                entries = []
            entries += await self._gather(executor, [lambda j=j: self._execute(j) for j in jobs])
        return entries

    def run(self, command: str) -> List[CheckEntry]:
        """
        명령 실행

        Returns:
            이름순으로 정렬된 작업 결과

        Raises:
            SpecError: 알 수 없는 명령이거나 --only 에 맞는 작업이 없음
        """
        jobs = self.jobs_for(command)
        if not jobs and not (command == "tables" and self.only in (None, "tables/build")):
            raise SpecError(f"--only {self.only} 에 해당하는 작업이 없습니다 ({command})")
        logger.info(f"{self.session.name}: {command} 작업 {len(jobs)}개 (jobs={self.jobs}, scope={self.scope.value})")
        entries = asyncio.run(self._run(command, jobs))
        return sorted(entries, key=lambda e: e.name)
