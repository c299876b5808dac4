"""
등변화 검증 엔진 CLI

사용법:
    python main.py validate --spec specs/trivial_s3.json
    python main.py mackey --spec specs/trivial_s3.json --jobs 4 --scope sampled
    python main.py tables --spec specs/pointed_c3_c2.json --out out/
    python main.py mackey --spec specs/trivial_s3.json --only mackey/H5/K1/L2
    python main.py demo --out out/

종료 코드: 0 통과, 1 검사 실패, 2 입력 오류
"""
import argparse
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from app.config import settings
from app.core.equivariant.exceptions import EquivariantError, SpecError
from app.core.equivariant.green import render_table
from app.middleware.performance import clear_stats, get_performance_stats
from app.schemas.report import Report
from app.schemas.session import Backend, Scope
from app.services.runner import COMMANDS, CheckRunner
from app.services.session import Session, SessionLoader

# .env 파일 로드
load_dotenv()

logger = logging.getLogger("main")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

SPECS_DIR = Path(__file__).resolve().parent / "specs"
DEMO_COMMANDS = ("validate", "mackey", "coherence", "adjunction", "tables")


# ============================================================================
# 설정
# ============================================================================
def configure_logging(level: str) -> None:
    """로그는 stderr 로 (디스크의 JSON 보고서와 분리)"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equivariant", description="등변화 범주의 Mackey/Green 구조 검증")
    parser.add_argument("command", choices=COMMANDS + ("demo",), help="실행할 명령")
    parser.add_argument("--spec", type=Path, help="세션 스펙 JSON (demo 에서는 스펙 디렉터리)")
    parser.add_argument("--seed", type=int, default=None, help="난수 시드 (스펙 값 덮어쓰기)")
    parser.add_argument("--jobs", type=int, default=1, help="동시 실행 작업 수")
    parser.add_argument("--scope", choices=[s.value for s in Scope], default=None, help="검사 범위")
    parser.add_argument("--out", type=Path, default=None, help="보고서 출력 디렉터리")
    parser.add_argument("--only", default=None, help="이 이름(접두사)의 작업만 실행")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="로그 레벨")
    return parser


# ============================================================================
# 출력
# ============================================================================
def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_table(out: Path, runner: CheckRunner, prefix: str = "") -> List[str]:
    """k0_table.json / k0_table.txt"""
    if runner.table is None:
        return []
    target = out / prefix if prefix else out
    target.mkdir(parents=True, exist_ok=True)
    (target / "k0_table.json").write_text(dump_json(runner.table.dict()), encoding="utf-8")
    (target / "k0_table.txt").write_text(render_table(runner.table), encoding="utf-8")
    names = ["k0_table.json", "k0_table.txt"]
    return [f"{prefix}/{n}" if prefix else n for n in names]


def write_report(out: Optional[Path], report: Report) -> None:
    """report.json (결정적) + timings.json (실행마다 다름)"""
    if out is None:
        sys.stdout.write(dump_json(report.dict()))
        return
    out.mkdir(parents=True, exist_ok=True)
    report.artifacts += ["report.json", "timings.json"]
    report.finalize()
    (out / "report.json").write_text(dump_json(report.dict()), encoding="utf-8")
    (out / "timings.json").write_text(dump_json(get_performance_stats()), encoding="utf-8")
    status = "PASS" if report.passed else "FAIL"
    print(f"{report.command}: {status} (검사 {report.checked}개, 실패 {report.failed}개) → {out}")
    for name in report.failing():
        print(f"  ✗ {name}")


# ============================================================================
# 명령
# ============================================================================
def new_report(session: Session, command: str, scope: Scope) -> Report:
    return Report(
        session=session.name,
        command=command,
        backend=session.backend.value,
        prime=session.spec.p,
        group_order=session.group.order,
        seed=session.seed,
        scope=scope.value,
    )


def run_session(args: argparse.Namespace) -> Report:
    session = SessionLoader.load(args.spec)
    if args.seed is not None:
        session.seed = args.seed
    runner = CheckRunner(session, jobs=args.jobs, scope=Scope(args.scope) if args.scope else None, only=args.only)
    report = new_report(session, args.command, runner.scope)
    for entry in runner.run(args.command):
        report.add(entry)
    if args.out is not None:
        report.artifacts += write_table(args.out, runner)
    return report.finalize()


def run_demo(args: argparse.Namespace) -> Report:
    """specs/ 의 모든 스펙을 sampled 범위로 실행"""
    specs_dir = args.spec or SPECS_DIR
    paths = sorted(specs_dir.glob("*.json"))
    if not paths:
        raise SpecError(f"스펙이 없습니다: {specs_dir}")
    scope = Scope(args.scope) if args.scope else Scope.SAMPLED
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    report = Report(session="demo", command="demo", seed=seed, scope=scope.value)
    for path in paths:
        session = SessionLoader.load(path)
        if args.seed is not None:
            session.seed = args.seed
        commands = list(session.spec.checks) or list(DEMO_COMMANDS)
        if session.backend == Backend.SMASH and not session.spec.checks:
            commands.append("smash-compare")
        runner = CheckRunner(session, jobs=args.jobs, scope=scope, only=args.only)
        for command in commands:
            if args.only and (args.only.split("/")[0] != command or not runner.jobs_for(command)):
                continue
            for entry in runner.run(command):
                if entry.status != "pass":
                    entry.rerun = f"{command} --spec {path.as_posix()} --seed {session.seed} --only {entry.name}"
                entry.name = f"{session.name}:{entry.name}"
                report.add(entry)
        if args.out is not None:
            report.artifacts += write_table(args.out, runner, prefix=session.name)
        logger.info(f"demo: {session.name} 완료")
    return report.finalize()


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    clear_stats()
    try:
        if args.command == "demo":
            report = run_demo(args)
        else:
            if args.spec is None:
                raise SpecError(f"{args.command} 에는 --spec 이 필요합니다")
            report = run_session(args)
    except (SpecError, ValidationError, json.JSONDecodeError) as e:
        logger.error(f"입력 오류: {e}")
        return EXIT_INPUT
    except EquivariantError as e:
        logger.error(f"입력 데이터 오류: {e}")
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"예상치 못한 오류: {e}\n{traceback.format_exc()}")
        return EXIT_INPUT

    write_report(args.out, report)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
