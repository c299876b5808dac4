"""
CLI (main.py) 테스트

종료 코드: 0 통과, 1 검사 실패, 2 입력 오류
"""
import json

import pytest

from main import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main
from conftest import GOLDEN, SPECS

# λ^{1,t} = 2 → 정규화 조건 위반
BROKEN_SPEC = {
    "name": "broken_c2",
    "p": 5,
    "group": {"preset": "C2"},
    "action": {"n": 1, "lambda": [[[1], [2]], [[1], [1]]]},
    "checks": ["validate"],
}


def _spec(name: str) -> str:
    return str(SPECS / f"{name}.json")


def _report(out) -> dict:
    return json.loads((out / "report.json").read_text(encoding="utf-8"))


@pytest.fixture
def broken_spec(tmp_path):
    path = tmp_path / "specs" / "broken_c2.json"
    path.parent.mkdir()
    path.write_text(json.dumps(BROKEN_SPEC), encoding="utf-8")
    return path


# ============================================================
# 종료 코드
# ============================================================

def test_validate_passes(tmp_path):
    out = tmp_path / "out"
    assert main(["validate", "--spec", _spec("trivial_s3"), "--out", str(out)]) == EXIT_PASS
    report = _report(out)
    assert report["passed"] is True
    assert report["command"] == "validate"
    assert [e["name"] for e in report["entries"]] == ["validate/action"]
    assert (out / "timings.json").is_file()


def test_broken_action_fails(tmp_path, broken_spec):
    out = tmp_path / "out"
    assert main(["validate", "--spec", str(broken_spec), "--out", str(out)]) == EXIT_FAIL
    report = _report(out)
    entry = report["entries"][0]
    assert entry["status"] == "fail"
    assert "normalization" in {f["check"] for f in entry["failures"]}
    assert entry["rerun"] == "validate --seed 0 --only validate/action"


def test_missing_spec_file(tmp_path):
    assert main(["validate", "--spec", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_spec_required(tmp_path):
    assert main(["mackey", "--out", str(tmp_path)]) == EXIT_INPUT


def test_invalid_spec(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 7, "group": {"preset": "C7"}}), encoding="utf-8")
    assert main(["validate", "--spec", str(path)]) == EXIT_INPUT


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", "--spec", str(path)]) == EXIT_INPUT


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["frobnicate", "--spec", _spec("trivial_s3")])


def test_smash_compare_needs_smash_backend(tmp_path):
    assert main(["smash-compare", "--spec", _spec("twisted_c2"), "--out", str(tmp_path)]) == EXIT_INPUT


# ============================================================
# 보고서
# ============================================================

def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["validate", "--spec", _spec("random_c4"), "--out", str(out)]) == EXIT_PASS
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_tables_same_bytes_for_any_job_count(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out, jobs in ((a, "1"), (b, "4")):
        code = main(["tables", "--spec", _spec("pointed_c3_c2"), "--jobs", jobs, "--out", str(out)])
        assert code == EXIT_PASS
    for name in ("report.json", "k0_table.json", "k0_table.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_report_to_stdout(capsys):
    assert main(["validate", "--spec", _spec("twisted_c2")]) == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["session"] == "twisted_c2"
    assert report["prime"] == 5
    assert report["group_order"] == 2


def test_seed_override(tmp_path):
    out = tmp_path / "out"
    assert main(["validate", "--spec", _spec("trivial_s3"), "--seed", "9", "--out", str(out)]) == EXIT_PASS
    assert _report(out)["seed"] == 9


def test_only_runs_one_job(tmp_path):
    out = tmp_path / "out"
    code = main(["mackey", "--spec", _spec("trivial_s3"), "--only", "mackey/H5/K1/L1", "--out", str(out)])
    assert code == EXIT_PASS
    assert [e["name"] for e in _report(out)["entries"]] == ["mackey/H5/K1/L1"]


def test_only_without_match(tmp_path):
    code = main(["mackey", "--spec", _spec("trivial_s3"), "--only", "mackey/H9", "--out", str(tmp_path)])
    assert code == EXIT_INPUT


def test_tables_writes_k0_table(tmp_path):
    out = tmp_path / "out"
    assert main(["tables", "--spec", _spec("twisted_c2"), "--out", str(out)]) == EXIT_PASS
    report = _report(out)
    assert "k0_table.json" in report["artifacts"]
    assert "tables/build" in [e["name"] for e in report["entries"]]
    table = json.loads((out / "k0_table.json").read_text(encoding="utf-8"))
    assert table["prime"] == 5
    assert (out / "k0_table.txt").read_text(encoding="utf-8").startswith("K0 table  p=5")


# ============================================================
# demo
# ============================================================

def test_demo_validate_all_bundled_specs(tmp_path):
    out = tmp_path / "out"
    assert main(["demo", "--only", "validate", "--out", str(out)]) == EXIT_PASS
    report = _report(out)
    sessions = {e["name"].split(":")[0] for e in report["entries"]}
    assert sessions == {"pointed_c3_c2", "random_c4", "smash_s3", "trivial_s3", "twisted_c2"}
    assert report["scope"] == "sampled"


def test_demo_reports_rerun_with_spec_path(tmp_path, broken_spec):
    out = tmp_path / "out"
    assert main(["demo", "--spec", str(broken_spec.parent), "--out", str(out)]) == EXIT_FAIL
    entry = _report(out)["entries"][0]
    assert entry["name"] == "broken_c2:validate/action"
    assert entry["rerun"].startswith("validate --spec ")
    assert entry["rerun"].endswith("--only validate/action")


def test_demo_without_specs(tmp_path):
    assert main(["demo", "--spec", str(tmp_path)]) == EXIT_INPUT


@pytest.fixture(scope="module")
def demo_runs(tmp_path_factory):
    """동봉된 모든 스펙의 전체 demo 를 jobs 1, 4 로 한 번씩"""
    runs = {}
    for jobs in ("1", "4"):
        out = tmp_path_factory.mktemp(f"demo_jobs{jobs}")
        runs[jobs] = (main(["demo", "--jobs", jobs, "--out", str(out)]), out)
    return runs


def test_full_demo_passes(demo_runs):
    for code, out in demo_runs.values():
        report = _report(out)
        assert code == EXIT_PASS, [e["name"] for e in report["entries"] if e["status"] != "pass"]
        assert report["passed"] is True
        families = {e["name"].split(":")[1].split("/")[0] for e in report["entries"]}
        assert families == {"validate", "mackey", "coherence", "adjunction", "tables", "smash-compare"}


def test_full_demo_is_deterministic(demo_runs):
    (_, a), (_, b) = demo_runs["1"], demo_runs["4"]
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    for path in sorted(a.glob("*/k0_table.json")):
        assert path.read_bytes() == (b / path.parent.name / path.name).read_bytes(), path.parent.name


def test_demo_tables_match_golden(demo_runs):
    _, out = demo_runs["1"]
    golden = json.loads((GOLDEN / "k0_summary.json").read_text(encoding="utf-8"))
    for session, expected in golden.items():
        table = json.loads((out / session / "k0_table.json").read_text(encoding="utf-8"))
        ranks = [len(table["simples"][str(s["index"])]) for s in table["subgroups"]]
        assert ranks == expected["ranks"], session
        for h, total in expected.get("fusion_totals", {}).items():
            assert sum(sum(sum(row) for row in plane) for plane in table["fusion"][h]) == total, (session, h)
