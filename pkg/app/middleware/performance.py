"""
검사 성능 측정
각 검사 작업의 실행 시간을 계열별로 모으고 timings.json 용 요약을 제공합니다.
"""
import copy
import logging
import threading
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List

from app.config import settings

logger = logging.getLogger(__name__)

# 성능 통계 저장
performance_stats: Dict[str, List[Dict]] = {
    "checks": [],
    "families": {},
}

# 최근 검사 저장 (최대 200개)
MAX_CHECKS = 200

_lock = threading.Lock()


def _record(name: str, elapsed: float, error: bool):
    family = name.split("/")[0]
    check_info = {
        "name": name,
        "family": family,
        "time": round(elapsed, 3),
        "error": error,
    }
    with _lock:
        performance_stats["checks"].append(check_info)
        if len(performance_stats["checks"]) > MAX_CHECKS:
            performance_stats["checks"] = performance_stats["checks"][-MAX_CHECKS:]

        if family not in performance_stats["families"]:
            performance_stats["families"][family] = {
                "count": 0,
                "total_time": 0,
                "min_time": float("inf"),
                "max_time": 0,
                "avg_time": 0,
                "errors": 0,
                "recent_times": [],
            }
        stats = performance_stats["families"][family]
        stats["count"] += 1
        stats["total_time"] += elapsed
        stats["min_time"] = min(stats["min_time"], elapsed)
        stats["max_time"] = max(stats["max_time"], elapsed)
        stats["avg_time"] = stats["total_time"] / stats["count"]
        if error:
            stats["errors"] += 1

        # 최근 10개 시간만 유지
        stats["recent_times"].append(round(elapsed, 3))
        if len(stats["recent_times"]) > 10:
            stats["recent_times"] = stats["recent_times"][-10:]


@contextmanager
def measure(name: str) -> Iterator[None]:
    """
    검사 작업 하나의 시간 측정

    Args:
        name: 작업 이름 ("mackey/H3/K1/L2" 처럼 첫 마디가 계열)
    """
    start_time = time.perf_counter()
    try:
        yield
    except Exception as e:
        elapsed = time.perf_counter() - start_time
        _record(name, elapsed, error=True)
        logger.error(f"❌ 검사 중 에러: {name} - {elapsed:.3f}초 - {str(e)}")
        raise
    elapsed = time.perf_counter() - start_time
    _record(name, elapsed, error=False)

    slow = settings.SLOW_CHECK_SECONDS
    if elapsed >= slow:
        logger.warning(f"🐌 느린 검사: {name} - {elapsed:.3f}초")
    elif elapsed >= slow / 2:
        logger.info(f"⏱️  검사: {name} - {elapsed:.3f}초")


def get_performance_stats() -> Dict:
    """성능 통계 반환 (잠금 아래 복사본으로 계산)"""
    with _lock:
        snapshot = copy.deepcopy(performance_stats)

    family_stats = {}
    for family, stats in snapshot["families"].items():
        family_stats[family] = {
            "count": stats["count"],
            "total_time": round(stats["total_time"], 3),
            "avg_time": round(stats["avg_time"], 3),
            "min_time": round(stats["min_time"], 3),
            "max_time": round(stats["max_time"], 3),
            "errors": stats["errors"],
            "recent_times": stats["recent_times"],
        }

    slow_checks = [c for c in snapshot["checks"] if c["time"] >= settings.SLOW_CHECK_SECONDS]
    all_times = [c["time"] for c in snapshot["checks"]]

    return {
        "total_checks": len(all_times),
        "average_time": round(sum(all_times) / len(all_times), 3) if all_times else 0,
        "max_time": round(max(all_times), 3) if all_times else 0,
        "families": family_stats,
        "slow_checks": slow_checks[-10:],
    }


def clear_stats():
    """통계 초기화"""
    global performance_stats
    with _lock:
        performance_stats = {
            "checks": [],
            "families": {},
        }
