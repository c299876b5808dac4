from pydantic import BaseSettings


class Settings(BaseSettings):
    """엔진 설정 (.env 또는 환경변수로 덮어쓰기 가능)"""
    # 군/체 상한
    MAX_GROUP_ORDER: int = 48
    PRIME_LIMIT: int = 46337  # p² 누적합이 int64 를 넘지 않는 상한
    D_MAX: int = 4  # 확률적 가역성 판정에 쓰는 차원 상한, p > D_MAX 필요

    # 난수/재시도
    DEFAULT_SEED: int = 0
    ISO_TRIALS: int = 8
    SPLIT_RETRY_BUDGET: int = 64

    # 검증 범위
    SAMPLE_SIZE: int = 12  # --scope sampled 에서 검사 종류별 튜플 수
    DEBUG_VALIDATE: bool = False  # True 면 모든 함자 출력의 등변 조건을 재검증
    MAX_FAILURES: int = 5

    # 로깅
    LOG_LEVEL: str = "INFO"
    SLOW_CHECK_SECONDS: float = 1.0

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "allow"  # 환경변수에서 추가 필드 허용


settings = Settings()
