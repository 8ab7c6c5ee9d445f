"""
설정 관리 모듈
"""
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """시뮬레이터 설정"""

    model_config = SettingsConfigDict(
        env_prefix="DS3_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    environment: str = "development"

    # 로깅 설정
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # 상태 벡터 설정
    amplitude_tolerance: float = 1e-14
    completeness_tolerance: float = 1e-9
    max_edges: int = 20  # 3 bits per edge in an int64 key

    # 실험 설정
    default_seed: int = 2024
    default_trials: int = 10_000
    report_wall_time: bool = False


# 전역 설정 인스턴스
settings = Settings()
