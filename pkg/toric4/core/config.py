from typing import Literal

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    APP_NAME: str = "toric4"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"
    DEFAULT_FORMAT: Literal["json", "text"] = "json"

    # fuzz defaults, overridable per run from the CLI
    FUZZ_SEED: int = 20240611
    FUZZ_COUNT: int = 200
    FUZZ_MAX_ENTRY: int = 9
    FUZZ_MAX_N: int = 6

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "TORIC4_"
        extra = "ignore"


settings = Settings()
