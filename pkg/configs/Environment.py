from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings


class EnvironmentSettings(BaseSettings):
    DEBUG: bool = False

    DATA_DIR: Path = Path("data")

    QMAX: int = 64
    SEED: int = 0
    WORKERS: int = 4

    DIVISOR_LIMIT: int = 10**7
    ORDER_LIMIT: int = 10**7
    DEGREE_LIMIT: int = 10**4
    COSET_INDEX_LIMIT: int = 10**4

    SUBGROUP_ATTEMPTS: int = 5000
    ISOMORPHISM_NODE_BUDGET: int = 5_000_000

    EXPECTED_DESIGN_CLASSES: int = 8

    class Config:
        env_file = "configs/.env"
        env_file_encoding = "utf-8"


@lru_cache
def get_environment_variables() -> EnvironmentSettings:
    return EnvironmentSettings()
