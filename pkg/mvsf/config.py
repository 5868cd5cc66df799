from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    THREADS: int | None = None
    SEED: int = 1
    SAMPLES: int = 200_000
    BATCH_SIZE: int = 10_000
    QUAD_NODES: int = 64
    RADIAL_TRUNCATION: float = 40.0
    K_MAX: int = 25
    LOG_LEVEL: str = "WARNING"

    model_config = {"env_prefix": "MVSF_", "env_file": ".env", "env_file_encoding": "utf-8"}


settings = Settings()
