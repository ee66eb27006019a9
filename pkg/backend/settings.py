import logging
from functools import lru_cache
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from rich.console import Console
from rich.logging import RichHandler

load_dotenv()  # Load environment variables from .env file

stderr_console = Console(stderr=True)


class GeometrySettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="GEOM_", extra="ignore")

    q_max: int = Field(default=16, ge=2)
    workers: Optional[int] = None  # None means every core
    witness_cap: int = Field(default=100, ge=0)
    chunk_size: int = Field(default=4096, ge=1)
    flag_q_max: int = Field(default=4, ge=2)
    progress: bool = True
    log_level: str = "INFO"
    cors_origins: List[str] = ["http://localhost:5173"]

    @property
    def n_jobs(self) -> int:
        return -1 if self.workers is None else self.workers


@lru_cache(maxsize=1)
def get_settings() -> GeometrySettings:
    return GeometrySettings()


def configure_logging(level: Optional[str] = None) -> None:
    """Route every logger to a rich handler on stderr."""
    level = level or get_settings().log_level
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=stderr_console, show_path=False)],
        force=True,
    )
