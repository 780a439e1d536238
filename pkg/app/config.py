# app/config.py
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from app.errors import InputError

load_dotenv()


class Settings(BaseModel):
    max_word_length: int = Field(12, ge=1, description="Bound for brute-force word oracles")
    max_rank: int = Field(8, ge=1, description="Rank bound for oracles and the verify suite")
    max_peaks: int = Field(8, ge=1, description="Bound on peaks for ordering enumeration")
    sample_count: int = Field(1000, ge=0, description="Samples used by the Mori-dream cover check")
    seed: int = Field(0, ge=0)
    log_level: str = "INFO"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got '{raw}'")


def get_settings(**overrides) -> Settings:
    """
    Build settings from the environment at call time.
    Keyword overrides whose value is None are ignored.
    """
    values = {
        "max_word_length": _env_int("QFACT_MAX_WORD_LENGTH", 12),
        "max_rank": _env_int("QFACT_MAX_RANK", 8),
        "max_peaks": _env_int("QFACT_MAX_PEAKS", 8),
        "sample_count": _env_int("QFACT_SAMPLES", 1000),
        "seed": _env_int("QFACT_SEED", 0),
        "log_level": os.getenv("QFACT_LOG_LEVEL", "INFO"),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Settings(**values)
    except ValidationError as exc:
        raise InputError(f"invalid settings: {exc.errors()[0]['msg']}")
