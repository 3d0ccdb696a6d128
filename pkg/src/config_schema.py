import logging
import os
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator
from typing_extensions import TypedDict

from src.errors import UsageError


class SessionConfigSchema(TypedDict):
    # world: src.world.World, typed loosely to keep the graph schema import-light
    world: Any
    rng: Any
    supi: str
    session_label: str


# Settings keys as they appear in a config file or the environment.
SETTING_KEYS = ("KEM", "SESSIONS", "MODE", "SEED", "OUT", "ITERS", "LOG_LEVEL")
ENV_PREFIX = "AKA_"


class RunSettings(BaseModel):
    kem: str = "test"
    sessions: int = Field(default=1, ge=0)
    mode: Literal["supi", "guti", "mixed"] = "supi"
    seed: Optional[int] = None
    out: Optional[Path] = None
    iters: int = Field(default=100, ge=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level {value}")
        return value

    @property
    def kem_names(self) -> list[str]:
        return [name.strip() for name in self.kem.split(",") if name.strip()]


def _lowercase(values: Mapping[str, Optional[str]]) -> dict[str, str]:
    return {key.lower(): value for key, value in values.items() if key in SETTING_KEYS and value not in (None, "")}


def load_settings(
    flags: Mapping[str, Any],
    config_file: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunSettings:
    """Merges settings with precedence flags > config file > environment > defaults.

    Environment keys carry the AKA_ prefix (AKA_KEM, AKA_SEED, ...); config
    files are dotenv files with the bare keys.
    """
    environ = os.environ if environ is None else environ
    merged: dict[str, Any] = _lowercase(
        {key[len(ENV_PREFIX) :]: value for key, value in environ.items() if key.startswith(ENV_PREFIX)}
    )
    if config_file is not None:
        if not Path(config_file).is_file():
            raise UsageError(f"config file {config_file} does not exist")
        merged.update(_lowercase(dotenv_values(config_file)))
    merged.update({key: value for key, value in flags.items() if value is not None})
    try:
        return RunSettings.model_validate(merged)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise UsageError(f"invalid setting {field}: {first['msg']}") from e
