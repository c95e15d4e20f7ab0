"""Job configuration for adictrop runs."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from adictrop.algebra.field import FieldProfile, ResidueField
from adictrop.errors import ConfigError, FieldProfileError

logger = logging.getLogger(__name__)

SEED_ENV = "ADICTROP_SEED"

OutputFormat = Literal["json", "dot", "svg", "text"]


class JobConfig(BaseModel):
    """Configuration for one adictrop job.

    Attributes:
        field: Residue field descriptor, "Q" or "F<p>"
        gamma: Denominator d of the value group (1/d)Z
        uniformizer: Symbol printed for an element of valuation 1
        inputs: Input file paths (complexes, cones)
        output_format: json, dot, svg or text
        output_dir: Directory for written artifacts; stdout only when unset
        seed: Seed for sampled certificates and oracle suites
        workers: Threads used for per-cell work
        degree_bound: Largest relation degree searched in chart presentations
        assume_complete: Caller's completeness assertion for complexes in dimension 3
    """

    model_config = ConfigDict(extra="forbid")

    field: str = "Q"
    gamma: int = Field(default=1, ge=1)
    uniformizer: str = "t"
    inputs: list[str] = Field(default_factory=list)
    output_format: OutputFormat = "json"
    output_dir: Optional[str] = None
    seed: int = 0
    workers: int = Field(default=1, ge=1)
    degree_bound: int = Field(default=2, ge=2)
    assume_complete: bool = False

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: str) -> str:
        try:
            return ResidueField.parse(value).descriptor
        except FieldProfileError as exc:
            raise ValueError(str(exc)) from None

    @field_validator("uniformizer")
    @classmethod
    def _identifier(cls, value: str) -> str:
        if not value.isidentifier():
            raise ValueError(f"uniformizer symbol {value!r} is not an identifier")
        return value

    def field_profile(self) -> FieldProfile:
        return FieldProfile.from_descriptor(self.field, self.gamma, self.uniformizer)

    @classmethod
    def from_file(cls, path: str) -> "JobConfig":
        """Load a JSON job file.

        Raises:
            FileNotFoundError: If the file does not exist
            ConfigError: If the file is not a JSON object
            ValidationError: If a value is invalid or a key is unknown
        """
        text = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc.msg} at line {exc.lineno}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.model_validate(data)

    def merged(self, **overrides: Any) -> "JobConfig":
        """A copy with the non-None overrides applied and validated again."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return JobConfig.model_validate(data)

    def with_environment(self) -> "JobConfig":
        """Apply ADICTROP_SEED, which wins over every other source."""
        raw = os.environ.get(SEED_ENV)
        if raw is None:
            return self
        try:
            seed = int(raw)
        except ValueError:
            raise ConfigError(f"{SEED_ENV}={raw!r} is not an integer") from None
        logger.debug(f"Seed {seed} taken from {SEED_ENV}")
        return self.merged(seed=seed)


def load_config(path: Optional[str] = None, **overrides: Any) -> JobConfig:
    """Defaults, then the job file, then overrides, then the environment.

    Raises:
        ConfigError: If the job file or ADICTROP_SEED cannot be read
        ValidationError: If the merged values are invalid
    """
    base = JobConfig.from_file(path) if path else JobConfig()
    return base.merged(**overrides).with_environment()
