"""adictrop job configuration."""

from adictrop.models.config import JobConfig, load_config

__all__ = ["JobConfig", "load_config"]
