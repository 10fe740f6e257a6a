"""
Run configuration for batch commands.

A RunConfig pins everything that influences the bytes a command writes:
oversampling factor, enumeration cap, sampling seed and output format.
Identical RunConfig values produce identical output files.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from .settings import settings


class OutputFormat(str, Enum):
    """Output encodings understood by the CLI."""
    JSONL = "jsonl"
    CSV = "csv"


class RunConfig(BaseModel):
    """Options shared by the generate / verify / pmepr / encode commands."""

    command: str = Field(
        default="generate",
        description="Subcommand this configuration drives"
    )
    oversample: int = Field(
        default=settings.DEFAULT_OVERSAMPLE,
        ge=1,
        description="Envelope samples per subcarrier spacing (L)"
    )
    cap_log2: int = Field(
        default=settings.ENUMERATION_CAP_LOG2,
        ge=0,
        le=62,
        description="Refuse exhaustive enumeration of codes with more than 2^cap words"
    )
    sample: Optional[int] = Field(
        default=None,
        ge=1,
        description="Draw this many codewords instead of enumerating"
    )
    seed: Optional[int] = Field(
        default=None,
        ge=0,
        lt=2**64,
        description="64-bit seed for sampling and randomized verification"
    )
    output_format: OutputFormat = Field(
        default=OutputFormat.JSONL,
        description="jsonl for per-word lines, csv for summaries"
    )
    out: Optional[str] = Field(
        default=None,
        description="Output path; stdout when omitted"
    )
    workers: int = Field(
        default=1,
        ge=1,
        le=settings.MAX_WORKERS,
        description="Worker threads for batch PMEPR measurement"
    )
    batch_size: int = Field(
        default=settings.ENUMERATION_BATCH_SIZE,
        ge=1,
        description="Codewords per enumeration batch"
    )

    @model_validator(mode="after")
    def _sampling_needs_seed(self) -> "RunConfig":
        if self.sample is not None and self.seed is None:
            raise ValueError("sampling mode requires --seed")
        return self

    @property
    def sampling(self) -> bool:
        return self.sample is not None


# Fast smoke-test runs
QUICK_RUN = RunConfig(oversample=16, cap_log2=16)

# Exhaustive checks with a finer envelope grid
THOROUGH_RUN = RunConfig(oversample=256, cap_log2=28)


def get_default_run_config() -> RunConfig:
    """Get the default run configuration."""
    return RunConfig()


def get_quick_run_config() -> RunConfig:
    """Get a coarse configuration for smoke tests."""
    return QUICK_RUN.model_copy()


def get_thorough_run_config() -> RunConfig:
    """Get a fine-grained configuration for long verification runs."""
    return THOROUGH_RUN.model_copy()


PRESETS = {
    "quick": get_quick_run_config,
    "default": get_default_run_config,
    "thorough": get_thorough_run_config,
}
