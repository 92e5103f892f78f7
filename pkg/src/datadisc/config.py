"""Run configuration shared by the CLI commands."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .groebner import KernelLimits, limits_for

ENV_SEED = "DD_SEED"


def _default_jobs() -> int:
    return os.cpu_count() or 1


@dataclass
class RunConfig:
    """Reproducibility contract: the same config and model produce
    byte-identical output, regardless of the parallelism level."""

    seed: int = 42
    strategy: str = "S1"
    pivot: str | None = None
    time_budget_s: float = 600.0
    max_pairs: int = 200_000
    output_path: Path | None = None
    format: str = "text"  # text | json
    jobs: int = field(default_factory=_default_jobs)
    timings: bool = False

    def __post_init__(self):
        env = os.environ.get(ENV_SEED)
        if env is not None:
            self.seed = int(env)

    def limits(self) -> KernelLimits:
        return limits_for(max_pairs=self.max_pairs, seconds=self.time_budget_s)
