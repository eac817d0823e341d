"""Run configuration shared by the CLI and the service."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_MAX_QUBITS = 5
DEFAULT_CLOSURE_CAP = 10**7


@dataclass(frozen=True)
class RunConfig:
    max_qubits: int = DEFAULT_MAX_QUBITS
    closure_cap: int = DEFAULT_CLOSURE_CAP
    output: str = "json"  # "json" | "text"
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.max_qubits < 1 or self.closure_cap < 1 or self.threads < 1:
            raise ValueError("caps and thread counts must be positive")
        if self.output not in ("json", "text"):
            raise ValueError(f"unknown output mode {self.output!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        threads = overrides.pop("threads", None)
        if threads is None:
            threads = int(os.environ.get("CHX_THREADS", "1"))
        return cls(threads=threads, **{k: v for k, v in overrides.items() if v is not None})

    def to_json(self) -> dict:
        return {
            "max_qubits": self.max_qubits,
            "closure_cap": self.closure_cap,
            "output": self.output,
            "seed": self.seed,
            "threads": self.threads,
        }
