"""Pydantic request/response models for the service endpoints."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

from ..config import DEFAULT_CLOSURE_CAP, DEFAULT_MAX_QUBITS


class ConfigModel(BaseModel):
    max_qubits: int = DEFAULT_MAX_QUBITS
    closure_cap: int = DEFAULT_CLOSURE_CAP
    output: str = "json"
    seed: int = 0
    threads: int = 1


class PhaseModel(BaseModel):
    num: int
    log2_den: int = Field(ge=0)


class GateModel(BaseModel):
    name: str
    qubits: Optional[list[int]] = None
    controls: Optional[list[int]] = None
    targets: Optional[list[int]] = None
    angle: Optional[PhaseModel | str] = None

    def to_data(self) -> dict:
        out: dict[str, Any] = {"name": self.name}
        if self.qubits is not None:
            out["qubits"] = self.qubits
        if self.controls is not None:
            out["controls"] = self.controls
        if self.targets is not None:
            out["targets"] = self.targets
        if self.angle is not None:
            out["angle"] = self.angle if isinstance(self.angle, str) else self.angle.model_dump()
        return out


class CircuitModel(BaseModel):
    qubits: int
    gates: list[GateModel]

    def to_data(self) -> dict:
        return {"qubits": self.qubits, "gates": [g.to_data() for g in self.gates]}


class LevelRequest(BaseModel):
    circuit: CircuitModel
    config: ConfigModel = ConfigModel()


class DiagonalGateModel(BaseModel):
    n: int
    phases: list[PhaseModel | str | int]

    def to_data(self) -> dict:
        return {
            "n": self.n,
            "phases": [p.model_dump() if isinstance(p, PhaseModel) else p for p in self.phases],
        }


class DiagRequest(BaseModel):
    gate: DiagonalGateModel
    config: ConfigModel = ConfigModel()


class GroupRequest(BaseModel):
    data: dict
    subcommand: str = ""  # optional; the URL path segment is used when empty
    config: ConfigModel = ConfigModel()


class EncodeRequest(BaseModel):
    stabilizers: list[str]
    config: ConfigModel = ConfigModel()


class CtRequest(BaseModel):
    circuit: CircuitModel
    mode: str = "certify"
    config: ConfigModel = ConfigModel()


class CountDkRequest(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    verify: bool = False
    config: ConfigModel = ConfigModel()


class VerifyIdentitiesRequest(BaseModel):
    config: ConfigModel = ConfigModel()


class AnalysisResponse(BaseModel):
    command: str
    config: dict
    input_sha256: str
    result: dict
