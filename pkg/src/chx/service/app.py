"""FastAPI service wrapping the analysis handlers."""

from __future__ import annotations

import hashlib
import json

from fastapi import FastAPI, HTTPException

from ..config import RunConfig
from ..phase import NonDyadicAngleError
from ..circuits import CircuitError
from ..hierarchy import ClosureCapExceeded
from . import handlers
from .models import (
    AnalysisResponse,
    ConfigModel,
    CountDkRequest,
    CtRequest,
    DiagRequest,
    EncodeRequest,
    GroupRequest,
    LevelRequest,
    VerifyIdentitiesRequest,
)

app = FastAPI(
    title="chx",
    description="Exact Clifford-hierarchy analysis: levels, diagonal and "
    "permutation classification, encoding circuits, group checks.",
)


def _config(model: ConfigModel) -> RunConfig:
    return RunConfig(
        max_qubits=model.max_qubits,
        closure_cap=model.closure_cap,
        output=model.output,
        seed=model.seed,
        threads=model.threads,
    )


def content_hash(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _respond(command: str, config: RunConfig, payload, result: dict) -> AnalysisResponse:
    return AnalysisResponse(
        command=command,
        config=config.to_json(),
        input_sha256=content_hash(payload),
        result=result,
    )


def _run(command: str, config: RunConfig, payload, fn) -> AnalysisResponse:
    try:
        result = fn()
    except (CircuitError, NonDyadicAngleError, ValueError, KeyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except ClosureCapExceeded as exc:
        raise HTTPException(status_code=507, detail=str(exc)) from exc
    return _respond(command, config, payload, result)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/level", response_model=AnalysisResponse)
def level(req: LevelRequest):
    config = _config(req.config)
    data = req.circuit.to_data()
    return _run("level", config, data, lambda: handlers.analyze_level(data, config))


@app.post("/diag", response_model=AnalysisResponse)
def diag(req: DiagRequest):
    config = _config(req.config)
    data = req.gate.to_data()
    return _run("diag", config, data, lambda: handlers.analyze_diag(data, config))


@app.post("/group/{subcommand}", response_model=AnalysisResponse)
def group(subcommand: str, req: GroupRequest):
    config = _config(req.config)
    sub = req.subcommand or subcommand
    return _run(
        f"group {sub}", config, req.data, lambda: handlers.analyze_group(req.data, sub, config)
    )


@app.post("/encode", response_model=AnalysisResponse)
def encode(req: EncodeRequest):
    config = _config(req.config)
    data = {"stabilizers": req.stabilizers}
    return _run("encode", config, data, lambda: handlers.analyze_encode(data, config))


@app.post("/ct", response_model=AnalysisResponse)
def ct(req: CtRequest):
    config = _config(req.config)
    data = req.circuit.to_data()
    return _run(
        f"ct {req.mode}", config, data, lambda: handlers.analyze_ct(data, req.mode, config)
    )


@app.post("/count-dk", response_model=AnalysisResponse)
def count_dk(req: CountDkRequest):
    config = _config(req.config)
    payload = {"n": req.n, "k": req.k, "verify": req.verify}
    return _run(
        "count-dk", config, payload,
        lambda: handlers.analyze_count_dk(req.n, req.k, req.verify, config),
    )


@app.post("/verify-identities", response_model=AnalysisResponse)
def verify_identities(req: VerifyIdentitiesRequest):
    config = _config(req.config)
    return _run(
        "verify-identities", config, {}, lambda: handlers.analyze_verify_identities(config)
    )
