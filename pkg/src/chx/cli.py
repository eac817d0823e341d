"""Command-line client for the analysis service.

Runs the shared handlers in process by default so results are reproducible
offline; pass --server to send the same request to a running instance.
Exit codes: 0 decided, 1 input error, 2 resource abort (undecided).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .config import RunConfig
from .phase import NonDyadicAngleError
from .circuits import CircuitError
from .hierarchy import ClosureCapExceeded
from .service import handlers

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_ABORTED = 2


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--max-qubits", type=int, default=None)
    p.add_argument("--closure-cap", type=int, default=None)
    p.add_argument("--output", choices=("json", "text"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--server", default=None, help="base URL of a running service")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chx", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("level", help="hierarchy level of a Clifford/monomial circuit")
    sp.add_argument("circuit_file")
    _add_config_flags(sp)

    sp = sub.add_parser("diag", help="classify a diagonal gate")
    sp.add_argument("gate_file")
    _add_config_flags(sp)

    sp = sub.add_parser("group", help="group closure and constraint checks")
    sp.add_argument("subcommand", choices=("closure", "check-sc", "check-gsc", "cosets", "recipe"))
    sp.add_argument("generators_file")
    _add_config_flags(sp)

    sp = sub.add_parser("encode", help="synthesize a stabilizer-to-Z encoding circuit")
    sp.add_argument("stabilizers_file")
    _add_config_flags(sp)

    sp = sub.add_parser("ct", help="time slices, control/target mismatch, level certificate")
    sp.add_argument("mode", choices=("slices", "mismatch", "certify"))
    sp.add_argument("circuit_file")
    _add_config_flags(sp)

    sp = sub.add_parser("count-dk", help="order of the level-k diagonal group")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="cross-check by closure enumeration")
    _add_config_flags(sp)

    sp = sub.add_parser("verify-identities", help="run the built-in exact identity suite")
    _add_config_flags(sp)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return p


def _config_from_args(args) -> RunConfig:
    return RunConfig.from_env(
        max_qubits=args.max_qubits,
        closure_cap=args.closure_cap,
        output=args.output,
        seed=args.seed,
        threads=args.threads,
    )


def _load_json(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    return json.loads(raw), hashlib.sha256(raw).hexdigest()


def _load_stabilizers(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    text = raw.decode()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        data = json.loads(text)
        if isinstance(data, list):
            data = {"stabilizers": data}
    else:
        data = {"stabilizers": [line.strip() for line in text.splitlines() if line.strip()]}
    return data, digest


def _render_text(report: dict, out) -> None:
    print(f"command: {report['command']}", file=out)
    print(f"input_sha256: {report['input_sha256']}", file=out)
    cfg = report["config"]
    print("config: " + ", ".join(f"{k}={cfg[k]}" for k in sorted(cfg)), file=out)
    for line in json.dumps(report["result"], indent=2, sort_keys=True).splitlines():
        print(line, file=out)


def _emit(command: str, config: RunConfig, digest: str, result: dict, out) -> int:
    report = {
        "command": command,
        "config": config.to_json(),
        "input_sha256": digest,
        "result": result,
    }
    if config.output == "text":
        _render_text(report, out)
    else:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")), file=out)
    if result.get("status") == "aborted":
        return EXIT_ABORTED
    return EXIT_OK


def _params_digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _remote(server: str, path: str, payload: dict, config: RunConfig, out) -> int:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if resp.status_code == 422:
        print(f"error: {resp.json().get('detail', resp.text)}", file=sys.stderr)
        return EXIT_INPUT
    if resp.status_code >= 400:
        print(f"error: server returned {resp.status_code}: {resp.text}", file=sys.stderr)
        return EXIT_ABORTED
    report = resp.json()
    if config.output == "text":
        _render_text(report, out)
    else:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")), file=out)
    if report["result"].get("status") == "aborted":
        return EXIT_ABORTED
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        if args.command == "level":
            data, digest = _load_json(args.circuit_file)
            if args.server:
                return _remote(args.server, "/level", {"circuit": data, "config": config.to_json()}, config, out)
            result = handlers.analyze_level(data, config)
            return _emit("level", config, digest, result, out)

        if args.command == "diag":
            data, digest = _load_json(args.gate_file)
            if args.server:
                return _remote(args.server, "/diag", {"gate": data, "config": config.to_json()}, config, out)
            result = handlers.analyze_diag(data, config)
            return _emit("diag", config, digest, result, out)

        if args.command == "group":
            data, digest = _load_json(args.generators_file)
            if args.server:
                payload = {"subcommand": args.subcommand, "data": data, "config": config.to_json()}
                return _remote(args.server, f"/group/{args.subcommand}", payload, config, out)
            result = handlers.analyze_group(data, args.subcommand, config)
            return _emit(f"group {args.subcommand}", config, digest, result, out)

        if args.command == "encode":
            data, digest = _load_stabilizers(args.stabilizers_file)
            if args.server:
                payload = {"stabilizers": data["stabilizers"], "config": config.to_json()}
                return _remote(args.server, "/encode", payload, config, out)
            result = handlers.analyze_encode(data, config)
            return _emit("encode", config, digest, result, out)

        if args.command == "ct":
            data, digest = _load_json(args.circuit_file)
            if args.server:
                payload = {"circuit": data, "mode": args.mode, "config": config.to_json()}
                return _remote(args.server, "/ct", payload, config, out)
            result = handlers.analyze_ct(data, args.mode, config)
            return _emit(f"ct {args.mode}", config, digest, result, out)

        if args.command == "count-dk":
            payload = {"n": args.n, "k": args.k, "verify": args.verify}
            digest = _params_digest(payload)
            if args.server:
                payload["config"] = config.to_json()
                return _remote(args.server, "/count-dk", payload, config, out)
            result = handlers.analyze_count_dk(args.n, args.k, args.verify, config)
            return _emit("count-dk", config, digest, result, out)

        if args.command == "verify-identities":
            digest = _params_digest({})
            if args.server:
                return _remote(args.server, "/verify-identities", {"config": config.to_json()}, config, out)
            result = handlers.analyze_verify_identities(config)
            return _emit("verify-identities", config, digest, result, out)

    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except (CircuitError, NonDyadicAngleError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClosureCapExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORTED

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
