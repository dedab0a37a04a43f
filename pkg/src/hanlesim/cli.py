"""Command-line interface.

Subcommands:

    scan CONFIG    run a configured static-field scan and write the CSV
    verify         compare the perturbative solver against time integration
    presets        list the built-in parameter presets
    serve          run the HTTP service

`scan`, `verify` and `presets` execute in-process by default; with
--server URL they become thin clients of a running service and produce
byte-identical output.  Exit codes: 0 success, 1 failed verification,
2 configuration error (message names the field), 3 solver/runtime error
(message names the field point).  Everything is deterministic; the
HANLE_SIM_SEEDLESS environment variable is accepted and ignored because
there is no randomness to seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import load_config, parse_config
from .errors import ConfigError, SolverError
from .presets import PRESETS
from .runner import format_csv, run_scan, verify_checks, write_csv

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hanlesim",
        description="Hanle coherence-resonance simulator for degenerate two-level atoms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="run a scan from a JSON config file")
    scan.add_argument("config", help="path to the JSON scan configuration")
    scan.add_argument("--output", help="override the CSV output path")
    scan.add_argument("--jobs", type=int, default=1, help="parallel scan points (default 1)")
    scan.add_argument(
        "--doppler",
        choices=("on", "off"),
        help="override the config's detuning-averaging switch",
    )
    scan.add_argument("--server", help="delegate the computation to a running service")

    verify = sub.add_parser("verify", help="run the built-in consistency checks")
    verify.add_argument("--server", help="delegate to a running service")

    presets = sub.add_parser("presets", help="list built-in presets")
    presets.add_argument("--json", action="store_true", help="machine-readable output")
    presets.add_argument("--server", help="list presets from a running service")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _print_checks(checks: list[dict]) -> bool:
    width = max(len(c["name"]) for c in checks)
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"[{status}] {c['name']:<{width}}  {c['detail']}")
    return all(c["passed"] for c in checks)


def _cmd_scan(args) -> int:
    if args.jobs < 1:
        print("config error: field 'jobs': must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    doppler_override = None if args.doppler is None else args.doppler == "on"
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    output = args.output or config.output

    if args.server:
        import httpx

        body = config.model_dump(mode="json")
        if doppler_override is not None:
            body["doppler"]["enabled"] = doppler_override
        try:
            resp = httpx.post(
                f"{args.server.rstrip('/')}/scan",
                json=body,
                params={"jobs": args.jobs},
                timeout=600.0,
            )
        except httpx.HTTPError as exc:
            print(f"solver error: cannot reach server: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        if resp.status_code == 422:
            print(f"config error: {resp.json().get('detail')}", file=sys.stderr)
            return EXIT_CONFIG
        if resp.status_code != 200:
            print(f"solver error: {resp.json().get('detail', resp.text)}", file=sys.stderr)
            return EXIT_SOLVER
        csv_text = resp.json()["csv"]
    else:
        try:
            points = run_scan(config, jobs=args.jobs, doppler_override=doppler_override)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except SolverError as exc:
            print(f"solver error: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        csv_text = format_csv(points)

    write_csv(output, csv_text)
    print(f"wrote {output} ({csv_text.count(chr(10)) - 1} points)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.server:
        import httpx

        try:
            resp = httpx.post(f"{args.server.rstrip('/')}/verify", timeout=600.0)
            resp.raise_for_status()
        except httpx.HTTPError as exc:
            print(f"solver error: cannot reach server: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        checks = resp.json()["checks"]
    else:
        checks = [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in verify_checks()
        ]
    return EXIT_OK if _print_checks(checks) else EXIT_CHECK_FAILED


def _cmd_presets(args) -> int:
    if args.server:
        import httpx

        try:
            resp = httpx.get(f"{args.server.rstrip('/')}/presets", timeout=60.0)
            resp.raise_for_status()
        except httpx.HTTPError as exc:
            print(f"solver error: cannot reach server: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        rows = resp.json()
    else:
        rows = [
            {
                "name": p.name,
                "description": p.description,
                "gamma": p.params.gamma,
                "gamma_coll": p.params.gamma_coll,
                "branching": p.params.branching,
                "mod_freq": p.params.mod_freq,
                "weight": p.weight,
            }
            for p in (PRESETS[name] for name in sorted(PRESETS))
        ]
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    for row in rows:
        print(
            f"{row['name']:<28} gamma={row['gamma']:g} gamma_coll={row['gamma_coll']:g} "
            f"b={row['branching']:.6g} mod_freq={row['mod_freq']:g} weight={row['weight']:g}"
        )
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "scan":
        return _cmd_scan(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "presets":
        return _cmd_presets(args)
    return _cmd_serve(args)


def console_main() -> None:
    raise SystemExit(main())
