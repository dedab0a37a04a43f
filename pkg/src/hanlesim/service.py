"""HTTP service exposing scans, presets and self-verification.

The scan request body is the same pydantic model as the on-disk config
file, and the response carries both structured points and the exact CSV
text the CLI would write, so a remote scan is byte-identical to a local
one.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .config import ScanConfig
from .errors import ConfigError, SolverError
from .presets import PRESETS
from .runner import format_csv, run_scan, verify_checks

MAX_JOBS = 16


class ScanPointModel(BaseModel):
    b0_larmor: float
    lambda_static: float
    lambda_inphase: float
    lambda_quadrature: float


class ScanResponse(BaseModel):
    points: list[ScanPointModel]
    csv: str


class PresetModel(BaseModel):
    name: str
    description: str
    fg: float
    fe: float
    gg: float
    ge: float
    rabi: float
    gamma: float
    gamma_coll: float
    branching: float
    mod_freq: float
    b1: float
    weight: float


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str = Field(default=__version__)


def _preset_model(name: str) -> PresetModel:
    preset = PRESETS[name]
    p = preset.params
    return PresetModel(
        name=preset.name,
        description=preset.description,
        fg=p.state.fg,
        fe=p.state.fe,
        gg=p.state.gg,
        ge=p.state.ge,
        rabi=p.rabi,
        gamma=p.gamma,
        gamma_coll=p.gamma_coll,
        branching=p.branching,
        mod_freq=p.mod_freq,
        b1=p.b1,
        weight=preset.weight,
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="hanlesim",
        version=__version__,
        description=(
            "Coherence-resonance simulator for Zeeman-degenerate two-level "
            "atoms: static Hanle spectra and field-modulation lock-in signals."
        ),
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse()

    @app.get("/presets", response_model=list[PresetModel])
    def presets() -> list[PresetModel]:
        return [_preset_model(name) for name in sorted(PRESETS)]

    @app.get("/config-schema")
    def config_schema() -> dict:
        return ScanConfig.model_json_schema()

    @app.post("/scan", response_model=ScanResponse)
    def scan(config: ScanConfig, jobs: int = 1) -> ScanResponse:
        if not 1 <= jobs <= MAX_JOBS:
            raise HTTPException(status_code=422, detail=f"jobs must be in [1, {MAX_JOBS}]")
        try:
            points = run_scan(config, jobs=jobs)
        except ConfigError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except SolverError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        return ScanResponse(
            points=[
                ScanPointModel(
                    b0_larmor=pt.b0,
                    lambda_static=pt.static,
                    lambda_inphase=pt.inphase,
                    lambda_quadrature=pt.quadrature,
                )
                for pt in points
            ],
            csv=format_csv(points),
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify() -> VerifyResponse:
        checks = verify_checks()
        return VerifyResponse(
            passed=all(check.passed for check in checks),
            checks=[CheckModel(name=c.name, passed=c.passed, detail=c.detail) for c in checks],
        )

    return app


app = create_app()
