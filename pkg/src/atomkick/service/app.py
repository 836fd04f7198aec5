"""FastAPI application exposing the computation handlers.

Run with:  uvicorn atomkick.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from . import handlers
from .models import (
    CoefficientsRequest,
    CoefficientsResponse,
    EvolveRequest,
    EvolveResponse,
    PresetsResponse,
    ScenarioRequest,
    ScenarioResponse,
    SurvivalRequest,
    SurvivalResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="atomkick",
    version=__version__,
    description="Decoherence of excited atoms from sudden nuclear recoil: "
                "eigenstate projections, survival sweeps, environment "
                "scenarios and self-verification.",
)


def _guarded(fn, request):
    try:
        return fn(request)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/")
def info():
    return {
        "service": "atomkick",
        "version": __version__,
        "endpoints": ["/coefficients", "/survival", "/evolve", "/scenario",
                      "/verify", "/presets"],
    }


@app.post("/coefficients", response_model=CoefficientsResponse)
def coefficients(request: CoefficientsRequest):
    return _guarded(handlers.compute_coefficients, request)


@app.post("/survival", response_model=SurvivalResponse)
def survival(request: SurvivalRequest):
    return _guarded(handlers.compute_survival, request)


@app.post("/evolve", response_model=EvolveResponse)
def evolve(request: EvolveRequest):
    return _guarded(handlers.compute_evolve, request)


@app.post("/scenario", response_model=ScenarioResponse)
def scenario(request: ScenarioRequest):
    return _guarded(handlers.compute_scenario, request)


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    return _guarded(handlers.run_verify, request)


@app.get("/presets", response_model=PresetsResponse)
def presets():
    return handlers.list_presets()
