"""HTTP service layer: pydantic request/response models, handlers, FastAPI app.

The handlers are plain functions from request model to response model; the
FastAPI app and the CLI are both thin clients of them, so every output is
identical whether it came over HTTP or from the command line.
"""

from .models import (
    AtomParams,
    ChannelParams,
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

__all__ = [
    "AtomParams",
    "ChannelParams",
    "CoefficientsRequest",
    "CoefficientsResponse",
    "EvolveRequest",
    "EvolveResponse",
    "PresetsResponse",
    "ScenarioRequest",
    "ScenarioResponse",
    "SurvivalRequest",
    "SurvivalResponse",
    "VerifyRequest",
    "VerifyResponse",
]
