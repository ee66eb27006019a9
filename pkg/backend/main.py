import logging
from typing import List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from errors import GeometryError
from recognize_service.recognize import VerdictPayload, classify
from run_config import RunConfig
from settings import configure_logging, get_settings
from spectrum_service.families import generate
from spectrum_service.lemmas import verify_lemma_suite
from spectrum_service.reports import ConditionReport, LemmaReport
from spectrum_service.solid_io import solid_set_from_duals
from spectrum_service.spectrum import check_conditions

configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI(title="PG(4,q) solid-set service")

# Enable CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=get_settings().cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class GeometryRequest(BaseModel):
    q: int
    modulus: Optional[str] = None


class SolidSetRequest(GeometryRequest):
    solids: List[str]
    witnessCap: Optional[int] = None


class GenerateResponse(BaseModel):
    census: dict
    items: List[str]


def _failure(e: Exception) -> HTTPException:
    if isinstance(e, GeometryError):
        return HTTPException(status_code=400, detail=str(e))
    logger.exception("request failed")
    return HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@app.post("/generate/{kind}", response_model=GenerateResponse)
def generate_family(kind: str, request: GeometryRequest):
    try:
        index = RunConfig.build(q=request.q, modulus=request.modulus).index()
        family = generate(kind, index)
        describe = index.hyperplane if family.record == "dual" else index.point
        return {"census": family.census(index), "items": [str(describe(int(i))) for i in family.indices]}
    except Exception as e:
        raise _failure(e)


@app.post("/check", response_model=ConditionReport)
def check(request: SolidSetRequest):
    try:
        config = RunConfig.build(q=request.q, modulus=request.modulus, witnessCap=request.witnessCap)
        index = config.index()
        return check_conditions(solid_set_from_duals(request.solids, index), index, witness_cap=config.witness_cap)
    except Exception as e:
        raise _failure(e)


@app.post("/classify", response_model=VerdictPayload)
def classify_solids(request: SolidSetRequest):
    """
    Classify a solid set: case A (hyperoval), case B (quadric) or NA.
    Conditions that fail are reported in the payload, not as an HTTP error.
    """
    try:
        config = RunConfig.build(q=request.q, modulus=request.modulus, witnessCap=request.witnessCap)
        index = config.index()
        solids = solid_set_from_duals(request.solids, index)
        return classify(solids, index, witness_cap=config.witness_cap).to_payload()
    except Exception as e:
        raise _failure(e)


@app.post("/verify_lemmas", response_model=LemmaReport)
def verify_lemmas(request: SolidSetRequest):
    try:
        config = RunConfig.build(q=request.q, modulus=request.modulus, witnessCap=request.witnessCap)
        index = config.index()
        return verify_lemma_suite(solid_set_from_duals(request.solids, index), index, witness_cap=config.witness_cap)
    except Exception as e:
        raise _failure(e)


if __name__ == "__main__":
    uvicorn.run(app, host="0.0.0.0", port=8000)
