import uuid

from fastapi import APIRouter, BackgroundTasks, HTTPException, Path, status
from fastapi.responses import JSONResponse

from app import service
from app.schemas import (
    ClassificationOut,
    ConesOut,
    ElementRequest,
    ElementsOut,
    JobOut,
    PeelOut,
    PeelRequest,
    QuiverOut,
    VerifyRequest,
    WeightsOut,
)
from app.solver.decomp import classify
from app.solver.weyl import require_weight
from app.storage.jobs import create_job, get_job

router = APIRouter()


def _quiver(payload: ElementRequest):
    return service.load_quiver(payload.type, payload.rank, payload.weight, payload.variant, payload.word)


@router.get("/weights/{type_spec}", response_model=WeightsOut)
async def weights(type_spec: str = Path(..., description="Root system, e.g. 'E6'")):
    return service.weights_payload(service.resolve_root_system(type_spec))


@router.post("/elements", response_model=ElementsOut)
async def elements(payload: ElementRequest):
    rs = service.resolve_root_system(payload.type, payload.rank)
    return service.elements_payload(rs, payload.weight, payload.variant)


@router.post("/quiver", response_model=QuiverOut)
async def quiver(payload: ElementRequest):
    return service.quiver_payload(_quiver(payload))


@router.post("/classify", response_model=ClassificationOut)
async def classify_word(payload: ElementRequest):
    return service.classification_payload(classify(_quiver(payload), payload.max_peaks))


@router.post("/cones", response_model=ConesOut)
async def cones(payload: ElementRequest):
    q = _quiver(payload)
    return service.cones_payload(q, service.parse_ordering(payload.ordering), payload.max_peaks)


@router.post("/peel", response_model=PeelOut)
async def peel(payload: PeelRequest):
    return service.peel_payload(_quiver(payload), service.parse_class(payload.divisor_class))


@router.post("/verify")
async def verify(payload: VerifyRequest, background_tasks: BackgroundTasks):
    """
    Validates the quotient, then runs the invariant suite as a background job.
    Poll /job/{job_id} for the result.
    """
    rs = service.resolve_root_system(payload.type, payload.rank)
    require_weight(rs, payload.weight, payload.variant)

    job_id = str(uuid.uuid4())
    create_job(job_id, payload.model_dump(mode="json"))
    from app.workers.runner import run_job
    background_tasks.add_task(run_job, job_id)

    return JSONResponse(status_code=status.HTTP_200_OK, content={"status": "accepted", "job_id": job_id})


@router.get("/job/{job_id}", response_model=JobOut)
async def job(job_id: str = Path(..., description="Job ID returned on accept")):
    found = get_job(job_id)
    if found is None:
        raise HTTPException(status_code=404, detail="Job not found")
    return JobOut(
        job_id=job_id,
        status=found.get("status"),
        created_at=found.get("created_at"),
        updated_at=found.get("updated_at"),
        payload=found.get("payload", {}),
        result=found.get("result"),
    )
