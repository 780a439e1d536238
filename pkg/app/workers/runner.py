# app/workers/runner.py
import asyncio
import logging
from typing import Any, Dict

from app import service
from app.config import get_settings
from app.schemas import VerifyRequest
from app.solver.verify import run_suite
from app.storage.jobs import finish_job, start_job

logger = logging.getLogger(__name__)


def _run_suite_sync(payload: Dict[str, Any]) -> Dict[str, Any]:
    request = VerifyRequest(**payload)
    rs = service.resolve_root_system(request.type, request.rank)
    settings = get_settings(sample_count=request.samples, seed=request.seed)
    report = run_suite(rs, request.weight, request.variant, settings)
    return service.suite_payload(report).model_dump(mode="json")


async def run_job(job_id: str):
    """
    Worker entrypoint for a verification job:
      - mark the job running and load its VerifyRequest
      - run the invariant suite off the event loop
      - store the suite payload ("done" when every check passed, "failed" otherwise)
    """
    payload = start_job(job_id)
    if payload is None:
        return

    try:
        suite = await asyncio.to_thread(_run_suite_sync, payload)
    except Exception as e:
        logger.exception("verification job %s crashed", job_id)
        finish_job(job_id, error=str(e))
        return

    logger.info("verification job %s finished: ok=%s", job_id, suite["ok"])
    finish_job(job_id, suite=suite)
