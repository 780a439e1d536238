import time
from typing import Any, Dict, Optional

# Verification jobs kept in process memory. Key: job_id, value: metadata dict.
# Lifecycle: queued -> running -> done | failed.
JOB_STORE: Dict[str, Dict[str, Any]] = {}

QUEUED, RUNNING, DONE, FAILED = "queued", "running", "done", "failed"


def create_job(job_id: str, request: Dict[str, Any]) -> None:
    now = time.time()
    JOB_STORE[job_id] = {
        "status": QUEUED,
        "created_at": now,
        "payload": request,
        "result": None,
        "updated_at": now,
    }


def start_job(job_id: str) -> Optional[Dict[str, Any]]:
    """Marks a queued job as running and returns its request, or None if unknown."""
    job = JOB_STORE.get(job_id)
    if job is None:
        return None
    job["status"] = RUNNING
    job["updated_at"] = time.time()
    return job["payload"]


def finish_job(job_id: str, suite: Optional[Dict[str, Any]] = None, error: Optional[str] = None) -> None:
    """Stores a suite payload (or a crash message); the job is done only if every check passed."""
    job = JOB_STORE.get(job_id)
    if job is None:
        return
    now = time.time()
    passed = error is None and suite is not None and bool(suite.get("ok"))
    result: Dict[str, Any] = {"success": passed, "finished_at": now}
    if suite is not None:
        result["suite"] = suite
    if error is not None:
        result["error"] = error
    job["result"] = result
    job["status"] = DONE if passed else FAILED
    job["updated_at"] = now


def get_job(job_id: str) -> Optional[Dict[str, Any]]:
    return JOB_STORE.get(job_id)


def clear_jobs() -> None:
    JOB_STORE.clear()
