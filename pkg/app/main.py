from dotenv import load_dotenv
load_dotenv()
import logging
import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from app.api.routes import router as qfact_router
from app.errors import InputError, InvariantViolation, QFactError, ResourceLimitError

logger = logging.getLogger(__name__)

# most specific first: every library error is a QFactError
ERROR_STATUS = (
    (InputError, 400),
    (ResourceLimitError, 413),
    (InvariantViolation, 500),
)

app = FastAPI(
    title="Q-factorializations of minuscule Schubert varieties",
    description="Quivers, peak decompositions, nef cones and the invariant suite, in exact arithmetic.",
)

app.include_router(qfact_router)


@app.exception_handler(QFactError)
async def qfact_error(request: Request, exc: QFactError):
    code = next((c for kind, c in ERROR_STATUS if isinstance(exc, kind)), 400)
    detail = str(exc)
    if code == 500:
        logger.error("%s %s: invariant violated: %s", request.method, request.url.path, exc)
        detail = f"internal invariant violated: {exc}"
    return JSONResponse(status_code=code, content={"detail": detail})


@app.get("/health")
async def health():
    return {"status": "ok"}


if __name__ == "__main__":
    import uvicorn
    port = int(os.environ.get("PORT", 8000))
    uvicorn.run("app.main:app", host="0.0.0.0", port=port, log_level="info")
