"""FastAPI application exposing the ranking engine over HTTP."""
import sys
import logging
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from fastapi import FastAPI, HTTPException  # noqa: E402
from pydantic import ValidationError  # noqa: E402

from src.config.settings import settings  # noqa: E402
from src.models.diagnostics import OptimalityReport  # noqa: E402
from src.models.experiments import ExperimentConfig, ExperimentResult  # noqa: E402
from src.models.pairwise import ConsistencyReport, HreProblem, PriorityVector  # noqa: E402
from src.models.reports import RankReport  # noqa: E402
from src.models.requests import DiagnoseRequest, MatrixRequest, RankRequest  # noqa: E402
from src.services.consistency import validate  # noqa: E402
from src.services.errors import HreError, SingularMatrixError  # noqa: E402
from src.services.experiments import run_experiment  # noqa: E402
from src.services.hre import solve_geometric  # noqa: E402
from src.services.optimality import optimality_report  # noqa: E402
from src.services.ranking import rank  # noqa: E402

logging.basicConfig(
    level=logging.DEBUG if settings.debug else logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

_openapi_tags = [
    {"name": "Ranking", "description": "Priorities from a judgment matrix and a reference set."},
    {"name": "Diagnostics", "description": "Consistency and optimality checks."},
    {"name": "Experiments", "description": "Randomized feasibility experiments."},
    {"name": "Health", "description": "Liveness check."},
]

app = FastAPI(
    title=settings.app_name,
    description=settings.app_description,
    version=settings.app_version,
    openapi_tags=_openapi_tags,
)


def _unprocessable(exc: ValidationError) -> HTTPException:
    return HTTPException(status_code=422, detail=exc.errors(include_url=False, include_context=False))


def _bad_request(exc: Exception) -> HTTPException:
    logger.info("Rejected request: %s", exc)
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health", tags=["Health"])
async def health_check():
    """
    Simple health check endpoint.

    Returns:
        dict: Server health status
    """
    return {
        "status": "healthy",
        "service": settings.app_name,
        "version": settings.app_version
    }


@app.post("/check", response_model=ConsistencyReport, tags=["Diagnostics"])
def check_matrix(request: MatrixRequest):
    """Reciprocity violations, consistency and Koczkodaj index of a matrix."""
    try:
        return validate(request.to_matrix())
    except ValidationError as exc:
        raise _unprocessable(exc)


@app.post("/rank", response_model=RankReport, tags=["Ranking"])
def rank_matrix(request: RankRequest):
    """
    Derive priorities with the requested method.

    An infeasible arithmetic solution is returned with ``feasible`` false;
    a singular arithmetic system is reported as 409.

    Raises:
        HTTPException: 422 for malformed matrices, 400 for inconsistent parameters
    """
    try:
        return rank(
            request.to_matrix(),
            request.to_reference(),
            method=request.method,
            base=request.base,
            normalize=request.normalize,
        )
    except ValidationError as exc:
        raise _unprocessable(exc)
    except SingularMatrixError as exc:
        raise HTTPException(status_code=409, detail=f"no solution: {exc}")
    except (HreError, ValueError) as exc:
        raise _bad_request(exc)


@app.post("/diagnose", response_model=OptimalityReport, tags=["Diagnostics"])
def diagnose(request: DiagnoseRequest):
    """Error function, gradient and Hessian checks at a solution."""
    try:
        matrix = request.to_matrix()
        reference = request.to_reference()
        problem = HreProblem(matrix=matrix, reference=reference) if reference is not None else None
        if request.solution is not None:
            solution = PriorityVector(values=tuple(request.solution), method="provided")
        elif problem is not None:
            solution = solve_geometric(problem, base=request.base)
        else:
            raise ValueError("either 'solution' or 'known' is required")
        return optimality_report(
            solution, matrix, unknown=problem.unknown_positions if problem is not None else None
        )
    except ValidationError as exc:
        raise _unprocessable(exc)
    except (HreError, ValueError) as exc:
        raise _bad_request(exc)


@app.post("/simulate", response_model=ExperimentResult, tags=["Experiments"])
def simulate(config: ExperimentConfig):
    """Run a seeded feasibility experiment; identical configs give identical results."""
    return run_experiment(config)


if __name__ == "__main__":
    import uvicorn

    logger.info(f"Starting {settings.app_name} v{settings.app_version}")
    logger.info(f"Server: {settings.server_host}:{settings.server_port}")

    uvicorn.run(
        "src.main:app",
        host=settings.server_host,
        port=settings.server_port,
        reload=settings.debug
    )
