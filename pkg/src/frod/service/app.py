"""FastAPI application wrapping the detection library.

The wire format mirrors the CLI's file formats: CSV text in, score rows and
config echo out. Library errors map to 400 responses with their message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..dataset import Label, load_csv_text, normalize
from ..detector import FrodConfig, detect, sidecar_payload
from ..errors import FrodError, ParamError
from ..evaluation import GridSpec, run_experiment
from ..golden import first_failure, run_checks
from .schemas import (
    AttributeReport,
    DetectRequest,
    DetectResponse,
    EvaluateRequest,
    EvaluateResponse,
    ExampleCheck,
    ExampleResponse,
    HealthResponse,
    ObjectScore,
    RunScore,
)


def create_app() -> FastAPI:
    app = FastAPI(title="frod", version=__version__)

    @app.exception_handler(FrodError)
    async def frod_error_handler(request: Request, exc: FrodError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/detect", response_model=DetectResponse)
    def detect_endpoint(req: DetectRequest) -> DetectResponse:
        table = normalize(
            load_csv_text(req.csv_text, label_column=req.label_column, schema_text=req.schema_text)
        )
        labeled = [i for i, s in enumerate(table.labels) if s is not Label.UNLABELED]
        unlabeled = [i for i, s in enumerate(table.labels) if s is Label.UNLABELED]
        if not unlabeled:
            raise ParamError("input has no unlabeled objects to score")
        config = FrodConfig(
            delta=req.delta,
            beta=req.beta,
            threshold_override=req.threshold,
            labeled_scoring=req.labeled_scoring,
        )
        result = detect(table, labeled, unlabeled, config)
        meta = sidecar_payload(result, config)
        per_attribute = None
        if req.include_per_attribute:
            per_attribute = [
                AttributeReport(attribute=name, gamma=d.gamma, factors=d.factors.tolist())
                for name, d in result.per_attribute.items()
            ]
        return DetectResponse(
            scores=[
                ObjectScore(object_id=int(oid), od_score=float(s), prediction=bool(p))
                for oid, s, p in zip(result.unlabeled_ids, result.scores, result.predictions)
            ],
            threshold=meta["threshold"],
            threshold_source=meta["threshold_source"],
            threshold_in_unit_interval=meta["threshold_in_unit_interval"],
            delta=config.delta,
            beta=config.beta,
            n_labeled=meta["n_labeled"],
            n_unlabeled=meta["n_unlabeled"],
            n_predicted_outliers=meta["n_predicted_outliers"],
            per_attribute=per_attribute,
        )

    @app.post("/evaluate", response_model=EvaluateResponse)
    def evaluate_endpoint(req: EvaluateRequest) -> EvaluateResponse:
        table = normalize(
            load_csv_text(req.csv_text, label_column=req.label_column, schema_text=req.schema_text)
        )
        report = run_experiment(
            table,
            labeled_fraction=req.labeled_fraction,
            seeds=req.seeds,
            grid=GridSpec() if req.grid else None,
            config=FrodConfig(delta=req.delta, beta=req.beta),
        )
        return EvaluateResponse(
            dataset=report.dataset,
            labeled_fraction=report.labeled_fraction,
            runs=[
                RunScore(seed=r.seed, auc=r.auc, ap=r.ap, delta=r.delta, beta=r.beta)
                for r in report.runs
            ],
            auc_mean=report.auc_mean,
            auc_std=report.auc_std,
            ap_mean=report.ap_mean,
            ap_std=report.ap_std,
            best_delta=report.best_delta,
            best_beta=report.best_beta,
        )

    @app.get("/example", response_model=ExampleResponse)
    def example_endpoint() -> ExampleResponse:
        checks = run_checks()
        return ExampleResponse(
            passed=first_failure(checks) is None,
            checks=[
                ExampleCheck(name=c.name, ok=c.ok, detail=c.describe()) for c in checks
            ],
        )

    return app
