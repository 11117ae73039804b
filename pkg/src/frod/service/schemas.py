"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class DetectRequest(BaseModel):
    csv_text: str = Field(description="CSV content with header row; partial labels")
    label_column: str = "label"
    schema_text: Optional[str] = Field(default=None, description="optional name:kind lines")
    delta: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, gt=0)
    threshold: Optional[float] = Field(default=None, description="override the adaptive threshold")
    labeled_scoring: str = "append"
    include_per_attribute: bool = False


class ObjectScore(BaseModel):
    object_id: int
    od_score: float
    prediction: bool


class AttributeReport(BaseModel):
    attribute: str
    gamma: float
    factors: list[float]


class DetectResponse(BaseModel):
    scores: list[ObjectScore]
    threshold: float
    threshold_source: str
    threshold_in_unit_interval: bool
    delta: float
    beta: float
    n_labeled: int
    n_unlabeled: int
    n_predicted_outliers: int
    per_attribute: Optional[list[AttributeReport]] = None


class EvaluateRequest(BaseModel):
    csv_text: str
    label_column: str = "label"
    schema_text: Optional[str] = None
    labeled_fraction: float = Field(default=0.01, gt=0, lt=1)
    seeds: Optional[list[int]] = Field(default=None, description="default: 0..9")
    grid: bool = True
    delta: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, gt=0)


class RunScore(BaseModel):
    seed: int
    auc: float
    ap: float
    delta: float
    beta: float


class EvaluateResponse(BaseModel):
    dataset: str
    labeled_fraction: float
    runs: list[RunScore]
    auc_mean: float
    auc_std: float
    ap_mean: float
    ap_std: float
    best_delta: float
    best_beta: float


class ExampleCheck(BaseModel):
    name: str
    ok: bool
    detail: str


class ExampleResponse(BaseModel):
    passed: bool
    checks: list[ExampleCheck]


class HealthResponse(BaseModel):
    status: str
    version: str
