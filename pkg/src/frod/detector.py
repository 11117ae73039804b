"""End-to-end detection: per-attribute factors, weighted degrees, thresholding.

For every conditional attribute the pipeline derives two things: a
classification-accuracy weight gamma from the labeled subset, and an outlier
factor per unlabeled object from the relative entropy of that attribute's
relation on the unlabeled subset. The outlier degree of an object is one
minus the gamma-weighted mean of its factors; objects whose degree exceeds
the adaptive threshold (largest degree among labeled normals) are flagged.

Labeled objects themselves are scored by temporarily embedding them in the
unlabeled entropy universe, so that their degrees live on the same scale;
``FrodConfig.labeled_scoring`` picks between appending each labeled object
alone ("append") and embedding all of them at once ("joint").

Attribute pipelines are independent and run on a thread pool; the FROD_THREADS
environment variable caps the worker count. Results are reduced in fixed
attribute order, so scores do not depend on the degree of parallelism.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence, TypeVar

import numpy as np

from .dataset import Attribute, Label, MixedTable
from .entropy import EntropyState, fuzzy_relative_entropy, relative_entropies
from .errors import AttributeMismatch, EmptyNormals, ParamError
from .relation import relation_for_column
from .rough import FuzzySet
from .supervision import class_accuracies, class_indicators

T = TypeVar("T")
U = TypeVar("U")

LABELED_SCORING_MODES = ("append", "joint")


@dataclass(frozen=True)
class FrodConfig:
    """Detection parameters.

    delta scales the fuzzy radii, beta the outlier-class weight inside gamma.
    threshold_override replaces the adaptive threshold when set.
    """

    delta: float = 1.0
    beta: float = 1.0
    threshold_override: Optional[float] = None
    labeled_scoring: str = "append"

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ParamError(f"delta must be positive, got {self.delta}")
        if self.beta <= 0:
            raise ParamError(f"beta must be positive, got {self.beta}")
        if self.labeled_scoring not in LABELED_SCORING_MODES:
            raise ParamError(
                f"labeled_scoring must be one of {LABELED_SCORING_MODES}, got {self.labeled_scoring!r}"
            )


@dataclass(frozen=True)
class AttributeDetail:
    """Per-attribute explainability record: weight and unlabeled factors."""

    gamma: float
    factors: np.ndarray


@dataclass(frozen=True)
class DetectionResult:
    unlabeled_ids: np.ndarray
    scores: np.ndarray
    threshold: float
    predictions: np.ndarray
    labeled_ids: np.ndarray
    labeled_scores: np.ndarray
    per_attribute: dict[str, AttributeDetail] = field(repr=False)
    threshold_source: str = "labeled-normal-max"


def worker_count(n_tasks: int) -> int:
    """Worker threads to use: FROD_THREADS caps the machine default."""
    raw = os.environ.get("FROD_THREADS", "").strip()
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ParamError(f"FROD_THREADS must be an integer, got {raw!r}") from None
        if cap < 1:
            raise ParamError(f"FROD_THREADS must be >= 1, got {cap}")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


def _map_ordered(fn: Callable[[T], U], items: Sequence[T]) -> list[U]:
    workers = worker_count(len(items))
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def outlier_factor(state: EntropyState, i: int) -> float:
    """Relative entropy of object i weighted by sqrt of its relative class size.

    Falls back to the degenerate value 1 + lambda for the relative entropy
    when the base entropy is zero (all objects mutually similar).
    """
    if state.fe == 0.0:
        if not 0 <= i < state.size:
            raise IndexError(f"object index {i} out of range for size {state.size}")
        fre = 1.0 + state.lam
    else:
        fre = fuzzy_relative_entropy(state, i)
    weight = math.sqrt(state.cardinalities[i] / state.size)
    return weight * fre


def outlier_factors(state: EntropyState) -> np.ndarray:
    """Outlier factor of every object in the state's universe."""
    weights = np.sqrt(state.cardinalities / state.size)
    return weights * relative_entropies(state)


def outlier_degree(weights: Mapping[str, float], factors: Mapping[str, float]) -> float:
    """One minus the weighted mean of per-attribute factors for one object.

    Accumulates in the weight map's iteration order, matching the reduction
    ``detect`` uses, so recombining a result's per-attribute records
    reproduces its scores bit for bit.
    """
    if not weights:
        raise ParamError("need at least one attribute")
    if set(weights) != set(factors):
        raise AttributeMismatch(
            f"weights cover {sorted(weights)} but factors cover {sorted(factors)}"
        )
    acc = 0.0
    for name, gamma in weights.items():
        acc += gamma * factors[name]
    return 1.0 - acc / len(weights)


def adaptive_threshold(normal_scores: Sequence[float]) -> float:
    """Greatest outlier degree among labeled normal objects."""
    scores = np.asarray(normal_scores, dtype=np.float64)
    if scores.size == 0:
        raise EmptyNormals("no labeled normal object was scored")
    return float(scores.max())


@dataclass(frozen=True)
class _AttributeProfile:
    name: str
    acc_neg: float
    acc_pos: float
    labeled_factors: np.ndarray
    unlabeled_factors: Optional[np.ndarray] = None


def _append_mode_factors(
    column: Attribute, labeled_ids: np.ndarray, unlabeled_ids: np.ndarray, delta: float
) -> np.ndarray:
    out = np.empty(len(labeled_ids))
    for pos, obj in enumerate(labeled_ids):
        universe = np.concatenate([unlabeled_ids, [obj]])
        state = EntropyState(relation_for_column(column, universe, delta))
        out[pos] = outlier_factor(state, state.size - 1)
    return out


def _joint_mode_factors(
    column: Attribute, labeled_ids: np.ndarray, unlabeled_ids: np.ndarray, delta: float
) -> np.ndarray:
    universe = np.concatenate([unlabeled_ids, labeled_ids])
    state = EntropyState(relation_for_column(column, universe, delta))
    return outlier_factors(state)[len(unlabeled_ids):]


def _profile_column(
    column: Attribute,
    labeled_ids: np.ndarray,
    unlabeled_ids: np.ndarray,
    neg: FuzzySet,
    pos: FuzzySet,
    delta: float,
    labeled_scoring: str,
    include_unlabeled: bool,
) -> _AttributeProfile:
    labeled_rel = relation_for_column(column, labeled_ids, delta)
    acc_neg, acc_pos = class_accuracies(labeled_rel, neg, pos)

    if labeled_scoring == "append":
        labeled_of = _append_mode_factors(column, labeled_ids, unlabeled_ids, delta)
    else:
        labeled_of = _joint_mode_factors(column, labeled_ids, unlabeled_ids, delta)

    unlabeled_of = None
    if include_unlabeled:
        state = EntropyState(relation_for_column(column, unlabeled_ids, delta))
        unlabeled_of = outlier_factors(state)
    return _AttributeProfile(column.name, acc_neg, acc_pos, labeled_of, unlabeled_of)


def _validate_inputs(
    table: MixedTable, labeled_ids: np.ndarray, unlabeled_ids: np.ndarray
) -> None:
    if not table.is_normalized:
        raise ParamError("table is not normalized; call normalize() first")
    if table.n_attributes < 1:
        raise ParamError("table has no conditional attributes")
    if unlabeled_ids.size == 0:
        raise ParamError("no unlabeled objects to score")
    if labeled_ids.size == 0:
        raise ParamError("no labeled objects")
    if np.intersect1d(labeled_ids, unlabeled_ids).size:
        raise ParamError("labeled and unlabeled ids overlap")
    all_ids = np.concatenate([labeled_ids, unlabeled_ids])
    if all_ids.min() < 0 or all_ids.max() >= table.n_objects:
        raise ParamError("object id out of range")


def labeled_score_parts(
    table: MixedTable,
    labeled_ids: Sequence[int],
    unlabeled_ids: Sequence[int],
    delta: float,
    labeled_scoring: str = "append",
) -> list[_AttributeProfile]:
    """The delta-dependent per-attribute pieces of labeled-object scoring.

    Grid search reuses these across beta values: gamma is linear in beta while
    the labeled factors do not depend on it at all.
    """
    labeled_ids = np.asarray(labeled_ids, dtype=np.intp)
    unlabeled_ids = np.asarray(unlabeled_ids, dtype=np.intp)
    _validate_inputs(table, labeled_ids, unlabeled_ids)
    subset_labels = [table.labels[i] for i in labeled_ids]
    neg, pos = class_indicators(subset_labels, labeled_ids)
    return _map_ordered(
        lambda col: _profile_column(
            col, labeled_ids, unlabeled_ids, neg, pos, delta, labeled_scoring, False
        ),
        table.columns,
    )


def combine_labeled_scores(parts: Sequence[_AttributeProfile], beta: float) -> np.ndarray:
    """Labeled-object outlier degrees for a given beta from precomputed parts."""
    if not parts:
        raise ParamError("need at least one attribute profile")
    acc = np.zeros_like(parts[0].labeled_factors)
    for part in parts:
        gamma = part.acc_neg + beta * part.acc_pos
        acc += gamma * part.labeled_factors
    return 1.0 - acc / len(parts)


def detect(
    table: MixedTable,
    labeled_ids: Sequence[int],
    unlabeled_ids: Sequence[int],
    config: FrodConfig = FrodConfig(),
) -> DetectionResult:
    """Run the full detection pipeline and return scores plus predictions.

    Deterministic for fixed inputs and config, regardless of FROD_THREADS.
    """
    labeled_ids = np.asarray(labeled_ids, dtype=np.intp)
    unlabeled_ids = np.asarray(unlabeled_ids, dtype=np.intp)
    _validate_inputs(table, labeled_ids, unlabeled_ids)

    subset_labels = [table.labels[i] for i in labeled_ids]
    neg, pos = class_indicators(subset_labels, labeled_ids)

    profiles = _map_ordered(
        lambda col: _profile_column(
            col,
            labeled_ids,
            unlabeled_ids,
            neg,
            pos,
            config.delta,
            config.labeled_scoring,
            True,
        ),
        table.columns,
    )

    m = len(profiles)
    acc = np.zeros(len(unlabeled_ids))
    labeled_acc = np.zeros(len(labeled_ids))
    per_attribute: dict[str, AttributeDetail] = {}
    for part in profiles:
        gamma = part.acc_neg + config.beta * part.acc_pos
        acc += gamma * part.unlabeled_factors
        labeled_acc += gamma * part.labeled_factors
        per_attribute[part.name] = AttributeDetail(gamma=gamma, factors=part.unlabeled_factors)

    scores = 1.0 - acc / m
    labeled_scores = 1.0 - labeled_acc / m

    if config.threshold_override is not None:
        threshold = float(config.threshold_override)
        source = "override"
    else:
        normal_mask = np.array([s is Label.NORMAL for s in subset_labels])
        threshold = adaptive_threshold(labeled_scores[normal_mask])
        source = "labeled-normal-max"

    return DetectionResult(
        unlabeled_ids=unlabeled_ids,
        scores=scores,
        threshold=threshold,
        predictions=scores > threshold,
        labeled_ids=labeled_ids,
        labeled_scores=labeled_scores,
        per_attribute=per_attribute,
        threshold_source=source,
    )


def write_scores_csv(result: DetectionResult, path: str | Path) -> None:
    """Score table: one row per unlabeled object (object_id, od_score, prediction)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["object_id", "od_score", "prediction"])
        for oid, score, pred in zip(result.unlabeled_ids, result.scores, result.predictions):
            writer.writerow([int(oid), repr(float(score)), int(pred)])


def sidecar_payload(result: DetectionResult, config: FrodConfig) -> dict:
    return {
        "threshold": result.threshold,
        "threshold_source": result.threshold_source,
        "threshold_in_unit_interval": 0.0 < result.threshold < 1.0,
        "delta": config.delta,
        "beta": config.beta,
        "labeled_scoring": config.labeled_scoring,
        "n_labeled": int(len(result.labeled_ids)),
        "n_unlabeled": int(len(result.unlabeled_ids)),
        "n_predicted_outliers": int(result.predictions.sum()),
    }


def write_sidecar_json(result: DetectionResult, config: FrodConfig, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sidecar_payload(result, config), fh, indent=2, sort_keys=True)
        fh.write("\n")
