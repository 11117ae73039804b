"""Ranking metrics and the repeated stratified evaluation protocol.

AUC uses the rank (Mann-Whitney) formulation with average ranks on ties; AP
averages precision at the rank of each positive, breaking score ties by
object order. Experiments draw a stratified labeled split per seed, optionally
grid-search (delta, beta) by AUC on the labeled split, then score the
held-out remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .dataset import Label, MixedTable, normalize, stratified_split
from .detector import (
    DetectionResult,
    FrodConfig,
    combine_labeled_scores,
    detect,
    labeled_score_parts,
    write_scores_csv,
)
from .errors import DegenerateTruth, ParamError


def _as_arrays(scores: Sequence[float], truth: Sequence[bool]) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64)
    t = np.asarray(truth, dtype=bool)
    if s.shape != t.shape or s.ndim != 1:
        raise ParamError("scores and truth must be 1-d and the same length")
    return s, t


def _average_ranks(scores: np.ndarray) -> np.ndarray:
    order = np.argsort(scores, kind="mergesort")
    sorted_scores = scores[order]
    n = len(scores)
    group_start = np.empty(n, dtype=bool)
    group_start[0] = True
    group_start[1:] = sorted_scores[1:] != sorted_scores[:-1]
    group_id = np.cumsum(group_start) - 1
    counts = np.bincount(group_id)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    mean_rank = starts + (counts + 1) / 2.0  # 1-based ranks averaged per tie group
    ranks = np.empty(n)
    ranks[order] = mean_rank[group_id]
    return ranks


def auc(scores: Sequence[float], truth: Sequence[bool]) -> float:
    """Probability a random positive outscores a random negative (ties count 1/2)."""
    s, t = _as_arrays(scores, truth)
    n_pos = int(t.sum())
    n_neg = len(t) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateTruth("AUC needs at least one positive and one negative")
    ranks = _average_ranks(s)
    return float((ranks[t].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def average_precision(scores: Sequence[float], truth: Sequence[bool]) -> float:
    """Mean precision at the rank of each positive, scores sorted descending.

    Ties keep the original object order (stable sort), so the result is
    deterministic.
    """
    s, t = _as_arrays(scores, truth)
    if not t.any():
        raise DegenerateTruth("AP needs at least one positive")
    order = np.argsort(-s, kind="stable")
    hits = t[order]
    cum_hits = np.cumsum(hits)
    ranks = np.arange(1, len(s) + 1)
    # fsum keeps the mean independent of summation order (exactly rounded)
    precisions = cum_hits[hits] / ranks[hits]
    return math.fsum(precisions.tolist()) / int(t.sum())


@dataclass(frozen=True)
class GridSpec:
    """Search grid; values are iterated ascending so ties resolve to the
    smallest delta, then the smallest beta."""

    deltas: tuple[float, ...] = (0.1, 0.6, 1.1, 1.6, 2.1, 2.6)
    betas: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0, 100.0)

    def __post_init__(self) -> None:
        if not self.deltas or not self.betas:
            raise ParamError("grid must contain at least one delta and one beta")
        object.__setattr__(self, "deltas", tuple(sorted(self.deltas)))
        object.__setattr__(self, "betas", tuple(sorted(self.betas)))


@dataclass(frozen=True)
class RunResult:
    seed: int
    auc: float
    ap: float
    delta: float
    beta: float


@dataclass(frozen=True)
class ExperimentReport:
    dataset: str
    labeled_fraction: float
    runs: tuple[RunResult, ...]
    auc_mean: float
    auc_std: float
    ap_mean: float
    ap_std: float
    best_delta: float
    best_beta: float

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "labeled_fraction": self.labeled_fraction,
            "n_runs": len(self.runs),
            "runs": [
                {
                    "seed": r.seed,
                    "auc": r.auc,
                    "ap": r.ap,
                    "delta": r.delta,
                    "beta": r.beta,
                }
                for r in self.runs
            ],
            "auc_mean": self.auc_mean,
            "auc_std": self.auc_std,
            "ap_mean": self.ap_mean,
            "ap_std": self.ap_std,
            "best_delta": self.best_delta,
            "best_beta": self.best_beta,
        }

    def format_table(self) -> str:
        lines = [
            f"dataset: {self.dataset}",
            f"labeled fraction: {self.labeled_fraction}",
            f"{'seed':>6} {'auc':>8} {'ap':>8} {'delta':>6} {'beta':>7}",
        ]
        for r in self.runs:
            lines.append(
                f"{r.seed:>6} {r.auc:>8.4f} {r.ap:>8.4f} {r.delta:>6.2f} {r.beta:>7.2f}"
            )
        lines.append(
            f"{'mean':>6} {self.auc_mean:>8.4f} {self.ap_mean:>8.4f}"
            f"   (std {self.auc_std:.4f} / {self.ap_std:.4f})"
        )
        lines.append(f"best config: delta={self.best_delta}, beta={self.best_beta}")
        return "\n".join(lines)


def _outlier_truth(table: MixedTable, ids: np.ndarray) -> np.ndarray:
    return np.array([table.labels[i] is Label.OUTLIER for i in ids], dtype=bool)


def grid_search(
    table: MixedTable,
    labeled_ids: np.ndarray,
    unlabeled_ids: np.ndarray,
    grid: GridSpec,
    labeled_scoring: str = "append",
) -> tuple[float, float, float]:
    """Pick (delta, beta) maximizing AUC on one labeled split.

    Only strict improvements replace the incumbent, so ties fall to the
    smallest delta, then the smallest beta.
    """
    best = grid_search_pooled(table, [(labeled_ids, unlabeled_ids)], grid, labeled_scoring)
    return best


def grid_search_pooled(
    table: MixedTable,
    splits: Sequence[tuple[np.ndarray, np.ndarray]],
    grid: GridSpec,
    labeled_scoring: str = "append",
) -> tuple[float, float, float]:
    """Pick one (delta, beta) maximizing the mean labeled-split AUC over splits.

    A tiny labeled split gives a very coarse AUC (a 1-outlier/2-normal split
    only takes values 0, 0.5, 1), so per-split selection is dominated by ties;
    pooling over all splits averages that noise out before the argmax. Ties
    still fall to the smallest delta, then the smallest beta.
    """
    truths = [_outlier_truth(table, labeled) for labeled, _ in splits]
    best: Optional[tuple[float, float, float]] = None
    for delta in grid.deltas:
        parts_per_split = [
            labeled_score_parts(table, labeled, unlabeled, delta, labeled_scoring)
            for labeled, unlabeled in splits
        ]
        for beta in grid.betas:
            total = 0.0
            for parts, truth in zip(parts_per_split, truths):
                total += auc(combine_labeled_scores(parts, beta), truth)
            score = total / len(splits)
            if best is None or score > best[2]:
                best = (delta, beta, score)
    assert best is not None
    return best


TUNING_MODES = ("global", "per-run")


def run_experiment(
    table: MixedTable,
    labeled_fraction: float,
    n_runs: int = 10,
    seeds: Optional[Sequence[int]] = None,
    grid: Optional[GridSpec] = None,
    config: Optional[FrodConfig] = None,
    tuning: str = "global",
    score_dump_dir: Optional[str] = None,
) -> ExperimentReport:
    """Repeated stratified evaluation against held-out ground truth.

    Each run splits with its own seed, scores the unlabeled remainder, and
    records AUC/AP against the held-out labels. When a grid is given, the
    default "global" tuning picks one (delta, beta) maximizing the mean
    labeled-split AUC over all runs before any scoring; "per-run" tuning
    instead re-selects inside every run, which is noisy for tiny labeled
    splits. Rerunning with the same seeds reproduces the report.
    """
    if tuning not in TUNING_MODES:
        raise ParamError(f"tuning must be one of {TUNING_MODES}, got {tuning!r}")
    if not table.is_normalized:
        table = normalize(table)
    base = config if config is not None else FrodConfig()
    run_seeds = tuple(seeds) if seeds is not None else tuple(range(n_runs))
    if not run_seeds:
        raise ParamError("need at least one seed")

    splits = [stratified_split(table, labeled_fraction, seed) for seed in run_seeds]

    shared = base
    if grid is not None and tuning == "global":
        delta, beta, _ = grid_search_pooled(table, splits, grid, base.labeled_scoring)
        shared = replace(base, delta=delta, beta=beta)

    runs: list[RunResult] = []
    for seed, (labeled, unlabeled) in zip(run_seeds, splits):
        cfg = shared
        if grid is not None and tuning == "per-run":
            delta, beta, _ = grid_search(table, labeled, unlabeled, grid, base.labeled_scoring)
            cfg = replace(base, delta=delta, beta=beta)
        result = detect(table, labeled, unlabeled, cfg)
        truth = _outlier_truth(table, unlabeled)
        runs.append(
            RunResult(
                seed=int(seed),
                auc=auc(result.scores, truth),
                ap=average_precision(result.scores, truth),
                delta=cfg.delta,
                beta=cfg.beta,
            )
        )
        if score_dump_dir is not None:
            write_scores_csv(result, f"{score_dump_dir}/scores_seed{seed}.csv")

    aucs = np.array([r.auc for r in runs])
    aps = np.array([r.ap for r in runs])
    best_delta, best_beta = _modal_config(runs)
    return ExperimentReport(
        dataset=table.name,
        labeled_fraction=labeled_fraction,
        runs=tuple(runs),
        auc_mean=float(aucs.mean()),
        auc_std=float(aucs.std()),
        ap_mean=float(aps.mean()),
        ap_std=float(aps.std()),
        best_delta=best_delta,
        best_beta=best_beta,
    )


def _modal_config(runs: Sequence[RunResult]) -> tuple[float, float]:
    counts: dict[tuple[float, float], int] = {}
    for r in runs:
        counts[(r.delta, r.beta)] = counts.get((r.delta, r.beta), 0) + 1
    return max(sorted(counts), key=lambda key: counts[key])


def score_detection(result: DetectionResult, table: MixedTable) -> tuple[float, float]:
    """AUC and AP of a detection result against the table's ground truth."""
    truth = _outlier_truth(table, result.unlabeled_ids)
    return auc(result.scores, truth), average_precision(result.scores, truth)
