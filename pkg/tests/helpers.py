"""Shared test utilities: synthetic data builders and naive oracles.

The oracles here deliberately re-derive results with the most direct
formulation available (double loops, explicit submatrices, pair counting) and
stay independent of the library's computation paths.
"""

from __future__ import annotations

import math

import numpy as np

from frod import FuzzyRelation, load_csv_text, normalize
from frod.dataset import Attribute, Kind, MixedTable


def make_numeric_column(values, name="x", normalized=True) -> Attribute:
    values = np.asarray(values, dtype=np.float64)
    return Attribute(
        name=name,
        kind=Kind.NUMERICAL,
        values=values,
        normalized=values if normalized else None,
    )


def make_nominal_column(codes, name="x") -> Attribute:
    codes = np.asarray(codes, dtype=np.int64)
    levels = tuple(str(v) for v in sorted(set(codes.tolist())))
    return Attribute(name=name, kind=Kind.NOMINAL, values=codes, levels=levels)


def table_from_csv(lines: list[str], label_column="label", **kwargs) -> MixedTable:
    return normalize(load_csv_text("\n".join(lines) + "\n", label_column=label_column, **kwargs))


def random_relation(rng: np.random.Generator, k: int) -> FuzzyRelation:
    """Random reflexive symmetric relation (not induced by any attribute)."""
    raw = rng.random((k, k))
    matrix = (raw + raw.T) / 2.0
    np.fill_diagonal(matrix, 1.0)
    return FuzzyRelation(subset=np.arange(k), matrix=matrix, attribute_ids=("random",))


def random_column_relation(rng: np.random.Generator, k: int, nominal: bool) -> FuzzyRelation:
    """Relation induced by a random attribute column, as production code builds them."""
    from frod.relation import relation_for_column

    if nominal:
        column = make_nominal_column(rng.integers(0, max(2, k // 3), size=k))
    else:
        column = make_numeric_column(rng.random(k))
    delta = float(rng.uniform(0.2, 2.5))
    return relation_for_column(column, np.arange(k), delta)


def naive_lower(matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    k = len(x)
    out = np.empty(k)
    for i in range(k):
        out[i] = min(max(1.0 - matrix[i, j], x[j]) for j in range(k))
    return out


def naive_upper(matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    k = len(x)
    out = np.empty(k)
    for i in range(k):
        out[i] = max(min(matrix[i, j], x[j]) for j in range(k))
    return out


def naive_entropy(matrix: np.ndarray) -> float:
    k = len(matrix)
    total = 0.0
    for i in range(k):
        card = float(sum(matrix[i]))
        total += math.log2(card / k)
    return -total / k


def naive_leave_one_out(matrix: np.ndarray, i: int) -> float:
    keep = [j for j in range(len(matrix)) if j != i]
    sub = matrix[np.ix_(keep, keep)]
    return naive_entropy(sub)


def naive_auc(scores, truth) -> float:
    scores = np.asarray(scores, dtype=np.float64)
    truth = np.asarray(truth, dtype=bool)
    pos = scores[truth]
    neg = scores[~truth]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def naive_average_precision(scores, truth) -> float:
    scores = np.asarray(scores, dtype=np.float64)
    truth = np.asarray(truth, dtype=bool)
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    hits = 0
    terms = []
    for rank, idx in enumerate(order, start=1):
        if truth[idx]:
            hits += 1
            terms.append(hits / rank)
    return math.fsum(terms) / int(truth.sum())


def separation_instance(rng: np.random.Generator, size: int, delta: float = 1.0):
    """Cluster plus one far point satisfying the separation hypotheses.

    Returns (values, radius) where values[:-1] is the cluster and values[-1]
    the isolated point; all intra-cluster gaps are <= radius and every gap to
    the isolated point is > radius. Instances failing the hypotheses are
    regenerated with a tighter cluster.
    """
    spread = 0.05
    while True:
        cluster = rng.uniform(0.0, spread, size=size - 1)
        values = np.concatenate([cluster, [1.0]])
        diffs = np.abs(values[:, None] - values[None, :])
        radius = delta * diffs.mean()
        intra = diffs[:-1, :-1]
        cross = diffs[-1, :-1]
        if intra.max() <= radius and cross.min() > radius:
            return values, radius
        spread /= 2.0
