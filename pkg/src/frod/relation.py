"""Fuzzy similarity relations over object subsets.

Each attribute induces a symmetric, reflexive membership matrix on a chosen
subset of objects. Nominal attributes compare by equality; numerical ones use
1 - |difference| inside an adaptive fuzzy radius and 0 outside it. The radius
is recomputed on every subset a relation is built over.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import Attribute, MixedTable
from .errors import ParamError, SubsetMismatch


@dataclass(frozen=True)
class FuzzyRelation:
    """Membership matrix over an ordered object subset.

    matrix[i, j] is the similarity degree between subset[i] and subset[j];
    always symmetric and reflexive with entries in [0, 1].
    """

    subset: np.ndarray
    matrix: np.ndarray
    attribute_ids: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.subset)


def fuzzy_radius(values: np.ndarray, delta: float) -> float:
    """Adaptive similarity cutoff: delta times the mean pairwise difference.

    The mean runs over all ordered pairs of the subset, diagonal included,
    so the denominator is k^2. Values are expected in normalized [0, 1] units.
    """
    if delta <= 0:
        raise ParamError(f"delta must be positive, got {delta}")
    if len(values) < 2:
        raise ParamError("fuzzy radius needs at least two objects")
    diffs = np.abs(values[:, None] - values[None, :])
    return float(delta * diffs.mean())


def _numerical_matrix(values: np.ndarray, delta: float) -> np.ndarray:
    if len(values) == 1:
        return np.ones((1, 1))
    radius = fuzzy_radius(values, delta)
    diffs = np.abs(values[:, None] - values[None, :])
    # radius 0 (constant column) degrades to equality: d <= 0 iff d == 0
    return np.where(diffs <= radius, 1.0 - diffs, 0.0)


def _nominal_matrix(codes: np.ndarray) -> np.ndarray:
    return (codes[:, None] == codes[None, :]).astype(np.float64)


def relation_for_column(column: Attribute, subset: np.ndarray, delta: float) -> FuzzyRelation:
    """Build the relation a single column induces on ``subset``."""
    if delta <= 0:
        raise ParamError(f"delta must be positive, got {delta}")
    subset = np.asarray(subset, dtype=np.intp)
    if subset.size == 0:
        raise ParamError("subset must be nonempty")
    if column.is_numerical:
        if column.normalized is None:
            raise ParamError(f"column {column.name!r} is not normalized; call normalize() first")
        matrix = _numerical_matrix(column.normalized[subset], delta)
    else:
        matrix = _nominal_matrix(column.values[subset])
    return FuzzyRelation(subset=subset, matrix=matrix, attribute_ids=(column.name,))


def relation_for_attribute(
    table: MixedTable, attribute: str, subset: Sequence[int], delta: float
) -> FuzzyRelation:
    """Build the relation ``attribute`` induces on ``subset`` of the table."""
    return relation_for_column(table.column(attribute), np.asarray(subset), delta)


def relation_for_set(relations: Sequence[FuzzyRelation]) -> FuzzyRelation:
    """Combine per-attribute relations with the elementwise minimum t-norm."""
    if not relations:
        raise ParamError("need at least one relation")
    first = relations[0]
    if len(relations) == 1:
        return first
    for rel in relations[1:]:
        if rel.size != first.size or not np.array_equal(rel.subset, first.subset):
            raise SubsetMismatch("relations were built over different object subsets")
    matrix = relations[0].matrix
    for rel in relations[1:]:
        matrix = np.minimum(matrix, rel.matrix)
    ids = tuple(a for rel in relations for a in rel.attribute_ids)
    return FuzzyRelation(subset=first.subset, matrix=matrix, attribute_ids=ids)


def dump_relation(rel: FuzzyRelation, path: str | Path) -> None:
    """Debug dump: k as little-endian uint64, then row-major little-endian f64."""
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", rel.size))
        fh.write(np.ascontiguousarray(rel.matrix, dtype="<f8").tobytes())


def load_relation_matrix(path: str | Path) -> np.ndarray:
    """Read back a matrix written by ``dump_relation``."""
    raw = Path(path).read_bytes()
    (k,) = struct.unpack_from("<Q", raw, 0)
    matrix = np.frombuffer(raw, dtype="<f8", offset=8, count=k * k)
    return matrix.reshape(k, k).astype(np.float64)
