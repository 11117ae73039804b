"""Fuzzy rough set primitives: approximations, cardinality, accuracies.

Universes are finite, so infimum/supremum are realized as min/max. All
operations are pure functions of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSet, UniverseMismatch
from .relation import FuzzyRelation


@dataclass(frozen=True)
class FuzzySet:
    """Membership vector over an ordered object universe."""

    universe: np.ndarray
    membership: np.ndarray

    def __post_init__(self) -> None:
        if len(self.universe) != len(self.membership):
            raise UniverseMismatch("membership length does not match universe size")
        if self.membership.size and (
            self.membership.min() < 0.0 or self.membership.max() > 1.0
        ):
            raise ValueError("membership values must lie in [0, 1]")

    @property
    def cardinality(self) -> float:
        return float(self.membership.sum())


def _check_universe(rel: FuzzyRelation, x: FuzzySet) -> None:
    if rel.size != len(x.universe) or not np.array_equal(rel.subset, x.universe):
        raise UniverseMismatch("fuzzy set universe differs from relation subset")


def lower_approximation(rel: FuzzyRelation, x: FuzzySet) -> FuzzySet:
    """Degree to which each object certainly belongs to x.

    out(i) = min over j of max(1 - r_ij, x_j).
    """
    _check_universe(rel, x)
    out = np.maximum(1.0 - rel.matrix, x.membership[None, :]).min(axis=1)
    return FuzzySet(universe=x.universe, membership=out)


def upper_approximation(rel: FuzzyRelation, x: FuzzySet) -> FuzzySet:
    """Degree to which each object possibly belongs to x.

    out(i) = max over j of min(r_ij, x_j).
    """
    _check_universe(rel, x)
    out = np.minimum(rel.matrix, x.membership[None, :]).max(axis=1)
    return FuzzySet(universe=x.universe, membership=out)


def approximation_accuracy(rel: FuzzyRelation, x: FuzzySet) -> float:
    """|lower(x)| / |upper(x)|; in (0, 1] for crisp nonempty x and reflexive rel."""
    upper_card = upper_approximation(rel, x).cardinality
    if upper_card == 0.0:
        raise DegenerateSet("upper approximation has zero cardinality")
    return lower_approximation(rel, x).cardinality / upper_card


def similarity_class(rel: FuzzyRelation, i: int) -> FuzzySet:
    """Row i of the relation: the fuzzy similarity class centered at object i."""
    if not 0 <= i < rel.size:
        raise IndexError(f"object index {i} out of range for size {rel.size}")
    return FuzzySet(universe=rel.subset, membership=rel.matrix[i].copy())


def decision_faa(rel: FuzzyRelation, classes: list[FuzzySet]) -> float:
    """Approximation accuracy of a class partition by the relation.

    |union of lower approximations| / sum of upper approximation cardinalities,
    where union is the pointwise maximum.
    """
    if not classes:
        raise DegenerateSet("need at least one class")
    union_lower = None
    upper_total = 0.0
    for cls in classes:
        lower = lower_approximation(rel, cls).membership
        union_lower = lower if union_lower is None else np.maximum(union_lower, lower)
        upper_total += upper_approximation(rel, cls).cardinality
    if upper_total == 0.0:
        raise DegenerateSet("all upper approximations are empty")
    return float(union_lower.sum()) / upper_total
