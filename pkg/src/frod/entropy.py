"""Fuzzy information entropy and leave-one-out fuzzy relative entropy.

The base entropy of a relation over k objects is
``-(1/k) * sum_i log2(card_i / k)`` with card_i the similarity-class
cardinality (row sum). Removing object i shrinks every remaining class by
exactly r_ij (symmetry), so the leave-one-out entropy can be evaluated from
the memoized row sums in O(k) instead of rebuilding the submatrix:

    FE_wo(i) = -(1/(k-1)) * sum_{j != i} log2((card_j - r_ij) / (k-1))

Relative entropy of object i is FE_wo(i)/FE plus the smoothing term 1/k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParamError, ZeroEntropy
from .relation import FuzzyRelation


@dataclass(frozen=True)
class EntropyState:
    """Memoized quantities for repeated relative-entropy queries on one relation."""

    relation: FuzzyRelation
    cardinalities: np.ndarray = field(init=False)
    fe: float = field(init=False)
    lam: float = field(init=False)

    def __post_init__(self) -> None:
        k = self.relation.size
        cards = self.relation.matrix.sum(axis=1)
        object.__setattr__(self, "cardinalities", cards)
        object.__setattr__(self, "fe", _entropy_from_cards(cards, k))
        object.__setattr__(self, "lam", 1.0 / k)

    @property
    def size(self) -> int:
        return self.relation.size


def _entropy_from_cards(cards: np.ndarray, k: int) -> float:
    # reflexivity guarantees cards >= 1, so the log argument is positive
    return float(-np.log2(cards / k).sum() / k)


def fuzzy_entropy(rel: FuzzyRelation) -> float:
    """Base fuzzy information entropy of a relation."""
    return _entropy_from_cards(rel.matrix.sum(axis=1), rel.size)


def _check_index(state: EntropyState, i: int) -> None:
    if not 0 <= i < state.size:
        raise IndexError(f"object index {i} out of range for size {state.size}")


def leave_one_out_entropy(state: EntropyState, i: int) -> float:
    """Entropy of the relation restricted to all objects except i.

    Uses the memoized row sums; equals a from-scratch recomputation on the
    (k-1) x (k-1) submatrix.
    """
    _check_index(state, i)
    k = state.size
    if k < 2:
        raise ParamError("leave-one-out entropy needs at least two objects")
    remaining = np.delete(state.cardinalities - state.relation.matrix[i], i)
    return _entropy_from_cards(remaining, k - 1)


def leave_one_out_entropies(state: EntropyState) -> np.ndarray:
    """Leave-one-out entropy for every object at once (O(k^2) total)."""
    k = state.size
    if k < 2:
        raise ParamError("leave-one-out entropy needs at least two objects")
    shrunk = state.cardinalities[None, :] - state.relation.matrix
    np.fill_diagonal(shrunk, k - 1.0)  # ratio 1 contributes log2(1) = 0
    return -np.log2(shrunk / (k - 1)).sum(axis=1) / (k - 1)


def fuzzy_relative_entropy(state: EntropyState, i: int) -> float:
    """FE without object i over the base FE, plus the 1/k smoothing term."""
    _check_index(state, i)
    if state.fe == 0.0:
        raise ZeroEntropy("base entropy is zero; every object is maximally typical")
    return leave_one_out_entropy(state, i) / state.fe + state.lam


def relative_entropies(state: EntropyState) -> np.ndarray:
    """Fuzzy relative entropy for every object.

    When the base entropy is zero (all objects mutually similar) no object is
    distinguishable and every entry is the degenerate-case value 1 + lambda.
    """
    if state.fe == 0.0:
        return np.full(state.size, 1.0 + state.lam)
    return leave_one_out_entropies(state) / state.fe + state.lam
