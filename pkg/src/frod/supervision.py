"""Attribute classification accuracy from the labeled subset.

The labeled objects split into a normal and an outlier class; an attribute's
usefulness is the approximation accuracy of the normal class plus beta times
that of the outlier class, both under the attribute's relation on the labeled
subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import Label
from .errors import DegenerateLabels, ParamError
from .relation import FuzzyRelation
from .rough import FuzzySet, approximation_accuracy


@dataclass(frozen=True)
class AttributeWeight:
    attribute: str
    gamma: float


def class_indicators(
    labels: Sequence[Label], universe: np.ndarray
) -> tuple[FuzzySet, FuzzySet]:
    """Crisp (normal, outlier) indicator vectors over the labeled subset."""
    if len(labels) != len(universe):
        raise ParamError("labels and universe must have the same length")
    neg = np.zeros(len(labels))
    pos = np.zeros(len(labels))
    for i, state in enumerate(labels):
        if state is Label.NORMAL:
            neg[i] = 1.0
        elif state is Label.OUTLIER:
            pos[i] = 1.0
        else:
            raise ParamError(f"object at position {i} is unlabeled")
    if not neg.any():
        raise DegenerateLabels("labeled subset has no normal object")
    if not pos.any():
        raise DegenerateLabels("labeled subset has no outlier object")
    universe = np.asarray(universe, dtype=np.intp)
    return FuzzySet(universe, neg), FuzzySet(universe, pos)


def class_accuracies(
    rel: FuzzyRelation, neg: FuzzySet, pos: FuzzySet
) -> tuple[float, float]:
    """Per-class approximation accuracies (normal first)."""
    return approximation_accuracy(rel, neg), approximation_accuracy(rel, pos)


def attribute_classification_accuracy(
    rel: FuzzyRelation, neg: FuzzySet, pos: FuzzySet, beta: float
) -> AttributeWeight:
    """gamma = acc(normal class) + beta * acc(outlier class)."""
    if beta <= 0:
        raise ParamError(f"beta must be positive, got {beta}")
    acc_neg, acc_pos = class_accuracies(rel, neg, pos)
    name = "+".join(rel.attribute_ids)
    return AttributeWeight(attribute=name, gamma=acc_neg + beta * acc_pos)
