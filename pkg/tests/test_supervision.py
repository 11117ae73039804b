import numpy as np
import pytest

from frod import (
    FuzzyRelation,
    attribute_classification_accuracy,
    class_accuracies,
    class_indicators,
    relation_for_attribute,
)
from frod.dataset import Label
from frod.errors import DegenerateLabels, ParamError

LABELED = np.arange(5)
DEMO_LABELS = [Label.OUTLIER, Label.NORMAL, Label.NORMAL, Label.NORMAL, Label.NORMAL]


def test_class_indicators_demo():
    neg, pos = class_indicators(DEMO_LABELS, LABELED)
    assert np.array_equal(neg.membership, [0, 1, 1, 1, 1])
    assert np.array_equal(pos.membership, [1, 0, 0, 0, 0])
    assert np.array_equal(neg.membership + pos.membership, np.ones(5))


def test_class_indicators_all_normal_raises():
    with pytest.raises(DegenerateLabels):
        class_indicators([Label.NORMAL] * 4, np.arange(4))


def test_class_indicators_all_outlier_raises():
    with pytest.raises(DegenerateLabels):
        class_indicators([Label.OUTLIER] * 4, np.arange(4))


def test_class_indicators_swap_symmetry():
    swapped = [
        Label.NORMAL if s is Label.OUTLIER else Label.OUTLIER for s in DEMO_LABELS
    ]
    neg, pos = class_indicators(DEMO_LABELS, LABELED)
    neg2, pos2 = class_indicators(swapped, LABELED)
    assert np.array_equal(neg.membership, pos2.membership)
    assert np.array_equal(pos.membership, neg2.membership)


def test_class_indicators_rejects_unlabeled():
    with pytest.raises(ParamError):
        class_indicators([Label.NORMAL, Label.UNLABELED, Label.OUTLIER], np.arange(3))


class TestGamma:
    @pytest.fixture()
    def indicators(self):
        return class_indicators(DEMO_LABELS, LABELED)

    @pytest.mark.parametrize("attr,expected", [("c1", 0.914), ("c2", 0.6), ("c3", 0.6)])
    def test_demo_values(self, demo_table, indicators, attr, expected):
        rel = relation_for_attribute(demo_table, attr, LABELED, delta=1.0)
        weight = attribute_classification_accuracy(rel, *indicators, beta=1.0)
        assert weight.gamma == pytest.approx(expected, abs=1e-3)
        assert weight.attribute == attr

    def test_linear_in_beta(self, demo_table, indicators):
        rel = relation_for_attribute(demo_table, "c1", LABELED, delta=1.0)
        g1 = attribute_classification_accuracy(rel, *indicators, beta=1.0).gamma
        g2 = attribute_classification_accuracy(rel, *indicators, beta=2.0).gamma
        a_neg, a_pos = class_accuracies(rel, *indicators)
        # gamma(beta) = acc_neg + beta * acc_pos, recoverable from two evaluations
        assert g2 - g1 == pytest.approx(a_pos, abs=1e-12)
        assert g1 - a_pos == pytest.approx(a_neg, abs=1e-12)

    def test_identity_relation_gives_one_plus_beta(self, indicators):
        identity = FuzzyRelation(LABELED, np.eye(5), ("id",))
        for beta in (0.5, 1.0, 7.0):
            weight = attribute_classification_accuracy(identity, *indicators, beta=beta)
            assert weight.gamma == pytest.approx(1.0 + beta, abs=1e-12)

    def test_nonnegative_on_random_relations(self, indicators):
        from helpers import random_relation

        rng = np.random.default_rng(5)
        for _ in range(20):
            rel = random_relation(rng, 5)
            weight = attribute_classification_accuracy(rel, *indicators, beta=1.0)
            assert weight.gamma >= 0.0

    def test_invalid_beta(self, demo_table, indicators):
        rel = relation_for_attribute(demo_table, "c1", LABELED, delta=1.0)
        with pytest.raises(ParamError):
            attribute_classification_accuracy(rel, *indicators, beta=0.0)
