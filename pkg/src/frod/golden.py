"""Built-in ten-object demo table with hand-verified reference values.

The table mixes a real-valued, an integer-valued, and a categorical column;
five objects carry labels and five do not. Every intermediate the pipeline
produces on it (radii, relation matrices, attribute weights, entropies,
factors, degrees) was computed by hand and frozen here, so re-running the
checks doubles as a post-install self-test of the whole library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .dataset import MixedTable, load_csv_text, normalize
from .detector import FrodConfig, detect, outlier_factor
from .entropy import EntropyState, fuzzy_relative_entropy, leave_one_out_entropy
from .relation import fuzzy_radius, relation_for_attribute
from .supervision import attribute_classification_accuracy, class_indicators

DEMO_CSV = """\
c1,c2,c3,d
0.53,7,C,1
0.48,8,C,0
0.50,7,B,0
0.48,8,B,0
0.51,8,B,0
0.52,7,C,
0.48,9,A,
0.47,8,A,
0.53,9,A,
0.48,9,B,
"""

LABELED = np.arange(5)
UNLABELED = np.arange(5, 10)

TOLERANCE = 1e-3

EXPECTED_RADII = {"c1": 0.3467, "c2": 0.24}

EXPECTED_LABELED_MATRICES = {
    "c1": np.array(
        [
            [1, 0, 0, 0, 0.667],
            [0, 1, 0.667, 1, 0],
            [0, 0.667, 1, 0.667, 0.833],
            [0, 1, 0.667, 1, 0],
            [0.667, 0, 0.833, 0, 1],
        ]
    ),
    "c2": np.array(
        [
            [1, 0, 1, 0, 0],
            [0, 1, 0, 1, 1],
            [1, 0, 1, 0, 0],
            [0, 1, 0, 1, 1],
            [0, 1, 0, 1, 1],
        ]
    ),
    "c3": np.array(
        [
            [1, 1, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 0, 1, 1, 1],
            [0, 0, 1, 1, 1],
            [0, 0, 1, 1, 1],
        ]
    ),
}

EXPECTED_UNLABELED_MATRICES = {
    "c1": np.array(
        [
            [1, 0, 0, 0.833, 0],
            [0, 1, 0.833, 0, 1],
            [0, 0.833, 1, 0, 0.833],
            [0.833, 0, 0, 1, 0],
            [0, 1, 0.833, 0, 1],
        ]
    ),
    "c2": np.array(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 0, 1, 1],
            [0, 0, 1, 0, 0],
            [0, 1, 0, 1, 1],
            [0, 1, 0, 1, 1],
        ]
    ),
    "c3": np.array(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 1, 1, 0],
            [0, 1, 1, 1, 0],
            [0, 1, 1, 1, 0],
            [0, 0, 0, 0, 1],
        ]
    ),
}

EXPECTED_GAMMAS = {"c1": 0.914, "c2": 0.6, "c3": 0.6}

EXPECTED_ENTROPY = {
    "fe_c1": 1.088,
    "fe_without_first_unlabeled_c1": 0.895,
    "fre_first_unlabeled_c1": 1.023,
    "of_first_unlabeled_c1": 0.619,
    "of_first_unlabeled_c2": 0.3542,
}

EXPECTED_DEGREES = np.array([0.670, 0.316, 0.467, 0.410, 0.446])

DEMO_THRESHOLD = 0.6
EXPECTED_OUTLIERS = np.array([5])


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: Union[float, np.ndarray]
    actual: Union[float, np.ndarray]
    ok: bool

    def describe(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        expected = np.asarray(self.expected, dtype=np.float64)
        actual = np.asarray(self.actual, dtype=np.float64)
        if expected.ndim == 0:
            return f"{status} {self.name}: got {float(actual):.6f}, expected {float(expected)}"
        if expected.shape != actual.shape:
            return f"{status} {self.name}: shape {actual.shape}, expected {expected.shape}"
        deviation = float(np.max(np.abs(actual - expected))) if expected.size else 0.0
        return f"{status} {self.name}: max |deviation| = {deviation:.6f}"


def demo_table() -> MixedTable:
    return normalize(load_csv_text(DEMO_CSV, label_column="d", name="demo"))


def _check(name: str, expected, actual) -> CheckResult:
    expected_arr = np.asarray(expected, dtype=np.float64)
    actual_arr = np.asarray(actual, dtype=np.float64)
    ok = expected_arr.shape == actual_arr.shape and bool(
        np.max(np.abs(expected_arr - actual_arr)) <= TOLERANCE
    )
    return CheckResult(name=name, expected=expected, actual=actual, ok=ok)


def run_checks(radius_scale: float = 1.0) -> list[CheckResult]:
    """Recompute every demo intermediate through the library and compare.

    ``radius_scale`` perturbs the computed radii before comparison; any value
    other than 1.0 must make the radius checks fail, which exercises the
    failure path of callers.
    """
    table = demo_table()
    checks: list[CheckResult] = []

    for name, expected in EXPECTED_RADII.items():
        column = table.column(name)
        radius = fuzzy_radius(column.normalized[LABELED], delta=1.0) * radius_scale
        checks.append(_check(f"radius_{name}", expected, radius))

    labeled_rels = {}
    for name, expected in EXPECTED_LABELED_MATRICES.items():
        rel = relation_for_attribute(table, name, LABELED, delta=1.0)
        labeled_rels[name] = rel
        checks.append(_check(f"labeled_matrix_{name}", expected, rel.matrix))

    unlabeled_rels = {}
    for name, expected in EXPECTED_UNLABELED_MATRICES.items():
        rel = relation_for_attribute(table, name, UNLABELED, delta=1.0)
        unlabeled_rels[name] = rel
        checks.append(_check(f"unlabeled_matrix_{name}", expected, rel.matrix))

    subset_labels = [table.labels[i] for i in LABELED]
    neg, pos = class_indicators(subset_labels, LABELED)
    for name, expected in EXPECTED_GAMMAS.items():
        weight = attribute_classification_accuracy(labeled_rels[name], neg, pos, beta=1.0)
        checks.append(_check(f"gamma_{name}", expected, weight.gamma))

    state_c1 = EntropyState(unlabeled_rels["c1"])
    state_c2 = EntropyState(unlabeled_rels["c2"])
    checks.append(_check("fe_c1", EXPECTED_ENTROPY["fe_c1"], state_c1.fe))
    checks.append(
        _check(
            "fe_without_first_unlabeled_c1",
            EXPECTED_ENTROPY["fe_without_first_unlabeled_c1"],
            leave_one_out_entropy(state_c1, 0),
        )
    )
    checks.append(
        _check(
            "fre_first_unlabeled_c1",
            EXPECTED_ENTROPY["fre_first_unlabeled_c1"],
            fuzzy_relative_entropy(state_c1, 0),
        )
    )
    checks.append(
        _check(
            "of_first_unlabeled_c1",
            EXPECTED_ENTROPY["of_first_unlabeled_c1"],
            outlier_factor(state_c1, 0),
        )
    )
    checks.append(
        _check(
            "of_first_unlabeled_c2",
            EXPECTED_ENTROPY["of_first_unlabeled_c2"],
            outlier_factor(state_c2, 0),
        )
    )

    result = detect(
        table,
        LABELED,
        UNLABELED,
        FrodConfig(delta=1.0, beta=1.0, threshold_override=DEMO_THRESHOLD),
    )
    checks.append(_check("outlier_degrees", EXPECTED_DEGREES, result.scores))
    flagged = result.unlabeled_ids[result.predictions]
    checks.append(
        CheckResult(
            name="outliers_at_threshold_0.6",
            expected=EXPECTED_OUTLIERS,
            actual=flagged,
            ok=np.array_equal(flagged, EXPECTED_OUTLIERS),
        )
    )
    return checks


def first_failure(checks: list[CheckResult]) -> Union[CheckResult, None]:
    for check in checks:
        if not check.ok:
            return check
    return None
