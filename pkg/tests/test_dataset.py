import numpy as np
import pytest

from frod import Kind, Label, load_csv, load_csv_text, mask_labels, normalize, stratified_split
from frod.dataset import bundled_path
from frod.errors import LabelError, LoadError, ParamError, SchemaError, SplitError
from frod.golden import DEMO_CSV


class TestLoadCsv:
    def test_demo_table_kinds_and_labels(self, demo_table):
        assert [c.kind for c in demo_table.columns] == [Kind.NUMERICAL, Kind.NUMERICAL, Kind.NOMINAL]
        counts = demo_table.label_counts()
        assert counts[Label.NORMAL] == 4
        assert counts[Label.OUTLIER] == 1
        assert counts[Label.UNLABELED] == 5

    def test_all_numeric_column_inferred_numerical(self):
        table = load_csv_text("a,label\n1,0\n2.5,1\n-3,0\n", label_column="label")
        assert table.column("a").kind is Kind.NUMERICAL

    def test_single_non_numeric_token_makes_nominal(self):
        table = load_csv_text("a,label\n1,0\n2.5,1\nfoo,0\n", label_column="label")
        assert table.column("a").kind is Kind.NOMINAL

    def test_schema_declares_nominal_for_numeric_values(self):
        table = load_csv_text(
            "a,label\n1,0\n2,1\n", label_column="label", schema_text="a:nominal"
        )
        assert table.column("a").kind is Kind.NOMINAL

    def test_schema_conflict_raises(self):
        with pytest.raises(SchemaError):
            load_csv_text(
                "a,label\n1,0\nfoo,1\n", label_column="label", schema_text="a:numerical"
            )

    def test_schema_unknown_column(self):
        with pytest.raises(SchemaError):
            load_csv_text("a,label\n1,0\n2,1\n", label_column="label", schema_text="b:nominal")

    def test_schema_unknown_kind(self):
        with pytest.raises(SchemaError):
            load_csv_text("a,label\n1,0\n2,1\n", label_column="label", schema_text="a:ordinal")

    def test_empty_cell_rejected(self):
        with pytest.raises(SchemaError):
            load_csv_text("a,b,label\n1,,0\n2,3,1\n", label_column="label")

    def test_unparseable_label(self):
        with pytest.raises(LabelError):
            load_csv_text("a,label\n1,0\n2,maybe\n", label_column="label")

    def test_label_aliases(self):
        table = load_csv_text(
            "a,label\n1,ok\n2,bad\n3,?\n",
            label_column="label",
            normal_tokens=("ok",),
            outlier_tokens=("bad",),
            unlabeled_tokens=("?",),
        )
        assert table.labels == (Label.NORMAL, Label.OUTLIER, Label.UNLABELED)

    def test_missing_label_column(self):
        with pytest.raises(SchemaError):
            load_csv_text("a,b\n1,2\n3,4\n", label_column="label")

    def test_duplicate_header(self):
        with pytest.raises(SchemaError):
            load_csv_text("a,a,label\n1,2,0\n3,4,1\n", label_column="label")

    def test_missing_file(self, tmp_path):
        with pytest.raises(LoadError):
            load_csv(tmp_path / "nope.csv", label_column="label")

    def test_load_csv_roundtrip(self, demo_csv_path):
        table = load_csv(demo_csv_path, label_column="d")
        assert table.n_objects == 10
        assert table.name == "demo"

    def test_bundled_ionosphere(self):
        path = bundled_path("ionosphere")
        table = load_csv(path, label_column="label")
        assert table.n_objects == 351
        assert table.n_attributes == 33
        assert table.label_counts()[Label.OUTLIER] == 126

    def test_bundled_unknown_name(self):
        with pytest.raises(LoadError):
            bundled_path("no-such-dataset")


class TestNormalize:
    def test_demo_c1_values(self, demo_table):
        # hand min-max over the ten raw values: min 0.47, max 0.53
        c1 = demo_table.column("c1").normalized
        assert c1[0] == pytest.approx(1.0, abs=1e-12)
        assert c1[1] == pytest.approx(0.1667, abs=1e-4)
        assert c1[5] == pytest.approx(0.8333, abs=1e-4)

    def test_constant_column_all_zeros(self):
        table = load_csv_text("a,label\n3,0\n3,1\n3,0\n", label_column="label")
        table = normalize(table)
        assert np.array_equal(table.column("a").normalized, np.zeros(3))

    def test_unit_interval_column_unchanged(self):
        table = load_csv_text("a,label\n0,0\n1,1\n0.25,0\n", label_column="label")
        table = normalize(table)
        assert np.array_equal(table.column("a").normalized, np.array([0.0, 1.0, 0.25]))

    def test_idempotent(self):
        rng = np.random.default_rng(0)
        lines = ["a,b,label"] + [f"{v:.6f},{w:.6f},0" for v, w in rng.random((20, 2))]
        table = normalize(load_csv_text("\n".join(lines) + "\n", label_column="label"))
        again = normalize(table)
        for name in ("a", "b"):
            assert np.array_equal(table.column(name).normalized, again.column(name).normalized)

    def test_min_zero_max_one_unless_constant(self):
        rng = np.random.default_rng(1)
        for trial in range(20):
            values = rng.normal(size=10) * rng.uniform(0.1, 100)
            lines = ["a,label"] + [f"{v:.8f},0" for v in values]
            table = normalize(load_csv_text("\n".join(lines) + "\n", label_column="label"))
            col = table.column("a").normalized
            assert col.min() == 0.0
            assert col.max() == pytest.approx(1.0, abs=1e-12)

    def test_nominal_column_has_no_normalized(self, demo_table):
        assert demo_table.column("c3").normalized is None


def _fully_labeled_table(n, n_outliers, seed=0):
    rng = np.random.default_rng(seed)
    lines = ["a,label"]
    for i in range(n):
        label = "1" if i < n_outliers else "0"
        lines.append(f"{rng.random():.6f},{label}")
    return load_csv_text("\n".join(lines) + "\n", label_column="label")


class TestStratifiedSplit:
    def test_exact_proportionality(self):
        table = _fully_labeled_table(1000, 100)
        labeled, unlabeled = stratified_split(table, 0.1, seed=3)
        assert len(labeled) == 100
        truth = [table.labels[i] for i in labeled]
        assert sum(s is Label.OUTLIER for s in truth) == 10

    def test_small_fraction_rounding(self):
        # 452 objects with 66 outliers at 1%: 4 labeled, outlier share rounds to 1
        table = _fully_labeled_table(452, 66)
        labeled, _ = stratified_split(table, 0.01, seed=5)
        assert len(labeled) == 4
        truth = [table.labels[i] for i in labeled]
        assert sum(s is Label.OUTLIER for s in truth) == 1

    def test_same_seed_same_split(self):
        table = _fully_labeled_table(200, 40)
        a = stratified_split(table, 0.1, seed=11)
        b = stratified_split(table, 0.1, seed=11)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_partition(self):
        table = _fully_labeled_table(97, 13)
        labeled, unlabeled = stratified_split(table, 0.2, seed=2)
        combined = np.sort(np.concatenate([labeled, unlabeled]))
        assert np.array_equal(combined, np.arange(97))
        assert np.intersect1d(labeled, unlabeled).size == 0

    def test_zero_outliers_raises(self):
        table = _fully_labeled_table(300, 3)
        with pytest.raises(SplitError):
            stratified_split(table, 0.01, seed=0)

    def test_bad_fraction(self):
        table = _fully_labeled_table(50, 10)
        for fraction in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ParamError):
                stratified_split(table, fraction, seed=0)

    def test_needs_full_ground_truth(self, demo_table):
        with pytest.raises(SplitError):
            stratified_split(demo_table, 0.5, seed=0)


def test_mask_labels(demo_table):
    masked = mask_labels(demo_table, [0, 1])
    assert masked.labels[0] is Label.OUTLIER
    assert masked.labels[1] is Label.NORMAL
    assert all(s is Label.UNLABELED for s in masked.labels[2:])


def test_demo_csv_matches_fixture(demo_table):
    from frod.golden import demo_table as golden_demo

    table = golden_demo()
    assert table.labels == demo_table.labels
    assert DEMO_CSV.count("\n") == 11  # header plus ten data rows
    for mine, theirs in zip(table.columns, demo_table.columns):
        assert mine.name == theirs.name and mine.kind is theirs.kind
