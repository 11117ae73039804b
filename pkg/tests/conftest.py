import pytest

from frod import bundled_path, load_csv, load_csv_text, normalize
from frod.golden import DEMO_CSV


@pytest.fixture(scope="session")
def demo_table():
    return normalize(load_csv_text(DEMO_CSV, label_column="d", name="demo"))


@pytest.fixture()
def demo_csv_path(tmp_path):
    path = tmp_path / "demo.csv"
    path.write_text(DEMO_CSV, encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def ionosphere_table():
    return normalize(load_csv(bundled_path("ionosphere"), label_column="label"))
