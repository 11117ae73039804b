"""Mixed-attribute table ingestion, normalization, and labeled/unlabeled splitting.

A table holds numerical and nominal columns over objects 0..n-1 plus a
per-object label state (normal / outlier / unlabeled). Numerical columns are
min-max normalized to [0, 1] jointly over all objects; nominal columns are
stored as integer codes against their level list.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import LabelError, LoadError, ParamError, SchemaError, SplitError


class Kind(enum.Enum):
    NUMERICAL = "numerical"
    NOMINAL = "nominal"


class Label(enum.Enum):
    NORMAL = "normal"
    OUTLIER = "outlier"
    UNLABELED = "unlabeled"


DEFAULT_NORMAL_TOKENS = ("0",)
DEFAULT_OUTLIER_TOKENS = ("1",)
DEFAULT_UNLABELED_TOKENS = ("",)


@dataclass(frozen=True)
class Attribute:
    """One column: raw values plus their machine representation.

    Numerical columns keep float values and, after ``normalize``, a [0, 1]
    scaled copy. Nominal columns keep integer codes and the level list the
    codes index into; ``normalized`` stays None for them.
    """

    name: str
    kind: Kind
    values: np.ndarray
    normalized: Optional[np.ndarray] = None
    levels: tuple[str, ...] = ()

    @property
    def is_numerical(self) -> bool:
        return self.kind is Kind.NUMERICAL


@dataclass(frozen=True)
class MixedTable:
    """Immutable object table: typed columns plus per-object label states."""

    columns: tuple[Attribute, ...]
    labels: tuple[Label, ...]
    name: str = "table"

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n < 2:
            raise SchemaError("a table needs at least two objects")
        for col in self.columns:
            if len(col.values) != n:
                raise SchemaError(
                    f"column {col.name!r} has {len(col.values)} values, expected {n}"
                )

    @property
    def n_objects(self) -> int:
        return len(self.labels)

    @property
    def n_attributes(self) -> int:
        return len(self.columns)

    @property
    def is_normalized(self) -> bool:
        return all(c.normalized is not None for c in self.columns if c.is_numerical)

    def column(self, name: str) -> Attribute:
        for col in self.columns:
            if col.name == name:
                return col
        raise KeyError(name)

    def ids_with_label(self, label: Label) -> np.ndarray:
        return np.array([i for i, s in enumerate(self.labels) if s is label], dtype=np.intp)

    def label_counts(self) -> dict[Label, int]:
        counts = {label: 0 for label in Label}
        for s in self.labels:
            counts[s] += 1
        return counts


def _parse_schema(text: str) -> dict[str, Kind]:
    declared: dict[str, Kind] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise SchemaError(f"schema line {lineno}: expected 'name:kind', got {line!r}")
        name, _, kind_token = line.partition(":")
        token = kind_token.strip().lower()
        if token in ("numerical", "numeric"):
            kind = Kind.NUMERICAL
        elif token == "nominal":
            kind = Kind.NOMINAL
        else:
            raise SchemaError(f"schema line {lineno}: unknown kind {kind_token.strip()!r}")
        declared[name.strip()] = kind
    return declared


def _as_float(token: str) -> Optional[float]:
    try:
        return float(token)
    except ValueError:
        return None


def _build_column(name: str, cells: list[str], declared: Optional[Kind]) -> Attribute:
    for row_idx, cell in enumerate(cells):
        if cell == "":
            raise SchemaError(f"column {name!r}, row {row_idx}: empty cell (missing values unsupported)")

    floats = [_as_float(c) for c in cells]
    parses_numeric = all(v is not None for v in floats)

    kind = declared if declared is not None else (Kind.NUMERICAL if parses_numeric else Kind.NOMINAL)
    if kind is Kind.NUMERICAL:
        if not parses_numeric:
            bad = next(c for c, v in zip(cells, floats) if v is None)
            raise SchemaError(f"column {name!r} declared numerical but contains {bad!r}")
        return Attribute(name=name, kind=kind, values=np.array(floats, dtype=np.float64))

    levels = tuple(sorted(set(cells)))
    index = {level: i for i, level in enumerate(levels)}
    codes = np.array([index[c] for c in cells], dtype=np.int64)
    return Attribute(name=name, kind=kind, values=codes, levels=levels)


def _parse_label(token: str, normal: Sequence[str], outlier: Sequence[str], unlabeled: Sequence[str]) -> Label:
    if token in normal:
        return Label.NORMAL
    if token in outlier:
        return Label.OUTLIER
    if token in unlabeled:
        return Label.UNLABELED
    raise LabelError(f"unparseable label value {token!r}")


def load_csv_text(
    text: str,
    label_column: str,
    schema_text: Optional[str] = None,
    name: str = "table",
    normal_tokens: Sequence[str] = DEFAULT_NORMAL_TOKENS,
    outlier_tokens: Sequence[str] = DEFAULT_OUTLIER_TOKENS,
    unlabeled_tokens: Sequence[str] = DEFAULT_UNLABELED_TOKENS,
) -> MixedTable:
    """Parse RFC-4180 CSV text (header row required) into a MixedTable.

    Column kinds come from the optional schema (``name:kind`` lines) or are
    inferred: a column where every cell parses as a number is numerical,
    anything else nominal. Label cells map through the configured token sets.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty CSV: header row required") from None
    header = [h.strip() for h in header]
    if len(set(header)) != len(header):
        raise SchemaError("duplicate column names in header")
    if label_column not in header:
        raise SchemaError(f"label column {label_column!r} not found in header {header}")

    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise SchemaError(f"row {lineno}: expected {len(header)} cells, got {len(row)}")
        rows.append([c.strip() for c in row])
    if len(rows) < 2:
        raise SchemaError("a table needs at least two data rows")

    declared = _parse_schema(schema_text) if schema_text is not None else {}
    unknown = set(declared) - set(header)
    if unknown:
        raise SchemaError(f"schema declares unknown columns: {sorted(unknown)}")

    label_idx = header.index(label_column)
    labels = tuple(
        _parse_label(row[label_idx], normal_tokens, outlier_tokens, unlabeled_tokens) for row in rows
    )

    columns = []
    for idx, col_name in enumerate(header):
        if idx == label_idx:
            continue
        cells = [row[idx] for row in rows]
        columns.append(_build_column(col_name, cells, declared.get(col_name)))

    return MixedTable(columns=tuple(columns), labels=labels, name=name)


def load_csv(
    path: str | Path,
    label_column: str,
    schema: Optional[str | Path] = None,
    **kwargs,
) -> MixedTable:
    """Load a CSV file from disk; see ``load_csv_text`` for parsing rules."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    schema_text = None
    if schema is not None:
        try:
            schema_text = Path(schema).read_text(encoding="utf-8")
        except OSError as exc:
            raise LoadError(f"cannot read schema {schema}: {exc}") from exc
    kwargs.setdefault("name", path.stem)
    return load_csv_text(text, label_column=label_column, schema_text=schema_text, **kwargs)


def normalize(table: MixedTable) -> MixedTable:
    """Return a copy with every numerical column min-max scaled into [0, 1].

    Scaling is computed jointly over all objects (labeled and unlabeled).
    A constant column maps to all zeros rather than raising.
    """
    columns = []
    for col in table.columns:
        if not col.is_numerical:
            columns.append(col)
            continue
        lo = float(col.values.min())
        hi = float(col.values.max())
        if hi == lo:
            scaled = np.zeros_like(col.values)
        else:
            scaled = (col.values - lo) / (hi - lo)
        columns.append(replace(col, normalized=scaled))
    return replace(table, columns=tuple(columns))


def stratified_split(
    table: MixedTable, labeled_fraction: float, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Split fully labeled objects into (labeled ids, unlabeled ids).

    The labeled side keeps the global outlier proportion within rounding:
    its size is floor(n * fraction) and its outlier count is the half-up
    rounding of size * global outlier rate. Deterministic for a fixed seed.
    """
    if not 0.0 < labeled_fraction < 1.0:
        raise ParamError(f"labeled_fraction must be in (0, 1), got {labeled_fraction}")
    counts = table.label_counts()
    if counts[Label.UNLABELED]:
        raise SplitError("stratified_split needs ground-truth labels for every object")

    n = table.n_objects
    outlier_ids = table.ids_with_label(Label.OUTLIER)
    normal_ids = table.ids_with_label(Label.NORMAL)

    n_labeled = int(n * labeled_fraction)
    n_pos = int(n_labeled * (len(outlier_ids) / n) + 0.5)
    n_neg = n_labeled - n_pos
    if n_pos < 1:
        raise SplitError(
            f"fraction {labeled_fraction} yields zero labeled outliers; raise the fraction"
        )
    if n_neg < 1:
        raise SplitError(
            f"fraction {labeled_fraction} yields zero labeled normals; raise the fraction"
        )

    rng = np.random.default_rng(seed)
    picked_pos = rng.permutation(outlier_ids)[:n_pos]
    picked_neg = rng.permutation(normal_ids)[:n_neg]
    labeled = np.sort(np.concatenate([picked_pos, picked_neg]))
    mask = np.ones(n, dtype=bool)
    mask[labeled] = False
    unlabeled = np.flatnonzero(mask)
    return labeled, unlabeled


def mask_labels(table: MixedTable, labeled_ids: Iterable[int]) -> MixedTable:
    """Return a copy where only ``labeled_ids`` keep their label state."""
    keep = set(int(i) for i in labeled_ids)
    labels = tuple(
        s if i in keep else Label.UNLABELED for i, s in enumerate(table.labels)
    )
    return replace(table, labels=labels)


def bundled_path(dataset: str) -> Path:
    """Path to a dataset CSV shipped with the package (e.g. ``ionosphere``)."""
    ref = resources.files("frod").joinpath("data", f"{dataset}.csv")
    path = Path(str(ref))
    if not path.exists():
        raise LoadError(f"no bundled dataset named {dataset!r}")
    return path
