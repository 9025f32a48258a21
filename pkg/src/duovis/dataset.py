"""Typed tabular datasets loaded from CSV.

A dataset is immutable after load. Column typing is inferred once, at load
time, with a deterministic rule:

* a column is quantitative iff at least 95% of its non-missing cells parse
  as finite numbers; everything else is categorical;
* a quantitative column is additionally flagged ``discrete`` when all of its
  values are integers, it has at most ``DISCRETE_MAX_DISTINCT`` distinct
  values, and strictly fewer distinct values than rows (so identifier-like
  integer columns stay continuous).

Missing cells (empty field or the literal ``NA``) are recorded, never
dropped; cells that fail the column's numeric parse are flagged missing
rather than silently coerced.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np

from .errors import DuplicateAttributeName, MalformedCsv, UnknownAttribute

RowId = int
Cell = Union[float, str, None]

QUANTITATIVE_SHARE = 0.95
DISCRETE_MAX_DISTINCT = 12
MISSING_TOKENS = {"", "NA"}


def _parse_number(text: str) -> float | None:
    """Parse a finite number, or return None. Rejects nan/inf tokens."""
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class Attribute:
    """Metadata for one column.

    ``extent`` is present only for quantitative columns; ``categories``
    (distinct values in first-appearance order) only for categorical or
    discrete ones.
    """

    name: str
    kind: str  # "quantitative" | "categorical"
    discrete: bool
    distinct_count: int
    missing_count: int
    extent: tuple[float, float] | None = None
    categories: tuple[Cell, ...] | None = None

    @property
    def is_quantitative(self) -> bool:
        return self.kind == "quantitative"

    @property
    def is_categorical(self) -> bool:
        return self.kind == "categorical"

    @property
    def has_categories(self) -> bool:
        return self.categories is not None


@dataclass(frozen=True)
class Row:
    id: RowId
    cells: dict[str, Cell]


@dataclass
class Dataset:
    """Immutable-after-load table plus per-column access structures."""

    id: str
    attributes: list[Attribute]
    rows: list[Row]
    source_ref: str | None = None
    _columns: dict[str, list[Cell]] = field(default_factory=dict, repr=False)
    _numeric: dict[str, np.ndarray] = field(default_factory=dict, repr=False)
    _value_rows: dict[str, dict[Cell, list[RowId]]] = field(
        default_factory=dict, repr=False
    )

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def attribute_names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def attribute(self, name: str) -> Attribute:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UnknownAttribute(f"no attribute named {name!r}")

    def has_attribute(self, name: str) -> bool:
        return any(a.name == name for a in self.attributes)

    def column(self, name: str) -> list[Cell]:
        if name not in self._columns:
            self.attribute(name)  # raises UnknownAttribute
        return self._columns[name]

    def numeric_column(self, name: str) -> np.ndarray:
        """Float array for a quantitative column; missing cells are NaN."""
        attr = self.attribute(name)
        if not attr.is_quantitative:
            raise UnknownAttribute(f"{name!r} is not quantitative")
        return self._numeric[name]

    def rows_with_value(self, name: str, value: Cell) -> list[RowId]:
        """Row ids holding ``value`` in a categorical/discrete column."""
        index = self._value_rows.get(name)
        if index is None:
            attr = self.attribute(name)
            if not attr.has_categories:
                raise UnknownAttribute(f"{name!r} has no category index")
            index = {}
            for rid, cell in enumerate(self._columns[name]):
                if cell is None:
                    continue
                index.setdefault(cell, []).append(rid)
            self._value_rows[name] = index
        return index.get(value, [])

    def value(self, row_id: RowId, name: str) -> Cell:
        return self._columns[name][row_id]


def _type_column(name: str, raw: list[str | None]) -> tuple[Attribute, list[Cell]]:
    """Infer one column's Attribute and produce its typed cells."""
    non_missing = [c for c in raw if c is not None]
    numbers = [_parse_number(c) for c in non_missing]
    numeric_count = sum(1 for n in numbers if n is not None)
    quantitative = (
        len(non_missing) > 0
        and numeric_count >= QUANTITATIVE_SHARE * len(non_missing)
    )

    if quantitative:
        cells: list[Cell] = [
            _parse_number(c) if c is not None else None for c in raw
        ]
        values = [c for c in cells if c is not None]
        distinct: list[float] = []
        seen: set[float] = set()
        for v in values:
            if v not in seen:
                seen.add(v)
                distinct.append(v)
        discrete = (
            len(distinct) <= DISCRETE_MAX_DISTINCT
            and len(distinct) < len(raw)
            and all(float(v).is_integer() for v in distinct)
        )
        attr = Attribute(
            name=name,
            kind="quantitative",
            discrete=discrete,
            distinct_count=len(distinct),
            missing_count=len(raw) - len(values),
            extent=(min(values), max(values)) if values else None,
            categories=tuple(distinct) if discrete else None,
        )
        return attr, cells

    cells = list(raw)
    distinct_cat: list[Cell] = []
    seen_cat: set[Cell] = set()
    for c in cells:
        if c is not None and c not in seen_cat:
            seen_cat.add(c)
            distinct_cat.append(c)
    attr = Attribute(
        name=name,
        kind="categorical",
        discrete=False,
        distinct_count=len(distinct_cat),
        missing_count=sum(1 for c in cells if c is None),
        categories=tuple(distinct_cat),
    )
    return attr, cells


def load_csv(
    source: Union[str, Path, bytes, IO[bytes]],
    *,
    delimiter: str = ",",
    header: bool = True,
    dataset_id: str | None = None,
) -> Dataset:
    """Load a delimited UTF-8 file into a typed Dataset.

    Row ids are assigned 0..n-1 in file order and stay stable for the
    dataset's lifetime. Raises MalformedCsv on empty input or ragged rows
    and DuplicateAttributeName on repeated header names.
    """
    source_ref: str | None = None
    if isinstance(source, (str, Path)):
        source_ref = str(source)
        data = Path(source).read_bytes()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()

    text = data.decode("utf-8-sig")
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
    lines = [row for row in reader if row]  # csv yields [] for blank lines
    if not lines:
        raise MalformedCsv("empty input")

    if header:
        names = [h.strip() for h in lines[0]]
        body = lines[1:]
    else:
        names = [f"col_{i}" for i in range(len(lines[0]))]
        body = lines
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateAttributeName(f"duplicate column name(s): {dupes}")

    width = len(names)
    raw_columns: list[list[str | None]] = [[] for _ in range(width)]
    for line_no, record in enumerate(body, start=2 if header else 1):
        if len(record) != width:
            raise MalformedCsv(
                f"line {line_no}: expected {width} fields, got {len(record)}"
            )
        for i, cell in enumerate(record):
            raw_columns[i].append(None if cell in MISSING_TOKENS else cell)

    attributes: list[Attribute] = []
    columns: dict[str, list[Cell]] = {}
    for name, raw in zip(names, raw_columns):
        attr, cells = _type_column(name, raw)
        attributes.append(attr)
        columns[name] = cells

    rows = [
        Row(id=i, cells={n: columns[n][i] for n in names})
        for i in range(len(body))
    ]
    numeric = {
        a.name: np.array(
            [np.nan if c is None else c for c in columns[a.name]],
            dtype=np.float64,
        )
        for a in attributes
        if a.is_quantitative
    }
    ds_id = dataset_id or (Path(source_ref).stem if source_ref else "dataset")
    return Dataset(
        id=ds_id,
        attributes=attributes,
        rows=rows,
        source_ref=source_ref,
        _columns=columns,
        _numeric=numeric,
    )


def attribute_stats(dataset: Dataset, attr_name: str) -> dict:
    """Exact per-column stats: extent or categories, distinct and missing counts."""
    attr = dataset.attribute(attr_name)
    stats: dict = {
        "distinct_count": attr.distinct_count,
        "missing_count": attr.missing_count,
    }
    if attr.is_quantitative:
        stats["extent"] = list(attr.extent) if attr.extent else None
    if attr.has_categories:
        stats["categories"] = list(attr.categories or ())
    return stats


def mini_dataset(
    columns: dict[str, Iterable[Cell]], dataset_id: str = "inline"
) -> Dataset:
    """Build a dataset from in-memory columns (test and benchmark helper)."""
    names = list(columns)
    lists = {n: list(v) for n, v in columns.items()}
    n_rows = len(next(iter(lists.values()))) if lists else 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(names)
    for i in range(n_rows):
        writer.writerow(
            ["" if lists[n][i] is None else lists[n][i] for n in names]
        )
    return load_csv(buf.getvalue().encode("utf-8"), dataset_id=dataset_id)
