"""Abstract view model: the mark geometry both the UI and the intent engine
read.

Coordinates are normalized to [0, 1]; the client owns pixel mapping.
Scatterplots map x/y linearly over each attribute's full-dataset extent so
marks stay put under filtering. Bars are centered in equal slots and bar
heights are proportional to the per-category mean of the y attribute
(tallest bar = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dataset import Cell, Dataset
from .errors import InvalidSpec, MissingAxes
from .palettes import (
    ColorPalette,
    DEFAULT_MARK_COLOR,
    default_categorical_palette,
    default_ramp_palette,
)
from .visspec import (
    Channel,
    SortDirection,
    VisSpec,
    VisType,
    validate,
    visible_mark_rows,
)

DEFAULT_SIZE = 0.5
SIZE_MIN = 0.15


@dataclass(frozen=True)
class Mark:
    mark_id: str
    source: Cell  # row id for points, category value for bars
    x: float
    y: float
    size: float
    color: str
    y0: float = 0.0  # stacked-segment baseline; 0 elsewhere
    stack_value: Optional[Cell] = None


@dataclass(frozen=True)
class AxisInfo:
    attribute: str
    kind: str
    extent: Optional[tuple[float, float]] = None
    categories: Optional[tuple[Cell, ...]] = None


@dataclass(frozen=True)
class ViewModel:
    marks: tuple[Mark, ...]
    axes: dict[str, AxisInfo]
    bar_order: Optional[tuple[Cell, ...]]
    revision: int


def _normalize(value: float, extent: tuple[float, float]) -> float:
    lo, hi = extent
    if hi == lo:
        return 0.5
    return (value - lo) / (hi - lo)


def effective_palette(spec: VisSpec, dataset: Dataset) -> Optional[ColorPalette]:
    """The palette render uses for the color channel: the binding's own
    palette, or a deterministic default for the bound attribute."""
    binding = spec.binding(Channel.COLOR)
    if binding is None:
        return None
    if binding.palette is not None:
        return binding.palette
    attr = dataset.attribute(binding.attribute)
    if attr.has_categories:
        return default_categorical_palette(attr.categories or ())
    return default_ramp_palette(attr.extent or (0.0, 1.0))


def category_means(
    dataset: Dataset, category_attr: str, value_attr: str, row_ids: list[int]
) -> dict[Cell, float]:
    """Mean of ``value_attr`` per ``category_attr`` value over ``row_ids``.

    Rows missing either cell are skipped; categories with no usable rows are
    absent from the result.
    """
    cat_attr = dataset.attribute(category_attr)
    val_attr = dataset.attribute(value_attr)
    if cat_attr.has_categories and val_attr.is_quantitative:
        numeric = dataset.numeric_column(value_attr)
        mask = np.zeros(dataset.row_count, dtype=bool)
        if row_ids:
            mask[np.asarray(list(row_ids), dtype=int)] = True
        out: dict[Cell, float] = {}
        for cat in cat_attr.categories or ():
            rows = np.asarray(
                dataset.rows_with_value(category_attr, cat), dtype=int
            )
            if rows.size == 0:
                continue
            rows = rows[mask[rows]]
            values = numeric[rows]
            values = values[~np.isnan(values)]
            if values.size:
                out[cat] = float(values.sum() / values.size)
        return out

    sums: dict[Cell, float] = {}
    counts: dict[Cell, int] = {}
    cat_col = dataset.column(category_attr)
    val_col = dataset.column(value_attr)
    for rid in row_ids:
        cat = cat_col[rid]
        val = val_col[rid]
        if cat is None or val is None:
            continue
        sums[cat] = sums.get(cat, 0.0) + float(val)
        counts[cat] = counts.get(cat, 0) + 1
    return {c: sums[c] / counts[c] for c in sums}


def order_categories(
    categories: list[Cell],
    means: dict[Cell, float],
    direction: SortDirection,
    file_order: list[Cell],
) -> list[Cell]:
    """Sort categories by mean; no computable mean sorts last; ties keep
    first-appearance order."""
    order_index = {c: i for i, c in enumerate(file_order)}
    reverse = direction == SortDirection.DESCENDING

    def key(cat: Cell):
        has_mean = cat in means
        mean = means.get(cat, 0.0)
        return (0 if has_mean else 1, -mean if reverse else mean, order_index[cat])

    return sorted(categories, key=key)


def bar_category_order(
    dataset: Dataset, spec: VisSpec, row_ids: list[int]
) -> list[Cell]:
    """Visible categories ordered per the sort state.

    Unsorted order is first appearance in the file; sorting orders by the
    per-category mean of the sort attribute.
    """
    x_attr = dataset.attribute(spec.bound_attribute(Channel.X) or "")
    all_categories = list(x_attr.categories or ())
    present = {dataset.value(rid, x_attr.name) for rid in row_ids}
    categories = [c for c in all_categories if c in present]
    if not spec.sort.active:
        return categories
    means = category_means(dataset, x_attr.name, spec.sort.by_attribute, row_ids)
    return order_categories(
        categories, means, spec.sort.direction, all_categories
    )


def render(spec: VisSpec, dataset: Dataset) -> ViewModel:
    """Deterministic view model for a valid spec with x and y bound."""
    violations = validate(spec, dataset)
    if violations:
        raise InvalidSpec("; ".join(v.message for v in violations))
    x_name = spec.bound_attribute(Channel.X)
    y_name = spec.bound_attribute(Channel.Y)
    if x_name is None or y_name is None:
        raise MissingAxes("both x and y must be bound to render")

    rows = visible_mark_rows(spec, dataset)
    x_attr = dataset.attribute(x_name)
    y_attr = dataset.attribute(y_name)
    axes = {
        "x": AxisInfo(
            attribute=x_name,
            kind=x_attr.kind,
            extent=x_attr.extent,
            categories=x_attr.categories,
        ),
        "y": AxisInfo(
            attribute=y_name,
            kind=y_attr.kind,
            extent=y_attr.extent,
            categories=y_attr.categories,
        ),
    }
    if spec.vis_type == VisType.SCATTERPLOT:
        marks = _scatter_marks(spec, dataset, rows, x_attr, y_attr)
        return ViewModel(
            marks=tuple(marks), axes=axes, bar_order=None, revision=spec.revision
        )
    marks, order = _bar_marks(spec, dataset, rows, x_name, y_name)
    return ViewModel(
        marks=tuple(marks), axes=axes, bar_order=tuple(order), revision=spec.revision
    )


def _scatter_marks(spec, dataset, rows, x_attr, y_attr):
    palette = effective_palette(spec, dataset)
    color_name = spec.bound_attribute(Channel.COLOR)
    size_name = spec.bound_attribute(Channel.SIZE)
    size_extent = dataset.attribute(size_name).extent if size_name else None
    marks = []
    for rid in rows:
        xv = dataset.value(rid, x_attr.name)
        yv = dataset.value(rid, y_attr.name)
        color = DEFAULT_MARK_COLOR
        if palette is not None and color_name is not None:
            color = palette.color_for(dataset.value(rid, color_name))
        size = DEFAULT_SIZE
        if size_name is not None and size_extent is not None:
            t = _normalize(float(dataset.value(rid, size_name)), size_extent)
            size = SIZE_MIN + (1.0 - SIZE_MIN) * t
        marks.append(
            Mark(
                mark_id=f"pt:{rid}",
                source=rid,
                x=_normalize(float(xv), x_attr.extent or (0.0, 1.0)),
                y=_normalize(float(yv), y_attr.extent or (0.0, 1.0)),
                size=size,
                color=color,
            )
        )
    return marks


def _bar_marks(spec, dataset, rows, x_name, y_name):
    order = bar_category_order(dataset, spec, rows)
    means = category_means(dataset, x_name, y_name, rows)
    order = [c for c in order if c in means]
    if not order:
        return [], []
    max_mean = max(abs(means[c]) for c in order) or 1.0
    n = len(order)
    palette = effective_palette(spec, dataset)
    color_name = spec.bound_attribute(Channel.COLOR)
    col_x = dataset.column(x_name)
    col_y = dataset.column(y_name)

    marks = []
    if spec.vis_type == VisType.BAR_CHART:
        for i, cat in enumerate(order):
            color = DEFAULT_MARK_COLOR
            if palette is not None and color_name is not None:
                values = {
                    dataset.value(rid, color_name)
                    for rid in rows
                    if col_x[rid] == cat
                }
                values.discard(None)
                # a bar shows its group's color only when unambiguous
                if len(values) == 1:
                    color = palette.color_for(next(iter(values)))
            marks.append(
                Mark(
                    mark_id=f"bar:{_cat_key(cat)}",
                    source=cat,
                    x=(i + 0.5) / n,
                    y=means[cat] / max_mean,
                    size=DEFAULT_SIZE,
                    color=color,
                )
            )
        return marks, order

    # stacked bars: one segment per (category, color value); segment heights
    # sum to the category mean (subgroup sum / category count)
    color_attr = dataset.attribute(color_name)
    color_order = list(color_attr.categories or ())
    for i, cat in enumerate(order):
        cat_rows = [rid for rid in rows if col_x[rid] == cat]
        count = sum(1 for rid in cat_rows if col_y[rid] is not None)
        if count == 0:
            continue
        baseline = 0.0
        for cv in color_order:
            subgroup = [
                rid
                for rid in cat_rows
                if dataset.value(rid, color_name) == cv and col_y[rid] is not None
            ]
            if not subgroup:
                continue
            height = sum(float(col_y[rid]) for rid in subgroup) / count / max_mean
            marks.append(
                Mark(
                    mark_id=f"seg:{_cat_key(cat)}:{_cat_key(cv)}",
                    source=cat,
                    x=(i + 0.5) / n,
                    y=height,
                    y0=baseline,
                    size=DEFAULT_SIZE,
                    color=palette.color_for(cv) if palette else DEFAULT_MARK_COLOR,
                    stack_value=cv,
                )
            )
            baseline += height
    return marks, order


def _cat_key(value: Cell) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)
