"""Canonical visualization specification: vis type, channel bindings,
filters, sort.

The spec is an immutable value; every edit goes through
:func:`duovis.changes.apply_change`, which returns a new value with the
revision advanced. Channel legality is a closed table over the three vis
types and is enforced on every edit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .dataset import Dataset
from .palettes import ColorPalette


class VisType(str, enum.Enum):
    SCATTERPLOT = "scatterplot"
    BAR_CHART = "bar_chart"
    STACKED_BAR_CHART = "stacked_bar_chart"


class Channel(str, enum.Enum):
    X = "x"
    Y = "y"
    COLOR = "color"
    SIZE = "size"


CHANNEL_ORDER = (Channel.X, Channel.Y, Channel.COLOR, Channel.SIZE)

BAR_TYPES = (VisType.BAR_CHART, VisType.STACKED_BAR_CHART)


class Paradigm(str, enum.Enum):
    MVS = "mvs"  # manual view specification
    VBD = "vbd"  # visualization by demonstration


@dataclass(frozen=True)
class ChannelBinding:
    channel: Channel
    attribute: str
    palette: Optional[ColorPalette] = None
    provenance: Paradigm = Paradigm.MVS


@dataclass(frozen=True)
class RangeRule:
    """Keep rows inside [lo, hi], or drop them when ``exclude`` is set.

    Manual slider filters start at the full extent in keep mode (excluding
    nothing); filters accepted from a drag-out demonstration are exclusion
    bands spanning the demonstrated values.
    """

    id: str
    attribute: str
    lo: float
    hi: float
    exclude: bool = False
    provenance: Paradigm = Paradigm.MVS

    form = "range"

    def excludes(self, value) -> bool:
        if value is None:
            return False  # filters constrain known values only
        inside = self.lo <= value <= self.hi
        return inside if self.exclude else not inside


@dataclass(frozen=True)
class ValueSetRule:
    """Keep rows whose value is in ``included``."""

    id: str
    attribute: str
    included: tuple = ()
    provenance: Paradigm = Paradigm.MVS

    form = "values"

    def excludes(self, value) -> bool:
        if value is None:
            return False
        return value not in self.included


@dataclass(frozen=True)
class PointSetRule:
    """Drop an explicit set of rows."""

    id: str
    excluded: tuple[int, ...] = ()
    provenance: Paradigm = Paradigm.MVS

    form = "points"
    attribute = None


FilterRule = Union[RangeRule, ValueSetRule, PointSetRule]


class SortDirection(str, enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"
    NONE = "none"


@dataclass(frozen=True)
class SortState:
    by_attribute: Optional[str] = None
    direction: SortDirection = SortDirection.NONE

    @property
    def active(self) -> bool:
        return self.direction != SortDirection.NONE and self.by_attribute is not None


NO_SORT = SortState()


@dataclass(frozen=True)
class VisSpec:
    vis_type: VisType = VisType.SCATTERPLOT
    bindings: tuple[ChannelBinding, ...] = ()
    filters: tuple[FilterRule, ...] = ()
    sort: SortState = NO_SORT
    revision: int = 0

    def binding(self, channel: Channel) -> Optional[ChannelBinding]:
        for b in self.bindings:
            if b.channel == channel:
                return b
        return None

    def bound_attribute(self, channel: Channel) -> Optional[str]:
        b = self.binding(channel)
        return b.attribute if b else None

    def rule(self, rule_id: str) -> Optional[FilterRule]:
        for r in self.filters:
            if r.id == rule_id:
                return r
        return None

    def with_bindings(self, bindings: tuple[ChannelBinding, ...]) -> "VisSpec":
        ordered = tuple(
            sorted(bindings, key=lambda b: CHANNEL_ORDER.index(b.channel))
        )
        return replace(self, bindings=ordered)


def initial_spec() -> VisSpec:
    return VisSpec()


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


def channel_legal(
    vis_type: VisType, channel: Channel, dataset: Dataset, attr_name: str
) -> Optional[str]:
    """Return a violation message, or None when the binding is legal."""
    if not dataset.has_attribute(attr_name):
        return f"unknown attribute {attr_name!r}"
    attr = dataset.attribute(attr_name)
    categorical_like = attr.is_categorical or attr.discrete

    if channel == Channel.X:
        if vis_type == VisType.SCATTERPLOT and not attr.is_quantitative:
            return "scatterplot x requires a quantitative attribute"
        if vis_type in BAR_TYPES and not categorical_like:
            return "bar x requires a categorical or discrete attribute"
    elif channel == Channel.Y:
        if not attr.is_quantitative:
            return "y requires a quantitative attribute"
    elif channel == Channel.SIZE:
        if vis_type in BAR_TYPES:
            return "size is invalid for bar charts"
        if not attr.is_quantitative:
            return "size requires a quantitative attribute"
    elif channel == Channel.COLOR:
        if vis_type in BAR_TYPES and not categorical_like:
            return "bar color requires a categorical or discrete attribute"
    return None


def validate(spec: VisSpec, dataset: Dataset) -> list[Violation]:
    """Every channel/type legality violation in the spec; ok iff empty."""
    violations: list[Violation] = []
    seen_channels: set[Channel] = set()
    for b in spec.bindings:
        if b.channel in seen_channels:
            violations.append(
                Violation("duplicate_channel", f"channel {b.channel.value} bound twice")
            )
        seen_channels.add(b.channel)
        message = channel_legal(spec.vis_type, b.channel, dataset, b.attribute)
        if message:
            violations.append(Violation("illegal_binding", message))

    if spec.vis_type == VisType.STACKED_BAR_CHART:
        color = spec.binding(Channel.COLOR)
        if color is None:
            violations.append(
                Violation(
                    "missing_color",
                    "stacked bar chart requires a categorical or discrete color binding",
                )
            )

    seen_rule_ids: set[str] = set()
    for rule in spec.filters:
        if rule.id in seen_rule_ids:
            violations.append(
                Violation("duplicate_rule_id", f"filter id {rule.id!r} repeated")
            )
        seen_rule_ids.add(rule.id)
        violations.extend(_validate_rule(rule, dataset))

    if spec.sort.active:
        name = spec.sort.by_attribute
        if not dataset.has_attribute(name):
            violations.append(
                Violation("unknown_attribute", f"sort attribute {name!r} unknown")
            )
        elif not dataset.attribute(name).is_quantitative:
            violations.append(
                Violation("illegal_sort", "sort requires a quantitative attribute")
            )
        if spec.vis_type not in BAR_TYPES:
            violations.append(
                Violation("illegal_sort", "sort is meaningful only for bar charts")
            )
    return violations


def _validate_rule(rule: FilterRule, dataset: Dataset) -> list[Violation]:
    out: list[Violation] = []
    if isinstance(rule, RangeRule):
        if not dataset.has_attribute(rule.attribute):
            out.append(
                Violation("unknown_attribute", f"filter attribute {rule.attribute!r} unknown")
            )
        elif not dataset.attribute(rule.attribute).is_quantitative:
            out.append(
                Violation("illegal_filter", "range filters require a quantitative attribute")
            )
        if rule.lo > rule.hi:
            out.append(Violation("illegal_filter", f"range lo > hi in {rule.id}"))
    elif isinstance(rule, ValueSetRule):
        if not dataset.has_attribute(rule.attribute):
            out.append(
                Violation("unknown_attribute", f"filter attribute {rule.attribute!r} unknown")
            )
        else:
            attr = dataset.attribute(rule.attribute)
            if not attr.has_categories:
                out.append(
                    Violation(
                        "illegal_filter",
                        "value filters require a categorical or discrete attribute",
                    )
                )
            else:
                domain = set(attr.categories or ())
                extra = [v for v in rule.included if v not in domain]
                if extra:
                    out.append(
                        Violation(
                            "illegal_filter",
                            f"values {extra!r} outside {rule.attribute!r} categories",
                        )
                    )
    elif isinstance(rule, PointSetRule):
        bad = [i for i in rule.excluded if not (0 <= i < dataset.row_count)]
        if bad:
            out.append(Violation("illegal_filter", f"unknown row ids {bad!r}"))
    return out


def visible_rows(spec: VisSpec, dataset: Dataset) -> list[int]:
    """Row ids passing every filter rule (conjunction), in row order."""
    if not spec.filters:
        return list(range(dataset.row_count))
    excluded: set[int] = set()
    for rule in spec.filters:
        excluded.update(rule_excluded_rows(rule, dataset))
    return [i for i in range(dataset.row_count) if i not in excluded]


def _rule_excludes_row(rule: FilterRule, dataset: Dataset, row_id: int) -> bool:
    if isinstance(rule, PointSetRule):
        return row_id in rule.excluded
    return rule.excludes(dataset.value(row_id, rule.attribute))


def rule_excluded_rows(rule: FilterRule, dataset: Dataset) -> set[int]:
    """All dataset rows failing this rule alone (its extension)."""
    if isinstance(rule, PointSetRule):
        return {i for i in rule.excluded if 0 <= i < dataset.row_count}
    attr = dataset.attribute(rule.attribute)
    if isinstance(rule, RangeRule) and attr.is_quantitative:
        col = dataset.numeric_column(rule.attribute)
        inside = (col >= rule.lo) & (col <= rule.hi)
        mask = inside if rule.exclude else (~inside & ~np.isnan(col))
        return set(np.flatnonzero(mask).tolist())
    if isinstance(rule, ValueSetRule):
        excluded_values = [
            v for v in (attr.categories or ()) if v not in rule.included
        ]
        out: set[int] = set()
        for v in excluded_values:
            out.update(dataset.rows_with_value(rule.attribute, v))
        return out
    # generic fallback
    return {
        row.id
        for row in dataset.rows
        if _rule_excludes_row(rule, dataset, row.id)
    }


def visible_mark_rows(spec: VisSpec, dataset: Dataset) -> list[int]:
    """Rows that produce marks: pass all filters and have no missing value
    on any bound channel."""
    bound = [b.attribute for b in spec.bindings]
    out = []
    for rid in visible_rows(spec, dataset):
        if all(dataset.value(rid, name) is not None for name in bound):
            out.append(rid)
    return out
