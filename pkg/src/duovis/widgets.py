"""Filter widgets: the manual-paradigm face of each filter rule.

The widget list is a pure function of the current spec's filter rules, no
matter which paradigm created them (the filter panel is shared). Counts are
honest per rule: ``excluded_count`` is the number of dataset rows failing
that rule alone, ``visible_count`` the rows passing it alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dataset import Cell, Dataset
from .visspec import (
    FilterRule,
    PointSetRule,
    RangeRule,
    ValueSetRule,
    VisSpec,
    rule_excluded_rows,
)


@dataclass(frozen=True)
class FilterWidgetModel:
    rule_id: str
    attribute: Optional[str]
    kind: str  # "range" | "checkbox" | "chip"
    visible_count: int
    excluded_count: int
    domain: Optional[tuple[float, float]] = None
    selected: Optional[tuple[float, float]] = None
    mode: Optional[str] = None  # "keep" | "exclude" (range widgets)
    values: Optional[tuple[Cell, ...]] = None
    checked: Optional[tuple[bool, ...]] = None


def widget_for_rule(rule: FilterRule, dataset: Dataset) -> FilterWidgetModel:
    excluded = len(rule_excluded_rows(rule, dataset))
    visible = dataset.row_count - excluded
    if isinstance(rule, RangeRule):
        attr = dataset.attribute(rule.attribute)
        return FilterWidgetModel(
            rule_id=rule.id,
            attribute=rule.attribute,
            kind="range",
            visible_count=visible,
            excluded_count=excluded,
            domain=attr.extent,
            selected=(rule.lo, rule.hi),
            mode="exclude" if rule.exclude else "keep",
        )
    if isinstance(rule, ValueSetRule):
        attr = dataset.attribute(rule.attribute)
        values = tuple(attr.categories or ())
        return FilterWidgetModel(
            rule_id=rule.id,
            attribute=rule.attribute,
            kind="checkbox",
            visible_count=visible,
            excluded_count=excluded,
            values=values,
            checked=tuple(v in rule.included for v in values),
        )
    assert isinstance(rule, PointSetRule)
    return FilterWidgetModel(
        rule_id=rule.id,
        attribute=None,
        kind="chip",
        visible_count=visible,
        excluded_count=excluded,
    )


def widgets_for_spec(spec: VisSpec, dataset: Dataset) -> list[FilterWidgetModel]:
    return [widget_for_rule(rule, dataset) for rule in spec.filters]


def widget_for_attribute(
    spec: VisSpec, dataset: Dataset, attr_name: str
) -> Optional[FilterWidgetModel]:
    """The widget of the first attribute-bound rule on ``attr_name``."""
    for rule in spec.filters:
        if getattr(rule, "attribute", None) == attr_name:
            return widget_for_rule(rule, dataset)
    return None
