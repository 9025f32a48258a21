"""Demonstration modeling and intent functions.

A demonstration is a partial manipulation of marks (recolor, resize,
drag-out, drag-bar). Each intent function interprets one demonstration kind
against the current dataset and spec and returns ranked candidate spec
changes. All functions are pure and deterministic: identical inputs yield
identical ordered candidate lists.

Ranking: score = w_affinity * type_affinity + w_separation * separation +
w_parsimony * parsimony, all components in [0, 1]. Affinity prefers
categorical/discrete attributes on color and exact-extension filters;
separation measures the margin between demonstrated groups (or the Jaccard
overlap between selection and rule extension); parsimony prefers low
cardinality. Ties break on attribute name, then template order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .changes import AddFilter, SetBinding, SetSort, SpecChange, next_rule_id
from .dataset import Cell, Dataset
from .errors import (
    EmptySelection,
    InvalidDemonstration,
    UnknownCategory,
    WrongVisType,
)
from .palettes import (
    demonstrated_categorical_palette,
    demonstrated_ramp_palette,
)
from .viewmodel import category_means, order_categories
from .visspec import (
    BAR_TYPES,
    Channel,
    Paradigm,
    PointSetRule,
    RangeRule,
    SortDirection,
    ValueSetRule,
    VisSpec,
    VisType,
    channel_legal,
    rule_excluded_rows,
    visible_mark_rows,
)

SELECTION_ORIGINS = ("lasso", "click", "rubber-band")


@dataclass(frozen=True)
class Selection:
    row_ids: tuple[int, ...]
    origin: str = "lasso"

    def __post_init__(self):
        object.__setattr__(self, "row_ids", tuple(sorted(set(self.row_ids))))


@dataclass(frozen=True)
class Recolor:
    """Color -> selected marks, one entry per demonstrated color."""

    groups: tuple[tuple[str, Selection], ...]

    kind = "recolor"


@dataclass(frozen=True)
class Resize:
    """Demonstrated sizes for individual marks, in (0, 1]."""

    sizes: tuple[tuple[int, float], ...]

    kind = "resize"


@dataclass(frozen=True)
class DragOutToFilter:
    selection: Selection

    kind = "drag_out"


@dataclass(frozen=True)
class DragBar:
    category: Cell
    target: str  # "extreme_left" | "extreme_right"

    kind = "drag_bar"


Demonstration = Union[Recolor, Resize, DragOutToFilter, DragBar]


@dataclass(frozen=True)
class RankingWeights:
    """Configurable weights; defaults sum to one."""

    type_affinity: float = 0.4
    separation: float = 0.4
    parsimony: float = 0.2


DEFAULT_WEIGHTS = RankingWeights()


class CandidateKind(str, enum.Enum):
    ENCODING = "encoding"
    FILTER = "filter"
    SORT = "sort"


@dataclass
class Candidate:
    change: SpecChange
    kind: CandidateKind
    score: float
    evidence: dict = field(default_factory=dict)


def _score(weights: RankingWeights, affinity: float, separation: float, parsimony: float) -> float:
    raw = (
        weights.type_affinity * affinity
        + weights.separation * separation
        + weights.parsimony * parsimony
    )
    return round(min(1.0, max(0.0, raw)), 9)


def _require_visible(row_ids: Sequence[int], visible: set[int]) -> None:
    stray = [r for r in row_ids if r not in visible]
    if stray:
        raise InvalidDemonstration(f"rows {stray} are not visible marks")


def _group_values(dataset: Dataset, name: str, row_ids: Sequence[int]) -> list:
    col = dataset.column(name)
    return [col[r] for r in row_ids if col[r] is not None]


def _interval_margin(
    intervals: list[tuple[float, float]], extent: Optional[tuple[float, float]]
) -> float:
    """Smallest gap between consecutive disjoint intervals, normalized by
    the attribute extent; 1.0 when there is nothing to separate."""
    if len(intervals) < 2 or extent is None or extent[1] == extent[0]:
        return 1.0
    span = extent[1] - extent[0]
    ordered = sorted(intervals)
    gaps = [nxt[0] - prev[1] for prev, nxt in zip(ordered, ordered[1:])]
    return min(1.0, max(0.0, min(gaps) / span))


def infer_color_candidates(
    dataset: Dataset,
    spec: VisSpec,
    demo: Recolor,
    weights: RankingWeights = DEFAULT_WEIGHTS,
) -> list[Candidate]:
    """Attributes whose values can explain the demonstrated grouping.

    Categorical/discrete attributes are consistent when every group shares a
    single value and groups claim disjoint values; continuous attributes
    when the groups' value intervals are pairwise disjoint. The candidate's
    palette keeps the demonstrated colors verbatim.
    """
    if not demo.groups:
        raise InvalidDemonstration("recolor needs at least one group")
    visible = set(visible_mark_rows(spec, dataset))
    seen: set[int] = set()
    for _, selection in demo.groups:
        if not selection.row_ids:
            raise EmptySelection("recolor group has no rows")
        _require_visible(selection.row_ids, visible)
        overlap = seen.intersection(selection.row_ids)
        if overlap:
            raise InvalidDemonstration(f"rows {sorted(overlap)} recolored twice")
        seen.update(selection.row_ids)

    groups = sorted(demo.groups, key=lambda g: g[0])
    candidates: list[Candidate] = []
    for attr in dataset.attributes:
        if channel_legal(spec.vis_type, Channel.COLOR, dataset, attr.name):
            continue
        per_group = [
            (color, _group_values(dataset, attr.name, sel.row_ids))
            for color, sel in groups
        ]
        if any(not values for _, values in per_group):
            continue

        if attr.is_categorical or attr.discrete:
            assignments: list[tuple[Cell, str]] = []
            claimed: set[Cell] = set()
            ok = True
            for color, values in per_group:
                distinct = set(values)
                if len(distinct) != 1 or distinct & claimed:
                    ok = False
                    break
                value = next(iter(distinct))
                claimed.add(value)
                assignments.append((value, color))
            if not ok:
                continue
            palette = demonstrated_categorical_palette(
                assignments, attr.categories or ()
            )
            affinity = 1.0
            separation = 1.0
            evidence_groups = [
                {"color": c, "value": v, "count": len(vals)}
                for (v, c), (_, vals) in zip(assignments, per_group)
            ]
        else:
            intervals = [(min(vals), max(vals)) for _, vals in per_group]
            ordered = sorted(intervals)
            if any(
                nxt[0] <= prev[1] for prev, nxt in zip(ordered, ordered[1:])
            ):
                continue
            palette = demonstrated_ramp_palette(
                [(iv, color) for iv, (color, _) in zip(intervals, per_group)]
            )
            affinity = 0.5
            separation = _interval_margin(intervals, attr.extent)
            evidence_groups = [
                {"color": c, "interval": list(iv), "count": len(vals)}
                for (c, vals), iv in zip(per_group, intervals)
            ]

        parsimony = 1.0 / max(1, attr.distinct_count)
        candidates.append(
            Candidate(
                change=SetBinding(
                    channel=Channel.COLOR,
                    attribute=attr.name,
                    palette=palette,
                    provenance=Paradigm.VBD,
                ),
                kind=CandidateKind.ENCODING,
                score=_score(weights, affinity, separation, parsimony),
                evidence={
                    "type_affinity": affinity,
                    "separation": round(separation, 9),
                    "parsimony": round(parsimony, 9),
                    "groups": evidence_groups,
                },
            )
        )
    candidates.sort(key=lambda c: (-c.score, c.change.attribute))
    return candidates


def infer_size_candidates(
    dataset: Dataset,
    spec: VisSpec,
    demo: Resize,
    weights: RankingWeights = DEFAULT_WEIGHTS,
) -> list[Candidate]:
    """Quantitative attributes strictly monotone-increasing with the
    demonstrated sizes (equal sizes impose no constraint)."""
    if spec.vis_type != VisType.SCATTERPLOT:
        raise WrongVisType("size demonstrations apply to scatterplots only")
    if len(demo.sizes) < 2:
        raise InvalidDemonstration("resize needs at least two marks")
    sizes = dict(demo.sizes)
    if len(sizes) != len(demo.sizes):
        raise InvalidDemonstration("each mark may carry one demonstrated size")
    if len(set(sizes.values())) < 2:
        raise InvalidDemonstration("resize needs at least two distinct sizes")
    if any(not (0.0 < s <= 1.0) for s in sizes.values()):
        raise InvalidDemonstration("sizes must lie in (0, 1]")
    visible = set(visible_mark_rows(spec, dataset))
    _require_visible(list(sizes), visible)

    # tiers: marks grouped by demonstrated size, ascending
    tier_sizes = sorted(set(sizes.values()))
    tiers = [
        [rid for rid, s in sizes.items() if s == size] for size in tier_sizes
    ]

    candidates: list[Candidate] = []
    for attr in dataset.attributes:
        if not attr.is_quantitative:
            continue
        col = dataset.column(attr.name)
        tier_values = [
            [col[r] for r in tier if col[r] is not None] for tier in tiers
        ]
        usable = [v for v in tier_values if v]
        if len(usable) < 2:
            continue
        intervals = [(min(v), max(v)) for v in usable]
        if any(
            nxt[0] <= prev[1] for prev, nxt in zip(intervals, intervals[1:])
        ):
            continue
        separation = _interval_margin(intervals, attr.extent)
        parsimony = 1.0 / max(1, attr.distinct_count)
        candidates.append(
            Candidate(
                change=SetBinding(
                    channel=Channel.SIZE,
                    attribute=attr.name,
                    provenance=Paradigm.VBD,
                ),
                kind=CandidateKind.ENCODING,
                score=_score(weights, 0.5, separation, parsimony),
                evidence={
                    "type_affinity": 0.5,
                    "separation": round(separation, 9),
                    "parsimony": round(parsimony, 9),
                    "tiers": [list(map(float, iv)) for iv in intervals],
                },
            )
        )
    candidates.sort(key=lambda c: (-c.score, c.change.attribute))
    return candidates


def infer_filter_candidates(
    dataset: Dataset,
    spec: VisSpec,
    demo: DragOutToFilter,
    weights: RankingWeights = DEFAULT_WEIGHTS,
) -> list[Candidate]:
    """Ways to filter out the dragged selection, from a fixed template pool:
    the exact points, a spanning range on the x or y attribute, and, when it
    removes exactly the selection, a value exclusion per categorical or
    discrete attribute."""
    if not demo.selection.row_ids:
        raise EmptySelection("drag-out selection is empty")
    visible = set(visible_mark_rows(spec, dataset))
    _require_visible(demo.selection.row_ids, visible)
    selected = set(demo.selection.row_ids)
    rule_id = next_rule_id(spec)

    entries: list[tuple[int, object, float, float, dict]] = []

    def add(template_order, rule, parsimony, extra):
        extension = rule_excluded_rows(rule, dataset) & visible
        affinity = 1.0 if extension == selected else 0.5
        jaccard = len(selected) / len(extension) if extension else 0.0
        entries.append(
            (
                template_order,
                rule,
                affinity,
                jaccard,
                {
                    "excluded_visible": len(extension),
                    "exact": extension == selected,
                    "parsimony": round(parsimony, 9),
                    **extra,
                },
            )
        )
        return extension

    add(
        0,
        PointSetRule(
            id=rule_id, excluded=tuple(sorted(selected)), provenance=Paradigm.VBD
        ),
        1.0 / len(selected),
        {"template": "points"},
    )

    x_name = spec.bound_attribute(Channel.X)
    for template_order, channel in ((1, Channel.X), (2, Channel.Y)):
        name = spec.bound_attribute(channel)
        if name is None or not dataset.attribute(name).is_quantitative:
            continue
        if channel == Channel.Y and name == x_name:
            continue  # identical spanning range already offered for x
        values = _group_values(dataset, name, sorted(selected))
        if not values:
            continue
        add(
            template_order,
            RangeRule(
                id=rule_id,
                attribute=name,
                lo=min(values),
                hi=max(values),
                exclude=True,
                provenance=Paradigm.VBD,
            ),
            1.0,
            {"template": f"{channel.value}_range"},
        )

    for attr in dataset.attributes:
        if not (attr.is_categorical or attr.discrete):
            continue
        col = dataset.column(attr.name)
        sel_values = []
        for rid in sorted(selected):
            v = col[rid]
            if v is not None and v not in sel_values:
                sel_values.append(v)
        if not sel_values:
            continue
        included = tuple(
            v for v in (attr.categories or ()) if v not in sel_values
        )
        rule = ValueSetRule(
            id=rule_id,
            attribute=attr.name,
            included=included,
            provenance=Paradigm.VBD,
        )
        # value exclusions are offered only when they hit the selection exactly
        extension = rule_excluded_rows(rule, dataset) & visible
        if extension != selected:
            continue
        add(
            3,
            rule,
            1.0 / len(sel_values),
            {"template": "values", "excluded_values": list(sel_values)},
        )

    candidates = []
    for template_order, rule, affinity, jaccard, evidence in entries:
        parsimony = evidence["parsimony"]
        candidates.append(
            (
                template_order,
                Candidate(
                    change=AddFilter(rule=rule),
                    kind=CandidateKind.FILTER,
                    score=_score(weights, affinity, jaccard, parsimony),
                    evidence={
                        "type_affinity": affinity,
                        "separation": round(jaccard, 9),
                        **evidence,
                    },
                ),
            )
        )
    candidates.sort(
        key=lambda pair: (
            -pair[1].score,
            getattr(pair[1].change.rule, "attribute", None) or "",
            pair[0],
        )
    )
    return [c for _, c in candidates]


def infer_sort_candidates(
    dataset: Dataset,
    spec: VisSpec,
    demo: DragBar,
    weights: RankingWeights = DEFAULT_WEIGHTS,
) -> list[Candidate]:
    """(attribute, direction) pairs whose category-mean sort places the
    dragged bar at the demonstrated extreme. The category axis itself is
    not offered; the current y attribute ranks first when it qualifies."""
    if spec.vis_type not in BAR_TYPES:
        raise WrongVisType("bar drags apply to bar charts only")
    if demo.target not in ("extreme_left", "extreme_right"):
        raise InvalidDemonstration(f"unknown drag target {demo.target!r}")
    x_name = spec.bound_attribute(Channel.X)
    y_name = spec.bound_attribute(Channel.Y)
    if x_name is None or y_name is None:
        raise WrongVisType("bar chart axes are not fully bound")
    rows = visible_mark_rows(spec, dataset)
    x_categories = list(dataset.attribute(x_name).categories or ())
    y_means = category_means(dataset, x_name, y_name, rows)
    present = {dataset.value(rid, x_name) for rid in rows}
    bars = [c for c in x_categories if c in present and c in y_means]
    if demo.category not in bars:
        raise UnknownCategory(f"no visible bar for category {demo.category!r}")

    candidates: list[Candidate] = []
    for attr in dataset.attributes:
        if not attr.is_quantitative or attr.name == x_name:
            continue
        means = category_means(dataset, x_name, attr.name, rows)
        for direction in (SortDirection.ASCENDING, SortDirection.DESCENDING):
            order = order_categories(bars, means, direction, x_categories)
            landing = order.index(demo.category)
            target_index = 0 if demo.target == "extreme_left" else len(order) - 1
            if landing != target_index:
                continue
            candidates.append(
                Candidate(
                    change=SetSort(by_attribute=attr.name, direction=direction),
                    kind=CandidateKind.SORT,
                    score=_score(weights, 0.5, 1.0, 1.0),
                    evidence={
                        "type_affinity": 0.5,
                        "separation": 1.0,
                        "parsimony": 1.0,
                        "is_current_y": attr.name == y_name,
                        "landing": demo.target,
                    },
                )
            )
    candidates.sort(
        key=lambda c: (
            not c.evidence["is_current_y"],
            -c.score,
            c.change.by_attribute,
            c.change.direction.value,
        )
    )
    return candidates


def infer_candidates(
    dataset: Dataset,
    spec: VisSpec,
    demo: Demonstration,
    weights: RankingWeights = DEFAULT_WEIGHTS,
) -> list[Candidate]:
    """Dispatch a demonstration to its intent function."""
    if isinstance(demo, Recolor):
        return infer_color_candidates(dataset, spec, demo, weights)
    if isinstance(demo, Resize):
        return infer_size_candidates(dataset, spec, demo, weights)
    if isinstance(demo, DragOutToFilter):
        return infer_filter_candidates(dataset, spec, demo, weights)
    if isinstance(demo, DragBar):
        return infer_sort_candidates(dataset, spec, demo, weights)
    raise InvalidDemonstration(f"unknown demonstration {demo!r}")
