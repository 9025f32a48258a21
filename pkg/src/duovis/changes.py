"""Spec changes: the unit of edit both paradigms commit.

``apply_change`` is a pure function from (spec, change) to a new spec with
the revision advanced by one. Changes optionally carry the revision they
were built against; a mismatch raises StaleRevision. Each change has a
computable inverse against its pre-state, which the command log stores for
undo.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

from .dataset import Dataset
from .errors import IllegalChange, StaleRevision
from .palettes import ColorPalette
from .visspec import (
    BAR_TYPES,
    Channel,
    ChannelBinding,
    FilterRule,
    Paradigm,
    SortDirection,
    SortState,
    VisSpec,
    VisType,
    channel_legal,
    validate,
)


@dataclass(frozen=True)
class SetBinding:
    channel: Channel
    attribute: str
    palette: Optional[ColorPalette] = None
    provenance: Paradigm = Paradigm.MVS
    base_revision: Optional[int] = None

    op = "set_binding"


@dataclass(frozen=True)
class RemoveBinding:
    channel: Channel
    base_revision: Optional[int] = None

    op = "remove_binding"


@dataclass(frozen=True)
class SetVisType:
    target: VisType
    base_revision: Optional[int] = None

    op = "set_vis_type"


@dataclass(frozen=True)
class AddFilter:
    rule: FilterRule
    base_revision: Optional[int] = None

    op = "add_filter"


@dataclass(frozen=True)
class ReplaceFilter:
    rule_id: str
    rule: FilterRule
    base_revision: Optional[int] = None

    op = "replace_filter"


@dataclass(frozen=True)
class RemoveFilter:
    rule_id: str
    base_revision: Optional[int] = None

    op = "remove_filter"


@dataclass(frozen=True)
class SetSort:
    by_attribute: Optional[str]
    direction: SortDirection
    base_revision: Optional[int] = None

    op = "set_sort"


@dataclass(frozen=True)
class Batch:
    """Apply several changes as one committed step (used by inverses)."""

    changes: tuple["SpecChange", ...]
    base_revision: Optional[int] = None

    op = "batch"


@dataclass(frozen=True)
class _ReinsertFilter:
    """Inverse of RemoveFilter: restores a rule at its original position."""

    rule: FilterRule
    index: int
    base_revision: Optional[int] = None

    op = "reinsert_filter"


SpecChange = Union[
    SetBinding, RemoveBinding, SetVisType, AddFilter, ReplaceFilter,
    RemoveFilter, SetSort, Batch, _ReinsertFilter,
]


def next_rule_id(spec: VisSpec) -> str:
    """Fresh filter id derived from the spec itself (max suffix + 1), so
    identical edit sequences produce identical ids regardless of history."""
    top = 0
    for rule in spec.filters:
        m = re.fullmatch(r"f(\d+)", rule.id)
        if m:
            top = max(top, int(m.group(1)))
    return f"f{top + 1}"


def dropped_by_switch(
    spec: VisSpec, dataset: Dataset, target: VisType
) -> tuple[list[ChannelBinding], bool]:
    """Bindings that become illegal under ``target``, plus whether the sort
    state must reset (bar sort has no meaning on a scatterplot)."""
    dropped = [
        b
        for b in spec.bindings
        if channel_legal(target, b.channel, dataset, b.attribute) is not None
    ]
    if target == VisType.STACKED_BAR_CHART:
        color = spec.binding(Channel.COLOR)
        if color is not None and color not in dropped:
            attr = dataset.attribute(color.attribute)
            if not (attr.is_categorical or attr.discrete):
                dropped.append(color)
    sort_reset = spec.sort.active and target not in BAR_TYPES
    return dropped, sort_reset


def apply_change(spec: VisSpec, change: SpecChange, dataset: Dataset) -> VisSpec:
    """Pure spec edit; revision advances by one; legality is re-validated."""
    if change.base_revision is not None and change.base_revision != spec.revision:
        raise StaleRevision(
            f"change built against revision {change.base_revision}, "
            f"spec is at {spec.revision}"
        )
    new_spec = _apply(spec, change, dataset)
    violations = validate(new_spec, dataset)
    if violations:
        raise IllegalChange("; ".join(v.message for v in violations))
    return replace(new_spec, revision=spec.revision + 1)


def _apply(spec: VisSpec, change: SpecChange, dataset: Dataset) -> VisSpec:
    if isinstance(change, SetBinding):
        message = channel_legal(spec.vis_type, change.channel, dataset, change.attribute)
        if message:
            raise IllegalChange(message)
        binding = ChannelBinding(
            channel=change.channel,
            attribute=change.attribute,
            palette=change.palette,
            provenance=change.provenance,
        )
        others = tuple(b for b in spec.bindings if b.channel != change.channel)
        return spec.with_bindings(others + (binding,))

    if isinstance(change, RemoveBinding):
        if spec.binding(change.channel) is None:
            raise IllegalChange(f"channel {change.channel.value} is not bound")
        return spec.with_bindings(
            tuple(b for b in spec.bindings if b.channel != change.channel)
        )

    if isinstance(change, SetVisType):
        dropped, sort_reset = dropped_by_switch(spec, dataset, change.target)
        dropped_channels = {b.channel for b in dropped}
        kept = tuple(b for b in spec.bindings if b.channel not in dropped_channels)
        out = replace(spec, vis_type=change.target)
        out = out.with_bindings(kept)
        if sort_reset:
            out = replace(out, sort=SortState())
        return out

    if isinstance(change, AddFilter):
        if spec.rule(change.rule.id) is not None:
            raise IllegalChange(f"filter id {change.rule.id!r} already exists")
        return replace(spec, filters=spec.filters + (change.rule,))

    if isinstance(change, ReplaceFilter):
        if spec.rule(change.rule_id) is None:
            raise IllegalChange(f"no filter {change.rule_id!r}")
        if change.rule.id != change.rule_id:
            raise IllegalChange("replacement rule must keep the rule id")
        filters = tuple(
            change.rule if r.id == change.rule_id else r for r in spec.filters
        )
        return replace(spec, filters=filters)

    if isinstance(change, RemoveFilter):
        if spec.rule(change.rule_id) is None:
            raise IllegalChange(f"no filter {change.rule_id!r}")
        return replace(
            spec, filters=tuple(r for r in spec.filters if r.id != change.rule_id)
        )

    if isinstance(change, SetSort):
        if change.direction == SortDirection.NONE:
            return replace(spec, sort=SortState())
        return replace(
            spec,
            sort=SortState(by_attribute=change.by_attribute, direction=change.direction),
        )

    if isinstance(change, Batch):
        out = spec
        for part in change.changes:
            out = _apply(out, part, dataset)
        return out

    if isinstance(change, _ReinsertFilter):
        filters = list(spec.filters)
        filters.insert(min(change.index, len(filters)), change.rule)
        return replace(spec, filters=tuple(filters))

    raise IllegalChange(f"unknown change {change!r}")


def inverse_of(spec: VisSpec, change: SpecChange, dataset: Dataset) -> SpecChange:
    """The change that undoes ``change`` when applied to its post-state."""
    if isinstance(change, SetBinding):
        prior = spec.binding(change.channel)
        if prior is None:
            return RemoveBinding(channel=change.channel)
        return SetBinding(
            channel=prior.channel,
            attribute=prior.attribute,
            palette=prior.palette,
            provenance=prior.provenance,
        )

    if isinstance(change, RemoveBinding):
        prior = spec.binding(change.channel)
        if prior is None:
            raise IllegalChange(f"channel {change.channel.value} is not bound")
        return SetBinding(
            channel=prior.channel,
            attribute=prior.attribute,
            palette=prior.palette,
            provenance=prior.provenance,
        )

    if isinstance(change, SetVisType):
        dropped, sort_reset = dropped_by_switch(spec, dataset, change.target)
        parts: list[SpecChange] = [SetVisType(target=spec.vis_type)]
        parts.extend(
            SetBinding(
                channel=b.channel,
                attribute=b.attribute,
                palette=b.palette,
                provenance=b.provenance,
            )
            for b in dropped
        )
        if sort_reset:
            parts.append(
                SetSort(by_attribute=spec.sort.by_attribute, direction=spec.sort.direction)
            )
        if len(parts) == 1:
            return parts[0]
        return Batch(changes=tuple(parts))

    if isinstance(change, AddFilter):
        return RemoveFilter(rule_id=change.rule.id)

    if isinstance(change, ReplaceFilter):
        prior = spec.rule(change.rule_id)
        if prior is None:
            raise IllegalChange(f"no filter {change.rule_id!r}")
        return ReplaceFilter(rule_id=change.rule_id, rule=prior)

    if isinstance(change, RemoveFilter):
        prior = spec.rule(change.rule_id)
        if prior is None:
            raise IllegalChange(f"no filter {change.rule_id!r}")
        index = [r.id for r in spec.filters].index(change.rule_id)
        return _ReinsertFilter(rule=prior, index=index)

    if isinstance(change, SetSort):
        return SetSort(
            by_attribute=spec.sort.by_attribute, direction=spec.sort.direction
        )

    if isinstance(change, Batch):
        inverses = []
        state = spec
        for part in change.changes:
            inverses.append(inverse_of(state, part, dataset))
            state = _apply(state, part, dataset)
        return Batch(changes=tuple(reversed(inverses)))

    if isinstance(change, _ReinsertFilter):
        return RemoveFilter(rule_id=change.rule.id)

    raise IllegalChange(f"unknown change {change!r}")


def strip_base_revision(change: SpecChange) -> SpecChange:
    """Copy of the change with no optimistic-concurrency pin (for redo)."""
    return replace(change, base_revision=None)


def describe(change: SpecChange) -> str:
    if isinstance(change, SetBinding):
        return f"bind {change.channel.value} to {change.attribute}"
    if isinstance(change, RemoveBinding):
        return f"unbind {change.channel.value}"
    if isinstance(change, SetVisType):
        return f"switch to {change.target.value}"
    if isinstance(change, AddFilter):
        return f"add filter {change.rule.id}"
    if isinstance(change, ReplaceFilter):
        return f"update filter {change.rule_id}"
    if isinstance(change, RemoveFilter):
        return f"remove filter {change.rule_id}"
    if isinstance(change, SetSort):
        return f"sort by {change.by_attribute} {change.direction.value}"
    if isinstance(change, Batch):
        return "; ".join(describe(c) for c in change.changes)
    return change.op


def batch(changes: Sequence[SpecChange]) -> Batch:
    return Batch(changes=tuple(changes))
