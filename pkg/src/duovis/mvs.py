"""Manual view specification: direct, fully specified edits.

Every operation here is complete in itself: the change commits
synchronously, no recommendation is generated, and the returned result
carries the re-rendered view (or None while the axes are incomplete).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .changes import (
    AddFilter,
    RemoveBinding,
    ReplaceFilter,
    SetBinding,
    SetSort,
    SetVisType,
    SpecChange,
    dropped_by_switch,
    next_rule_id,
)
from .dataset import Cell
from .errors import (
    ChannelUnbound,
    IllegalChange,
    MissingAxes,
    OutOfDomain,
    RequiredChannel,
    UnknownAttribute,
    UnknownRule,
    WrongVisType,
)
from .palettes import default_categorical_palette, default_ramp_palette
from .session import Session
from .viewmodel import ViewModel, render
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
)
from .widgets import FilterWidgetModel, widget_for_attribute, widget_for_rule


@dataclass
class OpResult:
    spec: VisSpec
    change: Optional[SpecChange]
    view: Optional[ViewModel]
    widget: Optional[FilterWidgetModel] = None
    dropped: Sequence[str] = ()


def _render_or_none(session: Session) -> Optional[ViewModel]:
    try:
        return render(session.spec, session.dataset)
    except MissingAxes:
        return None


def _commit(session: Session, change: SpecChange, **extra) -> OpResult:
    spec = session.commit(change, Paradigm.MVS)
    return OpResult(spec=spec, change=change, view=_render_or_none(session), **extra)


def set_axis(session: Session, channel: Union[Channel, str], attr: str) -> OpResult:
    """Drop an attribute on the x or y shelf. Occupied shelves are replaced."""
    channel = Channel(channel)
    if channel not in (Channel.X, Channel.Y):
        raise IllegalChange("set_axis drives the x and y shelves only")
    _check_binding(session, channel, attr)
    return _commit(
        session,
        SetBinding(channel=channel, attribute=attr, provenance=Paradigm.MVS),
    )


def set_mark_encoding(
    session: Session, channel: Union[Channel, str], attr: str
) -> OpResult:
    """Drop an attribute on the color or size shelf.

    A remembered user palette for the attribute is re-applied; otherwise
    color gets a deterministic default palette.
    """
    channel = Channel(channel)
    if channel not in (Channel.COLOR, Channel.SIZE):
        raise IllegalChange("set_mark_encoding drives the color and size shelves only")
    _check_binding(session, channel, attr)
    palette = None
    if channel == Channel.COLOR:
        palette = session.palette_memory.recall(attr)
        if palette is None:
            attribute = session.dataset.attribute(attr)
            if attribute.has_categories:
                palette = default_categorical_palette(attribute.categories or ())
            else:
                palette = default_ramp_palette(attribute.extent or (0.0, 1.0))
    return _commit(
        session,
        SetBinding(
            channel=channel, attribute=attr, palette=palette, provenance=Paradigm.MVS
        ),
    )


def _check_binding(session: Session, channel: Channel, attr: str) -> None:
    if not session.dataset.has_attribute(attr):
        raise UnknownAttribute(f"no attribute named {attr!r}")
    message = channel_legal(session.spec.vis_type, channel, session.dataset, attr)
    if message:
        raise IllegalChange(message)


def switch_vis_type(session: Session, target: Union[VisType, str]) -> OpResult:
    """Pick a vis type from the menu; bindings that stay legal are kept,
    the rest are dropped and reported."""
    target = VisType(target)
    dropped, sort_reset = dropped_by_switch(session.spec, session.dataset, target)
    report = [b.channel.value for b in dropped]
    if sort_reset:
        report.append("sort")
    return _commit(session, SetVisType(target=target), dropped=tuple(report))


def add_attribute_filter(session: Session, attr: str) -> OpResult:
    """Drop an attribute on the filter panel.

    Quantitative attributes get a full-extent range slider (excludes
    nothing); categorical/discrete ones an all-checked checkbox set. A
    second drop of the same attribute focuses the existing widget instead
    of duplicating the rule.
    """
    dataset = session.dataset
    attribute = dataset.attribute(attr)  # raises UnknownAttribute
    with session.lock:
        existing = widget_for_attribute(session.spec, dataset, attr)
        if existing is not None:
            return OpResult(
                spec=session.spec,
                change=None,
                view=_render_or_none(session),
                widget=existing,
            )
        rule_id = next_rule_id(session.spec)
        if attribute.has_categories:  # categorical or discrete: checkboxes
            rule = ValueSetRule(
                id=rule_id,
                attribute=attr,
                included=tuple(attribute.categories or ()),
                provenance=Paradigm.MVS,
            )
        else:  # continuous quantitative: full-extent slider
            lo, hi = attribute.extent or (0.0, 0.0)
            rule = RangeRule(
                id=rule_id, attribute=attr, lo=lo, hi=hi, provenance=Paradigm.MVS
            )
        result = _commit(session, AddFilter(rule=rule))
        result.widget = widget_for_rule(session.spec.rule(rule_id), dataset)
        return result


def update_filter_widget(
    session: Session,
    rule_id: str,
    *,
    selected: Optional[tuple[float, float]] = None,
    checked: Optional[Sequence[Cell]] = None,
) -> OpResult:
    """Move a slider or toggle checkboxes; the rule is replaced in place.

    Works identically on rules created by either paradigm (range rules keep
    their keep/exclude mode).
    """
    dataset = session.dataset
    with session.lock:
        rule = session.spec.rule(rule_id)
        if rule is None:
            raise UnknownRule(f"no filter {rule_id!r}")
        if isinstance(rule, PointSetRule):
            raise OutOfDomain("point filters are read-only chips")
        attribute = dataset.attribute(rule.attribute)
        if isinstance(rule, RangeRule):
            if selected is None:
                raise OutOfDomain("range widgets need a (lo, hi) selection")
            lo, hi = float(selected[0]), float(selected[1])
            domain = attribute.extent or (lo, hi)
            if not (domain[0] <= lo <= hi <= domain[1]):
                raise OutOfDomain(
                    f"selection [{lo}, {hi}] outside domain {list(domain)}"
                )
            new_rule = RangeRule(
                id=rule.id,
                attribute=rule.attribute,
                lo=lo,
                hi=hi,
                exclude=rule.exclude,
                provenance=Paradigm.MVS,
            )
        else:
            if checked is None:
                raise OutOfDomain("checkbox widgets need a checked-value list")
            domain = list(attribute.categories or ())
            normalized = [_coerce_value(v, attribute.is_quantitative) for v in checked]
            outside = [v for v in normalized if v not in domain]
            if outside:
                raise OutOfDomain(f"values {outside!r} outside the widget domain")
            included = tuple(v for v in domain if v in normalized)
            new_rule = ValueSetRule(
                id=rule.id,
                attribute=rule.attribute,
                included=included,
                provenance=Paradigm.MVS,
            )
        result = _commit(session, ReplaceFilter(rule_id=rule.id, rule=new_rule))
        result.widget = widget_for_rule(session.spec.rule(rule.id), dataset)
        return result


def _coerce_value(value: Cell, quantitative: bool) -> Cell:
    if quantitative and isinstance(value, (int, float)):
        return float(value)
    return value


def sort_bars(session: Session, direction: Union[SortDirection, str]) -> OpResult:
    """Sort buttons: order bars by the current y attribute."""
    direction = SortDirection(direction)
    if session.spec.vis_type not in BAR_TYPES:
        raise WrongVisType("sort buttons appear on bar charts only")
    y_attr = session.spec.bound_attribute(Channel.Y)
    if y_attr is None:
        raise ChannelUnbound("bind y before sorting")
    by = None if direction == SortDirection.NONE else y_attr
    return _commit(session, SetSort(by_attribute=by, direction=direction))


def remove_encoding(session: Session, channel: Union[Channel, str]) -> OpResult:
    """Clear a mark-encoding shelf. The axes can only be replaced, never
    removed, while the vis type requires them."""
    channel = Channel(channel)
    if channel in (Channel.X, Channel.Y):
        raise RequiredChannel(f"{channel.value} is required and can only be replaced")
    binding = session.spec.binding(channel)
    if binding is None:
        raise ChannelUnbound(f"channel {channel.value} is not bound")
    return _commit(session, RemoveBinding(channel=channel))
