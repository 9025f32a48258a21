"""Canonical JSON encodings for every wire object.

Encoding is canonical: fields appear in a fixed order, filters in insertion
order, and numbers that are whole render as integers, so equal values
serialize to equal bytes. The ``core`` flavor of a spec drops revision,
provenance, and synthetic rule ids; it is the comparison form for
paradigm-equivalence checks.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .changes import (
    AddFilter,
    Batch,
    RemoveBinding,
    RemoveFilter,
    ReplaceFilter,
    SetBinding,
    SetSort,
    SetVisType,
    SpecChange,
    _ReinsertFilter,
)
from .dataset import Cell
from .errors import InvalidDemonstration, ScriptError
from .intent import (
    DragBar,
    DragOutToFilter,
    Demonstration,
    Recolor,
    Resize,
    SELECTION_ORIGINS,
    Selection,
)
from .palettes import ColorPalette, PaletteEntry
from .viewmodel import AxisInfo, Mark, ViewModel
from .visspec import (
    Channel,
    ChannelBinding,
    FilterRule,
    Paradigm,
    PointSetRule,
    RangeRule,
    SortDirection,
    SortState,
    ValueSetRule,
    VisSpec,
    VisType,
)
from .widgets import FilterWidgetModel


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def cell_json(value: Cell):
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def deep_cells(obj):
    """Canonicalize every number in a nested JSON-ish structure."""
    if isinstance(obj, dict):
        return {k: deep_cells(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [deep_cells(v) for v in obj]
    return cell_json(obj)


def palette_json(palette: Optional[ColorPalette]) -> Optional[dict]:
    if palette is None:
        return None
    entries = []
    for entry in palette.entries:
        if entry.interval is not None:
            entries.append(
                {
                    "interval": [cell_json(entry.interval[0]), cell_json(entry.interval[1])],
                    "color": entry.color,
                }
            )
        else:
            entries.append({"value": cell_json(entry.value), "color": entry.color})
    return {
        "entries": entries,
        "default_color": palette.default_color,
        "customized": palette.customized,
    }


def parse_palette(payload: Optional[dict]) -> Optional[ColorPalette]:
    if payload is None:
        return None
    entries = []
    for e in payload.get("entries", []):
        if "interval" in e:
            lo, hi = e["interval"]
            entries.append(
                PaletteEntry(color=e["color"], interval=(float(lo), float(hi)))
            )
        else:
            entries.append(PaletteEntry(color=e["color"], value=_parse_cell(e["value"])))
    return ColorPalette(
        entries=tuple(entries),
        default_color=payload.get("default_color", "#cccccc"),
        customized=bool(payload.get("customized", False)),
    )


def _parse_cell(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return float(value)
    return value


def rule_json(rule: FilterRule, *, core: bool = False) -> dict:
    if isinstance(rule, RangeRule):
        out: dict = {} if core else {"id": rule.id}
        out.update(
            form="range",
            attribute=rule.attribute,
            lo=cell_json(rule.lo),
            hi=cell_json(rule.hi),
            exclude=rule.exclude,
        )
    elif isinstance(rule, ValueSetRule):
        out = {} if core else {"id": rule.id}
        out.update(
            form="values",
            attribute=rule.attribute,
            included=[cell_json(v) for v in rule.included],
        )
    else:
        assert isinstance(rule, PointSetRule)
        out = {} if core else {"id": rule.id}
        out.update(form="points", excluded=list(rule.excluded))
    if not core:
        out["provenance"] = rule.provenance.value
    return out


def parse_rule(payload: dict) -> FilterRule:
    form = payload.get("form")
    provenance = Paradigm(payload.get("provenance", "mvs"))
    rule_id = payload.get("id", "f?")
    if form == "range":
        return RangeRule(
            id=rule_id,
            attribute=payload["attribute"],
            lo=float(payload["lo"]),
            hi=float(payload["hi"]),
            exclude=bool(payload.get("exclude", False)),
            provenance=provenance,
        )
    if form == "values":
        return ValueSetRule(
            id=rule_id,
            attribute=payload["attribute"],
            included=tuple(_parse_cell(v) for v in payload["included"]),
            provenance=provenance,
        )
    if form == "points":
        return PointSetRule(
            id=rule_id,
            excluded=tuple(int(i) for i in payload["excluded"]),
            provenance=provenance,
        )
    raise ScriptError(f"unknown filter form {form!r}")


def binding_json(binding: ChannelBinding, *, core: bool = False) -> dict:
    out = {
        "channel": binding.channel.value,
        "attribute": binding.attribute,
        "palette": palette_json(binding.palette),
    }
    if not core:
        out["provenance"] = binding.provenance.value
    return out


def sort_json(sort: SortState) -> dict:
    return {
        "by": sort.by_attribute,
        "direction": sort.direction.value,
    }


def spec_json(spec: VisSpec, *, core: bool = False) -> dict:
    out = {
        "vis_type": spec.vis_type.value,
        "bindings": [binding_json(b, core=core) for b in spec.bindings],
        "filters": [rule_json(r, core=core) for r in spec.filters],
        "sort": sort_json(spec.sort),
    }
    if not core:
        out["revision"] = spec.revision
    return out


def spec_bytes(spec: VisSpec, *, core: bool = False) -> str:
    return canonical_dumps(spec_json(spec, core=core))


def change_json(change: SpecChange) -> dict:
    if isinstance(change, SetBinding):
        out = {
            "op": "set_binding",
            "channel": change.channel.value,
            "attribute": change.attribute,
            "palette": palette_json(change.palette),
            "provenance": change.provenance.value,
        }
    elif isinstance(change, RemoveBinding):
        out = {"op": "remove_binding", "channel": change.channel.value}
    elif isinstance(change, SetVisType):
        out = {"op": "set_vis_type", "target": change.target.value}
    elif isinstance(change, AddFilter):
        out = {"op": "add_filter", "rule": rule_json(change.rule)}
    elif isinstance(change, ReplaceFilter):
        out = {
            "op": "replace_filter",
            "rule_id": change.rule_id,
            "rule": rule_json(change.rule),
        }
    elif isinstance(change, RemoveFilter):
        out = {"op": "remove_filter", "rule_id": change.rule_id}
    elif isinstance(change, SetSort):
        out = {
            "op": "set_sort",
            "by": change.by_attribute,
            "direction": change.direction.value,
        }
    elif isinstance(change, Batch):
        out = {"op": "batch", "changes": [change_json(c) for c in change.changes]}
    elif isinstance(change, _ReinsertFilter):
        out = {
            "op": "reinsert_filter",
            "rule": rule_json(change.rule),
            "index": change.index,
        }
    else:
        raise ScriptError(f"unknown change {change!r}")
    if change.base_revision is not None:
        out["base_revision"] = change.base_revision
    return out


def parse_change(payload: dict) -> SpecChange:
    op = payload.get("op")
    base = payload.get("base_revision")
    if op == "set_binding":
        return SetBinding(
            channel=Channel(payload["channel"]),
            attribute=payload["attribute"],
            palette=parse_palette(payload.get("palette")),
            provenance=Paradigm(payload.get("provenance", "mvs")),
            base_revision=base,
        )
    if op == "remove_binding":
        return RemoveBinding(channel=Channel(payload["channel"]), base_revision=base)
    if op == "set_vis_type":
        return SetVisType(target=VisType(payload["target"]), base_revision=base)
    if op == "add_filter":
        return AddFilter(rule=parse_rule(payload["rule"]), base_revision=base)
    if op == "replace_filter":
        return ReplaceFilter(
            rule_id=payload["rule_id"],
            rule=parse_rule(payload["rule"]),
            base_revision=base,
        )
    if op == "remove_filter":
        return RemoveFilter(rule_id=payload["rule_id"], base_revision=base)
    if op == "set_sort":
        return SetSort(
            by_attribute=payload.get("by"),
            direction=SortDirection(payload["direction"]),
            base_revision=base,
        )
    if op == "batch":
        return Batch(
            changes=tuple(parse_change(c) for c in payload["changes"]),
            base_revision=base,
        )
    if op == "reinsert_filter":
        return _ReinsertFilter(
            rule=parse_rule(payload["rule"]),
            index=int(payload["index"]),
            base_revision=base,
        )
    raise ScriptError(f"unknown change op {op!r}")


def axis_json(axis: AxisInfo) -> dict:
    return {
        "attribute": axis.attribute,
        "kind": axis.kind,
        "extent": [cell_json(axis.extent[0]), cell_json(axis.extent[1])]
        if axis.extent
        else None,
        "categories": [cell_json(v) for v in axis.categories]
        if axis.categories is not None
        else None,
    }


def mark_json(mark: Mark) -> dict:
    out = {
        "mark_id": mark.mark_id,
        "source": cell_json(mark.source),
        "x": mark.x,
        "y": mark.y,
        "size": mark.size,
        "color": mark.color,
    }
    if mark.stack_value is not None:
        out["y0"] = mark.y0
        out["stack_value"] = cell_json(mark.stack_value)
    return out


def view_json(view: ViewModel) -> dict:
    return {
        "revision": view.revision,
        "marks": [mark_json(m) for m in view.marks],
        "axes": {
            "x": axis_json(view.axes["x"]),
            "y": axis_json(view.axes["y"]),
        },
        "bar_order": [cell_json(v) for v in view.bar_order]
        if view.bar_order is not None
        else None,
    }


def view_bytes(view: ViewModel) -> str:
    return canonical_dumps(view_json(view))


def widget_json(widget: FilterWidgetModel) -> dict:
    out: dict = {
        "rule_id": widget.rule_id,
        "attribute": widget.attribute,
        "kind": widget.kind,
    }
    if widget.kind == "range":
        out["domain"] = [cell_json(widget.domain[0]), cell_json(widget.domain[1])]
        out["selected"] = [cell_json(widget.selected[0]), cell_json(widget.selected[1])]
        out["mode"] = widget.mode
    elif widget.kind == "checkbox":
        out["values"] = [cell_json(v) for v in widget.values or ()]
        out["checked"] = list(widget.checked or ())
    out["visible_count"] = widget.visible_count
    out["excluded_count"] = widget.excluded_count
    return out


def selection_json(selection: Selection) -> dict:
    return {"rows": list(selection.row_ids), "origin": selection.origin}


def demo_json(demo: Demonstration) -> dict:
    if isinstance(demo, Recolor):
        return {
            "kind": "recolor",
            "groups": [
                {"color": color, "selection": selection_json(sel)}
                for color, sel in demo.groups
            ],
        }
    if isinstance(demo, Resize):
        return {
            "kind": "resize",
            "sizes": [{"row": rid, "size": size} for rid, size in demo.sizes],
        }
    if isinstance(demo, DragOutToFilter):
        return {"kind": "drag_out", "selection": selection_json(demo.selection)}
    if isinstance(demo, DragBar):
        return {
            "kind": "drag_bar",
            "category": cell_json(demo.category),
            "target": demo.target,
        }
    raise InvalidDemonstration(f"unknown demonstration {demo!r}")


def _parse_selection(payload: dict) -> Selection:
    if not isinstance(payload, dict) or "rows" not in payload:
        raise InvalidDemonstration("selection needs a 'rows' list")
    rows = payload["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, int) for r in rows):
        raise InvalidDemonstration("selection rows must be integers")
    origin = payload.get("origin", "lasso")
    if origin not in SELECTION_ORIGINS:
        raise InvalidDemonstration(f"unknown selection origin {origin!r}")
    return Selection(row_ids=tuple(rows), origin=origin)


def parse_demonstration(payload: dict) -> Demonstration:
    """Decode a demonstration; numeric categories become floats so they
    compare equal to dataset cells."""
    kind = payload.get("kind")
    if kind == "recolor":
        groups = payload.get("groups", [])
        if not isinstance(groups, list) or not groups:
            raise InvalidDemonstration("recolor needs a non-empty group list")
        parsed = []
        for g in groups:
            color = g.get("color")
            if not isinstance(color, str) or not color.startswith("#"):
                raise InvalidDemonstration(f"bad group color {color!r}")
            parsed.append((color.lower(), _parse_selection(g.get("selection", {}))))
        return Recolor(groups=tuple(parsed))
    if kind == "resize":
        sizes = payload.get("sizes", [])
        if not isinstance(sizes, list):
            raise InvalidDemonstration("resize needs a size list")
        out = []
        for s in sizes:
            if not isinstance(s, dict) or "row" not in s or "size" not in s:
                raise InvalidDemonstration("each resize entry needs row and size")
            out.append((int(s["row"]), float(s["size"])))
        return Resize(sizes=tuple(sorted(out)))
    if kind == "drag_out":
        return DragOutToFilter(
            selection=_parse_selection(payload.get("selection", {}))
        )
    if kind == "drag_bar":
        if "category" not in payload:
            raise InvalidDemonstration("drag_bar needs a category")
        target = payload.get("target")
        if target not in ("extreme_left", "extreme_right"):
            raise InvalidDemonstration(f"unknown drag target {target!r}")
        return DragBar(category=_parse_cell(payload["category"]), target=target)
    raise InvalidDemonstration(f"unknown demonstration kind {kind!r}")
