"""Script replay: run ordered manual ops, demonstrations, and accept/reject
directives against an in-process session.

A script is ``{"steps": [...]}``. Each step has a ``do`` verb plus
arguments, and may carry an ``expect`` block of assertions evaluated right
after the step. Step failures raise ScriptError with the step index.

Verbs: set_axis, set_mark, switch, add_filter, update_filter, sort, remove,
demonstrate, accept (by rank or rec_id), reject, undo, redo.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import history, mvs, recommend
from .canonical import (
    canonical_dumps,
    cell_json,
    parse_demonstration,
    spec_json,
    view_json,
)
from .dataset import Dataset
from .errors import EngineError, MissingAxes, ScriptError
from .intent import RankingWeights, DEFAULT_WEIGHTS
from .recommend import rec_set_json
from .session import Session
from .viewmodel import render
from .visspec import visible_mark_rows
from .widgets import widgets_for_spec


@dataclass
class ReplayOutcome:
    session: Session
    steps_run: int = 0
    spec: dict = field(default_factory=dict)
    view: Optional[dict] = None
    recommendations: dict = field(default_factory=dict)

    def refresh(self) -> None:
        self.spec = spec_json(self.session.spec)
        try:
            self.view = view_json(render(self.session.spec, self.session.dataset))
        except MissingAxes:
            self.view = None
        self.recommendations = rec_set_json(self.session.pending)


def load_script(path: str | Path) -> dict:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScriptError(f"cannot read script: {exc}") from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("steps"), list):
        raise ScriptError("script must be an object with a 'steps' list")
    return payload


def run_script(
    script: dict,
    dataset: Dataset,
    weights: RankingWeights = DEFAULT_WEIGHTS,
    session: Optional[Session] = None,
) -> ReplayOutcome:
    session = session or Session(dataset, weights=weights)
    outcome = ReplayOutcome(session=session)
    for index, step in enumerate(script.get("steps", [])):
        try:
            _run_step(session, step)
            expect = step.get("expect")
            if expect:
                _check_expectations(session, expect)
        except ScriptError as exc:
            raise ScriptError(f"step {index}: {exc.message}", index) from exc
        except EngineError as exc:
            raise ScriptError(f"step {index}: {exc.code}: {exc.message}", index) from exc
        outcome.steps_run += 1
    outcome.refresh()
    return outcome


def _run_step(session: Session, step: dict) -> None:
    if not isinstance(step, dict) or "do" not in step:
        raise ScriptError(f"malformed step {step!r}")
    verb = step["do"]
    if verb == "set_axis":
        mvs.set_axis(session, step["channel"], step["attribute"])
    elif verb == "set_mark":
        mvs.set_mark_encoding(session, step["channel"], step["attribute"])
    elif verb == "switch":
        mvs.switch_vis_type(session, step["target"])
    elif verb == "add_filter":
        mvs.add_attribute_filter(session, step["attribute"])
    elif verb == "update_filter":
        rule_id = _resolve_rule(session, step)
        if "range" in step:
            lo, hi = step["range"]
            mvs.update_filter_widget(session, rule_id, selected=(lo, hi))
        elif "checked" in step:
            mvs.update_filter_widget(session, rule_id, checked=step["checked"])
        else:
            raise ScriptError("update_filter needs 'range' or 'checked'")
    elif verb == "sort":
        mvs.sort_bars(session, step["direction"])
    elif verb == "remove":
        mvs.remove_encoding(session, step["channel"])
    elif verb == "demonstrate":
        demo = parse_demonstration(step["demonstration"])
        recommend.generate(session, demo)
    elif verb == "accept":
        recommend.accept(session, _resolve_rec(session, step))
    elif verb == "reject":
        if "rank" in step or "rec_id" in step:
            recommend.reject(session, _resolve_rec(session, step))
        else:
            recommend.reject(session)
    elif verb == "undo":
        history.undo(session)
    elif verb == "redo":
        history.redo(session)
    else:
        raise ScriptError(f"unknown verb {verb!r}")


def _resolve_rule(session: Session, step: dict) -> str:
    if "rule" in step:
        return step["rule"]
    attr = step.get("attribute")
    if attr is None:
        raise ScriptError("update_filter needs 'rule' or 'attribute'")
    for rule in session.spec.filters:
        if getattr(rule, "attribute", None) == attr:
            return rule.id
    raise ScriptError(f"no filter rule on attribute {attr!r}")


def _resolve_rec(session: Session, step: dict) -> str:
    if "rec_id" in step:
        return step["rec_id"]
    rank = step.get("rank")
    if rank is None:
        raise ScriptError("accept/reject needs 'rank' or 'rec_id'")
    if session.pending is None or not session.pending.recommendations:
        raise ScriptError("no pending recommendations")
    recs = session.pending.recommendations
    if not (1 <= rank <= len(recs)):
        raise ScriptError(f"rank {rank} out of 1..{len(recs)}")
    return recs[rank - 1].rec_id


def _check_expectations(session: Session, expect: dict) -> None:
    spec = session.spec
    dataset = session.dataset
    for key, want in expect.items():
        if key == "visible_rows":
            got = len(visible_mark_rows(spec, dataset))
            if got != want:
                raise ScriptError(f"expected {want} visible rows, got {got}")
        elif key == "widget":
            _check_widget(session, want)
        elif key == "recommendations":
            _check_recommendations(session, want)
        elif key == "bar_order_first":
            _check_bar_extreme(session, want, first=True)
        elif key == "bar_order_last":
            _check_bar_extreme(session, want, first=False)
        elif key == "binding":
            _check_binding(session, want)
        elif key == "revision":
            if spec.revision != want:
                raise ScriptError(f"expected revision {want}, got {spec.revision}")
        else:
            raise ScriptError(f"unknown expectation {key!r}")


def _check_widget(session: Session, want: dict) -> None:
    widgets = widgets_for_spec(session.spec, session.dataset)
    attr = want.get("attribute")
    matches = [w for w in widgets if w.attribute == attr]
    if not matches:
        raise ScriptError(f"no filter widget on {attr!r}")
    widget = matches[0]
    if "kind" in want and widget.kind != want["kind"]:
        raise ScriptError(
            f"widget on {attr!r} is {widget.kind}, expected {want['kind']}"
        )
    if "value_count" in want:
        got = len(widget.values or ())
        if got != want["value_count"]:
            raise ScriptError(
                f"widget on {attr!r} exposes {got} values, expected {want['value_count']}"
            )
    if "excluded_count" in want and widget.excluded_count != want["excluded_count"]:
        raise ScriptError(
            f"widget on {attr!r} excludes {widget.excluded_count}, "
            f"expected {want['excluded_count']}"
        )


def _check_recommendations(session: Session, want: dict) -> None:
    if session.pending is None:
        raise ScriptError("no recommendation set")
    division = want.get("division")
    recs = [
        r
        for r in session.pending.recommendations
        if division is None or r.division == division
    ]
    if "count" in want and len(recs) != want["count"]:
        raise ScriptError(
            f"{len(recs)} recommendations in {division!r}, expected {want['count']}"
        )
    if "attributes_include" in want:
        top = want.get("within_top", recommend.PRESENT_LIMIT)
        attrs = [
            getattr(r.candidate.change, "attribute", None)
            or getattr(r.candidate.change, "by_attribute", None)
            for r in recs[:top]
        ]
        missing = [a for a in want["attributes_include"] if a not in attrs]
        if missing:
            raise ScriptError(
                f"top-{top} of {division!r} lacks {missing}; has {attrs}"
            )
    if "includes_range_on" in want:
        from .visspec import RangeRule

        attr = want["includes_range_on"]
        ok = any(
            isinstance(getattr(r.candidate.change, "rule", None), RangeRule)
            and r.candidate.change.rule.attribute == attr
            for r in recs
        )
        if not ok:
            raise ScriptError(f"no range filter candidate on {attr!r}")
    if "top_explanation_contains" in want:
        if not recs:
            raise ScriptError("no recommendations to inspect")
        text = recs[0].explanation
        if want["top_explanation_contains"] not in text:
            raise ScriptError(
                f"top explanation {text!r} lacks {want['top_explanation_contains']!r}"
            )


def _check_bar_extreme(session: Session, want, *, first: bool) -> None:
    view = render(session.spec, session.dataset)
    if view.bar_order is None or not view.bar_order:
        raise ScriptError("no bar order to inspect")
    got = view.bar_order[0] if first else view.bar_order[-1]
    if cell_json(got) != want:
        where = "first" if first else "last"
        raise ScriptError(f"{where} bar is {cell_json(got)!r}, expected {want!r}")


def _check_binding(session: Session, want: dict) -> None:
    from .visspec import Channel

    channel = Channel(want["channel"])
    binding = session.spec.binding(channel)
    if binding is None:
        raise ScriptError(f"channel {channel.value} is unbound")
    if "attribute" in want and binding.attribute != want["attribute"]:
        raise ScriptError(
            f"{channel.value} bound to {binding.attribute!r}, "
            f"expected {want['attribute']!r}"
        )
    if "customized" in want:
        got = bool(binding.palette and binding.palette.customized)
        if got != want["customized"]:
            raise ScriptError(
                f"{channel.value} customized={got}, expected {want['customized']}"
            )


def assert_outputs(outcome: ReplayOutcome, expected: dict) -> list[str]:
    """Compare final outputs with an expectations file; returns mismatches."""
    problems = []
    for key, got in (
        ("spec", outcome.spec),
        ("view", outcome.view),
        ("recs", outcome.recommendations),
    ):
        if key in expected and expected[key] != got:
            problems.append(
                f"{key} mismatch:\n  expected {canonical_dumps(expected[key])}"
                f"\n  got      {canonical_dumps(got)}"
            )
    return problems


def emit_json(payload, path: str | Path) -> None:
    Path(path).write_text(canonical_dumps(payload) + "\n", encoding="utf-8")
