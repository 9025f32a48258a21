"""Recommendation lifecycle: grouped presentation, plain-language
explanations, hover previews, accept/reject.

A new demonstration replaces the whole pending set. Any committed spec edit
(from either paradigm) expires what is still pending; expired
recommendations reject every action. Previews are pure: they never touch
the committed spec.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .changes import AddFilter, SetBinding, SetSort, apply_change
from .errors import Expired, UnknownRecommendation
from .history import after_accept
from .intent import Candidate, CandidateKind, Demonstration, infer_candidates
from .session import Session
from .viewmodel import ViewModel, render
from .visspec import (
    Channel,
    Paradigm,
    PointSetRule,
    RangeRule,
    ValueSetRule,
    VisSpec,
)

DIVISION_NAMES = {
    CandidateKind.ENCODING: "Recommended Encodings",
    CandidateKind.FILTER: "Recommended Filters",
    CandidateKind.SORT: "Recommended Sorts",
}

PRESENT_LIMIT = 5  # shown per division; the full list stays queryable


def _templates() -> dict:
    text = resources.files("duovis").joinpath("templates/explanations.json")
    return json.loads(text.read_text(encoding="utf-8"))


_TEMPLATES = _templates()


def _fmt_number(value) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def explain(candidate: Candidate) -> str:
    """Deterministic template fill for one candidate."""
    change = candidate.change
    if isinstance(change, SetBinding):
        key = "encoding_color" if change.channel == Channel.COLOR else "encoding_size"
        return _TEMPLATES[key].format(attribute=change.attribute)
    if isinstance(change, SetSort):
        return _TEMPLATES["sort"].format(
            attribute=change.by_attribute, direction=change.direction.value
        )
    if isinstance(change, AddFilter):
        rule = change.rule
        if isinstance(rule, PointSetRule):
            count = len(rule.excluded)
            if count == 1:
                return _TEMPLATES["filter_points_one"]
            return _TEMPLATES["filter_points"].format(count=count)
        if isinstance(rule, RangeRule):
            key = "filter_range_exclude" if rule.exclude else "filter_range_keep"
            return _TEMPLATES[key].format(
                attribute=rule.attribute,
                lo=_fmt_number(rule.lo),
                hi=_fmt_number(rule.hi),
            )
        if isinstance(rule, ValueSetRule):
            excluded = _excluded_values(candidate)
            values = ", ".join(_fmt_number(v) for v in excluded)
            key = "filter_values_one" if len(excluded) == 1 else "filter_values"
            return _TEMPLATES[key].format(attribute=rule.attribute, values=values)
    return f"Apply {change.op}"


def _excluded_values(candidate: Candidate) -> list:
    return list(candidate.evidence.get("excluded_values", []))


@dataclass
class Recommendation:
    rec_id: str
    candidate: Candidate
    explanation: str
    division: str
    base_revision: int
    state: str = "pending"  # pending | accepted | rejected | expired


@dataclass
class RecommendationSet:
    base_revision: int
    recommendations: list[Recommendation] = field(default_factory=list)

    def find(self, rec_id: str) -> Recommendation:
        for rec in self.recommendations:
            if rec.rec_id == rec_id:
                return rec
        raise UnknownRecommendation(f"no recommendation {rec_id!r}")

    def by_division(self) -> list[tuple[str, list[Recommendation]]]:
        """Division name -> ordered recommendations, fixed division order."""
        out = []
        for kind in (CandidateKind.ENCODING, CandidateKind.FILTER, CandidateKind.SORT):
            name = DIVISION_NAMES[kind]
            recs = [r for r in self.recommendations if r.division == name]
            if recs:
                out.append((name, recs))
        return out


def rec_json(rec: Recommendation) -> dict:
    from .canonical import change_json, deep_cells

    return {
        "rec_id": rec.rec_id,
        "explanation": rec.explanation,
        "score": rec.candidate.score,
        "state": rec.state,
        "change": change_json(rec.candidate.change),
        "evidence": deep_cells(rec.candidate.evidence),
    }


def rec_set_json(rec_set: RecommendationSet | None, *, full: bool = False) -> dict:
    """Wire form: divisions -> ordered recommendations. The presented list
    is capped per division; ``full`` exposes the complete ranking."""
    if rec_set is None:
        return {"base_revision": None, "divisions": []}
    divisions = []
    for name, recs in rec_set.by_division():
        shown = recs if full else recs[:PRESENT_LIMIT]
        divisions.append(
            {
                "name": name,
                "recommendations": [rec_json(r) for r in shown],
                "hidden_count": len(recs) - len(shown),
            }
        )
    return {"base_revision": rec_set.base_revision, "divisions": divisions}


def generate(session: Session, demo: Demonstration) -> RecommendationSet:
    """Run the matching intent function and replace the pending set.

    An empty set is a valid result ("no suggestions"); intent errors
    propagate and leave the prior pending set untouched.
    """
    with session.lock:
        candidates = infer_candidates(
            session.dataset, session.spec, demo, session.weights
        )
        base = session.spec.revision
        recs = []
        for i, candidate in enumerate(candidates, start=1):
            recs.append(
                Recommendation(
                    rec_id=f"r{base}.{i}",
                    candidate=candidate,
                    explanation=explain(candidate),
                    division=DIVISION_NAMES[candidate.kind],
                    base_revision=base,
                )
            )
        rec_set = RecommendationSet(base_revision=base, recommendations=recs)
        session.pending = rec_set
        session.notify_recommendations()
        return rec_set


def _pending(session: Session, rec_id: str) -> Recommendation:
    if session.pending is None:
        raise UnknownRecommendation("no pending recommendation set")
    rec = session.pending.find(rec_id)
    if rec.state != "pending":
        raise Expired(f"recommendation {rec_id} is {rec.state}")
    if rec.base_revision != session.spec.revision:
        rec.state = "expired"
        raise Expired(f"recommendation {rec_id} is stale")
    return rec


def preview(session: Session, rec_id: str) -> ViewModel:
    """Feedforward: the view after the change, without committing it."""
    with session.lock:
        rec = _pending(session, rec_id)
        changed = apply_change(session.spec, rec.candidate.change, session.dataset)
        return render(changed, session.dataset)


def accept(session: Session, rec_id: str) -> VisSpec:
    """Commit the change; siblings expire; palette memory is notified."""
    with session.lock:
        rec = _pending(session, rec_id)
        rec.state = "accepted"
        spec = session.commit(rec.candidate.change, Paradigm.VBD)
        after_accept(session, rec.candidate.change)
        session.notify_recommendations()
        return spec


def reject(session: Session, rec_id: str | None = None) -> None:
    """Dismiss one pending recommendation, or all of them."""
    with session.lock:
        if session.pending is None:
            if rec_id is not None:
                raise UnknownRecommendation("no pending recommendation set")
            return
        targets = (
            [session.pending.find(rec_id)]
            if rec_id is not None
            else [r for r in session.pending.recommendations if r.state == "pending"]
        )
        for rec in targets:
            if rec_id is not None and rec.state != "pending":
                raise Expired(f"recommendation {rec_id} is {rec.state}")
            rec.state = "rejected"
        session.notify_recommendations()
