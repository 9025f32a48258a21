"""Cross-paradigm synchronization and the unified undo/redo log.

When a demonstrated change commits, the corresponding manual-side state
appears automatically: filter rules grow widgets, encoding shelves show the
bound attribute (flagged customized when it carries a user palette), and
user palettes are remembered per attribute so rebinding the attribute later
restores them.
"""

from __future__ import annotations

from typing import Optional

from .changes import (
    AddFilter,
    Batch,
    ReplaceFilter,
    SetBinding,
    SpecChange,
    strip_base_revision,
)
from .errors import NothingToRedo, NothingToUndo, ScriptError
from .palettes import ColorPalette
from .session import Session
from .visspec import Channel, Paradigm, VisSpec
from .widgets import widget_for_rule


def remember_palette(session: Session, attribute: str, palette: ColorPalette) -> None:
    """Store a user-demonstrated palette; default palettes are not kept."""
    session.palette_memory.remember(attribute, palette)


def recall_palette(session: Session, attribute: str) -> Optional[ColorPalette]:
    return session.palette_memory.recall(attribute)


def after_accept(session: Session, change: SpecChange) -> None:
    """Knowledge transfer on a committed demonstration change."""
    for part in _walk(change):
        if (
            isinstance(part, SetBinding)
            and part.channel == Channel.COLOR
            and part.palette is not None
            and part.palette.customized
        ):
            session.palette_memory.remember(part.attribute, part.palette)


def _walk(change: SpecChange):
    if isinstance(change, Batch):
        for part in change.changes:
            yield from _walk(part)
    else:
        yield change


def corollary_state(session: Session, change: SpecChange) -> dict:
    """Widget updates that show a committed change in the other paradigm's
    terms: new/updated filter widgets and encoding-shelf labels."""
    updates: dict = {}
    for part in _walk(change):
        if isinstance(part, (AddFilter, ReplaceFilter)):
            rule = session.spec.rule(
                part.rule.id if isinstance(part, AddFilter) else part.rule_id
            )
            if rule is not None:
                updates.setdefault("filter_widgets", []).append(
                    widget_for_rule(rule, session.dataset)
                )
        elif isinstance(part, SetBinding):
            updates.setdefault("encoding_shelves", []).append(
                {
                    "channel": part.channel.value,
                    "attribute": part.attribute,
                    "customized": bool(part.palette and part.palette.customized),
                }
            )
    return updates


def undo(session: Session) -> VisSpec:
    """Step the cursor back one committed change; widgets follow the spec."""
    with session.lock:
        if not session.log.can_undo:
            raise NothingToUndo("nothing to undo")
        entry = session.log.entries[session.log.cursor - 1]
        spec = session.apply_unlogged(strip_base_revision(entry.inverse))
        session.log.cursor -= 1
        return spec


def redo(session: Session) -> VisSpec:
    """Re-apply the next undone change."""
    with session.lock:
        if not session.log.can_redo:
            raise NothingToRedo("nothing to redo")
        entry = session.log.entries[session.log.cursor]
        spec = session.apply_unlogged(strip_base_revision(entry.change))
        session.log.cursor += 1
        return spec


def replay_from_initial(session: Session) -> VisSpec:
    """Rebuild the spec by replaying entries[:cursor] from the initial spec.

    Used as the replay-determinism oracle; the result equals the current
    spec canonically (revision aside).
    """
    from .changes import apply_change
    from .visspec import initial_spec

    spec = initial_spec()
    for entry in session.log.entries[: session.log.cursor]:
        spec = apply_change(
            spec, strip_base_revision(entry.change), session.dataset
        )
    return spec


def save_snapshot(session: Session) -> dict:
    """Session snapshot: dataset ref, initial spec, command log, palette
    memory. Reload reproduces the state exactly."""
    from .canonical import change_json, palette_json, spec_json
    from .visspec import initial_spec

    return {
        "session_id": session.id,
        "dataset_ref": session.dataset.source_ref,
        "dataset_id": session.dataset.id,
        "revision_counter": session.spec.revision,
        "initial_spec": spec_json(initial_spec()),
        "command_log": {
            "cursor": session.log.cursor,
            "entries": [
                {
                    "revision": e.revision,
                    "paradigm": e.paradigm.value,
                    "change": change_json(e.change),
                    "inverse": change_json(e.inverse),
                }
                for e in session.log.entries
            ],
        },
        "palette_memory": {
            attr: palette_json(p)
            for attr, p in session.palette_memory.as_dict().items()
        },
    }


def load_snapshot(
    payload: dict, *, dataset=None, data_dir: Optional[str] = None
) -> Session:
    """Rebuild a session from a snapshot; the dataset is re-read from its
    ref unless one is passed in."""
    from dataclasses import replace as _replace
    from pathlib import Path

    from .canonical import parse_change, parse_palette
    from .changes import apply_change
    from .dataset import load_csv
    from .session import CommandLog, LogEntry
    from .visspec import initial_spec

    if dataset is None:
        ref = payload.get("dataset_ref")
        if ref is None:
            raise ScriptError("snapshot has no dataset_ref; pass a dataset")
        path = Path(ref)
        if not path.is_absolute() and data_dir:
            path = Path(data_dir) / path
        dataset = load_csv(path, dataset_id=payload.get("dataset_id"))

    session = Session(dataset, session_id=payload.get("session_id"))
    log_payload = payload.get("command_log", {})
    entries = [
        LogEntry(
            revision=int(e["revision"]),
            change=parse_change(e["change"]),
            paradigm=Paradigm(e["paradigm"]),
            inverse=parse_change(e["inverse"]),
        )
        for e in log_payload.get("entries", [])
    ]
    cursor = int(log_payload.get("cursor", len(entries)))
    session.log = CommandLog(entries=entries, cursor=cursor)

    spec = initial_spec()
    for entry in entries[:cursor]:
        spec = apply_change(spec, strip_base_revision(entry.change), session.dataset)
    session.spec = _replace(spec, revision=int(payload.get("revision_counter", spec.revision)))

    for attr, palette in payload.get("palette_memory", {}).items():
        session.palette_memory.remember(attr, parse_palette(palette))
    return session
