"""Session state: one dataset, one canonical spec, one command log.

A session has a single writer: every committed change goes through
``commit`` under the session lock, which applies the change, records it in
the command log with its inverse, expires pending recommendations, and
emits a ``spec_changed`` event. Reads are lock-free (spec values are
immutable).
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Callable, Optional

from .changes import SpecChange, apply_change, inverse_of
from .dataset import Dataset
from .intent import RankingWeights, DEFAULT_WEIGHTS
from .visspec import Paradigm, VisSpec, initial_spec


@dataclass
class LogEntry:
    revision: int  # revision after the commit
    change: SpecChange
    paradigm: Paradigm
    inverse: SpecChange


@dataclass
class CommandLog:
    entries: list[LogEntry] = field(default_factory=list)
    cursor: int = 0  # entries[:cursor] are in effect

    def record(self, entry: LogEntry) -> None:
        del self.entries[self.cursor:]  # a new commit drops the redo tail
        self.entries.append(entry)
        self.cursor = len(self.entries)

    @property
    def can_undo(self) -> bool:
        return self.cursor > 0

    @property
    def can_redo(self) -> bool:
        return self.cursor < len(self.entries)


class PaletteMemory:
    """Last user-customized palette per attribute (session-scoped)."""

    def __init__(self):
        self._palettes: dict[str, object] = {}

    def remember(self, attribute: str, palette) -> None:
        if palette is not None and getattr(palette, "customized", False):
            self._palettes[attribute] = palette

    def recall(self, attribute: str):
        return self._palettes.get(attribute)

    def as_dict(self) -> dict:
        return dict(self._palettes)


class Session:
    def __init__(
        self,
        dataset: Dataset,
        session_id: Optional[str] = None,
        weights: RankingWeights = DEFAULT_WEIGHTS,
    ):
        self.id = session_id or uuid.uuid4().hex
        self.dataset = dataset
        self.spec: VisSpec = initial_spec()
        self.log = CommandLog()
        self.palette_memory = PaletteMemory()
        self.pending = None  # RecommendationSet | None
        self.weights = weights
        self.lock = threading.RLock()
        self._event_seq = 0
        self._listeners: list[Callable[[dict], None]] = []

    # events

    def add_listener(self, listener: Callable[[dict], None]) -> None:
        with self.lock:
            self._listeners.append(listener)

    def remove_listener(self, listener: Callable[[dict], None]) -> None:
        with self.lock:
            if listener in self._listeners:
                self._listeners.remove(listener)

    def _emit(self, event_type: str, **payload) -> None:
        self._event_seq += 1
        event = {"seq": self._event_seq, "type": event_type, **payload}
        for listener in list(self._listeners):
            listener(event)

    def notify_recommendations(self) -> None:
        pending = 0
        if self.pending is not None:
            pending = sum(
                1 for r in self.pending.recommendations if r.state == "pending"
            )
        self._emit(
            "recommendations_changed",
            revision=self.spec.revision,
            pending=pending,
        )

    # commits

    def commit(self, change: SpecChange, paradigm: Paradigm) -> VisSpec:
        """Apply a change as the next committed revision."""
        with self.lock:
            inverse = inverse_of(self.spec, change, self.dataset)
            new_spec = apply_change(self.spec, change, self.dataset)
            self.log.record(
                LogEntry(
                    revision=new_spec.revision,
                    change=change,
                    paradigm=paradigm,
                    inverse=inverse,
                )
            )
            self.spec = new_spec
            self._emit("spec_changed", revision=new_spec.revision)
            self._expire_pending()
            return new_spec

    def apply_unlogged(self, change: SpecChange) -> VisSpec:
        """Apply without a log entry (undo/redo move the cursor instead)."""
        with self.lock:
            new_spec = apply_change(self.spec, change, self.dataset)
            self.spec = new_spec
            self._emit("spec_changed", revision=new_spec.revision)
            self._expire_pending()
            return new_spec

    def _expire_pending(self) -> None:
        if self.pending is None:
            return
        expired = False
        for rec in self.pending.recommendations:
            if rec.state == "pending":
                rec.state = "expired"
                expired = True
        if expired:
            self.notify_recommendations()
