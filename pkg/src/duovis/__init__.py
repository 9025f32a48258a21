"""duovis: a two-paradigm visualization construction engine.

One canonical visualization spec is driven two ways: direct manual edits
(shelves, menus, filter widgets, sort buttons) and partial demonstrations
on the marks themselves, which an intent engine turns into ranked,
previewable recommendations. Both paradigms stay synchronized through
shared widget state, palette memory, and a unified undo log.
"""

from .dataset import Attribute, Dataset, Row, attribute_stats, load_csv
from .errors import EngineError
from .intent import (
    Candidate,
    DragBar,
    DragOutToFilter,
    RankingWeights,
    Recolor,
    Resize,
    Selection,
)
from .session import Session
from .visspec import (
    Channel,
    Paradigm,
    SortDirection,
    VisSpec,
    VisType,
    initial_spec,
    validate,
)
from .viewmodel import ViewModel, render

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "Candidate",
    "Channel",
    "Dataset",
    "DragBar",
    "DragOutToFilter",
    "EngineError",
    "Paradigm",
    "RankingWeights",
    "Recolor",
    "Resize",
    "Row",
    "Selection",
    "Session",
    "SortDirection",
    "ViewModel",
    "VisSpec",
    "VisType",
    "attribute_stats",
    "initial_spec",
    "load_csv",
    "render",
    "validate",
    "__version__",
]
