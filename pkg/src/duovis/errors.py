"""Exception types shared across the engine.

Every error carries a stable ``code`` string so the service layer can map
failures onto HTTP statuses without string-matching messages.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine failures."""

    code = "engine_error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


# data layer

class MalformedCsv(EngineError):
    code = "malformed_csv"


class DuplicateAttributeName(EngineError):
    code = "duplicate_attribute_name"


class UnknownAttribute(EngineError):
    code = "unknown_attribute"


# spec state

class InvalidSpec(EngineError):
    code = "invalid_spec"


class MissingAxes(EngineError):
    code = "missing_axes"


class IllegalChange(EngineError):
    code = "illegal_change"


class StaleRevision(EngineError):
    code = "stale_revision"


# manual operations

class UnknownRule(EngineError):
    code = "unknown_rule"


class OutOfDomain(EngineError):
    code = "out_of_domain"


class WrongVisType(EngineError):
    code = "wrong_vis_type"


class ChannelUnbound(EngineError):
    code = "channel_unbound"


class RequiredChannel(EngineError):
    code = "required_channel"


# demonstrations / recommendations

class InvalidDemonstration(EngineError):
    code = "invalid_demonstration"


class EmptySelection(InvalidDemonstration):
    code = "empty_selection"


class UnknownCategory(EngineError):
    code = "unknown_category"


class UnknownRecommendation(EngineError):
    code = "unknown_recommendation"


class Expired(EngineError):
    code = "expired"


# history

class NothingToUndo(EngineError):
    code = "nothing_to_undo"


class NothingToRedo(EngineError):
    code = "nothing_to_redo"


# service / cli

class UnknownSession(EngineError):
    code = "unknown_session"


class ScriptError(EngineError):
    code = "script_error"

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index
