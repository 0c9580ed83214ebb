"""Exception hierarchy shared by every stage of the construction."""

from __future__ import annotations


class AVDError(Exception):
    """Base class. ``stage`` is filled in by the orchestrator when known."""

    stage: str | None = None

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class InvalidInput(AVDError, ValueError):
    """Malformed graph, lists or files; maps to CLI exit code 2."""


class IsolatedEdgeError(InvalidInput):
    """The graph has a component consisting of two vertices."""


class GraphFormatError(InvalidInput):
    pass


class ListTooShort(AVDError):
    """A greedy routine was asked to run below its counting guarantee."""


class InfeasibleThresholds(AVDError):
    """A threshold can never be met for the given lists or degrees."""


class ResampleBudgetExhausted(AVDError):
    def __init__(self, msg: str, resamples: int = 0):
        super().__init__(msg)
        self.resamples = resamples


class ColouringNotFound(AVDError):
    pass


class NoFreeReservedColour(AVDError):
    pass


class DoublingBudgetExceeded(AVDError):
    pass


class ReductionLogError(AVDError):
    pass


class OracleCapExceeded(InvalidInput):
    """An exhaustive search was asked beyond its size caps."""
