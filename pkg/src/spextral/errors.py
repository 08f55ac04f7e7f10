from __future__ import annotations

class Graph6Error(ValueError):
    """Malformed graph6 input. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ConvergenceError(RuntimeError):
    """An iterative solver stopped before meeting its tolerance.

    The best estimate reached so far is kept on ``best`` so callers can still
    inspect it. ``graph6`` names the offending graph when the solver ran
    inside a search.
    """

    def __init__(self, message: str, best=None, graph6: str | None = None):
        super().__init__(message)
        self.best = best
        self.graph6 = graph6


class UnsupportedPattern(ValueError):
    pass
