"""Exception hierarchy shared by every gptlab module.

The split mirrors the CLI exit codes: anything a user can fix by editing
input is an ``InputError`` (exit 1); a violated internal invariant, e.g. a
certificate that fails its own re-verification, is an ``InternalCheckError``
(exit 2).
"""

from __future__ import annotations


class GptLabError(Exception):
    """Base class for all gptlab errors."""


class InputError(GptLabError):
    """Malformed or inconsistent user input (bad file, bad vector, bad mode)."""


class DimensionMismatch(InputError):
    def __init__(self, left: int, right: int, context: str = ""):
        self.left = left
        self.right = right
        where = f" in {context}" if context else ""
        super().__init__(f"dimension mismatch{where}: {left} vs {right}")


class TheoryConsistencyError(GptLabError):
    """A probability left [0, 1] or a theory-level contract was violated."""


class InternalCheckError(GptLabError):
    """An internal invariant failed; indicates a bug, never bad input."""
