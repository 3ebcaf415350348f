"""Error types shared across the package.

Two families matter to callers: validation errors (malformed or
out-of-domain input; CLI exit 65) and resource errors (an explicit size cap
or search budget was exceeded; CLI exit 75).  Resource limits always fail
loudly — nothing is ever silently truncated.
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Input is malformed or refers to something that does not exist."""


class ParseError(ValidationError):
    """Text input could not be parsed; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ResourceError(RuntimeError):
    """A size cap or search budget was exceeded before the answer was known."""
