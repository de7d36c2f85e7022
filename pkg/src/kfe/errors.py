"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Raised when graph input text is malformed. Carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CorruptionError(RuntimeError):
    """Internal state no longer satisfies a structural invariant (bad rollback record,
    re-insertion collision, shadow-check mismatch)."""


class MalformedStreamError(ValueError):
    """A solution diff stream cannot be replayed (pop underflow, bad framing)."""


class GuardError(ValueError):
    """An exact oracle was asked to run past its practical size guard."""
