"""Exception hierarchy shared by all kronspec modules.

The CLI maps each class to an exit code (see ``cli/kron_cli.py``).
"""

from typing import Any


class KronspecError(Exception):
    """Base class for all kronspec errors."""


class InputError(KronspecError, ValueError):
    """Malformed or mismatched input: bad partition text, size mismatch, etc."""


class ConsistencyError(KronspecError):
    """An internal contract was violated (inexact division, failed reconstruction)."""


class FalsificationError(KronspecError):
    """A theorem check failed. Carries the offending data for the report.

    Attributes:
        payload: JSON-friendly description of the counterexample.
    """

    def __init__(self, message: str, payload: dict[str, Any] | None = None):
        super().__init__(message)
        self.payload = payload or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.payload:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.payload.items())
        return f"{base} ({details})"
