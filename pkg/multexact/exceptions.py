"""
Exception hierarchy shared by the library, the CLI and the HTTP service.
"""

from __future__ import annotations


class MultexactError(Exception):
    """Root of all errors raised by multexact."""


class InputError(MultexactError, ValueError):
    """Malformed or inconsistent input (tables, subsets, thresholds, specs)."""


class SupportTooLarge(MultexactError, RuntimeError):
    """An enumeration would exceed the configured cap."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds the configured limit of {limit}")
        self.what = what
        self.limit = limit
