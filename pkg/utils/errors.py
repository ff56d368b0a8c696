#!/usr/bin/env python3
"""
Exception hierarchy for the symmetric product engine and the exit codes the
command line maps them to.
"""

from typing import Optional, Sequence


EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_FLAGS = 2
EXIT_PARSE = 3
EXIT_INVARIANT = 4
EXIT_POLE = 5
EXIT_PARITY = 6


class SymprodError(Exception):
    """Base class for all errors raised by the engine."""

    exit_code = EXIT_INVARIANT


class ConfigurationError(SymprodError):
    """Bad command line flag or environment value."""

    exit_code = EXIT_BAD_FLAGS


class ParseError(SymprodError):
    """A model file, class file or polynomial flag could not be parsed, or an output file could not be written."""

    exit_code = EXIT_PARSE


class InvariantViolation(SymprodError):
    """
    A model or class breaks one of its structural invariants.

    Args:
        invariant: Short name of the violated invariant (e.g. 'commutativity')
        indices: The offending (degree, basis index, ...) tuple
        detail: Optional free-form explanation
    """

    exit_code = EXIT_INVARIANT

    def __init__(self, invariant: str, indices: Sequence[int] = (), detail: str = ""):
        self.invariant = invariant
        self.indices = tuple(indices)
        self.detail = detail
        message = f"{invariant} violated at {self.indices}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class ModelMismatch(SymprodError):
    """Series built over different space models were combined."""


class ModuleMismatch(SymprodError):
    """A class was used with a map or operation over a different module."""


class PoleError(SymprodError):
    """A rational function has a non-removable singularity at the evaluation point."""

    exit_code = EXIT_POLE

    def __init__(self, point, label: Optional[str] = None):
        self.point = point
        self.label = label
        where = f" in coefficient of {label}" if label is not None else ""
        super().__init__(f"pole at y = {point}{where}")

    def with_label(self, label: str) -> "PoleError":
        return PoleError(self.point, label)


class ParityMismatch(SymprodError):
    """Signature and Euler characteristic have different parity."""

    exit_code = EXIT_PARITY


class NonzeroConstantTerm(SymprodError):
    """pont_exp was called on a series whose t^0 coefficient is not zero."""


class NonUnitConstantTerm(SymprodError):
    """pont_log was called on a series whose t^0 coefficient is not the unit."""


class NotYFree(SymprodError):
    """A pipeline that works over the rationals received a class depending on y."""
