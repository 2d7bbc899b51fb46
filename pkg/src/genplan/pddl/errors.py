"""Exceptions raised by the PDDL layer."""

from __future__ import annotations


class PddlError(Exception):
    """Base class for all PDDL-related errors."""


class ParseError(PddlError):
    """Malformed PDDL text. Carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnsupportedFeatureError(PddlError):
    """Well-formed PDDL using a construct outside the supported subset."""

    def __init__(self, feature: str, line: int | None = None, column: int | None = None):
        self.feature = feature
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"unsupported feature: {feature}{where}")


class ValidationError(PddlError):
    """Structurally parseable input that violates a model invariant.

    ``code`` is a stable machine-readable tag, e.g. ``unknown-predicate``,
    ``arity-mismatch``, ``type-mismatch``, ``domain-mismatch``.
    """

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


class ActionSyntaxError(PddlError):
    """A ground-action string failed one of the syntax checks.

    ``code`` is one of ``missing-parentheses``, ``unknown-operator``,
    ``unknown-object``, ``wrong-arity``, ``type-mismatch``; ``token`` is
    the offending fragment of the input string.
    """

    def __init__(self, code: str, token: str, message: str):
        self.code = code
        self.token = token
        super().__init__(message)
