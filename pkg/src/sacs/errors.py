"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class SacsError(Exception):
    """Base class for every error raised by :mod:`sacs`."""


class DegreeError(SacsError, ValueError):
    """Operands have incompatible cohomological degrees."""


class InputError(SacsError):
    """Structurally invalid input document.

    ``path`` locates the offending key (``groups[3].torsion[1]``); ``line`` and
    ``column`` are set for syntax errors.
    """

    def __init__(self, reason: str, path: str = "", line: int | None = None,
                 column: int | None = None):
        self.reason = reason
        self.path = path
        self.line = line
        self.column = column
        where = path or "<document>"
        if line is not None:
            where += f" (line {line}, column {column})"
        super().__init__(f"{where}: {reason}")


class InconsistentInput(SacsError):
    """Characteristic-class data contradicts itself (e.g. p2 - q1^2 not divisible by 2)."""


class IntegralityViolation(SacsError):
    """The Riemann-Roch pairing came out half-integral.

    Genuine manifold data can never trigger this, so the decision dichotomy does
    not apply to the input.
    """

    def __init__(self, message: str, d=None, x=None, value: int | None = None):
        self.d = d
        self.x = x
        self.value = value
        super().__init__(message)


class SearchBoundError(SacsError):
    """Rank of H^2 exceeds the configured bound for the Spin^c class search."""


class InapplicablePath(SacsError):
    """A fast-path decision was requested outside its hypotheses."""


class PathDisagreement(SacsError):
    """Two decision routes that must agree returned different answers."""
