"""Error taxonomy shared by every layer of the package.

The CLI maps each class to an exit status via ``exit_code``.
"""

from __future__ import annotations


class GermInvError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ExtensionUnsupported(GermInvError):
    """A needed algebraic number lies outside the supported field tower."""

    exit_code = 2


class ResourceExceeded(GermInvError):
    """A configured work cap (pair queue, staircase size) was hit."""

    exit_code = 2


class TruncationExceeded(GermInvError):
    """A series order could not be certified below the truncation cap."""

    exit_code = 2


class NeedsOverride(GermInvError):
    """The germ lies outside the automated path and needs user-supplied data."""

    exit_code = 1


class NotFinitelyDetermined(GermInvError):
    exit_code = 1


class InvalidOverride(GermInvError):
    exit_code = 1


class NotApplicable(GermInvError):
    exit_code = 1


class InternalInconsistency(GermInvError):
    exit_code = 3


class ParseError(GermInvError):
    """Syntax or semantic error in an expression or germ file."""

    exit_code = 1

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)
