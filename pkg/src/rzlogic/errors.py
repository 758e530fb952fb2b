"""Exception hierarchy shared by every engine and the CLI."""


class RZError(Exception):
    """Base class for all errors raised by rzlogic."""


class DomainError(RZError, ValueError):
    """Invalid partial order: cycle, unknown element, missing bottom."""


class ProgramError(RZError, ValueError):
    """A program does not meet the precondition of an operation."""


class BoundExceeded(RZError):
    """A desk-scale size bound was exceeded."""


class ParseError(RZError, ValueError):
    """Syntax or semantic error in an input file, with location."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
