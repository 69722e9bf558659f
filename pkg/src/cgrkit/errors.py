"""Exception types shared across the package.

The CLI maps :class:`InputError` to exit code 2 and :class:`ContractError`
to exit code 3.
"""


class CgrError(Exception):
    """Base class for all package errors."""


class InputError(CgrError, ValueError):
    """Malformed or unusable input (parse failures, empty files, bad tables)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ContractError(CgrError, ValueError):
    """Inputs that parse but violate an operation's contract.

    Typical cases are mismatched image dimensions or a symbol stream whose
    alphabet does not fit the polygon it is played on.
    """
