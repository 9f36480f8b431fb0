"""
Exception hierarchy
InputError family -> exit code 2, InvariantViolation -> exit code 1
"""


class ToruscopeError(Exception):
    """Base class for every error raised by the toolkit"""


class InputError(ToruscopeError, ValueError):
    """Bad input or violated precondition"""


class NonErgodicError(InputError):
    """Matrix is singular or has an eigenvalue that is a root of unity"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ScanCapExceeded(InputError):
    """No admissible prime below the scan cap (says nothing about existence)"""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class InvariantViolation(ToruscopeError, AssertionError):
    """A checked mathematical invariant turned out false"""
