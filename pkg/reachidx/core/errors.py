"""
Error types raised by the service modules.

The CLI is the only place these become exit codes.
"""


class ReachIndexError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code = 1


class InputFormatError(ReachIndexError):
    pass


class InvalidParameter(ReachIndexError, ValueError):
    pass


class OracleCapExceeded(ReachIndexError):
    pass


class NoPositivePairs(ReachIndexError):
    pass


class NoNegativePairs(ReachIndexError):
    pass


class CycleDetected(ReachIndexError):
    pass


class UncoverableElement(ReachIndexError):
    pass


class IndexFormatError(ReachIndexError):
    pass


class VerificationFailed(ReachIndexError):
    exit_code = 2
