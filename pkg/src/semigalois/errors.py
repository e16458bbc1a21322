"""Exception hierarchy.

Each error carries an ``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class SemiGaloisError(Exception):
    exit_code = 3


class InputError(SemiGaloisError, ValueError):
    exit_code = 1


# domain geometry
class OverlappingHoles(InputError):
    pass


class HoleOutsideOuter(InputError):
    pass


class BasepointInHole(InputError):
    pass


class SpiderBlocked(InputError):
    pass


# Weierstrass condition
class WeierstrassViolation(SemiGaloisError):
    exit_code = 2

    def __init__(self, message: str, x: complex | None = None):
        super().__init__(message)
        self.x = x


class HomotopyLeavesB(WeierstrassViolation):
    pass


# numerical failures
class NumericalFailure(SemiGaloisError):
    exit_code = 3


class RootCollision(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    pass


class StepUnderflow(NumericalFailure):
    pass


class AmbiguousMatch(NumericalFailure):
    pass


class DuplicateRoots(NumericalFailure):
    pass


class SingularSystem(NumericalFailure):
    pass


class ToleranceExceeded(NumericalFailure):
    pass


class InterpolationFailure(NumericalFailure):
    pass


class ResidualTooLarge(NumericalFailure):
    pass


class GroupMismatch(NumericalFailure):
    pass


class BoundExhausted(NumericalFailure):
    pass


# group theory
class OrderCapExceeded(SemiGaloisError):
    exit_code = 4


class NotASubgroup(SemiGaloisError, ValueError):
    exit_code = 1


# realization
class SearchBudgetExhausted(SemiGaloisError):
    exit_code = 5
