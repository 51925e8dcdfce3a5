"""
Exception hierarchy for the quaternionic equation solver.
Algebra and solver layers raise these; main.py maps them to exit codes.
"""

from typing import Optional


class QuaternionSolverError(Exception):
    """Base class for every error raised by the package"""
    pass


class DegenerateInputError(QuaternionSolverError):
    """
    Raised when a closed form cannot be applied: zero divisor, vanishing
    Delta or vanishing Re(Phi h).
    """

    def __init__(self,
                 message: str,
                 delta: Optional[float] = None,
                 det_a: Optional[float] = None,
                 det_m: Optional[float] = None):
        super().__init__(message)
        self.delta = delta
        self.det_a = det_a
        self.det_m = det_m

    def to_dict(self) -> dict:
        return {
            "error": str(self),
            "delta": self.delta,
            "det_a": self.det_a,
            "det_m": self.det_m
        }


class SingularSystemError(QuaternionSolverError):
    """Raised by Gaussian elimination when a pivot falls below threshold"""

    def __init__(self, message: str, pivot: Optional[float] = None):
        super().__init__(message)
        self.pivot = pivot


class InvalidGradeError(QuaternionSolverError):
    """Raised when a multivector does not have the grade an operation needs"""
    pass


class SchemaError(QuaternionSolverError):
    """Raised when an equation file does not follow the expected JSON layout"""
    pass
