"""
LRJ Calculus Workbench
Structure Errors
"""

from typing import Optional

from ..cas.expressions import ScalarExpr


class StructureError(ValueError):
    """Base class for structure-level failures."""


class DegenerateError(StructureError):
    """A linear system is singular; ``witness`` is the vanishing determinant or Pfaffian."""

    def __init__(self, message: str, witness: Optional[ScalarExpr] = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness: {witness})")


class PreconditionError(StructureError):
    """An operation was called outside its precondition."""


class LiftRejected(StructureError):
    """The lift constraint d[g*beta + i_E d(beta)] = 0 does not hold."""

    def __init__(self, message: str, witness: str = ""):
        self.witness = witness
        super().__init__(f"{message}: {witness}" if witness else message)


class InternalConsistencyError(StructureError):
    """Two independent routes to the same verdict disagree."""
