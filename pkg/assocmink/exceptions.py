"""
Custom exceptions for assocmink.
"""


class AssocMinkError(Exception):
    """Base exception for assocmink."""

    pass


class InvalidPartitionError(AssocMinkError):
    """Coxeter partition is malformed or out of the supported range."""

    pass


class DiagonalError(AssocMinkError):
    """Diagonal label out of range or diagonal of the wrong kind."""

    pass


class DecompositionError(AssocMinkError):
    """Subset cannot be decomposed into up and down intervals."""

    pass


class FrameUndefinedError(DecompositionError):
    """Four-diagonal frame requested for a subset with several components."""

    pass


class ClassificationError(DecompositionError):
    """Frame shape contradicts every admissible case."""

    pass


class SpecError(AssocMinkError):
    """Right-hand side specification problems."""

    pass


class IncompleteSpecError(SpecError):
    """Facet values do not cover exactly the right sets of proper diagonals."""

    pass


class ContractViolationError(SpecError):
    """Formula applied outside its hypothesis."""

    pass


class ValidationExhaustedError(SpecError):
    """Sampled deformation failed validation after every retry."""

    pass


class PolytopeError(AssocMinkError):
    """Polytope arithmetic errors."""

    pass


class UnboundedPolytopeError(PolytopeError):
    """Inequality system does not describe a bounded polytope."""

    pass


class EmptyPolytopeError(PolytopeError):
    """Inequality system is infeasible."""

    pass


class DimensionMismatchError(PolytopeError):
    """Operands live in different ambient dimensions."""

    pass


class NegativeCoefficientError(PolytopeError):
    """Dilation factor of a simplex face is negative."""

    pass


class EnumerationLimitError(PolytopeError):
    """Vertex enumeration requested above the supported size."""

    pass


class StorageError(AssocMinkError):
    """Data storage related errors."""

    pass


class FileCorruptedError(StorageError):
    """Data file is corrupted or unreadable."""

    pass


class InvariantViolationError(AssocMinkError):
    """A verification suite found a counterexample."""

    def __init__(self, suite: str, detail: str):
        super().__init__(f"{suite}: {detail}")
        self.suite = suite
        self.detail = detail
