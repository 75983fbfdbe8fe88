"""Exception hierarchy shared by the orthologic modules."""


class OrthologicError(Exception):
    """Base class for every error raised by this package."""


class LatticeError(OrthologicError):
    pass


class InvalidSpec(LatticeError):
    pass


class CycleInCovers(LatticeError):
    pass


class NoBottom(LatticeError):
    pass


class NoTop(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, message, pair=None, operation=None):
        super().__init__(message)
        self.pair = pair
        self.operation = operation


class OrthoNotInvolution(LatticeError):
    pass


class OrthoNotOrderReversing(LatticeError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class OrthoNotComplement(LatticeError):
    """a ∩ a' is not the bottom or a ∪ a' is not the top."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class NotComplementClosed(LatticeError):
    pass


class UnknownBuiltin(LatticeError):
    pass


class FormatError(OrthologicError):
    """A text file (lattice, condition, derivation) could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TermSyntaxError(OrthologicError):
    def __init__(self, message, position=None, text=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position
        self.text = text


class AmbiguousChain(TermSyntaxError):
    pass


class UnknownCondition(OrthologicError):
    pass


class UnboundVariable(OrthologicError):
    pass


class TooManyVariables(OrthologicError):
    pass


class BudgetExceeded(OrthologicError):
    pass


class InternalInconsistency(OrthologicError):
    pass


class DerivationError(OrthologicError):
    """A derivation line failed verification."""

    kind = "DerivationError"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BadHypothesisIndex(DerivationError):
    kind = "BadHypothesisIndex"


class NotAnAxiomInstance(DerivationError):
    kind = "NotAnAxiomInstance"


class UnknownAxiom(NotAnAxiomInstance):
    kind = "UnknownAxiom"


class BadMP(DerivationError):
    kind = "BadMP"
