"""Exception hierarchy shared by every module."""


class ReslatError(Exception):
    """Base class for all errors raised by reslat."""


class AxiomError(ReslatError, ValueError):
    """Raw tables do not define a residuated lattice.

    ``witness`` holds the element indices exhibiting the failure, when there
    is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = tuple(witness) if witness is not None else None


class NoUnit(AxiomError):
    pass


class NotPartialOrder(AxiomError):
    pass


class NotLattice(AxiomError):
    pass


class NotBounded(AxiomError):
    pass


class NotCommutative(AxiomError):
    pass


class NotAssociative(AxiomError):
    pass


class ResiduationFails(AxiomError):
    pass


class OrderMismatch(AxiomError):
    pass


class CharacterizationMismatch(ReslatError, RuntimeError):
    """Two routes that must agree on a verdict did not.

    Always a bug (or a genuine erratum in a claimed equivalence); never
    resolved by voting.
    """

    def __init__(self, message, outcomes=None):
        super().__init__(message)
        self.outcomes = dict(outcomes or {})


class NotProper(ReslatError, ValueError):
    """Operation defined only for proper filters got the whole carrier."""


class NotAFilter(ReslatError, ValueError):
    pass


class WellDefinednessFailure(ReslatError, RuntimeError):
    pass


class SizeOutOfRange(ReslatError, ValueError):
    pass


class FormatError(ReslatError, ValueError):
    """Problem in a lattice definition file; carries a 1-based position."""

    def __init__(self, message, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.col = col


class LatticeSyntaxError(FormatError):
    pass


class UnknownName(FormatError):
    pass


class DimensionMismatch(FormatError):
    pass


class DuplicateName(FormatError):
    pass
