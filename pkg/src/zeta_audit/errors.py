"""Exception types shared across the toolkit."""


class ZetaAuditError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetaAuditError, ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class NearSingularityError(DomainError):
    """Evaluation too close to a zero or pole to be trusted."""


class QuadratureError(ZetaAuditError, ArithmeticError):
    """Integrand produced a non-finite value."""


class CoverageError(DomainError):
    """Request exceeds the range covered by loaded data (sieve or zeros)."""


class CapacityError(ZetaAuditError, MemoryError):
    """Requested table does not fit the memory budget."""


class ConventionError(DomainError):
    """Argument violates a summation convention (e.g. integer abscissa)."""


class ParseError(ZetaAuditError, ValueError):
    """Malformed data file."""


class ConstructionError(ZetaAuditError, RuntimeError):
    """A greedy construction could not satisfy its invariants."""


class UnknownClaimError(ZetaAuditError, KeyError):
    """Audit claim id is not registered."""
