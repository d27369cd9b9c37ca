"""Exception types raised across the package."""


class MZDualityError(Exception):
    """Base class for all package errors."""


class DimensionError(MZDualityError, ValueError):
    """Matrix shapes do not match the requested operation."""


class RejectedSizeError(DimensionError):
    """Result would exceed the supported joint dimension."""


class ContractViolation(MZDualityError, ValueError):
    """An input breaks a stated precondition (Hermiticity, orthonormality, ...)."""


class DomainError(MZDualityError, ValueError):
    """A scalar parameter lies outside its allowed range."""


class DegeneratePortError(MZDualityError, ArithmeticError):
    """The selected output port never fires, so conditional quantities are undefined."""


class InvalidObservableError(MZDualityError, ValueError):
    """Bias and direction do not describe a positive two-outcome POVM."""


class UnsupportedRegimeError(MZDualityError, ValueError):
    """The closed-form criterion does not cover this pair; use the oracle."""


class InfeasibleWitnessError(MZDualityError, ValueError):
    """A candidate joint-observable witness violates a positivity constraint."""


class ScenarioFormatError(MZDualityError, ValueError):
    """A scenario, strategy or observable file could not be parsed."""
