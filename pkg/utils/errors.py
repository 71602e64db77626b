class CasError(Exception):
    """Base class for every error raised by this library."""


# rqmc
class UnsupportedDimensionError(CasError, ValueError):
    pass


class DomainError(CasError, ValueError):
    pass


# linalg
class InvalidInputError(CasError, ValueError):
    pass


class NotPositiveDefiniteError(CasError, ValueError):
    pass


class UnknownConstructionError(CasError, ValueError):
    pass


# subspace
class EvaluationError(CasError):
    """Integrand returned a non-finite value.

    ``coordinate`` is the perturbed coordinate of the finite difference that
    produced it, or ``None`` for the unperturbed point.
    """
    def __init__(self, message, coordinate=None):
        super(EvaluationError, self).__init__(message)
        self.coordinate = coordinate


class DegenerateDirectionError(CasError, ValueError):
    pass


# preint / greeks / cde
class ContractViolationError(CasError):
    pass


class SignConditionError(CasError, ValueError):
    pass


# harness
class IncompatibleMethodError(CasError, ValueError):
    pass


class ConfigError(CasError, ValueError):
    pass
