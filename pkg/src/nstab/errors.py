"""Exception types raised by nstab."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ParameterError(ValueError):
    """A distribution or problem was constructed with invalid parameters."""


class SamplerOverflowError(OverflowError):
    """A sampled integer exceeded the configured cap."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class ConvergenceError(RuntimeError):
    """A root bracket could not be established or bisection did not converge."""


class InstabilityError(ArithmeticError):
    """Coefficient extraction would amplify round-off beyond usefulness."""


class NonnegativityError(ValueError):
    """A discretized family produced a negative probability mass."""


class RegistryError(LookupError):
    """Unknown pairing tag or no registered pairing for a (family, law, mode)."""


class PathEvaluationError(NotImplementedError):
    """Complex path evaluation is not available for this family."""
