"""Exception and warning classes shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ExactnessError(ValueError):
    """Exact rational output was requested but the value is irrational."""


class MomentPositivityError(ValueError):
    """The Hankel form of a moment sequence is not positive definite.

    Attributes
    ----------
    n : int
        First degree at which the norm ``xi_n`` failed to be positive.
    """

    def __init__(self, n, value):
        self.n = n
        self.value = value
        super().__init__(
            f"moment sequence is not positive definite: xi_{n} = {value}"
        )


class OutOfScopeError(NotImplementedError):
    """The requested case has no closed form in this library."""


class PrecisionWarning(RuntimeWarning):
    """A value was computed outside its validated accuracy domain."""


class DivergenceWarning(RuntimeWarning):
    """A series was summed outside its radius of convergence."""


class QuadratureConvergenceWarning(RuntimeWarning):
    """Doubling the number of quadrature nodes changed the result too much."""
