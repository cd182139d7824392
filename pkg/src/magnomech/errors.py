"""Exception types raised by the numerical layers.

Each class marks a distinct failure mode so callers (and the CLI) can map
them to exit codes without parsing messages.
"""


class MagnomechError(Exception):
    """Base class for all package-specific failures."""


class StabilityError(MagnomechError):
    """Drift matrix is not Hurwitz, so no steady state exists.

    Carries the offending spectral abscissa in ``abscissa``.
    """

    def __init__(self, message, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class NumericsError(MagnomechError):
    """A linear-algebra result failed its residual or consistency bound."""


class ConvergenceError(MagnomechError):
    """Time integration hit its horizon before meeting the convergence test.

    Carries the last observed derivative norm in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DivergenceError(MagnomechError):
    """Non-finite entries appeared during propagation.

    ``time_reached`` records how far the integration got (seconds).
    """

    def __init__(self, message, time_reached=None):
        super().__init__(message)
        self.time_reached = time_reached


class BudgetError(MagnomechError):
    """Requested integration would exceed the step budget."""


class FixedPointError(MagnomechError):
    """Semiclassical self-consistency iteration did not settle.

    ``oscillating`` is True when the iterates alternated instead of
    contracting, the usual signature of entering a bistable branch.
    """

    def __init__(self, message, oscillating=False):
        super().__init__(message)
        self.oscillating = oscillating


class SearchError(MagnomechError):
    """Drive-amplitude search could not reach the requested coupling."""


class BracketError(MagnomechError):
    """Root bracket invalid: the sought sign change is not inside it."""


class ConfigError(MagnomechError):
    """Bad configuration key, value, or combination."""
