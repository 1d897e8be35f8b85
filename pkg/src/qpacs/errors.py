"""Exception hierarchy shared by every qpacs module."""


class QPACSError(Exception):
    """Base class for all library errors."""


class DivergenceError(QPACSError, ValueError):
    """|alpha| lies outside the enforced convergence disk."""


class TruncationError(QPACSError, RuntimeError):
    """A state could not be truncated to the requested tolerance within the level cap."""


class ToleranceError(QPACSError, RuntimeError):
    """A moment series did not reach the requested tolerance within the term cap."""


class HeadroomError(QPACSError, ValueError):
    """Matrix truncation too small to apply an operator word exactly."""


class ResourceError(QPACSError, ValueError):
    """Requested expansion order exceeds the supported cap."""


class DegenerateDenominator(QPACSError, ArithmeticError):
    """A squeezing coefficient denominator vanished."""


class ZeroMeanError(QPACSError, ArithmeticError):
    """Photon statistics requested for a state with zero mean photon number."""
