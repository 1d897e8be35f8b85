"""Higher-order photon statistics of the deformed number operator ``M = A+ A``.

Both measures are built on the central moment ``<(dM)^N>``::

    g^(N)(0) = (<(dM)^N> - <M>) / <M>^N + 1
    Q_N      = <(dM)^N> / <M> - 1

These are used exactly as defined. Note that for a Poisson distribution the
fourth central moment is ``<M> + 3<M>^2``, so ``Q_4`` of an undeformed coherent
state is ``3<M>``, not zero; only ``N = 2`` has a zero Poissonian baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroMeanError
from .moments import DEFAULT_TOL, expval_number_power
from .qalgebra import DeformationParam

__all__ = ["CLASSIFY_TOL", "StatisticsReport", "central_moment_M", "correlation", "mandel"]

CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class StatisticsReport:
    order: int
    mean_M: float
    central_moment: float
    g: float | None
    Q: float
    alpha: complex
    m: int
    q: float

    @property
    def classification(self) -> str:
        if self.Q < -CLASSIFY_TOL:
            return "sub_poissonian"
        if self.Q > CLASSIFY_TOL:
            return "super_poissonian"
        return "poissonian"


def _dp(dp) -> DeformationParam:
    return dp if isinstance(dp, DeformationParam) else DeformationParam(dp)


def central_moment_M(N: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> float:
    """``<(M - <M>)^N>`` from the binomial sum over ``<M^(N-k)> <M>^k``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N == 1 or complex(alpha) == 0:
        # alpha = 0 is the number eigenstate |m>, where dM vanishes identically
        return 0.0
    dp = _dp(dp)
    mean = expval_number_power(1, alpha, m, dp, tol).value.real
    total = 0.0
    for k in range(N + 1):
        total += math.comb(N, k) * (-1) ** k * expval_number_power(N - k, alpha, m, dp, tol).value.real * mean**k
    return total


def _report(N, alpha, m, dp, tol) -> StatisticsReport:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    dp = _dp(dp)
    mean = expval_number_power(1, alpha, m, dp, tol).value.real
    if mean <= 0.0:
        raise ZeroMeanError("mean photon number is zero (vacuum state)")
    central = central_moment_M(N, alpha, m, dp, tol)
    g = (central - mean) / mean**N + 1.0
    Q = central / mean - 1.0
    return StatisticsReport(N, mean, central, g, Q, complex(alpha), m, dp.q)


def correlation(N: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> StatisticsReport:
    """Zero-delay correlation ``g^(N)(0)`` (the report also carries ``Q_N``)."""
    return _report(N, alpha, m, dp, tol)


def mandel(N: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> StatisticsReport:
    """Generalised Mandel parameter ``Q_N`` (the report also carries ``g^(N)(0)``)."""
    return _report(N, alpha, m, dp, tol)
