"""Higher-order quadrature squeezing coefficients.

Hillery type, for ``Y_N(phi) = (A^N e^{-iN phi} + A+^N e^{iN phi}) / 2``::

    S_H = 2 (Re[(<A^2N> - <A^N>^2) e^{-2iN phi}] - |<A^N>|^2 + <A+^N A^N>)
          / (<A^N A+^N> - <A+^N A^N>)

Hong-Mandel type, for ``Y(phi) = (A e^{-i phi} + A+ e^{i phi}) / 2``::

    S_HM = (4^N <(dY)^2N> - (2N-1)!! <[A, A+]^N>) / ((2N-1)!! <[A, A+]^N>)

The commutator power enters through its expectation value in the state. The
quadrature moments ``<Y^j>`` come from the exact normal-ordered expansions of
:mod:`qpacs.operator_words`, which reach any order up to the rewriter cap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateDenominator
from .moments import (
    DEFAULT_TOL,
    expval_antinormal,
    expval_commutator_power,
    expval_normal,
    expval_normal_form,
)
from .operator_words import QuadratureExpansion, quadrature_power
from .qalgebra import DeformationParam, double_factorial_odd

__all__ = ["SqueezingReport", "hillery", "hong_mandel", "quadrature_moments"]

DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class SqueezingReport:
    kind: str
    order: int
    phi: float
    value: float
    numerator: float
    denominator: float
    alpha: complex
    m: int
    q: float

    @property
    def squeezed(self) -> bool:
        return self.value < 0


def _dp(dp) -> DeformationParam:
    return dp if isinstance(dp, DeformationParam) else DeformationParam(dp)


def hillery(alpha: complex, m: int, dp, N: int, phi: float, tol: float = DEFAULT_TOL) -> SqueezingReport:
    """Hillery-type coefficient ``S_H`` of order ``N`` at quadrature angle ``phi``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    dp = _dp(dp)
    alpha = complex(alpha)
    # <A^k> is the conjugate of <A+^k>
    a_n = expval_normal(N, 0, alpha, m, dp, tol).value.conjugate()
    a_2n = expval_normal(2 * N, 0, alpha, m, dp, tol).value.conjugate()
    normal = expval_normal(N, N, alpha, m, dp, tol).value.real
    anti = expval_antinormal(N, N, alpha, m, dp, tol).value.real
    phase = cmath.exp(-2j * N * phi)
    numerator = 2.0 * (((a_2n - a_n * a_n) * phase).real - abs(a_n) ** 2 + normal)
    denominator = anti - normal
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f"<[A^{N}, A+^{N}]> = {denominator:.3g}")
    return SqueezingReport("hillery", N, phi, numerator / denominator, numerator,
                           denominator, alpha, m, dp.q)


def quadrature_moments(alpha: complex, m: int, dp, order: int, phi: float,
                       tol: float = DEFAULT_TOL,
                       expansion: Callable[[int], QuadratureExpansion] = quadrature_power) -> list[float]:
    """``[<Y^0>, <Y^1>, ..., <Y^order>]`` at angle ``phi``.

    ``expansion`` maps ``j`` to the normal-ordered form of ``Y^j``; the default is
    the exact rewriter output.
    """
    dp = _dp(dp)
    out = [1.0]
    for j in range(1, order + 1):
        out.append(expval_normal_form(expansion(j), alpha, m, dp, tol, phi=phi).value.real)
    return out


def _mean_quadrature_power(a_mean: complex, ad_mean: complex, phi: float, k: int) -> float:
    # <Y>^k = sum_s C(k, s) 2^-k e^{i phi (2s - k)} <A>^(k-s) <A+>^s
    total = 0j
    for s in range(k + 1):
        total += math.comb(k, s) * cmath.exp(1j * phi * (2 * s - k)) * a_mean ** (k - s) * ad_mean**s
    return (total / 2**k).real


def hong_mandel(alpha: complex, m: int, dp, N: int, phi: float, tol: float = DEFAULT_TOL,
                expansion: Callable[[int], QuadratureExpansion] = quadrature_power) -> SqueezingReport:
    """Hong-Mandel-type coefficient ``S_HM`` of order ``2N`` at angle ``phi``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    dp = _dp(dp)
    alpha = complex(alpha)
    raw = quadrature_moments(alpha, m, dp, 2 * N, phi, tol, expansion)
    a_mean = expval_normal(0, 1, alpha, m, dp, tol).value
    ad_mean = a_mean.conjugate()
    central = 0.0
    for k in range(2 * N + 1):
        central += math.comb(2 * N, k) * (-1) ** k * raw[2 * N - k] * _mean_quadrature_power(a_mean, ad_mean, phi, k)
    dfact = double_factorial_odd(N)
    comm = expval_commutator_power(N, alpha, m, dp, tol).value.real
    numerator = 4**N * central - dfact * comm
    denominator = dfact * comm
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f"(2N-1)!! <[A, A+]^{N}> = {denominator:.3g}")
    return SqueezingReport("hong_mandel", N, phi, numerator / denominator, numerator,
                           denominator, alpha, m, dp.q)
