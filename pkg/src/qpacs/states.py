"""Truncated Fock-basis vectors for q-coherent and photon-added coherent states.

The photon-added coherent state (PACS) is ``A+^m |alpha>_q`` renormalised::

    |alpha, m>_q  ~  sum_n alpha^n sqrt([n+m]_q!) / [n]_q!  |n+m>_q

and ``m = 0`` recovers the q-coherent state with coefficients
``alpha^n / sqrt([n]_q!)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._series import power_log, sum_log_terms
from .errors import DivergenceError, TruncationError
from .qalgebra import DeformationParam, ln_factorial_table

__all__ = [
    "DISK_MARGIN",
    "ModeState",
    "NormalizationPair",
    "check_disk",
    "coherent_state",
    "fock_state",
    "ln_normalizations",
    "pacs_state",
]

DISK_MARGIN = 0.98
LEVEL_CAP = 4096


def check_disk(alpha: complex, dp: DeformationParam) -> None:
    """Raise :class:`DivergenceError` unless ``|alpha| < DISK_MARGIN * radius``."""
    if not abs(alpha) < DISK_MARGIN * dp.radius:
        raise DivergenceError(
            f"|alpha| = {abs(alpha):.6g} outside the enforced disk "
            f"{DISK_MARGIN} * {dp.radius:.6g} for q = {dp.q}"
        )


@dataclass(frozen=True)
class ModeState:
    """A pure single-mode state truncated at Fock level ``n_max``."""

    alpha: complex
    m: int
    dp: DeformationParam
    coeffs: np.ndarray
    tail_bound: float

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    def to_rows(self):
        """``(level, re, im)`` triples, the CSV serialisation used by the CLI."""
        return [(k, float(c.real), float(c.imag)) for k, c in enumerate(self.coeffs)]


@dataclass(frozen=True)
class NormalizationPair:
    """Logarithms of the coherent and photon-added normalisation constants."""

    ln_N_coh: float
    ln_N_pacs: float

    @property
    def ln_N_hat(self) -> float:
        return self.ln_N_coh + self.ln_N_pacs


def _pacs_log_weights(alpha, m, dp):
    log_abs = math.log(abs(alpha)) if alpha != 0 else -math.inf

    def log_term(n):
        lf = ln_factorial_table(int(n[-1]) + m, dp)
        return power_log(2.0 * log_abs, n) + lf[n + m] - 2.0 * lf[n]

    return log_term


def ln_normalizations(alpha: complex, m: int, dp, n_max: int | None = None,
                      tol: float = 1e-14) -> NormalizationPair:
    """Log-domain ``N(alpha, q)`` and ``N(alpha, m, q)``.

    ``N^2(alpha, q) = sum |alpha|^(2n) / [n]_q!`` and
    ``N^2(alpha, q) N^2(alpha, m, q) = sum |alpha|^(2n) [n+m]_q! / ([n]_q!)^2``.
    ``n_max`` fixes the number of series terms; otherwise the series is
    summed adaptively to relative ``tol``.
    """
    dp = dp if isinstance(dp, DeformationParam) else DeformationParam(dp)
    check_disk(alpha, dp)
    n_terms = None if n_max is None else n_max + 1
    coh = sum_log_terms(_pacs_log_weights(alpha, 0, dp), tol, 8192, n_terms)
    hat = sum_log_terms(_pacs_log_weights(alpha, m, dp), tol, 8192, n_terms)
    if not (coh.converged and hat.converged):
        raise TruncationError("normalisation series did not converge")
    ln_coh = 0.5 * coh.log_total
    return NormalizationPair(ln_coh, 0.5 * hat.log_total - ln_coh)


def pacs_state(alpha: complex, m: int, dp, tol: float = 1e-12,
               n_max: int | None = None, cap: int = LEVEL_CAP) -> ModeState:
    """Photon-added coherent state ``|alpha, m>_q`` as a truncated coefficient vector.

    The number of coherent-series terms grows in blocks of 64 until both the last
    block and a geometric tail estimate fall below ``tol`` (relative probability).
    Passing ``n_max`` fixes the truncation level instead.
    """
    dp = dp if isinstance(dp, DeformationParam) else DeformationParam(dp)
    alpha = complex(alpha)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    check_disk(alpha, dp)
    n_terms = None if n_max is None else max(n_max - m + 1, 1)
    if alpha == 0 and n_terms is None:
        n_terms = 1  # only the n = 0 term survives: the Fock state |m>
    res = sum_log_terms(_pacs_log_weights(alpha, m, dp), tol, cap, n_terms)
    if not res.converged:
        raise TruncationError(
            f"level cap {cap} reached before tail < {tol} (alpha={alpha}, q={dp.q})"
        )
    mags = np.exp(0.5 * (res.log_terms - res.log_total))
    n = np.arange(res.n_terms)
    phase = np.exp(1j * cmath.phase(alpha) * n) if alpha != 0 else np.ones(res.n_terms)
    coeffs = np.zeros(res.n_terms + m, dtype=complex)
    coeffs[m:] = mags * phase
    coeffs.setflags(write=False)
    return ModeState(alpha, m, dp, coeffs, res.tail)


def coherent_state(alpha: complex, dp, tol: float = 1e-12,
                   n_max: int | None = None, cap: int = LEVEL_CAP) -> ModeState:
    """q-coherent state ``|alpha>_q``, the eigenvector of ``A_q`` with eigenvalue alpha."""
    return pacs_state(alpha, 0, dp, tol=tol, n_max=n_max, cap=cap)


def fock_state(m: int, dp, n_max: int | None = None) -> ModeState:
    """Number state ``|m>_q`` (the PACS of the vacuum)."""
    return pacs_state(0.0, m, dp, n_max=n_max)
