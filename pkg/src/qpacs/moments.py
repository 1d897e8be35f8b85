"""Expectation values in the q-deformed photon-added coherent state.

Closed-form series (all terms positive, summed in log space)::

    <A+^N A^L>   = conj(alpha)^(N-L) / Nhat^2 * sum_n |alpha|^(2n) [n+m]! [n+m+D]!
                                                 / ([n]! [n+D]! [n+m-min(N,L)]!)
    <A^N A+^L>   = alpha^(N-L)       / Nhat^2 * sum_n |alpha|^(2n) [n+m+max(N,L)]!
                                                 / ([n]! [n+D]!)
    <(A+ A)^N>   = 1 / Nhat^2 * sum_n |alpha|^(2n) [n+m]! / ([n]!)^2 * [n+m]^N

with ``D = |N - L|`` (the prefactor is conjugated when ``L > N``) and
``Nhat^2 = sum_n |alpha|^(2n) [n+m]! / ([n]!)^2``. Factorials of negative
arguments mark terms that annihilate below the vacuum; they are dropped.

:func:`oracle_expectation` evaluates the same quantities by applying truncated
band matrices to a :class:`~qpacs.states.ModeState`. It shares no code with the
series and is the reference the series are tested against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import sparse

from ._series import inverse_factorial, power_log, shifted, sum_log_terms
from .errors import HeadroomError, ToleranceError
from .operator_words import LOWER, NormalForm, QuadratureExpansion, parse_word
from .qalgebra import DeformationParam, ln_factorial_table
from .states import ModeState, check_disk

__all__ = [
    "LadderMatrices",
    "MomentQuery",
    "MomentValue",
    "TERM_CAP",
    "evaluate",
    "expval_antinormal",
    "expval_commutator_power",
    "expval_normal",
    "expval_normal_form",
    "expval_number_power",
    "oracle_expectation",
]

TERM_CAP = 8192
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class MomentValue:
    value: complex
    tail_estimate: float
    terms_used: int

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(self.value.real)


@dataclass(frozen=True)
class MomentQuery:
    """``daggers``/``lowerings`` with an ordering in ``{"normal", "antinormal", "number-power"}``."""

    daggers: int
    lowerings: int
    ordering: str = "normal"

    def __post_init__(self):
        if self.ordering not in ("normal", "antinormal", "number-power"):
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if self.daggers < 0 or self.lowerings < 0:
            raise ValueError("operator powers must be nonnegative")
        if self.ordering == "number-power" and self.daggers != self.lowerings:
            raise ValueError("number-power queries need daggers == lowerings")


def _dp(dp) -> DeformationParam:
    return dp if isinstance(dp, DeformationParam) else DeformationParam(dp)


def _inner_tol(tol: float) -> float:
    return max(tol * 1e-3, 1e-17)


def _log_series(weight: Callable, alpha: complex, dp: DeformationParam, tol: float):
    log_abs = math.log(abs(alpha)) if alpha != 0 else -math.inf

    def log_term(n):
        return power_log(2.0 * log_abs, n) + weight(n)

    res = sum_log_terms(log_term, _inner_tol(tol), TERM_CAP)
    if not res.converged:
        raise ToleranceError(
            f"series tail {res.tail:.3g} above {tol:.3g} after {res.n_terms} terms"
        )
    return res


@lru_cache(maxsize=4096)
def _ln_nhat_sq(alpha: complex, m: int, dp: DeformationParam, tol: float):
    def weight(n):
        lf = ln_factorial_table(int(n[-1]) + m, dp)
        return lf[n + m] - 2.0 * lf[n]

    return _log_series(weight, alpha, dp, tol)


def _check(alpha, m, dp, *powers):
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if any(p < 0 for p in powers):
        raise ValueError("operator powers must be nonnegative")
    check_disk(alpha, dp)


def _phase_prefactor(alpha: complex, power: int, conjugate: bool) -> complex:
    if power == 0:
        return 1.0 + 0j
    a = alpha.conjugate() if conjugate else alpha
    return a**power


@lru_cache(maxsize=65536)
def _normal(N, L, alpha, m, dp, tol) -> MomentValue:
    D = abs(N - L)
    low = min(N, L)

    def weight(n):
        lf = ln_factorial_table(int(n[-1]) + m + D, dp)
        return lf[n + m] + lf[n + m + D] - lf[n] - lf[n + D] + inverse_factorial(lf, n + m - low)

    res = _log_series(weight, alpha, dp, tol)
    norm = _ln_nhat_sq(alpha, m, dp, tol)
    pref = _phase_prefactor(alpha, D, conjugate=N > L)
    value = pref * math.exp(res.log_total - norm.log_total) if res.log_total > -math.inf else 0j
    return MomentValue(complex(value), res.tail + norm.tail, max(res.n_terms, norm.n_terms))


def expval_normal(N: int, L: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> MomentValue:
    """Normally ordered moment ``<A+^N A^L>`` in ``|alpha, m>_q``."""
    dp = _dp(dp)
    alpha = complex(alpha)
    _check(alpha, m, dp, N, L)
    return _normal(N, L, alpha, m, dp, tol)


@lru_cache(maxsize=65536)
def _antinormal(N, L, alpha, m, dp, tol) -> MomentValue:
    D = abs(N - L)
    top = max(N, L)

    def weight(n):
        lf = ln_factorial_table(int(n[-1]) + m + top, dp)
        return lf[n + m + top] - lf[n] - lf[n + D]

    res = _log_series(weight, alpha, dp, tol)
    norm = _ln_nhat_sq(alpha, m, dp, tol)
    pref = _phase_prefactor(alpha, D, conjugate=L > N)
    value = pref * math.exp(res.log_total - norm.log_total)
    return MomentValue(complex(value), res.tail + norm.tail, max(res.n_terms, norm.n_terms))


def expval_antinormal(N: int, L: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> MomentValue:
    """Antinormally ordered moment ``<A^N A+^L>`` in ``|alpha, m>_q``."""
    dp = _dp(dp)
    alpha = complex(alpha)
    _check(alpha, m, dp, N, L)
    return _antinormal(N, L, alpha, m, dp, tol)


@lru_cache(maxsize=65536)
def _number_power(N, alpha, m, dp, tol) -> MomentValue:
    def weight(n):
        lf = ln_factorial_table(int(n[-1]) + m, dp)
        w = lf[n + m] - 2.0 * lf[n]
        if N:
            # [k]_q = exp(lf[k] - lf[k-1]); [0]_q = 0 kills the n + m = 0 term
            k = n + m
            ln_qint = np.where(k > 0, lf[k] - shifted(lf, k - 1), -np.inf)
            w = w + N * ln_qint
        return w

    res = _log_series(weight, alpha, dp, tol)
    norm = _ln_nhat_sq(alpha, m, dp, tol)
    value = math.exp(res.log_total - norm.log_total) if res.log_total > -math.inf else 0.0
    return MomentValue(complex(value), res.tail + norm.tail, max(res.n_terms, norm.n_terms))


def expval_number_power(N: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> MomentValue:
    """``<(A+ A)^N>``; real and positive unless the state is the vacuum."""
    dp = _dp(dp)
    alpha = complex(alpha)
    _check(alpha, m, dp, N)
    return _number_power(N, alpha, m, dp, tol)


def expval_commutator_power(N: int, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> MomentValue:
    """``<[A, A+]^N> = sum_k C(N, k) (q^2 - 1)^k <(A+ A)^k>``."""
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    dp = _dp(dp)
    c = dp.q_squared - 1.0
    total = 0.0
    tail = 0.0
    used = 0
    for k in range(N + 1):
        weight = math.comb(N, k) * c**k
        if weight == 0.0 and k:
            continue
        mv = expval_number_power(k, alpha, m, dp, tol)
        total += weight * mv.value.real
        tail += abs(weight) * mv.tail_estimate
        used = max(used, mv.terms_used)
    return MomentValue(complex(total), tail, used)


def expval_normal_form(nf, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL,
                       phi: float = 0.0) -> MomentValue:
    """Expectation of a :class:`NormalForm`, or of a :class:`QuadratureExpansion` at angle ``phi``.

    Each ``A+^d A^l`` term is evaluated with :func:`expval_normal` and weighted by
    its coefficient polynomial at ``q`` (and by ``exp(i w phi)`` for phase weight ``w``).
    """
    dp = _dp(dp)
    if isinstance(nf, QuadratureExpansion):
        groups = [(cmath.exp(1j * w * phi), nf.phase_terms[w]) for w in nf.weights()]
        scale = float(nf.prefactor)
    elif isinstance(nf, NormalForm):
        groups = [(1.0, nf)]
        scale = 1.0
    else:
        raise TypeError(f"expected NormalForm or QuadratureExpansion, got {type(nf).__name__}")
    total = 0j
    tail = 0.0
    used = 0
    for phase, form in groups:
        for (d, l), poly in form.items():
            coeff = poly(dp.q)
            mv = expval_normal(d, l, alpha, m, dp, tol)
            total += phase * coeff * mv.value
            tail += abs(coeff) * mv.tail_estimate
            used = max(used, mv.terms_used)
    return MomentValue(scale * total, scale * tail, used)


def evaluate(query: MomentQuery, alpha: complex, m: int, dp, tol: float = DEFAULT_TOL) -> MomentValue:
    """Dispatch a :class:`MomentQuery` to the matching series."""
    if query.ordering == "normal":
        return expval_normal(query.daggers, query.lowerings, alpha, m, dp, tol)
    if query.ordering == "antinormal":
        return expval_antinormal(query.daggers, query.lowerings, alpha, m, dp, tol)
    return expval_number_power(query.daggers, alpha, m, dp, tol)


class LadderMatrices:
    """Sparse ``A``, ``A+`` and ``A+ A`` on Fock levels ``0..dim-1``.

    Matrix elements come straight from the ladder action
    ``A|n> = sqrt([n]_q)|n-1>``, with ``[n]_q`` accumulated as the geometric sum
    ``1 + q^2 + ... + q^(2n-2)``.
    """

    def __init__(self, dp, dim: int):
        dp = _dp(dp)
        self.dp = dp
        self.dim = dim
        powers = np.full(dim, dp.q_squared) ** np.arange(dim)
        self.qint = np.concatenate(([0.0], np.cumsum(powers[:-1])))
        off = np.sqrt(self.qint[1:])
        self.lower = sparse.diags(off, 1, shape=(dim, dim), format="csr")
        self.raise_ = sparse.diags(off, -1, shape=(dim, dim), format="csr")
        self.number = sparse.diags(self.qint, 0, shape=(dim, dim), format="csr")
        self.identity = sparse.identity(dim, format="csr")

    def word(self, letters) -> sparse.csr_matrix:
        out = self.identity
        for letter in letters:
            out = out @ (self.lower if letter == LOWER else self.raise_)
        return out


def oracle_expectation(expr, state: ModeState, dim: int | None = None, headroom: int = 16) -> complex:
    """Brute-force ``<psi| expr |psi>`` on a truncated Fock space.

    ``expr`` is a word (``"A Ad A"`` or a letter sequence), a :class:`NormalForm`,
    or a callable taking :class:`LadderMatrices` and returning a matrix. Words are
    exact when ``dim >= n_max + 1 + len(word)``; callables get ``headroom`` extra
    levels by default.
    """
    psi = np.asarray(state.coeffs, dtype=complex)
    support = len(psi)
    if callable(expr) and not isinstance(expr, NormalForm):
        need = support + headroom
        dim = need if dim is None else dim
        if dim < support:
            raise HeadroomError(f"dim {dim} smaller than state support {support}")
        ops = LadderMatrices(state.dp, dim)
        vec = np.zeros(dim, dtype=complex)
        vec[:support] = psi
        mat = expr(ops)
        return complex(np.vdot(vec, mat @ vec))
    if isinstance(expr, NormalForm):
        length = expr.max_length()
        pieces = [(poly(state.dp.q), ("Ad",) * d + ("A",) * l) for (d, l), poly in expr.items()]
    else:
        letters = parse_word(expr)
        length = len(letters)
        pieces = [(1.0, letters)]
    need = support + length
    dim = need if dim is None else dim
    if dim < need:
        raise HeadroomError(f"dim {dim} < support {support} + word length {length}")
    ops = LadderMatrices(state.dp, dim)
    vec = np.zeros(dim, dtype=complex)
    vec[:support] = psi
    total = 0j
    for coeff, letters in pieces:
        w = vec
        for letter in reversed(parse_word(letters)):
            w = (ops.lower if letter == LOWER else ops.raise_) @ w
        total += coeff * np.vdot(vec, w)
    return complex(total)
