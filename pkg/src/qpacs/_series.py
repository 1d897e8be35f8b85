"""Adaptive summation of positive series given term logarithms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

BLOCK = 64


@dataclass(frozen=True)
class LogSum:
    log_total: float
    n_terms: int
    tail: float  # estimated relative mass beyond n_terms
    converged: bool
    log_terms: np.ndarray


def sum_log_terms(
    log_term: Callable[[np.ndarray], np.ndarray],
    tol: float,
    cap: int,
    n_terms: int | None = None,
) -> LogSum:
    """Sum ``exp(log_term(n))`` over ``n = 0, 1, ...`` in blocks of :data:`BLOCK`.

    Growth stops once the last block contributes less than ``tol`` of the running
    total and a geometric estimate of the remaining tail (built from the ratio of
    the last two terms) is also below ``tol``. With ``n_terms`` given the sum is
    truncated there unconditionally.
    """
    chunks = []
    log_total = -math.inf
    n = 0
    limit = cap if n_terms is None else n_terms
    tail = math.inf
    while n < limit:
        stop = min(n + BLOCK, limit)
        lt = np.asarray(log_term(np.arange(n, stop)), dtype=float)
        chunks.append(lt)
        block_log = _logsumexp(lt)
        log_total = np.logaddexp(log_total, block_log)
        n = stop
        tail = _tail_estimate(chunks, log_total)
        if n_terms is None and log_total > -math.inf:
            block_rel = math.exp(block_log - log_total) if block_log > -math.inf else 0.0
            if block_rel < tol and tail < tol:
                break
        elif n_terms is None and log_total == -math.inf and n >= BLOCK:
            break
    log_terms = np.concatenate(chunks) if chunks else np.empty(0)
    converged = n_terms is not None or tail < tol
    return LogSum(float(log_total), n, tail, converged, log_terms)


def _logsumexp(x: np.ndarray) -> float:
    if x.size == 0:
        return -math.inf
    top = np.max(x)
    if top == -math.inf:
        return -math.inf
    return float(top + math.log(np.sum(np.exp(x - top))))


def _tail_estimate(chunks, log_total) -> float:
    last = chunks[-1]
    prev = chunks[-2] if len(chunks) > 1 else None
    if last.size >= 2:
        a, b = last[-2], last[-1]
    elif prev is not None and prev.size:
        a, b = prev[-1], last[-1]
    else:
        return math.inf
    if b == -math.inf:
        return 0.0
    if log_total == -math.inf:
        return math.inf
    log_ratio = b - a
    if log_ratio >= 0.0:
        return math.inf
    ratio = math.exp(log_ratio)
    return math.exp(b - log_total) * ratio / (1.0 - ratio)


def shifted(table: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """``table[idx]`` with ``-inf`` where ``idx < 0``."""
    out = np.full(idx.shape, -np.inf)
    ok = idx >= 0
    out[ok] = table[idx[ok]]
    return out


def inverse_factorial(table: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """``-table[idx]``, i.e. ``ln(1/[idx]!)``, with ``1/[j]! = 0`` for ``j < 0``."""
    out = np.full(idx.shape, -np.inf)
    ok = idx >= 0
    out[ok] = -table[idx[ok]]
    return out


def power_log(log_abs: float, n: np.ndarray) -> np.ndarray:
    """``n * log_abs`` with the convention ``0 * (-inf) = 0`` (so ``0**0 = 1``)."""
    if log_abs == -math.inf:
        return np.where(n == 0, 0.0, -np.inf)
    return n * log_abs
