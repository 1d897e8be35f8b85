"""q-arithmetic for the Arik-Coon oscillator ``A A+ - q^2 A+ A = 1``.

The deformed integers are ``[n]_q = (1 - q^(2n)) / (1 - q^2)``; they reduce to
``n`` as ``q -> 1``. Values of ``q`` within ``CLASSICAL_EPS`` of one are routed
to the undeformed formulas instead of evaluating ``0/0``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

CLASSICAL_EPS = 1e-9

__all__ = [
    "CLASSICAL_EPS",
    "DeformationParam",
    "convergence_radius",
    "double_factorial_odd",
    "ln_factorial_table",
    "q_int",
    "q_int_array",
    "q_ln_factorial",
]


@dataclass(frozen=True)
class DeformationParam:
    """Validated deformation parameter.

    ``q`` must lie in ``[0, 1)`` or within ``CLASSICAL_EPS`` of 1, in which case
    the parameter is flagged ``classical`` and ``q`` is stored as exactly 1.0.
    """

    q: float
    classical: bool = field(init=False)
    q_squared: float = field(init=False)
    radius: float = field(init=False)

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q):
            raise ValueError(f"q must be finite, got {self.q!r}")
        classical = abs(1.0 - q) < CLASSICAL_EPS
        if classical:
            q = 1.0
        elif not 0.0 <= q < 1.0:
            raise ValueError(f"q must satisfy 0 <= q < 1 (or q = 1 limit), got {q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "classical", classical)
        object.__setattr__(self, "q_squared", q * q)
        object.__setattr__(
            self, "radius", math.inf if classical else 1.0 / math.sqrt(1.0 - q * q)
        )

    @classmethod
    def limit(cls) -> "DeformationParam":
        """The undeformed (q -> 1) oscillator."""
        return cls(1.0)

    def __repr__(self):
        return f"DeformationParam(q={self.q!r}{', classical' if self.classical else ''})"


def _as_dp(dp) -> DeformationParam:
    return dp if isinstance(dp, DeformationParam) else DeformationParam(dp)


def q_int(n: int, dp) -> float:
    """Deformed integer ``[n]_q``; equals ``n`` on the classical path."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    dp = _as_dp(dp)
    if dp.classical:
        return float(n)
    if n == 0:
        return 0.0
    if dp.q == 0.0:
        return 1.0
    lq2 = 2.0 * math.log(dp.q)
    # expm1 keeps full relative precision for q close to 1
    return math.expm1(n * lq2) / math.expm1(lq2)


def q_int_array(n, dp) -> np.ndarray:
    """Vectorised :func:`q_int` over an integer array (negative entries give nan)."""
    dp = _as_dp(dp)
    n = np.asarray(n, dtype=float)
    out = np.full(n.shape, np.nan)
    ok = n >= 0
    if dp.classical:
        out[ok] = n[ok]
    elif dp.q == 0.0:
        out[ok] = np.where(n[ok] > 0, 1.0, 0.0)
    else:
        lq2 = 2.0 * math.log(dp.q)
        out[ok] = np.expm1(n[ok] * lq2) / math.expm1(lq2)
    return out


class _LogFactorialCache:
    # one growing table per q; guarded so concurrent readers never see a partial table
    def __init__(self):
        self._tables: dict[float, np.ndarray] = {}
        self._lock = threading.Lock()

    def get(self, n_max: int, dp: DeformationParam) -> np.ndarray:
        table = self._tables.get(dp.q)
        if table is not None and len(table) > n_max:
            return table[: n_max + 1]
        with self._lock:
            table = self._tables.get(dp.q)
            if table is None or len(table) <= n_max:
                size = max(256, 1 << (n_max + 1).bit_length())
                k = np.arange(1, size)
                logs = np.log(q_int_array(k, dp))
                table = np.concatenate(([0.0], np.cumsum(logs)))
                table.setflags(write=False)
                self._tables[dp.q] = table
        return table[: n_max + 1]


_LN_FACT = _LogFactorialCache()


def ln_factorial_table(n_max: int, dp) -> np.ndarray:
    """Read-only array ``t`` with ``t[k] = ln([k]_q!)`` for ``k = 0..n_max``."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    return _LN_FACT.get(n_max, _as_dp(dp))


def q_ln_factorial(n: int, dp) -> float:
    """``ln([n]_q!)`` with ``[0]_q! = 1``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return float(ln_factorial_table(n, dp)[n])


def convergence_radius(dp) -> float:
    """Radius ``1/sqrt(1 - q^2)`` of the coherent-state disk (``inf`` when classical)."""
    return _as_dp(dp).radius


def double_factorial_odd(N: int) -> int:
    """Exact ``(2N-1)!! = 1*3*5*...*(2N-1)`` for ``N >= 1``.

    Python integers do not wrap; callers converting to float get an
    ``OverflowError`` rather than a silently wrong value.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return math.prod(range(1, 2 * N, 2))
