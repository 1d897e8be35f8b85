"""Exact normal ordering of words in the deformed ladder operators.

Words are rewritten with ``A A+ -> 1 + q^2 A+ A`` until every creation operator
stands to the left of every annihilation operator. Coefficients are polynomials
in ``q`` with exact integer coefficients, so hand-derived reference expansions can be compared
term by term without rounding.

A :class:`NormalForm` maps ``(d, l)`` to the coefficient of ``A+^d A^l``. A
:class:`QuadratureExpansion` additionally tracks the phase weight ``w`` of each
term, the exponent in ``exp(i w phi)``; ``A`` carries weight -1 and ``A+``
carries weight +1.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ResourceError

__all__ = [
    "LOWER",
    "MAX_QUADRATURE_ORDER",
    "RAISE",
    "NormalForm",
    "QPolynomial",
    "QuadratureExpansion",
    "golden_check",
    "golden_expansion",
    "hillery_quadrature_square",
    "normal_order",
    "parse_word",
    "quadrature_power",
]

LOWER = "A"
RAISE = "Ad"
MAX_QUADRATURE_ORDER = 16

_RAISE_SPELLINGS = {"Ad", "A+", "A†", "Adag", "ad", "a+", "a†", "c"}
_LOWER_SPELLINGS = {"A", "a"}


class QPolynomial:
    """Polynomial in ``q`` with integer coefficients, stored sparsely by exponent."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coefficients or {}).items():
            if e < 0:
                raise ValueError("q-exponents must be nonnegative")
            v = int(v)
            if v:
                c[int(e)] = c.get(int(e), 0) + v
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def constant(cls, value: int) -> "QPolynomial":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, value: int = 1) -> "QPolynomial":
        return cls({exponent: value})

    @classmethod
    def from_ascending(cls, coeffs: Iterable[int], step: int = 1) -> "QPolynomial":
        """Build from coefficients of ``q^0, q^step, q^(2 step), ...``."""
        return cls({step * i: c for i, c in enumerate(coeffs)})

    @classmethod
    @lru_cache(maxsize=None)
    def q_integer(cls, n: int) -> "QPolynomial":
        """``[n]_q = 1 + q^2 + ... + q^(2n-2)``."""
        return cls({2 * k: 1 for k in range(n)})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def degree(self) -> int:
        return max(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial.constant(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPolynomial.constant(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QPolynomial({e: v * other for e, v in self._c.items()})
        if not isinstance(other, QPolynomial):
            return NotImplemented
        out: dict[int, int] = defaultdict(int)
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] += v1 * v2
        return QPolynomial(out)

    __rmul__ = __mul__

    def shift(self, exponent: int) -> "QPolynomial":
        """Multiply by ``q^exponent``."""
        return QPolynomial({e + exponent: v for e, v in self._c.items()})

    def __call__(self, q: float) -> float:
        return float(sum(v * q**e for e, v in self._c.items()))

    def __repr__(self):
        return f"QPolynomial({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = str(abs(v))
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if abs(v) == 1 else f"{abs(v)}*{base}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text


_ONE = QPolynomial.constant(1)


class NormalForm:
    """``sum P_{d,l}(q) A+^d A^l`` with exact polynomial coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], QPolynomial] | None = None):
        self._terms = {k: p for k, p in (terms or {}).items() if p}

    @classmethod
    def identity(cls) -> "NormalForm":
        return cls({(0, 0): _ONE})

    @classmethod
    def monomial(cls, d: int, l: int, coeff: QPolynomial | int = 1) -> "NormalForm":
        if isinstance(coeff, int):
            coeff = QPolynomial.constant(coeff)
        return cls({(d, l): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], QPolynomial]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, key) -> QPolynomial:
        return self._terms.get(tuple(key), QPolynomial())

    def __contains__(self, key):
        return tuple(key) in self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "NormalForm") -> "NormalForm":
        out = dict(self._terms)
        for k, p in other._terms.items():
            out[k] = out[k] + p if k in out else p
        return NormalForm(out)

    def scale(self, poly: QPolynomial | int) -> "NormalForm":
        return NormalForm({k: p * poly for k, p in self._terms.items()})

    def times_lower(self) -> "NormalForm":
        """Right-multiply by ``A``; normal order is preserved."""
        return NormalForm({(d, l + 1): p for (d, l), p in self._terms.items()})

    def times_raise(self) -> "NormalForm":
        """Right-multiply by ``A+`` using ``A^l A+ = q^(2l) A+ A^l + [l]_q A^(l-1)``."""
        out: dict[tuple[int, int], QPolynomial] = {}

        def acc(key, poly):
            out[key] = out[key] + poly if key in out else poly

        for (d, l), p in self._terms.items():
            acc((d + 1, l), p.shift(2 * l))
            if l:
                acc((d, l - 1), p * QPolynomial.q_integer(l))
        return NormalForm(out)

    def times_letter(self, letter: str) -> "NormalForm":
        return self.times_lower() if letter == LOWER else self.times_raise()

    def dagger(self) -> "NormalForm":
        """Adjoint: ``(A+^d A^l)+ = A+^l A^d`` with real coefficients."""
        return NormalForm({(l, d): p for (d, l), p in self._terms.items()})

    def evaluate(self, q: float) -> dict[tuple[int, int], float]:
        return {k: p(q) for k, p in self._terms.items()}

    def max_length(self) -> int:
        return max((d + l for d, l in self._terms), default=0)

    def __repr__(self):
        return f"NormalForm({dict(self.items())})"

    def to_text(self) -> str:
        """One line per ``(d, l)`` with the polynomial in ascending exponents."""
        return "\n".join(f"A+^{d} A^{l}: {p}" for (d, l), p in self.items())

    __str__ = to_text


def parse_word(word) -> tuple[str, ...]:
    """Normalise a word to a tuple of :data:`LOWER` / :data:`RAISE` letters.

    Accepts an iterable of letters or a whitespace/comma separated string such as
    ``"A A+ A+"``. Creation may be spelled ``Ad``, ``A+``, ``A†`` or ``Adag``.
    """
    if isinstance(word, str):
        tokens = word.replace(",", " ").split()
    else:
        tokens = list(word)
    letters = []
    for tok in tokens:
        if tok in _LOWER_SPELLINGS:
            letters.append(LOWER)
        elif tok in _RAISE_SPELLINGS:
            letters.append(RAISE)
        else:
            raise ValueError(f"unknown ladder letter {tok!r}")
    return tuple(letters)


_nf_lock = threading.Lock()


@lru_cache(maxsize=4096)
def _normal_order_cached(letters: tuple[str, ...]) -> NormalForm:
    if not letters:
        return NormalForm.identity()
    return _normal_order_cached(letters[:-1]).times_letter(letters[-1])


def normal_order(word) -> NormalForm:
    """Normal-ordered form of a word, equal to it as an operator identity.

    >>> print(normal_order("A Ad"))
    A+^0 A^0: 1
    A+^1 A^1: q^2
    """
    letters = parse_word(word)
    with _nf_lock:
        return _normal_order_cached(letters)


@dataclass(frozen=True)
class QuadratureExpansion:
    """Normal-ordered expansion of a quadrature power, grouped by phase weight.

    The operator equals ``prefactor * sum_w exp(i w phi) phase_terms[w]``.
    ``harmonic`` is the ``N`` of ``Y_N(phi) = (A^N e^{-iN phi} + A+^N e^{iN phi})/2``
    (1 for the ordinary quadrature); ``order`` is the power taken.
    """

    order: int
    phase_terms: dict
    prefactor: Fraction
    harmonic: int = 1

    def weights(self) -> list[int]:
        return sorted(self.phase_terms)

    def __getitem__(self, w: int) -> NormalForm:
        return self.phase_terms.get(w, NormalForm())

    def is_hermitian(self) -> bool:
        return all(
            self[w] == self[-w].dagger() for w in set(self.phase_terms) | {-w for w in self.phase_terms}
        )

    def is_positive(self) -> bool:
        return all(
            v > 0 for nf in self.phase_terms.values() for p in nf.terms.values() for v in p.coefficients.values()
        )


_quad_lock = threading.Lock()


@lru_cache(maxsize=None)
def _scaled_quadrature_power(j: int) -> dict:
    # expansion of (A e^{-i phi} + A+ e^{i phi})^j, phase weight -> NormalForm
    if j == 0:
        return {0: NormalForm.identity()}
    prev = _scaled_quadrature_power(j - 1)
    out: dict[int, NormalForm] = {}
    for w, nf in prev.items():
        for dw, nxt in ((-1, nf.times_lower()), (1, nf.times_raise())):
            out[w + dw] = out[w + dw] + nxt if (w + dw) in out else nxt
    return out


def quadrature_power(j: int) -> QuadratureExpansion:
    """Expand ``Y(phi)^j`` into normal-ordered terms with exact coefficients."""
    if j < 1:
        raise ValueError(f"order must be >= 1, got {j}")
    if j > MAX_QUADRATURE_ORDER:
        raise ResourceError(f"quadrature order {j} exceeds cap {MAX_QUADRATURE_ORDER}")
    with _quad_lock:
        terms = dict(_scaled_quadrature_power(j))
    return QuadratureExpansion(j, terms, Fraction(1, 2**j))


def hillery_quadrature_square(N: int) -> QuadratureExpansion:
    """Expand ``Y_N(phi)^2`` into its three phase-weight slots ``-2N, 0, 2N``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    lower = (LOWER,) * N
    raise_ = (RAISE,) * N
    terms = {
        -2 * N: NormalForm.monomial(0, 2 * N),
        2 * N: NormalForm.monomial(2 * N, 0),
        0: normal_order(lower + raise_) + NormalForm.monomial(N, N),
    }
    return QuadratureExpansion(2, terms, Fraction(1, 4), harmonic=N)


# Hand-derived reference expansions of <Y(phi)^j>, j = 2..6, stored as
# (phase weight, daggers, lowerings) -> polynomial in the variable q^2.
# Only weights w <= 0 are listed; positive weights follow by Hermiticity.
def _p(*coeffs_in_q2: int) -> QPolynomial:
    return QPolynomial.from_ascending(coeffs_in_q2, step=2)


_MU = _p(1, 1, 1, 1, 1)
_LAMBDA = _MU + _p(0, 0, 1, 1, 2, 2, 2, 1, 1)

_GOLDEN: dict[int, dict[tuple[int, int, int], QPolynomial]] = {
    2: {
        (0, 0, 0): _p(1),
        (0, 1, 1): _p(1, 1),
        (-2, 0, 2): _p(1),
    },
    3: {
        (-3, 0, 3): _p(1),
        (-1, 0, 1): _p(2, 1),
        (-1, 1, 2): _p(1, 1, 1),
    },
    4: {
        (0, 0, 0): _p(2, 1),
        (0, 1, 1): _p(3, 5, 3, 1),
        (0, 2, 2): _MU + _p(0, 0, 1),
        (-4, 0, 4): _p(1),
        (-2, 0, 2): _p(3, 2, 1),
        (-2, 1, 3): _MU - _p(0, 0, 0, 0, 1),
    },
    5: {
        (-5, 0, 5): _p(1),
        (-3, 1, 4): _MU,
        (-3, 0, 3): _p(4, 3, 2, 1),
        (-1, 0, 1): _p(5, 6, 3, 1),
        (-1, 1, 2): 1 + 3 * _MU + _p(0, 4, 6, 3, 0, 1),
        (-1, 2, 3): _MU + _p(0, 0, 1, 1, 1, 1, 1),
    },
    6: {
        (0, 0, 0): _p(5, 6, 3, 1),
        (0, 1, 1): _p(9, 22, 25, 19, 10, 4, 1),
        (0, 2, 2): _p(5, 9, 17, 18, 18, 12, 7, 3, 1),
        (0, 3, 3): _LAMBDA + _p(0, 0, 0, 1, 0, 1, 1, 1, 0, 1),
        (-6, 0, 6): _p(1),
        (-4, 0, 4): _p(5, 4, 3, 2, 1),
        (-4, 1, 5): _MU + _p(0, 0, 0, 0, 0, 1),
        (-2, 0, 2): _p(9, 13, 12, 7, 3, 1),
        (-2, 1, 3): _p(5, 9, 12, 14, 10, 6, 3, 1),
        (-2, 2, 4): _LAMBDA,
    },
}

GOLDEN_ORDERS = tuple(sorted(_GOLDEN))


def golden_expansion(j: int) -> QuadratureExpansion:
    """The reference expansion of ``<Y(phi)^j>`` rebuilt as a :class:`QuadratureExpansion`."""
    if j not in _GOLDEN:
        raise KeyError(f"no reference expansion for order {j}")
    terms: dict[int, dict] = defaultdict(dict)
    for (w, d, l), poly in _GOLDEN[j].items():
        terms[w][(d, l)] = poly
        if w != 0:
            terms[-w][(l, d)] = poly
    return QuadratureExpansion(j, {w: NormalForm(t) for w, t in terms.items()}, Fraction(1, 2**j))


@dataclass(frozen=True)
class GoldenEntry:
    order: int
    weight: int
    daggers: int
    lowerings: int
    reference: QPolynomial | None
    computed: QPolynomial | None

    @property
    def match(self) -> bool:
        return self.reference is not None and self.computed is not None and self.reference == self.computed

    def describe(self) -> str:
        status = "match" if self.match else "MISMATCH"
        return (
            f"Y^{self.order} w={self.weight:+d} A+^{self.daggers} A^{self.lowerings}: "
            f"{status} reference=[{self.reference}] computed=[{self.computed}]"
        )


@dataclass(frozen=True)
class GoldenReport:
    entries: tuple[GoldenEntry, ...]

    def for_order(self, j: int) -> list[GoldenEntry]:
        return [e for e in self.entries if e.order == j]

    def lookup(self, j: int, w: int, d: int, l: int) -> GoldenEntry:
        for e in self.entries:
            if (e.order, e.weight, e.daggers, e.lowerings) == (j, w, d, l):
                return e
        raise KeyError((j, w, d, l))

    def mismatches(self) -> list[GoldenEntry]:
        return [e for e in self.entries if not e.match]

    def order_matches(self, j: int) -> bool:
        return all(e.match for e in self.for_order(j))

    def to_text(self) -> str:
        return "\n".join(e.describe() for e in self.entries)


def golden_check(orders: Iterable[int] = GOLDEN_ORDERS) -> GoldenReport:
    """Compare :func:`quadrature_power` with the reference expansions, term by term.

    Mismatches are returned as data; nothing is raised. Slots present on only one
    side appear with ``None`` on the other.
    """
    entries = []
    for j in orders:
        computed = quadrature_power(j)
        reference = _GOLDEN[j]
        keys = set(reference)
        for w, nf in computed.phase_terms.items():
            if w <= 0:
                keys |= {(w, d, l) for d, l in nf.terms}
        for w, d, l in sorted(keys, key=lambda k: (-k[0], k[1], k[2])):
            got = computed[w][(d, l)] if (d, l) in computed[w] else None
            entries.append(GoldenEntry(j, w, d, l, reference.get((w, d, l)), got))
    return GoldenReport(tuple(entries))
