"""Closed-form moment series checked against brute-force matrix evaluation.

Every series is compared with the expectation obtained by applying truncated
ladder matrices to the state vector. The two routes share no code.
"""

from qpacs.moments import expval_antinormal, expval_normal, expval_number_power, oracle_expectation
from qpacs.states import pacs_state


def _power(o, N):
    out = o.identity
    for _ in range(N):
        out = out @ o.number
    return out


q, alpha, m = 0.9, 1.0 + 1.2j, 2
state = pacs_state(alpha, m, q)

for N, L in [(1, 1), (2, 1), (0, 3), (3, 3)]:
    series = expval_normal(N, L, alpha, m, q)
    word = ["Ad"] * N + ["A"] * L
    print(f"<A+^{N} A^{L}>  series {series.value:.12f}  matrix {oracle_expectation(word, state):.12f}  "
          f"terms {series.terms_used}")

anti = expval_antinormal(2, 2, alpha, m, q).value
print(f"<A^2 A+^2>    series {anti:.12f}  matrix {oracle_expectation('A A Ad Ad', state):.12f}")

for N in (1, 2, 4):
    v = expval_number_power(N, alpha, m, q).value.real
    ref = oracle_expectation(lambda o, N=N: _power(o, N), state).real
    print(f"<(A+A)^{N}>    series {v:.10f}  matrix {ref:.10f}")
