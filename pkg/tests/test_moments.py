import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import band_matrices, dense_expect, word_matrix
from qpacs.errors import DivergenceError, HeadroomError
from qpacs.moments import (
    MomentQuery,
    evaluate,
    expval_antinormal,
    expval_commutator_power,
    expval_normal,
    expval_normal_form,
    expval_number_power,
    oracle_expectation,
)
from qpacs.operator_words import golden_expansion, normal_order, quadrature_power
from qpacs.qalgebra import DeformationParam, q_int
from qpacs.states import coherent_state, fock_state, pacs_state

Q9 = DeformationParam(0.9)


def _dense(q, alpha, m, word):
    st_ = pacs_state(alpha, m, q)
    A, Ad = band_matrices(q, len(st_.coeffs) + len(word) + 2)
    return dense_expect(word_matrix(word, A, Ad), st_.coeffs)


def test_trivial_values():
    assert expval_normal(0, 0, 1.2, 2, Q9).value == pytest.approx(1.0, abs=1e-14)
    assert expval_antinormal(0, 0, 1.2, 2, Q9).value == pytest.approx(1.0, abs=1e-14)
    assert expval_number_power(0, 1.2, 2, Q9).value == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("alpha", [0.4, 1.0 + 1.2j, 2.1])
def test_eigenstate_identities(alpha):
    assert expval_normal(1, 1, alpha, 0, Q9).value == pytest.approx(abs(alpha) ** 2, rel=1e-10)
    assert expval_number_power(1, alpha, 0, Q9).value == pytest.approx(abs(alpha) ** 2, rel=1e-10)
    assert expval_normal(0, 3, alpha, 0, Q9).value == pytest.approx(alpha**3, rel=1e-10)
    assert expval_commutator_power(1, alpha, 0, Q9).value == pytest.approx(1 + (0.81 - 1) * abs(alpha) ** 2, rel=1e-10)


def test_fock_number_power():
    assert expval_number_power(3, 0.0, 2, Q9).value == pytest.approx(q_int(2, Q9) ** 3, rel=1e-14)


def test_diagonal_below_vacuum_vanishes():
    # <2|A+^3 A^3|2> = 0 by operator action
    assert expval_normal(3, 3, 0.0, 2, Q9).value == 0


def test_oracle_example():
    series = expval_normal(2, 1, 2.1, 1, Q9).value
    oracle = oracle_expectation("Ad Ad A", pacs_state(2.1, 1, Q9))
    assert abs(series - oracle) / abs(oracle) < 1e-8
    assert abs(series - _dense(0.9, 2.1, 1, ("Ad", "Ad", "A"))) / abs(oracle) < 1e-8


@pytest.mark.parametrize("q", [0.5, 0.9])
@pytest.mark.parametrize("m", [0, 1, 3])
def test_series_vs_dense_oracle(q, m):
    alpha = 0.3 + 0.7j
    st_ = pacs_state(alpha, m, q)
    A, Ad = band_matrices(q, len(st_.coeffs) + 10)
    for N in range(5):
        for L in range(5):
            w_norm = ("Ad",) * N + ("A",) * L
            w_anti = ("A",) * N + ("Ad",) * L
            ref = dense_expect(word_matrix(w_norm, A, Ad), st_.coeffs)
            assert abs(expval_normal(N, L, alpha, m, q).value - ref) < 1e-9 * (1 + abs(ref))
            ref = dense_expect(word_matrix(w_anti, A, Ad), st_.coeffs)
            assert abs(expval_antinormal(N, L, alpha, m, q).value - ref) < 1e-9 * (1 + abs(ref))
        ref = dense_expect(np.linalg.matrix_power(Ad @ A, N), st_.coeffs)
        assert abs(expval_number_power(N, alpha, m, q).value - ref) < 1e-9 * (1 + abs(ref))


@given(
    st.floats(0.1, 2.0), st.floats(-math.pi, math.pi), st.integers(0, 3),
    st.integers(0, 4), st.integers(0, 4),
)
def test_conjugate_symmetry(r, theta, m, N, L):
    alpha = cmath.rect(r, theta)
    a = expval_normal(N, L, alpha, m, Q9).value
    b = expval_normal(L, N, alpha, m, Q9).value
    assert abs(a - b.conjugate()) <= 1e-12 * max(1.0, abs(a))
    c = expval_antinormal(N, L, alpha, m, Q9).value
    d = expval_antinormal(L, N, alpha, m, Q9).value
    assert abs(c - d.conjugate()) <= 1e-12 * max(1.0, abs(c))


# |alpha|^(2N) must stay representable, so tiny nonzero amplitudes are excluded
@given(st.one_of(st.just(0.0), st.floats(1e-3, 2.0)), st.integers(0, 3), st.integers(1, 5))
def test_positivity(r, m, N):
    if r == 0 and m == 0:
        return
    v = expval_number_power(N, r, m, Q9).value
    assert v.imag == 0 and v.real > 0
    assert expval_normal(N, N, r, m, Q9).value.real >= 0


def test_antinormal_commutator_identity():
    alpha, m = 1.0 + 0.5j, 2
    n11 = expval_normal(1, 1, alpha, m, Q9).value
    comm = 1 + (0.81 - 1) * n11
    assert expval_antinormal(1, 1, alpha, m, Q9).value == pytest.approx(n11 + comm, rel=1e-12)


def test_commutator_power_against_oracle():
    st_ = pacs_state(1.0, 1, Q9)
    ref = oracle_expectation(lambda o: (o.identity + (0.81 - 1) * o.number) @ (o.identity + (0.81 - 1) * o.number), st_)
    assert expval_commutator_power(2, 1.0, 1, Q9).value == pytest.approx(ref.real, rel=1e-8)


def test_commutator_power_is_q_power_of_number():
    # [A, A+] = q^(2 A+A) on the Fock basis, so its powers are diagonal
    st_ = pacs_state(1.3, 2, Q9)
    n = np.arange(len(st_.coeffs))
    for N in (1, 2, 3, 5):
        direct = np.sum(st_.probabilities * 0.81 ** (N * n))
        assert expval_commutator_power(N, 1.3, 2, Q9).value == pytest.approx(direct, rel=1e-10)


@pytest.mark.parametrize("N", [1, 3, 6])
def test_commutator_power_classical(N):
    assert expval_commutator_power(N, 1.1, 2, 1.0).value == pytest.approx(1.0, abs=1e-12)


def test_normal_form_defining_relation():
    val = expval_normal_form(normal_order("A Ad"), 1.4, 1, Q9).value
    assert val == pytest.approx(expval_antinormal(1, 1, 1.4, 1, Q9).value, rel=1e-12)


def test_normal_form_quadrature_coherent_classical():
    alpha = 0.8
    val = expval_normal_form(quadrature_power(2), alpha, 0, 1.0, phi=0.0).value
    assert val == pytest.approx(0.25 + alpha**2, rel=1e-12)


def test_normal_form_matches_golden_y3():
    alpha, phi = 1 + 1j, 0.1
    a = expval_normal_form(quadrature_power(3), alpha, 1, Q9, phi=phi).value
    b = expval_normal_form(golden_expansion(3), alpha, 1, Q9, phi=phi).value
    assert abs(a - b) < 1e-10
    st_ = pacs_state(alpha, 1, Q9)
    ref = oracle_expectation(
        lambda o: np.linalg.matrix_power(
            (0.5 * (o.lower * cmath.exp(-1j * phi) + o.raise_ * cmath.exp(1j * phi))).toarray(), 3), st_)
    assert abs(a - ref) < 1e-9


def test_evaluate_dispatch():
    assert evaluate(MomentQuery(2, 1, "normal"), 1.0, 1, Q9).value == expval_normal(2, 1, 1.0, 1, Q9).value
    assert evaluate(MomentQuery(2, 2, "number-power"), 1.0, 1, Q9).value == expval_number_power(2, 1.0, 1, Q9).value
    with pytest.raises(ValueError):
        MomentQuery(2, 1, "number-power")


def test_oracle_basics():
    st_ = coherent_state(0.7 - 0.2j, Q9)
    assert oracle_expectation([], st_) == pytest.approx(1.0, abs=1e-12)
    assert oracle_expectation("A", st_) == pytest.approx(0.7 - 0.2j, abs=1e-10)
    assert oracle_expectation("Ad A", fock_state(3, Q9)) == pytest.approx(q_int(3, Q9), rel=1e-14)
    with pytest.raises(HeadroomError):
        oracle_expectation("A A Ad Ad", st_, dim=len(st_.coeffs))


def test_tail_and_doubling():
    mv = expval_normal(3, 1, 2.1, 2, Q9, tol=1e-10)
    assert mv.tail_estimate < 1e-10 * abs(mv.value)
    tight = expval_normal(3, 1, 2.1, 2, Q9, tol=1e-13)
    assert abs(tight.value - mv.value) < 1e-10 * abs(mv.value)


def test_divergence():
    with pytest.raises(DivergenceError):
        expval_normal(1, 1, 2.3, 0, Q9)
