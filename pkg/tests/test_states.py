import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import band_matrices
from qpacs.errors import DivergenceError, TruncationError
from qpacs.qalgebra import DeformationParam, q_int
from qpacs.states import coherent_state, fock_state, ln_normalizations, pacs_state

Q9 = DeformationParam(0.9)


def test_vacuum():
    st_ = coherent_state(0, Q9)
    assert st_.coeffs[0] == 1
    assert not np.any(st_.coeffs[1:])


def test_poisson_limit():
    st_ = coherent_state(1.0, DeformationParam.limit())
    probs = st_.probabilities
    for n in range(25):
        assert probs[n] == pytest.approx(math.exp(-1) / math.factorial(n), rel=1e-12)


def test_coherent_normalised_against_direct_sum():
    st_ = coherent_state(1.0, Q9)
    assert np.sum(st_.probabilities) == pytest.approx(1.0, abs=1e-10)
    # unnormalised weights summed term by term
    w = [1.0]
    for n in range(1, 400):
        w.append(w[-1] / q_int(n, Q9))
    assert st_.probabilities[3] == pytest.approx(w[3] / sum(w), rel=1e-10)


def test_m0_equals_coherent():
    a = pacs_state(1.3 - 0.4j, 0, Q9)
    b = coherent_state(1.3 - 0.4j, Q9)
    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=1e-14, rtol=0)


def test_fock_state():
    st_ = fock_state(3, Q9)
    assert st_.coeffs[3] == 1
    assert np.count_nonzero(st_.coeffs) == 1
    st2 = pacs_state(0.0, 3, Q9)
    np.testing.assert_array_equal(st_.coeffs, st2.coeffs)


@pytest.mark.parametrize("alpha, m", [(2.1, 1), (2.1, 3), (1.0 + 1.2j, 2), (0.3, 1)])
def test_pacs_matches_raised_coherent_state(alpha, m):
    coh = coherent_state(alpha, Q9)
    dim = len(coh.coeffs) + m
    _, Ad = band_matrices(0.9, dim)
    v = np.zeros(dim, dtype=complex)
    v[: len(coh.coeffs)] = coh.coeffs
    for _ in range(m):
        v = Ad @ v
    v /= np.linalg.norm(v)
    pacs = pacs_state(alpha, m, Q9, n_max=dim - 1)
    np.testing.assert_allclose(pacs.coeffs, v, atol=1e-10, rtol=0)


@given(
    st.floats(0.05, 2.2),
    st.integers(0, 4),
    st.floats(0.3, 0.95),
)
def test_state_invariants(r, m, q):
    dp = DeformationParam(q)
    if r >= 0.98 * dp.radius:
        with pytest.raises(DivergenceError):
            pacs_state(r, m, dp)
        return
    st_ = pacs_state(r, m, dp)
    assert abs(np.sum(st_.probabilities) - 1) <= max(10 * st_.tail_bound, 1e-13)
    assert not np.any(st_.coeffs[:m])


@pytest.mark.parametrize("alpha, m", [(2.1, 1), (1.0 + 1.2j, 3), (0.5, 0)])
def test_idempotent_truncation(alpha, m):
    a = pacs_state(alpha, m, Q9)
    b = pacs_state(alpha, m, Q9, n_max=a.n_max + 64)
    assert np.max(np.abs(b.coeffs[: len(a.coeffs)] - a.coeffs)) < 1e-12
    # levels beyond the original cut carry less than tol of probability
    assert np.sum(b.probabilities[len(a.coeffs):]) < 1e-12


@pytest.mark.parametrize("theta", [0.3, 1.7, -2.5])
def test_phase_covariance(theta):
    r, m = 1.4, 2
    a = pacs_state(r, m, Q9)
    b = pacs_state(cmath.rect(r, theta), m, Q9, n_max=a.n_max)
    np.testing.assert_allclose(np.abs(b.coeffs), np.abs(a.coeffs), atol=1e-14)
    n = np.arange(len(a.coeffs)) - m
    expected = a.coeffs * np.exp(1j * theta * np.clip(n, 0, None))
    np.testing.assert_allclose(b.coeffs, expected, atol=1e-13)


def test_disk_enforced():
    with pytest.raises(DivergenceError):
        pacs_state(0.98 * Q9.radius, 1, Q9)
    # the figure amplitude sits inside the margin
    pacs_state(2.1, 3, Q9)


def test_truncation_cap():
    with pytest.raises(TruncationError):
        pacs_state(0.97 * Q9.radius, 0, Q9, tol=1e-15, cap=64)


def test_ln_normalizations_trivial():
    pair = ln_normalizations(0.0, 3, Q9)
    assert pair.ln_N_coh == 0.0
    assert math.exp(2 * pair.ln_N_pacs) == pytest.approx(q_int(1, Q9) * q_int(2, Q9) * q_int(3, Q9), rel=1e-14)
    pair = ln_normalizations(1.7, 0, Q9)
    assert pair.ln_N_pacs == pytest.approx(0.0, abs=1e-14)
    assert pair.ln_N_hat == pair.ln_N_coh + pair.ln_N_pacs


def test_ln_normalizations_brute_force():
    alpha, m = 1.0, 2
    fact = [1.0]
    for k in range(1, 160):
        fact.append(fact[-1] * q_int(k, Q9))
    coh = math.fsum(abs(alpha) ** (2 * n) / fact[n] for n in range(151))
    pacs = math.fsum(abs(alpha) ** (2 * n) * (fact[n + m] / fact[n]) / fact[n] for n in range(151)) / coh
    pair = ln_normalizations(alpha, m, Q9, n_max=150)
    assert math.exp(2 * pair.ln_N_coh) == pytest.approx(coh, rel=1e-10)
    assert math.exp(2 * pair.ln_N_pacs) == pytest.approx(pacs, rel=1e-10)
    adaptive = ln_normalizations(alpha, m, Q9)
    assert adaptive.ln_N_hat == pytest.approx(pair.ln_N_hat, rel=1e-12)


def test_csv_rows():
    rows = fock_state(1, Q9).to_rows()
    assert rows[1] == (1, 1.0, 0.0)
