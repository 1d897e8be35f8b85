import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpacs.qalgebra import (
    DeformationParam,
    convergence_radius,
    double_factorial_odd,
    ln_factorial_table,
    q_int,
    q_int_array,
    q_ln_factorial,
)


def test_q_int_examples():
    assert q_int(0, 0.9) == 0.0
    # (1 - 0.9^4) / (1 - 0.81) = 0.3439 / 0.19
    assert q_int(2, 0.9) == pytest.approx(0.3439 / 0.19, rel=1e-14)
    assert q_int(2, 0.9) == pytest.approx(1.81, rel=1e-14)
    assert q_int(1, 0.37) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 5, 50])
def test_q_int_classical_path(n):
    assert q_int(n, DeformationParam.limit()) == n
    assert q_int(n, 1 - 1e-12) == n


def test_q_int_near_limit():
    dp = DeformationParam(1 - 1e-6)
    assert not dp.classical
    for n in range(1, 51):
        assert abs(q_int(n, dp) - n) < 1e-4 * n


@given(st.floats(0.01, 0.999), st.integers(1, 300))
def test_q_int_increasing_and_bounded(q, n):
    dp = DeformationParam(q)
    a, b = q_int(n, dp), q_int(n + 1, dp)
    # strict growth can be lost to rounding once q^(2n) underflows the mantissa
    assert a <= b <= 1 / (1 - q * q) * (1 + 1e-12)
    if q ** (2 * n) > 1e-14:
        assert a < b


def test_q_int_array_matches_scalar():
    dp = DeformationParam(0.73)
    n = np.arange(40)
    np.testing.assert_allclose(q_int_array(n, dp), [q_int(k, dp) for k in n], rtol=1e-15)
    assert np.isnan(q_int_array(np.array([-1]), dp)[0])


def test_q_ln_factorial_examples():
    assert q_ln_factorial(0, 0.9) == 0.0
    assert q_ln_factorial(1, 0.9) == pytest.approx(0.0, abs=1e-16)
    assert q_ln_factorial(2, 0.9) == pytest.approx(math.log(1.81), rel=1e-14)


@pytest.mark.parametrize("q", [0.5, 0.9, 0.99])
def test_ln_factorial_matches_product(q):
    for n in range(31):
        direct = math.prod(q_int(k, q) for k in range(1, n + 1))
        assert math.exp(q_ln_factorial(n, q)) == pytest.approx(direct, rel=1e-12)


def test_ln_factorial_table_grows():
    dp = DeformationParam(0.6180339)
    small = ln_factorial_table(10, dp).copy()
    big = ln_factorial_table(5000, dp)
    assert len(big) == 5001
    np.testing.assert_array_equal(big[:11], small)
    assert not big.flags.writeable


def test_convergence_radius():
    assert convergence_radius(DeformationParam(0.0)) == 1.0
    assert convergence_radius(DeformationParam(1.0)) == math.inf
    assert convergence_radius(DeformationParam(0.9)) == pytest.approx(1 / math.sqrt(0.19), rel=1e-14)
    assert convergence_radius(0.9) == pytest.approx(2.2941573387056, rel=1e-12)


@given(st.floats(0.0, 0.999999))
def test_radius_exceeds_one(q):
    assert DeformationParam(q).radius >= 1.0


@pytest.mark.parametrize("bad", [-0.5, 1.5, float("nan"), float("inf")])
def test_rejects_invalid_q(bad):
    with pytest.raises(ValueError):
        DeformationParam(bad)


def test_limit_flag():
    dp = DeformationParam(1 - 5e-10)
    assert dp.classical and dp.q == 1.0 and dp.q_squared == 1.0


@pytest.mark.parametrize("N, expected", [(1, 1), (2, 3), (3, 15), (4, 105), (8, 2027025)])
def test_double_factorial_odd(N, expected):
    assert double_factorial_odd(N) == expected


def test_double_factorial_exact_big():
    value = double_factorial_odd(200)
    assert isinstance(value, int)
    assert value == math.factorial(400) // (2**200 * math.factorial(200))
    with pytest.raises(ValueError):
        double_factorial_odd(0)
