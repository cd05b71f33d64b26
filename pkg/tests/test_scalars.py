"""Laurent scalars in u = q^(1/4), quantum integers and evaluation at primes."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgl.scalars import (
    ONE,
    V,
    ZERO,
    EvaluatedScalar,
    Scalar,
    ScalarFraction,
    evaluate,
    evaluate_any,
    qbinomial,
    qfactorial,
    qint,
    quantum_combinatorics,
)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
scalars = st.dictionaries(st.integers(-8, 8), coeffs, max_size=4).map(Scalar)
primes = st.sampled_from([2, 3, 5])


def test_ring_examples():
    vi = V ** -1
    assert (V - vi) * (V + vi) == V**2 - V**-2
    a = Scalar.v(3, 2) - 1
    assert a + ZERO == a
    assert (V - vi) * vi == ONE - V**-2


def test_quantum_integer_examples():
    assert qint(1) == ONE
    assert qint(3) == V**2 + 1 + V**-2
    assert qbinomial(2, 1) == V + V**-1
    assert quantum_combinatorics(3, which="int") == qint(3)
    assert quantum_combinatorics(3, which="factorial") == qint(2) * qint(3)
    assert quantum_combinatorics(4, 2) == qbinomial(4, 2)


def test_quantum_integer_is_bar_invariant():
    for n in range(6):
        assert qint(n).bar() == qint(n)


def test_binomial_domain():
    with pytest.raises(ValueError):
        qbinomial(1, 2)
    with pytest.raises(ValueError):
        qbinomial(3, -1)


@pytest.mark.parametrize("m", range(1, 9))
def test_pascal_recurrence(m):
    for n in range(1, m):
        # oracle: the factorial quotient, divided exactly
        direct = qfactorial(m).divmod_exact(qfactorial(n) * qfactorial(m - n))
        assert qbinomial(m, n) == direct
        rec = V**n * qbinomial(m - 1, n) + V ** (n - m) * qbinomial(m - 1, n - 1)
        assert qbinomial(m, n) == rec


def test_evaluate_examples():
    assert evaluate(V**2, 2) == EvaluatedScalar([2, 0, 0, 0], 2)
    assert evaluate(V, 3) == EvaluatedScalar([0, 0, 1, 0], 3)
    assert evaluate(qint(3), 2).rational() == Fraction(7, 2)
    assert evaluate(qint(3), 2).to_json()["c"][0] == "7/2"


def test_evaluate_rejects_composites():
    for q in (1, 4, 6, 9):
        with pytest.raises(ValueError):
            evaluate(V, q)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_even_powers_are_rational(q):
    for k in range(-8, 9):
        assert evaluate(V ** (2 * k), q).rational() == Fraction(q) ** k


@settings(max_examples=1000, deadline=None)
@given(scalars, scalars, primes)
def test_evaluate_is_a_ring_map(a, b, q):
    assert evaluate(a * b, q) == evaluate(a, q) * evaluate(b, q)
    assert evaluate(a + b, q) == evaluate(a, q) + evaluate(b, q)


@settings(max_examples=200, deadline=None)
@given(scalars, primes)
def test_inverse_in_evaluated_ring(a, q):
    x = evaluate(a, q)
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


def test_u_power_reduces_mod_q():
    assert EvaluatedScalar.u_power(4, 3) == 3
    assert EvaluatedScalar.u_power(-1, 2) * EvaluatedScalar.u_power(1, 2) == 1
    assert EvaluatedScalar.u_power(6, 5) == EvaluatedScalar([0, 0, 5, 0], 5)


def test_fraction_reduces_and_compares():
    f = ScalarFraction(qint(4), qint(2))
    assert f == V**2 + V**-2
    g = ScalarFraction(ONE, qint(2))
    assert g * qint(2) == 1
    assert evaluate_any(g, 3) * evaluate(qint(2), 3) == 1
    assert ScalarFraction(qint(3), qint(2)) == ScalarFraction(qint(3) * V, qint(2) * V)


def test_json_roundtrip():
    a = Scalar({-3: Fraction(1, 2), 0: 2, 4: -1})
    assert Scalar.from_json(a.to_json()) == a
