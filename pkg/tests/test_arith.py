from fractions import Fraction as F
import math

import pytest
from hypothesis import given, settings, strategies as st

from qdef.arith import (
    REAL,
    LocalPolynomial,
    Place,
    crt,
    factorize,
    height,
    hensel_lift,
    is_prime,
    primes_up_to,
    quadratic_has_root_local,
    support,
    val,
    weak_approx,
)
from qdef.errors import HypothesisViolated, ZeroInput

rationals = st.fractions(max_denominator=10**4).filter(lambda x: abs(x.numerator) <= 10**6)
small_primes = st.sampled_from(primes_up_to(50))


def test_valuation_examples():
    assert val(12, 2) == 2
    assert val(F(2, 9), 3) == -2
    assert val(0, 5) == math.inf


def test_support_examples():
    assert support(12) == {2, 3}
    assert support(F(-7, 10)) == {2, 5, 7}
    assert support(1) == frozenset()


def test_height():
    assert height(F(-7, 10)) == 10
    assert height(F(22, 7)) == 22
    assert height(0) == 1


@given(rationals, rationals, small_primes)
def test_ultrametric(x, y, p):
    assert val(x + y, p) >= min(val(x, p), val(y, p))
    if val(x, p) != val(y, p):
        assert val(x + y, p) == min(val(x, p), val(y, p))


@given(rationals.filter(bool), rationals.filter(bool), small_primes)
def test_valuation_multiplicative(x, y, p):
    assert val(x * y, p) == val(x, p) + val(y, p)


@given(st.integers(2, 10**7))
def test_factorize_roundtrip(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac)


def test_primality_against_sieve():
    sieve = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in sieve) for n in range(5001))
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_place_parsing():
    assert Place.parse("inf") == REAL
    assert Place.parse("7") == Place(7)
    with pytest.raises(ValueError):
        Place.parse("9")


def test_crt():
    r, m = crt([(2, 3), (3, 5), (2, 7)])
    assert m == 105 and r % 3 == 2 and r % 5 == 3 and r % 7 == 2


def test_weak_approx_examples():
    x = weak_approx([(2, 0), (3, 0)], 0)
    assert val(x, 2) > 0 and val(x, 3) > 0
    x = weak_approx([(2, F(1, 3)), (5, 7)], 1)
    assert val(x - F(1, 3), 2) >= 2 and val(x - 7, 5) >= 2


@settings(max_examples=60)
@given(st.lists(st.tuples(small_primes, rationals), min_size=1, max_size=4, unique_by=lambda t: t[0]), st.integers(-3, 8))
def test_weak_approx_property(targets, gamma):
    x = weak_approx(targets, gamma)
    assert all(val(x - a, p) > gamma for p, a in targets)


def test_hensel_examples():
    assert hensel_lift(LocalPolynomial((F(-2), F(-1), F(1)), 3), 2, 10) == 2
    a = hensel_lift(LocalPolynomial((F(-17), F(0), F(1)), 2), 1, 8)
    assert val(a * a - 17, 2) >= 8
    assert val(a - 1, 2) >= 2
    with pytest.raises(HypothesisViolated):
        hensel_lift(LocalPolynomial((F(-4), F(-1), F(1)), 3), 0, 5)


def test_quadratic_root_examples():
    assert quadratic_has_root_local(2, 2)
    assert not quadratic_has_root_local(4, 3)
    for place in (REAL, 2, 3, 5, 11):
        assert quadratic_has_root_local(0, place)


def test_zero_has_no_support_errors():
    with pytest.raises(ZeroInput):
        support(0)
