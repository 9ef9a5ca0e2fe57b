import math

import pytest
from hypothesis import given, strategies as st

from fsignature.errors import NotPrimeError, ZeroInversion
from fsignature.gfp import (MAX_PRIME, PrimeChar, base_p_digits, fp_inv, inv_mod,
                            is_prime, lucas_binom)

PRIMES = [2, 3, 5, 7, 11, 13, 29, 101, 65537, 2147483647]


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 561, 2**31 - 3])
def test_prime_char_rejects_composites(bad):
    with pytest.raises(NotPrimeError):
        PrimeChar(bad)


def test_prime_char_rejects_oversized_prime():
    with pytest.raises(ValueError):
        PrimeChar(MAX_PRIME + 11)  # 2^31 + 11 is prime


def test_inverse_examples():
    F = PrimeChar(5)
    assert fp_inv(F(1)) == F(1)
    assert fp_inv(F(2)) == F(3)


def test_inverse_exhaustive_mod_29():
    for k in range(1, 29):
        y = next(y for y in range(1, 29) if k * y % 29 == 1)
        assert int(fp_inv(PrimeChar(29)(k))) == y


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInversion):
        inv_mod(0, 7)
    with pytest.raises(ZeroDivisionError):
        PrimeChar(7)(3) / PrimeChar(7)(0)


def test_digits():
    assert base_p_digits(19, 5) == [4, 3]
    assert base_p_digits(0, 3) == []


def test_lucas_small_examples():
    assert int(lucas_binom(5, 2, 5)) == 0
    for p in (2, 3, 5):
        for n in range(30):
            assert int(lucas_binom(n, 0, p)) == 1
    assert int(lucas_binom(3, 7, 5)) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_lucas_against_big_integer_binomial(p):
    F = PrimeChar(p)
    for n in range(501):
        row = [math.comb(n, k) % p for k in range(n + 1)]
        assert [int(lucas_binom(n, k, F)) for k in range(n + 1)] == row


elements = st.sampled_from(PRIMES).flatmap(
    lambda p: st.tuples(*(st.integers(0, p - 1) for _ in range(3))).map(
        lambda t: [PrimeChar(p)(v) for v in t]))


@given(elements)
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == a.modulus(0)
    if int(a):
        assert a * fp_inv(a) == a.modulus(1)
        assert (b / a) * a == b


@given(st.sampled_from(PRIMES), st.integers(), st.integers())
def test_values_are_canonical(p, x, y):
    F = PrimeChar(p)
    z = F(x) * F(y) + F(x)
    assert 0 <= int(z) < p
    assert int(z) == (x * y + x) % p
