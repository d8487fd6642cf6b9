from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flagmod.fields import GF, QQ, is_prime, next_prime, parse_field


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (3, 3)])
def test_field_axioms(p, e):
    F = GF(p, e)
    assert F.q == p**e
    units = [a for a in F.elements() if a]
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
    for a in units:
        assert F.mul(a, F.inv(a)) == 1
    # multiplicative group is cyclic, generated by the primitive element
    g = F.primitive_element
    assert len({F.power(g, k) for k in range(F.q - 1)}) == F.q - 1


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (2, 3)])
def test_distributive(p, e):
    F = GF(p, e)
    for a in F.elements():
        for b in F.elements():
            for c in F.elements():
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_prime_subfield_is_prime_field():
    F = GF(3, 2)
    for a in range(3):
        for b in range(3):
            assert F.add(a, b) == (a + b) % 3
            assert F.mul(a, b) == (a * b) % 3


def test_fraction_coercion():
    F = GF(5)
    assert F(Fraction(1, 2)) == 3
    assert F(-1) == 4
    assert QQ(Fraction(6, 4)) == Fraction(3, 2)


def test_arrays_normalized():
    F = GF(7)
    a = F.array([-1, 8, 14])
    assert a.tolist() == [6, 1, 0]
    assert QQ.array(["1/2", 3]).tolist() == [Fraction(1, 2), 3]


def test_parse_field():
    assert parse_field("QQ") is QQ
    assert parse_field("0") is QQ
    assert parse_field("GF(5)") == GF(5)
    assert parse_field("7") == GF(7)
    with pytest.raises(ValueError):
        parse_field("6")


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert next_prime(168) == 173


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_gf_matches_integer_arithmetic(a, b):
    F = GF(11)
    assert F.add(F(a), F(b)) == (a + b) % 11
    assert F.mul(F(a), F(b)) == (a * b) % 11


def test_random_nonzero():
    rng = np.random.default_rng(0)
    for F in (GF(5), QQ):
        vals = F.random(rng, size=50, nonzero=True)
        assert all(v != 0 for v in vals)
