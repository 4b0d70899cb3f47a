import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ckarith.errors import BudgetExceededError
from ckarith.fields import (
    ExtensionField,
    PrimeField,
    enumerate_field,
    is_irreducible,
    is_prime,
    make_extension,
    parse_field,
    primes_up_to,
)


def test_is_prime_against_sympy():
    for n in range(-5, 3000):
        assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n", [2 ** 61 - 1, 2 ** 89 - 1, 3215031751, 2 ** 64 + 1, 561, 3825123056546413051])
def test_is_prime_large(n):
    assert is_prime(n) == sympy.isprime(n)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert len(primes_up_to(1000)) == 168


@pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 3)])
def test_irreducibility_against_sympy(p, m):
    import itertools

    t = sympy.Symbol("t")
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        poly = sympy.Poly(list(reversed(f)), t, modulus=p)
        assert is_irreducible(f, p) == poly.is_irreducible, f


@pytest.mark.parametrize(
    "p, m, modulus",
    [(3, 2, (1, 0, 1)), (2, 3, (1, 1, 0, 1)), (5, 1, (0, 1)), (2, 2, (1, 1, 1)), (5, 2, (2, 0, 1)), (2, 4, (1, 1, 0, 0, 1))],
)
def test_canonical_modulus(p, m, modulus):
    assert make_extension(p, m).modulus == modulus


def test_make_extension_errors():
    with pytest.raises(ValueError):
        make_extension(4, 2)
    with pytest.raises(ValueError):
        make_extension(5, 0)
    with pytest.raises(ValueError):
        ExtensionField(3, (2, 0, 1))  # t^2 + 2 = (t - 1)(t + 1) over F_3


@pytest.mark.parametrize("p, m", [(2, 1), (2, 3), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_field_axioms(p, m):
    f = make_extension(p, m)
    elems = list(f.elements())
    assert len(elems) == len(set(elems)) == p ** m
    nonzero = [a for a in elems if any(a)]
    for a in nonzero:
        assert f.mul(a, f.inv(a)) == f.one()
        # Lagrange in the multiplicative group
        assert f.pow(a, f.q - 1) == f.one()
    sample = elems[:: max(1, len(elems) // 7)]
    for a in sample:
        assert f.add(a, f.neg(a)) == f.zero()
        for b in sample:
            assert f.mul(a, b) == f.mul(b, a)
            for c in sample:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("p, m", [(3, 2), (2, 4), (5, 2)])
def test_frobenius_is_additive(p, m):
    f = make_extension(p, m)
    elems = list(f.elements())
    for a in elems:
        for b in elems[:5]:
            assert f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p))


def test_field_element_operators():
    f = make_extension(3, 2)
    g = f.generator()
    assert g * g == f.element(-1)  # t^2 = -1 under modulus t^2 + 1
    assert (g + 1) - 1 == g
    assert g / g == f.element(1)
    assert g ** 4 == f.element(1)
    assert not f.element(0)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 101]), st.integers(), st.integers())
def test_prime_field_matches_modular_arithmetic(p, x, y):
    f = PrimeField(p)
    a, b = f.from_int(x), f.from_int(y)
    assert f.add(a, b) == ((x + y) % p,)
    assert f.mul(a, b) == ((x * y) % p,)


def test_enumerate_budget():
    f = make_extension(2, 5)
    assert len(list(enumerate_field(f))) == 32
    with pytest.raises(BudgetExceededError):
        list(enumerate_field(f, budget=31))


def test_parse_field():
    assert parse_field("Fp:5") == PrimeField(5)
    assert parse_field("Fq:3^2") == make_extension(3, 2)
    assert parse_field("Fq:3^2").spec == "Fq:3^2"
    for bad in ("Fp:6", "F5", "Fq:4^2"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_prime_field_examples():
    f = PrimeField(5)
    assert f.add((2,), (4,)) == (1,)
    assert f.inv((3,)) == (2,)
    assert [a for a in range(1, 5) if a * 3 % 5 == 1] == [2]
    assert len(list(enumerate_field(f))) == 5
    assert len(set(enumerate_field(make_extension(5, 2)))) == 25
