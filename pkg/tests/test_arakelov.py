import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckarith.arakelov import (
    CompactifiedDivisor,
    PrincipalData,
    compare_presentations,
    divisor_add,
    pic_presentation,
    principal_divisor,
    verify_theorem_1_1,
)
from ckarith.cuntz import realize_point_count
from ckarith.fields import primes_up_to
from ckarith.groups import FgAbelianGroup, group_order
from ckarith.linalg import IntMatrix, block_diagonal, determinant
from oracles import brute_force_count, random_matrix

M_PLACES = 2
labels = st.sampled_from(["C1", "C2", "C3", "P", "Q"])
fractions = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 12))
divisors = st.builds(
    CompactifiedDivisor,
    st.dictionaries(labels, st.integers(-9, 9), max_size=4),
    st.lists(fractions, min_size=M_PLACES, max_size=M_PLACES),
)


# ---------------------------------------------------------------- divisors


def test_divisor_examples():
    a = CompactifiedDivisor({"C1": 2}, [Fraction(1, 2)])
    b = CompactifiedDivisor({"C1": -2, "C2": 1}, [Fraction(1, 2)])
    assert a + b == CompactifiedDivisor({"C2": 1}, [1])
    assert a + (-a) == CompactifiedDivisor.zero(1)
    assert CompactifiedDivisor.zero(1) + a == a


def test_zero_coefficients_are_pruned():
    d = CompactifiedDivisor({"C1": 0, "C2": 3}, [0])
    assert d.finite_part == {"C2": 3}


def test_mismatched_places_rejected():
    with pytest.raises(ValueError, match="infinite places"):
        divisor_add(CompactifiedDivisor.zero(1), CompactifiedDivisor.zero(2))


def test_json_roundtrip():
    d = CompactifiedDivisor({"P": 1, "Q": -1}, [Fraction(-3, 7), 2])
    assert CompactifiedDivisor.from_json(d.to_json()) == d


@settings(max_examples=150, deadline=None)
@given(divisors, divisors, divisors)
def test_divisor_group_laws(a, b, c):
    zero = CompactifiedDivisor.zero(M_PLACES)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + zero == a
    assert a - a == zero


def test_principal_examples():
    d = principal_divisor(PrincipalData({"P": 1, "Q": -1}, [0]))
    assert d == CompactifiedDivisor({"P": 1, "Q": -1}, [0])
    r = Fraction(-7, 5)
    assert principal_divisor(PrincipalData({}, [r])) == CompactifiedDivisor({}, [r])


@settings(max_examples=100, deadline=None)
@given(
    st.dictionaries(labels, st.integers(-9, 9), max_size=4),
    st.dictionaries(labels, st.integers(-9, 9), max_size=4),
    st.lists(fractions, min_size=M_PLACES, max_size=M_PLACES),
    st.lists(fractions, min_size=M_PLACES, max_size=M_PLACES),
)
def test_principal_divisor_is_additive(f1, f2, v1, v2):
    summed = {k: f1.get(k, 0) + f2.get(k, 0) for k in set(f1) | set(f2)}
    lhs = principal_divisor(PrincipalData(summed, [x + y for x, y in zip(v1, v2)]))
    rhs = principal_divisor(PrincipalData(f1, v1)) + principal_divisor(PrincipalData(f2, v2))
    assert lhs == rhs


# ---------------------------------------------------------------- presentations


def test_pic_examples():
    assert pic_presentation(IntMatrix([[0, -5], [1, 0]])) == FgAbelianGroup(0, (6,))
    assert pic_presentation(IntMatrix.identity(3)) == FgAbelianGroup(3, ())
    assert pic_presentation(IntMatrix([[3]])) == FgAbelianGroup(0, (2,))


def test_pic_rejects_nonsquare():
    with pytest.raises(ValueError):
        pic_presentation(IntMatrix([[1, 2]]))


def test_pic_order_matches_det(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        m = IntMatrix(random_matrix(rng, n, n))
        d = determinant(m.one_minus_transpose())
        if d:
            assert group_order(pic_presentation(m)) == abs(d)


def test_verify_random_six_by_six(rng):
    for _ in range(100):
        assert verify_theorem_1_1(IntMatrix(random_matrix(rng, 6, 6))) is True


def test_verify_identity():
    chk = compare_presentations(IntMatrix.identity(4))
    assert chk.isomorphic and chk.pic == FgAbelianGroup(4, ())


def test_verify_frobenius_blocks(curve):
    blocks, counts = [], []
    for p in primes_up_to(13):
        if curve.is_good_prime(p):
            blocks.append(realize_point_count(curve, p))
            counts.append(brute_force_count(curve.a, curve.b, p))
    for b in blocks:
        assert verify_theorem_1_1(b)
    chk = compare_presentations(block_diagonal(blocks))
    assert chk.isomorphic
    assert group_order(chk.pic) == math.prod(counts)
