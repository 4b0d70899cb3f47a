import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckarith.linalg import (
    IntMatrix,
    IntPolynomial,
    block_diagonal,
    char_poly,
    determinant,
    hermite_normal_form,
    kernel_basis,
    parse_matrix,
    smith_normal_form,
)
from oracles import cofactor_det, determinantal_invariants, random_matrix


def matrices(max_dim=6, square=False, lo=-9, hi=9):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_dim))
        c = r if square else draw(st.integers(1, max_dim))
        rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                             min_size=r, max_size=r))
        return IntMatrix(rows)

    return build()


def is_smith(d: IntMatrix) -> bool:
    diag = d.diagonal()
    nz = [x for x in diag if x]
    return (
        d.is_diagonal()
        and all(x >= 0 for x in diag)
        and diag[:len(nz)] == nz
        and all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    )


# ---------------------------------------------------------------- IntMatrix


def test_matrix_basics():
    m = IntMatrix([[1, 2, 3], [4, 5, 6]])
    assert m.shape == (2, 3)
    assert m.entries == [1, 2, 3, 4, 5, 6]
    assert m.T == IntMatrix([[1, 4], [2, 5], [3, 6]])
    assert m @ m.T == IntMatrix([[14, 32], [32, 77]])
    assert IntMatrix.from_entries(2, 3, [1, 2, 3, 4, 5, 6]) == m


def test_ragged_rejected():
    with pytest.raises(ValueError, match="ragged"):
        IntMatrix([[1, 2], [3]])


def test_big_entries_survive():
    big = 2 ** 200 + 1
    m = IntMatrix([[big, 0], [0, 1]])
    assert determinant(m) == big
    assert smith_normal_form(m).diagonal == [1, big]


def test_block_diagonal():
    b = block_diagonal([IntMatrix([[1]]), IntMatrix([[2, 3], [4, 5]])])
    assert b == IntMatrix([[1, 0, 0], [0, 2, 3], [0, 4, 5]])


def test_parse_text_and_json():
    assert parse_matrix("2 2\n1 -1\n5 1\n") == IntMatrix([[1, -1], [5, 1]])
    huge = str(3 ** 70)
    assert parse_matrix(json.dumps([[huge, "2"], [3, 4]]))[0, 0] == 3 ** 70
    with pytest.raises(ValueError, match="expected rows\\*cols"):
        parse_matrix("2 2\n1 2 3")
    with pytest.raises(ValueError):
        parse_matrix("[[1.5]]")


# ---------------------------------------------------------------- Smith normal form


def test_snf_identity():
    s = smith_normal_form(IntMatrix.identity(3))
    assert s.D == IntMatrix.identity(3)
    assert s.U == IntMatrix.identity(3) and s.V == IntMatrix.identity(3)


def test_snf_zero():
    assert smith_normal_form(IntMatrix.zeros(2, 2)).D == IntMatrix.zeros(2, 2)


def test_snf_worked_example():
    # d1 = gcd of entries = 2, d1 d2 = |det| = 8
    a = IntMatrix([[2, 4], [6, 8]])
    s = smith_normal_form(a)
    assert s.diagonal == [2, 4]
    assert s.U @ a @ s.V == s.D


def test_snf_sympy_reference_matrix():
    # invariant factors 1, 10, 30, 0 (published sympy normal-form test case)
    a = IntMatrix([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    assert smith_normal_form(a).diagonal == [1, 10, 30, 0]


def test_snf_rejects_empty():
    with pytest.raises(ValueError):
        smith_normal_form(IntMatrix([], cols=0))


@settings(max_examples=300, deadline=None)
@given(matrices(max_dim=7))
def test_snf_decomposition_properties(a):
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert abs(determinant(s.U)) == 1
    assert abs(determinant(s.V)) == 1
    assert is_smith(s.D)


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=4))
def test_snf_matches_determinantal_divisors(a):
    nz = [d for d in smith_normal_form(a).diagonal if d]
    assert nz == determinantal_invariants(a.tolist())


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=6, square=True))
def test_det_is_product_of_invariant_factors(a):
    diag = smith_normal_form(a).diagonal
    if all(diag):
        prod = 1
        for d in diag:
            prod *= d
        assert abs(determinant(a)) == prod
    else:
        assert determinant(a) == 0


# ---------------------------------------------------------------- determinant


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, -1], [5, 1]], 6),
        ([[1, 1], [2, 2]], 0),
        ([[0, 1], [1, 0]], -1),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1),
    ],
)
def test_determinant_examples(rows, expected):
    assert determinant(IntMatrix(rows)) == expected


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_determinant_identity(n):
    assert determinant(IntMatrix.identity(n)) == 1


def test_determinant_non_square():
    with pytest.raises(ValueError, match="square"):
        determinant(IntMatrix([[1, 2, 3]]))


def test_determinant_against_cofactor(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n, n)
        assert determinant(IntMatrix(a)) == cofactor_det(a)


def test_determinant_with_zero_pivots():
    # forces row swaps and rows skipped by the elimination
    a = [[0, 2, 0, 1], [0, 0, 3, 0], [4, 0, 0, 0], [0, 1, 0, 5]]
    assert determinant(IntMatrix(a)) == cofactor_det(a)


# ---------------------------------------------------------------- kernel


def test_kernel_invertible_is_empty():
    assert kernel_basis(IntMatrix([[1, -1], [5, 1]])) == []


def test_kernel_zero_matrix_spans_everything():
    basis = kernel_basis(IntMatrix.zeros(3, 3))
    assert len(basis) == 3
    assert abs(determinant(IntMatrix(basis))) == 1


def test_kernel_rank_one():
    (v,) = kernel_basis(IntMatrix([[1, 1], [2, 2]]))
    assert v in ([1, -1], [-1, 1])


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=6))
def test_kernel_vectors_vanish_and_count(a):
    basis = kernel_basis(a)
    for v in basis:
        assert a.apply(v) == [0] * a.rows
    assert len(basis) == a.cols - smith_normal_form(a).rank


def test_kernel_is_saturated():
    # x + 2y = 0 has kernel lattice spanned by (2, -1), not a multiple of it
    (v,) = kernel_basis(IntMatrix([[2, 4]]))
    assert sorted(map(abs, v)) == [1, 2]


# ---------------------------------------------------------------- characteristic polynomial


def test_char_poly_companion():
    a, p = 3, 7
    assert char_poly(IntMatrix([[0, -p], [1, a]])) == IntPolynomial([p, -a, 1])


def test_char_poly_identity_and_zero():
    assert char_poly(IntMatrix.identity(2)) == IntPolynomial([1, -2, 1])
    assert char_poly(IntMatrix([[0]])) == IntPolynomial([0, -1])


def test_char_poly_non_square():
    with pytest.raises(ValueError):
        char_poly(IntMatrix([[1, 2]]))


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=6, square=True))
def test_char_poly_properties(a):
    cp = char_poly(a)
    n = a.rows
    assert cp.degree == n
    assert cp(0) == determinant(a)
    assert cp.coeffs[-1] == (-1) ** n


def test_char_poly_pointwise_against_determinant(rng):
    for _ in range(50):
        n = rng.randint(1, 5)
        a = IntMatrix(random_matrix(rng, n, n))
        cp = char_poly(a)
        for s in (-3, 1, 2, 7):
            assert cp(s) == determinant(a - IntMatrix([[s * (i == j) for j in range(n)] for i in range(n)]))


def test_char_poly_block_diagonal_factors():
    b1, b2 = IntMatrix([[0, -5], [1, 0]]), IntMatrix([[0, -7], [1, -4]])
    assert char_poly(block_diagonal([b1, b2])) == char_poly(b1) * char_poly(b2)


# ---------------------------------------------------------------- Hermite normal form


def test_hnf_identity():
    H, U = hermite_normal_form(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3) and U == IntMatrix.identity(3)


def test_hnf_already_reduced():
    H, _ = hermite_normal_form(IntMatrix([[2, 0], [0, 2]]))
    assert H == IntMatrix([[2, 0], [0, 2]])


def test_hnf_worked_example():
    a = IntMatrix([[2, 4], [6, 8]])
    H, U = hermite_normal_form(a)
    assert H == IntMatrix([[2, 0], [0, 4]])
    assert U @ a == H


def is_row_hermite(h: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    for i in range(h.rows):
        row = h.row(i)
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        j = nz[0]
        if j <= last or row[j] <= 0:
            return False
        if any(not 0 <= h[k, j] < row[j] for k in range(i)):
            return False
        last = j
    return True


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=6))
def test_hnf_properties(a):
    H, U = hermite_normal_form(a)
    assert U @ a == H
    assert abs(determinant(U)) == 1
    assert is_row_hermite(H)


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=6, square=True))
def test_hnf_and_snf_agree_on_det(a):
    if determinant(a) == 0:
        return
    H, _ = hermite_normal_form(a)
    hd = 1
    for x in H.diagonal():
        hd *= x
    sd = 1
    for x in smith_normal_form(a).diagonal:
        sd *= x
    assert hd == sd == abs(determinant(a))


# ---------------------------------------------------------------- IntPolynomial


def test_polynomial_arithmetic_and_render():
    p = IntPolynomial([1, -6, 5])
    assert p == IntPolynomial([1, -1]) * IntPolynomial([1, -5])
    assert p(1) == 0
    assert IntPolynomial([0, 0]).degree == -1
    assert p.render("u") == "5*u^2 - 6*u + 1"
    assert str(IntPolynomial([0, -1])) == "-s"
