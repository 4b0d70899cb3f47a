"""Exact integer linear algebra.

Everything here works on Python ints, so no magnitude bound is assumed
anywhere. Matrices are small and dense; the algorithms are the textbook ones
(pivoted Smith reduction, Bareiss elimination, Faddeev-LeVerrier) written for
clarity first and speed second.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "IntPolynomial",
    "SmithDecomposition",
    "smith_normal_form",
    "determinant",
    "kernel_basis",
    "char_poly",
    "hermite_normal_form",
    "block_diagonal",
    "parse_matrix",
]


class IntMatrix:
    """Dense immutable matrix of arbitrary-precision integers.

    >>> m = IntMatrix([[1, 2], [3, 4]])
    >>> m.rows, m.cols
    (2, 2)
    >>> (m @ IntMatrix.identity(2)) == m
    True
    """

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(_as_int(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix: every row must have %d entries" % cols)
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence[int]) -> IntMatrix:
        """Build from a flat row-major entry list."""
        if len(entries) != rows * cols:
            raise ValueError(
                "expected rows*cols = %d entries, got %d" % (rows * cols, len(entries))
            )
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> list[int]:
        return [x for row in self._data for x in row]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return "IntMatrix(%r)" % (self.tolist(),)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %s @ %s" % (self.shape, other.shape))
        ot = list(zip(*other._data)) if other.rows else [()] * other.cols
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self._data],
            cols=other.cols,
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError("shape mismatch: %s vs %s" % (self.shape, other.shape))

    def one_minus_transpose(self) -> IntMatrix:
        """Return ``I - A^t``, the matrix whose cokernel and kernel give K-theory."""
        _require_square(self)
        return IntMatrix.identity(self.rows) - self.T

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("vector length %d != cols %d" % (len(vec), self.cols))
        return [sum(a * b for a, b in zip(r, vec)) for r in self._data]

    def is_diagonal(self) -> bool:
        return all(
            x == 0 for i, r in enumerate(self._data) for j, x in enumerate(r) if i != j
        )

    def diagonal(self) -> list[int]:
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]

    def to_json(self) -> str:
        return json.dumps([[str(x) for x in r] for r in self._data])


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x.strip())
    ix = int(x)
    if ix != x:
        raise ValueError("non-integer matrix entry %r" % (x,))
    return ix


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise ValueError("matrix must be square, got %dx%d" % m.shape)


def _require_nonempty(m: IntMatrix) -> None:
    if m.rows == 0 or m.cols == 0:
        raise ValueError("matrix must be nonempty, got %dx%d" % m.shape)


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    """Assemble square or rectangular blocks along the diagonal."""
    nr = sum(b.rows for b in blocks)
    nc = sum(b.cols for b in blocks)
    out = [[0] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(out, cols=nc)


# --------------------------------------------------------------------------
# polynomials


class IntPolynomial:
    """Univariate integer polynomial, coefficients in ascending degree.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [_as_int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "IntPolynomial(%r)" % (list(self.coeffs),)

    def __str__(self) -> str:
        return self.render("s")

    def render(self, var: str = "s") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else "%s^%d" % (var, k)
                body = mono if mag == 1 else "%d*%s" % (mag, mono)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += " %s %s" % (sign, body)
        return s


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with both transforms.

    The pivot at each stage is the nonzero entry of least absolute value in
    the remaining submatrix. Reduction uses nearest-integer quotients, which
    keeps transform entries noticeably smaller than floor division does.

    >>> smith_normal_form(IntMatrix([[2, 4], [6, 8]])).diagonal
    [2, 4]
    """
    _require_nonempty(m)
    a = m.tolist()
    nr, nc = m.rows, m.cols
    # U accumulates row ops (nr x nr); V accumulates column ops (nc x nc)
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_addmul(dst, src, q):
        # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for k in range(nc):
            if rs[k]:
                ra[k] -= q * rs[k]
        ua, us = U[dst], U[src]
        for k in range(nr):
            if us[k]:
                ua[k] -= q * us[k]

    def col_addmul(dst, src, q):
        # col_dst -= q * col_src
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        for r in V:
            if r[src]:
                r[dst] -= q * r[src]

    for t in range(min(nr, nc)):
        piv = _min_abs_position(a, t, t, nr, nc)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)

        while True:
            dirty = False
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_addmul(i, t, _round_div(a[i][t], p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_addmul(j, t, _round_div(a[t][j], p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; move it in
                i, j = _min_abs_cross(a, t, nr, nc)
                if i != t:
                    row_swap(t, i)
                if j != t:
                    col_swap(t, j)
                continue
            # row and column clear; enforce divisibility of the rest by the pivot
            bad = _first_nondivisible(a, t, nr, nc, p)
            if bad is None:
                break
            # add the offending row into the pivot row and reduce again
            row_addmul(t, bad, -1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(IntMatrix(U, cols=nr), IntMatrix(a, cols=nc), IntMatrix(V, cols=nc))


def _round_div(x: int, y: int) -> int:
    """Nearest-integer quotient (ties toward floor)."""
    q, r = divmod(x, y)
    # r shares the sign of y, so r/y lies in [0, 1)
    if 2 * abs(r) > abs(y):
        q += 1
    return q


def _min_abs_position(a, r0, c0, nr, nc):
    best = None
    bestv = 0
    for i in range(r0, nr):
        row = a[i]
        for j in range(c0, nc):
            v = row[j]
            if v:
                av = -v if v < 0 else v
                if best is None or av < bestv:
                    best, bestv = (i, j), av
                    if av == 1:
                        return best
    return best


def _min_abs_cross(a, t, nr, nc):
    """Smallest nonzero entry in row t or column t (including the pivot)."""
    best, bestv = (t, t), abs(a[t][t])
    for i in range(t + 1, nr):
        v = abs(a[i][t])
        if v and (bestv == 0 or v < bestv):
            best, bestv = (i, t), v
    for j in range(t + 1, nc):
        v = abs(a[t][j])
        if v and (bestv == 0 or v < bestv):
            best, bestv = (t, j), v
    return best


def _first_nondivisible(a, t, nr, nc, p):
    for i in range(t + 1, nr):
        row = a[i]
        for j in range(t + 1, nc):
            if row[j] % p:
                return i
    return None


# --------------------------------------------------------------------------
# determinant, kernel, characteristic polynomial


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    >>> determinant(IntMatrix([[1, -1], [5, 1]]))
    6
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f:
                for j in range(k + 1, n):
                    ri[j] = (pk * ri[j] - f * rk[j]) // prev
            elif pk != prev:
                for j in range(k + 1, n):
                    if ri[j]:
                        ri[j] = pk * ri[j] // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Basis of the integer null lattice ``{x in Z^cols : m x = 0}``.

    Read off the Smith decomposition: with ``U m V = D`` the trailing columns
    of ``V`` past the rank span the kernel, and they span it over ``Z``
    because ``V`` is unimodular.
    """
    _require_nonempty(m)
    snf = smith_normal_form(m)
    r = snf.rank
    V = snf.V
    return [[V[i, j] for i in range(V.rows)] for j in range(r, V.cols)]


def char_poly(m: IntMatrix) -> IntPolynomial:
    """``det(m - s I)`` as a polynomial in ``s`` (Faddeev-LeVerrier).

    Every division in the recurrence is exact for integer input.

    >>> char_poly(IntMatrix([[0, -5], [1, 0]]))
    IntPolynomial([5, 0, 1])
    """
    _require_square(m)
    n = m.rows
    # c[k] is the coefficient of s^k in det(sI - m)
    c = [0] * (n + 1)
    c[n] = 1
    a = m.tolist()
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = m @ M_{k-1} + c_{n-k+1} I
        if k == 1:
            M = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            M = _matmul(a, M)
            ck = c[n - k + 1]
            for i in range(n):
                M[i][i] += ck
        AM = _matmul(a, M)
        tr = sum(AM[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        c[n - k] = q
    if n % 2:
        c = [-x for x in c]
    return IntPolynomial(c)


def _matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, col)) for col in bt] for r in a]


# --------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``(H, U)`` with ``U @ m == H``.

    ``H`` is in row echelon form, each pivot is positive, entries above a
    pivot lie in ``[0, pivot)``, and zero rows sit at the bottom.

    >>> H, U = hermite_normal_form(IntMatrix([[2, 4], [6, 8]]))
    >>> H
    IntMatrix([[2, 0], [0, 4]])
    """
    _require_nonempty(m)
    a = m.tolist()
    nr, nc = m.rows, m.cols
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]

    def addmul(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    r = 0
    for j in range(nc):
        if r == nr:
            break
        while True:
            rows = [i for i in range(r, nr) if a[i][j]]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(a[i][j]))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][j]:
                    addmul(i, r, a[i][j] // a[r][j])
                    if a[i][j]:
                        done = False
            if done:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
            U[r] = [-x for x in U[r]]
        p = a[r][j]
        for i in range(r):
            q = a[i][j] // p
            if q:
                addmul(i, r, q)
        r += 1
    return IntMatrix(a, cols=nc), IntMatrix(U, cols=nr)


# --------------------------------------------------------------------------
# parsing


def parse_matrix(text: str) -> IntMatrix:
    """Parse the plain text format or a JSON array of arrays.

    Text format: first line ``rows cols``, then the entries row-major,
    separated by any whitespace. JSON entries may be ints or decimal strings.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty matrix input")
    if s[0] == "[":
        data = json.loads(s)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("JSON matrix must be an array of arrays")
        return IntMatrix([[_json_int(x) for x in r] for r in data])
    tokens = s.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'rows cols'")
    rows, cols = int(tokens[0]), int(tokens[1])
    if rows < 0 or cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    return IntMatrix.from_entries(rows, cols, [int(t) for t in tokens[2:]])


def _json_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError("matrix entries must be integers or decimal strings, got %r" % (x,))
    return int(x)
