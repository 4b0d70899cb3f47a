"""Point counts of projective varieties and short Weierstrass curves.

Counting is naive enumeration on purpose: these counts are the independent
oracle the rest of the package is checked against.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import BadReductionError, BudgetExceededError
from .fields import ExtensionField, is_prime, make_extension

__all__ = [
    "DEFAULT_COUNT_BUDGET",
    "HomogeneousPolynomial",
    "ProjectiveVariety",
    "EllipticCurve",
    "PointCount",
    "count_projective",
    "ec_count",
    "ec_count_ext",
    "frobenius_traces",
    "parse_curve",
    "parse_variety",
]

# guard on q^2, the number of affine (x, y) pairs a naive scan could visit
DEFAULT_COUNT_BUDGET = 2 ** 24


class HomogeneousPolynomial:
    """Sparse integer polynomial: exponent vector -> coefficient."""

    def __init__(self, terms: Mapping[tuple[int, ...], int] | Iterable[tuple[int, tuple[int, ...]]]):
        if isinstance(terms, Mapping):
            items = [(int(c), tuple(e)) for e, c in terms.items()]
        else:
            items = [(int(c), tuple(e)) for c, e in terms]
        acc: dict[tuple[int, ...], int] = {}
        for c, e in items:
            if any(x < 0 for x in e):
                raise ValueError("negative exponent in %r" % (e,))
            acc[e] = acc.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(acc.items()) if c}
        nvars = {len(e) for e in acc}
        if len(nvars) > 1:
            raise ValueError("terms use different numbers of variables: %r" % sorted(nvars))
        self.n_vars = nvars.pop() if nvars else None
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise ValueError("polynomial is not homogeneous: total degrees %r" % sorted(degrees))
        self.degree = degrees.pop() if degrees else None

    def __repr__(self) -> str:
        return "HomogeneousPolynomial(%r)" % self.terms

    def evaluate(self, field: ExtensionField, point) -> tuple[int, ...]:
        acc = field.zero()
        for e, c in self.terms.items():
            term = field.from_int(c)
            for x, k in zip(point, e):
                if k:
                    term = field.mul(term, field.pow(x, k))
            acc = field.add(acc, term)
        return acc


@dataclass(frozen=True)
class ProjectiveVariety:
    """Common zero set of homogeneous integer polynomials in ``P^(n_vars - 1)``."""

    n_vars: int
    polys: tuple[HomogeneousPolynomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.n_vars < 2:
            raise ValueError("projective space needs n_vars >= 2, got %d" % self.n_vars)
        for f in self.polys:
            if f.n_vars is not None and f.n_vars != self.n_vars:
                raise ValueError(
                    "polynomial has %d variables, variety has %d" % (f.n_vars, self.n_vars)
                )


@dataclass(frozen=True)
class EllipticCurve:
    """``y^2 = x^3 + a x + b`` over ``Z`` with nonzero discriminant."""

    a: int
    b: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(
                "singular curve: discriminant -16(4a^3 + 27b^2) vanishes for a=%d, b=%d"
                % (self.a, self.b)
            )

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a ** 3 + 27 * self.b ** 2)

    @property
    def spec(self) -> str:
        return "ec:a=%d,b=%d" % (self.a, self.b)

    def is_good_prime(self, p: int) -> bool:
        """Good reduction in the short Weierstrass sense (so ``p > 3`` too)."""
        return p > 3 and is_prime(p) and self.discriminant % p != 0

    def check_good_prime(self, p: int) -> None:
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        if p <= 3:
            raise BadReductionError(
                "short Weierstrass model requires p > 3, got p=%d" % p
            )
        if self.discriminant % p == 0:
            raise BadReductionError(
                "bad reduction: p=%d divides discriminant %d of %s"
                % (p, self.discriminant, self.spec)
            )

    def homogenized(self) -> ProjectiveVariety:
        """``y^2 z = x^3 + a x z^2 + b z^3`` in coordinates ``(x, y, z)``."""
        f = HomogeneousPolynomial(
            [(1, (0, 2, 1)), (-1, (3, 0, 0)), (-self.a, (1, 0, 2)), (-self.b, (0, 0, 3))]
        )
        return ProjectiveVariety(3, (f,))


class PointCount(NamedTuple):
    count: int
    a_p: int


def _check_budget(q: int, budget: int) -> None:
    if q * q > budget:
        raise BudgetExceededError(
            "naive count over a field of size %d needs ~%d evaluations, budget is %d"
            % (q, q * q, budget)
        )


def _curve_count(field: ExtensionField, a: int, b: int) -> int:
    """``#E(F_q)`` including the point at infinity."""
    # how many y have y^2 = r, for each r
    squares = Counter(field.mul(y, y) for y in field.elements())
    A = field.from_int(a)
    B = field.from_int(b)
    total = 1
    for x in field.elements():
        rhs = field.add(field.add(field.mul(field.mul(x, x), x), field.mul(A, x)), B)
        total += squares.get(rhs, 0)
    return total


def _curve_count_prime(p: int, a: int, b: int) -> int:
    squares = Counter(y * y % p for y in range(p))
    return 1 + sum(squares.get((x * x * x + a * x + b) % p, 0) for x in range(p))


def ec_count(e: EllipticCurve, p: int, budget: int = DEFAULT_COUNT_BUDGET) -> PointCount:
    """``|E(F_p)|`` by enumeration, with ``a_p = p + 1 - |E(F_p)|``.

    >>> ec_count(EllipticCurve(0, 1), 5)
    PointCount(count=6, a_p=0)
    """
    e.check_good_prime(p)
    _check_budget(p, budget)
    n = _curve_count_prime(p, e.a, e.b)
    a_p = p + 1 - n
    if a_p * a_p > 4 * p:
        raise ArithmeticError("Hasse bound violated: a_%d = %d" % (p, a_p))
    return PointCount(n, a_p)


def ec_count_ext(e: EllipticCurve, p: int, m: int, budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """``|E(F_{p^m})|`` by enumeration over the deterministic extension field."""
    e.check_good_prime(p)
    if m < 1:
        raise ValueError("extension degree must be >= 1, got %d" % m)
    _check_budget(p ** m, budget)
    if m == 1:
        return _curve_count_prime(p, e.a, e.b)
    return _curve_count(make_extension(p, m), e.a, e.b)


def frobenius_traces(a_p: int, p: int, m_max: int) -> list[int]:
    """Power sums ``t_m = alpha^m + beta^m`` for ``m = 1..m_max``.

    ``t_0 = 2``, ``t_1 = a_p``, ``t_m = a_p t_{m-1} - p t_{m-2}``.
    """
    t = [2, a_p]
    for _ in range(2, m_max + 1):
        t.append(a_p * t[-1] - p * t[-2])
    return t[1:m_max + 1]


def count_projective(v: ProjectiveVariety, field: ExtensionField,
                     budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Number of ``F_q``-points of ``v``.

    Each projective point is visited once through its normalized
    representative, whose first nonzero coordinate is 1.
    """
    n = v.n_vars
    q = field.q
    total_reps = sum(q ** k for k in range(n))
    if total_reps > budget:
        raise BudgetExceededError(
            "P^%d over a field of size %d has %d points to test, budget is %d"
            % (n - 1, q, total_reps, budget)
        )
    zero, one = field.zero(), field.one()
    elems = list(field.elements())
    count = 0
    for lead in range(n):
        prefix = (zero,) * lead + (one,)
        for tail in itertools.product(elems, repeat=n - lead - 1):
            pt = prefix + tail
            if all(not any(f.evaluate(field, pt)) for f in v.polys):
                count += 1
    return count


# --------------------------------------------------------------------------
# input specs

_CURVE_RE = re.compile(r"^ec:a=(-?\d+),b=(-?\d+)$")


def parse_curve(spec: str) -> EllipticCurve:
    """``ec:a=<int>,b=<int>``."""
    m = _CURVE_RE.match(spec.replace(" ", ""))
    if not m:
        raise ValueError("curve spec must look like 'ec:a=<int>,b=<int>', got %r" % spec)
    return EllipticCurve(int(m.group(1)), int(m.group(2)))


def parse_variety(text: str) -> ProjectiveVariety:
    """One homogeneous polynomial per line.

    Each line lists terms separated by ``;``; a term is ``coeff e0 e1 ... e{n-1}``.
    Blank lines and ``#`` comments are ignored. ``n_vars`` is the length of
    the exponent vectors, or an explicit ``vars <n>`` line (needed for an
    empty system).
    """
    polys = []
    n_vars = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            n_vars = int(line.split()[1])
            continue
        terms = []
        for chunk in line.split(";"):
            toks = chunk.split()
            if not toks:
                continue
            if len(toks) < 2:
                raise ValueError("line %d: term %r needs a coefficient and exponents" % (lineno, chunk))
            terms.append((int(toks[0]), tuple(int(t) for t in toks[1:])))
        f = HomogeneousPolynomial(terms)
        if f.n_vars is not None:
            if n_vars is None:
                n_vars = f.n_vars
            elif n_vars != f.n_vars:
                raise ValueError("line %d: expected %d exponents per term, got %d"
                                 % (lineno, n_vars, f.n_vars))
        polys.append(f)
    if n_vars is None:
        raise ValueError("cannot infer the number of variables; add a 'vars <n>' line")
    return ProjectiveVariety(n_vars, tuple(polys))
