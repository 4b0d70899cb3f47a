"""Local zeta functions of elliptic curves and truncated Euler products.

Series work is exact (``Fraction``) all the way through rational
reconstruction. Only :func:`hasse_weil_partial` touches floating point, at a
declared binary precision through mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import NoSolutionError, PoleError, UnderdeterminedError
from .fields import primes_up_to
from .linalg import IntPolynomial
from .varieties import EllipticCurve, ec_count, frobenius_traces

__all__ = [
    "PowerSeriesQ",
    "LocalZeta",
    "PartialProducts",
    "zeta_series",
    "rational_reconstruct",
    "local_factors",
    "lefschetz_counts",
    "hasse_weil_partial",
    "l_partial_product",
    "DEFAULT_PRECISION_BITS",
]

DEFAULT_PRECISION_BITS = 128


class PowerSeriesQ:
    """Truncated power series over ``Q``.

    ``coeffs[k]`` is the coefficient of ``u^k`` for ``k = 0..order``; nothing
    is claimed about higher powers. Binary operations truncate to the smaller
    order of their operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeriesQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return "PowerSeriesQ(%s, order=%d)" % ([str(c) for c in self.coeffs], self.order)

    def truncate(self, order: int) -> PowerSeriesQ:
        if order > self.order:
            raise ValueError("cannot extend a series of order %d to %d" % (self.order, order))
        return PowerSeriesQ(self.coeffs[:order + 1])

    def __add__(self, other: PowerSeriesQ) -> PowerSeriesQ:
        n = min(self.order, other.order) + 1
        return PowerSeriesQ([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __mul__(self, other: PowerSeriesQ) -> PowerSeriesQ:
        n = min(self.order, other.order) + 1
        a, b = self.coeffs, other.coeffs
        return PowerSeriesQ([sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)])

    @classmethod
    def from_polynomial(cls, poly: Sequence, order: int) -> PowerSeriesQ:
        c = list(poly)[:order + 1]
        return cls(c + [0] * (order + 1 - len(c)))

    @classmethod
    def from_rational(cls, num: Sequence, den: Sequence, order: int) -> PowerSeriesQ:
        """Expand ``num / den`` to ``order``; needs ``den[0] != 0``."""
        num = [Fraction(x) for x in num]
        den = [Fraction(x) for x in den]
        if not den or den[0] == 0:
            raise ZeroDivisionError("denominator must have a nonzero constant term")
        out = []
        for k in range(order + 1):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(acc / den[0])
        return cls(out)

    def exp(self) -> PowerSeriesQ:
        """``exp`` of a series with zero constant term.

        With ``Z = exp(L)`` we have ``Z' = L' Z``, so
        ``k z_k = sum_{j=1..k} j l_j z_{k-j}``.
        """
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        l = self.coeffs
        z = [Fraction(1)]
        for k in range(1, self.order + 1):
            z.append(sum(j * l[j] * z[k - j] for j in range(1, k + 1)) / k)
        return PowerSeriesQ(z)

    def log(self) -> PowerSeriesQ:
        """Formal logarithm of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        z = self.coeffs
        # k l_k = k z_k - sum_{j=1..k-1} j l_j z_{k-j}
        l = [Fraction(0)]
        for k in range(1, self.order + 1):
            s = k * z[k] - sum(j * l[j] * z[k - j] for j in range(1, k))
            l.append(s / k)
        return PowerSeriesQ(l)


def zeta_series(counts: Sequence[int]) -> PowerSeriesQ:
    """``exp(sum_m N_m u^m / m)`` from the counts ``N_1..N_k``, to order ``k``.

    >>> zeta_series([1, 1, 1]).coeffs == (1, 1, 1, 1)
    True
    """
    if len(counts) < 1:
        raise ValueError("need at least one count")
    log_coeffs = [Fraction(0)] + [Fraction(n, m) for m, n in enumerate(counts, 1)]
    return PowerSeriesQ(log_coeffs).exp()


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan over Q; ``None`` when the system is singular."""
    n = len(a)
    aug = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def rational_reconstruct(s: PowerSeriesQ, num_deg: int, den_deg: int) -> tuple[IntPolynomial, IntPolynomial]:
    """Integer ``(P, Q)`` with ``Q(0) = 1``, ``deg P <= num_deg``, ``deg Q <= den_deg``
    and ``P / Q == s`` through the series' order.

    The denominator comes from the Hankel system on coefficients
    ``num_deg+1 .. num_deg+den_deg``; the numerator is then read off
    ``Q * s``. A singular Hankel matrix is reported as underdetermined rather
    than resolved by choosing one of many solutions.

    Raises
    ------
    UnderdeterminedError
        fewer than ``num_deg + den_deg + 1`` coefficients, or singular Hankel system.
    NoSolutionError
        the unique candidate fails to reproduce the series, or is not integral.
    """
    L, M = num_deg, den_deg
    if L < 0 or M < 0:
        raise ValueError("degrees must be nonnegative")
    c = s.coeffs
    need = L + M + 1
    if len(c) < need:
        raise UnderdeterminedError(
            "[%d/%d] reconstruction needs %d coefficients, series has %d" % (L, M, need, len(c))
        )

    def coef(k):
        return c[k] if k >= 0 else Fraction(0)

    # sum_{j=1..M} q_j c_{k-j} = -c_k  for k = L+1 .. L+M
    hankel = [[coef(k - j) for j in range(1, M + 1)] for k in range(L + 1, L + M + 1)]
    rhs = [-coef(k) for k in range(L + 1, L + M + 1)]
    q_tail = _solve_exact(hankel, rhs) if M else []
    if q_tail is None:
        raise UnderdeterminedError("Hankel system for [%d/%d] is singular" % (L, M))
    q = [Fraction(1)] + q_tail
    p = [sum(q[j] * coef(k - j) for j in range(min(k, M) + 1)) for k in range(L + 1)]

    if PowerSeriesQ.from_rational(p, q, s.order) != s:
        raise NoSolutionError(
            "no rational function of degrees (%d, %d) reproduces the series to order %d"
            % (L, M, s.order)
        )
    if any(x.denominator != 1 for x in p + q):
        raise NoSolutionError(
            "the [%d/%d] approximant has non-integral coefficients: P=%s, Q=%s"
            % (L, M, [str(x) for x in p], [str(x) for x in q])
        )
    return IntPolynomial(int(x) for x in p), IntPolynomial(int(x) for x in q)


@dataclass(frozen=True)
class LocalZeta:
    """``Z_p(u) = P1(u) / (P0(u) P2(u))`` for an elliptic curve at a good prime."""

    p: int
    a_p: int
    P0: IntPolynomial
    P1: IntPolynomial
    P2: IntPolynomial

    @classmethod
    def from_trace(cls, p: int, a_p: int) -> LocalZeta:
        if a_p * a_p > 4 * p:
            raise ValueError("a_p = %d violates the Hasse bound at p = %d" % (a_p, p))
        return cls(
            p,
            a_p,
            IntPolynomial([1, -1]),
            IntPolynomial([1, -a_p, p]),
            IntPolynomial([1, -p]),
        )

    @property
    def denominator(self) -> IntPolynomial:
        return self.P0 * self.P2

    def to_record(self, counts: Sequence[int] = ()) -> dict:
        return {
            "p": str(self.p),
            "a_p": str(self.a_p),
            "P1": [str(c) for c in (1, -self.a_p, self.p)],
            "N": [str(n) for n in counts],
        }


def local_factors(e: EllipticCurve, p: int) -> LocalZeta:
    """``P0 = 1 - u``, ``P1 = 1 - a_p u + p u^2``, ``P2 = 1 - p u``."""
    return LocalZeta.from_trace(p, ec_count(e, p).a_p)


def lefschetz_counts(lz: LocalZeta, m_max: int) -> list[int]:
    """``N_m = p^m + 1 - t_m`` for ``m = 1..m_max``, integer arithmetic only."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    t = frobenius_traces(lz.a_p, lz.p, m_max)
    return [lz.p ** m + 1 - tm for m, tm in enumerate(t, 1)]


# --------------------------------------------------------------------------
# Euler products


@dataclass(frozen=True)
class PartialProducts:
    bound: int
    s: str
    zeta_partial: mpmath.mpf | None
    l_partial: mpmath.mpf
    primes: tuple[int, ...]
    skipped_primes: tuple[int, ...]
    precision_bits: int
    l_running: tuple[mpmath.mpf, ...] = ()

    def render(self, value) -> str | None:
        if value is None:
            return None
        digits = int(self.precision_bits * 0.30103)
        return mpmath.nstr(value, digits, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)

    def to_record(self) -> dict:
        return {
            "bound": str(self.bound),
            "s": self.s,
            "zeta_partial": self.render(self.zeta_partial),
            "l_partial": self.render(self.l_partial),
            "skipped_primes": [str(p) for p in self.skipped_primes],
            "precision_bits": str(self.precision_bits),
            "l_running": [
                {"prime": str(p), "l_partial": self.render(v)}
                for p, v in zip(self.primes, self.l_running)
            ],
        }


def _exact_s(s) -> Fraction:
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(str(s)) if not isinstance(s, Fraction) else s


def _euler_data(e: EllipticCurve, bound: int):
    primes = primes_up_to(bound)
    good = [p for p in primes if e.is_good_prime(p)]
    skipped = tuple(p for p in primes if not e.is_good_prime(p))
    traces = [ec_count(e, p).a_p for p in good]
    return good, traces, skipped


def _check_precision(bits: int) -> None:
    if bits < 100:
        raise ValueError("precision must be at least 100 bits, got %d" % bits)


def _check_args(s: Fraction, bound: int) -> None:
    if s <= 0:
        raise ValueError("s must be positive, got %s" % s)
    if bound < 2:
        raise ValueError("prime bound must be >= 2, got %d" % bound)


def l_partial_product(e: EllipticCurve, s, prime_bound: int,
                      precision_bits: int = DEFAULT_PRECISION_BITS) -> PartialProducts:
    """``prod_{good p <= bound} P1(p^-s)^-1`` alone; never hits a pole for real ``s``."""
    _check_precision(precision_bits)
    sq = _exact_s(s)
    _check_args(sq, prime_bound)
    good, traces, skipped = _euler_data(e, prime_bound)
    with mpmath.workprec(precision_bits):
        sv = mpmath.mpf(sq.numerator) / sq.denominator
        l_acc = mpmath.mpf(1)
        running = []
        for p, a in zip(good, traces):
            u = mpmath.power(p, -sv)
            l_acc /= 1 - a * u + p * u * u
            running.append(+l_acc)
        l_acc = +l_acc
    return PartialProducts(prime_bound, str(sq), None, l_acc, tuple(good), skipped,
                           precision_bits, tuple(running))


def hasse_weil_partial(e: EllipticCurve, s, prime_bound: int,
                       precision_bits: int = DEFAULT_PRECISION_BITS) -> PartialProducts:
    """Truncated Euler products at a real ``s > 0``.

    ``zeta_partial = prod Z_p(p^-s)`` and ``l_partial = prod P1(p^-s)^-1`` over
    good primes up to the bound, multiplied in increasing prime order at
    ``precision_bits`` of working precision (at least 100). Bad primes are
    skipped and listed, never replaced by unit factors.

    ``s = 1`` is a pole of every ``Z_p`` (``1 - p u`` vanishes at ``u = 1/p``)
    and raises :class:`PoleError`.
    """
    _check_precision(precision_bits)
    sq = _exact_s(s)
    _check_args(sq, prime_bound)
    good, traces, skipped = _euler_data(e, prime_bound)
    if good and sq == 1:
        raise PoleError(
            "Z_p(p^-s) has a pole at s = 1 (1 - p^(1-s) = 0) for every good p, first p=%d" % good[0]
        )
    with mpmath.workprec(precision_bits):
        sv = mpmath.mpf(sq.numerator) / sq.denominator
        z_acc = mpmath.mpf(1)
        l_acc = mpmath.mpf(1)
        running = []
        for p, a in zip(good, traces):
            u = mpmath.power(p, -sv)
            p1 = 1 - a * u + p * u * u
            z_acc *= p1 / ((1 - u) * (1 - p * u))
            l_acc /= p1
            running.append(+l_acc)
        z_acc, l_acc = +z_acc, +l_acc
    return PartialProducts(prime_bound, str(sq), z_acc, l_acc, tuple(good), skipped,
                           precision_bits, tuple(running))
