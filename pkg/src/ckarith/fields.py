"""Prime fields and their extensions, sized for naive enumeration.

Elements of ``F_{p^m}`` are coefficient tuples of length ``m`` over ``F_p``
(ascending powers of the generator ``t``), reduced modulo a monic
irreducible polynomial. The prime field is the ``m = 1`` case with modulus
``t``, so a single code path serves both.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "DEFAULT_FIELD_BUDGET",
    "is_prime",
    "primes_up_to",
    "PrimeField",
    "ExtensionField",
    "FieldElement",
    "make_extension",
    "is_irreducible",
    "enumerate_field",
    "parse_field",
]

DEFAULT_FIELD_BUDGET = 2 ** 20

# deterministic Miller-Rabin witnesses, valid for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, then Miller-Rabin)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < 43 * 43:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, f in enumerate(sieve) if f]


# --------------------------------------------------------------------------
# polynomials over F_p as coefficient lists (ascending, trimmed)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e: int, f: Sequence[int], p: int) -> list[int]:
    """``t^e mod f`` by square-and-multiply."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over ``F_p``.

    ``f`` of degree ``m`` is irreducible iff ``gcd(f, t^(p^k) - t) = 1`` for
    every ``k <= m // 2``.
    """
    f = _trim([x % p for x in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    h = [0, 1]
    for _ in range(m // 2):
        # h <- h^p mod f, so h = t^(p^k) after k rounds
        acc, base, e = [1], h, p
        while e:
            if e & 1:
                acc = _pmod(_pmul(acc, base, p), f, p)
            base = _pmod(_pmul(base, base, p), f, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


# --------------------------------------------------------------------------
# fields


class ExtensionField:
    """``F_p[t] / (modulus)`` with ``modulus`` monic irreducible of degree ``m``."""

    def __init__(self, p: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise ValueError("field characteristic must be prime, got %d" % p)
        mod = _trim([int(c) % p for c in modulus])
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if not is_irreducible(mod, p):
            raise ValueError("modulus %r is reducible over F_%d" % (mod, p))
        self.p = p
        self.m = len(mod) - 1
        self.modulus = tuple(mod)
        self.q = p ** self.m
        # t^m = -(c_0 + ... + c_{m-1} t^{m-1})
        self._reduce_tail = tuple((-c) % p for c in mod[:-1])

    def __repr__(self) -> str:
        return "ExtensionField(p=%d, modulus=%r)" % (self.p, list(self.modulus))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExtensionField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    @property
    def spec(self) -> str:
        return "Fp:%d" % self.p if self.m == 1 else "Fq:%d^%d" % (self.p, self.m)

    # raw operations on coordinate tuples; FieldElement wraps these

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.m

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.m - 1)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.m - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        tail = self._reduce_tail
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                base = k - m
                for i, r in enumerate(tail):
                    prod[base + i] += c * r
        return tuple(c % p for c in prod[:m])

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in %s" % self.spec)
        if self.m == 1:
            return (pow(a[0], -1, self.p),)
        # a^(q-2) = a^-1 in the multiplicative group of order q - 1
        return self.pow(a, self.q - 2)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All ``q`` elements, lowest coordinate varying fastest."""
        for coords in itertools.product(range(self.p), repeat=self.m):
            yield coords[::-1]

    def element(self, coords) -> FieldElement:
        if isinstance(coords, int):
            coords = self.from_int(coords)
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.m:
            raise ValueError("expected %d coordinates, got %d" % (self.m, len(coords)))
        return FieldElement(self, coords)

    def generator(self) -> FieldElement:
        """The class of ``t``."""
        if self.m == 1:
            return self.element((-self.modulus[0]) % self.p)
        return self.element((0, 1) + (0,) * (self.m - 2))


class PrimeField(ExtensionField):
    """``F_p``, the degree-one case."""

    def __init__(self, p: int):
        super().__init__(p, (0, 1))

    def __repr__(self) -> str:
        return "PrimeField(%d)" % self.p


class FieldElement:
    """A value in a fixed :class:`ExtensionField`; supports ``+ - * / **``."""

    __slots__ = ("field", "coords")

    def __init__(self, field: ExtensionField, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements from different fields: %s vs %s"
                                 % (self.field.spec, other.field.spec))
            return other.coords
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, coords):
        return FieldElement(self.field, coords)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.coords, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.coords, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.coords))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.coords, b))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.coords))

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.coords))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.coords, self.field.inv(b)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.coords, e))

    def __eq__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.coords == b

    def __hash__(self):
        return hash((self.field, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return "%s%r" % (self.field.spec, self.coords)


@lru_cache(maxsize=None)
def make_extension(p: int, m: int) -> ExtensionField:
    """``F_{p^m}`` with the lexicographically smallest monic irreducible modulus.

    Candidates ``c_0 + c_1 t + ... + t^m`` are ordered by the integer
    ``sum c_i p^i``, so ``t^3 + t + 1`` precedes ``t^3 + t^2 + 1`` over F_2.

    >>> make_extension(3, 2).modulus
    (1, 0, 1)
    """
    if not is_prime(p):
        raise ValueError("p must be prime, got %d" % p)
    if m < 1:
        raise ValueError("extension degree must be >= 1, got %d" % m)
    if m == 1:
        return PrimeField(p)
    for high in itertools.product(range(p), repeat=m):
        low = high[::-1]
        f = list(low) + [1]
        if low[0] == 0:
            continue  # divisible by t
        if is_irreducible(f, p):
            return ExtensionField(p, f)
    raise AssertionError("no irreducible polynomial of degree %d over F_%d" % (m, p))


def enumerate_field(f: ExtensionField, budget: int = DEFAULT_FIELD_BUDGET) -> Iterator[FieldElement]:
    """Yield every element of ``f`` once, in a fixed order."""
    from .errors import BudgetExceededError

    if f.q > budget:
        raise BudgetExceededError(
            "field %s has %d elements, over the enumeration budget %d" % (f.spec, f.q, budget)
        )
    for c in f.elements():
        yield FieldElement(f, c)


_FIELD_RE = re.compile(r"^(?:Fp:(\d+)|Fq:(\d+)\^(\d+))$")


def parse_field(spec: str) -> ExtensionField:
    """``Fp:5`` or ``Fq:3^2``."""
    m = _FIELD_RE.match(spec.strip())
    if not m:
        raise ValueError("field spec must look like 'Fp:5' or 'Fq:3^2', got %r" % spec)
    if m.group(1):
        p = int(m.group(1))
        if not is_prime(p):
            raise ValueError("Fp:%d is not a prime field" % p)
        return PrimeField(p)
    p, deg = int(m.group(2)), int(m.group(3))
    if not is_prime(p):
        raise ValueError("characteristic %d in %r is not prime" % (p, spec))
    return make_extension(p, deg)
