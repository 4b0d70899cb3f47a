"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

from .linalg import IntMatrix, smith_normal_form

__all__ = [
    "FgAbelianGroup",
    "GroupSequence",
    "Stabilization",
    "cokernel",
    "group_order",
    "is_isomorphic",
    "limit_stabilization",
    "INFINITE",
]

INFINITE = float("inf")


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank (+) Z/d1 (+) Z/d2 (+) ...`` with ``d1 | d2 | ...`` and every ``di >= 2``.

    The representation is canonical, so two groups are isomorphic exactly
    when they compare equal. Use :meth:`from_cyclic` to build a group from an
    arbitrary list of cyclic orders.

    >>> FgAbelianGroup.from_cyclic([4, 6])
    FgAbelianGroup(free_rank=0, torsion=(2, 12))
    >>> str(FgAbelianGroup(1, (2, 4)))
    'Z (+) Z/2 (+) Z/4'
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in t):
            raise ValueError("invariant factors must be >= 2, got %r" % (t,))
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("invariant factors must form a divisibility chain: %r" % (t,))

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> FgAbelianGroup:
        """Canonicalize a direct sum of cyclic groups; order 0 means ``Z``."""
        free = 0
        finite = []
        for d in orders:
            d = abs(int(d))
            if d == 0:
                free += 1
            elif d > 1:
                finite.append(d)
        return cls(free, tuple(_invariant_factors(finite)))

    @classmethod
    def trivial(cls) -> FgAbelianGroup:
        return cls(0, ())

    @classmethod
    def parse(cls, text: str) -> FgAbelianGroup:
        """Inverse of ``str``: accepts ``0``, ``Z``, ``Z^3 (+) Z/2`` and so on."""
        s = text.strip()
        if s in ("0", ""):
            return cls.trivial()
        orders = []
        for part in s.split("(+)"):
            part = part.strip()
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                orders.extend([0] * int(m.group(1) or 1))
                continue
            m = re.fullmatch(r"Z/(\d+)", part)
            if m:
                orders.append(int(m.group(1)))
                continue
            raise ValueError("cannot parse group summand %r" % part)
        return cls.from_cyclic(orders)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        return group_order(self)

    def direct_sum(self, other: FgAbelianGroup) -> FgAbelianGroup:
        return FgAbelianGroup(
            self.free_rank + other.free_rank,
            tuple(_invariant_factors(self.torsion + other.torsion)),
        )

    __add__ = direct_sum

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def to_record(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion]}

    @classmethod
    def from_record(cls, rec: dict) -> FgAbelianGroup:
        return cls(int(rec["free_rank"]), tuple(int(d) for d in rec["torsion"]))


def _invariant_factors(orders: Sequence[int]) -> list[int]:
    # pairwise (gcd, lcm) sweep leaves a[i] | a[j] for i < j
    a = list(orders)
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(a[i], a[j])
            if g != a[i]:
                a[i], a[j] = g, a[i] // g * a[j]
    return [d for d in a if d > 1]


def cokernel(m: IntMatrix) -> FgAbelianGroup:
    """``Z^rows / m Z^cols`` in canonical form.

    A matrix with no columns is the zero map, whose cokernel is ``Z^rows``.

    >>> str(cokernel(IntMatrix([[-2]])))
    'Z/2'
    """
    if m.cols == 0 or m.rows == 0:
        return FgAbelianGroup(m.rows, ())
    d = smith_normal_form(m).diagonal
    rank = sum(1 for x in d if x)
    return FgAbelianGroup(m.rows - rank, tuple(x for x in d if x > 1))


def group_order(g: FgAbelianGroup):
    """Product of the invariant factors, or ``INFINITE`` when free rank > 0."""
    if g.free_rank:
        return INFINITE
    return prod(g.torsion)


def is_isomorphic(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    return g.free_rank == h.free_rank and g.torsion == h.torsion


@dataclass(frozen=True)
class GroupSequence:
    """Groups labelled by a strictly increasing index (the truncation size)."""

    indices: tuple[int, ...] = ()
    groups: tuple[FgAbelianGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "groups", tuple(self.groups))
        if len(self.indices) != len(self.groups):
            raise ValueError("one index per group required")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(zip(self.indices, self.groups))

    def __getitem__(self, k) -> FgAbelianGroup:
        return self.groups[k]

    def append(self, index: int, g: FgAbelianGroup) -> GroupSequence:
        return GroupSequence(self.indices + (index,), self.groups + (g,))


@dataclass(frozen=True)
class Stabilization:
    stable: bool
    limit_candidate: FgAbelianGroup | None
    window: int
    horizon: int | None = field(default=None)

    def __iter__(self):
        # allows ``stable, limit = limit_stabilization(...)``
        return iter((self.stable, self.limit_candidate))


def limit_stabilization(seq: GroupSequence, window: int = 3) -> Stabilization:
    """Decide finite-horizon stabilization of a group sequence.

    Stable means the last ``window`` entries are pairwise isomorphic. This is
    evidence about the direct limit, never a proof; ``horizon`` records the
    last index inspected.
    """
    if window < 2:
        raise ValueError("window must be >= 2, got %d" % window)
    if len(seq) == 0:
        raise ValueError("sequence must be nonempty")
    if window > len(seq):
        raise ValueError("window %d exceeds sequence length %d" % (window, len(seq)))
    tail = seq.groups[-window:]
    horizon = seq.indices[-1]
    if all(is_isomorphic(tail[0], g) for g in tail[1:]):
        return Stabilization(True, tail[0], window, horizon)
    return Stabilization(False, None, window, horizon)
