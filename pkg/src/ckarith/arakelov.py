"""Compactified divisors and the matrix presentation of ``Pic_c``.

Divisors are formal: a finite part over opaque component labels plus one
rational coefficient per infinite place. The values ``v_inf(phi)`` are taken
as input data.

``pic_presentation`` computes ``Z^n / (I - F^t) Z^n`` for a truncated
Frobenius matrix ``F`` through Hermite reductions only. ``k_theory`` reaches
the same group by Smith reduction, so :func:`verify_theorem_1_1` compares
two independent computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .cuntz import k_theory
from .groups import FgAbelianGroup, is_isomorphic
from .linalg import IntMatrix, hermite_normal_form

__all__ = [
    "CompactifiedDivisor",
    "PrincipalData",
    "divisor_add",
    "principal_divisor",
    "pic_presentation",
    "verify_theorem_1_1",
    "compare_presentations",
    "TheoremCheck",
]


def _prune(finite: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(sorted((str(k), int(v)) for k, v in finite.items() if v))


@dataclass(frozen=True)
class CompactifiedDivisor:
    """``D = sum k_i C_i + sum_i lambda_i X_inf^(i)``.

    ``finite`` is stored as sorted ``(label, coefficient)`` pairs with no zero
    coefficients; ``infinite`` holds one ``Fraction`` per embedding.
    """

    finite: tuple[tuple[str, int], ...] = ()
    infinite: tuple[Fraction, ...] = ()

    def __post_init__(self):
        fin = self.finite
        if isinstance(fin, Mapping):
            fin = fin.items()
        object.__setattr__(self, "finite", _prune(dict(fin)))
        object.__setattr__(self, "infinite", tuple(Fraction(x) for x in self.infinite))

    @classmethod
    def zero(cls, m: int) -> CompactifiedDivisor:
        return cls((), (Fraction(0),) * m)

    @property
    def m(self) -> int:
        return len(self.infinite)

    @property
    def finite_part(self) -> dict[str, int]:
        return dict(self.finite)

    def __add__(self, other: CompactifiedDivisor) -> CompactifiedDivisor:
        return divisor_add(self, other)

    def __neg__(self) -> CompactifiedDivisor:
        return CompactifiedDivisor(
            tuple((k, -v) for k, v in self.finite), tuple(-x for x in self.infinite)
        )

    def __sub__(self, other: CompactifiedDivisor) -> CompactifiedDivisor:
        return self + (-other)

    def to_json(self) -> str:
        return json.dumps(
            {"finite": dict(self.finite), "infinite": [str(x) for x in self.infinite]},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> CompactifiedDivisor:
        rec = json.loads(text)
        return cls(
            tuple((k, int(v)) for k, v in rec.get("finite", {}).items()),
            tuple(Fraction(x) for x in rec.get("infinite", [])),
        )


def divisor_add(a: CompactifiedDivisor, b: CompactifiedDivisor) -> CompactifiedDivisor:
    if a.m != b.m:
        raise ValueError(
            "divisors live over different numbers of infinite places: %d vs %d" % (a.m, b.m)
        )
    acc = dict(a.finite)
    for k, v in b.finite:
        acc[k] = acc.get(k, 0) + v
    return CompactifiedDivisor(
        tuple(acc.items()), tuple(x + y for x, y in zip(a.infinite, b.infinite))
    )


@dataclass(frozen=True)
class PrincipalData:
    """The divisor ``(phi)`` and externally supplied values ``v_inf(phi)``."""

    finite_divisor: Mapping[str, int]
    v_infinity: Sequence[Fraction]


def principal_divisor(pd: PrincipalData) -> CompactifiedDivisor:
    """``(phi)_c = (phi) + sum_i v_inf(phi) X_inf^(i)``."""
    return CompactifiedDivisor(
        tuple(dict(pd.finite_divisor).items()), tuple(Fraction(x) for x in pd.v_infinity)
    )


# --------------------------------------------------------------------------
# Pic_c presentation


def _hermite_diagonalize(m: IntMatrix) -> list[int]:
    """Alternate row and column Hermite reduction until the matrix is diagonal.

    Returns the nonzero diagonal entries. Each round is a unimodular change
    of basis on one side, so the cokernel's isomorphism type never changes,
    and the process stops because the leading entries keep shrinking.
    """
    a = m
    while True:
        h, _ = hermite_normal_form(a)
        rows = [r for r in h.tolist() if any(r)]
        if not rows:
            return []
        h = IntMatrix(rows, cols=a.cols)
        if h.is_diagonal():
            return [x for x in h.diagonal() if x]
        a = h.T


def pic_presentation(fr1_truncation: IntMatrix) -> FgAbelianGroup:
    """Truncated ``Pic_c`` presentation ``Z^n / (I - F^t) Z^n``.

    >>> str(pic_presentation(IntMatrix([[0, -5], [1, 0]])))
    'Z/6'
    """
    m = fr1_truncation
    if not m.is_square or m.rows == 0:
        raise ValueError("Frobenius truncation must be square and nonempty, got %dx%d" % m.shape)
    rel = m.one_minus_transpose()
    # image of rel = row lattice of rel^t
    diag = _hermite_diagonalize(rel.T)
    n = m.rows
    return FgAbelianGroup.from_cyclic(diag + [0] * (n - len(diag)))


@dataclass(frozen=True)
class TheoremCheck:
    isomorphic: bool
    pic: FgAbelianGroup
    k0: FgAbelianGroup


def compare_presentations(m: IntMatrix) -> TheoremCheck:
    """Compute ``K_0(O_m)`` and the truncated ``Pic_c`` presentation side by side.

    Both are ``coker(I - m^t)``; agreement is a check that two independent
    reductions find the same group, and a mismatch is a bug.
    """
    if not m.is_square:
        raise ValueError("matrix must be square, got %dx%d" % m.shape)
    pic = pic_presentation(m)
    k0 = k_theory(m).k0
    return TheoremCheck(is_isomorphic(pic, k0), pic, k0)


def verify_theorem_1_1(m: IntMatrix) -> bool:
    """True iff the Hermite route and the Smith route give isomorphic groups."""
    return compare_presentations(m).isomorphic
