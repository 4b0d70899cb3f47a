"""K-theory of Cuntz-Krieger algebras and block-diagonal truncation families.

``K_0(O_A) = coker(I - A^t)`` and ``K_1(O_A) = ker(I - A^t)``. Those formulas
make sense for any square integer matrix, so the K-theory functions accept
one; :func:`validate_ck` reports separately whether the matrix is a
legitimate Cuntz-Krieger matrix.

The infinite matrix attached to a curve is modelled by stacking the 2x2
Frobenius companion matrices of successive good primes along the diagonal.
That construction is a stand-in and every report says so.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple

from .fields import primes_up_to
from .groups import FgAbelianGroup, GroupSequence, cokernel
from .linalg import IntMatrix, block_diagonal, determinant, kernel_basis
from .varieties import EllipticCurve, ec_count

__all__ = [
    "CKValidation",
    "CKMatrix",
    "KTheory",
    "TruncationFamily",
    "ScanRow",
    "ScanReport",
    "validate_ck",
    "k_theory",
    "realize_point_count",
    "frobenius_companion",
    "build_family",
    "k0_sequence",
    "conjecture_scan",
    "STAND_IN_NOTE",
]

STAND_IN_NOTE = (
    "stand-in construction: block-diagonal assembly of per-prime Frobenius "
    "companion matrices ordered by prime; not the matrix A^1_inf itself"
)

NORMALIZED_DIGITS = 30


class CKValidation(NamedTuple):
    nonnegative: bool
    irreducible: bool
    is_permutation: bool


@dataclass(frozen=True)
class CKMatrix:
    matrix: IntMatrix
    validation: CKValidation

    @property
    def is_valid(self) -> bool:
        v = self.validation
        return v.nonnegative and v.irreducible


def _is_permutation(m: IntMatrix) -> bool:
    n = m.rows
    if any(x not in (0, 1) for x in m.entries):
        return False
    return all(sum(m.row(i)) == 1 for i in range(n)) and all(
        sum(m[i, j] for i in range(n)) == 1 for j in range(n)
    )


def _strongly_connected(m: IntMatrix) -> bool:
    """Positivity of the pattern of ``(I + |m|)^(n-1)``, via reachability."""
    n = m.rows
    adj = [[j for j in range(n) if m[i, j]] for i in range(n)]
    radj = [[i for i in range(n) if m[i, j]] for j in range(n)]

    def reach(graph):
        seen = {0}
        stack = [0]
        while stack:
            for w in graph[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    return reach(adj) and reach(radj)


def validate_ck(m: IntMatrix) -> CKMatrix:
    """Check the Cuntz-Krieger conditions on ``m`` without rejecting anything.

    ``irreducible`` means the directed graph of ``m`` is strongly connected
    and ``m`` is not a permutation matrix; a 1x1 matrix additionally needs a
    nonzero entry.
    """
    if not m.is_square:
        raise ValueError("Cuntz-Krieger matrix must be square, got %dx%d" % m.shape)
    if m.rows == 0:
        raise ValueError("Cuntz-Krieger matrix must be nonempty")
    nonneg = all(x >= 0 for x in m.entries)
    perm = _is_permutation(m)
    if m.rows == 1:
        irred = m[0, 0] != 0 and not perm
    else:
        irred = _strongly_connected(m) and not perm
    return CKMatrix(m, CKValidation(nonneg, irred, perm))


class KTheory(NamedTuple):
    k0: FgAbelianGroup
    k1: FgAbelianGroup


def k_theory(m: IntMatrix) -> KTheory:
    """``(K_0, K_1)`` of ``O_m`` from the cokernel and kernel of ``I - m^t``.

    >>> str(k_theory(IntMatrix([[3]])).k0)
    'Z/2'
    """
    if not m.is_square:
        raise ValueError("K-theory needs a square matrix, got %dx%d" % m.shape)
    if m.rows == 0:
        raise ValueError("K-theory needs a nonempty matrix")
    rel = m.one_minus_transpose()
    k0 = cokernel(rel)
    # the kernel is a subgroup of Z^n, hence free
    k1 = FgAbelianGroup(len(kernel_basis(rel)), ())
    return KTheory(k0, k1)


def frobenius_companion(a_p: int, p: int) -> IntMatrix:
    """Companion matrix of ``s^2 - a_p s + p``."""
    return IntMatrix([[0, -p], [1, a_p]])


def realize_point_count(curve: EllipticCurve, p: int) -> IntMatrix:
    """A matrix whose ``K_0`` has order ``|E(F_p)|``.

    ``det(I - A^t) = 1 - a_p + p`` for the Frobenius companion ``A``.
    """
    a_p = ec_count(curve, p).a_p
    return frobenius_companion(a_p, p)


@dataclass(frozen=True)
class TruncationFamily:
    """Ordered diagonal blocks ``(p, B_p)`` approximating an infinite matrix."""

    blocks: tuple[tuple[int, IntMatrix], ...] = ()
    skipped_primes: tuple[int, ...] = ()
    curve: EllipticCurve | None = None
    label: str = STAND_IN_NOTE
    point_counts: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(p), b) for p, b in self.blocks))
        ps = [p for p, _ in self.blocks]
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("family blocks must be ordered by strictly increasing prime")
        for p, b in self.blocks:
            if not b.is_square or b.rows == 0:
                raise ValueError("block at p=%d must be square and nonempty" % p)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.blocks]

    def assembled(self, m: int | None = None) -> IntMatrix:
        """Block-diagonal matrix of the first ``m`` blocks (all by default)."""
        if m is None:
            m = len(self.blocks)
        if not 0 <= m <= len(self.blocks):
            raise ValueError("truncation %d outside 0..%d" % (m, len(self.blocks)))
        return block_diagonal([b for _, b in self.blocks[:m]])


def _block_for_prime(args):
    curve, p = args
    return p, ec_count(curve, p)


def build_family(curve: EllipticCurve, prime_bound: int, workers: int = 1) -> TruncationFamily:
    """One Frobenius companion block per good prime ``p <= prime_bound``.

    Primes of bad reduction (and 2, 3) are skipped and listed. With
    ``workers > 1`` the per-prime counts run in a process pool; assembly is
    always in prime order, so the result does not depend on ``workers``.
    """
    primes = primes_up_to(prime_bound)
    good = [p for p in primes if curve.is_good_prime(p)]
    skipped = tuple(p for p in primes if not curve.is_good_prime(p))
    jobs = [(curve, p) for p in good]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_block_for_prime, jobs, chunksize=8))
    else:
        results = [_block_for_prime(j) for j in jobs]
    blocks = tuple((p, frobenius_companion(pc.a_p, p)) for p, pc in results)
    counts = tuple(pc.count for _, pc in results)
    return TruncationFamily(blocks, skipped, curve, point_counts=counts)


def k0_sequence(fam: TruncationFamily, assembled: bool = False) -> GroupSequence:
    """``K_0`` of each truncation ``m = 1..len(fam)``, indexed by ``m``.

    By default entry ``m`` is built as entry ``m - 1`` plus the ``K_0`` of the
    new block (cokernels of block-diagonal maps split). ``assembled=True``
    instead takes the cokernel of the whole assembled matrix at every step,
    which is quadratic in size and meant for cross-checking.
    """
    seq = GroupSequence()
    acc = FgAbelianGroup.trivial()
    for m, (_, block) in enumerate(fam.blocks, 1):
        if assembled:
            g = cokernel(fam.assembled(m).one_minus_transpose())
        else:
            acc = acc.direct_sum(cokernel(block.one_minus_transpose()))
            g = acc
        seq = seq.append(m, g)
    return seq


@dataclass(frozen=True)
class ScanRow:
    prime: int
    point_count: int
    raw_det: int
    normalized: Fraction
    zero_flag: bool

    def normalized_decimal(self, digits: int = NORMALIZED_DIGITS) -> str:
        return _decimal_string(self.normalized, digits)

    def to_record(self) -> dict:
        return {
            "prime": str(self.prime),
            "point_count": str(self.point_count),
            "raw_det": str(self.raw_det),
            "normalized": self.normalized_decimal(),
            "zero_flag": self.zero_flag,
        }


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[ScanRow, ...]
    note: str = STAND_IN_NOTE

    @property
    def raw_dets(self) -> list[int]:
        return [r.raw_det for r in self.rows]

    @property
    def flagged(self) -> list[int]:
        return [r.prime for r in self.rows if r.zero_flag]

    def to_records(self) -> list[dict]:
        return [r.to_record() for r in self.rows]


def _decimal_string(x: Fraction, digits: int) -> str:
    """Fixed-point rendering with exactly ``digits`` significant digits."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
        d = d.quantize(Decimal(1).scaleb(d.adjusted() - digits + 1))
    return format(d, "f")


def conjecture_scan(fam: TruncationFamily) -> ScanReport:
    """Raw and normalized determinant sequences along the truncations.

    At truncation ``m`` the raw value is ``det(I - A_m^t)``, computed as the
    product of per-block determinants, and the normalized value is the
    product of ``det(I - B_p^t) / p``. ``zero_flag`` marks truncations whose
    determinant vanishes, i.e. where ``K_0`` becomes infinite. The report is
    exploratory: it says nothing about the conjecture either way.
    """
    rows = []
    raw = 1
    norm = Fraction(1)
    for p, block in fam.blocks:
        d = determinant(block.one_minus_transpose())
        raw *= d
        norm *= Fraction(d, p)
        rows.append(ScanRow(p, d, raw, norm, raw == 0))
    return ScanReport(tuple(rows))
