"""Exact K-theory of Cuntz-Krieger algebras, finite-field point counts and local zeta functions."""

__version__ = "0.1.0"

from .errors import (
    BadReductionError,
    BudgetExceededError,
    DomainError,
    NoSolutionError,
    PoleError,
    UnderdeterminedError,
)
from .linalg import (
    IntMatrix,
    IntPolynomial,
    SmithDecomposition,
    char_poly,
    determinant,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from .groups import FgAbelianGroup, GroupSequence, cokernel, group_order, is_isomorphic, limit_stabilization
from .fields import ExtensionField, FieldElement, PrimeField, enumerate_field, make_extension
from .varieties import EllipticCurve, ProjectiveVariety, count_projective, ec_count, ec_count_ext
from .cuntz import (
    TruncationFamily,
    build_family,
    conjecture_scan,
    k0_sequence,
    k_theory,
    realize_point_count,
    validate_ck,
)
from .zeta import (
    LocalZeta,
    PowerSeriesQ,
    hasse_weil_partial,
    lefschetz_counts,
    local_factors,
    rational_reconstruct,
    zeta_series,
)
from .arakelov import (
    CompactifiedDivisor,
    PrincipalData,
    divisor_add,
    pic_presentation,
    principal_divisor,
    verify_theorem_1_1,
)
