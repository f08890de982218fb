"""Exact linear algebra over Z, Q and Z/2."""

from .abelian import (
    AbelianInvariants,
    FiniteAbelianGroup,
    cokernel_invariants,
    cokernel_presentation,
    Presentation,
    invariants_from_orders,
    present_subquotient,
)
from .integer import (
    SmithDecomposition,
    hermite_column_basis,
    integer_kernel,
    invariant_factors,
    smith_normal_form,
    solve_integer,
    solve_mixed,
)
from .matrix import Matrix, det
from .rational import inverse, nullspace, rank, signature_of_symmetric, solve_rational

IntMatrix = Matrix
RatMatrix = Matrix

__all__ = [
    "AbelianInvariants",
    "Presentation",
    "FiniteAbelianGroup",
    "IntMatrix",
    "Matrix",
    "RatMatrix",
    "SmithDecomposition",
    "cokernel_invariants",
    "cokernel_presentation",
    "det",
    "hermite_column_basis",
    "integer_kernel",
    "invariant_factors",
    "invariants_from_orders",
    "inverse",
    "nullspace",
    "present_subquotient",
    "rank",
    "signature_of_symmetric",
    "smith_normal_form",
    "solve_integer",
    "solve_mixed",
    "solve_rational",
]
