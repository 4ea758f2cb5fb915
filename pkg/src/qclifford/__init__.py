"""Exact q-deformed Clifford analysis on polynomials.

Rational arithmetic throughout: Clifford algebra Cl(0, n+1), q-partial
derivatives, q-Dirac and q-Laplace operators, Fischer decompositions and the
construction of conjugate (1/q, q)-harmonic pairs.
"""

from __future__ import annotations

from .clifford import (
    CliffordElement,
    blade_mul,
    format_blade,
    join_e0,
    mul,
    norm0,
    parse_blade,
    scalar_part,
    split_e0,
)
from .conjugate import (
    ConjugateResult,
    RealConjugateResult,
    Verdict,
    check_harmonic_full,
    check_monogenic_full,
    conjugate_real,
    construct_conjugate,
    monogenic_system,
    verify_potential_representation,
)
from .fischer import (
    check_adjointness,
    decompose_harmonic,
    decompose_monogenic,
    fischer_ip,
    fischer_ip_differential,
    harmonic_series,
    kernel_basis,
    monogenic_series,
    solve_q_poisson,
)
from .parsing import PolyParseError, format_poly, parse_poly, poly_from_json, poly_to_json
from .qcomplex import ComplexQPolynomial, ck_extend, dbar_q, q_binomial_z, zq_split
from .qcore import (
    DomainError,
    PreconditionError,
    QCliffordError,
    QContext,
    Rational,
    SingularSystemError,
    multi_indices,
    q_binomial_coeff,
    q_factorial,
    q_int,
    q_multiindex_factorial,
)
from .qpoly import (
    CliffordPolynomial,
    antiderivative_x0,
    conjugate_poly,
    dirac_full,
    dirac_q,
    gamma_scale,
    join_poly_e0,
    laplace_full,
    laplace_q,
    left_e0bar,
    mul_poly,
    partial_q,
    radius_sq,
    split_poly_e0,
    vector_x,
)

# ``qclifford.conjugate`` is the submodule; element conjugation lives in
# ``qclifford.clifford.conjugate``.

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
