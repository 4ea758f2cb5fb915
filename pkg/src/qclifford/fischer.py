"""Fischer inner product, Fischer decompositions and the q-Poisson solver.

Everything here works on homogeneous polynomials in the x-vector only
(no x0).  Decompositions and the Poisson solve are exact linear solves on
the monomial basis; the operators involved commute with right
multiplication by a constant Clifford number, so Clifford-valued inputs are
split into real components ``P = sum_B P_B e_B``, each component is solved on
its own and the pieces are multiplied back by ``e_B`` from the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Literal

from . import linalg
from .clifford import CliffordElement, blade_mul, conjugate, grade
from .qcore import (
    DomainError,
    MultiIndex,
    QContext,
    SingularSystemError,
    multi_indices,
    q_multiindex_factorial,
)
from .qpoly import (
    CliffordPolynomial,
    dirac_full,
    dirac_q,
    laplace_full,
    laplace_q,
    mul_poly,
    partial_q,
    radius_sq,
    vector_x,
)

Operator = Literal["laplace_q", "laplace_full", "dirac_q", "dirac_full"]
ValueSpace = Literal["scalar", "full"]

OPERATORS: dict[str, Callable[[CliffordPolynomial], CliffordPolynomial]] = {
    "laplace_q": laplace_q,
    "laplace_full": laplace_full,
    "dirac_q": dirac_q,
    "dirac_full": dirac_full,
}


@dataclass(frozen=True)
class FischerBasis:
    """Monomials ``x^alpha`` with ``alpha_0 = 0`` and ``|alpha| = k``.

    Ordered graded-lexicographically, largest first (``x1^k`` leads).  The
    size is ``C(k+n-1, n-1)``.
    """

    degree: int
    n: int
    indices: tuple[MultiIndex, ...]

    def position(self, alpha: MultiIndex) -> int:
        return _positions(self.n, self.degree)[alpha]

    def __len__(self) -> int:
        return len(self.indices)


@lru_cache(maxsize=None)
def fischer_basis(n: int, k: int) -> FischerBasis:
    idx = tuple(multi_indices(n + 1, k, first=1)) if k >= 0 else ()
    return FischerBasis(k, n, idx)


@lru_cache(maxsize=None)
def _positions(n: int, k: int) -> dict[MultiIndex, int]:
    return {a: j for j, a in enumerate(fischer_basis(n, k).indices)}


def _require_xvec_homogeneous(p: CliffordPolynomial, k: int | None = None, what: str = "input") -> int | None:
    """Check the x-vector-only / homogeneous preconditions; return the degree.

    The zero polynomial is homogeneous of every degree; ``None`` is returned
    for it when ``k`` is not given.
    """
    if not p.is_xvec_only():
        raise DomainError(f"{what} must not depend on x0")
    if p.is_zero:
        return k
    d = p.homogeneous_degree()
    if d is None:
        raise DomainError(f"{what} is not homogeneous")
    if k is not None and d != k:
        raise DomainError(f"{what} has degree {d}, expected {k}")
    return d


# -- inner product -------------------------------------------------------------


def fischer_ip(r1: CliffordPolynomial, r2: CliffordPolynomial, check: bool = __debug__) -> Fraction:
    """``<R1, R2>_{k,q} = sum_alpha [alpha]_q! (conj(a1_alpha) a2_alpha)_0``.

    With ``check`` on (the default unless Python runs with ``-O``), the value
    is recomputed through :func:`fischer_ip_differential` and the two routes
    must agree.
    """
    r1._check(r2)
    d1 = _require_xvec_homogeneous(r1, what="R1")
    d2 = _require_xvec_homogeneous(r2, what="R2")
    if d1 is not None and d2 is not None and d1 != d2:
        raise DomainError(f"degree mismatch: {d1} vs {d2}")
    q = r1.ctx.q
    t1, t2 = r1.terms, r2.terms
    total = Fraction(0)
    for alpha, a1 in t1.items():
        a2 = t2.get(alpha)
        if a2 is None:
            continue
        total += q_multiindex_factorial(alpha, q) * (conjugate(a1) * a2).scalar_part()
    if check:
        other = fischer_ip_differential(r1, r2)
        assert other == total, f"Fischer inner product routes disagree: {total} != {other}"
    return total


def fischer_ip_differential(r1: CliffordPolynomial, r2: CliffordPolynomial) -> Fraction:
    """Scalar part of ``conj(R1)(D^q) R2``: substitute ``x_j -> d^q_{x_j}`` in conj(R1)."""
    acc = CliffordElement()
    origin = (0,) * r1.ctx.nvars
    for alpha, a1 in r1.terms.items():
        image = r2
        for i, e in enumerate(alpha):
            for _ in range(e):
                image = partial_q(i, image, "q")
        const = image.terms.get(origin)
        if const is not None:
            acc = acc + conjugate(a1) * const
    return acc.scalar_part()


@dataclass(frozen=True)
class AdjointnessReport:
    """Both sides of ``<x Q, P> = -<Q, D^q P>`` and ``<-|x|^2 Q, R> = <Q, Delta^q R>``.

    The second identity only holds with ``+|x|^2`` on the left; see
    :attr:`radius_adjoint_holds`.
    """

    dirac_lhs: Fraction
    dirac_rhs: Fraction
    laplace_lhs: Fraction
    laplace_rhs: Fraction

    @property
    def dirac_holds(self) -> bool:
        return self.dirac_lhs == self.dirac_rhs

    @property
    def laplace_holds(self) -> bool:
        return self.laplace_lhs == self.laplace_rhs

    @property
    def radius_adjoint_holds(self) -> bool:
        """``<|x|^2 Q, R> = <Q, Delta^q R>``, i.e. the Laplace identity with the sign of its left side flipped."""
        return -self.laplace_lhs == self.laplace_rhs

    @property
    def holds(self) -> bool:
        return self.dirac_holds and self.laplace_holds


def check_adjointness(q_poly: CliffordPolynomial, p: CliffordPolynomial, r: CliffordPolynomial) -> AdjointnessReport:
    """Evaluate both sides of the multiplication/derivative adjointness identities.

    ``q_poly``, ``p``, ``r`` must be x-vector-only of degrees k, k+1, k+2.
    """
    ctx = q_poly.ctx
    k = _require_xvec_homogeneous(q_poly, what="Q")
    kp = _require_xvec_homogeneous(p, None if k is None else k + 1, what="P")
    if k is None and kp is not None:
        k = kp - 1
    _require_xvec_homogeneous(r, None if k is None else k + 2, what="R")
    x = vector_x(ctx)
    rad = radius_sq(ctx)
    return AdjointnessReport(
        dirac_lhs=fischer_ip(mul_poly(x, q_poly), p),
        dirac_rhs=-fischer_ip(q_poly, dirac_q(p)),
        laplace_lhs=fischer_ip(-mul_poly(rad, q_poly), r),
        laplace_rhs=fischer_ip(q_poly, laplace_q(r)),
    )


# -- solvers -------------------------------------------------------------------


def _vector(p: CliffordPolynomial, positions: dict, blades_index: dict | None = None) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    if blades_index is None:
        for (alpha, _), c in p.items():
            out[positions[alpha]] = c
        return out
    nb = len(blades_index)
    for (alpha, m), c in p.items():
        out[positions[alpha] * nb + blades_index[m]] = c
    return out


@lru_cache(maxsize=None)
def _radial_laplace_inverse(ctx: QContext, k: int) -> tuple:
    """Inverse of ``Q -> Delta^q(|x|^2 Q)`` on real degree-k polynomials.

    The map is injective because q-harmonics and ``|x|^2 P_k`` intersect
    trivially, hence invertible.
    """
    basis = fischer_basis(ctx.n, k)
    pos = _positions(ctx.n, k)
    rad = radius_sq(ctx)
    cols = []
    for alpha in basis.indices:
        image = laplace_q(mul_poly(rad, CliffordPolynomial.monomial(ctx, alpha)))
        cols.append(_vector(image, pos))
    try:
        return tuple(linalg.inverse(cols, len(basis)))
    except SingularSystemError as exc:
        raise SingularSystemError(f"radial Laplace map singular for q={ctx.q}, n={ctx.n}, k={k}") from exc


def _odd_blades(n: int) -> list[int]:
    """Odd-grade blades of Cl(0, n) (generators e1..en), ascending mask."""
    return [m for m in range(0, 1 << (n + 1), 2) if grade(m) % 2 == 1]


@lru_cache(maxsize=None)
def _vector_dirac_inverse(ctx: QContext, k: int) -> tuple:
    """Inverse of ``Q -> D^q(x Q)`` on degree-k polynomials with odd Cl(0,n) values.

    Real inputs only ever need odd-valued Q since both D^q and x are odd.
    """
    basis = fischer_basis(ctx.n, k)
    pos = _positions(ctx.n, k)
    blades = _odd_blades(ctx.n)
    bidx = {m: j for j, m in enumerate(blades)}
    x = vector_x(ctx)
    cols = []
    for alpha in basis.indices:
        for m in blades:
            image = dirac_q(mul_poly(x, CliffordPolynomial.monomial(ctx, alpha, 1, m)))
            cols.append(_vector(image, pos, bidx))
    try:
        return tuple(linalg.inverse(cols, len(cols))), tuple(blades)
    except SingularSystemError as exc:
        raise SingularSystemError(f"vector Dirac map singular for q={ctx.q}, n={ctx.n}, k={k}") from exc


def _poly_from_vector(ctx: QContext, vec: dict[int, Fraction], k: int, blades: tuple | None = None) -> CliffordPolynomial:
    idx = fischer_basis(ctx.n, k).indices
    if blades is None:
        return CliffordPolynomial(ctx, {(idx[j], 0): c for j, c in vec.items()})
    nb = len(blades)
    return CliffordPolynomial(ctx, {(idx[j // nb], blades[j % nb]): c for j, c in vec.items()})


def _right_blade(p: CliffordPolynomial, mask: int) -> CliffordPolynomial:
    if mask == 0:
        return p
    out = {}
    for (alpha, m), c in p.items():
        sign, r = blade_mul(m, mask)
        out[(alpha, r)] = sign * c
    return CliffordPolynomial(p.ctx, out)


def _radial_solve(g: CliffordPolynomial, k: int) -> CliffordPolynomial:
    """Q of degree k with ``Delta^q(|x|^2 Q) = g``, blade by blade."""
    ctx = g.ctx
    inv = _radial_laplace_inverse(ctx, k)
    pos = _positions(ctx.n, k)
    result = CliffordPolynomial.zero(ctx)
    for mask, comp in g.components().items():
        sol = linalg.apply_columns(inv, _vector(comp, pos))
        result = result + _right_blade(_poly_from_vector(ctx, sol, k), mask)
    return result


def decompose_harmonic(p: CliffordPolynomial) -> tuple[CliffordPolynomial, CliffordPolynomial]:
    """``P = H + |x|^2 Q`` with ``Delta^q H = 0``; returns ``(H, Q)``.

    The split is unique and Fischer-orthogonal.  Below degree 2 the whole of
    P is harmonic.
    """
    k = _require_xvec_homogeneous(p)
    ctx = p.ctx
    if k is None or k < 2:
        return p, CliffordPolynomial.zero(ctx)
    q_part = _radial_solve(laplace_q(p), k - 2)
    h = p - mul_poly(radius_sq(ctx), q_part)
    if __debug__:
        assert laplace_q(h).is_zero
    return h, q_part


def decompose_monogenic(p: CliffordPolynomial) -> tuple[CliffordPolynomial, CliffordPolynomial]:
    """``P = M + x Q`` with ``D^q M = 0``; returns ``(M, Q)``."""
    k = _require_xvec_homogeneous(p)
    ctx = p.ctx
    if k is None or k == 0:
        return p, CliffordPolynomial.zero(ctx)
    inv, blades = _vector_dirac_inverse(ctx, k - 1)
    pos = _positions(ctx.n, k - 1)
    bidx = {m: j for j, m in enumerate(blades)}
    q_part = CliffordPolynomial.zero(ctx)
    for mask, comp in p.components().items():
        rhs = _vector(dirac_q(comp), pos, bidx)
        sol = linalg.apply_columns(inv, rhs)
        q_part = q_part + _right_blade(_poly_from_vector(ctx, sol, k - 1, blades), mask)
    m_part = p - mul_poly(vector_x(ctx), q_part)
    if __debug__:
        assert dirac_q(m_part).is_zero
    return m_part, q_part


def monogenic_series(p: CliffordPolynomial) -> list[CliffordPolynomial]:
    """``[M_k, M_{k-1}, ..., M_0]`` with ``P = sum_s x^s M_{k-s}``, each M monogenic."""
    k = _require_xvec_homogeneous(p)
    if k is None:
        return [p]
    parts = []
    rest = p
    for _ in range(k + 1):
        m, rest = decompose_monogenic(rest)
        parts.append(m)
    return parts


def harmonic_series(p: CliffordPolynomial) -> list[CliffordPolynomial]:
    """``[H_k, H_{k-2}, ...]`` with ``P = sum_s |x|^(2s) H_{k-2s}``, each H q-harmonic."""
    k = _require_xvec_homogeneous(p)
    if k is None:
        return [p]
    parts = []
    rest = p
    for _ in range(k // 2 + 1):
        h, rest = decompose_harmonic(rest)
        parts.append(h)
    return parts


def solve_q_poisson(g: CliffordPolynomial, degree: int | None = None) -> CliffordPolynomial:
    """Solve ``Delta^q h = g`` for h in ``|x|^2 P_{k-1}`` where ``k - 1 = deg g``.

    Inside that subspace the solution is unique.  ``degree`` (of g) only
    matters for a zero ``g``, whose solution is zero anyway.
    """
    d = _require_xvec_homogeneous(g, degree, what="g")
    if d is None or g.is_zero:
        return CliffordPolynomial.zero(g.ctx)
    return mul_poly(radius_sq(g.ctx), _radial_solve(g, d))


# -- kernels -----------------------------------------------------------------


def value_blades(ctx: QContext, operator: Operator, value_space: ValueSpace) -> list[int]:
    if value_space == "scalar":
        return [0]
    if value_space != "full":
        raise DomainError(f"value space must be 'scalar' or 'full', got {value_space!r}")
    if operator in ("laplace_full", "dirac_full"):
        return list(range(1 << ctx.nvars))
    return list(range(0, 1 << ctx.nvars, 2))


def kernel_basis(
    ctx: QContext,
    operator: Operator,
    k: int,
    value_space: ValueSpace = "scalar",
) -> list[CliffordPolynomial]:
    """Exact basis of the operator's kernel on homogeneous degree-k polynomials.

    ``laplace_q``/``dirac_q`` act on x-vector-only polynomials with values in
    Cl(0, n); the ``*_full`` operators act on R^(n+1) with values in
    Cl(0, n+1).  ``value_space="scalar"`` restricts to real values.
    """
    if operator not in OPERATORS:
        raise DomainError(f"unknown operator {operator!r}")
    if k < 0:
        raise DomainError("degree must be non-negative")
    op = OPERATORS[operator]
    first = 0 if operator.endswith("_full") else 1
    monos = multi_indices(ctx.nvars, k, first=first)
    blades = value_blades(ctx, operator, value_space)
    columns = [(alpha, m) for alpha in monos for m in blades]
    row_index: dict = {}
    rows: list[dict] = []
    for j, (alpha, m) in enumerate(columns):
        image = op(CliffordPolynomial.monomial(ctx, alpha, 1, m))
        for key, c in image.items():
            i = row_index.get(key)
            if i is None:
                i = row_index[key] = len(rows)
                rows.append({})
            rows[i][j] = c
    basis = []
    for vec in linalg.nullspace(rows, len(columns)):
        basis.append(CliffordPolynomial(ctx, {columns[j]: c for j, c in vec.items()}))
    return basis

