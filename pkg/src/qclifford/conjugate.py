"""Conjugate (1/q, q)-harmonic pairs.

Given a (1/q, q)-harmonic homogeneous ``U`` of degree k, build ``V`` such that
``F = U + conj(e0) V`` is (1/q, q)-monogenic:

1. ``g = d^{1/q}_{x0} U`` restricted to ``x0 = 0``;
2. ``h`` solves ``Delta^q h = g`` inside ``|x|^2 P_{k-1}`` (zero when g is);
3. ``W = D^q h``;
4. ``V = -A(D^q U) + W`` with ``A`` the 1/q-antiderivative in x0;
5. ``H = A(U) - h``, so that ``V = -D^q H`` and ``F = D(conj(e0) H)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .fischer import solve_q_poisson
from .qcore import DomainError, PreconditionError, QContext, q_int
from .qpoly import (
    CliffordPolynomial,
    antiderivative_x0,
    dirac_full,
    dirac_q,
    gamma_scale,
    join_poly_e0,
    laplace_full,
    laplace_q,
    left_e0bar,
    left_unit,
    mul_poly,
    partial_q,
    radius_sq,
    split_poly_e0,
)


class Verdict(NamedTuple):
    ok: bool
    residual: CliffordPolynomial


def check_harmonic_full(p: CliffordPolynomial) -> Verdict:
    """(1/q, q)-harmonicity; the residual is the full Laplacian of ``p``."""
    res = laplace_full(p)
    return Verdict(res.is_zero, res)


def monogenic_system(f: CliffordPolynomial) -> tuple[CliffordPolynomial, CliffordPolynomial]:
    """Left sides of the first-order system for ``F = U + conj(e0) V``.

    Returns ``(d^{1/q}_{x0} U + D^q V, D^q U + d^{1/q}_{x0} V)``.
    """
    u, v = split_poly_e0(f)
    first = partial_q(0, u, "1/q") + dirac_q(v)
    second = dirac_q(u) + partial_q(0, v, "1/q")
    return first, second


def check_monogenic_full(f: CliffordPolynomial) -> Verdict:
    """(1/q, q)-monogenicity, checked both directly and through the split system."""
    res = dirac_full(f)
    first, second = monogenic_system(f)
    system_ok = first.is_zero and second.is_zero
    if system_ok != res.is_zero:
        raise AssertionError("Dirac operator and split system disagree")
    return Verdict(res.is_zero, res)


@dataclass(frozen=True)
class ConjugateResult:
    """Everything produced by :func:`construct_conjugate` for one input."""

    U: CliffordPolynomial
    V: CliffordPolynomial
    W: CliffordPolynomial
    h_poisson: CliffordPolynomial
    H_potential: CliffordPolynomial
    F: CliffordPolynomial
    g: CliffordPolynomial
    degree: int

    def checks(self) -> dict[str, bool]:
        """Every guarantee of the construction, evaluated exactly."""
        first, second = monogenic_system(self.F)
        u_back, v_back = split_poly_e0(self.F)
        return {
            "F_monogenic": dirac_full(self.F).is_zero,
            "system_1": first.is_zero,
            "system_2": second.is_zero,
            "W_solves": (dirac_q(self.W) + self.g).is_zero,
            "poisson_solved": (laplace_q(self.h_poisson) - self.g).is_zero,
            "V_is_minus_DH": (self.V + dirac_q(self.H_potential)).is_zero,
            "H_harmonic": laplace_full(self.H_potential).is_zero,
            "e0bar_H_harmonic": laplace_full(left_e0bar(self.H_potential)).is_zero,
            "F_is_D_e0bar_H": (dirac_full(left_e0bar(self.H_potential)) - self.F).is_zero,
            "U_harmonic": laplace_full(self.U).is_zero,
            "V_harmonic": laplace_full(self.V).is_zero,
            "degrees": (
                self.V.is_homogeneous(self.degree)
                and self.W.is_homogeneous(self.degree)
                and self.W.is_xvec_only()
                and self.H_potential.is_homogeneous(self.degree + 1)
            ),
            "split_recovers": (
                not self.U.is_e0_free() or (u_back == self.U and v_back == self.V)
            ),
        }


def _require_input(u: CliffordPolynomial) -> int:
    if u.ctx.q <= 1:
        raise DomainError(f"the conjugate construction needs q > 1, got q={u.ctx.q}")
    if u.is_zero:
        return 0
    k = u.homogeneous_degree()
    if k is None:
        raise PreconditionError("U is not homogeneous")
    if not laplace_full(u).is_zero:
        raise PreconditionError("U is not (1/q, q)-harmonic")
    return k


def construct_conjugate(
    u: CliffordPolynomial,
    poisson_solution: CliffordPolynomial | None = None,
) -> ConjugateResult:
    """Conjugate ``V`` and potential ``H`` for a (1/q, q)-harmonic ``U``.

    ``poisson_solution`` replaces the default ``|x|^2 P_{k-1}`` representative
    by any other h with ``Delta^q h = g`` (checked), e.g. a hand-made one.
    """
    k = _require_input(u)
    ctx = u.ctx
    g = partial_q(0, u, "1/q").at_x0_zero()
    if poisson_solution is not None:
        h = poisson_solution
        if not h.is_xvec_only() or not h.is_homogeneous(k + 1):
            raise PreconditionError(f"Poisson solution must be x-vector-only of degree {k + 1}")
        if laplace_q(h) != g:
            raise PreconditionError("supplied h does not solve the q-Poisson equation")
    elif g.is_zero:
        h = CliffordPolynomial.zero(ctx)
    else:
        h = solve_q_poisson(g, k - 1)
    w = dirac_q(h)
    v = -antiderivative_x0(dirac_q(u)) + w
    big_h = antiderivative_x0(u) - h
    f = join_poly_e0(u, v)
    return ConjugateResult(U=u, V=v, W=w, h_poisson=h, H_potential=big_h, F=f, g=g, degree=k)


@dataclass(frozen=True)
class PotentialReport:
    """Whether ``P = conj(e0) (e0 d_{x0} - D^q) H`` holds for the constructed H.

    ``q_*`` fields use the q-derivative in x0, ``qinv_*`` the 1/q-derivative.
    ``equals_F`` records that the right side reproduces ``U + conj(e0) V``.
    """

    H: CliffordPolynomial
    q_rhs: CliffordPolynomial
    qinv_rhs: CliffordPolynomial
    q_holds: bool
    qinv_holds: bool
    equals_F: bool

    @property
    def validating(self) -> tuple[str, ...]:
        out = []
        if self.q_holds:
            out.append("d^q")
        if self.qinv_holds:
            out.append("d^{1/q}")
        return tuple(out)


def _potential_rhs(h: CliffordPolynomial, deformation: str) -> CliffordPolynomial:
    inner = left_unit(0, partial_q(0, h, deformation)) - dirac_q(h)
    return left_e0bar(inner)


def verify_potential_representation(p: CliffordPolynomial) -> PotentialReport:
    """Report which reading of the potential representation holds for ``p``."""
    if p.is_zero:
        zero = CliffordPolynomial.zero(p.ctx)
        return PotentialReport(zero, zero, zero, True, True, True)
    res = construct_conjugate(p)
    with_q = _potential_rhs(res.H_potential, "q")
    with_qinv = _potential_rhs(res.H_potential, "1/q")
    return PotentialReport(
        H=res.H_potential,
        q_rhs=with_q,
        qinv_rhs=with_qinv,
        q_holds=with_q == p,
        qinv_holds=with_qinv == p,
        equals_F=with_qinv == res.F,
    )


@dataclass(frozen=True)
class RealConjugateResult:
    """Conjugate of a real-valued harmonic plus the three-piece form of ``V``.

    ``V = v1 + sum_i x_i e_i gamma_i(w1) + |x|^2 w2`` with ``v1 = -A(D^q u)``,
    ``w1 = -[2]_q h_low`` and ``w2 = -D^q h_low``, where ``h = -|x|^2 h_low``.
    """

    result: ConjugateResult
    v1: CliffordPolynomial
    w1: CliffordPolynomial
    w2: CliffordPolynomial
    h_low: CliffordPolynomial
    reassembled: CliffordPolynomial = field(repr=False)


def _divide_by_radius(h: CliffordPolynomial) -> CliffordPolynomial:
    """Exact quotient ``h / |x|^2`` for h in ``|x|^2 P``; raises if not divisible."""
    ctx = h.ctx
    rad = radius_sq(ctx)
    quotient = CliffordPolynomial.zero(ctx)
    rest = h
    # long division on the lexicographically leading term, led by x1^2
    while not rest.is_zero:
        (alpha, mask), c = max(rest.items(), key=lambda kv: kv[0][0])
        if alpha[1] < 2:
            raise PreconditionError("polynomial is not divisible by |x|^2")
        beta = (alpha[0], alpha[1] - 2) + alpha[2:]
        step = CliffordPolynomial(ctx, {(beta, mask): c})
        quotient = quotient + step
        rest = rest - mul_poly(rad, step)
    return quotient


def conjugate_real(u: CliffordPolynomial) -> RealConjugateResult:
    """Conjugate of a real-valued harmonic, with its three-piece decomposition."""
    if not u.is_real():
        raise DomainError("conjugate_real needs a real-valued polynomial")
    res = construct_conjugate(u)
    ctx = u.ctx
    if not (res.h_poisson.is_real() and res.H_potential.is_real()):
        raise AssertionError("Poisson solution or potential of a real input is not real")
    h_low = -_divide_by_radius(res.h_poisson)
    v1 = -antiderivative_x0(dirac_q(u))
    w1 = h_low * (-q_int(2, ctx.q))
    w2 = -dirac_q(h_low)
    middle = CliffordPolynomial.zero(ctx)
    for i in range(1, ctx.nvars):
        middle = middle + mul_poly(_xi_ei(ctx, i), gamma_scale(i, w1))
    reassembled = v1 + middle + mul_poly(radius_sq(ctx), w2)
    if reassembled != res.V:
        raise AssertionError("three-piece form does not reassemble V")
    return RealConjugateResult(res, v1, w1, w2, h_low, reassembled)


def _xi_ei(ctx: QContext, i: int) -> CliffordPolynomial:
    alpha = tuple(1 if j == i else 0 for j in range(ctx.nvars))
    return CliffordPolynomial(ctx, {(alpha, 1 << i): 1})
