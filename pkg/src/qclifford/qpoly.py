"""Clifford-valued polynomials on R^(n+1) and the q-deformed operators acting on them.

Coordinates are x0, x1, ..., xn.  Coefficients are elements of Cl(0, n+1) and
sit to the left of the monomial; Clifford units introduced by the Dirac
operators multiply coefficients from the left.

The q-partial derivative in ``x_i`` acts on monomials by
``x_i^m -> [m]_r x_i^(m-1)`` where ``r`` is ``q`` or ``1/q``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Literal, Mapping

from .clifford import (
    E0,
    Blade,
    CliffordElement,
    blade_mul,
    conjugation_sign,
    format_blade,
    grade,
)
from .qcore import (
    DomainError,
    MultiIndex,
    QContext,
    RationalLike,
    q_int,
    to_rational,
)

Deformation = Literal["q", "1/q"]
TermKey = tuple  # (MultiIndex, Blade)


class CliffordPolynomial:
    """Sparse polynomial ``sum_alpha x^alpha c_alpha`` with Clifford coefficients.

    Stored flat as ``{(alpha, blade): rational}`` with no zero entries; use
    :attr:`terms` for the ``{alpha: CliffordElement}`` view.
    """

    __slots__ = ("ctx", "_data", "_hash")

    def __init__(self, ctx: QContext, data: Mapping[TermKey, RationalLike] | None = None):
        self.ctx = ctx
        clean: dict[TermKey, Fraction] = {}
        if data:
            nv = ctx.nvars
            for (alpha, mask), c in data.items():
                c = to_rational(c)
                if not c:
                    continue
                alpha = tuple(alpha)
                if len(alpha) != nv or min(alpha) < 0:
                    raise DomainError(f"multi-index {alpha} does not fit n={ctx.n}")
                if mask >> nv:
                    raise DomainError(f"blade {format_blade(mask)} does not fit n={ctx.n}")
                clean[(alpha, mask)] = c
        self._data = clean
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: QContext) -> "CliffordPolynomial":
        return cls(ctx)

    @classmethod
    def constant(cls, ctx: QContext, c: RationalLike | CliffordElement = 1) -> "CliffordPolynomial":
        return cls.monomial(ctx, (0,) * ctx.nvars, c)

    @classmethod
    def monomial(
        cls,
        ctx: QContext,
        alpha: Iterable[int],
        coeff: RationalLike | CliffordElement = 1,
        blade: Blade = 0,
    ) -> "CliffordPolynomial":
        alpha = tuple(alpha)
        if isinstance(coeff, CliffordElement):
            el = coeff * CliffordElement.blade(blade) if blade else coeff
            return cls(ctx, {(alpha, m): c for m, c in el.items()})
        return cls(ctx, {(alpha, blade): coeff})

    @classmethod
    def variable(cls, ctx: QContext, i: int) -> "CliffordPolynomial":
        alpha = [0] * ctx.nvars
        alpha[i] = 1
        return cls(ctx, {(tuple(alpha), 0): 1})

    @classmethod
    def from_terms(cls, ctx: QContext, terms: Mapping[MultiIndex, CliffordElement]) -> "CliffordPolynomial":
        data: dict[TermKey, Fraction] = {}
        for alpha, el in terms.items():
            for m, c in el.items():
                data[(tuple(alpha), m)] = c
        return cls(ctx, data)

    # -- views --------------------------------------------------------------

    @property
    def terms(self) -> dict[MultiIndex, CliffordElement]:
        grouped: dict[MultiIndex, dict[Blade, Fraction]] = {}
        for (alpha, m), c in self._data.items():
            grouped.setdefault(alpha, {})[m] = c
        return {a: CliffordElement(t) for a, t in grouped.items()}

    def items(self) -> Iterator[tuple[TermKey, Fraction]]:
        return iter(self._data.items())

    def coeff(self, alpha: Iterable[int], blade: Blade = 0) -> Fraction:
        return self._data.get((tuple(alpha), blade), Fraction(0))

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    @property
    def is_zero(self) -> bool:
        return not self._data

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(a) for a, _ in self._data), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or None if mixed (zero gives None too)."""
        degs = {sum(a) for a, _ in self._data}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, k: int) -> bool:
        return all(sum(a) == k for a, _ in self._data)

    def is_xvec_only(self) -> bool:
        """True when no term involves x0."""
        return all(a[0] == 0 for a, _ in self._data)

    def is_real(self) -> bool:
        return all(m == 0 for _, m in self._data)

    def is_e0_free(self) -> bool:
        """Coefficients lie in the subalgebra Cl(0, n) generated by e1..en."""
        return all(not m & E0 for _, m in self._data)

    def blades(self) -> set[Blade]:
        return {m for _, m in self._data}

    def component(self, blade: Blade) -> "CliffordPolynomial":
        """Real polynomial multiplying ``e_blade``."""
        return CliffordPolynomial(self.ctx, {(a, 0): c for (a, m), c in self._data.items() if m == blade})

    def components(self) -> dict[Blade, "CliffordPolynomial"]:
        return {m: self.component(m) for m in sorted(self.blades())}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "CliffordPolynomial") -> None:
        if other.ctx != self.ctx:
            raise DomainError("polynomials live in different contexts")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordPolynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._data.items())))
        return self._hash

    def __add__(self, other: "CliffordPolynomial") -> "CliffordPolynomial":
        if not isinstance(other, CliffordPolynomial):
            other = CliffordPolynomial.constant(self.ctx, other)
        self._check(other)
        out = dict(self._data)
        for k, c in other._data.items():
            out[k] = out.get(k, 0) + c
        return CliffordPolynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> "CliffordPolynomial":
        return CliffordPolynomial(self.ctx, {k: -c for k, c in self._data.items()})

    def __sub__(self, other: "CliffordPolynomial") -> "CliffordPolynomial":
        if not isinstance(other, CliffordPolynomial):
            other = CliffordPolynomial.constant(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "CliffordPolynomial":
        return CliffordPolynomial.constant(self.ctx, other) - self

    def __mul__(self, other) -> "CliffordPolynomial":
        if isinstance(other, CliffordPolynomial):
            return mul_poly(self, other)
        if isinstance(other, CliffordElement):
            return self.right_mul(other)
        c = to_rational(other)
        return CliffordPolynomial(self.ctx, {k: v * c for k, v in self._data.items()})

    def __rmul__(self, other) -> "CliffordPolynomial":
        if isinstance(other, CliffordElement):
            return self.left_mul(other)
        c = to_rational(other)
        return CliffordPolynomial(self.ctx, {k: c * v for k, v in self._data.items()})

    def __pow__(self, e: int) -> "CliffordPolynomial":
        result = CliffordPolynomial.constant(self.ctx, 1)
        for _ in range(e):
            result = mul_poly(result, self)
        return result

    def left_mul(self, el: CliffordElement) -> "CliffordPolynomial":
        """``el * P`` with ``el`` multiplying every coefficient from the left."""
        out: dict[TermKey, Fraction] = {}
        for mb, cb in el.items():
            for (alpha, m), c in self._data.items():
                sign, r = blade_mul(mb, m)
                key = (alpha, r)
                out[key] = out.get(key, 0) + sign * cb * c
        return CliffordPolynomial(self.ctx, out)

    def right_mul(self, el: CliffordElement) -> "CliffordPolynomial":
        out: dict[TermKey, Fraction] = {}
        for (alpha, m), c in self._data.items():
            for mb, cb in el.items():
                sign, r = blade_mul(m, mb)
                key = (alpha, r)
                out[key] = out.get(key, 0) + sign * c * cb
        return CliffordPolynomial(self.ctx, out)

    def map_terms(self, fn: Callable[[MultiIndex, Blade, Fraction], Iterable[tuple[TermKey, Fraction]]]) -> "CliffordPolynomial":
        out: dict[TermKey, Fraction] = {}
        for (alpha, m), c in self._data.items():
            for key, v in fn(alpha, m, c):
                out[key] = out.get(key, 0) + v
        return CliffordPolynomial(self.ctx, out)

    def at_x0_zero(self) -> "CliffordPolynomial":
        """Restriction to x0 = 0: drop every term that contains x0."""
        return CliffordPolynomial(self.ctx, {k: c for k, c in self._data.items() if k[0][0] == 0})

    def sorted_items(self) -> list[tuple[TermKey, Fraction]]:
        """Terms in canonical print order: degree, then graded-lex, then blade."""
        return sorted(self._data.items(), key=lambda kv: _term_order(kv[0]))

    def __repr__(self) -> str:
        from .parsing import format_poly

        return f"CliffordPolynomial({format_poly(self)!r}, q={self.ctx.q}, n={self.ctx.n})"


def _term_order(key: TermKey):
    alpha, m = key
    return (-sum(alpha), tuple(-a for a in alpha), grade(m), m)


# -- constructors ---------------------------------------------------------


def vector_x(ctx: QContext) -> CliffordPolynomial:
    """The Clifford vector variable ``sum_{i>=1} x_i e_i``."""
    data = {}
    for i in range(1, ctx.nvars):
        alpha = [0] * ctx.nvars
        alpha[i] = 1
        data[(tuple(alpha), 1 << i)] = 1
    return CliffordPolynomial(ctx, data)


def radius_sq(ctx: QContext) -> CliffordPolynomial:
    """``|x|^2 = x1^2 + ... + xn^2`` (x0 excluded)."""
    data = {}
    for i in range(1, ctx.nvars):
        alpha = [0] * ctx.nvars
        alpha[i] = 2
        data[(tuple(alpha), 0)] = 1
    return CliffordPolynomial(ctx, data)


def mul_poly(a: CliffordPolynomial, b: CliffordPolynomial) -> CliffordPolynomial:
    """Product with commuting variables and Clifford-multiplied coefficients."""
    a._check(b)
    out: dict[TermKey, Fraction] = {}
    for (aa, ma), ca in a.items():
        for (ab, mb), cb in b.items():
            sign, m = blade_mul(ma, mb)
            key = (tuple(x + y for x, y in zip(aa, ab)), m)
            out[key] = out.get(key, 0) + sign * ca * cb
    return CliffordPolynomial(a.ctx, out)


# -- q-operators ------------------------------------------------------------


def _rate(ctx: QContext, deformation: Deformation) -> Fraction:
    if deformation == "q":
        return ctx.q
    if deformation == "1/q":
        return ctx.qinv
    raise DomainError(f"deformation must be 'q' or '1/q', got {deformation!r}")


def _check_axis(ctx: QContext, i: int) -> None:
    if not 0 <= i <= ctx.n:
        raise DomainError(f"axis {i} outside 0..{ctx.n}")


def gamma_scale(i: int, p: CliffordPolynomial) -> CliffordPolynomial:
    """Dilation ``x_i -> q x_i``: multiplies each term by ``q^alpha_i``."""
    _check_axis(p.ctx, i)
    q = p.ctx.q
    return CliffordPolynomial(p.ctx, {(a, m): c * q ** a[i] for (a, m), c in p.items()})


def partial_q(i: int, p: CliffordPolynomial, deformation: Deformation = "q") -> CliffordPolynomial:
    """q-partial derivative in ``x_i`` (``deformation="1/q"`` for the 1/q variant)."""
    _check_axis(p.ctx, i)
    r = _rate(p.ctx, deformation)
    out: dict[TermKey, Fraction] = {}
    for (alpha, m), c in p.items():
        e = alpha[i]
        if e == 0:
            continue
        beta = alpha[:i] + (e - 1,) + alpha[i + 1:]
        out[(beta, m)] = out.get((beta, m), 0) + q_int(e, r) * c
    return CliffordPolynomial(p.ctx, out)


def antiderivative_x0(p: CliffordPolynomial) -> CliffordPolynomial:
    """Formal inverse of the 1/q-derivative in x0, vanishing at x0 = 0.

    ``x0^a * rest -> x0^(a+1) * rest / [a+1]_{1/q}``.
    """
    r = p.ctx.qinv
    out: dict[TermKey, Fraction] = {}
    for (alpha, m), c in p.items():
        beta = (alpha[0] + 1,) + alpha[1:]
        out[(beta, m)] = c / q_int(alpha[0] + 1, r)
    return CliffordPolynomial(p.ctx, out)


def left_unit(i: int, p: CliffordPolynomial) -> CliffordPolynomial:
    """``e_i * p`` (coefficients multiplied from the left)."""
    bit = 1 << i
    out: dict[TermKey, Fraction] = {}
    for (alpha, m), c in p.items():
        sign, r = blade_mul(bit, m)
        out[(alpha, r)] = sign * c
    return CliffordPolynomial(p.ctx, out)


def _accumulate(parts: Iterable[CliffordPolynomial], ctx: QContext) -> CliffordPolynomial:
    out: dict[TermKey, Fraction] = {}
    for part in parts:
        for k, c in part.items():
            out[k] = out.get(k, 0) + c
    return CliffordPolynomial(ctx, out)


def dirac_q(p: CliffordPolynomial) -> CliffordPolynomial:
    """q-Dirac operator ``sum_{i=1..n} e_i d^q_{x_i}`` on the x-vector."""
    return _accumulate((left_unit(i, partial_q(i, p, "q")) for i in range(1, p.ctx.nvars)), p.ctx)


def dirac_full(p: CliffordPolynomial) -> CliffordPolynomial:
    """(1/q, q)-Dirac operator ``e0 d^{1/q}_{x0} + D^q``."""
    return left_unit(0, partial_q(0, p, "1/q")) + dirac_q(p)


def laplace_q(p: CliffordPolynomial) -> CliffordPolynomial:
    """q-Laplacian ``sum_{i=1..n} (d^q_{x_i})^2``."""
    return _accumulate((partial_q(i, partial_q(i, p, "q"), "q") for i in range(1, p.ctx.nvars)), p.ctx)


def laplace_full(p: CliffordPolynomial) -> CliffordPolynomial:
    """(1/q, q)-Laplacian ``(d^{1/q}_{x0})^2 + Delta^q``."""
    return partial_q(0, partial_q(0, p, "1/q"), "1/q") + laplace_q(p)


def left_e0bar(p: CliffordPolynomial) -> CliffordPolynomial:
    """``conj(e0) * p``."""
    return -left_unit(0, p)


def split_poly_e0(p: CliffordPolynomial) -> tuple[CliffordPolynomial, CliffordPolynomial]:
    """Coefficient-wise ``P = U + conj(e0) V`` with U, V free of e0."""
    u: dict[TermKey, Fraction] = {}
    v: dict[TermKey, Fraction] = {}
    for (alpha, m), c in p.items():
        if m & E0:
            v[(alpha, m ^ E0)] = -c
        else:
            u[(alpha, m)] = c
    return CliffordPolynomial(p.ctx, u), CliffordPolynomial(p.ctx, v)


def join_poly_e0(u: CliffordPolynomial, v: CliffordPolynomial) -> CliffordPolynomial:
    return u + left_e0bar(v)


def conjugate_poly(p: CliffordPolynomial) -> CliffordPolynomial:
    """Clifford conjugation applied to every coefficient."""
    return CliffordPolynomial(p.ctx, {(a, m): conjugation_sign(m) * c for (a, m), c in p.items()})
