"""Complex q-analytic polynomials in z = x + iy.

Coefficients are Gaussian rationals ``(re, im)``; ``i`` never becomes a
float.  The q-d-bar operator is ``(d^q_x + i d^{1/q}_y) / 2``.  The usual
convention here is 0 < q < 1, but every function accepts any q > 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .qcore import DomainError, RationalLike, format_rational, q_factorial, q_int, to_rational

Gaussian = tuple  # (re: Fraction, im: Fraction)


def _gmul(a: Gaussian, b: Gaussian) -> Gaussian:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _check_q(q: RationalLike) -> Fraction:
    q = to_rational(q)
    if q <= 0:
        raise DomainError(f"q must be positive, got {q}")
    return q


class ComplexQPolynomial:
    """Sparse ``sum c_{a,b} x^a y^b`` with Gaussian-rational coefficients."""

    __slots__ = ("q", "_terms")

    def __init__(self, q: RationalLike, terms: Mapping[tuple[int, int], tuple] | None = None):
        self.q = _check_q(q)
        clean: dict[tuple[int, int], Gaussian] = {}
        for (a, b), (re, im) in (terms or {}).items():
            re, im = to_rational(re), to_rational(im)
            if re or im:
                clean[(int(a), int(b))] = (re, im)
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int], Gaussian]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], Gaussian]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])))

    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexQPolynomial):
            return NotImplemented
        return self.q == other.q and self._terms == other._terms

    def __add__(self, other: "ComplexQPolynomial") -> "ComplexQPolynomial":
        out = dict(self._terms)
        for k, (re, im) in other._terms.items():
            r0, i0 = out.get(k, (0, 0))
            out[k] = (r0 + re, i0 + im)
        return ComplexQPolynomial(self.q, out)

    def __neg__(self) -> "ComplexQPolynomial":
        return ComplexQPolynomial(self.q, {k: (-r, -i) for k, (r, i) in self._terms.items()})

    def __sub__(self, other: "ComplexQPolynomial") -> "ComplexQPolynomial":
        return self + (-other)

    def __mul__(self, other: "ComplexQPolynomial") -> "ComplexQPolynomial":
        out: dict[tuple[int, int], Gaussian] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                p = _gmul(c1, c2)
                r0, i0 = out.get(key, (0, 0))
                out[key] = (r0 + p[0], i0 + p[1])
        return ComplexQPolynomial(self.q, out)

    def scale(self, c: Gaussian) -> "ComplexQPolynomial":
        return ComplexQPolynomial(self.q, {k: _gmul(c, v) for k, v in self._terms.items()})

    def to_json(self) -> list[dict]:
        return [
            {"xexp": a, "yexp": b, "re": format_rational(re), "im": format_rational(im)}
            for (a, b), (re, im) in self.items()
        ]

    @classmethod
    def from_json(cls, q: RationalLike, rows: Sequence[Mapping]) -> "ComplexQPolynomial":
        out: dict[tuple[int, int], Gaussian] = {}
        for row in rows:
            key = (int(row["xexp"]), int(row["yexp"]))
            r0, i0 = out.get(key, (0, 0))
            out[key] = (r0 + to_rational(str(row["re"])), i0 + to_rational(str(row["im"])))
        return cls(q, out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, ((a, b), (re, im)) in enumerate(self.items()):
            mono = ([f"x^{a}" if a > 1 else "x"] if a else []) + ([f"y^{b}" if b > 1 else "y"] if b else [])
            sign = ""
            if im == 0:
                sign, coeff = ("-" if re < 0 else "+"), format_rational(abs(re))
            elif re == 0:
                sign, coeff = ("-" if im < 0 else "+"), f"{format_rational(abs(im))}i"
                coeff = "i" if abs(im) == 1 else coeff
            else:
                coeff = f"({format_rational(re)}{'+' if im > 0 else '-'}{format_rational(abs(im))}i)"
                sign = "+"
            factors = ([] if coeff == "1" and mono else [coeff]) + mono
            body = "*".join(factors)
            if idx == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"ComplexQPolynomial({str(self)!r}, q={self.q})"


def jackson_derivative(coeffs: Mapping[int, Fraction], q: Fraction) -> dict[int, Fraction]:
    """``D_q`` on a univariate polynomial ``{power: coeff}``: ``x^m -> [m]_q x^(m-1)``."""
    return {m - 1: q_int(m, q) * c for m, c in coeffs.items() if m > 0 and c}


def _univariate(f0: Mapping[int, RationalLike] | Sequence[RationalLike]) -> dict[int, Fraction]:
    if isinstance(f0, Mapping):
        items = f0.items()
    else:
        items = enumerate(f0)
    out = {}
    for m, c in items:
        if m < 0:
            raise DomainError("negative powers are not polynomials")
        c = to_rational(c)
        if c:
            out[int(m)] = c
    return out


def _i_power(k: int) -> Gaussian:
    return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))][k % 4]


def ck_extend(f0: Mapping[int, RationalLike] | Sequence[RationalLike], q: RationalLike) -> ComplexQPolynomial:
    """q-analytic extension of a real polynomial ``f0(x)``.

    ``sum_k q^(k(k-1)/2) / [k]_q! * (iy)^k * D_q^k f0(x)``; the sum stops once
    the Jackson derivatives vanish.  ``f0`` is ``{power: coeff}`` or a
    coefficient list indexed by power.
    """
    q = _check_q(q)
    current = _univariate(f0)
    out: dict[tuple[int, int], Gaussian] = {}
    k = 0
    while current:
        weight = q ** (k * (k - 1) // 2) / q_factorial(k, q)
        ik = _i_power(k)
        for m, c in current.items():
            key = (m, k)
            r0, i0 = out.get(key, (0, 0))
            out[key] = (r0 + ik[0] * weight * c, i0 + ik[1] * weight * c)
        current = jackson_derivative(current, q)
        k += 1
    return ComplexQPolynomial(q, out)


def q_binomial_z(k: int, q: RationalLike) -> ComplexQPolynomial:
    """Complex q-binomial ``(x + iy)(x + iqy)...(x + iq^(k-1)y)``, expanded."""
    q = _check_q(q)
    if k < 0:
        raise DomainError("k must be non-negative")
    result = ComplexQPolynomial(q, {(0, 0): (1, 0)})
    for j in range(k):
        factor = ComplexQPolynomial(q, {(1, 0): (1, 0), (0, 1): (0, q ** j)})
        result = result * factor
    return result


def dbar_q(p: ComplexQPolynomial) -> ComplexQPolynomial:
    """``(d^q_x p + i d^{1/q}_y p) / 2``; zero exactly when p is q-analytic."""
    q = p.q
    half = Fraction(1, 2)
    out: dict[tuple[int, int], Gaussian] = {}

    def add(key, re, im):
        r0, i0 = out.get(key, (0, 0))
        out[key] = (r0 + re, i0 + im)

    for (a, b), (re, im) in p.terms.items():
        if a:
            f = half * q_int(a, q)
            add((a - 1, b), f * re, f * im)
        if b:
            f = half * q_int(b, 1 / q)
            # multiply by i: (re, im) -> (-im, re)
            add((a, b - 1), -f * im, f * re)
    return ComplexQPolynomial(q, out)


def zq_split(n: int, q: RationalLike) -> tuple[Fraction, Fraction]:
    """Coefficients of z and conj(z) in ``x + i q^n y``."""
    q = _check_q(q)
    if n < 0:
        raise DomainError("n must be non-negative")
    qn = q ** n
    return (1 + qn) / 2, (1 - qn) / 2
