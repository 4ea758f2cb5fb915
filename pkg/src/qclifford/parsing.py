"""Text and JSON forms of Clifford polynomials.

Grammar (whitespace is ignored)::

    poly   := sign? term (('+' | '-') term)*
    term   := coeff? ('*'? factor)*
    factor := var '^' int | var | blade
    var    := 'x' digit+
    blade  := 'e' digit+          (strictly ascending digits: e12 = e1 e2)
    coeff  := int ('/' int)?

Example: ``"x0^3 - x0*x1^2 - 47/64*x0*x2^2"`` or ``"3/4 * x1 * e12"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .clifford import blade_mul, format_blade, parse_blade
from .qcore import DomainError, QContext, format_rational, to_rational
from .qpoly import CliffordPolynomial


class PolyParseError(DomainError):
    """Syntax or range error in a polynomial expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str, ctx: QContext):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> PolyParseError:
        return PolyParseError(message, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def digits(self) -> str:
        # variable and blade digits must follow their letter without spaces
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected digits")
        return self.text[start:self.pos]

    def parse(self) -> CliffordPolynomial:
        data: dict = {}
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            alpha, mask, c = self.term()
            key = (alpha, mask)
            data[key] = data.get(key, 0) + sign * c
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise self.error(f"unexpected character {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return CliffordPolynomial(self.ctx, data)

    def term(self) -> tuple[tuple[int, ...], int, Fraction]:
        nv = self.ctx.nvars
        alpha = [0] * nv
        mask = 0
        coeff = Fraction(1)
        seen = False
        if self.peek().isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                slash = self.pos
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", slash)
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            seen = True
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                ch = self.peek()
                if ch not in ("x", "e"):
                    raise self.error("expected a variable or blade after '*'")
            if ch == "x":
                start = self.pos
                self.pos += 1
                i = int(self.digits())
                if i > self.ctx.n:
                    raise self.error(f"variable x{i} outside x0..x{self.ctx.n}", start)
                power = 1
                if self.peek() == "^":
                    self.pos += 1
                    power = self.integer()
                alpha[i] += power
            elif ch == "e":
                start = self.pos
                self.pos += 1
                text = "e" + self.digits()
                try:
                    b = parse_blade(text, self.ctx.n)
                except DomainError as exc:
                    raise self.error(str(exc), start) from None
                sign, mask = blade_mul(mask, b)
                coeff *= sign
            else:
                break
            seen = True
        if not seen:
            raise self.error("expected a term")
        return tuple(alpha), mask, coeff


def parse_poly(text: str, ctx: QContext) -> CliffordPolynomial:
    """Parse an expression in the polynomial grammar."""
    if not text.strip():
        raise PolyParseError("empty expression", 0)
    return _Parser(text, ctx).parse()


def _monomial_text(alpha: tuple[int, ...], mask: int) -> list[str]:
    parts = []
    for i, a in enumerate(alpha):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    if mask:
        parts.append(format_blade(mask))
    return parts


def format_poly(p: CliffordPolynomial) -> str:
    """Canonical text form; :func:`parse_poly` reads it back to the same value."""
    items = p.sorted_items()
    if not items:
        return "0"
    out = []
    for idx, ((alpha, mask), c) in enumerate(items):
        factors = _monomial_text(alpha, mask)
        mag = abs(c)
        body = "*".join(([] if mag == 1 and factors else [str(mag)]) + factors)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def poly_to_json(p: CliffordPolynomial) -> list[dict[str, Any]]:
    """``[{"alpha": [..], "blade": "e12", "coeff": "3/4"}, ...]`` in canonical order."""
    return [
        {"alpha": list(alpha), "blade": format_blade(mask), "coeff": format_rational(c)}
        for (alpha, mask), c in p.sorted_items()
    ]


def poly_from_json(obj: Any, ctx: QContext) -> CliffordPolynomial:
    """Inverse of :func:`poly_to_json`; also accepts ``{"terms": [...]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict):
        if "terms" not in obj:
            raise DomainError("JSON polynomial object needs a 'terms' list")
        obj = obj["terms"]
    if not isinstance(obj, list):
        raise DomainError("JSON polynomial must be a list of terms")
    data: dict = {}
    for term in obj:
        try:
            alpha = tuple(int(a) for a in term["alpha"])
            mask = parse_blade(str(term.get("blade", "1")), ctx.n)
            c = to_rational(str(term["coeff"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad JSON term {term!r}: {exc}") from None
        if len(alpha) != ctx.nvars:
            raise DomainError(f"term {term!r} needs {ctx.nvars} exponents")
        data[(alpha, mask)] = data.get((alpha, mask), 0) + c
    return CliffordPolynomial(ctx, data)
