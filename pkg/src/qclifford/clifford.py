"""The real Clifford algebra Cl(0, n+1) with generators e0, ..., en.

A basis blade ``e_A = e_{h1} ... e_{hr}`` (ascending indices) is stored as the
bitmask with bits ``h1 .. hr`` set; mask 0 is the identity.  Every generator
squares to -1 and distinct generators anticommute.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

from .qcore import DomainError, RationalLike, to_rational

Blade = int

E0 = 1  # mask of e0


def grade(mask: Blade) -> int:
    return bin(mask).count("1")


def blade_indices(mask: Blade) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def blade_from_indices(indices) -> Blade:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def blade_mul(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Product of two basis blades as ``(sign, a ^ b)``.

    The sign counts the transpositions needed to sort the concatenated index
    sequence, plus one factor -1 per generator shared by both blades.
    """
    swaps = 0
    rest = a >> 1
    while rest:
        swaps += grade(rest & b)
        rest >>= 1
    swaps += grade(a & b)
    return (-1 if swaps & 1 else 1), a ^ b


def conjugation_sign(mask: Blade) -> int:
    r = grade(mask)
    return -1 if (r * (r + 1) // 2) & 1 else 1


def format_blade(mask: Blade) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in blade_indices(mask))


def parse_blade(text: str, n: int | None = None) -> Blade:
    """Parse ``"1"``, ``"e0"``, ``"e12"`` (strictly ascending digits)."""
    text = text.strip()
    if text == "1":
        return 0
    if len(text) < 2 or text[0] != "e" or not text[1:].isdigit():
        raise DomainError(f"bad blade {text!r}")
    digits = [int(ch) for ch in text[1:]]
    if any(b <= a for a, b in zip(digits, digits[1:])):
        raise DomainError(f"blade digits must be strictly ascending: {text!r}")
    if n is not None and digits[-1] > n:
        raise DomainError(f"blade {text!r} uses a generator beyond e{n}")
    return blade_from_indices(digits)


class CliffordElement:
    """Immutable element ``sum_A lambda_A e_A`` with exact coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Blade, RationalLike] | None = None):
        clean: dict[Blade, Fraction] = {}
        if terms:
            for mask, c in terms.items():
                c = to_rational(c)
                if c:
                    clean[int(mask)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def scalar(cls, c: RationalLike) -> "CliffordElement":
        return cls({0: c})

    @classmethod
    def blade(cls, mask: Blade, c: RationalLike = 1) -> "CliffordElement":
        return cls({mask: c})

    @classmethod
    def generator(cls, i: int) -> "CliffordElement":
        return cls({1 << i: 1})

    @property
    def terms(self) -> dict[Blade, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Blade, Fraction]]:
        return iter(self._terms.items())

    def __getitem__(self, mask: Blade) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CliffordElement.scalar(other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Union["CliffordElement", RationalLike]) -> "CliffordElement":
        if not isinstance(other, (CliffordElement, int, Fraction, str)):
            return NotImplemented
        other = _as_element(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(out)

    __radd__ = __add__

    def __neg__(self) -> "CliffordElement":
        return CliffordElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union["CliffordElement", RationalLike]) -> "CliffordElement":
        return self + (-_as_element(other))

    def __rsub__(self, other: RationalLike) -> "CliffordElement":
        return _as_element(other) - self

    def __mul__(self, other: Union["CliffordElement", RationalLike]) -> "CliffordElement":
        if not isinstance(other, (CliffordElement, int, Fraction, str)):
            return NotImplemented
        if not isinstance(other, CliffordElement):
            c = to_rational(other)
            return CliffordElement({m: v * c for m, v in self._terms.items()})
        return mul(self, other)

    def __rmul__(self, other: RationalLike) -> "CliffordElement":
        c = to_rational(other)
        return CliffordElement({m: c * v for m, v in self._terms.items()})

    def conjugate(self) -> "CliffordElement":
        return conjugate(self)

    def scalar_part(self) -> Fraction:
        return self[0]

    def max_generator(self) -> int:
        """Highest generator index present, -1 for a pure scalar or zero."""
        top = 0
        for m in self._terms:
            top |= m
        return top.bit_length() - 1

    def __repr__(self) -> str:
        return f"CliffordElement({format_element(self)!r})"


def _as_element(x: Union[CliffordElement, RationalLike]) -> CliffordElement:
    return x if isinstance(x, CliffordElement) else CliffordElement.scalar(x)


def mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    out: dict[Blade, Fraction] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            sign, m = blade_mul(ma, mb)
            out[m] = out.get(m, 0) + sign * ca * cb
    return CliffordElement(out)


def conjugate(a: CliffordElement) -> CliffordElement:
    """Clifford conjugation: anti-automorphism with ``conj(e_i) = -e_i``."""
    return CliffordElement({m: conjugation_sign(m) * c for m, c in a.items()})


def scalar_part(a: CliffordElement) -> Fraction:
    return a[0]


def norm0(a: CliffordElement, n: int) -> Fraction:
    """Squared length ``2^(n+1) * sum_A lambda_A^2`` of an element of Cl(0, n+1).

    The square is returned so the result stays rational.
    """
    if a.max_generator() > n:
        raise DomainError(f"element uses generators beyond e{n}")
    return 2 ** (n + 1) * sum((c * c for _, c in a.items()), Fraction(0))


def split_e0(a: CliffordElement) -> tuple[CliffordElement, CliffordElement]:
    """Unique ``(U, V)`` free of e0 with ``a = U + conj(e0) V``.

    Uses ``e0 e_B = -conj(e0) e_B`` for blades B not containing e0.
    """
    u: dict[Blade, Fraction] = {}
    v: dict[Blade, Fraction] = {}
    for m, c in a.items():
        if m & E0:
            v[m ^ E0] = -c
        else:
            u[m] = c
    return CliffordElement(u), CliffordElement(v)


def join_e0(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    """Inverse of :func:`split_e0`."""
    return u + mul(E0_BAR, v)


E0_BAR = CliffordElement({E0: -1})


def format_element(a: CliffordElement) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a.terms, key=lambda m: (grade(m), blade_indices(m))):
        c = a[m]
        parts.append(f"{c}" if m == 0 else f"{c}*{format_blade(m)}")
    return " + ".join(parts)
