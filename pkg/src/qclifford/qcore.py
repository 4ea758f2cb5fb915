"""Exact scalars, q-numbers, q-factorials and multi-indices.

Every scalar in the package is a :class:`fractions.Fraction`; nothing is ever
rounded.  The q-numbers are built from the explicit sum ``1 + q + ... + q^(u-1)``
so that ``q = 1`` is a legal context and reproduces the classical integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

Rational = Fraction
MultiIndex = Tuple[int, ...]

RationalLike = Union[Fraction, int, str]


class QCliffordError(Exception):
    """Base class for errors raised by this package."""


class DomainError(QCliffordError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(QCliffordError, ValueError):
    """An input violates a mathematical precondition (e.g. not harmonic)."""


class SingularSystemError(QCliffordError, ArithmeticError):
    """A linear system that should be uniquely solvable is not."""


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Strings must be integers or ``p/q``; decimals and floats are refused
    because they would smuggle rounding into the pipeline.
    """
    if isinstance(value, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise DomainError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {value!r}") from exc
    raise DomainError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Canonical reduced text form: ``"3/4"``, ``"-2"``."""
    return str(Fraction(value))


@dataclass(frozen=True)
class QContext:
    """Deformation parameter ``q`` and the dimension ``n`` of the x-vector.

    The ambient space is R^(n+1) with coordinates x0, x1, ..., xn; slot 0 of
    every multi-index belongs to x0.
    """

    q: Fraction
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", to_rational(self.q))
        if self.q <= 0:
            raise DomainError(f"q must be positive, got {self.q}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if self.n > 62:
            raise DomainError("blade bitmasks support at most 63 generators")

    @property
    def qinv(self) -> Fraction:
        return 1 / self.q

    @property
    def nvars(self) -> int:
        """Number of coordinates including x0."""
        return self.n + 1


@lru_cache(maxsize=None)
def q_int(u: int, q: Fraction) -> Fraction:
    """Basic number ``[u]_q = 1 + q + ... + q^(u-1)`` (zero for ``u = 0``)."""
    if u < 0:
        raise DomainError(f"q_int needs a non-negative integer, got {u}")
    q = to_rational(q)
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(u):
        total += power
        power *= q
    return total


@lru_cache(maxsize=None)
def q_factorial(k: int, q: Fraction) -> Fraction:
    """``[k]_q! = [1]_q [2]_q ... [k]_q`` with ``[0]_q! = 1``."""
    if k < 0:
        raise DomainError(f"q_factorial needs a non-negative integer, got {k}")
    result = Fraction(1)
    for j in range(1, k + 1):
        result *= q_int(j, q)
    return result


def q_multiindex_factorial(alpha: Sequence[int], q: Fraction) -> Fraction:
    """Product of ``[alpha_i]_q!`` over every slot of ``alpha``."""
    result = Fraction(1)
    for a in alpha:
        result *= q_factorial(a, q)
    return result


def q_binomial_coeff(n: int, k: int, q: Fraction) -> Fraction:
    """Gaussian binomial ``[n]_q! / ([k]_q! [n-k]_q!)``."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q_binomial_coeff needs 0 <= k <= n, got n={n}, k={k}")
    return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


def degree(alpha: Sequence[int]) -> int:
    """Total degree ``|alpha|``."""
    return sum(alpha)


def unit_index(nvars: int, i: int, power: int = 1) -> MultiIndex:
    """Multi-index of ``x_i^power`` in ``nvars`` slots."""
    alpha = [0] * nvars
    alpha[i] = power
    return tuple(alpha)


def add_index(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def multi_indices(nvars: int, k: int, first: int = 0) -> list[MultiIndex]:
    """All multi-indices of total degree ``k`` in ``nvars`` slots.

    Slots ``0 .. first-1`` are pinned to zero (``first=1`` gives the
    x-vector-only indices with ``alpha_0 = 0``).  The order is graded
    lexicographic, largest first: ``x1^k`` precedes ``x1^(k-1) x2``.
    """
    free = nvars - first
    if free <= 0:
        return [tuple([0] * nvars)] if k == 0 else []
    out: list[MultiIndex] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple([0] * first + prefix + [remaining]))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + [a], remaining - a, slots - 1)

    rec([], k, free)
    return out
