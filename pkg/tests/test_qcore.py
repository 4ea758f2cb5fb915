from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qclifford import DomainError, QContext
from qclifford.qcore import (
    format_rational,
    multi_indices,
    q_binomial_coeff,
    q_factorial,
    q_int,
    q_multiindex_factorial,
    to_rational,
)

positive_q = st.fractions(min_value=F(1, 10), max_value=5, max_denominator=12).filter(lambda q: q > 0)


@pytest.mark.parametrize(
    "u, q, expected",
    [(0, F(7, 5), 0), (2, F(4, 3), F(7, 3)), (5, F(1), 5), (3, F(3, 4), F(37, 16))],
)
def test_q_int_examples(u, q, expected):
    assert q_int(u, q) == expected


def test_q_factorial_examples():
    assert q_factorial(0, F(4, 3)) == 1
    assert q_factorial(3, F(4, 3)) == F(259, 27)
    assert q_factorial(4, F(1)) == 24


def test_multiindex_factorial_examples():
    assert q_multiindex_factorial((0, 0, 0), F(4, 3)) == 1
    assert q_multiindex_factorial((0, 2, 1), F(4, 3)) == F(7, 3)
    assert q_multiindex_factorial((1, 1, 1), F(1)) == 1


def test_q_binomial_examples():
    assert q_binomial_coeff(5, 5, F(2)) == 1
    assert q_binomial_coeff(2, 1, F(4, 3)) == F(7, 3)
    assert q_binomial_coeff(4, 2, F(1)) == 6
    with pytest.raises(DomainError):
        q_binomial_coeff(2, 3, F(2))


@given(positive_q, st.integers(1, 30))
def test_q_int_recursion(q, u):
    assert q_int(u, q) - q * q_int(u - 1, q) == 1


@given(positive_q.filter(lambda q: q != 1), st.integers(0, 30))
def test_q_int_closed_form(q, u):
    assert q_int(u, q) == (q**u - 1) / (q - 1)


def test_q_int_classical_limit():
    assert all(q_int(u, F(1)) == u for u in range(51))


@given(positive_q)
def test_q_pascal_rule(q):
    for n in range(1, 13):
        for k in range(1, n):
            lhs = q_binomial_coeff(n, k, q)
            assert lhs == q_binomial_coeff(n - 1, k - 1, q) + q**k * q_binomial_coeff(n - 1, k, q)


def test_q_binomial_classical_oracle():
    for n in range(10):
        for k in range(n + 1):
            assert q_binomial_coeff(n, k, F(1)) == math.comb(n, k)


def test_inverse_base_factorial_identity():
    # 1/[k]_{1/q}! = q^(k(k-1)/2)/[k]_q!
    for q in (F(1, 2), F(2, 3), F(4, 3)):
        for k in range(11):
            assert 1 / q_factorial(k, 1 / q) == q ** (k * (k - 1) // 2) / q_factorial(k, q)


def test_to_rational_is_exact():
    assert to_rational("4/3") == F(4, 3)
    assert to_rational(" -2 ") == -2
    assert to_rational(6) == 6
    for bad in ("1.5", "1e3", "", "abc", "1/0", 0.5, True):
        with pytest.raises(DomainError):
            to_rational(bad)


def test_format_rational_canonical():
    assert format_rational(F(6, 8)) == "3/4"
    assert format_rational(F(-4, 2)) == "-2"


def test_context_validation():
    ctx = QContext("4/3", 2)
    assert ctx.q == F(4, 3) and ctx.nvars == 3 and ctx.qinv == F(3, 4)
    assert QContext(1, 1).q == 1  # q = 1 is a legal context
    for q, n in ((0, 2), (F(-1), 2), (F(2), 0)):
        with pytest.raises(DomainError):
            QContext(q, n)


@pytest.mark.parametrize("nvars, k", [(2, 3), (3, 4), (4, 2), (3, 0)])
def test_multi_indices_count_and_order(nvars, k):
    idx = multi_indices(nvars, k)
    assert len(idx) == math.comb(k + nvars - 1, nvars - 1)
    assert len(set(idx)) == len(idx)
    assert all(sum(a) == k for a in idx)
    assert idx == sorted(idx, reverse=True)
    pinned = multi_indices(nvars, k, first=1)
    assert pinned == [a for a in idx if a[0] == 0]
