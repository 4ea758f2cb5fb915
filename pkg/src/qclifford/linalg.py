"""Exact sparse linear algebra over the rationals.

Rows are ``{column: Fraction}`` dicts.  Pivots are chosen as the leftmost
nonzero column, so the reduced row echelon form, and hence every null-space
basis and solution derived from it, does not depend on the order in which
rows are supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .qcore import SingularSystemError

Row = dict  # column -> Fraction


def _axpy(target: Row, factor: Fraction, source: Mapping[int, Fraction]) -> None:
    """``target -= factor * source`` in place, dropping cancelled entries."""
    for col, v in source.items():
        nv = target.get(col, 0) - factor * v
        if nv:
            target[col] = nv
        else:
            target.pop(col, None)


def rref(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, Row]:
    """Reduced row echelon form as ``{pivot column: row}`` (pivot entry 1).

    Rows are inserted one at a time; each new row is reduced against the
    existing pivots, normalised on its leftmost entry and then used to clear
    that column from the earlier pivot rows.
    """
    pivots: dict[int, Row] = {}
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        for col in [c for c in row if c in pivots]:
            if col in row:
                _axpy(row, row[col], pivots[col])
        # reducing by one pivot row cannot reintroduce another pivot column
        # because pivot rows are kept fully reduced
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for prow in pivots.values():
            f = prow.get(lead)
            if f:
                _axpy(prow, f, row)
        pivots[lead] = row
    return pivots


def rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    return len(rref(rows))


def nullspace(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> list[Row]:
    """Basis of ``{v : A v = 0}``, one vector per free column (that entry 1)."""
    pivots = rref(rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: Row = {free: Fraction(1)}
        for pcol, prow in pivots.items():
            v = prow.get(free)
            if v:
                vec[pcol] = -v
        basis.append(vec)
    return basis


@dataclass
class LinearSystem:
    """Dense-in-spirit system ``A x = b`` stored sparsely.

    ``matrix`` maps a row label to ``{column: entry}``; the right-hand side
    uses the same row labels.
    """

    ncols: int
    matrix: dict = field(default_factory=dict)
    rhs: dict = field(default_factory=dict)

    def add(self, row: int, col: int, value: Fraction) -> None:
        if not 0 <= col < self.ncols:
            raise IndexError(col)
        if value:
            r = self.matrix.setdefault(row, {})
            r[col] = r.get(col, 0) + value

    def solve(self, unique: bool = True) -> list[Fraction]:
        """Exact solution; free variables set to zero when ``unique`` is False."""
        aug = self.ncols
        rows = []
        labels = set(self.matrix) | set(self.rhs)
        for label in sorted(labels):
            row = dict(self.matrix.get(label, {}))
            b = self.rhs.get(label, 0)
            if b:
                row[aug] = Fraction(b)
            rows.append(row)
        pivots = rref(rows)
        if aug in pivots:
            raise SingularSystemError("inconsistent linear system")
        if unique and len(pivots) < self.ncols:
            raise SingularSystemError(
                f"system is rank deficient ({len(pivots)} < {self.ncols})"
            )
        x = [Fraction(0)] * self.ncols
        for pcol, prow in pivots.items():
            x[pcol] = prow.get(aug, Fraction(0))
        return x


def inverse(columns: Sequence[Mapping[int, Fraction]], size: int) -> list[Row]:
    """Inverse of a square matrix given column-wise; returns it column-wise.

    ``columns[j]`` is the image of basis vector ``j``.  Gauss-Jordan on the
    row form ``[A | I]``.
    """
    rows: list[Row] = [dict() for _ in range(size)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows[i][j] = Fraction(v)
    for i in range(size):
        rows[i][size + i] = Fraction(1)
    pivots = rref(rows)
    if any(c not in pivots for c in range(size)):
        raise SingularSystemError("matrix is singular")
    inv_cols: list[Row] = [dict() for _ in range(size)]
    for i in range(size):
        for c, v in pivots[i].items():
            if c >= size:
                inv_cols[c - size][i] = v
    return inv_cols


def apply_columns(columns: Sequence[Mapping[int, Fraction]], vec: Mapping[int, Fraction]) -> Row:
    """Matrix-vector product for a column-wise sparse matrix."""
    out: Row = {}
    for j, xj in vec.items():
        if not xj:
            continue
        for i, v in columns[j].items():
            nv = out.get(i, 0) + v * xj
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
    return out
