"""Exact rational dense linear algebra.

Everything here works on :class:`fractions.Fraction` entries; there is no
floating-point path.  Two independent elimination routes are provided:

* :func:`rank` uses fraction-free (Bareiss) elimination on an integer
  rescaling of the matrix.
* :func:`row_basis` / :func:`solve_in_span` use incremental rational
  elimination that keeps track of how each echelon vector is built from the
  original rows, which is what the coordinate-graph construction needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (no floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as ``"p/q"``, or as a plain integer when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix of exact rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        entries = tuple(as_fraction(v) for r in rows for v in r)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def select_columns(self, columns: Iterable[int]) -> "RationalMatrix":
        columns = list(columns)
        return RationalMatrix.from_rows(
            [[self[i, j] for j in columns] for i in range(self.rows)], cols=len(columns)
        )

    def select_rows(self, rows: Iterable[int]) -> "RationalMatrix":
        rows = list(rows)
        return RationalMatrix(len(rows), self.cols, tuple(v for i in rows for v in self.row(i)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            a = self.row(i)
            for j in range(other.cols):
                out.append(sum((a[k] * other.entries[k * other.cols + j] for k in range(self.cols)), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product with exact arithmetic."""
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} does not match {self.cols} columns")
        return tuple(
            sum((a * v for a, v in zip(self.row(i), vector)), Fraction(0)) for i in range(self.rows)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)


def rank(M: RationalMatrix) -> int:
    """Rank of ``M`` by fraction-free Bareiss elimination.

    Rows are first scaled by the lcm of their denominators so the whole
    elimination runs over the integers; every division in the Bareiss update
    is exact.
    """
    work: list[list[int]] = []
    for i in range(M.rows):
        row = M.row(i)
        scale = lcm(*(v.denominator for v in row)) if row else 1
        work.append([int(v * scale) for v in row])

    n_rows, n_cols = M.rows, M.cols
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        for i in range(r + 1, n_rows):
            a = work[i][c]
            row_i, row_r = work[i], work[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


@dataclass(frozen=True)
class RowBasis:
    """Greedy row basis of a matrix plus exact coordinates of the other rows.

    ``coords[k][j]`` is the coefficient of row ``basis_indices[j]`` in the
    expansion of row ``k``.
    """

    basis_indices: tuple[int, ...]
    coords: dict[int, tuple[Fraction, ...]]

    @property
    def rank(self) -> int:
        return len(self.basis_indices)


class _Echelon:
    """Incremental echelon form remembering each vector's basis expansion."""

    def __init__(self, dim: int) -> None:
        self.dim = dim
        # (pivot column, reduced vector, expansion over basis vectors added so far)
        self.rows: list[tuple[int, list[Fraction], list[Fraction]]] = []

    @property
    def size(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """Return (remainder, coefficients) with v = remainder + sum(coeff_j * basis_j)."""
        rem = [Fraction(x) for x in v]
        coeffs = [Fraction(0)] * self.size
        for pivot, vec, combo in self.rows:
            a = rem[pivot]
            if a == 0:
                continue
            factor = a / vec[pivot]
            for j in range(pivot, self.dim):
                if vec[j]:
                    rem[j] -= factor * vec[j]
            for j, cj in enumerate(combo):
                if cj:
                    coeffs[j] += factor * cj
        return rem, coeffs

    def add(self, remainder: list[Fraction], coeffs: list[Fraction]) -> None:
        # remainder = v - sum(coeffs_j basis_j), and v becomes basis vector #size
        pivot = next(j for j, x in enumerate(remainder) if x != 0)
        combo = [-c for c in coeffs] + [Fraction(1)]
        for _, _, other in self.rows:
            other.append(Fraction(0))
        self.rows.append((pivot, remainder, combo))


def row_basis(M: RationalMatrix) -> RowBasis:
    """Greedy first-fit row basis: a row joins the basis iff it raises the rank.

    Zero rows and dependent rows get their exact coordinates against the
    final basis (zero rows get the all-zero vector).
    """
    ech = _Echelon(M.cols)
    basis: list[int] = []
    pending: list[tuple[int, list[Fraction]]] = []
    for i in range(M.rows):
        rem, coeffs = ech.reduce(M.row(i))
        if any(rem):
            ech.add(rem, coeffs)
            basis.append(i)
        else:
            pending.append((i, coeffs))
    rho = len(basis)
    coords = {i: tuple(c + [Fraction(0)] * (rho - len(c))) for i, c in pending}
    return RowBasis(tuple(basis), coords)


def solve_in_span(v: Sequence, basis_rows: Sequence[Sequence]) -> Optional[tuple[Fraction, ...]]:
    """Coefficients ``a`` with ``v == sum(a[j] * basis_rows[j])``, or None if v is not in the span.

    Raises ValueError on a dimension mismatch or dependent basis rows.
    """
    v = [as_fraction(x) for x in v]
    rows = [[as_fraction(x) for x in r] for r in basis_rows]
    for r in rows:
        if len(r) != len(v):
            raise ValueError(f"vector has length {len(v)} but a basis row has length {len(r)}")
    ech = _Echelon(len(v))
    for r in rows:
        rem, coeffs = ech.reduce(r)
        if not any(rem):
            raise ValueError("basis rows are linearly dependent")
        ech.add(rem, coeffs)
    rem, coeffs = ech.reduce(v)
    if any(rem):
        return None
    return tuple(coeffs)
