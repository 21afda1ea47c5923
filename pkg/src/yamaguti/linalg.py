"""Dense exact linear algebra over the rationals.

Every entry is a ``fractions.Fraction``; there is no floating point
anywhere in this package.  The matrices that show up (coboundary
operators on cochain spaces at desk scale) stay small, so plain dense
Gauss-Jordan elimination is all we need.  Pivots are chosen as the
first nonzero entry in each column -- with exact arithmetic there is
no stability concern.

Degenerate shapes (0 rows and/or 0 columns) are legal everywhere;
one-dimensional algebras produce empty cochain spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# vectors (plain tuples of Fractions)
# ---------------------------------------------------------------------------

def vector(entries) -> tuple:
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    if not c:
        return (ZERO,) * len(u)
    return tuple(c * a for a in u)


def vec_is_zero(u) -> bool:
    return all(not a for a in u)


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows: int | None = None, cols: int | None = None):
        ents = tuple(tuple(Fraction(e) for e in row) for row in entries)
        if rows is None:
            rows = len(ents)
        if cols is None:
            if not ents:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(ents[0])
        if len(ents) != rows:
            raise ValueError("row count mismatch")
        for row in ents:
            if len(row) != cols:
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([(ZERO,) * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, rows: int) -> "Matrix":
        cols = len(columns)
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        return cls([[columns[j][i] for j in range(cols)] for i in range(rows)], rows, cols)

    @classmethod
    def from_rows(cls, row_vectors, cols: int) -> "Matrix":
        return cls(list(row_vectors), len(row_vectors), cols)

    # -- access --------------------------------------------------------------

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    # -- algebra --------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(
            [vec_add(r, s) for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return Matrix(
            [vec_sub(r, s) for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return Matrix([vec_neg(r) for r in self.entries], self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([vec_scale(c, r) for r in self.entries], self.rows, self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            acc = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = other.entries[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        return Matrix(out, self.rows, other.cols)

    def mat_vec(self, v) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for j, c in enumerate(v):
            if not c:
                continue
            for i, row in enumerate(self.entries):
                a = row[j]
                if a:
                    out[i] += a * c
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(
            [r + s for r, s in zip(self.entries, other.entries)],
            self.rows,
            self.cols + other.cols,
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by an explicit list of basis vectors."""

    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_matrix(self) -> Matrix:
        """Basis vectors as columns (ambient_dim x dim)."""
        return Matrix.from_columns(list(self.basis), self.ambient_dim)


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(R, pivot_columns, rank)``.  R is the unique RREF of m.
    """
    work = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pr = None
        for i in range(r, rows):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != ONE:
            inv = ONE / pv
            work[r] = [x * inv for x in work[r]]
        prow = work[r]
        for i in range(rows):
            if i == r:
                continue
            f = work[i][c]
            if f:
                work[i] = [x - f * y for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return Matrix(work, rows, cols), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def kernel_basis(m: Matrix) -> Subspace:
    """Basis of the null space {v : m v = 0}, one vector per free column."""
    reduced, pivots, rk = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.entries[r][fc]
        basis.append(tuple(v))
    return Subspace(m.cols, tuple(basis))


def solve(m: Matrix, v) -> tuple | None:
    """One exact solution of ``m x = v`` (free variables set to 0), or None."""
    if len(v) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = m.hstack(Matrix.from_columns([tuple(v)], m.rows))
    reduced, pivots, rk = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced.entries[r][m.cols]
    return tuple(x)


def column_space_basis(m: Matrix) -> Subspace:
    """The pivot columns of m, as a basis of its column space."""
    _, pivots, _ = rref(m)
    return Subspace(m.rows, tuple(m.column(c) for c in pivots))


def solve_membership(span: Subspace, v) -> tuple | None:
    """Coefficients c with (basis matrix) c = v, or None if v is outside."""
    if len(v) != span.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    if not span.basis:
        return () if vec_is_zero(v) else None
    return solve(span.as_matrix(), v)
