"""Exact integer and rational matrix arithmetic.

Everything here operates on arbitrary-precision Python ints and
fractions.Fraction, so results are always exact.  Determinants and ranks
use fraction-free (Bareiss-style) elimination to keep intermediate values
as integers; a zero-skipping cofactor expansion is provided as an
independent cross-check route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class MatrixError(ValueError):
    """Invalid matrix input."""


class NonSquareError(MatrixError):
    """Operation requires a square matrix."""


class SingularMatrixError(MatrixError):
    """Operation requires a nonsingular matrix."""


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable m x n matrix with integer entries, row-major."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise MatrixError("matrix must have at least one row and one column")
        n = len(self.entries[0])
        for row in self.entries:
            if len(row) != n:
                raise MatrixError("ragged rows")
            for e in row:
                if not isinstance(e, int):
                    raise MatrixError("entries must be integers, got %r" % (e,))

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        def to_int(e):
            i = int(e)
            if i != e:
                raise MatrixError("entries must be integers, got %r" % (e,))
            return i

        return cls(tuple(tuple(to_int(e) for e in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.entries)))

    def column_submatrix(self, cols) -> "IntegerMatrix":
        cols = tuple(cols)
        return IntegerMatrix(tuple(tuple(row[j] for j in cols) for row in self.entries))

    def delete_row_col(self, i: int, j: int) -> "IntegerMatrix":
        return IntegerMatrix(
            tuple(
                tuple(e for c, e in enumerate(row) if c != j)
                for r, row in enumerate(self.entries)
                if r != i
            )
        )

    def replace_column(self, j: int, col) -> "IntegerMatrix":
        col = tuple(int(c) for c in col)
        if len(col) != self.rows:
            raise MatrixError("column length mismatch")
        return IntegerMatrix(
            tuple(
                tuple(col[r] if c == j else e for c, e in enumerate(row))
                for r, row in enumerate(self.entries)
            )
        )

    def apply(self, x):
        """Return A.x as a tuple (entries of x may be int or Fraction)."""
        if len(x) != self.cols:
            raise MatrixError("vector length mismatch")
        return tuple(sum(a * v for a, v in zip(row, x)) for row in self.entries)

    def gram(self) -> "IntegerMatrix":
        """Return A.A^T (symmetric positive semidefinite)."""
        return IntegerMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(r1, r2)) for r2 in self.entries)
                for r1 in self.entries
            )
        )


def infinity_norm(a: IntegerMatrix) -> int:
    """Maximum over rows of the sum of absolute entry values."""
    return max(sum(abs(e) for e in row) for row in a.entries)


def rank(a: IntegerMatrix) -> int:
    """Exact rank via integer elimination (rows rescaled by their gcd)."""
    m, n = a.rows, a.cols
    rows = [list(r) for r in a.entries]
    rk = 0
    for c in range(n):
        piv = None
        for r in range(rk, m):
            if rows[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        prow = rows[rk]
        for r in range(rk + 1, m):
            f = rows[r][c]
            if f == 0:
                continue
            p = prow[c]
            row = [p * x - f * y for x, y in zip(rows[r], prow)]
            g = 0
            for x in row:
                g = gcd(g, x)
            rows[r] = [x // g for x in row] if g > 1 else row
        rk += 1
        if rk == m:
            break
    return rk


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NonSquareError("determinant requires a square matrix")
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for i in range(n - 1):
        piv = None
        for r in range(i, n):
            if a[r][i] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        pivval = a[i][i]
        for r in range(i + 1, n):
            arow = a[r]
            irow = a[i]
            f = arow[i]
            for c in range(i + 1, n):
                arow[c] = (arow[c] * pivval - f * irow[c]) // prev
            arow[i] = 0
        prev = pivval
    return sign * a[n - 1][n - 1]


def determinant_cofactor(m: IntegerMatrix) -> int:
    """Determinant via Laplace expansion along the first row.

    Independent of the elimination route; zero entries are skipped, so
    sparse (e.g. tridiagonal) matrices expand quickly.
    """
    if m.rows != m.cols:
        raise NonSquareError("determinant requires a square matrix")
    rows = m.entries

    def expand(top: int, cols: tuple[int, ...]) -> int:
        if len(cols) == 1:
            return rows[top][cols[0]]
        total = 0
        sign = 1
        for pos, c in enumerate(cols):
            e = rows[top][c]
            if e != 0:
                rest = cols[:pos] + cols[pos + 1 :]
                total += sign * e * expand(top + 1, rest)
            sign = -sign
        return total

    return expand(0, tuple(range(m.cols)))


def primitive_vector(x) -> tuple[int, ...]:
    """Canonical primitive integer form of a nonzero rational vector.

    Scales so that entries are integers with gcd 1 and the first nonzero
    entry is positive.  Parallel vectors map to the same result.
    """
    fr = [Fraction(v) for v in x]
    if all(v == 0 for v in fr):
        raise ValueError("zero vector has no primitive form")
    den = lcm(*(v.denominator for v in fr))
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _rref(rows: list[list[Fraction]]):
    """In-place reduced row echelon form; returns the pivot column list."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def nullspace_basis(a: IntegerMatrix) -> list[tuple[int, ...]]:
    """Basis of N(A), each vector in canonical primitive integer form.

    Empty list iff rank(A) = n.  Basis vectors come from the free columns
    of the reduced row echelon form, in increasing column order.
    """
    n = a.cols
    rows = [[Fraction(e) for e in row] for row in a.entries]
    pivots = _rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(primitive_vector(v))
    return basis


def solve_unique(a: IntegerMatrix, b) -> tuple[Fraction, ...]:
    """Unique solution of A.x = b via exact Gaussian elimination."""
    if a.rows != a.cols:
        raise NonSquareError("solve_unique requires a square matrix")
    n = a.rows
    if len(b) != n:
        raise MatrixError("right-hand side length mismatch")
    rows = [[Fraction(e) for e in row] + [Fraction(b[i])] for i, row in enumerate(a.entries)]
    pivots = _rref(rows)
    if len(pivots) < n or n in pivots:
        raise SingularMatrixError("matrix is singular")
    return tuple(rows[r][n] for r in range(n))


def cramer_solve(a: IntegerMatrix, b) -> tuple[Fraction, ...]:
    """Solve A.x = b for square nonsingular A via Cramer's rule.

    x_i = det(A_i) / det(A) where A_i has column i replaced by b.
    The right-hand side may be rational; it is cleared to integers first.
    """
    if a.rows != a.cols:
        raise NonSquareError("Cramer's rule requires a square matrix")
    det_a = determinant(a)
    if det_a == 0:
        raise SingularMatrixError("matrix is singular")
    bf = [Fraction(v) for v in b]
    den = lcm(*(v.denominator for v in bf)) if bf else 1
    bint = [int(v * den) for v in bf]
    out = []
    for i in range(a.cols):
        det_i = determinant(a.replace_column(i, bint))
        out.append(Fraction(det_i, den * det_a))
    return tuple(out)


def format_rational(x) -> str:
    """Render as "p/q" with q > 0 and gcd(p, q) = 1, or "p" when q = 1."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_matrix(text: str) -> IntegerMatrix:
    """Parse the text format: first line "m n", then m rows of n integers."""
    # tolerate unicode minus in hand-written files
    lines = [ln.strip() for ln in text.replace("−", "-").splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixError("empty matrix input")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixError("first line must be 'm n'")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MatrixError("first line must be 'm n'") from exc
    if m < 1 or n < 1:
        raise MatrixError("matrix dimensions must be positive")
    if len(lines) != m + 1:
        raise MatrixError("expected %d data rows, got %d" % (m, len(lines) - 1))
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n:
            raise MatrixError("expected %d entries per row, got %d" % (n, len(parts)))
        try:
            rows.append([int(p) for p in parts])
        except ValueError as exc:
            raise MatrixError("non-integer entry in %r" % ln) from exc
    return IntegerMatrix.from_rows(rows)


def format_matrix(a: IntegerMatrix) -> str:
    lines = ["%d %d" % (a.rows, a.cols)]
    for row in a.entries:
        lines.append(" ".join(str(e) for e in row))
    return "\n".join(lines) + "\n"
