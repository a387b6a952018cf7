"""Exact dense linear algebra over arbitrary-precision rationals.

Every entry is a `fractions.Fraction`, so results are exact and algebraic
identities can be asserted with plain ``==``.  The elimination-based routines
here (Bareiss determinant, Gauss-Jordan inverse, minor-expansion adjugate)
are the independent oracles that the closed-form results elsewhere in the
package are checked against; none of them may ever fall back to floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "RationalLike",
    "DimensionMismatchError",
    "SingularMatrixError",
    "as_rational",
    "parse_rational_literal",
    "RMatrix",
    "identity",
    "zeros",
    "ones_column",
    "ones_matrix",
    "matmul",
    "add",
    "transpose",
    "scalar_mul",
    "matvec",
    "vecmat",
    "dot",
    "vec_sum",
    "outer_product",
    "det_bareiss",
    "inverse_exact",
    "adjugate",
    "cofactor_sum",
    "matrix_to_csv",
    "matrix_from_csv",
]

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class DimensionMismatchError(ValueError):
    """Operand shapes are not conformable."""


class SingularMatrixError(ArithmeticError):
    """Inversion was attempted on a matrix with determinant zero."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or string like ``'-3/4'`` to a Fraction.

    Floats are rejected outright: the package never does floating point.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rational_literal(text: str) -> Fraction:
    """Parse a canonical rational literal: ``p`` or ``p/q`` with q > 0.

    Stricter than `Fraction(str)`: decimal notation such as ``'1.5'`` is
    rejected so that emitted files round-trip through the same grammar.
    """
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal (expected p or p/q): {text!r}")
    return Fraction(text)


class RMatrix:
    """Immutable dense matrix of Fractions with optional row/column labels.

    Labels name the rows and columns of square graph-derived matrices
    (distance matrices and their relatives).  They survive transposition,
    relabelling-aware submatrix extraction and reindexing, and are dropped
    whenever a binary operation mixes two different labellings.  Equality
    compares shape and entries only.
    """

    __slots__ = ("_rows", "_labels")

    def __init__(
        self,
        rows: Iterable[Iterable[RationalLike]],
        labels: Sequence[str] | None = None,
    ):
        rows_t = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not rows_t:
            raise DimensionMismatchError("matrix needs at least one row")
        width = len(rows_t[0])
        if width == 0 or any(len(r) != width for r in rows_t):
            raise DimensionMismatchError("rows must be nonempty and equal length")
        if labels is not None:
            labels = tuple(str(v) for v in labels)
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate labels")
            if len(rows_t) != len(labels) or width != len(labels):
                raise DimensionMismatchError(
                    "labels require a square matrix of matching order"
                )
        self._rows = rows_t
        self._labels = labels

    # -- shape and access ------------------------------------------------

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def order(self) -> int:
        if not self.is_square:
            raise DimensionMismatchError("order is defined for square matrices only")
        return self.nrows

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def at(self, row_label: str, col_label: str) -> Fraction:
        """Entry addressed by labels instead of indexes."""
        if self._labels is None:
            raise ValueError("matrix has no labels")
        return self._rows[self._labels.index(row_label)][self._labels.index(col_label)]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    # -- structural ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        tag = f", labels={self._labels!r}" if self._labels else ""
        return f"RMatrix([{body}]{tag})"

    def with_labels(self, labels: Sequence[str] | None) -> "RMatrix":
        return RMatrix(self._rows, labels)

    def reindex(self, new_labels: Sequence[str]) -> "RMatrix":
        """Permute rows and columns into the order given by `new_labels`."""
        if self._labels is None:
            raise ValueError("matrix has no labels to reindex by")
        if set(new_labels) != set(self._labels) or len(new_labels) != len(self._labels):
            raise ValueError("reindex labels must be a permutation of the labels")
        pos = [self._labels.index(v) for v in new_labels]
        rows = [[self._rows[i][j] for j in pos] for i in pos]
        return RMatrix(rows, new_labels)

    # -- arithmetic ------------------------------------------------------

    def _combined_labels(self, other: "RMatrix") -> tuple[str, ...] | None:
        if self._labels is not None and self._labels == other._labels:
            return self._labels
        return None

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        rows = [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)
        ]
        return RMatrix(rows, self._combined_labels(other))

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "RMatrix":
        return RMatrix([[-x for x in row] for row in self._rows], self._labels)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        cols = [other.column(j) for j in range(other.ncols)]
        rows = [[sum(a * b for a, b in zip(row, col)) for col in cols]
                for row in self._rows]
        labels = self._combined_labels(other) if self.shape == other.shape else None
        return RMatrix(rows, labels)

    def scale(self, k: RationalLike) -> "RMatrix":
        k = as_rational(k)
        return RMatrix([[k * x for x in row] for row in self._rows], self._labels)

    def __rmul__(self, k: RationalLike) -> "RMatrix":
        return self.scale(k)

    def transpose(self) -> "RMatrix":
        return RMatrix(
            [self.column(j) for j in range(self.ncols)], self._labels
        )


# -- constructors ---------------------------------------------------------


def identity(n: int, labels: Sequence[str] | None = None) -> RMatrix:
    one, zero = Fraction(1), Fraction(0)
    return RMatrix(
        [[one if i == j else zero for j in range(n)] for i in range(n)], labels
    )


def zeros(nrows: int, ncols: int | None = None) -> RMatrix:
    ncols = nrows if ncols is None else ncols
    zero = Fraction(0)
    return RMatrix([[zero] * ncols for _ in range(nrows)])


def ones_column(n: int) -> RMatrix:
    """The all-ones column as an n-by-1 matrix."""
    return RMatrix([[Fraction(1)] for _ in range(n)])


def ones_matrix(n: int, labels: Sequence[str] | None = None) -> RMatrix:
    one = Fraction(1)
    return RMatrix([[one] * n for _ in range(n)], labels)


# -- functional aliases over operators -------------------------------------


def matmul(a: RMatrix, b: RMatrix) -> RMatrix:
    return a @ b


def add(a: RMatrix, b: RMatrix) -> RMatrix:
    return a + b


def transpose(a: RMatrix) -> RMatrix:
    return a.transpose()


def scalar_mul(k: RationalLike, a: RMatrix) -> RMatrix:
    return a.scale(k)


# -- vector helpers ---------------------------------------------------------


def matvec(a: RMatrix, v: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """A @ v for a plain vector, returned as a tuple."""
    vv = [as_rational(x) for x in v]
    if a.ncols != len(vv):
        raise DimensionMismatchError(f"cannot apply {a.shape} to length {len(vv)}")
    return tuple(sum(x * y for x, y in zip(row, vv)) for row in a.rows)


def vecmat(v: Sequence[RationalLike], a: RMatrix) -> tuple[Fraction, ...]:
    """v^T @ A for a plain vector, returned as a tuple."""
    vv = [as_rational(x) for x in v]
    if a.nrows != len(vv):
        raise DimensionMismatchError(f"cannot apply length {len(vv)} to {a.shape}")
    return tuple(
        sum(x * a[i, j] for i, x in enumerate(vv)) for j in range(a.ncols)
    )


def dot(u: Sequence[RationalLike], v: Sequence[RationalLike]) -> Fraction:
    uu = [as_rational(x) for x in u]
    vv = [as_rational(x) for x in v]
    if len(uu) != len(vv):
        raise DimensionMismatchError("dot on different lengths")
    return sum((a * b for a, b in zip(uu, vv)), Fraction(0))


def vec_sum(v: Sequence[RationalLike]) -> Fraction:
    return sum((as_rational(x) for x in v), Fraction(0))


def outer_product(
    u: Sequence[RationalLike],
    v: Sequence[RationalLike],
    labels: Sequence[str] | None = None,
) -> RMatrix:
    uu = [as_rational(x) for x in u]
    vv = [as_rational(x) for x in v]
    return RMatrix([[a * b for b in vv] for a in uu], labels)


# -- elimination-based oracles ----------------------------------------------


def _require_square(a: RMatrix) -> int:
    if not a.is_square:
        raise DimensionMismatchError(f"square matrix required, got {a.shape}")
    return a.nrows


def det_bareiss(a: RMatrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Zero pivots are handled by row swaps with sign tracking; if a pivot
    column has no nonzero entry left, the determinant is zero.  On integer
    input all intermediate values stay integral (they are minors of A),
    which keeps the arithmetic small; rational input works identically.
    """
    n = _require_square(a)
    m = [list(row) for row in a.rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pk
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def inverse_exact(a: RMatrix) -> RMatrix:
    """Exact inverse by Gauss-Jordan elimination with row pivoting.

    Raises SingularMatrixError when no nonzero pivot exists.  Labels of the
    input carry over to the inverse.
    """
    n = _require_square(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return RMatrix([row[n:] for row in aug], a.labels)


def adjugate(a: RMatrix) -> RMatrix:
    """Classical adjugate: entry (j, i) is the (i, j) cofactor of A.

    Computed entry-by-entry from minors, independently of `inverse_exact`,
    so A @ adjugate(A) == det_bareiss(A) * I is a genuine cross-check and
    works for singular matrices too.  The adjugate of a 1-by-1 matrix is
    [[1]] (the empty minor has determinant one).
    """
    n = _require_square(a)
    if n == 1:
        return RMatrix([[Fraction(1)]], a.labels)
    rows = a.rows
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        minor_rows = rows[:i] + rows[i + 1:]
        for j in range(n):
            minor = RMatrix([r[:j] + r[j + 1:] for r in minor_rows])
            c = det_bareiss(minor)
            out[j][i] = -c if (i + j) % 2 else c
    return RMatrix(out, a.labels)


def cofactor_sum(a: RMatrix) -> Fraction:
    """Sum of all n^2 cofactors of A (equivalently j^T adjugate(A) j).

    Uses the rank-one update identity det(A + J) = det(A) + cof(A), where J
    is the all-ones matrix: two determinants instead of n^2 minors, valid
    for singular A as well.  Tests pin this against the literal adjugate
    entry sum at small sizes.
    """
    n = _require_square(a)
    bumped = RMatrix([[x + 1 for x in row] for row in a.rows])
    return det_bareiss(bumped) - det_bareiss(a)


# -- CSV ---------------------------------------------------------------------


def matrix_to_csv(a: RMatrix) -> str:
    """Serialize to CSV with canonical rational literals (`p` or `p/q`)."""
    return "\n".join(",".join(str(x) for x in row) for row in a.rows) + "\n"


def matrix_from_csv(text: str, labels: Sequence[str] | None = None) -> RMatrix:
    """Parse the CSV form emitted by `matrix_to_csv`; exact round-trip."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([parse_rational_literal(cell) for cell in line.split(",")])
    if not rows:
        raise ValueError("empty matrix text")
    return RMatrix(rows, labels)
