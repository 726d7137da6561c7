"""Exact dense linear algebra over a prime field GF(p).

Matrices are immutable and stored row-major as numpy int64 arrays with every
entry reduced to [0, p).  Subspaces are carried in a canonical reduced
column echelon form, so two equal subspaces always have bit-identical
representations; downstream code relies on this for deduplication and
fixpoint detection.  Zero-row and zero-column matrices are legal values
throughout (they are the maps into and out of the zero space).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "FieldMismatchError",
    "Matrix",
    "ShapeError",
    "SubspaceBasis",
    "hstack",
    "image_basis",
    "kernel_basis",
    "mat_mul",
    "quotient_map",
    "rank",
    "solve_membership",
    "subspace_sum",
    "vstack",
]


class ShapeError(ValueError):
    """Operand dimensions are incompatible."""


class FieldMismatchError(ValueError):
    """Operands live over different prime fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """The prime field GF(p); primality is checked by trial division."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an integer, got {p!r}")
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero residue."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.p})"


def _as_entries(data, rows: int | None, cols: int | None) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64)
    if a.ndim == 1 and a.size == 0:
        if rows is None or cols is None:
            raise ShapeError("empty matrix needs explicit row and column counts")
        a = a.reshape((rows, cols))
    if a.ndim != 2:
        raise ShapeError(f"matrix data must be two-dimensional, got shape {a.shape}")
    return a


class Matrix:
    """An exact rows x cols matrix over GF(p).

    Rows index the codomain basis, columns the domain basis.  Values are
    immutable; all arithmetic returns fresh matrices.
    """

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, entries, *, rows: int | None = None, cols: int | None = None):
        a = _as_entries(entries, rows, cols)
        if rows is not None and a.shape[0] != rows:
            raise ShapeError(f"expected {rows} rows, got {a.shape[0]}")
        if cols is not None and a.shape[1] != cols:
            raise ShapeError(f"expected {cols} columns, got {a.shape[1]}")
        a = np.mod(a, field.p)
        a.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- construction ------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], *, cols: int | None = None) -> "Matrix":
        if len(rows) == 0:
            if cols is None:
                raise ShapeError("a 0-row matrix needs an explicit column count")
            return cls(field, np.zeros((0, cols), dtype=np.int64))
        return cls(field, [list(r) for r in rows])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def column_vector(cls, field: Field, v: Sequence[int]) -> "Matrix":
        return cls(field, np.asarray(list(v), dtype=np.int64).reshape((len(v), 1)))

    # -- views -------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only numpy view of the entries."""
        return self._a

    def row_block(self, lo: int, hi: int) -> "Matrix":
        return Matrix(self.field, self._a[lo:hi, :])

    def col_block(self, lo: int, hi: int) -> "Matrix":
        return Matrix(self.field, self._a[:, lo:hi])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a[:, j])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self._a.T)

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def is_zero(self) -> bool:
        return not self._a.any()

    # -- arithmetic --------------------------------------------------

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return Matrix(self.field, (self._a @ other._a) % self.field.p)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self._a.shape != other._a.shape:
            raise ShapeError(f"shape mismatch: {self._a.shape} vs {other._a.shape}")
        return Matrix(self.field, self._a + other._a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self._a.shape != other._a.shape:
            raise ShapeError(f"shape mismatch: {self._a.shape} vs {other._a.shape}")
        return Matrix(self.field, self._a - other._a)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, -self._a)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self._a * (c % self.field.p))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other._a.shape == self._a.shape
            and np.array_equal(other._a, self._a)
        )

    def __hash__(self):
        return hash((self.field.p, self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Matrix(GF({self.field.p}), {self.to_lists()!r})"


def hstack(field: Field, mats: Iterable[Matrix], *, rows: int | None = None) -> Matrix:
    """Concatenate matrices horizontally; `rows` pins the height when empty."""
    mats = list(mats)
    if not mats:
        if rows is None:
            raise ShapeError("hstack of nothing needs an explicit row count")
        return Matrix.zeros(field, rows, 0)
    return Matrix(field, np.concatenate([m.array for m in mats], axis=1))


def vstack(field: Field, mats: Iterable[Matrix], *, cols: int | None = None) -> Matrix:
    """Concatenate matrices vertically; `cols` pins the width when empty."""
    mats = list(mats)
    if not mats:
        if cols is None:
            raise ShapeError("vstack of nothing needs an explicit column count")
        return Matrix.zeros(field, 0, cols)
    return Matrix(field, np.concatenate([m.array for m in mats], axis=0))


# -- elimination core ------------------------------------------------


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p with the list of pivot columns."""
    m = a.copy()
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        sel = -1
        for k in range(r, n_rows):
            if m[k, c] % p:
                sel = k
                break
        if sel < 0:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for k in range(n_rows):
            if k != r and m[k, c]:
                m[k] = (m[k] - m[k, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m % p, pivots


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Composition of linear maps: the matrix product reduced mod p."""
    return a @ b


def rank(a: Matrix) -> int:
    """Rank over GF(p) by Gaussian elimination; 0 for empty matrices."""
    if a.rows == 0 or a.cols == 0:
        return 0
    _, pivots = _rref(a.array, a.field.p)
    return len(pivots)


def invert(a: Matrix) -> Matrix:
    """Inverse of a square invertible matrix."""
    if a.rows != a.cols:
        raise ShapeError("only square matrices can be inverted")
    n = a.rows
    aug = np.concatenate([a.array, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = _rref(aug, a.field.p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(a.field, red[:, n:])


class SubspaceBasis:
    """A subspace of GF(p)^n carried as a canonical reduced-column-echelon basis.

    The basis columns are independent, each column's topmost nonzero entry is 1
    at a strictly increasing row, and those pivot rows are zero in every other
    column.  Equality of subspaces is therefore plain value equality.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix):
        if basis.rows != ambient_dim:
            raise ShapeError(f"basis rows {basis.rows} != ambient dimension {ambient_dim}")
        canon = _column_canonical(basis)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", canon)

    def __setattr__(self, name, value):
        raise AttributeError("SubspaceBasis is immutable")

    @classmethod
    def from_span(cls, field: Field, ambient_dim: int, vectors: Matrix) -> "SubspaceBasis":
        if vectors.field != field:
            raise FieldMismatchError(f"{vectors.field} vs {field}")
        return cls(ambient_dim, vectors)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, Matrix.zeros(field, ambient_dim, 0))

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.cols

    def pivot_rows(self) -> list[int]:
        """Row index of each column's leading 1, in column order."""
        out = []
        arr = self.basis.array
        for j in range(self.basis.cols):
            nz = np.nonzero(arr[:, j])[0]
            out.append(int(nz[0]))
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return solve_membership(self, v)

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and other.ambient_dim == self.ambient_dim
            and other.basis == self.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} of GF({self.field.p})^{self.ambient_dim})"


def _column_canonical(m: Matrix) -> Matrix:
    """Reduced column echelon form with zero columns dropped."""
    if m.cols == 0:
        return m
    red, pivots = _rref(m.array.T, m.field.p)
    return Matrix(m.field, red[: len(pivots), :].T)


def kernel_basis(a: Matrix) -> SubspaceBasis:
    """Canonical basis of the null space {x : a x = 0}."""
    p = a.field.p
    if a.cols == 0:
        return SubspaceBasis.zero(a.field, 0)
    red, pivots = _rref(a.array, p)
    free = [c for c in range(a.cols) if c not in pivots]
    vecs = np.zeros((a.cols, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        vecs[c, k] = 1
        for r, pc in enumerate(pivots):
            vecs[pc, k] = (-red[r, c]) % p
    return SubspaceBasis(a.cols, Matrix(a.field, vecs))


def image_basis(a: Matrix) -> SubspaceBasis:
    """Canonical basis of the column span."""
    return SubspaceBasis.from_span(a.field, a.rows, a)


def quotient_map(ambient_dim: int, w: SubspaceBasis) -> Matrix:
    """Surjection q : GF(p)^n -> GF(p)^(n - dim w) with kernel exactly w.

    The echelon basis of w is extended by standard unit vectors on its
    non-pivot coordinates; the complement rows of the inverse change of
    basis give the quotient.
    """
    if w.ambient_dim != ambient_dim:
        raise ShapeError(f"subspace ambient {w.ambient_dim} != {ambient_dim}")
    field = w.field
    pivots = set(w.pivot_rows())
    ext = np.zeros((ambient_dim, ambient_dim - w.dim), dtype=np.int64)
    for k, r in enumerate(r for r in range(ambient_dim) if r not in pivots):
        ext[r, k] = 1
    change = hstack(field, [w.basis, Matrix(field, ext)], rows=ambient_dim)
    return invert(change).row_block(w.dim, ambient_dim)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of span(a ∪ b)."""
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    return SubspaceBasis.from_span(a.field, a.ambient_dim, hstack(a.field, [a.basis, b.basis]))


def solve_membership(w: SubspaceBasis, v: Sequence[int]) -> bool:
    """True iff the vector lies in the span of w."""
    v = list(v)
    if len(v) != w.ambient_dim:
        raise ShapeError(f"vector length {len(v)} != ambient {w.ambient_dim}")
    if w.ambient_dim == 0:
        return True
    col = Matrix.column_vector(w.field, v)
    if w.dim == 0:
        return col.is_zero()
    aug = hstack(w.field, [w.basis, col])
    return rank(aug) == w.dim
