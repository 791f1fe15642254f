"""Dense exact linear algebra over GF(p) and Q.

Everything routes through reduced row echelon form; results are exact, so
all downstream dimension counts (ranks, kernels, Ext groups) are equalities
with tolerance zero.  Matrices are immutable after construction.
"""

from fractions import Fraction

import numpy as np

from .fields import GF, QQ


class Mat:
    """An exact rows x cols matrix over a fixed field.

    0 x n and n x 0 matrices are legal (rank 0).  The underlying numpy
    buffer is marked read-only; use the arithmetic methods to derive new
    matrices.
    """

    __slots__ = ("field", "a")

    def __init__(self, field, array, _normalized=False):
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {a.shape}")
        if isinstance(field, GF):
            a = a.astype(np.int64, copy=True)
        else:
            a = a.astype(object, copy=True)
        if not _normalized:
            a = field.normalize(a)
        a.setflags(write=False)
        self.field = field
        self.a = a

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field.empty(rows, cols), _normalized=True)

    @classmethod
    def identity(cls, field, n):
        a = field.empty(n, n)
        one = field.coerce(1)
        for i in range(n):
            a[i, i] = one
        return cls(field, a, _normalized=True)

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        """Build from a list of row lists; entries may be ints or Fractions."""
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if nrows else 0)
        a = field.empty(nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                a[i, j] = field.coerce(x)
        return cls(field, a, _normalized=True)

    @classmethod
    def column(cls, field, entries):
        return cls.from_rows(field, [[x] for x in entries], cols=1)

    # -- basic queries -------------------------------------------------

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def is_zero(self):
        if self.a.size == 0:
            return True
        if self.field.dtype is object:
            return all(x == 0 for x in self.a.flat)
        return not self.a.any()

    def __eq__(self, other):
        if not isinstance(other, Mat) or other.field != self.field:
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.shape, self.signature()))

    def signature(self):
        """Hashable canonical token of the raw entries (not of the row space)."""
        if self.field.dtype is object:
            return (self.shape, tuple(str(x) for x in self.a.flat))
        return (self.shape, self.a.tobytes())

    def __repr__(self):
        return f"Mat({self.field!r}, {self.a.tolist()!r})"

    def tolist(self):
        return self.a.tolist()

    # -- arithmetic ----------------------------------------------------

    def __matmul__(self, other):
        if other.field != self.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.a.size == 0 or other.a.size == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat(self.field, self.a @ other.a)

    def __add__(self, other):
        if other.field != self.field or self.shape != other.shape:
            raise ValueError("shape/field mismatch")
        return Mat(self.field, self.a + other.a)

    def __sub__(self, other):
        if other.field != self.field or self.shape != other.shape:
            raise ValueError("shape/field mismatch")
        return Mat(self.field, self.a - other.a)

    def __neg__(self):
        return Mat(self.field, -self.a)

    def scale(self, c):
        c = self.field.coerce(c)
        return Mat(self.field, self.a * c)

    @property
    def T(self):
        return Mat(self.field, self.a.T, _normalized=True)

    def col(self, j):
        return Mat(self.field, self.a[:, j : j + 1], _normalized=True)

    def take_cols(self, idx):
        return Mat(self.field, self.a[:, list(idx)], _normalized=True)

    def take_rows(self, idx):
        return Mat(self.field, self.a[list(idx), :], _normalized=True)

    # -- echelon form and friends ---------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots) where R is the unique RREF of self and pivots is
        the strictly increasing tuple of pivot column indices.
        """
        f = self.field
        A = self.a.astype(self.a.dtype, copy=True)
        nrows, ncols = A.shape
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            # locate first nonzero entry in column c at or below row r
            col = A[r:, c]
            if f.dtype is object:
                nz = [i for i, x in enumerate(col) if x != 0]
                hit = nz[0] if nz else None
            else:
                nz = np.nonzero(col)[0]
                hit = int(nz[0]) if nz.size else None
            if hit is None:
                continue
            i = r + hit
            if i != r:
                A[[r, i], :] = A[[i, r], :]
            inv = f.inv(A[r, c])
            A[r, :] = f.normalize(A[r, :] * inv)
            other = A[:, c].copy()
            other[r] = 0
            A -= np.outer(other, A[r, :])
            A = f.normalize(A)
            pivots.append(c)
            r += 1
        return Mat(f, A, _normalized=True), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Columns form a basis of the right null space; cols = self.cols - rank."""
        f = self.field
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in set(pivots)]
        K = f.empty(self.cols, len(free))
        one = f.coerce(1)
        for k, j in enumerate(free):
            K[j, k] = one
            for r, pc in enumerate(pivots):
                K[pc, k] = f.neg(R.a[r, j])
        return Mat(f, K, _normalized=True)

    def solve(self, b):
        """Some x with self @ x = b, or None if the system is inconsistent.

        b may have several columns; they are solved simultaneously.
        """
        if b.rows != self.rows:
            raise ValueError(f"rhs has {b.rows} rows, expected {self.rows}")
        f = self.field
        aug = Mat(f, np.concatenate([self.a, b.a], axis=1), _normalized=True)
        R, pivots = aug.rref()
        if any(p >= self.cols for p in pivots):
            return None
        X = f.empty(self.cols, b.cols)
        for r, pc in enumerate(pivots):
            X[pc, :] = R.a[r, self.cols :]
        return Mat(f, X, _normalized=True)

    def column_space_canonical(self):
        """Canonical basis of the column space: rref of the transpose, zero rows
        dropped.  Two matrices have equal column spaces iff these coincide."""
        R, pivots = self.T.rref()
        return R.take_rows(range(len(pivots)))


def hstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    f = mats[0].field
    return Mat(f, np.concatenate([m.a for m in mats], axis=1), _normalized=True)


def vstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    f = mats[0].field
    return Mat(f, np.concatenate([m.a for m in mats], axis=0), _normalized=True)


def block_diag(field, mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    a = field.empty(rows, cols)
    r = c = 0
    for m in mats:
        a[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Mat(field, a, _normalized=True)


def rank_of_stack(mats):
    """Rank of the column span of several matrices with equal row count."""
    mats = [m for m in mats if m.cols]
    if not mats:
        return 0
    return hstack(mats).rank()
