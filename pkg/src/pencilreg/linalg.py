"""Exact dense linear algebra over a :class:`~pencilreg.field.Field`.

Everything is built on one routine, :func:`rref`.  Subspaces are carried as
:class:`SubspaceBasis` objects whose basis matrix, transposed, is in reduced
row echelon form; two subspaces are equal exactly when their bases are equal
entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ContractViolation, SingularMatrixError, UsageError
from .field import Field

__all__ = [
    "Matrix",
    "SubspaceBasis",
    "rref",
    "rank",
    "image_basis",
    "kernel_basis",
    "span",
    "preimage",
    "coords_in_basis",
    "coords_matrix",
    "extend_to_complement",
    "quotient_coords",
    "quotient_coords_matrix",
    "invert",
]


class Matrix:
    """An immutable ``nrows x ncols`` matrix over an exact field.

    Entries are stored row-major as a tuple of row tuples.  Matrices with
    zero rows or zero columns are allowed and keep their other dimension.
    """

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], nrows: int | None = None,
                 ncols: int | None = None):
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            if not data:
                raise UsageError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise UsageError(f"ragged or mis-sized rows for a {nrows}x{ncols} matrix")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows = data

    @classmethod
    def _raw(cls, field, nrows, ncols, rows) -> "Matrix":
        # trusted constructor: entries already belong to `field`
        m = object.__new__(cls)
        m.field = field
        m.nrows = nrows
        m.ncols = ncols
        m._rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = [list(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise UsageError("column length does not match nrows")
        return cls._raw(field, nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    @classmethod
    def block_diag(cls, field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        r0 = c0 = 0
        for b in blocks:
            if b.field != field:
                raise UsageError(f"block over {b.field!r} in a direct sum over {field!r}")
            for i, row in enumerate(b._rows):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(field, m, n, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, self.ncols, self.nrows,
                           [[r[j] for r in self._rows] for j in range(self.ncols)])

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise UsageError(f"expected a Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise UsageError(f"mixed fields {self.field!r} and {other.field!r}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        ocols = [other.column(j) for j in range(other.ncols)]
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix._raw(self.field, self.nrows, other.ncols, out)

    def apply(self, v: Sequence) -> tuple:
        """Return the matrix-vector product as a tuple."""
        if len(v) != self.ncols:
            raise UsageError(f"vector of length {len(v)} for a {self.shape} matrix")
        z = self.field.zero
        out = []
        for r in self._rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise UsageError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.field, self.nrows, self.ncols,
                           [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, self.nrows, self.ncols, [[-a for a in r] for r in self._rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, self.nrows, self.ncols, [[c * a for a in r] for r in self._rows])

    def hstack(self, *others: "Matrix") -> "Matrix":
        rows = [list(r) for r in self._rows]
        ncols = self.ncols
        for o in others:
            self._check(o)
            if o.nrows != self.nrows:
                raise UsageError("hstack needs equal row counts")
            for r, s in zip(rows, o._rows):
                r.extend(s)
            ncols += o.ncols
        return Matrix._raw(self.field, self.nrows, ncols, rows)

    def vstack(self, *others: "Matrix") -> "Matrix":
        rows = list(self._rows)
        nrows = self.nrows
        for o in others:
            self._check(o)
            if o.ncols != self.ncols:
                raise UsageError("vstack needs equal column counts")
            rows.extend(o._rows)
            nrows += o.nrows
        return Matrix._raw(self.field, nrows, self.ncols, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, len(rows), len(cols),
                           [[self._rows[i][j] for j in cols] for i in rows])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self._rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field!r}>[{body}]"


def _rref_rows(rows: list[list], ncols: int, stop: int | None = None):
    """In-place Gauss-Jordan elimination; pivots are searched in columns ``< stop``."""
    stop = ncols if stop is None else stop
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(stop):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        p = prow[c]
        if p != 1:
            ip = 1 / p
            prow = [x * ip for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = row[:c] + [x - f * y if y else x for x, y in zip(row[c:], prow[c:])]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form of ``M``.

    Pivoting takes the first nonzero entry in each column, scanning columns
    left to right.  Returns ``(R, pivots, rank)``.
    """
    rows = [list(r) for r in M._rows]
    pivots = _rref_rows(rows, M.ncols)
    return Matrix._raw(M.field, M.nrows, M.ncols, rows), pivots, len(pivots)


def rank(M: Matrix) -> int:
    return rref(M)[2]


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of ``F^ambient_dim`` given by a canonical column basis.

    ``basis.T`` is in reduced row echelon form and ``pivots`` lists its pivot
    columns, i.e. the coordinates at which the basis vectors carry their
    leading 1.
    """

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self) -> Field:
        return self.basis.field

    def vectors(self) -> list[tuple]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        c = [v[p] for p in self.pivots]
        return self.basis.apply(c) == tuple(v)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim


def span(field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> SubspaceBasis:
    """Canonical basis of the span of ``vectors`` in ``F^ambient_dim``."""
    rows = [list(v) for v in vectors]
    if any(len(r) != ambient_dim for r in rows):
        raise UsageError(f"vector length differs from ambient dimension {ambient_dim}")
    pivots = _rref_rows(rows, ambient_dim)
    basis = Matrix.from_columns(field, ambient_dim, rows[:len(pivots)])
    return SubspaceBasis(ambient_dim, basis, tuple(pivots))


def image_basis(M: Matrix) -> SubspaceBasis:
    """Canonical basis of the column space of ``M``."""
    return span(M.field, M.nrows, M.columns())


def _kernel_vectors(M: Matrix) -> list[list]:
    rows = [list(r) for r in M._rows]
    pivots = _rref_rows(rows, M.ncols)
    piv = set(pivots)
    free = [j for j in range(M.ncols) if j not in piv]
    z, o = M.field.zero, M.field.one
    out = []
    for f in free:
        v = [z] * M.ncols
        v[f] = o
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        out.append(v)
    return out


def kernel_basis(M: Matrix) -> SubspaceBasis:
    """Canonical basis of ``{x : M x = 0}``."""
    K = span(M.field, M.ncols, _kernel_vectors(M))
    if __debug__:
        assert K.dim + rank(M) == M.ncols, "rank-nullity violated"
    return K


def preimage(M: Matrix, W: SubspaceBasis) -> SubspaceBasis:
    """Canonical basis of ``{u : M u in span(W)}``.

    Computed from the kernel of ``[M | -W]``, keeping the first ``ncols(M)``
    coordinates of each kernel vector.
    """
    if W.ambient_dim != M.nrows:
        raise UsageError(f"subspace of F^{W.ambient_dim} is not in the codomain F^{M.nrows}")
    if W.field != M.field:
        raise UsageError("mixed fields in preimage")
    stacked = M.hstack(-W.basis)
    n = M.ncols
    return span(M.field, n, (v[:n] for v in _kernel_vectors(stacked)))


def coords_in_basis(W: SubspaceBasis, v: Sequence) -> tuple:
    """Coefficients ``c`` with ``W.basis @ c == v``.

    Raises :class:`ContractViolation` when ``v`` is not in the span.
    """
    if len(v) != W.ambient_dim:
        raise UsageError(f"vector of length {len(v)} in F^{W.ambient_dim}")
    c = tuple(v[p] for p in W.pivots)
    if W.basis.apply(c) != tuple(v):
        raise ContractViolation("vector does not lie in the subspace")
    return c


def coords_matrix(W: SubspaceBasis, M: Matrix) -> Matrix:
    """Apply :func:`coords_in_basis` to every column of ``M``."""
    cols = [coords_in_basis(W, c) for c in M.columns()]
    return Matrix.from_columns(M.field, W.dim, cols)


def extend_to_complement(W: SubspaceBasis) -> SubspaceBasis:
    """Standard basis vectors at the non-pivot coordinates of ``W``."""
    field = W.field
    n = W.ambient_dim
    piv = set(W.pivots)
    free = [j for j in range(n) if j not in piv]
    z, o = field.zero, field.one
    cols = [[o if i == j else z for i in range(n)] for j in free]
    return SubspaceBasis(n, Matrix.from_columns(field, n, cols), tuple(free))


def quotient_coords_matrix(W: SubspaceBasis, C: SubspaceBasis, M: Matrix) -> Matrix:
    """Coordinates along ``C`` of each column of ``M`` in ``F^n = span(W) + span(C)``."""
    n = W.ambient_dim
    if C.ambient_dim != n or M.nrows != n:
        raise UsageError("ambient dimensions differ")
    if W.dim + C.dim != n:
        raise UsageError("subspaces are not complementary: dimensions do not add up")
    rows = [list(r) for r in W.basis.hstack(C.basis, M)._rows]
    pivots = _rref_rows(rows, n + M.ncols, stop=n)
    if len(pivots) != n:
        raise UsageError("subspaces are not complementary: they intersect")
    return Matrix._raw(M.field, C.dim, M.ncols, [r[n:] for r in rows[W.dim:n]])


def quotient_coords(W: SubspaceBasis, C: SubspaceBasis, v: Sequence) -> tuple:
    """Coordinates of the coset ``v + span(W)`` with respect to ``C``."""
    col = Matrix.from_columns(W.field, W.ambient_dim, [list(v)])
    return quotient_coords_matrix(W, C, col).column(0)


def invert(M: Matrix) -> Matrix:
    """Exact inverse of a square matrix."""
    if not M.is_square():
        raise UsageError(f"cannot invert a non-square {M.shape} matrix")
    n = M.nrows
    rows = [list(r) for r in M.hstack(Matrix.identity(M.field, n))._rows]
    pivots = _rref_rows(rows, 2 * n, stop=n)
    if len(pivots) != n:
        raise SingularMatrixError(f"matrix of rank {len(pivots)} < {n} is singular")
    Minv = Matrix._raw(M.field, n, n, [r[n:] for r in rows])
    if __debug__:
        assert M @ Minv == Matrix.identity(M.field, n)
    return Minv
