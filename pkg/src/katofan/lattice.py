"""Exact integer linear algebra: Smith normal form, kernels, lattice membership.

Everything here is arbitrary-precision integer (or Fraction) arithmetic; no
floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        ent = tuple(int(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError("expected %d entries, got %d" % (rows * cols, len(ent)))
        self.rows = rows
        self.cols = cols
        self.entries = ent

    @classmethod
    def from_rows(cls, row_list, cols: int | None = None) -> "IntMatrix":
        row_list = [tuple(r) for r in row_list]
        if cols is None:
            if not row_list:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(row_list[0])
        if any(len(r) != cols for r in row_list):
            raise ValueError("ragged rows")
        flat = [x for r in row_list for x in r]
        return cls(len(row_list), cols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vector) -> tuple:
        """Matrix-vector product M·v, v of length ``cols``."""
        v = tuple(vector)
        if len(v) != self.cols:
            raise ValueError("vector length %d != cols %d" % (len(v), self.cols))
        return tuple(sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.entries))


def smith_normal_form(matrix: IntMatrix):
    """Return (U, D, V) with U·M·V = D, U and V unimodular.

    D is diagonal with d1 | d2 | ... and all di >= 0.  Pivots are chosen as the
    entry of smallest nonzero absolute value, ties broken in row-major order,
    which makes the output deterministic.
    """
    m, n = matrix.rows, matrix.cols
    d = matrix.row_list()
    u = IntMatrix.identity(m).row_list()
    v = IntMatrix.identity(n).row_list()

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row[dst] += c*row[src]
        ds, dd = d[src], d[dst]
        for k in range(n):
            dd[k] += c * ds[k]
        us, ud = u[src], u[dst]
        for k in range(m):
            ud[k] += c * us[k]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, m):
            di = d[i]
            for j in range(t, n):
                x = di[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    where = (i, j)
        return where

    t = 0
    while t < min(m, n):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            p = d[t][t]
            restart = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    if d[i][t]:  # nonzero remainder beats the pivot
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    if d[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # row and column are clear; force divisibility on the rest
            offender = None
            for i in range(t + 1, m):
                if any(d[i][j] % p for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return (
        IntMatrix.from_rows(u, m) if m else IntMatrix(0, 0, []),
        IntMatrix.from_rows(d, n) if m else IntMatrix(0, n, []),
        IntMatrix.from_rows(v, n) if n else IntMatrix(n, 0, []),
    )


def snf_rank(d_matrix: IntMatrix) -> int:
    return sum(1 for i in range(min(d_matrix.rows, d_matrix.cols)) if d_matrix[i, i] != 0)


def kernel_basis(matrix: IntMatrix) -> list:
    """Basis of the saturated lattice {v in Z^cols : M·v = 0}.

    The result is a basis of a direct summand of Z^cols, so the kernel lattice
    equals its own saturation.
    """
    if matrix.rows == 0:
        return [tuple(1 if k == j else 0 for k in range(matrix.cols)) for j in range(matrix.cols)]
    _, dd, v = smith_normal_form(matrix)
    r = snf_rank(dd)
    return [v.column(j) for j in range(r, matrix.cols)]


def lattice_membership(basis, vector):
    """Integer coefficients c with sum(c_i * basis_i) = vector, or None.

    The basis vectors must be linearly independent; a ValueError is raised if
    they are not, or on a length mismatch.
    """
    vec = tuple(int(x) for x in vector)
    basis = [tuple(int(x) for x in b) for b in basis]
    k = len(basis)
    if k == 0:
        return () if all(x == 0 for x in vec) else None
    d = len(vec)
    if any(len(b) != d for b in basis):
        raise ValueError("dimension mismatch between basis and vector")
    cols = IntMatrix.from_rows(basis, d).transpose()  # d x k, columns = basis
    u, dd, v = smith_normal_form(cols)
    if snf_rank(dd) < k:
        raise ValueError("basis vectors are linearly dependent")
    y = u.apply(vec)
    w = []
    for i in range(k):
        di = dd[i, i]
        if y[i] % di:
            return None
        w.append(y[i] // di)
    if any(y[i] != 0 for i in range(k, d)):
        return None
    return v.apply(w)


def invert_unimodular(matrix: IntMatrix) -> IntMatrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = matrix.rows
    if matrix.cols != n:
        raise ValueError("matrix is not square")
    work = [[Fraction(matrix[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    out = []
    for i in range(n):
        for j in range(n):
            x = work[i][n + j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(x.numerator)
    return IntMatrix(n, n, out)


def row_hnf_basis(vectors, dim: int) -> list:
    """Canonical (row Hermite normal form) basis of the lattice generated by ``vectors``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    """
    rows = [list(map(int, vec)) for vec in vectors if any(vec)]
    if not rows:
        return []
    r = 0
    for col in range(dim):
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][col]]
            if not live:
                break
            i0 = min(live, key=lambda i: (abs(rows[i][col]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][col]:
            if rows[r][col] < 0:
                rows[r] = [-x for x in rows[r]]
            r += 1
        if r == len(rows):
            break
    basis = [row for row in rows[:r]]
    # reduce entries above each pivot
    pivots = []
    for row in basis:
        pc = next(j for j in range(dim) if row[j])
        pivots.append(pc)
    for k in range(len(basis) - 1, -1, -1):
        pc = pivots[k]
        for upper in range(k):
            q = basis[upper][pc] // basis[k][pc]
            if q:
                basis[upper] = [a - q * b for a, b in zip(basis[upper], basis[k])]
    return [tuple(row) for row in basis]


def saturation_basis(vectors, dim: int) -> list:
    """Canonical basis of the saturation {x : k·x in L for some k >= 1} of the row lattice L."""
    vecs = [tuple(v) for v in vectors if any(v)]
    if not vecs:
        return []
    perp = kernel_basis(IntMatrix.from_rows(vecs, dim))
    if not perp:
        return row_hnf_basis([tuple(1 if k == j else 0 for k in range(dim)) for j in range(dim)], dim)
    sat = kernel_basis(IntMatrix.from_rows(perp, dim))
    return row_hnf_basis(sat, dim)


def vec_gcd_primitive(vector):
    """Divide an integer vector by the gcd of its entries (sign preserved)."""
    g = 0
    for x in vector:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(vector)
    return tuple(x // g for x in vector)
