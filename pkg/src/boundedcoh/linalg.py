"""Exact rational linear algebra on sparse matrices.

Everything is a fractions.Fraction; there is no float anywhere in this
package.  Matrices are stored as one dict per row mapping column index to a
nonzero entry, which keeps the boundary/coboundary computations cheap (those
matrices have a handful of entries per row).  Elimination uses deterministic
lexicographic pivoting so that kernels, images and solved witnesses are
byte-reproducible across runs.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _clean(row):
    return {j: x for j, x in row.items() if x}


class QMatrix:
    """Sparse matrix over the rationals.

    Treated as immutable after construction by convention; all operations
    return new matrices.
    """

    __slots__ = ["nrows", "ncols", "rows"]

    def __init__(self, nrows, ncols, rows=None):
        assert nrows >= 0 and ncols >= 0
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            assert len(rows) == nrows
            self.rows = [_clean(r) for r in rows]
        for r in self.rows:
            for j in r:
                assert 0 <= j < ncols

    @classmethod
    def from_rows(cls, dense_rows, ncols=None):
        """Build from a list of dense rows (lists of numbers)."""
        if ncols is None:
            ncols = len(dense_rows[0]) if dense_rows else 0
        rows = []
        for dr in dense_rows:
            assert len(dr) == ncols
            rows.append({j: Fraction(x) for j, x in enumerate(dr) if x})
        return cls(len(dense_rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    def entry(self, i, j):
        return self.rows[i].get(j, ZERO)

    def to_dense(self):
        return [[self.rows[i].get(j, ZERO) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def is_zero(self):
        return all(not r for r in self.rows)

    def transpose(self):
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                rows[j][i] = x
        return QMatrix(self.ncols, self.nrows, rows)

    def col(self, j):
        """Column j as a dense list."""
        return [r.get(j, ZERO) for r in self.rows]

    def col_dict(self, j):
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def matvec(self, v):
        """Apply to a dense vector, returning a dense vector."""
        assert len(v) == self.ncols
        out = []
        for r in self.rows:
            s = ZERO
            for j, x in r.items():
                if v[j]:
                    s += x * v[j]
            out.append(s)
        return out

    def matvec_dict(self, v):
        """Apply to a sparse {index: value} vector."""
        out = {}
        for i, r in enumerate(self.rows):
            s = ZERO
            for j, x in r.items():
                vj = v.get(j)
                if vj:
                    s += x * vj
            if s:
                out[i] = s
        return out

    def vecmat_dict(self, v):
        """Left-multiply by a sparse row vector: v^T M as {index: value}."""
        out = {}
        for i, x in v.items():
            if x:
                for j, y in self.rows[i].items():
                    out[j] = out.get(j, ZERO) + x * y
        return _clean(out)

    def __mul__(self, other):
        assert isinstance(other, QMatrix) and self.ncols == other.nrows
        rows = []
        for r in self.rows:
            acc = {}
            for j, x in r.items():
                for k, y in other.rows[j].items():
                    acc[k] = acc.get(k, ZERO) + x * y
            rows.append(_clean(acc))
        return QMatrix(self.nrows, other.ncols, rows)

    def __add__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        rows = []
        for r, s in zip(self.rows, other.rows):
            acc = dict(r)
            for j, y in s.items():
                acc[j] = acc.get(j, ZERO) + y
            rows.append(_clean(acc))
        return QMatrix(self.nrows, self.ncols, rows)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return QMatrix.zeros(self.nrows, self.ncols)
        return QMatrix(self.nrows, self.ncols,
                       [{j: c * x for j, x in r.items()} for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return "QMatrix(%d, %d, nnz=%d)" % (
            self.nrows, self.ncols, sum(len(r) for r in self.rows))

    def hstack(self, other):
        assert self.nrows == other.nrows
        rows = []
        for r, s in zip(self.rows, other.rows):
            acc = dict(r)
            for j, y in s.items():
                acc[j + self.ncols] = y
            rows.append(acc)
        return QMatrix(self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other):
        assert self.ncols == other.ncols
        return QMatrix(self.nrows + other.nrows, self.ncols,
                       [dict(r) for r in self.rows] +
                       [dict(r) for r in other.rows])

    def submatrix(self, row_idx, col_idx):
        colmap = {j: k for k, j in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            rows.append({colmap[j]: x for j, x in self.rows[i].items()
                         if j in colmap})
        return QMatrix(len(row_idx), len(col_idx), rows)


def rref(m):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots is the ordered list of pivot columns.
    Column scan is left to right, pivot row selection is topmost-first, so
    the output is deterministic.
    """
    rows = [dict(r) for r in m.rows]
    pivots = []
    pivot_row = 0
    for j in range(m.ncols):
        sel = None
        for i in range(pivot_row, m.nrows):
            if rows[i].get(j):
                sel = i
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        piv = rows[pivot_row][j]
        if piv != ONE:
            rows[pivot_row] = {k: x / piv for k, x in rows[pivot_row].items()}
        prow = rows[pivot_row]
        for i in range(m.nrows):
            if i == pivot_row:
                continue
            f = rows[i].get(j)
            if f:
                ri = rows[i]
                for k, x in prow.items():
                    val = ri.get(k, ZERO) - f * x
                    if val:
                        ri[k] = val
                    elif k in ri:
                        del ri[k]
        pivots.append(j)
        pivot_row += 1
        if pivot_row == m.nrows:
            break
    return QMatrix(m.nrows, m.ncols, rows), pivots


def rank(m):
    return len(rref(m)[1])


def kernel_basis(m):
    """Basis of {v : Mv = 0} as dense vectors, one per free column."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    basis = []
    for j in free:
        v = [ZERO] * m.ncols
        v[j] = ONE
        for i, pj in enumerate(pivots):
            x = r.rows[i].get(j)
            if x:
                v[pj] = -x
        basis.append(v)
    return basis


def image_basis(m):
    """Basis of the column space: the pivot columns of M itself."""
    _, pivots = rref(m)
    return [m.col(j) for j in pivots]


def solve(m, b):
    """One exact solution of Mx = b, or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    assert len(b) == m.nrows
    bcol = QMatrix(m.nrows, 1, [{0: Fraction(x)} if x else {} for x in b])
    aug = m.hstack(bcol)
    r, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for i, pj in enumerate(pivots):
        x[pj] = r.rows[i].get(m.ncols, ZERO)
    return x


def solve_in_span(vectors, target):
    """Coefficients expressing target as a combination of vectors, or None.

    vectors is a list of dense columns; all lengths must agree.
    """
    n = len(target)
    cols = QMatrix(n, len(vectors),
                   [{j: Fraction(vectors[j][i]) for j in range(len(vectors))
                     if vectors[j][i]} for i in range(n)])
    return solve(cols, target)


def columns_matrix(vectors, nrows):
    """Assemble dense column vectors into a QMatrix."""
    rows = []
    for i in range(nrows):
        rows.append({j: Fraction(v[i]) for j, v in enumerate(vectors) if v[i]})
    return QMatrix(nrows, len(vectors), rows)
