"""Sparse integer matrices, Smith normal form and exact solvers.

All arithmetic is on Python ``int`` (arbitrary precision) and
``fractions.Fraction``; nothing here touches floating point.
"""

from fractions import Fraction

import numpy as np

from .errors import ShapeMismatch

__all__ = [
    "IntMatrix",
    "smith_normal_form",
    "SNF",
    "solve_integer",
    "solve_mod1",
    "det",
]


class IntMatrix:
    """Sparse integer matrix stored by columns.

    ``cols[j]`` is a dict ``{row: value}`` with no zero values.

    >>> M = IntMatrix.from_dense([[1, 2], [0, 3]])
    >>> (M @ M).to_dense()
    [[1, 8], [0, 9]]
    """

    __slots__ = ("rows", "ncols", "cols")

    def __init__(self, rows, ncols, cols=None):
        self.rows = int(rows)
        self.ncols = int(ncols)
        if cols is None:
            cols = [dict() for _ in range(self.ncols)]
        elif len(cols) != self.ncols:
            raise ShapeMismatch("column list length differs from ncols")
        self.cols = cols

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, rows, ncols=None):
        if isinstance(rows, np.ndarray):
            if ncols is None and rows.ndim == 2:
                ncols = rows.shape[1]
            rows = rows.tolist()
        rows = [[int(v) for v in r] for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else (ncols or 0)
        if any(len(r) != n for r in rows):
            raise ShapeMismatch("ragged dense matrix")
        cols = [dict() for _ in range(n)]
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = v
        return cls(m, n, cols)

    @classmethod
    def from_triplets(cls, rows, ncols, entries):
        M = cls(rows, ncols)
        for i, j, v in entries:
            i, j, v = int(i), int(j), int(v)
            if not (0 <= i < M.rows and 0 <= j < M.ncols):
                raise ShapeMismatch(f"entry ({i},{j}) outside {M.shape}")
            if (i in M.cols[j]):
                raise ShapeMismatch(f"duplicate entry at ({i},{j})")
            if v:
                M.cols[j][i] = v
        return M

    @classmethod
    def from_columns(cls, rows, columns):
        return cls(rows, len(columns), [{i: v for i, v in c.items() if v} for c in columns])

    # -- views --------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, 0)

    def triplets(self):
        return sorted((i, j, v) for j, c in enumerate(self.cols) for i, v in c.items())

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.rows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def to_numpy(self):
        """Dense ``numpy`` array (``int64`` if it fits, else ``object``)."""
        dense = self.to_dense()
        big = any(abs(v) >= 2**62 for c in self.cols for v in c.values())
        return np.array(dense, dtype=object if big else np.int64).reshape(self.rows, self.ncols)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def to_json(self):
        return {"rows": self.rows, "cols": self.ncols,
                "entries": [[i, j, str(v)] for i, j, v in self.triplets()]}

    @classmethod
    def from_json(cls, data):
        return cls.from_triplets(data["rows"], data["cols"], data["entries"])

    # -- algebra ------------------------------------------------------------
    def apply(self, vec):
        """Image of a sparse vector ``{col: coeff}`` as ``{row: coeff}``."""
        out = {}
        cols = self.cols
        for j, a in vec.items():
            for i, v in cols[j].items():
                s = out.get(i, 0) + a * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other):
        if self.ncols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return IntMatrix(self.rows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                s = c.get(i, 0) + v
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            cols.append(c)
        return IntMatrix(self.rows, self.ncols, cols)

    def __neg__(self):
        return IntMatrix(self.rows, self.ncols, [{i: -v for i, v in c.items()} for c in self.cols])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if k == 0:
            return IntMatrix(self.rows, self.ncols)
        return IntMatrix(self.rows, self.ncols, [{i: k * v for i, v in c.items()} for c in self.cols])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.cols == other.cols

    def is_zero(self):
        return not any(self.cols)

    def transpose(self):
        return IntMatrix(self.ncols, self.rows, self.row_dicts())

    def first_nonzero(self):
        """Some ``(row, col)`` with a nonzero entry, or ``None``."""
        for j, c in enumerate(self.cols):
            if c:
                return min(c), j
        return None

    def __repr__(self):
        return f"<IntMatrix {self.rows}x{self.ncols}, nnz={self.nnz()}>"


def block_matrix(blocks, row_sizes, col_sizes):
    """Assemble ``blocks[(bi, bj)]`` (IntMatrix) into one matrix."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    cols = [dict() for _ in range(coff[-1])]
    for (bi, bj), M in blocks.items():
        if M.shape != (row_sizes[bi], col_sizes[bj]):
            raise ShapeMismatch(f"block {(bi, bj)} has shape {M.shape}")
        for j, c in enumerate(M.cols):
            tgt = cols[coff[bj] + j]
            for i, v in c.items():
                tgt[roff[bi] + i] = tgt.get(roff[bi] + i, 0) + v
    for c in cols:
        for i in [i for i, v in c.items() if not v]:
            del c[i]
    return IntMatrix(roff[-1], coff[-1], cols)


# ---------------------------------------------------------------------------
# Smith normal form (dense, exact)
# ---------------------------------------------------------------------------

class SNF:
    """Result of :func:`smith_normal_form`: ``U @ M @ V == D``.

    ``diagonal`` lists the nonzero invariant factors ``d1 | d2 | ...``;
    ``rank == len(diagonal)``.  ``U_inv``/``V_inv`` are filled in when
    requested.
    """

    def __init__(self, U, D, V, diagonal, U_inv=None, V_inv=None):
        self.U, self.D, self.V = U, D, V
        self.diagonal = diagonal
        self.U_inv, self.V_inv = U_inv, V_inv

    @property
    def rank(self):
        return len(self.diagonal)

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def _as_dense(M, ncols=None):
    if isinstance(M, IntMatrix):
        return M.to_dense(), M.rows, M.ncols
    if isinstance(M, np.ndarray):
        if M.ndim == 2:
            ncols = M.shape[1]
        M = M.tolist()
    M = [[int(v) for v in r] for r in M]
    return M, len(M), (len(M[0]) if M else (ncols or 0))


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, inverses=False):
    """Smith normal form with unimodular transforms.

    Returns an :class:`SNF` (unpackable as ``U, D, V``) with ``U M V = D``.
    Pivots are chosen with minimal absolute value, ties broken by the
    fewest nonzeros in the pivot row and column, to limit entry growth.

    >>> U, D, V = smith_normal_form([[2, 0], [0, 3]])
    >>> D.to_dense()
    [[1, 0], [0, 6]]
    """
    A, m, n = _as_dense(M)
    U = _eye(m)
    V = _eye(n)
    Ui = _eye(m) if inverses else None
    Vi = _eye(n) if inverses else None

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_add(dst, src, q):  # row dst += q * row src
        if not q:
            return
        a, b = A[dst], A[src]
        for c in range(n):
            if b[c]:
                a[c] += q * b[c]
        a, b = U[dst], U[src]
        for c in range(m):
            if b[c]:
                a[c] += q * b[c]
        if Ui is not None:
            for r in Ui:
                if r[dst]:
                    r[src] -= q * r[dst]

    def col_add(dst, src, q):  # col dst += q * col src
        if not q:
            return
        for r in A:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]
        if Vi is not None:
            a, b = Vi[src], Vi[dst]
            for c in range(n):
                if b[c]:
                    a[c] -= q * b[c]

    def row_neg(i):
        A[i] = [-v for v in A[i]]
        U[i] = [-v for v in U[i]]
        if Ui is not None:
            for r in Ui:
                r[i] = -r[i]

    diag = []
    t = 0
    while t < min(m, n):
        best, cands = None, []
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    a = abs(v)
                    if best is None or a < best:
                        best, cands = a, [(i, j)]
                    elif a == best:
                        cands.append((i, j))
        if best is None:
            break
        if len(cands) > 1:
            def weight(ij):
                r, c = ij
                return (sum(1 for x in A[r][t:] if x) + sum(1 for rr in range(t, m) if A[rr][c]), ij)
            i, j = min(cands[:64], key=weight)
        else:
            i, j = cands[0]
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    row_add(i, t, -q)
                    if A[i][t]:
                        row_swap(i, t)
                        changed = True
                        break
            if changed:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    col_add(j, t, -q)
                    if A[t][j]:
                        col_swap(j, t)
                        changed = True
                        break
            if changed:
                continue
            p = A[t][t]
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        diag.append(A[t][t])
        t += 1
    D = IntMatrix.from_dense(A, n)
    res = SNF(IntMatrix.from_dense(U, m), D, IntMatrix.from_dense(V, n), diag)
    if inverses:
        res.U_inv = IntMatrix.from_dense(Ui, m)
        res.V_inv = IntMatrix.from_dense(Vi, n)
    # keep dense copies for internal callers
    res._U, res._V, res._Ui, res._Vi = U, V, Ui, Vi
    return res


def det(M):
    """Exact determinant of a square integer matrix (Bareiss)."""
    A, m, n = _as_dense(M)
    if m != n:
        raise ShapeMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [r[:] for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _mat_vec(rows, vec):
    return [sum(a * b for a, b in zip(r, vec) if a) for r in rows]


def solve_integer(A, b):
    """An integer solution of ``A x = b`` or ``None``.

    The solution is canonical: free coordinates in the SNF basis are 0.

    >>> solve_integer([[2]], [3]) is None
    True
    >>> solve_integer([[2, 0], [0, 3]], [4, 9])
    [2, 3]
    """
    Ad, m, n = _as_dense(A)
    b = [int(v) for v in b]
    if len(b) != m:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {m}")
    snf = smith_normal_form(Ad)
    c = _mat_vec(snf._U, b)
    y = [0] * n
    for i, d in enumerate(snf.diagonal):
        if c[i] % d:
            return None
        y[i] = c[i] // d
    if any(c[i] for i in range(snf.rank, m)):
        return None
    return _mat_vec(snf._V, y)


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(str(v))


def mod1(x):
    """Reduce a rational into ``[0, 1)``."""
    x = _frac(x)
    return x - (x.numerator // x.denominator)


def solve_mod1(A, b):
    """A solution of ``A x = b`` over ``Q/Z`` (entries in ``[0, 1)``) or ``None``.

    Canonical choice: free SNF coordinates are 0 and each constrained
    coordinate ``d y = c`` takes ``y = c / d`` with ``c`` in ``[0, 1)``.

    >>> solve_mod1([[2]], ["1/2"])
    [Fraction(1, 4)]
    """
    Ad, m, n = _as_dense(A)
    b = [mod1(v) for v in b]
    if len(b) != m:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {m}")
    snf = smith_normal_form(Ad)
    c = [mod1(v) for v in _mat_vec(snf._U, b)]
    y = [Fraction(0)] * n
    for i, d in enumerate(snf.diagonal):
        y[i] = c[i] / d
    if any(c[i] for i in range(snf.rank, m)):
        return None
    return [mod1(v) for v in _mat_vec(snf._V, y)]
