"""Exact integer matrices: Hermite and Smith normal forms, integer linear systems.

Matrices act on row vectors from the right, so ``x @ A`` is the image of the
row vector ``x`` and composition is the plain product in diagrammatic order.
"""

from fractions import Fraction
from math import gcd


class IntMatrix:
    """Immutable integer matrix. 0 x n and n x 0 shapes are legal."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, entries, m=None, n=None):
        k = len(entries)
        m = k if m is None else m
        n = k if n is None else n
        return cls([[entries[i] if i == j and i < k else 0 for j in range(n)]
                    for i in range(m)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols]
                          for r in self.rows], other.ncols)

    def __add__(self, other):
        self._same_shape(other)
        return IntMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        return IntMatrix([[a - b for a, b in zip(r, s)]
                          for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        return IntMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def T(self):
        return IntMatrix([list(c) for c in zip(*self.rows)] if self.nrows else
                         [[] for _ in range(self.ncols)], self.nrows)

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def columns(self, start, stop):
        return IntMatrix([r[start:stop] for r in self.rows], stop - start)

    def select_rows(self, idx):
        return IntMatrix([self.rows[i] for i in idx], self.ncols)

    def nonzero_rows(self):
        return IntMatrix([r for r in self.rows if any(r)], self.ncols)

    def vstack(self, *others):
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("vstack column mismatch")
        return IntMatrix(self.rows + sum((o.rows for o in others), ()), self.ncols)

    def hstack(self, *others):
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("hstack row mismatch")
        rows = [sum((o.rows[i] for o in others), self.rows[i]) for i in range(self.nrows)]
        return IntMatrix(rows, self.ncols + sum(o.ncols for o in others))

    def block_diagonal(self, other):
        left = self.hstack(IntMatrix.zeros(self.nrows, other.ncols))
        right = IntMatrix.zeros(other.nrows, self.ncols).hstack(other)
        return left.vstack(right)


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _combine(rows, i, j, a, b, c, d):
    # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    ri, rj = rows[i], rows[j]
    rows[i] = [a * x + b * y for x, y in zip(ri, rj)]
    rows[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _hnf_lists(H, U):
    m = len(H)
    n = len(H[0]) if m else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, s, t = xgcd(a, b)
            _combine(H, r, i, s, t, -b // g, a // g)
            _combine(U, r, i, s, t, -b // g, a // g)
        p = H[r][c]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            p = -p
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf(A):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U @ A == H; H is in row echelon form
    with positive pivots, entries above each pivot reduced into [0, pivot),
    zero rows at the bottom.
    """
    H = A.tolist()
    U = IntMatrix.identity(A.nrows).tolist()
    H, U = _hnf_lists(H, U)
    return IntMatrix(H, A.ncols), IntMatrix(U, A.nrows)


def _is_diagonal(rows):
    return all(a == 0 for i, r in enumerate(rows) for j, a in enumerate(r) if i != j)


def snf(A):
    """Smith normal form: (D, U, V) with U @ A @ V == D, d1 | d2 | ... >= 0."""
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    while True:
        while not _is_diagonal(D):
            D, U = _hnf_lists(D, U)
            Dt = [list(c) for c in zip(*D)] if m else [[] for _ in range(n)]
            Vt = [list(c) for c in zip(*V)]
            Dt, Vt = _hnf_lists(Dt, Vt)
            D = [list(c) for c in zip(*Dt)] if n else [[] for _ in range(m)]
            V = [list(c) for c in zip(*Vt)]
        k = min(m, n)
        bad = next((i for i in range(k - 1)
                    if D[i][i] and D[i + 1][i + 1] % D[i][i]), None)
        if bad is None:
            break
        # add column bad+1 to column bad; the next row pass puts the gcd there
        for rows in (D, V):
            for r in rows:
                r[bad] += r[bad + 1]
    for i in range(min(m, n)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return IntMatrix(D, n), IntMatrix(U, m), IntMatrix(V, n)


def _solve_echelon(H, b):
    # y with y @ H == b for H in row echelon form, or None
    b = list(b)
    y = [0] * H.nrows
    for i, row in enumerate(H.rows):
        c = next((j for j, a in enumerate(row) if a), None)
        if c is None:
            break
        if any(b[j] for j in range(c)):
            return None
        q, rem = divmod(b[c], row[c])
        if rem:
            return None
        y[i] = q
        if q:
            b = [x - q * a for x, a in zip(b, row)]
    if any(b):
        return None
    return y


def solve_right(A, B):
    """Some X with X @ A == B, or None when the system has no integer solution.

    The full solution set is X + row_kernel(A)-combinations.
    """
    if A.ncols != B.ncols:
        raise ValueError(f"column mismatch: A has {A.ncols}, B has {B.ncols}")
    H, U = hnf(A)
    X = []
    for b in B.rows:
        y = _solve_echelon(H, b)
        if y is None:
            return None
        X.append([sum(yi * U.rows[i][j] for i, yi in enumerate(y) if yi)
                  for j in range(A.nrows)])
    return IntMatrix(X, A.nrows)


def row_kernel(A):
    """Rows form a basis of the lattice {x : x @ A == 0}."""
    H, U = hnf(A)
    rank = sum(1 for r in H.rows if any(r))
    return U.select_rows(range(rank, A.nrows))


def row_span_basis(A):
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    return hnf(A)[0].nonzero_rows()


def determinant(A):
    """Exact determinant via fraction-free Bareiss elimination."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def rational_rref(rows, ncols):
    """Reduced row echelon form over Q. Returns (rref rows, pivot columns)."""
    M = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rational_rank(rows, ncols):
    return len(rational_rref(rows, ncols)[1])


def gcd_all(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
