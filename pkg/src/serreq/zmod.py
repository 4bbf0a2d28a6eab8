"""Finitely presented abelian groups over Z.

An object is the cokernel of its relation matrix acting on row vectors; a
morphism is an integer matrix ``n_src x n_tgt`` acting from the right.
"""

from dataclasses import dataclass
from fractions import Fraction

from .category import AbelianCategory, DirectSum, Mor, Obj
from .errors import UsageError
from .intmat import IntMatrix, rational_rref, row_kernel, row_span_basis, solve_right


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^ngens / rowspan(relations)``; relations are kept in HNF."""
    ngens: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.ncols != self.ngens:
            raise UsageError("relation matrix must have one column per generator")

    @classmethod
    def presented(cls, ngens, relations=()):
        rel = relations if isinstance(relations, IntMatrix) else IntMatrix(relations, ngens)
        return cls(ngens, row_span_basis(rel))

    @property
    def rank(self):
        """Free rank, i.e. dim of Q (x) M."""
        return self.ngens - self.relations.nrows

    def __repr__(self):
        return f"FgAbGroup({self.ngens}, {self.relations.tolist()})"


class ZModCategory(AbelianCategory):
    """Finitely presented Z-modules, decided by Hermite normal forms."""

    name = "zmod"

    def __init__(self):
        super().__init__()
        self._zero = Obj(self, FgAbGroup.presented(0))

    # -- constructors ------------------------------------------------------

    def object(self, ngens, relations=()):
        return Obj(self, FgAbGroup.presented(ngens, relations))

    def free(self, n):
        return self.object(n)

    def cyclic(self, order):
        return self.object(1, [[order]])

    def morphism(self, source, target, matrix, check=True):
        self._own(source, target)
        A = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix, target.data.ngens)
        if A.shape != (source.data.ngens, target.data.ngens):
            raise UsageError(f"matrix shape {A.shape} does not fit "
                             f"{source.data.ngens} -> {target.data.ngens}")
        f = Mor(self, source, target, A)
        if check and not self._is_well_defined(f):
            raise UsageError("matrix does not respect the relations")
        return f

    def scalar(self, M, c):
        """Multiplication by the integer ``c`` on ``M``."""
        return Mor(self, M, M, IntMatrix.identity(M.data.ngens).scale(c))

    def _mor(self, source, target, A):
        return Mor(self, source, target, A)

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def _in_span(rows, R):
        return rows.nrows == 0 or solve_right(R, rows) is not None

    # -- hooks -------------------------------------------------------------

    def _identity(self, M):
        return self._mor(M, M, IntMatrix.identity(M.data.ngens))

    def _compose(self, f, g):
        return self._mor(f.source, g.target, f.data @ g.data)

    def _is_well_defined(self, f):
        A = f.data
        if A.shape != (f.source.data.ngens, f.target.data.ngens):
            return False
        return self._in_span(f.source.data.relations @ A, f.target.data.relations)

    def _is_equal(self, f, g):
        return self._in_span(f.data - g.data, f.target.data.relations)

    def _add(self, f, g):
        return self._mor(f.source, f.target, f.data + g.data)

    def _negate(self, f):
        return self._mor(f.source, f.target, -f.data)

    def _zero_morphism(self, M, N):
        return self._mor(M, N, IntMatrix.zeros(M.data.ngens, N.data.ngens))

    def _zero_object(self):
        return self._zero

    def _is_zero_object(self, M):
        G = M.data
        return G.relations == IntMatrix.identity(G.ngens)

    def _direct_sum(self, M1, M2):
        a, b = M1.data.ngens, M2.data.ngens
        S = self.object(a + b, M1.data.relations.block_diagonal(M2.data.relations))
        I = IntMatrix.identity(a + b)
        return DirectSum(
            S,
            self._mor(S, M1, I.columns(0, a)),
            self._mor(S, M2, I.columns(a, a + b)),
            self._mor(M1, S, I.select_rows(range(a))),
            self._mor(M2, S, I.select_rows(range(a, a + b))),
        )

    def _pairing(self, f1, f2):
        S = self._direct_sum(f1.target, f2.target).object
        return self._mor(f1.source, S, f1.data.hstack(f2.data))

    def _copairing(self, f1, f2):
        S = self._direct_sum(f1.source, f2.source).object
        return self._mor(S, f1.target, f1.data.vstack(f2.data))

    def _kernel(self, f):
        M, N = f.source.data, f.target.data
        stacked = f.data.vstack(N.relations)
        K = row_span_basis(row_kernel(stacked).columns(0, M.ngens))
        # K is a basis of the preimage lattice, which contains rowspan(R_M)
        rel = solve_right(K, M.relations)
        if rel is None:
            rel = IntMatrix.zeros(0, K.nrows)
        kobj = self.object(K.nrows, rel)
        return kobj, self._mor(kobj, f.source, K)

    def _cokernel(self, f):
        N = f.target.data
        cobj = self.object(N.ngens, N.relations.vstack(f.data))
        return cobj, self._mor(f.target, cobj, IntMatrix.identity(N.ngens))

    def _lift(self, along, tau):
        K, M = along.source.data, along.target.data
        X = solve_right(along.data.vstack(M.relations), tau.data)
        if X is None:
            return None
        x = self._mor(tau.source, along.source, X.columns(0, K.ngens))
        if not self._is_well_defined(x):
            return None
        return x

    def _colift(self, along, eta):
        Q = along.target.data
        V = solve_right(along.data.vstack(Q.relations), IntMatrix.identity(Q.ngens))
        if V is None:
            return None
        X = V.columns(0, along.source.data.ngens) @ eta.data
        x = self._mor(along.target, eta.target, X)
        if not self._is_well_defined(x) or not self._is_equal(self._compose(along, x), eta):
            return None
        return x

    def is_literal_identity(self, f):
        return f.source == f.target and f.data == IntMatrix.identity(f.source.data.ngens)


def zmod_category():
    return ZModCategory()


def torsion_subcategory(category):
    """Finitely generated torsion groups: rank zero."""
    from .serre import ThickSubcategory
    return ThickSubcategory(category, lambda M: M.data.rank == 0, name="torsion")


def _rational_basis(G):
    # quotient map Q^n -> Q (x) G and a section, in coordinates of non-pivot columns
    rref, pivots = rational_rref(G.relations.rows, G.ngens)
    free = [j for j in range(G.ngens) if j not in pivots]

    def project(v):
        v = [Fraction(a) for a in v]
        for row, c in zip(rref, pivots):
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return [v[j] for j in free]

    section = [[Fraction(int(j == k)) for j in range(G.ngens)] for k in free]
    return project, section


def rationalize_matrix(f):
    """Q-linear map Q (x) source -> Q (x) target of a Z-module morphism."""
    src_proj, src_sec = _rational_basis(f.source.data)
    tgt_proj, _ = _rational_basis(f.target.data)
    cols = list(zip(*f.data.rows)) if f.data.nrows else []
    out = []
    for s in src_sec:
        image = [sum(a * b for a, b in zip(s, c)) for c in cols] if cols else [0] * f.data.ncols
        out.append(tgt_proj(image))
    return out


def _rational_inverse(M):
    n = len(M)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    rref, pivots = rational_rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is not rationally invertible")
    return [r[n:] for r in rref[:n]]


def _rational_product(A, B, ncols):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] if B else [Fraction(0)] * ncols
            for row in A]


def rationalize(phi):
    """Rational matrix of a Z-morphism, or of a Gabriel morphism over Z.

    A Gabriel morphism ``[i, a, j]`` maps to ``Q(i)^-1 Q(a) Q(j)^-1``; its
    domain and codomain are rationally invertible because their (co)kernels are
    torsion.
    """
    from .generalized import GeneralizedMorphism
    g = phi.data if isinstance(getattr(phi, "data", None), GeneralizedMorphism) else phi
    if isinstance(g, Mor):
        return rationalize_matrix(g)
    i_inv = _rational_inverse(rationalize_matrix(g.domain))
    a = rationalize_matrix(g.arrow)
    j_inv = _rational_inverse(rationalize_matrix(g.codomain))
    n_tgt = g.target.data.rank
    return _rational_product(_rational_product(i_inv, a, len(a[0]) if a else 0), j_inv, n_tgt)
