"""Finitely presented Z^r-graded modules over Q[x_1..x_n].

A module is ``S^n / rowspan(relations)`` with generator ``i`` in degree
``degrees[i]`` (so ``S(-a)`` has its generator in degree ``a``). A morphism is
a matrix of homogeneous polynomials acting on row vectors from the right; entry
``(i, j)`` has degree ``deg(source gen i) - deg(target gen j)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .category import AbelianCategory, DirectSum, Mor, Obj
from .errors import ConfigurationError, UnsupportedOperation, UsageError
from .groebner import (
    _freeze,
    _Reducer,
    express_raw,
    groebner_raw,
    ideal_quotient,
    in_span_raw,
    lead_term,
    intersect_ideals,
    radical_membership,
    syzygies_raw,
)
from .poly import GradedRing, Poly, PolyVector, mono_divides, mono_mul


# -- raw row arithmetic ----------------------------------------------------------

def _add_into(out, row, coef=1, comp_offset=0, mono=None):
    for (c, e), v in row.items():
        t = (c + comp_offset, e if mono is None else mono_mul(e, mono))
        nv = out.get(t, 0) + coef * v
        if nv:
            out[t] = nv
        else:
            out.pop(t, None)
    return out


def _row_times(row, B):
    """Row vector (raw dict) times a matrix given as a list of raw rows."""
    out = {}
    for (j, e), c in row.items():
        _add_into(out, B[j], c, mono=e)
    return out


def _poly_times_row(p, row):
    out = {}
    for e, c in p.items():
        _add_into(out, row, c, mono=e)
    return out


class PolyMatrix:
    """Immutable matrix of polynomials stored as sparse raw rows."""

    __slots__ = ("ncols", "rows", "_dicts", "_hash")

    def __init__(self, rows, ncols):
        self.ncols = ncols
        self.rows = tuple(r if isinstance(r, tuple) else _freeze(r) for r in rows)
        self._dicts = None
        self._hash = None

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def dicts(self):
        if self._dicts is None:
            self._dicts = [dict(r) for r in self.rows]
        return self._dicts

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {self.dicts()!r})"

    @classmethod
    def identity(cls, n, nvars):
        one = (0,) * nvars
        return cls([{(i, one): Fraction(1)} for i in range(n)], n)

    @classmethod
    def zeros(cls, m, n):
        return cls([{} for _ in range(m)], n)

    def __matmul__(self, other):
        B = other.dicts()
        return PolyMatrix([_row_times(r, B) for r in self.dicts()], other.ncols)

    def __add__(self, other):
        return PolyMatrix([_add_into(dict(a), b) for a, b in zip(self.dicts(), other.dicts())],
                          self.ncols)

    def __neg__(self):
        return PolyMatrix([{t: -v for t, v in r.items()} for r in self.dicts()], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return PolyMatrix([{t: c * v for t, v in r.items()} for r in self.dicts()], self.ncols)

    def vstack(self, other):
        return PolyMatrix(self.rows + other.rows, self.ncols)

    def hstack(self, other):
        rows = [_add_into(dict(a), b, comp_offset=self.ncols)
                for a, b in zip(self.dicts(), other.dicts())]
        return PolyMatrix(rows, self.ncols + other.ncols)

    def entries(self, ring):
        """Dense list of lists of :class:`Poly`."""
        out = [[dict() for _ in range(self.ncols)] for _ in self.rows]
        for i, r in enumerate(self.dicts()):
            for (j, e), c in r.items():
                out[i][j][e] = c
        return [[Poly(ring, d) for d in row] for row in out]

    @classmethod
    def from_entries(cls, ring, entries, ncols):
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise UsageError(f"matrix row has {len(row)} entries, expected {ncols}")
            raw = {}
            for j, p in enumerate(row):
                for e, c in ring.coerce(p).terms.items():
                    raw[(j, e)] = c
            rows.append(raw)
        return cls(rows, ncols)


# -- modules -------------------------------------------------------------------

@dataclass(frozen=True)
class GradedModule:
    """``S^n / rowspan(relations)``; relations are kept as a reduced Gröbner basis
    so structural equality means equal presentations."""
    ring: GradedRing
    degrees: tuple
    relations: PolyMatrix

    @property
    def ngens(self):
        return len(self.degrees)

    @classmethod
    def presented(cls, ring, degrees, relations):
        degrees = tuple(tuple(d) if not isinstance(d, int) else (d,) for d in degrees)
        for d in degrees:
            if len(d) != ring.grading_rank:
                raise UsageError(f"generator degree {d} does not match the grading rank")
        rel = relations if isinstance(relations, PolyMatrix) else PolyMatrix(relations, len(degrees))
        if rel.ncols != len(degrees):
            raise UsageError("relation rows must have one entry per generator")
        for k, row in enumerate(rel.dicts()):
            if row_degree(ring, degrees, row) is False:
                raise UsageError(f"relation row {k} is not homogeneous")
        gb = groebner_raw(rel.dicts(), ideal=len(degrees) == 1)
        return cls(ring, degrees, PolyMatrix(gb, len(degrees)))

    def relation_vectors(self):
        return [PolyVector(self.ring, self.ngens, r) for r in self.relations.dicts()]

    def __repr__(self):
        rows = [[str(p) for p in r] for r in self.relations.entries(self.ring)]
        return f"GradedModule(degrees={list(self.degrees)}, relations={rows})"


def row_degree(ring, degrees, row):
    """Common degree of a raw row (None if zero, False if inhomogeneous)."""
    deg = None
    for (c, e) in row:
        d = tuple(a + b for a, b in zip(ring.degree_of(e), degrees[c]))
        if deg is None:
            deg = d
        elif d != deg:
            return False
    return deg


class GrModCategory(AbelianCategory):
    """Finitely presented graded modules and degree-preserving maps."""

    def __init__(self, ring):
        super().__init__()
        self.ring = ring
        self.name = "grmod(" + ",".join(ring.variables) + ")"
        self._zero = Obj(self, GradedModule.presented(ring, (), PolyMatrix([], 0)))

    # -- constructors ------------------------------------------------------

    def _deg(self, d):
        return (d,) if isinstance(d, int) else tuple(d)

    def module(self, degrees, relations=()):
        """Module from generator degrees and relation rows (poly strings or Polys)."""
        degrees = [self._deg(d) for d in degrees]
        rel = PolyMatrix.from_entries(self.ring, relations, len(degrees))
        return Obj(self, GradedModule.presented(self.ring, degrees, rel))

    def free(self, degrees):
        return self.module(degrees)

    def twist(self, a):
        """``S(a)``: free of rank one with generator in degree ``-a``."""
        a = self._deg(a)
        return self.free([tuple(-x for x in a)])

    def quotient_ring(self, ideal, degree=None):
        """``S/I`` as a cyclic module (generator in degree ``degree``, default 0)."""
        d = self._deg(degree) if degree is not None else self.ring.zero_degree()
        return self.module([d], [[g] for g in ideal])

    def shifted(self, M, k):
        """``M(-k)``: same presentation with generator degrees raised by ``k``."""
        k = self._deg(k)
        degrees = [tuple(a + b for a, b in zip(d, k)) for d in M.data.degrees]
        return self._obj(degrees, M.data.relations)

    def _times(self, p, n):
        p = self.ring.coerce(p)
        return PolyMatrix([{(i, e): c for e, c in p.terms.items()} for i in range(n)], n)

    def multiplication(self, M, p, shift):
        """Multiplication by the form ``p`` of degree ``shift``: ``M(-shift) -> M``."""
        return self._mor(self.shifted(M, shift), M, self._times(p, M.data.ngens))

    def multiplication_up(self, M, p, shift):
        """Multiplication by ``p``: ``M -> M(shift)``."""
        neg = tuple(-a for a in self._deg(shift))
        return self._mor(M, self.shifted(M, neg), self._times(p, M.data.ngens))

    def morphism(self, source, target, entries, check=True):
        self._own(source, target)
        A = entries if isinstance(entries, PolyMatrix) else PolyMatrix.from_entries(
            self.ring, entries, target.data.ngens)
        if A.shape != (source.data.ngens, target.data.ngens):
            raise UsageError(f"matrix shape {A.shape} does not fit "
                             f"{source.data.ngens} -> {target.data.ngens}")
        f = Mor(self, source, target, A)
        if check:
            bad = self._homogeneity_defect(f)
            if bad is not None:
                raise UsageError(f"matrix entry {bad} has the wrong degree")
            if not self._is_well_defined(f):
                raise UsageError("matrix does not respect the relations")
        return f

    def scalar(self, M, c):
        return Mor(self, M, M, PolyMatrix.identity(M.data.ngens, self.ring.nvars).scale(Fraction(c)))

    def _mor(self, source, target, A):
        return Mor(self, source, target, A)

    def _obj(self, degrees, relations):
        return Obj(self, GradedModule.presented(self.ring, degrees, relations))

    # -- helpers -----------------------------------------------------------

    def _homogeneity_defect(self, f):
        src, tgt = f.source.data.degrees, f.target.data.degrees
        for i, row in enumerate(f.data.dicts()):
            for (j, e) in row:
                want = tuple(a - b for a, b in zip(src[i], tgt[j]))
                if self.ring.degree_of(e) != want:
                    return (i, j)
        return None

    def _rows_in_span(self, rows, M):
        R = M.data.relations.dicts()
        if not R:
            return all(not r for r in rows)
        red = _Reducer(R)
        return all(not r or not red.reduce(r)[0] for r in rows)

    # -- hooks -------------------------------------------------------------

    def _identity(self, M):
        return self._mor(M, M, PolyMatrix.identity(M.data.ngens, self.ring.nvars))

    def _compose(self, f, g):
        return self._mor(f.source, g.target, f.data @ g.data)

    def _is_well_defined(self, f):
        A = f.data
        if not isinstance(A, PolyMatrix) or A.shape != (f.source.data.ngens, f.target.data.ngens):
            return False
        if self._homogeneity_defect(f) is not None:
            return False
        return self._rows_in_span((f.source.data.relations @ A).dicts(), f.target)

    def _is_equal(self, f, g):
        return self._rows_in_span((f.data - g.data).dicts(), f.target)

    def _add(self, f, g):
        return self._mor(f.source, f.target, f.data + g.data)

    def _negate(self, f):
        return self._mor(f.source, f.target, -f.data)

    def _zero_morphism(self, M, N):
        return self._mor(M, N, PolyMatrix.zeros(M.data.ngens, N.data.ngens))

    def _zero_object(self):
        return self._zero

    def _is_zero_object(self, M):
        n = M.data.ngens
        one = (0,) * self.ring.nvars
        return self._rows_in_span([{(i, one): Fraction(1)} for i in range(n)], M)

    def _direct_sum(self, M1, M2):
        a, b = M1.data.ngens, M2.data.ngens
        R1, R2 = M1.data.relations, M2.data.relations
        rel = R1.hstack(PolyMatrix.zeros(R1.nrows, b)).vstack(
            PolyMatrix.zeros(R2.nrows, a).hstack(R2))
        S = self._obj(M1.data.degrees + M2.data.degrees, rel)
        I = PolyMatrix.identity(a + b, self.ring.nvars)
        cols1 = PolyMatrix([{t: v for t, v in r.items() if t[0] < a} for r in I.dicts()], a)
        cols2 = PolyMatrix([{(c - a, e): v for (c, e), v in r.items() if c >= a}
                            for r in I.dicts()], b)
        return DirectSum(
            S,
            self._mor(S, M1, cols1),
            self._mor(S, M2, cols2),
            self._mor(M1, S, PolyMatrix(I.rows[:a], a + b)),
            self._mor(M2, S, PolyMatrix(I.rows[a:], a + b)),
        )

    def _sum_object(self, M1, M2):
        return self._direct_sum(M1, M2).object

    def _pairing(self, f1, f2):
        return self._mor(f1.source, self._sum_object(f1.target, f2.target), f1.data.hstack(f2.data))

    def _copairing(self, f1, f2):
        return self._mor(self._sum_object(f1.source, f2.source), f1.target, f1.data.vstack(f2.data))

    def _kernel(self, f):
        M, N = f.source.data, f.target.data
        n = M.ngens
        nv = self.ring.nvars
        stacked = f.data.dicts() + N.relations.dicts()
        K = []
        for s in syzygies_raw(stacked, N.ngens, nv):
            k = {t: v for t, v in s.items() if t[0] < n}
            if k:
                K.append(k)
        K = _minimize_generators(K, M.relations.dicts())
        degrees = [row_degree(self.ring, M.degrees, k) for k in K]
        rel = []
        if K:
            m = len(K)
            for s in syzygies_raw(K + M.relations.dicts(), n, nv):
                r = {t: v for t, v in s.items() if t[0] < m}
                if r:
                    rel.append(r)
        kobj = self._obj(degrees, PolyMatrix(rel, len(K)))
        return kobj, self._mor(kobj, f.source, PolyMatrix(K, n))

    def _cokernel(self, f):
        N = f.target.data
        cobj = self._obj(N.degrees, N.relations.vstack(f.data))
        return cobj, self._mor(f.target, cobj, PolyMatrix.identity(N.ngens, self.ring.nvars))

    def _lift(self, along, tau):
        # complete for monos; for other morphisms a None may be a false negative
        K, M = along.source.data, along.target.data
        gens = along.data.dicts() + M.relations.dicts()
        X = _solve_rows(tau.data.dicts(), gens, M.ngens, self.ring.nvars, K.ngens)
        if X is None:
            return None
        x = self._mor(tau.source, along.source, PolyMatrix(X, K.ngens))
        return x if self._is_well_defined(x) else None

    def _colift(self, along, eta):
        # complete for epis
        Q = along.target.data
        one = (0,) * self.ring.nvars
        gens = along.data.dicts() + Q.relations.dicts()
        units = [{(j, one): Fraction(1)} for j in range(Q.ngens)]
        V = _solve_rows(units, gens, Q.ngens, self.ring.nvars, along.source.data.ngens)
        if V is None:
            return None
        X = PolyMatrix(V, along.source.data.ngens) @ eta.data
        x = self._mor(along.target, eta.target, X)
        if not self._is_well_defined(x) or not self._is_equal(self._compose(along, x), eta):
            return None
        return x

    def is_literal_identity(self, f):
        return f.source == f.target and f.data == PolyMatrix.identity(f.source.data.ngens,
                                                                      self.ring.nvars)


def _solve_rows(targets, gens, rank, nvars, keep):
    """For each target row, coefficients on ``gens`` (first ``keep`` returned)."""
    idx = [i for i, g in enumerate(gens) if g]
    sub = [gens[i] for i in idx]
    out = []
    for b in targets:
        if not b:
            out.append({})
            continue
        coeffs = express_raw(b, sub, rank, nvars)
        if coeffs is None:
            return None
        row = {}
        for pos, i in enumerate(idx):
            if i < keep:
                for e, c in coeffs[pos].items():
                    row[(i, e)] = c
        out.append(row)
    return out


def _minimize_generators(K, relations):
    """Drop generators that are redundant modulo the others and the relations."""
    out = [k for k in K if not in_span_raw(k, relations)]
    # try to drop generators of highest degree first (they are most often redundant)
    order = sorted(range(len(out)), key=lambda i: -sum(sum(e) for (_, e) in out[i]) / max(1, len(out[i])))
    alive = set(range(len(out)))
    for i in order:
        rest = [out[j] for j in sorted(alive) if j != i] + relations
        if rest and in_span_raw(out[i], rest):
            alive.discard(i)
    return [out[i] for i in sorted(alive)]


def grmod_category(ring):
    return GrModCategory(ring)


# -- Hilbert series ------------------------------------------------------------

def _poly_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
        if not out[k]:
            del out[k]
    return out


def _shift_series(a, d):
    return {k + d: v for k, v in a.items()}


def _minimal_monomials(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=8192)
def _numerator(gens, weights):
    # numerator of the Hilbert series of S / (monomials ``gens``)
    if not gens:
        return ((0, 1),)
    if any(not any(g) for g in gens):
        return ()
    *rest, m = gens
    rest = _minimal_monomials(rest)
    colon = _minimal_monomials(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    deg = sum(a * w for a, w in zip(m, weights))
    n = _poly_sub(dict(_numerator(rest, weights)), _shift_series(dict(_numerator(colon, weights)), deg))
    return tuple(sorted(n.items()))


def _z_weights(ring):
    if ring.grading_rank != 1 or any(d[0] <= 0 for d in ring.degrees):
        raise UnsupportedOperation("Hilbert series needs a positive Z-grading")
    return tuple(d[0] for d in ring.degrees)


def hilbert_series(M):
    """Numerator ``N(t)`` as ``{exponent: coefficient}``; the series is
    ``N(t) / prod(1 - t^deg(x_i))``."""
    M = M.data if isinstance(M, Obj) else M
    weights = _z_weights(M.ring)
    lead = [set() for _ in range(M.ngens)]
    for row in M.relations.dicts():
        c, e = lead_term(row)
        lead[c].add(e)
    total = {}
    for i, gens in enumerate(lead):
        num = dict(_numerator(_minimal_monomials(tuple(gens)), weights))
        for k, v in _shift_series(num, M.degrees[i][0]).items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in sorted(total.items()) if v}


def hilbert_function(M, d):
    """``dim_Q M_d`` from the Hilbert series."""
    M = M.data if isinstance(M, Obj) else M
    weights = _z_weights(M.ring)
    num = hilbert_series(M)
    if not num:
        return 0
    lo = min(num)
    # coefficients of 1 / prod(1 - t^w) up to degree d - lo
    top = d - lo
    if top < 0:
        return 0
    series = [1] + [0] * top
    for w in weights:
        for k in range(w, top + 1):
            series[k] += series[k - w]
    return sum(c * series[d - k] for k, c in num.items() if 0 <= d - k <= top)


def _divides_by_one_minus_t(num, times):
    coeffs = dict(num)
    for _ in range(times):
        if not coeffs:
            return True
        if sum(coeffs.values()) != 0:
            return False
        # synthetic division by (1 - t): q_k = sum_{j <= k} c_j
        lo, hi = min(coeffs), max(coeffs)
        q, acc = {}, 0
        for k in range(lo, hi):
            acc += coeffs.get(k, 0)
            if acc:
                q[k] = acc
        coeffs = q
    return True


def is_quasi_zero_proj(M):
    """Whether ``M`` has finite total dimension, i.e. its sheaf on P^n vanishes."""
    M = M.data if isinstance(M, Obj) else M
    if not M.ring.is_standard():
        raise UnsupportedOperation("the projective test needs the standard grading")
    return _divides_by_one_minus_t(hilbert_series(M), M.ring.nvars)


# -- toric charts and radicals ------------------------------------------------

@dataclass(frozen=True)
class ToricChartData:
    """Maximal cones as sets of variable indices, plus irrelevant ideal generators."""
    charts: tuple
    irrelevant: tuple = ()

    @classmethod
    def create(cls, charts, irrelevant=()):
        return cls(tuple(tuple(sorted(c)) for c in charts), tuple(irrelevant))

    def validate(self, ring):
        if not self.charts:
            raise UsageError("chart data needs at least one chart")
        for c in self.charts:
            if not c:
                raise UsageError("charts must be nonempty")
            for i in c:
                if not 0 <= i < ring.nvars:
                    raise UsageError(f"chart variable index {i} out of range")


def product_of_projective_lines(ring):
    """Chart data of P^1 x P^1 for a ring with variables (x0, x1, y0, y1)."""
    if ring.nvars != 4:
        raise UsageError("P^1 x P^1 needs four variables")
    x0, x1, y0, y1 = ring.gens()
    return ToricChartData.create([(0, 2), (0, 3), (1, 2), (1, 3)],
                                 (x0 * y0, x0 * y1, x1 * y0, x1 * y1))


def projective_space_charts(ring):
    return ToricChartData.create([(i,) for i in range(ring.nvars)], tuple(ring.gens()))


def is_quasi_zero_chart(M, charts):
    """Whether the module vanishes on every chart after substituting 1 for the
    variables outside it."""
    M = M.data if isinstance(M, Obj) else M
    charts.validate(M.ring)
    n = M.ngens
    if n == 0:
        return True
    one = (0,) * M.ring.nvars
    units = [{(i, one): Fraction(1)} for i in range(n)]
    for chart in charts.charts:
        drop = [i for i in range(M.ring.nvars) if i not in chart]
        rows = []
        for row in M.relations.dicts():
            sub = {}
            for (c, e), v in row.items():
                e2 = tuple(0 if i in drop else a for i, a in enumerate(e))
                _add_into(sub, {(c, e2): v})
            if sub:
                rows.append(sub)
        if not rows:
            return False
        red = _Reducer(groebner_raw(rows, ideal=n == 1))
        if any(red.reduce(u)[0] for u in units):
            return False
    return True


def annihilator(M):
    """Generators of the annihilator ideal of ``M``."""
    M = M.data if isinstance(M, Obj) else M
    ring = M.ring
    if M.ngens == 0:
        return [ring.one()]
    rels = M.relation_vectors()
    ann = None
    for i in range(M.ngens):
        e_i = PolyVector(ring, M.ngens, {(i, (0,) * ring.nvars): Fraction(1)})
        q = ideal_quotient(rels, e_i)
        ann = q if ann is None else intersect_ideals(ann, q)
        if not ann:
            return []
    return ann


def is_quasi_zero_radical(M, irrelevant):
    """Whether every generator of the irrelevant ideal is in the radical of Ann(M)."""
    ann = annihilator(M)
    return all(radical_membership(b, ann) for b in irrelevant)


# -- sheaf categories ------------------------------------------------------------

def quasi_zero_subcategory(category, test="proj", charts=None, irrelevant=None):
    from .serre import ThickSubcategory
    ring = category.ring
    if test == "proj":
        if not ring.is_standard():
            raise ConfigurationError("the projective zero test needs the standard Z-grading")
        return ThickSubcategory(category, is_quasi_zero_proj, name="quasi-zero")
    if test == "charts":
        if charts is None:
            raise ConfigurationError("the chart test needs chart data")
        charts.validate(ring)
        return ThickSubcategory(category, lambda M: is_quasi_zero_chart(M, charts),
                                name="quasi-zero")
    if test == "radical":
        gens = irrelevant if irrelevant is not None else (charts.irrelevant if charts else ())
        if not gens:
            raise ConfigurationError("the radical test needs irrelevant ideal generators")
        gens = [ring.coerce(g) for g in gens]
        return ThickSubcategory(category, lambda M: is_quasi_zero_radical(M, gens),
                                name="quasi-zero")
    raise ConfigurationError(f"unknown zero test {test!r}")


def coherent_sheaf_category(ring, zero_test="proj", charts=None, irrelevant=None, strict=False):
    """Quotient of graded modules by the quasi-zero modules of the chosen test."""
    from .serre import quotient_category
    A = grmod_category(ring)
    C = quasi_zero_subcategory(A, zero_test, charts=charts, irrelevant=irrelevant)
    return quotient_category(A, C, strict=strict)
