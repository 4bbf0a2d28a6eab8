"""Gröbner bases for submodules of free modules over Q[x_1..x_n].

Internally a module element is a dict ``{(component, exponent): Fraction}``
("raw" form). The public functions accept and return :class:`PolyVector`
(or :class:`Poly` for ideals). The order is degrevlex with position over term.
"""

import heapq
from fractions import Fraction
from functools import lru_cache

from .errors import UsageError
from .intmat import rational_rank, rational_rref
from .poly import (
    Poly,
    PolyVector,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    term_key,
)


# -- raw helpers ---------------------------------------------------------------

def _neg_key(t):
    # ascending order of this key is descending term order
    c, e = t
    return (c, -sum(e), e[::-1])


def lead_term(f):
    return max(f, key=term_key)


def _shift(f, m, coef, comp_offset=0):
    return {(c + comp_offset, mono_mul(e, m)): coef * v for (c, e), v in f.items()}


def _monic(f):
    lc = f[lead_term(f)]
    if lc == 1:
        return f
    inv = 1 / lc
    return {t: v * inv for t, v in f.items()}


class _Reducer:
    """A list of module elements indexed by leading component for division."""

    def __init__(self, G):
        self.G = G
        self.leads = [lead_term(g) for g in G]
        self.by_comp = {}
        for i, (c, e) in enumerate(self.leads):
            self.by_comp.setdefault(c, []).append((e, i))

    def find(self, t, skip=None):
        c, e = t
        for le, i in self.by_comp.get(c, ()):
            if i != skip and mono_divides(le, e):
                return i
        return None

    def reduce(self, f, track=False, full=True, max_comp=None, skip=None):
        """Division with remainder.

        Returns (remainder, quotients) where quotients[i] is a dict
        ``{exponent: coefficient}`` (only when ``track``). Terms with component
        ``>= max_comp`` are never reduced. ``skip`` excludes one reducer index.
        """
        p = dict(f)
        heap = [(_neg_key(t), t) for t in p]
        heapq.heapify(heap)
        rem = {}
        quots = [dict() for _ in self.G] if track else None
        while heap:
            _, t = heapq.heappop(heap)
            c = p.pop(t, None)
            if c is None:
                continue
            i = None
            if max_comp is None or t[0] < max_comp:
                i = self.find(t, skip)
            if i is None:
                rem[t] = c
                if not full:
                    for t2 in list(p):
                        rem[t2] = p.pop(t2)
                    break
                continue
            g = self.G[i]
            lt = self.leads[i]
            m = mono_div(t[1], lt[1])
            coef = c / g[lt]
            if track:
                quots[i][m] = quots[i].get(m, 0) + coef
            for (gc, ge), gv in g.items():
                if (gc, ge) == lt:
                    continue
                nt = (gc, mono_mul(ge, m))
                old = p.get(nt)
                nv = (old or 0) - coef * gv
                if old is None:
                    heapq.heappush(heap, (_neg_key(nt), nt))
                if nv:
                    p[nt] = nv
                else:
                    p.pop(nt, None)
        return rem, quots


def s_vector_raw(f, g):
    (cf, ef), (cg, eg) = lead_term(f), lead_term(g)
    if cf != cg:
        return {}
    lcm = mono_lcm(ef, eg)
    out = _shift(f, mono_div(lcm, ef), 1 / f[(cf, ef)])
    for t, v in _shift(g, mono_div(lcm, eg), 1 / g[(cg, eg)]).items():
        nv = out.get(t, 0) - v
        if nv:
            out[t] = nv
        else:
            out.pop(t, None)
    return out


def _pair_degree(leads, i, j):
    return sum(mono_lcm(leads[i][1], leads[j][1]))


def buchberger_raw(F, ideal=False):
    """Reduced Gröbner basis of the raw elements ``F``.

    ``ideal`` enables the product criterion (valid for rank-one modules only).
    """
    G = []
    leads = []
    for f in F:
        if f:
            f = _monic(f)
            G.append(f)
            leads.append(lead_term(f))
    pending = {(i, j) for j in range(len(G)) for i in range(j) if leads[i][0] == leads[j][0]}
    red = _Reducer(G)
    while pending:
        i, j = min(pending, key=lambda p: (_pair_degree(leads, *p), p[1], p[0]))
        pending.discard((i, j))
        li, lj = leads[i][1], leads[j][1]
        if ideal and all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = mono_lcm(li, lj)
        comp = leads[i][0]
        if any(k != i and k != j and leads[k][0] == comp and mono_divides(leads[k][1], lcm)
               and (min(i, k), max(i, k)) not in pending
               and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue
        h, _ = red.reduce(s_vector_raw(G[i], G[j]))
        if h:
            h = _monic(h)
            n = len(G)
            G.append(h)
            lh = lead_term(h)
            leads.append(lh)
            red = _Reducer(G)
            pending.update((k, n) for k in range(n) if leads[k][0] == lh[0])
    return _interreduce(G)


def _interreduce(G):
    # drop elements whose lead is divisible by another lead, then reduce tails
    order = sorted(range(len(G)), key=lambda i: term_key(lead_term(G[i])))
    keep = []
    for idx in order:
        c, e = lead_term(G[idx])
        if not any(lc == c and mono_divides(le, e) for (lc, le) in (lead_term(G[k]) for k in keep)):
            keep.append(idx)
    base = [G[k] for k in keep]
    out = []
    red = _Reducer(base)
    for n, g in enumerate(base):
        r, _ = red.reduce(g, skip=n)
        out.append(_monic(r))
    out.sort(key=lambda g: term_key(lead_term(g)), reverse=True)
    return out


def _freeze(f):
    return tuple(sorted(f.items(), key=lambda tv: _neg_key(tv[0])))


@lru_cache(maxsize=4096)
def _gb_cached(frozen, ideal):
    return tuple(_freeze(g) for g in buchberger_raw([dict(f) for f in frozen], ideal))


def groebner_raw(F, ideal=False):
    key = tuple(sorted(_freeze(f) for f in F if f))
    return [dict(g) for g in _gb_cached(key, ideal)]


@lru_cache(maxsize=1024)
def _augmented_cached(frozen, rank, nvars):
    one = (0,) * nvars
    rows = []
    for i, f in enumerate(frozen):
        row = dict(f)
        row[(rank + i, one)] = Fraction(1)
        rows.append(row)
    gb = buchberger_raw(rows)
    module_part = tuple(_freeze(g) for g in gb if lead_term(g)[0] < rank)
    syz = tuple(_freeze({(c - rank, e): v for (c, e), v in g.items()})
                for g in gb if lead_term(g)[0] >= rank)
    return tuple(_freeze(g) for g in gb), module_part, syz


def augmented(F, rank, nvars):
    """GB of the rows ``(f_i, e_i)``: returns (gb, module gb part, syzygy gb)."""
    gb, module_part, syz = _augmented_cached(tuple(_freeze(f) for f in F), rank, nvars)
    return ([dict(g) for g in gb], [dict(g) for g in module_part], [dict(s) for s in syz])


def express_raw(b, F, rank, nvars):
    """Coefficients ``a`` with ``b == sum a_i F_i``, or None if ``b`` is not in span(F)."""
    if not b:
        return [dict() for _ in F]
    if not F:
        return None
    gb, _, _ = augmented(F, rank, nvars)
    rem, _ = _Reducer(gb).reduce(b, max_comp=rank)
    if any(c < rank for (c, _) in rem):
        return None
    coeffs = [dict() for _ in F]
    for (c, e), v in rem.items():
        coeffs[c - rank][e] = -v
    return coeffs


def syzygies_raw(F, rank, nvars):
    """Raw generators of the syzygy module of ``F`` (components index F)."""
    if not F:
        return []
    nonzero = [i for i, f in enumerate(F) if f]
    zero_syz = [{(i, (0,) * nvars): Fraction(1)} for i, f in enumerate(F) if not f]
    if not nonzero:
        return zero_syz
    sub = [F[i] for i in nonzero]
    _, _, syz = augmented(sub, rank, nvars)
    out = [{(nonzero[c], e): v for (c, e), v in s.items()} for s in syz]
    return out + zero_syz


def in_span_raw(b, F):
    if not b:
        return True
    G = groebner_raw(F, ideal=_rank_one(F))
    rem, _ = _Reducer(G).reduce(b)
    return not rem


def _rank_one(F):
    return all(c == 0 for f in F for (c, _) in f)


# -- conversion ---------------------------------------------------------------

def _as_vectors(gens):
    gens = list(gens)
    if not gens:
        return None, 0, []
    if all(isinstance(g, Poly) for g in gens):
        ring = gens[0].ring
        return ring, 1, [{(0, e): c for e, c in g.terms.items()} for g in gens]
    if all(isinstance(g, PolyVector) for g in gens):
        ring, rank = gens[0].ring, gens[0].rank
        for g in gens:
            if g.rank != rank or g.ring != ring:
                raise UsageError("generators live in different free modules")
        return ring, rank, [dict(g.terms) for g in gens]
    raise UsageError("expected polynomials or polynomial vectors")


def _vector(ring, rank, raw):
    return PolyVector(ring, rank, raw)


def _poly(ring, raw):
    return Poly(ring, {e: c for (_, e), c in raw.items()})


def _out(ring, rank, raws, as_poly):
    return [_poly(ring, r) if as_poly else _vector(ring, rank, r) for r in raws]


# -- public API ---------------------------------------------------------------

def normal_form(f, G):
    """Divide ``f`` by ``G``: returns (remainder, quotient polynomials).

    ``f == sum(q_i * G_i) + remainder``; the remainder has no term divisible by
    a leading term of ``G``.
    """
    as_poly = isinstance(f, Poly)
    ring, rank, [fr] = _as_vectors([f])
    if G:
        _, grank, graw = _as_vectors(G)
        if grank != rank or _as_vectors(G)[0] != ring:
            raise UsageError("normal_form: ambient mismatch")
    else:
        graw = []
    rem, quots = _Reducer(graw).reduce(fr, track=True)
    qs = [Poly(ring, q) for q in quots]
    return (_poly(ring, rem) if as_poly else _vector(ring, rank, rem)), qs


def buchberger(gens):
    """Reduced Gröbner basis (degrevlex, position over term)."""
    ring, rank, raw = _as_vectors(gens)
    if ring is None:
        return []
    as_poly = isinstance(gens[0], Poly)
    return _out(ring, rank, groebner_raw(raw, ideal=rank == 1), as_poly)


def s_vector(f, g):
    ring, rank, (a, b) = _as_vectors([f, g])
    return _out(ring, rank, [s_vector_raw(a, b)], isinstance(f, Poly))[0]


def is_groebner_basis(G):
    """Every S-vector of ``G`` reduces to zero modulo ``G``."""
    _, _, raw = _as_vectors(G)
    red = _Reducer(raw)
    for j in range(len(raw)):
        for i in range(j):
            s = s_vector_raw(raw[i], raw[j])
            if s and red.reduce(s)[0]:
                return False
    return True


def syzygy_basis(gens):
    """Generators of ``{s : sum s_i gens_i == 0}`` as vectors of length len(gens)."""
    ring, rank, raw = _as_vectors(gens)
    if ring is None:
        return []
    return [_vector(ring, len(raw), s) for s in syzygies_raw(raw, rank, ring.nvars)]


def express(b, gens):
    """Polynomials ``a`` with ``b == sum a_i gens_i``, or None."""
    ring, rank, [br] = _as_vectors([b])
    if not gens:
        return [] if not br else None
    _, _, raw = _as_vectors(gens)
    coeffs = express_raw(br, raw, rank, ring.nvars)
    if coeffs is None:
        return None
    return [Poly(ring, c) for c in coeffs]


def submodule_membership(b, gens):
    ring, rank, [br] = _as_vectors([b])
    if not gens:
        return not br
    return in_span_raw(br, _as_vectors(gens)[2])


def ideal_quotient(U, v):
    """Generators of ``{f : f*v in span(U)}``."""
    ring, rank, [vr] = _as_vectors([v])
    if not vr:
        return [ring.one()]
    raw = [vr] + (_as_vectors(U)[2] if U else [])
    syz = syzygies_raw(raw, rank, ring.nvars)
    first = [{(0, e): c for (comp, e), c in s.items() if comp == 0} for s in syz]
    gb = groebner_raw([f for f in first if f], ideal=True)
    return [_poly(ring, g) for g in gb]


def intersect_ideals(I, J):
    """Generators of the intersection of two ideals (lists of Poly)."""
    if not I or not J:
        return []
    ring = I[0].ring
    raw = [{(0, e): c for e, c in p.terms.items()} for p in list(I) + list(J)]
    a = len(I)
    out = []
    for s in syzygies_raw(raw, 1, ring.nvars):
        acc = Poly(ring, {})
        for (comp, e), c in s.items():
            if comp < a:
                acc = acc + I[comp] * ring.monomial(e, c)
        if acc:
            out.append({(0, e): c for e, c in acc.terms.items()})
    return [_poly(ring, g) for g in groebner_raw(out, ideal=True)]


def radical_membership(f, I):
    """Whether ``f`` lies in the radical of the ideal ``I`` (Rabinowitsch)."""
    ring = f.ring
    if f.is_zero():
        return True
    ext = ring.extend("_t" + "_".join(ring.variables))
    t = ext.var(ext.nvars - 1)
    gens = [p.to_ring(ext) for p in I] + [ext.one() - t * f.to_ring(ext)]
    raw = [{(0, e): c for e, c in p.terms.items()} for p in gens if p]
    gb = groebner_raw(raw, ideal=True)
    return any(not any(e) for g in gb for (_, e) in [lead_term(g)])


# -- brute-force oracle --------------------------------------------------------

def vector_degree(v, shifts):
    """Z-degree of a homogeneous vector with component shifts."""
    ds = {v.ring.degree_of(e)[0] + shifts[c] for (c, e) in v.terms}
    if len(ds) != 1:
        raise UsageError("vector is zero or not homogeneous")
    return ds.pop()


def _positive_z(ring):
    if ring.grading_rank != 1 or any(d[0] <= 0 for d in ring.degrees):
        raise UsageError("oracle needs a positive Z-grading")


def _multiples(ring, vecs, shifts, D):
    # all m * v with deg(m * v) == D, flattened on the ambient terms
    out = []
    for v, dv in vecs:
        for m in ring.monomials_of_degree(D - dv):
            out.append({(c, mono_mul(e, m)): x for (c, e), x in v.items()})
    return out


def _dense(rows, index):
    return [[r.get(t, 0) for t in index] for r in rows]


def truncated_kernel_oracle(gens, d, shifts=None):
    """Syzygies of ``gens`` by dense linear algebra, degree by degree up to ``d``.

    Returns ``{degree: [syzygy vectors]}`` where each list is a Q-basis of the
    degree-``degree`` part of the syzygy module (syzygy component ``i`` gets
    shift ``deg gens_i``).
    """
    ring, rank, raw = _as_vectors(gens)
    if ring is None:
        return {}
    _positive_z(ring)
    shifts = list(shifts) if shifts is not None else [0] * rank
    degs = []
    for g in gens:
        gv = g if isinstance(g, PolyVector) else PolyVector.from_polys(ring, [g])
        degs.append(vector_degree(gv, shifts) if not gv.is_zero() else 0)
    k = len(raw)
    out = {}
    for D in range(min(degs), d + 1):
        unknowns = [(i, m) for i in range(k) for m in ring.monomials_of_degree(D - degs[i])]
        if not unknowns:
            out[D] = []
            continue
        images = [{(c, mono_mul(e, m)): x for (c, e), x in raw[i].items()} for i, m in unknowns]
        index = sorted({t for img in images for t in img}, key=_neg_key)
        M = _dense(images, index)
        # left kernel of M: nullspace of its transpose
        Mt = [[M[r][c] for r in range(len(M))] for c in range(len(index))]
        rref, pivots = rational_rref(Mt, len(unknowns))
        free = [j for j in range(len(unknowns)) if j not in pivots]
        basis = []
        for fj in free:
            y = [Fraction(0)] * len(unknowns)
            y[fj] = Fraction(1)
            for row, p in zip(rref, pivots):
                y[p] = -row[fj]
            terms = {}
            for coef, (i, m) in zip(y, unknowns):
                if coef:
                    terms[(i, m)] = coef
            basis.append(PolyVector(ring, k, terms))
        out[D] = basis
    return out


def truncated_span_dimension(vecs, shifts, D):
    """Q-dimension of the degree-``D`` part of the submodule spanned by ``vecs``."""
    if not vecs:
        return 0
    ring = vecs[0].ring
    _positive_z(ring)
    items = [(v.terms, vector_degree(v, shifts)) for v in vecs if not v.is_zero()]
    rows = _multiples(ring, items, shifts, D)
    if not rows:
        return 0
    index = sorted({t for r in rows for t in r}, key=_neg_key)
    return rational_rank(_dense(rows, index), len(index))
