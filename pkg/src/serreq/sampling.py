"""Random objects and morphisms for property tests.

Each sampler draws objects and well-defined morphisms between *given*
objects. For that it computes a basis of the Hom-set: an integer lattice for
Z-modules, a Q-basis of degree-0 matrices for graded modules. Quotient
samplers wrap base morphisms between a random C-cofinal subobject of the
source and a random C-cofinal quotient of the target.
"""

from fractions import Fraction
from math import lcm

from .generalized import GeneralizedMorphism
from .groebner import _Reducer
from .intmat import IntMatrix, rational_rref, row_kernel, row_span_basis
from .grmod import PolyMatrix
from .poly import mono_mul
from .category import Mor, Obj


class ZModSampler:
    """Finitely presented groups with up to ``max_gens`` generators."""

    def __init__(self, category, max_gens=3, entry=9, max_relations=3):
        self.category = category
        self.max_gens = max_gens
        self.entry = entry
        self.max_relations = max_relations

    def object(self, rng):
        n = rng.randint(1, self.max_gens)
        r = rng.randint(0, min(n, self.max_relations))
        rows = [[rng.randint(-self.entry, self.entry) for _ in range(n)] for _ in range(r)]
        # small diagonal bias keeps torsion orders readable
        for k in range(r):
            if rng.random() < 0.5:
                rows[k] = [0] * n
                rows[k][rng.randrange(n)] = rng.choice([2, 3, 4, 6])
        return self.category.object(n, rows)

    def hom_basis(self, M, N):
        m, n = M.data.ngens, N.data.ngens
        RM, RN = M.data.relations, N.data.relations
        rm, rn = RM.nrows, RN.nrows
        # unknowns: A (m x n) then Y (rm x rn); equations: RM A - Y RN = 0 (rm x n)
        rows = []
        for a in range(m):
            for jj in range(n):
                rows.append([RM[i, a] if j == jj else 0 for i in range(rm) for j in range(n)])
        for ii in range(rm):
            for b in range(rn):
                rows.append([-RN[b, j] if i == ii else 0 for i in range(rm) for j in range(n)])
        if not rows:
            return []
        if rm * n == 0:
            basis = IntMatrix.identity(m * n)
        else:
            K = row_kernel(IntMatrix(rows, rm * n))
            basis = row_span_basis(K.columns(0, m * n)) if K.nrows else IntMatrix([], m * n)
        return [IntMatrix([row[a * n:(a + 1) * n] for a in range(m)], n) for row in basis.rows]

    def hom(self, rng, M, N):
        basis = self.hom_basis(M, N)
        A = IntMatrix.zeros(M.data.ngens, N.data.ngens)
        for B in basis:
            c = rng.randint(-2, 2)
            if c:
                A = A + B.scale(c)
        return self.category.morphism(M, N, A, check=False)


class GrModSampler:
    """Graded modules with few generators in low degree over a positively
    Z-graded ring; morphisms from a Q-basis of the degree-0 Hom-space."""

    def __init__(self, category, max_gens=2, max_degree=2, max_relations=2,
                 max_relation_degree=2, coeff=3):
        self.category = category
        self.ring = category.ring
        self.max_gens = max_gens
        self.max_degree = max_degree
        self.max_relations = max_relations
        self.max_relation_degree = max_relation_degree
        self.coeff = coeff
        self._basis_cache = {}

    def random_poly(self, rng, degree, terms=2):
        mons = self.ring.monomials_of_degree(degree)
        if not mons:
            return {}
        out = {}
        for _ in range(rng.randint(1, terms)):
            e = rng.choice(mons)
            c = rng.randint(-self.coeff, self.coeff)
            if c:
                out[e] = out.get(e, 0) + Fraction(c)
        return {e: c for e, c in out.items() if c}

    def object(self, rng):
        n = rng.randint(1, self.max_gens)
        degrees = [rng.randint(0, self.max_degree) for _ in range(n)]
        rows = []
        for _ in range(rng.randint(0, self.max_relations)):
            top = max(degrees) + rng.randint(1, self.max_relation_degree)
            row = {}
            for j, dj in enumerate(degrees):
                if rng.random() < 0.7:
                    for e, c in self.random_poly(rng, top - dj).items():
                        row[(j, e)] = c
            if row:
                rows.append(row)
        return self.category._obj([(d,) for d in degrees], PolyMatrix(rows, n))

    def hom_basis(self, M, N):
        key = (M.data, N.data)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        src, tgt = M.data.degrees, N.data.degrees
        units = []  # (i, j, exponent)
        for i, si in enumerate(src):
            for j, tj in enumerate(tgt):
                for e in ring.monomials_of_degree(si[0] - tj[0]):
                    units.append((i, j, e))
        rels = M.data.relations.dicts()
        red = _Reducer(N.data.relations.dicts())
        images = []
        for (i, j, e) in units:
            vec = {}
            for k, r in enumerate(rels):
                # row k of (relations @ unit matrix): entries of r in column i times x^e in column j
                row = {(j, mono_mul(re, e)): c for (rc, re), c in r.items() if rc == i}
                rem = red.reduce(row)[0] if row else {}
                for t, c in rem.items():
                    vec[(k, t)] = c
            images.append(vec)
        index = sorted({t for v in images for t in v}, key=repr)
        if index:
            Mt = [[v.get(t, 0) for v in images] for t in index]
            rref, pivots = rational_rref(Mt, len(units))
        else:
            rref, pivots = [], []
        free = [j for j in range(len(units)) if j not in pivots]
        basis = []
        for fj in free:
            y = [Fraction(0)] * len(units)
            y[fj] = Fraction(1)
            for row, p in zip(rref, pivots):
                y[p] = -row[fj]
            den = lcm(*(c.denominator for c in y)) if y else 1
            mat = [dict() for _ in src]
            for c, (i, j, e) in zip(y, units):
                if c:
                    mat[i][(j, e)] = c * den
            basis.append(PolyMatrix(mat, len(tgt)))
        self._basis_cache[key] = basis
        return basis

    def hom(self, rng, M, N):
        A = PolyMatrix.zeros(M.data.ngens, N.data.ngens)
        for B in self.hom_basis(M, N):
            c = rng.randint(-2, 2)
            if c:
                A = A + B.scale(Fraction(c))
        return Mor(self.category, M, N, A)


class QuotientSampler:
    """Gabriel morphisms ``[i, a, j]`` with random C-cofinal ``i`` and ``j``."""

    def __init__(self, quotient, base_sampler, cofinal_mono, cofinal_epi):
        self.category = quotient
        self.base_sampler = base_sampler
        self.cofinal_mono = cofinal_mono
        self.cofinal_epi = cofinal_epi

    def object(self, rng):
        return Obj(self.category, self.base_sampler.object(rng))

    def hom(self, rng, M, N):
        i = self.cofinal_mono(M.data, rng)
        j = self.cofinal_epi(N.data, rng)
        a = self.base_sampler.hom(rng, i.source, j.target)
        return self.category._wrap(GeneralizedMorphism(i, a, j, check=False))


def torsion_cofinal(category, choices=(1, 1, 2, 3)):
    """Monos ``cM -> M`` and epis ``N -> N/N[c]`` whose (co)kernels are torsion."""

    def mono(M, rng):
        c = rng.choice(choices)
        if c == 1:
            return category.identity(M)
        return category.image_embedding(category.scalar(M, c)).embedding

    def epi(N, rng):
        c = rng.choice(choices)
        if c == 1:
            return category.identity(N)
        return category.coimage_projection(category.scalar(N, c))

    return mono, epi


def projective_cofinal(category, choices=(0, 0, 1)):
    """For P^n: ``m^[k] M -> M`` and ``N -> N / (elements killed by m^[k])``."""
    ring = category.ring

    def mono(M, rng):
        k = rng.choice(choices)
        if k == 0:
            return category.identity(M)
        maps = [category.multiplication(M, x ** k, shift=k) for x in ring.gens()]
        total = maps[0]
        for f in maps[1:]:
            total = category.copairing(total, f)
        return category.image_embedding(total).embedding

    def epi(N, rng):
        k = rng.choice(choices)
        if k == 0:
            return category.identity(N)
        maps = [category.multiplication_up(N, x ** k, shift=k) for x in ring.gens()]
        total = maps[0]
        for f in maps[1:]:
            total = category.pairing(total, f)
        return category.coimage_projection(total)

    return mono, epi
