"""Gabriel morphisms and the Serre quotient ``A/C``.

A morphism of ``A/C`` is a generalized morphism of ``A`` whose domain has
cokernel in ``C`` and whose codomain has kernel in ``C``. Two of them are
equal in the quotient iff the arrow of their difference has image in ``C``.
"""

import threading

from .category import AbelianCategory, DirectSum, Mor, Obj
from .errors import InvariantError, NotLiftable, UsageError
from .generalized import (
    GeneralizedMorphism,
    add_gen,
    common_coarsening,
    common_restriction,
    compose_gen,
    honest_of,
    id_gen,
    negate,
    zero_gen,
)


class ThickSubcategory:
    """A decidable full subcategory ``C`` of ``category`` closed under
    subobjects, quotients and extensions.

    Closure is trusted, not checked; ``membership`` gets an object of the
    parent category. Answers are memoized per object.
    """

    def __init__(self, category, membership, name="C"):
        self.category = category
        self.membership = membership
        self.name = name
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<ThickSubcategory {self.name} of {self.category.name}>"

    def contains(self, M):
        if M.category is not self.category:
            raise UsageError(f"{M!r} is not an object of {self.category!r}")
        with self._lock:
            hit = self._cache.get(M.data)
        if hit is None:
            hit = bool(self.category.is_zero_object(M) or self.membership(M))
            with self._lock:
                self._cache[M.data] = hit
        return hit

    __contains__ = contains


def _unwrap(psi):
    """Generalized morphism behind a quotient morphism (or itself)."""
    return psi.data if isinstance(psi, Mor) else psi


def _subcategory(psi, C):
    if C is not None:
        return C
    if isinstance(psi, Mor) and isinstance(psi.category, QuotientCategory):
        return psi.category.subcategory
    raise UsageError("a thick subcategory is required for a bare generalized morphism")


def is_gabriel(psi, C):
    psi = _unwrap(psi)
    A = psi.category
    ok_dom = A.is_literal_identity(psi.domain) or C.contains(A.cokernel(psi.domain).object)
    return ok_dom and (A.is_literal_identity(psi.codomain)
                       or C.contains(A.kernel(psi.codomain).object))


def in_zeroid(psi, C=None):
    """Whether the arrow of ``psi`` has image in ``C``."""
    C = _subcategory(psi, C)
    psi = _unwrap(psi)
    A = psi.category
    return C.contains(A.image_embedding(psi.arrow).object)


def serre_equal(phi, psi, C=None):
    C = _subcategory(phi, C)
    phi, psi = _unwrap(phi), _unwrap(psi)
    if phi.source != psi.source or phi.target != psi.target:
        raise UsageError("serre_equal needs parallel morphisms")
    return in_zeroid(add_gen(phi, psi, -1), C)


def _gen(i, a, j):
    return GeneralizedMorphism(i, a, j, check=False)


def lift_gabriel(gamma, beta, C=None):
    """Lift of ``gamma: L -> M`` along ``beta: K -> M`` modulo ``C``.

    Needs ``beta`` mono modulo C (kernel of its arrow in C) and the image of
    ``gamma`` inside that of ``beta`` modulo C. Raises :class:`NotLiftable`
    naming the failed condition otherwise.
    """
    C = _subcategory(gamma, C)
    gamma, beta = _unwrap(gamma), _unwrap(beta)
    if gamma.target != beta.target:
        raise UsageError("lift needs a common target")
    A = gamma.category
    g, b = common_coarsening(gamma, beta)
    kb = A.kernel(b.arrow)
    if not C.contains(kb.object):
        raise NotLiftable("not liftable modulo C: the kernel of the arrow of the "
                          "morphism lifted along is not in C", "kernel-in-C")
    p, iso, e = A.image_factorization(b.arrow)
    pb = A.pullback(g.arrow, e)
    iota = pb.proj_x
    if not (A.is_literal_identity(iota) or C.contains(A.cokernel(iota).object)):
        raise NotLiftable("not liftable modulo C: the image of the lifted morphism "
                          "is not contained in the image modulo C", "image-in-C")
    lift = A.mono_lift(A.compose(iso, e), A.compose(iota, g.arrow))
    if A.is_literal_identity(b.domain):
        codomain, arrow = p, lift
    else:
        codomain = A.cokernel(A.compose(kb.embedding, b.domain)).projection
        m = A.epi_colift(p, A.compose(b.domain, codomain))
        arrow = A.compose(lift, m)
    return _gen(A.compose(iota, g.domain), arrow, codomain)


def colift_gabriel(gamma, beta, C=None):
    """Colift of ``gamma: M -> L`` along ``beta: M -> K`` modulo ``C``; dual to
    :func:`lift_gabriel`."""
    C = _subcategory(gamma, C)
    gamma, beta = _unwrap(gamma), _unwrap(beta)
    if gamma.source != beta.source:
        raise UsageError("colift needs a common source")
    A = gamma.category
    g, b = common_restriction(gamma, beta)
    cb = A.cokernel(b.arrow)
    if not C.contains(cb.object):
        raise NotLiftable("not colift-able modulo C: the cokernel of the arrow of the "
                          "morphism colifted along is not in C", "cokernel-in-C")
    p, iso, e = A.image_factorization(b.arrow)
    po = A.pushout(p, g.arrow)
    jay = po.inj_y
    if not (A.is_literal_identity(jay) or C.contains(A.kernel(jay).object)):
        raise NotLiftable("not colift-able modulo C: the kernel of the colifted "
                          "morphism does not contain the kernel modulo C", "kernel-in-C")
    colift = A.epi_colift(A.compose(p, iso), A.compose(g.arrow, jay))
    if A.is_literal_identity(b.codomain):
        domain, arrow = e, colift
    else:
        pbk = A.pullback(b.codomain, e)
        domain, arrow = pbk.proj_x, A.compose(pbk.proj_y, colift)
    return _gen(domain, arrow, A.compose(g.codomain, jay))


class QuotientCategory(AbelianCategory):
    """The Serre quotient ``A/C`` as an Abelian category in its own right.

    Objects wrap objects of ``A``; morphism payloads are Gabriel
    :class:`GeneralizedMorphism` triples. With ``strict=True`` every composite
    and sum is re-checked to be Gabriel.
    """

    def __init__(self, base, subcategory, strict=False):
        if subcategory.category is not base:
            raise UsageError("subcategory does not live in the base category")
        super().__init__()
        self.base = base
        self.subcategory = subcategory
        self.strict = strict
        self.name = f"{base.name}/{subcategory.name}"

    # -- wrapping ----------------------------------------------------------

    def object(self, M):
        self.base._own(M)
        return Obj(self, M)

    def _wrap(self, gen):
        return Mor(self, Obj(self, gen.source), Obj(self, gen.target), gen)

    def honest(self, f):
        """The image of an A-morphism under the canonical functor."""
        self.base._own(f)
        return self._wrap(honest_of(f))

    def morphism(self, domain, arrow, codomain):
        gen = GeneralizedMorphism(domain, arrow, codomain)
        if not is_gabriel(gen, self.subcategory):
            raise UsageError("triple is not a Gabriel morphism")
        return self._wrap(gen)

    def _checked(self, gen):
        if self.strict and not is_gabriel(gen, self.subcategory):
            raise InvariantError("Gabriel closure violated")
        return self._wrap(gen)

    # -- hooks -------------------------------------------------------------

    def _identity(self, M):
        return self._wrap(id_gen(self.base, M.data))

    def _compose(self, f, g):
        return self._checked(compose_gen(f.data, g.data))

    def _is_well_defined(self, f):
        gen = f.data
        if not isinstance(gen, GeneralizedMorphism):
            return False
        A = self.base
        if gen.source != f.source.data or gen.target != f.target.data:
            return False
        if not all(A.is_well_defined(x) for x in (gen.domain, gen.arrow, gen.codomain)):
            return False
        return (A.is_mono(gen.domain) and A.is_epi(gen.codomain)
                and is_gabriel(gen, self.subcategory))

    def _is_equal(self, f, g):
        return serre_equal(f.data, g.data, self.subcategory)

    def _add(self, f, g):
        return self._checked(add_gen(f.data, g.data, 1))

    def _negate(self, f):
        return self._wrap(negate(f.data))

    def _zero_morphism(self, M, N):
        return self._wrap(zero_gen(self.base, M.data, N.data))

    def _zero_object(self):
        return Obj(self, self.base.zero_object())

    def _is_zero_object(self, M):
        return self.subcategory.contains(M.data)

    def _direct_sum(self, M1, M2):
        s = self.base.direct_sum(M1.data, M2.data)
        return DirectSum(Obj(self, s.object), *(self.honest(f) for f in s[1:]))

    def _sum_map(self, f1, f2):
        # f1 (+) f2 : X1 (+) X2 -> Y1 (+) Y2 in the base category
        A = self.base
        t = A.direct_sum(f1.target, f2.target)
        return A.copairing(A.compose(f1, t.inj1), A.compose(f2, t.inj2))

    def _pairing(self, f1, f2):
        a, b = common_restriction(f1.data, f2.data)
        A = self.base
        gen = _gen(a.domain, A.pairing(a.arrow, b.arrow), self._sum_map(a.codomain, b.codomain))
        return self._checked(gen)

    def _copairing(self, f1, f2):
        a, b = common_coarsening(f1.data, f2.data)
        A = self.base
        gen = _gen(self._sum_map(a.domain, b.domain), A.copairing(a.arrow, b.arrow), a.codomain)
        return self._checked(gen)

    def _kernel(self, f):
        A = self.base
        k = A.kernel(f.data.arrow)
        return Obj(self, k.object), self.honest(A.compose(k.embedding, f.data.domain))

    def _cokernel(self, f):
        A = self.base
        c = A.cokernel(f.data.arrow)
        return Obj(self, c.object), self.honest(A.compose(f.data.codomain, c.projection))

    def _lift(self, along, tau):
        return self._checked(lift_gabriel(tau.data, along.data, self.subcategory))

    def _colift(self, along, eta):
        return self._checked(colift_gabriel(eta.data, along.data, self.subcategory))

    def is_literal_identity(self, f):
        gen = f.data
        A = self.base
        return (f.source == f.target and A.is_literal_identity(gen.domain)
                and A.is_literal_identity(gen.arrow) and A.is_literal_identity(gen.codomain))


def quotient_category(base, subcategory, strict=False):
    return QuotientCategory(base, subcategory, strict=strict)


def is_quotient_iso(phi):
    """Whether ``phi`` becomes an isomorphism in its quotient category."""
    if not isinstance(phi.category, QuotientCategory):
        raise UsageError("is_quotient_iso expects a morphism of a quotient category")
    return phi.category.is_iso(phi)
