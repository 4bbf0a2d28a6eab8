"""The computable Abelian category interface and its generic derived constructions.

A backend subclasses :class:`AbelianCategory` and implements the ``_``-prefixed
hooks on its own object and morphism payloads. The public methods check that
their arguments belong to the category, then delegate. Composition is written
in diagrammatic order throughout: ``compose(f, g)`` means *f, then g*.
"""

import threading
from typing import NamedTuple

from .errors import NotLiftable, PreconditionError, UsageError


class Obj:
    """An object of a specific category instance.

    Equality is structural on the backend payload but never holds across
    category instances.
    """

    __slots__ = ("category", "data")

    def __init__(self, category, data):
        self.category = category
        self.data = data

    def __eq__(self, other):
        return (isinstance(other, Obj) and other.category is self.category
                and other.data == self.data)

    def __hash__(self):
        return hash((id(self.category), self.data))

    def __repr__(self):
        return f"Obj({self.category.name}, {self.data!r})"


class Mor:
    """A morphism ``source -> target`` with a backend payload.

    ``==`` is identity-based; use ``category.is_equal`` for semantic equality.
    """

    __slots__ = ("category", "source", "target", "data")

    def __init__(self, category, source, target, data):
        self.category = category
        self.source = source
        self.target = target
        self.data = data

    def __repr__(self):
        return f"Mor({self.source!r} -> {self.target!r}, {self.data!r})"

    def then(self, other):
        return self.category.compose(self, other)

    def __add__(self, other):
        return self.category.add(self, other)

    def __sub__(self, other):
        return self.category.sub(self, other)

    def __neg__(self):
        return self.category.negate(self)


class DirectSum(NamedTuple):
    object: Obj
    proj1: Mor
    proj2: Mor
    inj1: Mor
    inj2: Mor


class Kernel(NamedTuple):
    object: Obj
    embedding: Mor


class Cokernel(NamedTuple):
    object: Obj
    projection: Mor


class Image(NamedTuple):
    object: Obj
    embedding: Mor


class Factorization(NamedTuple):
    """``phi == coimage_projection . iso . image_embedding``."""
    coimage_projection: Mor
    iso: Mor
    image_embedding: Mor


class Pullback(NamedTuple):
    object: Obj
    proj_x: Mor
    proj_y: Mor


class Pushout(NamedTuple):
    object: Obj
    inj_x: Mor
    inj_y: Mor


class AbelianCategory:
    """Operation bundle of a constructively Abelian category.

    Required hooks (each total on well-formed input):
    ``_identity, _compose, _is_well_defined, _is_equal, _add, _negate,
    _zero_morphism, _zero_object, _is_zero_object, _direct_sum, _pairing,
    _copairing, _kernel, _cokernel, _lift, _colift``.

    ``_lift(along, tau)`` returns some ``x`` with ``x . along == tau`` or None;
    ``_colift(along, eta)`` returns some ``x`` with ``along . x == eta`` or None.
    Either may raise :class:`NotLiftable` to name the failed condition.
    """

    name = "abstract"

    def __init__(self):
        self._zero_cache = {}
        self._zero_lock = threading.Lock()

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    # -- membership checks ------------------------------------------------

    def _own(self, *items):
        for x in items:
            if x.category is not self:
                raise UsageError(f"{x!r} does not belong to {self!r}")

    def _parallel(self, f, g):
        self._own(f, g)
        if f.source != g.source or f.target != g.target:
            raise UsageError("morphisms are not parallel")

    # -- required operations ----------------------------------------------

    def identity(self, M):
        self._own(M)
        return self._identity(M)

    def compose(self, f, g):
        self._own(f, g)
        if f.target != g.source:
            raise UsageError("morphisms are not composable")
        return self._compose(f, g)

    def is_well_defined(self, f):
        self._own(f)
        return self._is_well_defined(f)

    def is_equal(self, f, g):
        self._parallel(f, g)
        return self._is_equal(f, g)

    def add(self, f, g):
        self._parallel(f, g)
        return self._add(f, g)

    def negate(self, f):
        self._own(f)
        return self._negate(f)

    def sub(self, f, g):
        self._parallel(f, g)
        return self._add(f, self._negate(g))

    def zero_morphism(self, M, N):
        self._own(M, N)
        return self._zero_morphism(M, N)

    def zero_object(self):
        return self._zero_object()

    def is_zero_object(self, M):
        self._own(M)
        with self._zero_lock:
            hit = self._zero_cache.get(M.data)
        if hit is None:
            hit = bool(self._is_zero_object(M))
            with self._zero_lock:
                self._zero_cache[M.data] = hit
        return hit

    def direct_sum(self, M1, M2):
        self._own(M1, M2)
        return self._direct_sum(M1, M2)

    def pairing(self, f1, f2):
        self._own(f1, f2)
        if f1.source != f2.source:
            raise UsageError("pairing needs a common source")
        return self._pairing(f1, f2)

    def copairing(self, f1, f2):
        self._own(f1, f2)
        if f1.target != f2.target:
            raise UsageError("copairing needs a common target")
        return self._copairing(f1, f2)

    def kernel(self, f):
        self._own(f)
        return Kernel(*self._kernel(f))

    def cokernel(self, f):
        self._own(f)
        return Cokernel(*self._cokernel(f))

    def lift(self, along, tau):
        """Some ``x`` with ``x . along == tau``, or None."""
        self._own(along, tau)
        if along.target != tau.target:
            raise UsageError("lift needs a common target")
        try:
            return self._lift(along, tau)
        except NotLiftable:
            return None

    def colift(self, along, eta):
        """Some ``x`` with ``along . x == eta``, or None."""
        self._own(along, eta)
        if along.source != eta.source:
            raise UsageError("colift needs a common source")
        try:
            return self._colift(along, eta)
        except NotLiftable:
            return None

    def mono_lift(self, kappa, tau):
        """The unique lift of ``tau`` along the mono ``kappa``."""
        self._own(kappa, tau)
        if kappa.target != tau.target:
            raise UsageError("lift needs a common target")
        x = self._lift(kappa, tau)
        if x is None:
            raise NotLiftable("tau does not factor through kappa", "factorization")
        return x

    def epi_colift(self, eps, eta):
        """The unique colift of ``eta`` along the epi ``eps``."""
        self._own(eps, eta)
        if eps.source != eta.source:
            raise UsageError("colift needs a common source")
        x = self._colift(eps, eta)
        if x is None:
            raise NotLiftable("eta does not factor through eps", "factorization")
        return x

    kernel_lift = mono_lift
    cokernel_colift = epi_colift

    # -- cheap structural tests (performance only) -------------------------

    def is_literal_identity(self, f):
        """True if ``f`` is syntactically an identity. False means 'unknown'."""
        return f.source == f.target and f.data == self._identity(f.source).data

    # -- derived constructions --------------------------------------------

    def is_mono(self, f):
        if self.is_literal_identity(f):
            return True
        return self.is_zero_object(self.kernel(f).object)

    def is_epi(self, f):
        if self.is_literal_identity(f):
            return True
        return self.is_zero_object(self.cokernel(f).object)

    def is_iso(self, f):
        return self.is_mono(f) and self.is_epi(f)

    def image_embedding(self, f):
        """Kernel of the cokernel projection: a mono ``img f -> target``."""
        self._own(f)
        return Image(*self.kernel(self.cokernel(f).projection))

    def coimage_projection(self, f):
        """Cokernel of the kernel embedding: an epi ``source -> coimg f``."""
        self._own(f)
        return self.cokernel(self.kernel(f).embedding).projection

    def image_factorization(self, f):
        self._own(f)
        if self.is_literal_identity(f):
            return Factorization(f, f, f)
        p = self.coimage_projection(f)
        e = self.image_embedding(f).embedding
        through = self.epi_colift(p, f)
        return Factorization(p, self.mono_lift(e, through), e)

    def coimage_to_image_iso(self, f):
        return self.image_factorization(f).iso

    def pullback(self, f, g):
        """Pullback of the cospan ``f: X -> Z <- Y :g``."""
        self._own(f, g)
        if f.target != g.target:
            raise UsageError("pullback needs a common target")
        if self.is_literal_identity(g):
            return Pullback(f.source, self._identity(f.source), f)
        if self.is_literal_identity(f):
            return Pullback(g.source, g, self._identity(g.source))
        if f.source == g.source and f.data == g.data:
            return Pullback(f.source, self._identity(f.source),
                            self._identity(f.source))
        s = self.direct_sum(f.source, g.source)
        k = self.kernel(self.copairing(f, self.negate(g)))
        return Pullback(k.object, self.compose(k.embedding, s.proj1),
                        self.compose(k.embedding, s.proj2))

    def pushout(self, f, g):
        """Pushout of the span ``X <- Z -> Y``."""
        self._own(f, g)
        if f.source != g.source:
            raise UsageError("pushout needs a common source")
        if self.is_literal_identity(f):
            return Pushout(g.target, g, self._identity(g.target))
        if self.is_literal_identity(g):
            return Pushout(f.target, self._identity(f.target), f)
        if f.target == g.target and f.data == g.data:
            return Pushout(f.target, self._identity(f.target),
                           self._identity(f.target))
        s = self.direct_sum(f.target, g.target)
        c = self.cokernel(self.pairing(f, self.negate(g)))
        return Pushout(c.object, self.compose(s.inj1, c.projection),
                       self.compose(s.inj2, c.projection))

    def inverse_of_iso(self, f):
        self._own(f)
        if self.is_literal_identity(f):
            return f
        mono, epi = self.is_mono(f), self.is_epi(f)
        if not (mono and epi):
            missing = " and ".join(n for n, ok in (("mono", mono), ("epi", epi)) if not ok)
            raise PreconditionError(f"morphism is not an isomorphism: not {missing}")
        return self.mono_lift(f, self._identity(f.target))

    def is_zero_morphism(self, f):
        self._own(f)
        return self._is_equal(f, self._zero_morphism(f.source, f.target))

    def subobject_le(self, k1, k2):
        """Whether the mono ``k1`` factors through the mono ``k2``."""
        return self.lift(k2, k1) is not None

