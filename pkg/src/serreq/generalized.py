"""Generalized morphisms: triples ``M <-i- M' -a-> N' <-j- N``.

The domain ``i`` is a mono into the source, the codomain ``j`` an epi out of
the target. Each instance stores one representative triple; equality up to
the triple equivalence is :func:`equal_gen`.
"""

from .errors import UsageError


class GeneralizedMorphism:
    __slots__ = ("domain", "arrow", "codomain")

    def __init__(self, domain, arrow, codomain, check=True):
        A = domain.category
        if arrow.category is not A or codomain.category is not A:
            raise UsageError("triple mixes categories")
        if arrow.source != domain.source:
            raise UsageError("arrow must start at the source of the domain")
        if arrow.target != codomain.target:
            raise UsageError("arrow must end at the target of the codomain")
        if check:
            if not A.is_mono(domain):
                raise UsageError("domain of a generalized morphism must be a mono")
            if not A.is_epi(codomain):
                raise UsageError("codomain of a generalized morphism must be an epi")
        self.domain = domain
        self.arrow = arrow
        self.codomain = codomain

    @property
    def category(self):
        return self.domain.category

    @property
    def source(self):
        return self.domain.target

    @property
    def target(self):
        return self.codomain.source

    def __repr__(self):
        return f"[{self.domain.data!r}, {self.arrow.data!r}, {self.codomain.data!r}]"

    def is_honest(self):
        A = self.category
        return A.is_iso(self.domain) and A.is_iso(self.codomain)

    def then(self, other):
        return compose_gen(self, other)

    def __add__(self, other):
        return add_gen(self, other, 1)

    def __sub__(self, other):
        return add_gen(self, other, -1)

    def __neg__(self):
        return negate(self)


def _triple(i, a, j):
    # internal constructions are mono/epi by construction
    return GeneralizedMorphism(i, a, j, check=False)


def honest_of(phi):
    A = phi.category
    return _triple(A.identity(phi.source), phi, A.identity(phi.target))


def id_gen(A, M):
    return honest_of(A.identity(M))


def zero_gen(A, M, N):
    return honest_of(A.zero_morphism(M, N))


def same_triple(phi, psi):
    """Strict syntactic equality of representatives (a fast path only)."""
    return all(x.source == y.source and x.target == y.target and x.data == y.data
               for x, y in ((phi.domain, psi.domain), (phi.arrow, psi.arrow),
                            (phi.codomain, psi.codomain)))


def equal_gen(phi, psi):
    """Whether two triples represent the same generalized morphism.

    Searches for the iso ``mu`` between domains and ``nu`` between codomains
    and checks that the square of arrows commutes.
    """
    if phi.source != psi.source or phi.target != psi.target:
        return False
    if same_triple(phi, psi):
        return True
    A = phi.category
    mu = A.lift(psi.domain, phi.domain)
    if mu is None or not A.is_epi(mu):
        return False
    nu = A.colift(phi.codomain, psi.codomain)
    if nu is None or not A.is_mono(nu):
        return False
    return A.is_equal(A.compose(phi.arrow, nu), A.compose(mu, psi.arrow))


def compose_gen(phi, psi):
    """Composite ``phi`` then ``psi`` of generalized morphisms ``L -> M -> N``."""
    if phi.target != psi.source:
        raise UsageError("generalized morphisms are not composable")
    A = phi.category
    alpha = A.compose(psi.domain, phi.codomain)
    if A.is_literal_identity(alpha):
        return _triple(phi.domain, A.compose(phi.arrow, psi.arrow), psi.codomain)
    coimg, alpha_iso, img = A.image_factorization(alpha)
    pb = A.pullback(phi.arrow, img)
    po = A.pushout(coimg, psi.arrow)
    middle = A.compose(A.compose(pb.proj_y, A.inverse_of_iso(alpha_iso)), po.inj_x)
    return _triple(A.compose(pb.proj_x, phi.domain), middle,
                   A.compose(psi.codomain, po.inj_y))


def negate(psi):
    return _triple(psi.domain, psi.category.negate(psi.arrow), psi.codomain)


def common_restriction(beta, gamma):
    """Pull both domains back to their intersection ``kappa``."""
    if beta.source != gamma.source:
        raise UsageError("common restriction needs a common source")
    A = beta.category
    pb = A.pullback(beta.domain, gamma.domain)
    kappa = A.compose(pb.proj_x, beta.domain)
    return (_triple(kappa, A.compose(pb.proj_x, beta.arrow), beta.codomain),
            _triple(kappa, A.compose(pb.proj_y, gamma.arrow), gamma.codomain))


def common_coarsening(beta, gamma):
    """Push both codomains out to their common quotient ``lam``."""
    if beta.target != gamma.target:
        raise UsageError("common coarsening needs a common target")
    A = beta.category
    po = A.pushout(beta.codomain, gamma.codomain)
    lam = A.compose(beta.codomain, po.inj_x)
    return (_triple(beta.domain, A.compose(beta.arrow, po.inj_x), lam),
            _triple(gamma.domain, A.compose(gamma.arrow, po.inj_y), lam))


def common_adaptation(beta, gamma):
    b, g = common_restriction(beta, gamma)
    return common_coarsening(b, g)


def add_gen(phi, psi, sign=1):
    """``phi + psi`` (sign=1) or ``phi - psi`` (sign=-1) via common adaptation."""
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    if phi.source != psi.source or phi.target != psi.target:
        raise UsageError("sum of non-parallel generalized morphisms")
    A = phi.category
    p, q = common_adaptation(phi, psi)
    arrow = A.add(p.arrow, q.arrow) if sign == 1 else A.sub(p.arrow, q.arrow)
    return _triple(p.domain, arrow, p.codomain)


def associated_idempotent(psi):
    A = psi.category
    return _triple(psi.domain, A.zero_morphism(psi.arrow.source, psi.arrow.target),
                   psi.codomain)
