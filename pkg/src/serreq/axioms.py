"""Generic property suite for the Abelian category interface.

Every check works on any :class:`AbelianCategory` given a sampler with
``object(rng)`` and ``hom(rng, M, N)``. A check returns normally on success
and raises :class:`AxiomFailure` (or any exception) on failure.
"""

import random
import time
from dataclasses import dataclass, field


class AxiomFailure(AssertionError):
    pass


def _expect(cond, what):
    if not cond:
        raise AxiomFailure(what)


def _eq(C, f, g, what):
    _expect(C.is_equal(f, g), what)


# -- individual checks -------------------------------------------------------

def check_identity(C, S, rng):
    M, N = S.object(rng), S.object(rng)
    f = S.hom(rng, M, N)
    _eq(C, C.compose(C.identity(M), f), f, "left identity")
    _eq(C, C.compose(f, C.identity(N)), f, "right identity")


def check_associativity(C, S, rng):
    M, N, P, Q = (S.object(rng) for _ in range(4))
    f, g, h = S.hom(rng, M, N), S.hom(rng, N, P), S.hom(rng, P, Q)
    _eq(C, C.compose(C.compose(f, g), h), C.compose(f, C.compose(g, h)), "associativity")


def check_well_defined(C, S, rng):
    M, N, P = (S.object(rng) for _ in range(3))
    f, g = S.hom(rng, M, N), S.hom(rng, N, P)
    _expect(C.is_well_defined(f), "sampled morphism is well defined")
    _expect(C.is_well_defined(C.compose(f, g)), "composite is well defined")
    _expect(C.is_well_defined(C.add(f, f)), "sum is well defined")


def check_equality(C, S, rng):
    M, N = S.object(rng), S.object(rng)
    f, g = S.hom(rng, M, N), S.hom(rng, M, N)
    _eq(C, f, f, "reflexivity")
    _expect(C.is_equal(f, g) == C.is_equal(g, f), "symmetry")
    _eq(C, C.sub(C.add(f, g), g), f, "(f + g) - g == f")


def check_group_laws(C, S, rng):
    M, N = S.object(rng), S.object(rng)
    f, g, h = (S.hom(rng, M, N) for _ in range(3))
    _eq(C, C.add(C.add(f, g), h), C.add(f, C.add(g, h)), "addition associative")
    _eq(C, C.add(f, g), C.add(g, f), "addition commutative")
    _eq(C, C.add(f, C.zero_morphism(M, N)), f, "zero is neutral")
    _eq(C, C.add(f, C.negate(f)), C.zero_morphism(M, N), "negation is inverse")


def check_bilinearity(C, S, rng):
    M, N, P = (S.object(rng) for _ in range(3))
    f, g = S.hom(rng, M, N), S.hom(rng, M, N)
    h, k = S.hom(rng, N, P), S.hom(rng, N, P)
    _eq(C, C.compose(C.add(f, g), h), C.add(C.compose(f, h), C.compose(g, h)), "right distributive")
    _eq(C, C.compose(f, C.add(h, k)), C.add(C.compose(f, h), C.compose(f, k)), "left distributive")


def check_zero_object(C, S, rng):
    Z = C.zero_object()
    M = S.object(rng)
    _expect(C.is_zero_object(Z), "zero object is zero")
    _eq(C, C.identity(Z), C.zero_morphism(Z, Z), "identity of zero is zero")
    f = S.hom(rng, Z, M)
    _eq(C, f, C.zero_morphism(Z, M), "unique morphism out of zero")
    g = S.hom(rng, M, Z)
    _eq(C, g, C.zero_morphism(M, Z), "unique morphism into zero")


def check_direct_sum(C, S, rng):
    M1, M2 = S.object(rng), S.object(rng)
    s = C.direct_sum(M1, M2)
    _eq(C, C.compose(s.inj1, s.proj1), C.identity(M1), "inj1 proj1 = 1")
    _eq(C, C.compose(s.inj2, s.proj2), C.identity(M2), "inj2 proj2 = 1")
    _eq(C, C.compose(s.inj1, s.proj2), C.zero_morphism(M1, M2), "inj1 proj2 = 0")
    _eq(C, C.compose(s.inj2, s.proj1), C.zero_morphism(M2, M1), "inj2 proj1 = 0")
    _eq(C, C.add(C.compose(s.proj1, s.inj1), C.compose(s.proj2, s.inj2)),
        C.identity(s.object), "proj1 inj1 + proj2 inj2 = 1")


def check_pairing(C, S, rng):
    N, M1, M2 = (S.object(rng) for _ in range(3))
    f1, f2 = S.hom(rng, N, M1), S.hom(rng, N, M2)
    s = C.direct_sum(M1, M2)
    p = C.pairing(f1, f2)
    _eq(C, C.compose(p, s.proj1), f1, "pairing then proj1")
    _eq(C, C.compose(p, s.proj2), f2, "pairing then proj2")


def check_copairing(C, S, rng):
    N, M1, M2 = (S.object(rng) for _ in range(3))
    g1, g2 = S.hom(rng, M1, N), S.hom(rng, M2, N)
    s = C.direct_sum(M1, M2)
    c = C.copairing(g1, g2)
    _eq(C, C.compose(s.inj1, c), g1, "inj1 then copairing")
    _eq(C, C.compose(s.inj2, c), g2, "inj2 then copairing")


def check_kernel(C, S, rng):
    M, N, L = (S.object(rng) for _ in range(3))
    f = S.hom(rng, M, N)
    k = C.kernel(f)
    _eq(C, C.compose(k.embedding, f), C.zero_morphism(k.object, N), "kernel composite is zero")
    _expect(C.is_mono(k.embedding), "kernel embedding is mono")
    x = S.hom(rng, L, k.object)
    tau = C.compose(x, k.embedding)
    u = C.kernel_lift(k.embedding, tau)
    _eq(C, C.compose(u, k.embedding), tau, "kernel lift factors tau")
    _eq(C, u, x, "kernel lift is unique")


def check_cokernel(C, S, rng):
    M, N, L = (S.object(rng) for _ in range(3))
    f = S.hom(rng, M, N)
    c = C.cokernel(f)
    _eq(C, C.compose(f, c.projection), C.zero_morphism(M, c.object), "cokernel composite is zero")
    _expect(C.is_epi(c.projection), "cokernel projection is epi")
    y = S.hom(rng, c.object, L)
    eta = C.compose(c.projection, y)
    u = C.cokernel_colift(c.projection, eta)
    _eq(C, C.compose(c.projection, u), eta, "cokernel colift factors eta")
    _eq(C, u, y, "cokernel colift is unique")


def check_mono_lift(C, S, rng):
    M, N, L = (S.object(rng) for _ in range(3))
    f = S.hom(rng, M, N)
    img = C.image_embedding(f)
    _expect(C.is_mono(img.embedding), "image embedding is mono")
    # tau with tau . coker(img) == 0 is exactly a morphism through the image
    x = S.hom(rng, L, img.object)
    tau = C.compose(x, img.embedding)
    _expect(C.is_zero_morphism(C.compose(tau, C.cokernel(img.embedding).projection)),
            "tau is killed by the cokernel")
    u = C.mono_lift(img.embedding, tau)
    _eq(C, C.compose(u, img.embedding), tau, "mono lift factors tau")


def check_epi_colift(C, S, rng):
    M, N, L = (S.object(rng) for _ in range(3))
    f = S.hom(rng, M, N)
    p = C.coimage_projection(f)
    _expect(C.is_epi(p), "coimage projection is epi")
    y = S.hom(rng, p.target, L)
    eta = C.compose(p, y)
    _expect(C.is_zero_morphism(C.compose(C.kernel(p).embedding, eta)),
            "eta kills the kernel")
    u = C.epi_colift(p, eta)
    _eq(C, C.compose(p, u), eta, "epi colift factors eta")


def check_pullback(C, S, rng):
    X, Y, Z, T = (S.object(rng) for _ in range(4))
    f, g = S.hom(rng, X, Z), S.hom(rng, Y, Z)
    pb = C.pullback(f, g)
    _eq(C, C.compose(pb.proj_x, f), C.compose(pb.proj_y, g), "pullback square commutes")
    t = S.hom(rng, T, pb.object)
    a, b = C.compose(t, pb.proj_x), C.compose(t, pb.proj_y)
    u = C.mono_lift(C.pairing(pb.proj_x, pb.proj_y), C.pairing(a, b))
    _eq(C, C.compose(u, pb.proj_x), a, "pullback universal (x)")
    _eq(C, C.compose(u, pb.proj_y), b, "pullback universal (y)")


def check_pushout(C, S, rng):
    X, Y, Z, T = (S.object(rng) for _ in range(4))
    f, g = S.hom(rng, Z, X), S.hom(rng, Z, Y)
    po = C.pushout(f, g)
    _eq(C, C.compose(f, po.inj_x), C.compose(g, po.inj_y), "pushout square commutes")
    t = S.hom(rng, po.object, T)
    a, b = C.compose(po.inj_x, t), C.compose(po.inj_y, t)
    u = C.epi_colift(C.copairing(po.inj_x, po.inj_y), C.copairing(a, b))
    _eq(C, C.compose(po.inj_x, u), a, "pushout universal (x)")
    _eq(C, C.compose(po.inj_y, u), b, "pushout universal (y)")


def check_image_factorization(C, S, rng):
    M, N = S.object(rng), S.object(rng)
    f = S.hom(rng, M, N)
    p, iso, e = C.image_factorization(f)
    _eq(C, C.compose(C.compose(p, iso), e), f, "coimage . iso . image == f")
    _expect(C.is_iso(iso), "coimage-to-image map is iso")


def check_inverse_of_iso(C, S, rng):
    M, N = S.object(rng), S.object(rng)
    f = S.hom(rng, M, N)
    iso = C.coimage_to_image_iso(f)
    inv = C.inverse_of_iso(iso)
    _eq(C, C.compose(iso, inv), C.identity(iso.source), "iso . inverse == 1")
    _eq(C, C.compose(inv, iso), C.identity(iso.target), "inverse . iso == 1")


CHECKS = {
    "identity": check_identity,
    "associativity": check_associativity,
    "well_defined": check_well_defined,
    "equality": check_equality,
    "group_laws": check_group_laws,
    "bilinearity": check_bilinearity,
    "zero_object": check_zero_object,
    "direct_sum": check_direct_sum,
    "pairing": check_pairing,
    "copairing": check_copairing,
    "kernel": check_kernel,
    "cokernel": check_cokernel,
    "mono_lift": check_mono_lift,
    "epi_colift": check_epi_colift,
    "pullback": check_pullback,
    "pushout": check_pushout,
    "image_factorization": check_image_factorization,
    "inverse_of_iso": check_inverse_of_iso,
}


@dataclass
class SuiteReport:
    category: str
    instances: int = 0
    failures: list = field(default_factory=list)
    per_check: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.category}: {self.instances} instances, {status}, {self.seconds:.1f}s"


def run_suite(category, sampler, rounds=12, seed=0, checks=None):
    """Run every check ``rounds`` times with per-instance seeds derived from ``seed``."""
    report = SuiteReport(category.name)
    start = time.perf_counter()
    names = list(checks or CHECKS)
    for r in range(rounds):
        for k, name in enumerate(names):
            rng = random.Random(f"{seed}:{name}:{r}")
            try:
                CHECKS[name](category, sampler, rng)
            except Exception as exc:  # a crash is a failure of that instance
                report.failures.append((name, r, f"{type(exc).__name__}: {exc}"))
            report.instances += 1
            report.per_check[name] = report.per_check.get(name, 0) + 1
    report.seconds = time.perf_counter() - start
    return report
