import pytest
from _samplers import gen_chain, gen_pair, rngs, zmod_setting

from serreq.errors import UsageError
from serreq.generalized import (GeneralizedMorphism, add_gen, associated_idempotent,
                                common_coarsening, common_restriction, compose_gen, equal_gen,
                                honest_of, id_gen, negate, zero_gen)
from serreq.intmat import IntMatrix


@pytest.fixture
def ZZ(Z):
    return Z.free(1)


def gen(i, a, j):
    return GeneralizedMorphism(i, a, j)


def test_honest_embedding(Z, ZZ):
    h = honest_of(Z.identity(ZZ))
    assert h.is_honest() and equal_gen(h, id_gen(Z, ZZ))
    z = honest_of(Z.zero_morphism(ZZ, ZZ))
    assert same(z, zero_gen(Z, ZZ, ZZ))
    assert honest_of(Z.scalar(ZZ, 5)).arrow.data == IntMatrix([[5]])


def same(a, b):
    return equal_gen(a, b) and equal_gen(b, a)


def test_equal_gen_examples(Z, ZZ):
    one = Z.identity(ZZ)
    phi = gen(Z.scalar(ZZ, 2), Z.scalar(ZZ, 2), one)
    assert equal_gen(phi, phi)
    assert not equal_gen(phi, honest_of(one))
    a = gen(Z.scalar(ZZ, 2), one, one)
    b = gen(Z.scalar(ZZ, -2), Z.scalar(ZZ, -1), one)
    assert same(a, b)


def test_constructor_rejects_non_monos(Z, ZZ):
    with pytest.raises(UsageError):
        gen(Z.zero_morphism(ZZ, ZZ), Z.identity(ZZ), Z.identity(ZZ))


def test_compose_of_honest_is_honest_composite(Z, ZZ):
    f, g = Z.scalar(ZZ, 3), Z.scalar(ZZ, -2)
    assert same(compose_gen(honest_of(f), honest_of(g)), honest_of(Z.compose(f, g)))


def test_compose_by_hand(Z, ZZ):
    one = Z.identity(ZZ)
    Z3 = Z.cyclic(3)
    pi3 = Z.morphism(ZZ, Z3, IntMatrix([[1]]))
    phi = gen(Z.scalar(ZZ, 2), one, one)
    psi = gen(one, pi3, pi3)
    assert same(compose_gen(phi, psi), gen(Z.scalar(ZZ, 2), pi3, pi3))


def test_zero_is_not_absorbing(Z, ZZ):
    one = Z.identity(ZZ)
    psi = gen(Z.scalar(ZZ, 2), one, one)
    comp = compose_gen(psi, zero_gen(Z, ZZ, ZZ))
    assert not equal_gen(comp, zero_gen(Z, ZZ, ZZ))
    assert same(comp, associated_idempotent(psi))


def test_negation_examples(Z, ZZ):
    assert same(negate(honest_of(Z.scalar(ZZ, 2))), honest_of(Z.scalar(ZZ, -2)))
    assert same(negate(zero_gen(Z, ZZ, ZZ)), zero_gen(Z, ZZ, ZZ))
    assert same(honest_of(Z.identity(ZZ)) + honest_of(Z.identity(ZZ)),
                honest_of(Z.scalar(ZZ, 2)))


def test_common_restriction_and_coarsening(Z, ZZ):
    one = Z.identity(ZZ)
    b = gen(Z.scalar(ZZ, 2), one, one)
    g = gen(Z.scalar(ZZ, 3), one, one)
    rb, rg = common_restriction(b, g)
    assert Z.image_embedding(rb.domain).embedding.data in (IntMatrix([[6]]), IntMatrix([[-6]]))
    assert rb.domain is rg.domain
    p4 = Z.morphism(ZZ, Z.cyclic(4), IntMatrix([[1]]))
    p6 = Z.morphism(ZZ, Z.cyclic(6), IntMatrix([[1]]))
    cb, cg = common_coarsening(gen(one, p4, p4), gen(one, p6, p6))
    P = cb.codomain.target
    assert cg.codomain is cb.codomain
    assert Z.is_zero_morphism(Z.scalar(P, 2)) and not Z.is_zero_object(P)
    assert Z.is_zero_object(Z.kernel(Z.scalar(P, 3)).object)
    h = honest_of(Z.scalar(ZZ, 7))
    for x, y in (common_restriction(h, h), common_coarsening(h, h)):
        assert same(x, h) and same(y, h)


def test_add_requires_parallel(Z, ZZ):
    with pytest.raises(UsageError):
        add_gen(honest_of(Z.identity(ZZ)), honest_of(Z.identity(Z.free(2))))


def test_random_laws():
    _, S = zmod_setting()
    for rng in rngs("gen-laws", 60):
        phi, psi = gen_pair(S, rng)
        A = phi.category
        M, N = phi.source, phi.target
        assert same(phi + psi, psi + phi)
        assert same(psi - psi, associated_idempotent(psi))
        e = associated_idempotent(psi)
        assert same(e + e, e)
        assert same(associated_idempotent(phi + psi),
                    associated_idempotent(phi) + associated_idempotent(psi))
        assert same(compose_gen(id_gen(A, M), psi), psi)
        assert same(compose_gen(psi, id_gen(A, N)), psi)
        assert same(zero_gen(A, M, N) + psi, psi)
    for rng in rngs("gen-assoc", 30):
        f, g = gen_chain(S, rng)
        h = S.hom(rng, S.category.object(g.target), S.object(rng)).data
        assert same(compose_gen(compose_gen(f, g), h), compose_gen(f, compose_gen(g, h)))
