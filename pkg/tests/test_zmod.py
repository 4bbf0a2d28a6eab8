from fractions import Fraction

import pytest

from serreq.errors import NotLiftable, UsageError
from serreq.intmat import IntMatrix
from serreq.generalized import GeneralizedMorphism, honest_of
from serreq.zmod import rationalize, torsion_subcategory


def mat(rows):
    return IntMatrix(rows)


def test_mono_epi_examples(Z):
    ZZ = Z.free(1)
    assert Z.is_mono(Z.scalar(ZZ, 2))
    pi = Z.morphism(ZZ, Z.cyclic(2), mat([[1]]))
    assert not Z.is_mono(pi)
    assert Z.is_epi(Z.identity(ZZ))
    assert not Z.is_epi(Z.scalar(ZZ, 3))


def test_image_examples(Z):
    ZZ = Z.free(1)
    assert Z.is_zero_object(Z.image_embedding(Z.zero_morphism(ZZ, ZZ)).object)
    img = Z.image_embedding(Z.morphism(Z.free(2), ZZ, mat([[2], [6]])))
    assert img.embedding.data == mat([[2]])
    assert Z.image_embedding(Z.scalar(ZZ, 4)).embedding.data == mat([[4]])


def test_kernel_and_cokernel(Z):
    ZZ = Z.free(1)
    assert Z.is_zero_object(Z.kernel(Z.scalar(ZZ, 4)).object)
    c = Z.cokernel(Z.scalar(ZZ, 4)).object
    assert c.data.ngens == 1 and c.data.relations == mat([[4]])
    k = Z.kernel(Z.morphism(Z.free(2), ZZ, mat([[2], [6]])))
    assert k.embedding.data in (mat([[3, -1]]), mat([[-3, 1]]))


def test_pullback_of_multiples(Z):
    ZZ = Z.free(1)
    pb = Z.pullback(Z.scalar(ZZ, 2), Z.scalar(ZZ, 3))
    diag = Z.compose(pb.proj_x, Z.scalar(ZZ, 2))
    assert Z.image_embedding(diag).embedding.data in (mat([[6]]), mat([[-6]]))


def test_pushout_of_quotients(Z):
    ZZ = Z.free(1)
    p2 = Z.morphism(ZZ, Z.cyclic(2), mat([[1]]))
    p3 = Z.morphism(ZZ, Z.cyclic(3), mat([[1]]))
    assert Z.is_zero_object(Z.pushout(p2, p3).object)
    p4 = Z.morphism(ZZ, Z.cyclic(4), mat([[1]]))
    p6 = Z.morphism(ZZ, Z.cyclic(6), mat([[1]]))
    P = Z.pushout(p4, p6).object
    T = torsion_subcategory(Z)
    assert T.contains(P) and not Z.is_zero_object(P)
    # order 2: 2 kills the pushout, 1 does not
    assert Z.is_zero_morphism(Z.scalar(P, 2)) and not Z.is_zero_morphism(Z.scalar(P, 1))


def test_inverse_of_change_of_presentation(Z):
    A = Z.cyclic(6)
    B = Z.object(2, [[2, 0], [0, 3]])
    f = Z.morphism(A, B, mat([[1, 1]]))
    assert Z.is_iso(f)
    g = Z.inverse_of_iso(f)
    assert Z.is_equal(Z.compose(f, g), Z.identity(A))
    assert Z.is_equal(Z.compose(g, f), Z.identity(B))
    assert Z.is_equal(Z.inverse_of_iso(Z.scalar(Z.free(1), -1)), Z.scalar(Z.free(1), -1))


def test_ill_defined_morphism_rejected(Z):
    with pytest.raises(UsageError):
        Z.morphism(Z.cyclic(2), Z.free(1), mat([[1]]))


def test_torsion_membership(Z):
    T = torsion_subcategory(Z)
    assert T.contains(Z.cyclic(6))
    assert not T.contains(Z.free(1))
    assert not T.contains(Z.object(2, [[2, 0]]))


def test_rationalize_examples(Z):
    ZZ = Z.free(1)
    assert rationalize(Z.scalar(ZZ, 2)) == [[2]]
    g = GeneralizedMorphism(Z.scalar(ZZ, 2), Z.identity(ZZ), Z.identity(ZZ))
    assert rationalize(g) == [[Fraction(1, 2)]]
    z = honest_of(Z.morphism(ZZ, Z.cyclic(2), mat([[1]])))
    assert all(a == 0 for row in rationalize(z) for a in row)


def test_lift_failure_is_reported(Z):
    ZZ = Z.free(1)
    with pytest.raises(NotLiftable):
        Z.mono_lift(Z.scalar(ZZ, 2), Z.identity(ZZ))
