import random
from math import comb

import pytest

from serreq.errors import UsageError
from serreq.grmod import (annihilator, grmod_category, hilbert_function, hilbert_series,
                          is_quasi_zero_chart, is_quasi_zero_proj, is_quasi_zero_radical,
                          product_of_projective_lines)
from serreq.poly import GradedRing


@pytest.fixture
def A3(R3):
    return grmod_category(R3)


@pytest.fixture
def P1ring():
    return GradedRing.standard("x0 x1")


def test_hilbert_series_examples(A3):
    S = A3.free([0])
    assert hilbert_series(S) == {0: 1}
    assert [hilbert_function(S, d) for d in range(11)] == [comb(d + 2, 2) for d in range(11)]
    m = A3.quotient_ring(["x", "y", "z"])
    assert hilbert_series(m) == {0: 1, 1: -3, 2: 3, 3: -1}
    assert [hilbert_function(m, d) for d in range(4)] == [1, 0, 0, 0]
    assert hilbert_series(A3.twist(-2)) == {2: 1}


def test_hilbert_function_matches_normal_monomials(A3):
    M = A3.quotient_ring(["x*y - z^2", "x^3"])
    from serreq.groebner import buchberger
    G = buchberger([A3.ring.parse("x*y - z^2"), A3.ring.parse("x^3")])
    leads = [g.leading_exponent() for g in G]
    for d in range(8):
        standard = [e for e in A3.ring.monomials_of_degree(d)
                    if not any(all(a >= b for a, b in zip(e, l)) for l in leads)]
        assert hilbert_function(M, d) == len(standard)


def test_quasi_zero_on_projective_space(A3):
    assert is_quasi_zero_proj(A3.quotient_ring(["x", "y", "z"]))
    assert not is_quasi_zero_proj(A3.free([0]))
    assert not is_quasi_zero_proj(A3.quotient_ring(["x"]))
    assert is_quasi_zero_proj(A3.quotient_ring(["x^2", "y^3", "z"]))


def test_inhomogeneous_relation_rejected(A3):
    with pytest.raises(UsageError, match="row 0"):
        A3.module([0], [["x + y^2"]])


def test_mono_epi_examples(P1ring):
    A = grmod_category(P1ring)
    S = A.free([0])
    pair = A.morphism(A.free([1]), A.free([0, 0]), [["x0", "x1"]])
    assert A.is_mono(pair)
    assert A.is_mono(A.identity(S)) and A.is_epi(A.identity(S))
    copair = A.morphism(A.free([1, 1]), S, [["x0"], ["x1"]])
    assert not A.is_epi(copair)


def test_koszul_kernel_and_pullback(P1ring):
    A = grmod_category(P1ring)
    S = A.free([0])
    copair = A.morphism(A.free([1, 1]), S, [["x0"], ["x1"]])
    k = A.kernel(copair)
    assert k.object.data.degrees == ((2,),) and k.object.data.ngens == 1
    row = k.embedding.data.entries(P1ring)[0]
    assert [str(p) for p in row] in (["x1", "-x0"], ["-x1", "x0"])
    x0 = A.multiplication(S, P1ring.var(0), 1)
    x1 = A.multiplication(S, P1ring.var(1), 1)
    pb = A.pullback(x0, x1)
    assert pb.object.data.degrees == ((2,),)
    c = A.cokernel(A.zero_morphism(A.zero_object(), S))
    assert A.is_iso(c.projection)


def test_chart_and_radical_examples():
    ring = GradedRing.create("x0 x1 y0 y1", [(1, 0), (1, 0), (0, 1), (0, 1)])
    A = grmod_category(ring)
    charts = product_of_projective_lines(ring)
    good = A.quotient_ring(["x0", "x1"])
    bad = A.quotient_ring(["x0", "y0"])
    assert is_quasi_zero_chart(good, charts) and is_quasi_zero_radical(good, charts.irrelevant)
    assert not is_quasi_zero_chart(bad, charts)
    assert not is_quasi_zero_radical(bad, charts.irrelevant)
    assert is_quasi_zero_chart(A.zero_object(), charts)


def test_annihilators(R3):
    A = grmod_category(R3)
    x, y, _ = R3.gens()
    assert [str(p) for p in annihilator(A.quotient_ring(["x*y"]))] == ["x*y"]
    assert annihilator(A.free([0])) == []
    both = A.module([0, 0], [["x", "0"], ["0", "y"]])
    assert annihilator(both) == [x * y]


def test_quasi_zero_radical_on_projective_space(R3):
    A = grmod_category(R3)
    irrelevant = list(R3.gens())
    assert is_quasi_zero_radical(A.quotient_ring(["x", "y", "z"]), irrelevant)
    assert not is_quasi_zero_radical(A.free([0]), irrelevant)


def test_random_kernels_are_exact(P1ring):
    from serreq.sampling import GrModSampler
    A = grmod_category(GradedRing.standard("x y"))
    S = GrModSampler(A)
    for k in range(25):
        rng = random.Random(k)
        M, N = S.object(rng), S.object(rng)
        f = S.hom(rng, M, N)
        ker, cok = A.kernel(f), A.cokernel(f)
        assert A.is_zero_morphism(A.compose(ker.embedding, f))
        assert A.is_zero_morphism(A.compose(f, cok.projection))
        assert A.is_mono(ker.embedding) and A.is_epi(cok.projection)
