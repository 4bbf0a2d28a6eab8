from serreq.axioms import CHECKS, run_suite
from serreq.grmod import grmod_category
from serreq.poly import GradedRing
from serreq.sampling import GrModSampler, ZModSampler
from serreq.zmod import ZModCategory


def test_suite_runs_every_check():
    Z = ZModCategory()
    report = run_suite(Z, ZModSampler(Z), rounds=2, seed=5)
    assert report.ok, report.failures
    assert report.instances == 2 * len(CHECKS)
    assert set(report.per_check) == set(CHECKS)


def test_suite_catches_a_broken_backend():
    class Broken(ZModCategory):
        def _add(self, f, g):  # forgets the second summand
            return f

    B = Broken()
    report = run_suite(B, ZModSampler(B), rounds=3, seed=0)
    failed = {name for name, _, _ in report.failures}
    assert {"group_laws", "direct_sum"} <= failed


def test_suite_catches_a_wrong_kernel():
    class Broken(ZModCategory):
        def _kernel(self, f):
            k = super()._kernel(f)
            return k._replace(embedding=self.add(k.embedding, k.embedding))

    B = Broken()
    report = run_suite(B, ZModSampler(B), rounds=4, seed=0, checks=["kernel"])
    assert not report.ok


def test_graded_suite_small():
    A = grmod_category(GradedRing.standard("x y"))
    report = run_suite(A, GrModSampler(A), rounds=1, seed=3)
    assert report.ok, report.failures


def test_samplers_produce_nonzero_morphisms():
    Z = ZModCategory()
    S = ZModSampler(Z)
    import random
    rng = random.Random(0)
    nonzero = sum(not Z.is_zero_morphism(S.hom(rng, S.object(rng), S.object(rng)))
                  for _ in range(100))
    assert nonzero > 40
