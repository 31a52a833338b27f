import numpy as np
import pytest

from mixedmeans import series as ps
from mixedmeans import verify as vf
from mixedmeans import weights as wt
from mixedmeans.verify import Criterion, Status

Z = ps.monomial(0, 1, 1)
Z2 = ps.monomial(0, 1, 2)
AREA_EX = vf.AREA_EXAMPLE
LENGTH_EX = vf.LENGTH_EXAMPLE

# The length mean of z^2 at alpha = -3, beta = 1 is not log-log convex near
# r = 1 (Delta(1/2, -3, x) < 0 there); the suite reports that honestly.
KNOWN_FAILING = {"convexity_regimes.length.beta1"}


@pytest.fixture(scope="module")
def suite():
    return vf.run_suite()


def test_default_suite_only_known_failures(suite):
    failing = {r.check_id for r in suite if r.status is Status.FAIL}
    assert failing == KNOWN_FAILING


def test_suite_sorted_and_ids_unique(suite):
    ids = [r.check_id for r in suite]
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids))


def test_failures_carry_witnesses(suite):
    for r in suite:
        if r.status is Status.FAIL:
            assert r.failures
            assert all(w.deviation > w.tolerance for w in r.failures)


def test_length_regime_failure_is_the_alpha_minus_three_case(suite):
    rep = next(r for r in suite if r.check_id == "convexity_regimes.length.beta1")
    bad = [w.input for w in rep.failures]
    assert bad and all(s.startswith("(ii) alpha=-3 z^2") for s in bad)


def test_runs_are_deterministic():
    jobs = vf.default_suite()[:12] + [vf.reproduce_examples]
    a = [r.to_dict() for r in vf.run_suite(jobs, workers=4)]
    b = [r.to_dict() for r in vf.run_suite(jobs, workers=1)]
    assert a == b


def test_thread_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MIXEDMEANS_THREADS", "3")
    assert vf.max_workers() == 3
    monkeypatch.setenv("MIXEDMEANS_THREADS", "junk")
    assert vf.max_workers() >= 1


def test_schwarz_equality_for_monomial_and_strict_otherwise():
    p = wt.WeightParams(1, 1)
    assert vf.check_schwarz("area", ps.monomial(0, 2, 3), p, [0.3, 0.5, 0.8]).status is Status.PASS
    assert vf.check_schwarz("area", AREA_EX, p, [0.5]).status is Status.PASS
    assert vf.check_schwarz("length", ps.construct([5]), p, [0.5]).status is Status.SKIPPED


def test_monotone_linear_beta_one_is_flat():
    rep = vf.check_monotone("area", Z, wt.WeightParams(0, 1), list(np.linspace(0.1, 0.9, 9)))
    assert rep.status is Status.PASS and "constant" in rep.notes


def test_lipschitz_examples():
    assert vf.check_lipschitz("area", Z, wt.WeightParams(0, 1), [(0.2, 0.9)]).status is Status.PASS
    rep = vf.check_lipschitz("area", Z2, wt.WeightParams(0, 1), [(0.2, 0.9)])
    assert rep.status is Status.PASS
    cap = next(w for w in rep.witnesses if "<=" in w.input)
    # set area of z^2 over the disk of radius s is pi s^4, so the cap is s^2
    assert cap.expected == pytest.approx(0.81)
    rep = vf.check_lipschitz("area", AREA_EX, wt.WeightParams(1, 1), [(0.3, 0.7)])
    q = next(w for w in rep.witnesses if ">=" in w.input).got
    assert q > 1e-6


def test_alpha_decrease_examples():
    assert vf.check_alpha_decrease("area", Z, 1.0, [-0.5, 0, 1]).status is Status.PASS
    assert vf.check_alpha_decrease("area", Z2, 1.0, [0, 1, 2]).status is Status.PASS
    assert vf.check_alpha_decrease("area", AREA_EX, 0.0, [-0.5, 0, 1]).status is Status.PASS
    with pytest.raises(vf.DomainError):
        vf.check_alpha_decrease("area", Z, 1.0, [-1.0, 0.0])


def test_univalence_examples():
    assert vf.check_univalence(Criterion.WEDGE, AREA_EX).status is Status.PASS
    assert vf.check_univalence(Criterion.NEHARI, LENGTH_EX).status is Status.PASS
    rep = vf.check_univalence(Criterion.WEDGE, Z2)
    assert rep.status is Status.FAIL and "normalization" in rep.notes
    rep = vf.check_univalence(Criterion.WEDGE, ps.construct([0, 1, 2]))
    assert rep.status is Status.FAIL and rep.failures


def test_disk_samples_stay_inside():
    z = vf.disk_samples(10_000)
    assert np.abs(z).max() <= 1 - 1e-3 and np.abs(z).min() > 0


def test_regime_examples():
    assert vf.check_convexity_regimes("area", 1.0, {"z+z^2/2": AREA_EX}).status is Status.PASS
    from mixedmeans import convexity as cx
    assert cx.delta(1, 1, 0.999) < 0
