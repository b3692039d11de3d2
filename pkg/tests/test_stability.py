import math

import numpy as np
import pytest

from nstab.continuous import Exponential, PeriodicHazard, SemiWeibull
from nstab.discrete_laws import Degenerate, Geometric, Harris, Sibuya
from nstab.errors import ParameterError, RegistryError
from nstab.stability import (
    REGISTRY,
    GridSpec,
    Mode,
    StabilityProblem,
    controls_for,
    eps_bound_for,
    full_cycle_phases,
    get_pairing,
    infer_constant,
    registry_suite,
    residuals,
    stability_constant,
    verify_stability,
)

TAGS = [p.tag for p in REGISTRY]
PERIODIC_TAGS = [p.tag for p in REGISTRY if p.periodic]


def test_exponential_sibuya_max():
    rep = verify_stability(StabilityProblem(Exponential(1.0), Sibuya(0.5), Mode.MAX, 0.5))
    assert rep.sup_residual < 1e-13 and rep.verdict
    assert rep.grid.size == 200
    assert rep.grid[0] == pytest.approx(1e-3) and rep.grid[-1] == pytest.approx(1e3)


def test_exponential_degenerate_min():
    rep = verify_stability(StabilityProblem(Exponential(1.0), Degenerate(3), "min", 1 / 3))
    assert rep.sup_residual < 1e-13 and rep.verdict


def test_exponential_sibuya_min_fails():
    problem = StabilityProblem(Exponential(1.0), Sibuya(0.5), Mode.MIN, 0.5)
    rep = verify_stability(problem)
    assert rep.sup_residual > 0.01 and not rep.verdict
    # oracle at x = 1: Q(exp(-0.5)) against exp(-1)
    direct = abs(1 - (1 - math.exp(-0.5)) ** 0.5 - math.exp(-1.0))
    assert residuals(problem, [1.0])[0] == pytest.approx(direct, rel=1e-12)


def test_stability_constant_examples():
    assert stability_constant("exponential-sibuya-max", v=0.5) == pytest.approx(0.5)
    assert stability_constant("semi-weibull-sibuya-max", p=0.25, alpha=2.0) == pytest.approx(0.5)
    assert stability_constant("gsp-harris-min", a=3.0, alpha=1.0, k=2) == pytest.approx(1 / 3)


def test_unknown_tag():
    with pytest.raises(RegistryError):
        get_pairing("no-such-pairing")


def test_registry_rejects_unit_point_mass():
    with pytest.raises(ParameterError):
        get_pairing("exponential-degenerate-min").make(k=1)


@pytest.mark.parametrize("c", [0.0, 1.0, -0.5, 1.5])
def test_constant_out_of_range(c):
    with pytest.raises(ParameterError):
        StabilityProblem(Exponential(1.0), Sibuya(0.5), Mode.MAX, c)


def test_infer_constant():
    c, tag = infer_constant(Exponential(1.0), Sibuya(0.3), Mode.MAX)
    assert c == pytest.approx(0.3) and tag == "exponential-sibuya-max"
    with pytest.raises(RegistryError):
        infer_constant(Exponential(1.0), Harris(2.0, 1), Mode.MAX)


def test_registry_covers_all_claims():
    assert len(REGISTRY) >= 10
    assert len(set(TAGS)) == len(TAGS)
    assert sum(p.discrete for p in REGISTRY) >= 5


@pytest.mark.parametrize("tag", TAGS)
def test_positive_pairings_pass(tag):
    rep = verify_stability(get_pairing(tag).problem(), provenance=tag)
    assert rep.sup_residual < 1e-10


@pytest.mark.parametrize("tag", TAGS)
def test_controls_fail(tag):
    pairing = get_pairing(tag)
    problem = pairing.problem()
    labels = []
    for label, ctrl in controls_for(pairing, problem):
        rep = verify_stability(ctrl)
        assert rep.sup_residual > 1e-4, label
        labels.append(label)
    assert "wrong-c" in labels
    assert any(l.startswith("wrong-law") for l in labels)


@pytest.mark.parametrize("tag", TAGS)
def test_other_laws_break_identity(tag):
    # substituting any other control law (same mode, same c) leaves a residual above 1e-3
    pairing = get_pairing(tag)
    for label, ctrl in controls_for(pairing, pairing.problem()):
        if label.startswith("wrong-law") or label.startswith("wrong-support"):
            assert np.max(residuals(ctrl, GridSpec().points(ctrl.discrete))) > 1e-3, label


@pytest.mark.parametrize("tag", PERIODIC_TAGS)
def test_residual_invariant_under_periodic_term(tag):
    pairing = get_pairing(tag)
    bound = eps_bound_for(pairing)
    base = verify_stability(pairing.problem())
    for frac in (0.5, 1.0, -1.0):
        for phase in full_cycle_phases(3):
            rep = verify_stability(pairing.problem(eps=frac * bound, phase=phase))
            assert rep.verdict
            assert abs(rep.sup_residual - base.sup_residual) < 1e-12


@pytest.mark.parametrize("lam", [0.01, 0.5, 7.0])
def test_scale_invariance(lam):
    grid = np.geomspace(1e-3, 1e3, 200)
    for law, mode, c in [(Sibuya(0.5), Mode.MAX, 0.5), (Degenerate(3), Mode.MIN, 1 / 3),
                         (Sibuya(0.5), Mode.MIN, 0.5)]:
        scaled = residuals(StabilityProblem(Exponential(lam), law, mode, c), grid)
        unit = residuals(StabilityProblem(Exponential(1.0), law, mode, c), lam * grid)
        assert np.max(np.abs(scaled - unit)) < 1e-14


@pytest.mark.parametrize("tag", TAGS)
def test_refinement_never_lowers_sup(tag):
    pairing = get_pairing(tag)
    problems = [pairing.problem()] + [ctrl for _, ctrl in controls_for(pairing, pairing.problem())]
    for problem in problems:
        coarse = GridSpec(n=50, j_max=50).points(problem.discrete)
        extra = np.sqrt(coarse[:-1] * coarse[1:]) if not problem.discrete else np.arange(51.0, 120.0)
        fine = np.union1d(coarse, extra)
        assert verify_stability(problem, fine).sup_residual >= verify_stability(problem, coarse).sup_residual


def test_discrete_grid_is_integers():
    rep = verify_stability(get_pairing("geometric-sibuya-max").problem())
    assert np.array_equal(rep.grid, np.arange(201.0))


def test_semi_weibull_with_wrong_law():
    # a periodic semi-Weibull against a geometric minimum law
    p = 0.4
    f = SemiWeibull(PeriodicHazard(1.5, p, 0.5 * PeriodicHazard.eps_bound(p), 1.0))
    rep = verify_stability(StabilityProblem(f, Geometric(p, "I1"), Mode.MIN, p ** (1 / 1.5)))
    assert not rep.verdict


def test_suite_all_correct():
    reports = registry_suite()
    assert all(r.correct for r in reports)
    positives = [r for r in reports if r.expected]
    assert len(positives) == len(REGISTRY)
    assert [r.provenance for r in positives] == TAGS


def test_suite_positives_only_and_tags():
    reports = registry_suite(positives_only=True, tags=["gsp-harris-min"])
    assert len(reports) == 1 and reports[0].control is None


def test_report_serialization():
    rep = registry_suite(tags=["exponential-sibuya-max"])[1]
    d = rep.to_dict(arrays=False)
    assert d["expected"] == "fail" and d["verdict"] == "fail" and d["correct"]
    assert "grid" not in d
    assert len(rep.to_dict()["residuals"]) == 200
