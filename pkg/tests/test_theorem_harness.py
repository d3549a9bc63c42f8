import numpy as np
import pytest

from extremeorders import power_systems as ps
from extremeorders.baseline import make_exponential, make_weibull
from extremeorders.errors import ConfigurationError, DegenerateInputError, RedAlertError
from extremeorders.order_checks import check_hr, check_rh
from extremeorders.random_extremes import SampleSizePMF
from extremeorders.sign_analysis import Classification
from extremeorders.theorem_harness import (
    Overall,
    TheoremId,
    TheoremReport,
    demonstrate_remark_31,
    demonstrate_remark_32_lr,
    random_configuration,
    search_c31_iid_pairs,
    soundness_sweep,
    verify_c31_iid,
    verify_t31,
    verify_t32,
    verify_t33,
    verify_t34,
)

E1, E2 = make_exponential(1.0), make_exponential(2.0)


def test_t31_on_first_example(ex1, grid):
    X, Y, pmf = ex1
    rep = verify_t31(X, Y, pmf, grid)
    assert rep.theorem_id is TheoremId.T31
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert rep.failed == ["F_1:n/G_1:n nondecreasing in n"]
    assert all(v.holds for _, v in rep.premise_results)
    assert rep.conclusion_result.holds is True
    name, kernel = rep.diagnostics[0]
    assert kernel.holds is True


def test_t32_roles_swapped(ex1, grid):
    X, Y, pmf = ex1
    rep = verify_t32(Y, X, pmf, grid)
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert rep.failed == ["F_1:n/G_1:n nonincreasing in n"]
    assert rep.conclusion_result.holds is True


def test_t32_negative_control_fails_premise(ex1, grid):
    X, Y, pmf = ex1
    rep = verify_t32(X, Y, pmf, grid)
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert any(name.startswith("premise") for name in rep.failed)


def test_t34_on_second_example(ex2, grid):
    X, Y, pmf = ex2
    rep = verify_t34(X, Y, pmf, grid)
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert rep.failed == ["Fbar_n:n/Gbar_n:n nondecreasing in n"]
    assert rep.hypothesis_results[0][1].holds is True
    assert rep.conclusion_result.holds is True


def test_t33_roles_swapped_and_control(ex2, grid):
    X, Y, pmf = ex2
    rep = verify_t33(Y, X, pmf, grid)
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert rep.conclusion_result.holds is True
    control = verify_t33(X, Y, pmf, grid)
    assert any(name.startswith("premise") for name in control.failed)


@pytest.mark.parametrize("verify,kind", [(verify_t31, "s"), (verify_t32, "s"), (verify_t33, "c"), (verify_t34, "c")])
def test_identical_systems_verify(verify, kind, grid):
    from extremeorders.presets import LAMBDAS, example_pmf
    make = ps.survival_power_system if kind == "s" else ps.cdf_power_system
    X = make(E1, LAMBDAS)
    rep = verify(X, X, example_pmf(), grid)
    assert rep.overall is Overall.VERIFIED


def test_degenerate_pmf_conclusion_equals_premise(ex1, ex2, grid):
    one = SampleSizePMF.degenerate(5)
    for verify, (X, Y, _) in ((verify_t31, ex1), (verify_t34, ex2)):
        rep = verify(X, Y, one, grid)
        (n, premise), = rep.premise_results
        assert n == 5
        assert premise.holds == rep.conclusion_result.holds
        assert premise.witnesses == rep.conclusion_result.witnesses


def test_shared_prefix_configuration_verifies(grid):
    X = ps.survival_power_system(E1, [0.3, 0.3, 0.8])
    Y = ps.survival_power_system(E1, [0.3, 0.3, 0.2])
    rep = verify_t31(X, Y, SampleSizePMF((1, 2, 3), (0.3, 0.3, 0.4)), grid)
    assert rep.overall is Overall.VERIFIED
    assert verify_t31(X, Y, SampleSizePMF((1, 2, 3), (0.3, 0.3, 0.4)), grid, strict=True).overall is Overall.VERIFIED


def test_strict_mode_raises_on_red_alert(grid):
    verdict = check_rh(E2.cdf, E1.cdf, grid)
    failing = check_rh(E1.cdf, E2.cdf, grid)
    rep = TheoremReport(TheoremId.T31, (("h", verdict),), ((1, verdict),), failing)
    assert rep.red_alert and rep.overall is Overall.CONCLUSION_FAILED
    from extremeorders.theorem_harness import _finish
    with pytest.raises(RedAlertError) as info:
        _finish(rep, strict=True)
    assert info.value.report is rep


def test_pair_validation(ex1, ex2):
    X, Y, pmf = ex1
    with pytest.raises(ConfigurationError):
        verify_t33(X, Y, pmf)
    with pytest.raises(ConfigurationError):
        verify_t31(X, ps.survival_power_system(E1, [0.1, 0.2]), SampleSizePMF.degenerate(1))
    with pytest.raises(ConfigurationError):
        verify_t31(X, ps.survival_power_system(E2, list(X.exponents)), pmf)


def test_c31_exponential_pair(grid):
    rep = verify_c31_iid(E2, E1, SampleSizePMF((3, 4, 5), (0.2, 0.4, 0.4)), grid)
    assert rep.overall is Overall.HYPOTHESIS_FAILED
    assert rep.failed == ["F_1:n/G_1:n nondecreasing in n"]
    diag = dict(rep.diagnostics)
    # the quoted simplified form passes here even though the true hypothesis fails
    assert diag["(F/G)^n nondecreasing in n"].holds is True


def test_c31_identical_baselines_verify(grid):
    rep = verify_c31_iid(E1, make_exponential(1.0), SampleSizePMF((3, 4, 5), (0.2, 0.4, 0.4)), grid)
    assert rep.overall is Overall.VERIFIED


def test_c31_search_finds_no_distinct_pair():
    from extremeorders.grid import default_grid
    assert search_c31_iid_pairs(default_grid(199)) == []


def test_remark_31_exponential(grid):
    rep = demonstrate_remark_31(E2, E1, 5, grid)
    assert rep.certified and rep.strictly_decreasing
    assert rep.case.classification is Classification.CASE_II


def test_remark_31_weibull(grid):
    rep = demonstrate_remark_31(make_weibull(2.0, 1.0), make_weibull(2.0, 2.0), 4, grid)
    assert rep.certified


def test_remark_31_rejects_bad_inputs(grid):
    with pytest.raises(DegenerateInputError):
        demonstrate_remark_31(E1, make_exponential(1.0), 4, grid)
    with pytest.raises(ConfigurationError):
        demonstrate_remark_31(E1, E2, 4, grid)
    with pytest.raises(ConfigurationError):
        demonstrate_remark_31(E2, E1, 1, grid)


def test_remark_32_equivalence_and_contradiction(grid):
    rep = demonstrate_remark_32_lr(E2, E1, 5, grid)
    assert rep.equivalence_holds and rep.ratio_increasing.holds and rep.contradiction
    back = demonstrate_remark_32_lr(E1, E2, 5, grid)
    assert back.equivalence_holds and back.ratio_increasing.holds is False and not back.contradiction


def test_remark_32_boundary(grid):
    rep = demonstrate_remark_32_lr(E1, make_exponential(1.0), 4, grid)
    assert rep.boundary and rep.equivalence_holds and not rep.contradiction


def test_duality_t31_t32():
    from extremeorders.grid import default_grid
    g = default_grid(199)
    rng = np.random.default_rng(7)
    for _ in range(25):
        base, lam, mu, pmf = random_configuration(rng, shared_prefix=True)
        X, Y = ps.survival_power_system(base, lam), ps.survival_power_system(base, mu)
        a, b = verify_t31(X, Y, pmf, g), verify_t32(Y, X, pmf, g)
        assert a.overall == b.overall
        assert a.conclusion_result.holds == b.conclusion_result.holds


def test_hazard_hypothesis_always_holds_in_family():
    from extremeorders.grid import default_grid
    g = default_grid(199)
    rng = np.random.default_rng(3)
    for _ in range(25):
        base, lam, mu, pmf = random_configuration(rng)
        rep = verify_t33(ps.cdf_power_system(base, lam), ps.cdf_power_system(base, mu), pmf, g)
        assert rep.hypothesis_results[0][1].holds is True


def test_random_configuration_respects_ordering():
    rng = np.random.default_rng(0)
    for flag in (False, True):
        for _ in range(30):
            _, lam, mu, pmf = random_configuration(rng, shared_prefix=flag)
            assert np.all(lam >= mu) and np.all(mu > 0)
            assert pmf.max_n <= lam.size
            if flag:
                k = pmf.max_n - 1
                np.testing.assert_array_equal(lam[:k], mu[:k])


def test_small_sweep_has_no_red_alerts():
    from extremeorders.grid import default_grid
    res = soundness_sweep(count=10, seed=1, grid=default_grid(199), shared_prefix=True)
    assert res.red_alert_count == 0
    assert sum(res.counts[TheoremId.T31].values()) == 20


def test_hr_premise_in_remark_pair(grid):
    assert check_hr(E2.survival, E1.survival, grid).holds
