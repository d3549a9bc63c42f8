import itertools

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from extremeorders import power_systems as ps
from extremeorders.baseline import hazard_pair, make_exponential, make_weibull
from extremeorders.errors import ConfigurationError, InvalidParameterError
from extremeorders.power_systems import ComponentKind, ProportionalComponent, ProportionalSystem

E = make_exponential(1.0)


def test_prefix_sums_of_example_exponents(ex1):
    X, Y, _ = ex1
    np.testing.assert_allclose(X.cumulative_exponents, [0.1, 0.3, 0.55, 0.9, 1.4], atol=1e-15)
    np.testing.assert_allclose(Y.cumulative_exponents, [0.05, 0.2, 0.43, 0.76, 1.26], atol=1e-15)


def test_min_survival_examples(ex1):
    X, Y, _ = ex1
    assert ps.min_survival(X, 5, 1.0) == pytest.approx(float(mpmath.exp(-1.4)), abs=1e-15)
    assert ps.min_survival(Y, 3, 1.0) == pytest.approx(float(mpmath.exp(-0.43)), abs=1e-15)
    assert ps.min_survival(X, 4, 0.0) == 1.0


def test_min_cdf_examples(ex1):
    X, Y, _ = ex1
    assert ps.min_cdf(X, 5, 1.0) == pytest.approx(float(1 - mpmath.exp(-1.4)), abs=1e-15)
    assert ps.min_cdf(Y, 5, 1.0) == pytest.approx(float(1 - mpmath.exp(-1.26)), abs=1e-15)
    assert ps.min_cdf(X, 2, 0.0) == 0.0


def test_min_reversed_hazard_examples(ex1, grid):
    X, Y, _ = ex1
    expected = mpmath.mpf("1.4") / (mpmath.exp(mpmath.mpf("1.4")) - 1)
    assert ps.min_reversed_hazard(X, 5, 1.0) == pytest.approx(float(expected), rel=1e-13)
    one = ps.survival_power_system(E, [1.0])
    np.testing.assert_allclose(ps.min_reversed_hazard(one, 1, grid.xs), hazard_pair(E).reversed_hazard(grid.xs), rtol=1e-12)
    for n in (3, 4, 5):
        assert np.all(ps.min_reversed_hazard(X, n, grid.xs) <= ps.min_reversed_hazard(Y, n, grid.xs))
    assert np.isnan(ps.min_reversed_hazard(X, 3, 0.0))


def test_max_cdf_examples(ex2):
    X, _, _ = ex2
    expected = (1 - mpmath.exp(-1)) ** mpmath.mpf("1.4")
    assert ps.max_cdf(X, 5, 1.0) == pytest.approx(float(expected), abs=1e-15)
    assert ps.max_cdf(X, 5, 0.0) == 0.0
    one = ps.cdf_power_system(E, [1.0])
    assert ps.max_cdf(one, 1, 0.7) == pytest.approx(float(E.cdf(0.7)), abs=1e-16)


def test_max_hazard_examples(ex2, grid):
    X, Y, _ = ex2
    for n in (3, 4, 5):
        assert np.all(ps.max_hazard(X, n, grid.xs) <= ps.max_hazard(Y, n, grid.xs))
    assert np.all(ps.max_hazard(Y, 3, grid.xs) >= ps.max_hazard(Y, 5, grid.xs))
    one = ps.cdf_power_system(E, [1.0])
    assert ps.max_hazard(one, 1, 1.0) == pytest.approx(1.0, abs=1e-14)


def test_min_density_examples():
    sys_ = ps.survival_power_system(E, [1.4])
    assert ps.min_density(sys_, 1, 1.0) == pytest.approx(float(1.4 * mpmath.exp(-1.4)), abs=1e-15)
    one = ps.survival_power_system(make_weibull(2.0), [1.0])
    xs = np.linspace(0.1, 3, 30)
    np.testing.assert_allclose(ps.min_density(one, 1, xs), make_weibull(2.0).density(xs), rtol=1e-13)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_min_density_integrates_to_one(ex1, n):
    X, _, _ = ex1
    total, _ = integrate.quad(lambda t: ps.min_density(X, n, t), 0, np.inf, epsabs=1e-12, epsrel=1e-12)
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("n", [3, 5])
def test_max_density_integrates_to_one(ex2, n):
    X, _, _ = ex2
    total, _ = integrate.quad(lambda t: ps.max_density(X, n, t), 0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=200)
    assert total == pytest.approx(1.0, abs=1e-6)


def test_reversed_hazard_matches_density_ratio(ex1, grid):
    for sys_ in ex1[:2]:
        for n in range(1, 6):
            lhs = ps.min_reversed_hazard(sys_, n, grid.xs)
            rhs = ps.min_density(sys_, n, grid.xs) / ps.min_cdf(sys_, n, grid.xs)
            assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_max_hazard_matches_density_ratio(ex2, grid):
    for sys_ in ex2[:2]:
        for n in range(1, 6):
            lhs = ps.max_hazard(sys_, n, grid.xs)
            rhs = ps.max_density(sys_, n, grid.xs) / ps.max_survival(sys_, n, grid.xs)
            assert np.max(np.abs(lhs - rhs)) < 1e-9


exponents = st.lists(st.floats(min_value=0.01, max_value=5.0), min_size=1, max_size=6)


@settings(max_examples=100, deadline=None)
@given(exponents, st.randoms(use_true_random=False))
def test_product_consistency_under_reordering(expo, rnd):
    order = list(expo)
    rnd.shuffle(order)
    base = make_weibull(1.7, 0.8)
    sys_ = ps.survival_power_system(base, order)
    xs = np.linspace(0.05, 2.5, 40)
    direct = np.prod([base.survival(xs) ** a for a in expo], axis=0)
    assert np.max(np.abs(ps.min_survival(sys_, len(order), xs) - direct)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 4.0), st.floats(0.05, 4.0))
def test_lemma_corollary_orders_hazards(a, b):
    lam, mu = max(a, b), min(a, b)
    xs = np.linspace(0.01, 8, 200)
    X = ps.survival_power_system(E, [lam])
    Y = ps.survival_power_system(E, [mu])
    assert np.all(ps.min_reversed_hazard(X, 1, xs) <= ps.min_reversed_hazard(Y, 1, xs) * (1 + 1e-12))
    Xc = ps.cdf_power_system(E, [lam])
    Yc = ps.cdf_power_system(E, [mu])
    assert np.all(ps.max_hazard(Xc, 1, xs) <= ps.max_hazard(Yc, 1, xs) * (1 + 1e-12))


def test_general_products_for_mismatched_kinds():
    base = make_weibull(1.5)
    xs = np.linspace(0.05, 3, 50)
    expo = [0.4, 1.3, 2.0]
    cdfpow = ps.cdf_power_system(base, expo)
    survpow = ps.survival_power_system(base, expo)
    F, S = base.cdf(xs), base.survival(xs)
    np.testing.assert_allclose(ps.min_survival(cdfpow, 3, xs), np.prod([1 - F ** a for a in expo], axis=0), rtol=1e-12)
    np.testing.assert_allclose(ps.max_cdf(survpow, 3, xs), np.prod([1 - S ** a for a in expo], axis=0), rtol=1e-12)
    np.testing.assert_allclose(ps.min_cdf(cdfpow, 2, xs) + ps.min_survival(cdfpow, 2, xs), 1.0, atol=1e-14)


def test_index_and_kind_errors(ex1):
    X, _, _ = ex1
    for bad in (0, 6, -1, 2.5):
        with pytest.raises(IndexError):
            ps.min_survival(X, bad, 1.0)
    with pytest.raises(ConfigurationError):
        ps.max_hazard(X, 1, 1.0)
    with pytest.raises(ConfigurationError):
        ProportionalSystem(E, (ProportionalComponent(1.0, ComponentKind.CDF_POWER),
                               ProportionalComponent(1.0, ComponentKind.SURVIVAL_POWER)))
    with pytest.raises(ConfigurationError):
        ps.survival_power_system(E, [])
    with pytest.raises(InvalidParameterError):
        ps.survival_power_system(E, [1.0, 0.0])


def test_survival_underflow_clamps_to_zero():
    sys_ = ps.survival_power_system(E, [5.0])
    assert ps.min_survival(sys_, 1, 200.0) == 0.0
    assert ps.min_cdf(sys_, 1, 200.0) == 1.0


def test_table_shape(ex1, grid):
    X, _, _ = ex1
    tab = ps.table(ps.min_cdf, X, [3, 4, 5], grid.xs)
    assert tab.shape == (3, len(grid))
    for row, n in zip(tab, [3, 4, 5]):
        np.testing.assert_array_equal(row, ps.min_cdf(X, n, grid.xs))


def test_iid_system_exponents():
    sys_ = ps.iid_system(E, 4, ComponentKind.CDF_POWER)
    assert sys_.exponents == (1.0,) * 4 and sys_.prefix_exponent(3) == 3.0
    assert list(itertools.accumulate(sys_.exponents)) == list(sys_.cumulative_exponents)
