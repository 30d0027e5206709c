import pytest

from dualhs.numfun import (FitError, SeriesNumerator, binom, binom_poly,
                           fit_numerical, fit_value_table,
                           numerator_from_values)


def test_binomial_triangle_fit():
    vals = [binom(n + 2, 2) for n in range(6)]
    fit = fit_numerical(vals, 2)
    assert fit.degree == 2
    assert fit.coefficients == (1, 0, 0)
    assert fit.postulation == 0


def test_linear_fit_from_dual_values():
    # oracle: dual Hilbert-Samuel table of the worked rank-one module, 2(n+1)
    fit = fit_numerical([2, 4, 6, 8, 10, 12], 1)
    assert fit.degree == 1
    assert fit.coefficients == (2, 0)
    assert fit.postulation == 0


def test_eventually_constant_fit():
    fit = fit_numerical([1, 3, 4, 4, 4, 4], 0)
    assert fit.degree == 0
    assert fit.coefficients == (4,)
    assert fit.postulation == 2


def test_zero_function_marker():
    fit = fit_numerical([0] * 8, 1)
    assert fit.is_zero and fit.degree is None
    assert fit.poly_value(5) == 0


def test_postulation_not_reached():
    with pytest.raises(FitError, match="postulation"):
        fit_numerical([1, 2, 4, 8, 16, 32, 64, 128], 1)


def test_too_few_values_rejected():
    with pytest.raises(FitError, match="values"):
        fit_numerical([1, 2, 3], 2)


def test_fitted_polynomial_matches_table_beyond_postulation():
    vals = [7, 1, 3, 5, 7, 9, 11, 13]
    fit = fit_numerical(vals, 1)
    assert fit.postulation == 1
    for n in range(fit.postulation, len(vals)):
        assert fit.poly_value(n) == vals[n]


def test_value_table_extension():
    fit = fit_value_table(lambda n: 3 * binom(n + 1, 1) - 2, 1)
    assert fit.coefficients == (3, 2)


def test_value_table_cap():
    with pytest.raises(FitError):
        fit_value_table(lambda n: 2 ** n, 1, nmax_cap=12)


def test_coefficients_at_larger_degree():
    fit = fit_numerical([2, 4, 6, 8, 10, 12], 1)
    assert fit.coefficients_at_degree(2) == (0, -2, 0)
    # re-expansion evaluates to the same polynomial (oracle: direct sum)
    for n in range(5):
        s = sum((-1) ** i * a * binom(n + 2 - i, 2 - i)
                for i, a in enumerate(fit.coefficients_at_degree(2)))
        assert s == 2 * (n + 1)


def test_series_numerator_expansion_reproduces_values():
    vals = [1, 2, 1, 1, 1, 1, 1]
    f = numerator_from_values(vals, 1, 2)
    assert list(f.coeffs) == [1, 1, -1]
    assert f.expand(6) == vals
    assert f.at_one() == 1
    assert f.derivative_at_one() == -1


def test_numerator_of_binomial_series():
    vals = [binom(n + 2, 2) for n in range(8)]
    f = numerator_from_values(vals, 3, 0)
    assert list(f.coeffs) == [1]
    assert f.expand(7) == vals


def test_numerator_requires_enough_tail():
    with pytest.raises(FitError):
        numerator_from_values([1, 2], 3, 1)


def test_binom_poly_negative_arguments():
    assert binom_poly(-1, 0) == 1
    assert binom_poly(-4, 1) == -4
    assert binom_poly(-2, 2) == 3
    assert binom(-1, 0) == 0  # series convention differs by design
