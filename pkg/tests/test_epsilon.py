import pytest
from gmpy2 import mpq

from epsmult.epsilon import (
    AnalyticSpreadError,
    NotCofinal,
    PoleAtOne,
    compute_epsilon,
    cyclotomic,
    epsilon_dim2,
    epsilon_from_series,
    epsilon_prime_point,
    epsilon_series,
    epsilon_via_epNoeth,
    factored_text,
    lowest_terms,
    pair_length_series,
    quasi_polynomial,
    refactor,
    specialize,
)
from epsmult.groebner import GradedRing
from epsmult.hilbert import RationalSeries
from epsmult.oracle import epsilon_table


def series(num, den):
    return RationalSeries(1, {(k,): c for k, c in num.items()}, [(e,) for e in den])


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(2) == (1, 1)
    assert cyclotomic(6) == (1, -1, 1)


def test_lowest_terms_and_refactor():
    H = series({0: 1, 1: 1}, [2, 2])  # (1+t)/(1-t^2)^2 = 1/((1-t)^2 (1+t))
    num, counts = lowest_terms(H)
    assert num == [1] and counts == {1: 2, 2: 1}
    R = refactor(H)
    assert R == H
    assert sorted(R.denominator) == [(1,), (2,)]
    assert factored_text(H) == "1 / ((1-t)^2*(1+t))"


def test_quasi_polynomial_trivial():
    q = quasi_polynomial(series({0: 1}, [1]))
    assert q.period == 1 and q.degree == 0 and q(17) == 1


def test_quasi_polynomial_parity():
    q = quasi_polynomial(series({0: 1}, [1, 2]))
    for n in range(40):
        assert q(n) == mpq(2 * n + 3 + (-1) ** n, 4)


def test_quasi_polynomial_space_curve():
    q = quasi_polynomial(series({2: 1}, [1, 1, 1, 2]))
    for n in range(2, 40):
        closed = (mpq(1, 16) + mpq(n - 1, 8) + mpq(n * (n - 1), 8) + mpq((n + 1) * n * (n - 1), 12)
                  + mpq((-1) ** n, 16))
        assert q(n) == closed
    assert q.leading_coefficient == mpq(1, 12)


def test_epsilon_from_series_examples():
    assert epsilon_from_series(series({2: 1}, [1, 1, 1, 2]), 3) == mpq(1, 2)
    assert epsilon_from_series(series({}, []), 3) == 0
    fermat = series({1: 22, 2: 82, 3: 4}, [1, 1, 1, 1])
    assert epsilon_from_series(fermat, 3, scale=3) == 4
    with pytest.raises(ArithmeticError):
        epsilon_from_series(series({0: 1}, [1] * 5), 3)


def test_specialize_detects_pole():
    with pytest.raises(PoleAtOne):
        specialize(RationalSeries(2, {(1, 0): 1}, [(0, 1)]))


def test_series_for_maximal_ideal():
    R = GradedRing(["x", "y"])
    H = epsilon_series(R.maximal_ideal(), 1)
    assert H.series(8) == [v * (v + 1) // 2 for v in range(9)]


def test_series_matches_oracle_space_curve():
    W = GradedRing(["x", "y", "z"], [(3,), (4,), (5,)])
    I = W.ideal("x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y")
    H = epsilon_series(I, 2)
    assert H.series(5)[1:] == [n for _, n in epsilon_table(I, 5)]


def test_pair_length_series():
    R = GradedRing(["x", "y", "z"])
    I = R.ideal("x*y", "y*z", "x*z")
    assert pair_length_series(I, I).numerator == {}
    with pytest.raises(NotCofinal):
        pair_length_series(R.ideal("x^2"), R.ideal("x"))


def test_epnoeth_m_primary():
    R = GradedRing(["x", "y"])
    rep = epsilon_via_epNoeth(R.ideal("x^2", "y^4"), 1)
    assert rep.epsilon == 8 and rep.method == "epNoeth"


def test_reduction_invariance():
    R = GradedRing(["x", "y"])
    a = compute_epsilon(R.ideal("x^2", "y^4"), 1).epsilon
    b = compute_epsilon(R.ideal("x^2", "x*y^2", "y^4"), 1).epsilon
    assert a == b == 8


def test_principal_ideal_warning_and_parity():
    R = GradedRing(["x", "y"])
    rep = compute_epsilon(R.ideal("x"), 1)
    assert rep.epsilon == 0 and rep.warnings
    with pytest.raises(AnalyticSpreadError):
        compute_epsilon(R.ideal("x"), 1, script_parity=True)


def test_closed_formulas():
    assert epsilon_dim2([4, 1, 0]) == mpq(1, 4)
    assert epsilon_dim2([18, 14, 0]) == mpq(98, 9)
    assert epsilon_dim2([0, 0, 3], convention="rees") == 0
    assert epsilon_prime_point(3, 1) == mpq(4, 3)
    assert epsilon_prime_point(7, 4) == mpq(9, 7)
    assert epsilon_prime_point(5, 5) == 0
    with pytest.raises(ValueError):
        epsilon_prime_point(2, 3)
    with pytest.raises(ZeroDivisionError):
        epsilon_dim2([0, 1, 0])


def test_report_serialization():
    R = GradedRing(["x", "y", "z"])
    rep = compute_epsilon(R.ideal("x*y", "y*z", "x*z"), 2)
    js = rep.to_json()
    assert js["epsilon"] == "1/2"
    assert js["quasipolynomial"]["period"] == 2
    assert "epsilon = 1/2" in rep.to_text()


@pytest.mark.parametrize(
    "weights,gens,bound,eps",
    [
        ([10, 11, 13], ["x^2*z - y^3", "x^5 - y*z^3", "x^3*y^2 - z^4"], 3, mpq(4, 3)),
        ([11, 14, 10], ["x^2*z^2 - y^3", "x^4 - y*z^3", "x^2*y^2 - z^5"], 4, mpq(5, 2)),
    ],
)
def test_monomial_curves_against_oracle(weights, gens, bound, eps):
    W = GradedRing(["x", "y", "z"], [(w,) for w in weights])
    I = W.ideal(*gens)
    rep = compute_epsilon(I, bound)
    assert rep.series.series(5)[1:] == [n for _, n in epsilon_table(I, 5)]
    assert rep.epsilon == eps
