import pytest
from gmpy2 import mpq
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from epsmult.estimators import EpsilonMultiplicity
from epsmult.groebner import GradedRing


def test_params_and_clone():
    est = EpsilonMultiplicity(sat_bound=3, method="colon")
    assert est.get_params() == {"sat_bound": 3, "method": "colon", "prune": True, "script_parity": False}
    other = clone(est).set_params(sat_bound=2)
    assert other.sat_bound == 2 and est.sat_bound == 3


def test_fit_predict():
    R = GradedRing(["x", "y", "z"], [(3,), (4,), (5,)])
    I = R.ideal("x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y")
    est = EpsilonMultiplicity(sat_bound=2).fit(I)
    assert est.epsilon_ == mpq(1, 2)
    assert est.predict([1, 2, 3, 4]) == [0, 1, 3, 7]
    assert est.score(I) == 0.5
    assert est.dimension_ == 3 and est.analytic_spread_ == 3


def test_not_fitted():
    with pytest.raises(NotFittedError):
        EpsilonMultiplicity().predict([1])
