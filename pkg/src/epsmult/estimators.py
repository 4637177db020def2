"""scikit-learn style wrapper around the ε pipeline.

``fit`` takes an :class:`~epsmult.groebner.Ideal` instead of a data matrix;
``predict`` evaluates the ε-function at the requested powers.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .epsilon import compute_epsilon


class EpsilonMultiplicity(BaseEstimator):
    """Fits ``ε(I)`` and the ε-function of a homogeneous ideal.

    Parameters mirror :func:`~epsmult.epsilon.compute_epsilon`.  After
    ``fit``: ``epsilon_``, ``series_``, ``quasi_polynomial_``,
    ``analytic_spread_``, ``dimension_`` and ``report_``.
    """

    def __init__(self, sat_bound=2, method="bayer", prune=True, script_parity=False):
        self.sat_bound = sat_bound
        self.method = method
        self.prune = prune
        self.script_parity = script_parity

    def fit(self, I, y=None):
        rep = compute_epsilon(I, self.sat_bound, script_parity=self.script_parity,
                              prune=self.prune, method=self.method)
        self.report_ = rep
        self.epsilon_ = rep.epsilon
        self.series_ = rep.series
        self.quasi_polynomial_ = rep.quasi
        self.analytic_spread_ = rep.analytic_spread
        self.dimension_ = rep.dimension
        return self

    def _check(self):
        if not hasattr(self, "report_"):
            raise NotFittedError("call fit before using this estimator")

    def predict(self, powers):
        """``[λ(sat(I^n)/I^n) for n in powers]`` as exact integers."""
        self._check()
        powers = [int(n) for n in powers]
        if not powers:
            return []
        top = max(powers)
        coeffs = self.series_.series(max(top, 0)) if self.series_.numerator else [0] * (top + 1)
        return [int(coeffs[n]) if n >= 0 else 0 for n in powers]

    def score(self, I, y=None):
        """``ε(I)`` as a float."""
        self._check()
        return float(self.epsilon_)
