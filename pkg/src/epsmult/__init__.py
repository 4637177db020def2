"""Exact ε-multiplicities of homogeneous ideals via saturated Rees algebras."""

__version__ = "0.1.0"

from .poly import Inhomogeneous, MonomialOrder, Polynomial, PolynomialRing, RingMismatch
from .groebner import GradedRing, Ideal, groebner_basis, is_groebner_basis, normal_form
from .ideals import (
    analytic_spread,
    colon,
    intersect,
    kernel_of_algebra_map,
    krull_dim,
    minimal_generators,
    saturate,
)
from .hilbert import NoStablePolynomial, RationalSeries, fit_hilbert_polynomial, hilbert_series, multiplicity
from .blowup import (
    BigradedPresentation,
    extend_ring,
    rees_presentation,
    saturated_rees_presentation,
    truncation_ideal,
    veronese_pair,
)
from .mixed import (
    MixedMultiplicities,
    bigraded_mixed,
    classical_mixed,
    convert_mixed,
    truncated_mixed,
)
from .epsilon import (
    AnalyticSpreadError,
    EpsilonReport,
    NotCofinal,
    PoleAtOne,
    QuasiPolynomial,
    compute_epsilon,
    epsilon_dim2,
    epsilon_from_series,
    epsilon_prime_point,
    epsilon_series,
    epsilon_via_epNoeth,
    factored_text,
    pair_length_series,
    quasi_polynomial,
)
from .oracle import epsilon_table, fit_linear

__all__ = [name for name in dir() if not name.startswith("_")]
