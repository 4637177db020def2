import pytest

from epsmult.blowup import (
    BigradedPresentation,
    extend_ring,
    generated_part,
    rees_presentation,
    saturated_powers,
    saturated_rees_presentation,
    truncation_ideal,
    veronese_pair,
)
from epsmult.groebner import GradedRing
from epsmult.ideals import saturate


@pytest.fixture
def R():
    return GradedRing(["x", "y", "z"])


def test_rees_of_curve_ideal_bidegrees():
    W = GradedRing(["x", "y", "z"], [(3,), (4,), (5,)])
    I = W.ideal("x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y")
    P = rees_presentation(I)
    assert sorted(P.generator_bidegrees) == [(1, 8), (1, 9), (1, 10)]
    assert P.check_substitution()


def test_saturated_rees_pieces(R):
    I = R.ideal("x*y", "y*z", "x*z")
    P = saturated_rees_presentation(I, 2, prune=True)
    assert sorted(P.generator_bidegrees) == [(1, 2), (1, 2), (1, 2), (2, 3)]
    assert not P.warnings
    assert P.check_substitution()


def test_prune_keeps_the_algebra(R):
    I = R.ideal("x*y", "y*z", "x*z")
    a = saturated_rees_presentation(I, 2, prune=True).hilbert_series()
    b = saturated_rees_presentation(I, 2, prune=False).hilbert_series()
    assert a == b


def test_witness_flags_small_bound():
    W = GradedRing(["x", "y", "z"], [(10,), (11,), (13,)])
    I = W.ideal("x^2*z - y^3", "x^5 - y*z^3", "x^3*y^2 - z^4")
    P = saturated_rees_presentation(I, 2)
    assert P.warnings


def test_supplied_generators_used(R):
    I = R.ideal("x*y", "y*z", "x*z")
    P = saturated_rees_presentation(I, 2, generators={2: ["x*y*z", "x^2*y^2", "y^2*z^2", "x^2*z^2"]})
    assert sorted(P.generator_bidegrees)[-1] == (2, 4)


def test_json_round_trip(R):
    P = rees_presentation(R.ideal("x^2", "y^2"))
    Q = BigradedPresentation.from_json(P.to_json())
    assert Q.hilbert_series() == P.hilbert_series()


def test_generated_part(R):
    sats = saturated_powers(R.ideal("x*y", "y*z", "x*z"), 2)
    assert generated_part(sats, 2) == sats[0] ** 2


def test_truncation_and_extension(R):
    S, J, n = extend_ring(R, R.ideal("x", "y^2"))
    assert S.names == ("x", "y", "z", "U")
    T = truncation_ideal(J, 2, verify=True)
    assert all(g.degree() == 2 for g in T.gens)


def test_veronese_pair_witness():
    Q = GradedRing(["x", "y", "z"], relations=["x*y - z^2"])
    S, P2, ok = veronese_pair(Q.ideal("x", "z"), 2)
    assert ok and S == Q.ideal("x") and P2 == Q.ideal("x", "z") ** 2
    assert S == saturate(P2)
