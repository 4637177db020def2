import pytest

from epsmult.groebner import GradedRing, Ideal
from epsmult.ideals import (
    AlgebraMap,
    analytic_spread,
    colon,
    graded_piece_basis,
    intersect,
    kernel_of_algebra_map,
    krull_dim,
    minimal_generators,
    saturate,
)
from epsmult.poly import PolynomialRing


@pytest.fixture
def R():
    return GradedRing(["x", "y", "z"])


def test_colon_examples(R):
    assert colon(R.ideal("x^2", "x*y"), R("x")) == R.ideal("x", "y")
    assert colon(R.ideal("x*y"), R.ideal("x")) == R.ideal("y")
    assert colon(R.ideal("x"), R.ideal("x")).is_unit()


def test_colon_in_quotient_ring_keeps_relations():
    F = GradedRing(["x", "y", "z"], relations=["x*y", "x*z", "y*z"])
    assert colon(F.ideal("y^2", "z^2"), F("x")) == F.ideal("y", "z")


def test_intersection_examples(R):
    assert intersect(R.ideal("x"), R.ideal("y")) == R.ideal("x*y")
    assert intersect(R.ideal("x", "y"), R.ideal("z")) == R.ideal("x*z", "y*z")
    I = R.ideal("x^2", "y*z")
    assert intersect(I, R.unit_ideal()) == I


@pytest.mark.parametrize("method", ["bayer", "colon", "rabinowitsch"])
def test_saturation_examples(method):
    S = GradedRing(["x", "y"])
    assert saturate(S.ideal("x^2", "x*y"), method=method) == S.ideal("x")
    assert saturate(S.ideal("x^3", "y^2"), method=method).is_unit()
    Q = GradedRing(["x", "y", "z"], relations=["x*y - z^2"])
    P = Q.ideal("x", "z")
    assert saturate(P**2, method=method) == Q.ideal("x")


def test_mingens_examples(R):
    assert {str(g) for g in minimal_generators(R.ideal("x", "x^2", "y"))} == {"x", "y"}
    I = R.ideal("x*y", "y*z", "x*z")
    got = {str(g) for g in minimal_generators(saturate(I**2))}
    assert got == {"x*y*z", "x^2*y^2", "y^2*z^2", "x^2*z^2"}


def test_mingens_elliptic_quadric():
    E = GradedRing(["x", "y", "z"], relations=["x^3 - y^2*z + z^3"])
    Q = E.ideal("x - 2*z", "y - 3*z")
    (g,) = minimal_generators(saturate(Q**6))
    assert g == E("12*x^2 - 6*x*y + y^2 - 6*x*z - 6*y*z + 9*z^2")


def test_graded_piece_basis_dimension(R):
    assert len(graded_piece_basis(R.ideal("x", "y"), 2)) == 5


def test_kernel_of_monomial_curve():
    T = GradedRing(["s"])
    src = PolynomialRing(["a", "b", "c"], [(3,), (4,), (5,)])
    K = kernel_of_algebra_map(AlgebraMap(src, T, [T("s^3"), T("s^4"), T("s^5")]))
    expect = Ideal(K.ring, [K.ring("a^3 - b*c"), K.ring("b^2 - a*c"), K.ring("c^2 - a^2*b")])
    assert K == expect


def test_kernel_cusp_and_identity():
    T = GradedRing(["s"])
    src = PolynomialRing(["a", "b"], [(2,), (3,)])
    K = kernel_of_algebra_map(AlgebraMap(src, T, [T("s^2"), T("s^3")]))
    assert K == Ideal(K.ring, [K.ring("a^3 - b^2")])
    T2 = GradedRing(["u", "v"])
    src2 = PolynomialRing(["a", "b"])
    assert kernel_of_algebra_map(AlgebraMap(src2, T2, [T2("u"), T2("v")])).is_zero()


def test_krull_dimensions():
    assert krull_dim(GradedRing(["x", "y"], relations=["x*y"])) == 1
    assert krull_dim(GradedRing(["x", "y", "z"], relations=["x^3 + y^3 + z^3"])) == 2
    assert krull_dim(GradedRing([f"x{i}" for i in range(9)])) == 9


def test_analytic_spread_examples(R):
    assert analytic_spread(R.ideal("x*y", "y*z", "x*z")) == 3
    assert analytic_spread(R.ideal("x^2 + y*z")) == 1
    S = GradedRing(["a", "b", "c", "d"])
    I43 = S.ideal("c*d", "b*d", "a*d", "b*c", "a*c", "a*b")
    assert analytic_spread(I43) == 4
