from gmpy2 import mpq
import pytest

from epsmult.poly import (
    DEGREVLEX,
    LEX,
    Inhomogeneous,
    PolynomialRing,
    RingMismatch,
    ZeroPolynomial,
    block,
    monomial_cmp,
    multidegree,
    poly_arith,
    weighted,
)


@pytest.fixture
def R():
    return PolynomialRing(["x", "y", "z"])


def test_difference_of_squares(R):
    x, y, _ = R.gens()
    assert (x + y) * (x - y) == x**2 - y**2


def test_times_zero_is_empty(R):
    x, y, _ = R.gens()
    assert ((x + y) * R.zero()).terms == {}


def test_binomial_cube(R):
    x, y, _ = R.gens()
    assert (x + y) ** 3 == R("x^3 + 3*x^2*y + 3*x*y^2 + y^3")


def test_poly_arith_dispatch(R):
    x, y, _ = R.gens()
    assert poly_arith("add", x, y) == x + y
    assert poly_arith("scalar_mul", x, mpq(1, 2)) == R("1/2*x")
    assert poly_arith("exp", x + y, 2) == R("x^2 + 2*x*y + y^2")


def test_ring_mismatch(R):
    S = PolynomialRing(["a", "b"])
    with pytest.raises(RingMismatch):
        R.gen(0) + S.gen(0)


def test_multidegree_standard_and_weighted():
    S = PolynomialRing(["x", "y"])
    assert multidegree(S("x^2*y")) == (3,)
    W = PolynomialRing(["x", "y", "z"], [(3,), (4,), (5,)])
    assert multidegree(W("z^2 - x^2*y")) == (10,)
    assert multidegree(W("y^2*z")) == (13,)
    # x^3 weighs 9, so this binomial is not homogeneous for these weights
    with pytest.raises(Inhomogeneous):
        multidegree(W("y^2*z - x^3"))


def test_multidegree_bigraded():
    B = PolynomialRing(["x", "y", "z", "Y11"], [(0, 1), (0, 1), (0, 1), (1, 2)])
    assert multidegree(B("Y11")) == (1, 2)


def test_multidegree_errors(R):
    with pytest.raises(Inhomogeneous):
        multidegree(R("x^2 + y"))
    with pytest.raises(ZeroPolynomial):
        multidegree(R.zero())


def test_monomial_order_examples():
    assert monomial_cmp((1, 0), (0, 1), LEX) == "GT"
    assert monomial_cmp((2, 0), (1, 1), DEGREVLEX) == "GT"
    assert monomial_cmp((1, 2), (1, 2), DEGREVLEX) == "EQ"
    # degrevlex differs from lex on x*z^2 vs y^3 in three variables
    assert monomial_cmp((1, 0, 2), (0, 3, 0), DEGREVLEX) == "LT"
    assert monomial_cmp((1, 0, 2), (0, 3, 0), LEX) == "GT"


def test_weighted_and_block_orders():
    w = weighted([3, 4, 5])
    assert monomial_cmp((0, 0, 1), (1, 0, 0), w) == "GT"
    b = block(1, DEGREVLEX, DEGREVLEX)
    assert monomial_cmp((1, 0, 0), (0, 5, 5), b) == "GT"


def test_canonical_text(R):
    f = R("3*x^2*y - 1/2*z^3")
    assert str(f) == "3*x^2*y - 1/2*z^3"
    assert R(str(f)) == f


def test_evaluate_and_map(R):
    x, y, z = R.gens()
    f = x * y - z**2
    assert f.evaluate([y, x, z]) == f
    S = PolynomialRing(["a", "b", "c", "d"])
    g = f.map_variables(S, [1, 2, 3])
    assert g == S("b*c - d^2")
