import itertools
import threading

import pytest
import sympy

from epsmult.groebner import (
    GradedRing,
    Reducer,
    eliminate_polys,
    groebner_basis,
    is_groebner_basis,
    normal_form,
    s_polynomial,
)
from epsmult.poly import DEGREVLEX, LEX, PolynomialRing


@pytest.fixture
def R():
    return PolynomialRing(["x", "y"])


def test_linear_system_lex(R):
    G = groebner_basis([R("x + y"), R("x - y")], LEX)
    assert set(G) == {R("x"), R("y")}


def test_single_generator(R):
    assert groebner_basis([R("x")], DEGREVLEX) == [R("x")]


def test_hand_example_degrevlex(R):
    G = groebner_basis([R("x^2 + y^2"), R("x*y")], DEGREVLEX)
    assert set(G) == {R("x^2 + y^2"), R("x*y"), R("y^3")}
    assert not normal_form(R("y^3"), G, DEGREVLEX).terms


def test_normal_forms(R):
    assert not normal_form(R("x^2"), [R("x")], DEGREVLEX).terms
    assert normal_form(R("x*y + y^2"), [R("x")], DEGREVLEX) == R("y^2")


def test_twisted_cusp_elimination():
    S = PolynomialRing(["t", "x", "y"])
    K = PolynomialRing(["x", "y"])
    out = eliminate_polys([S("x - t^2"), S("y - t^3")], [0], keep_ring=K)
    assert len(out) == 1
    f = out[0]
    assert f == K("x^3 - y^2") or f == K("y^2 - x^3")


def test_trivial_eliminations():
    S = PolynomialRing(["t", "x"])
    K = PolynomialRing(["x"])
    assert eliminate_polys([S("x")], [0], keep_ring=K) == [K("x")]
    assert eliminate_polys([S("t")], [0], keep_ring=K) == []


def test_agrees_with_sympy_on_cyclic4():
    names = ["a", "b", "c", "d"]
    P = PolynomialRing(names)
    gens = ["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]
    G = groebner_basis([P(g) for g in gens], DEGREVLEX)
    syms = sympy.symbols(names)
    ref = sympy.groebner([sympy.sympify(g) for g in gens], *syms, order="grevlex")
    mine = {sympy.expand(sympy.sympify(str(g).replace("^", "**"))) for g in G}
    theirs = {sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex")) for g in ref.exprs}
    assert mine == theirs


def test_confluence_and_permutation_invariance():
    P = PolynomialRing(["x", "y", "z"])
    gens = [P("x^2 - y*z"), P("y^2 - x*z"), P("z^2 - x*y + x^2")]
    G = groebner_basis(gens, DEGREVLEX)
    assert is_groebner_basis(G, DEGREVLEX)
    for a, b in itertools.combinations(G, 2):
        assert not normal_form(s_polynomial(a, b, DEGREVLEX), G, DEGREVLEX).terms
    for perm in itertools.permutations(gens):
        assert groebner_basis(list(perm), DEGREVLEX) == G


def test_reducer_idempotent():
    P = PolynomialRing(["x", "y", "z"])
    G = groebner_basis([P("x*y - z^2"), P("y^3 - x*z^2")], DEGREVLEX)
    red = Reducer(P, G, DEGREVLEX)
    f = P("x^3*y^2 + y^5 - z^4*x + 7")
    assert red(red(f)) == red(f)


def test_ideal_in_quotient_ring():
    R = GradedRing(["x", "y", "z"], relations=["x*y - z^2"])
    I = R.ideal("x")
    assert I.contains(R("z^2"))
    assert not I.contains(R("z"))
    assert (I * I).contains(R("x*z^2"))


def test_ideal_equality_and_power():
    R = GradedRing(["x", "y"])
    I = R.ideal("x", "y")
    assert I**2 == R.ideal("x^2", "x*y", "y^2")
    assert I == R.ideal("x + y", "x - y")


def test_inhomogeneous_generator_rejected():
    R = GradedRing(["x", "y"])
    with pytest.raises(ValueError):
        R.ideal("x + y^2")


def test_concurrent_cache_population():
    R = GradedRing(["x", "y", "z"])
    I = R.ideal("x^2 - y*z", "y^2 - x*z", "z^2 - x*y")
    results = []

    def work():
        results.append(tuple(I.groebner()))

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
