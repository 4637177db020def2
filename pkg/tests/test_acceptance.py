"""Acceptance criteria 1-14, one test per criterion.

Each test prints ``criterion N: PASS|FAIL`` and the terminal summary
repeats the list.  Expected values are reference figures; where a figure
disagrees with the brute-force oracle the test keeps the reference value
and is left failing.
"""

import os
import subprocess
import sys
from pathlib import Path

import pytest
from gmpy2 import mpq

from conftest import record
from epsmult.blowup import extend_ring, saturated_rees_presentation, rees_presentation, veronese_pair
from epsmult.epsilon import (
    compute_epsilon,
    epsilon_equigenerated_dim2,
    epsilon_from_series,
    epsilon_prime_point,
    epsilon_series,
    epsilon_via_epNoeth,
    pair_length_series,
    quasi_polynomial,
)
from epsmult.groebner import GradedRing, Ideal
from epsmult.hilbert import RationalSeries, hilbert_series, multiplicity
from epsmult.ideals import intersect, minimal_generators, saturate
from epsmult.mixed import classical_mixed, truncated_mixed
from epsmult.oracle import epsilon_table, fit_linear

XYZ = ["x", "y", "z"]


def series(num, den):
    return RationalSeries(1, {(k,): c for k, c in num.items()}, [(e,) for e in den])


def test_criterion_01_twisted_cubic_weights():
    with record(1):
        W = GradedRing(XYZ, [(3,), (4,), (5,)])
        I = W.ideal("x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y")
        rep = compute_epsilon(I, 2)
        assert rep.series == series({2: 1}, [1, 1, 1, 2])
        q = quasi_polynomial(rep.series)
        for n in range(2, 30):
            closed = (mpq(1, 16) + mpq(n - 1, 8) + mpq(n * (n - 1), 8)
                      + mpq((n + 1) * n * (n - 1), 12) + mpq((-1) ** n, 16))
            assert q(n) == closed
        assert rep.epsilon == mpq(1, 2)


def test_criterion_02_curve_10_11_13():
    with record(2):
        W = GradedRing(XYZ, [(10,), (11,), (13,)])
        I = W.ideal("x^2*z - y^3", "x^5 - y*z^3", "x^3*y^2 - z^4")
        rep = compute_epsilon(I, 3)
        # 2t^2(1+t) / ((1-t)^4 (1+t+t^2))
        assert rep.series == series({2: 2, 3: 2}, [1, 1, 1, 3])
        assert rep.epsilon == mpq(2, 3)


def test_criterion_03_curve_11_14_10():
    with record(3):
        W = GradedRing(XYZ, [(11,), (14,), (10,)])
        I = W.ideal("x^2*z^2 - y^3", "x^4 - y*z^3", "x^2*y^2 - z^5")
        rep = compute_epsilon(I, 4)
        # 2t^2(2+t+2t^2) / ((1-t)^4 (1+t^2)(1+t))
        assert rep.series == series({2: 4, 3: 2, 4: 4}, [1, 1, 1, 4])
        assert rep.epsilon == mpq(5, 4)


def test_criterion_04_squarefree_4_3():
    with record(4):
        R = GradedRing(["a", "b", "c", "d"])
        I = R.ideal("c*d", "b*d", "a*d", "b*c", "a*c", "a*b")
        rep = compute_epsilon(I, 3)
        assert rep.series == series({2: 4, 3: 5, 4: 7, 5: 3, 6: 1}, [1, 1, 1, 2, 3])
        assert rep.epsilon == mpq(10, 3)
        assert rep.analytic_spread == 4


def test_criterion_05_fermat():
    with record(5):
        R = GradedRing(XYZ)
        F = R.ideal("x*(y^3 - z^3)", "y*(z^3 - x^3)", "z*(x^3 - y^3)")
        S, P, ok = veronese_pair(F, 3)
        assert ok
        H = pair_length_series(P, S)
        assert H == series({1: 22, 2: 82, 3: 4}, [1, 1, 1, 1])
        assert epsilon_from_series(H, 3, scale=3) == 4


def test_criterion_06_coordinate_axes():
    with record(6):
        R = GradedRing(XYZ)
        I = R.ideal("x*y", "y*z", "x*z")
        S2 = saturate(I**2)
        assert {str(g) for g in minimal_generators(S2)} == {"x*y*z", "x^2*y^2", "y^2*z^2", "x^2*z^2"}
        assert truncated_mixed(S2, 4).values[3] == 4
        a = compute_epsilon(I, 2).epsilon
        b = epsilon_via_epNoeth(I, 2, 4).epsilon
        assert a == b == mpq(1, 2)


def test_criterion_07_plane_m_primary():
    with record(7):
        R = GradedRing(["x", "y"])
        assert compute_epsilon(R.ideal("x^2*y", "x*y^3", "y^5"), 3).epsilon == 8
        e = compute_epsilon(R.ideal("x^2", "x*y^2", "y^4"), 1).epsilon
        assert e == 8
        assert e == compute_epsilon(R.ideal("x^2", "y^4"), 1).epsilon
        assert epsilon_via_epNoeth(R.ideal("x^2", "x*y^2", "y^4"), 1).epsilon == 8


def test_criterion_08_quadric_cone_line():
    with record(8):
        Q = GradedRing(XYZ, relations=["x*y - z^2"])
        P = Q.ideal("x", "z")
        S2 = saturate(P**2)
        assert S2 == Q.ideal("x")
        assert truncated_mixed(S2, 2).values[2] == 2
        _, J, _ = extend_ring(Q, P**2)
        e0, e1, _ = classical_mixed(J).values
        assert (e0, e1) == (2, 2)
        routes = [
            compute_epsilon(P, 2).epsilon,
            epsilon_via_epNoeth(P, 2, 2).epsilon,
            epsilon_equigenerated_dim2(*classical_mixed(P).values),
        ]
        assert routes == [mpq(1, 2)] * 3


def test_criterion_09_plane_curve_points():
    with record(9):
        # X^3 - Y Z^2 at [0:0:1]
        R = GradedRing(XYZ, relations=["x^3 - y*z^2"])
        P = R.ideal("x", "y")
        e_ring = multiplicity(R)
        e_loc = e_ring - classical_mixed(P).values[1]
        assert (e_ring, e_loc) == (3, 1)
        assert epsilon_prime_point(e_ring, e_loc) == mpq(4, 3)

        # space curve with a cusp of multiplicity 4
        T = GradedRing(["x", "y", "z", "w"], relations=["y^2*w - x^3", "z^2*w^4 - x^5*y"])
        assert hilbert_series(T) == series({0: 1, 3: -1, 6: -1, 9: 1}, [1, 1, 1, 1])
        e_ring = multiplicity(T)
        e_loc = e_ring - classical_mixed(T.ideal("x", "y", "z")).values[1]
        assert (e_ring, e_loc) == (18, 4)
        assert epsilon_prime_point(e_ring, e_loc) == mpq(98, 9)

        # torsion point of order six on an elliptic curve
        E = GradedRing(XYZ, relations=["x^3 - y^2*z + z^3"])
        Qp = E.ideal("x - 2*z", "y - 3*z")
        S6 = saturate(Qp.power(6))
        assert len(minimal_generators(S6)) == 1
        assert S6 == E.ideal("12*x^2 - 6*x*y + y^2 - 6*x*z - 6*y*z + 9*z^2")
        e_ring = multiplicity(E)
        e_loc = e_ring - classical_mixed(Qp).values[1]
        assert epsilon_prime_point(e_ring, e_loc) == mpq(4, 3)


def test_criterion_10_rose_curve():
    with record(10):
        R = GradedRing(XYZ, relations=["(x^2 + y^2)^2 - 3*x^2*y*z + y^3*z"])
        P = R.ideal("x", "y")
        e0, e1 = classical_mixed(P).values
        assert epsilon_equigenerated_dim2(e0, e1) == mpq(1, 4)
        assert compute_epsilon(P, 4).epsilon == mpq(1, 4)


ELLIPTIC = {(1, 1): 4, (1, 2): 8, (1, 3): 12, (2, 2): 5, (2, 3): 9, (3, 5): 14}
CUSPIDAL = {(1, 1): 3, (1, 2): 7, (2, 1): 0, (1, 3): 11, (3, 1): 0, (2, 2): 3, (2, 3): 7,
            (3, 2): 0, (2, 5): 15, (5, 2): 0, (3, 3): 3, (3, 5): 11, (5, 3): 0, (5, 7): 11}
BS = {"elliptic": {(1, 1): 2, (1, 2): 3, (1, 3): 4, (2, 2): 3, (2, 3): 4, (3, 5): 6},
      "cuspidal": {(1, 1): 2, (1, 2): 3, (2, 1): 2, (1, 3): 4, (3, 1): 3, (2, 2): 3, (2, 3): 4,
                   (3, 2): 3, (2, 5): 6, (5, 2): 5, (3, 3): 4, (3, 5): 6, (5, 3): 5, (5, 7): 8}}


def _fat_point_rows(rel, p1, p2, table):
    R = GradedRing(XYZ, relations=[rel])
    P1, P2 = R.ideal(*p1), R.ideal(*p2)
    out = {}
    for (a, b) in table:
        I = intersect(P1.power(a), P2.power(b))
        bs = max(g.degree() for g in minimal_generators(I))
        out[a, b] = (bs, truncated_mixed(I, bs).values[2])
    return out


def test_criterion_11_fat_point_tables():
    with record(11):
        ell = _fat_point_rows("x^3 + y^3 + z^3", ["x + y", "z"], ["x + z", "y"], ELLIPTIC)
        cusp = _fat_point_rows("x^3 - y^2*z", ["x", "y"], ["x", "z"], CUSPIDAL)
        assert ell == {k: (BS["elliptic"][k], v) for k, v in ELLIPTIC.items()}
        assert cusp == {k: (BS["cuspidal"][k], v) for k, v in CUSPIDAL.items()}


def test_criterion_12_face_ring():
    with record(12):
        F = GradedRing(XYZ, relations=["x*y", "x*z", "y*z"])
        table = epsilon_table(F.ideal("y", "z"), 8)
        assert [n for _, n in table] == [2 * (v - 1) for v in range(1, 9)]
        assert fit_linear(table) == (2, -2)


def test_criterion_13_property_suites():
    with record(13):
        here = Path(__file__).parent
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                               str(here / "test_properties.py")],
                              capture_output=True, text=True, cwd=here.parent)
        assert proc.returncode == 0, proc.stdout[-3000:]


@pytest.mark.stretch
def test_criterion_14_generic_minors():
    with record(14):
        if os.environ.get("EPSMULT_STRETCH", "1") == "0":
            pytest.skip("stretch criterion disabled by EPSMULT_STRETCH=0")
        names = [f"x{i}{j}" for i in range(1, 4) for j in range(1, 4)]
        R = GradedRing(names)
        X = [[R(f"x{i}{j}") for j in range(1, 4)] for i in range(1, 4)]
        pairs = [(0, 1), (0, 2), (1, 2)]
        minors = [X[r][c] * X[s][d] - X[r][d] * X[s][c] for r, s in pairs for c, d in pairs]
        det = (X[0][0] * (X[1][1] * X[2][2] - X[1][2] * X[2][1])
               - X[0][1] * (X[1][0] * X[2][2] - X[1][2] * X[2][0])
               + X[0][2] * (X[1][0] * X[2][1] - X[1][1] * X[2][0]))
        I = Ideal(R, minors)
        PS = saturated_rees_presentation(I, 2, generators={1: minors, 2: [det]}, witness=False)
        H = epsilon_series(I, 2, presentations=(PS, rees_presentation(I)))
        assert H == series({2: 1}, [1] * 9 + [2])
        assert epsilon_from_series(H, 9) == mpq(1, 2)
