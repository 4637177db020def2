"""Rees and saturated Rees algebra presentations, truncations, Veronese pairs."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import GradedRing, Ideal, Reducer
from .hilbert import RationalSeries, hilbert_series
from .ideals import (
    AlgebraMap,
    graded_piece_basis,
    kernel_of_algebra_map,
    minimal_generators,
    positive_weights,
    saturate,
)
from .poly import PolynomialRing

log = logging.getLogger(__name__)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EPS_CALC_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class BigradedPresentation:
    """``k[X, Y] / K`` presenting a subalgebra of ``R[T]``.

    ``pieces[j] = (i, f)`` means generator ``Y_j`` maps to ``f T^i`` and has
    bidegree ``(i, deg f)``; each ``X_t`` has bidegree ``(0, deg x_t)``.
    """

    base: GradedRing
    pieces: list
    ring: GradedRing
    ideal: Ideal
    tag: str
    source: Ideal | None = None
    bound: int | None = None
    warnings: list = field(default_factory=list)

    @property
    def generator_bidegrees(self) -> list:
        return [(i, f.degree()) for i, f in self.pieces]

    def hilbert_series(self) -> RationalSeries:
        """Bivariate series; ``t0`` tracks the ``T``-degree, ``t1`` the ``R``-degree."""
        return hilbert_series(self.ideal, names=("t0", "t1"))

    def substitution_images(self):
        R = self.base
        n = R.nvars
        tring = PolynomialRing(("T",) + R.names, [(1,)] + list(R.degrees))
        pos = list(range(1, n + 1))
        T = tring.gen(0)
        imgs = [tring.gen(i + 1) for i in range(n)]
        imgs += [T ** i * f.map_variables(tring, pos) for i, f in self.pieces]
        target = GradedRing(tring, relations=[r.map_variables(tring, pos) for r in R.relations])
        return target, imgs

    def check_substitution(self) -> bool:
        target, imgs = self.substitution_images()
        red = Reducer(target.poly, target.relation_basis(), target.order)
        return all(not red(g.evaluate(imgs, target.poly)).terms for g in self.ideal.gens)

    def to_json(self) -> dict:
        R = self.base
        return {
            "tag": self.tag,
            "base": {
                "variables": list(R.names),
                "degrees": [list(d) for d in R.degrees],
                "relations": [str(r) for r in R.relations],
            },
            "pieces": [[i, str(f)] for i, f in self.pieces],
            "variables": [[n, list(d)] for n, d in zip(self.ring.names, self.ring.degrees)],
            "ideal": [str(g) for g in self.ideal.groebner()],
            "bound": self.bound,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, data) -> "BigradedPresentation":
        if isinstance(data, str):
            data = json.loads(data)
        b = data["base"]
        base = GradedRing(b["variables"], [tuple(d) for d in b["degrees"]], b["relations"])
        pieces = [(i, base(f)) for i, f in data["pieces"]]
        src = PolynomialRing([v[0] for v in data["variables"]], [tuple(v[1]) for v in data["variables"]])
        order = _source_order(src)
        ring = GradedRing(src, order=order)
        gens = [src(g) for g in data["ideal"]]
        K = Ideal(ring, gens, check=False)
        K._gb[order] = gens
        return cls(base, pieces, ring, K, data["tag"], None, data.get("bound"), list(data.get("warnings", [])))


def _source_order(src: PolynomialRing):
    from .ideals import _order_for

    return _order_for(positive_weights(src.degrees))


def algebra_presentation(R: GradedRing, pieces: Sequence[tuple], tag: str, prefix: str = "Y") -> BigradedPresentation:
    """Kernel of ``k[X, Y] -> R[T]``, ``X -> x``, ``Y_j -> f_j T^{i_j}``."""
    if R.rank != 1:
        raise ValueError("the base ring must be singly graded")
    n = R.nvars
    xdeg = [d[0] for d in R.degrees]
    pieces = [(int(i), f) for i, f in pieces]
    names = list(R.names)
    counts: dict = {}
    for i, f in pieces:
        counts[i] = counts.get(i, 0) + 1
        names.append(f"{prefix}{i}_{counts[i]}" if prefix == "Y" else f"{prefix}{len(names) - n + 1}")
    degs = [(0, d) for d in xdeg] + [(i, f.degree()) for i, f in pieces]
    src = PolynomialRing(names, degs)
    tring = PolynomialRing(("T",) + R.names, [(1,)] + list(R.degrees))
    pos = list(range(1, n + 1))
    target = GradedRing(tring, relations=[r.map_variables(tring, pos) for r in R.relations])
    T = tring.gen(0)
    imgs = [tring.gen(i + 1) for i in range(n)]
    imgs += [T ** i * f.map_variables(tring, pos) for i, f in pieces]
    K = kernel_of_algebra_map(AlgebraMap(src, target, imgs))
    return BigradedPresentation(R, pieces, K.ring, K, tag)


def rees_presentation(I: Ideal) -> BigradedPresentation:
    """Presentation of ``R[It]`` with ``Z_i -> g_i T``."""
    if not I.gens:
        raise ValueError("zero ideal has no Rees algebra")
    gens = minimal_generators(I)
    P = algebra_presentation(I.ring, [(1, g) for g in gens], "rees", prefix="Z")
    P.source = I
    P.bound = 1
    return P


def saturated_powers(I: Ideal, n: int, method: str = "bayer") -> list[Ideal]:
    """``[sat(I^1), ..., sat(I^n)]``, each computed from scratch."""
    return _sat_list(I, list(range(1, n + 1)), method)


def generated_part(sats: Sequence[Ideal], i: int) -> Ideal:
    """``Σ_{j=1}^{i-1} sat(I^j)·sat(I^{i-j})``: the degree-``i`` part already generated."""
    R = sats[0].ring
    gens = []
    for j in range(1, i // 2 + 1):
        gens.extend((sats[j - 1] * sats[i - j - 1]).gens)
    return Ideal(R, gens, check=False)


def saturated_rees_presentation(
    I: Ideal,
    n: int,
    *,
    generators: dict | None = None,
    prune: bool = False,
    witness: bool = True,
    method: str = "bayer",
) -> BigradedPresentation:
    """Presentation of ``⊕ sat(I^i) T^i`` assuming generation in degrees ``<= n``.

    ``generators`` may map ``i`` to known generators of ``sat(I^i)`` (used
    instead of computing the saturation).  With ``prune`` generators of
    ``sat(I^i)`` already in the subalgebra generated in lower degrees are
    skipped; the algebra, hence its Hilbert series, is unchanged.  With
    ``witness`` one extra saturation checks that ``sat(I^{n+1})`` is
    generated by the lower pieces; failure is recorded as a warning.
    """
    if n < 1:
        raise ValueError("the generation bound must be at least 1")
    R = I.ring
    generators = generators or {}
    sats = []
    missing = [i for i in range(1, n + 1) if i not in generators]
    computed = dict(zip(missing, _sat_list(I, missing, method)))
    for i in range(1, n + 1):
        if i in generators:
            sats.append(Ideal(R, [R(g) for g in generators[i]]))
        else:
            sats.append(computed[i])
    pieces = []
    for i in range(1, n + 1):
        S = sats[i - 1]
        if prune and i > 1:
            kept = minimal_generators(S, base=generated_part(sats, i).gens)
        else:
            kept = minimal_generators(S)
        pieces.extend((i, f) for f in kept)
    P = algebra_presentation(R, pieces, "saturated_rees")
    P.source = I
    P.bound = n
    if witness:
        nxt = saturate(I.power(n + 1), method=method)
        lower = generated_part(sats + [nxt], n + 1)
        if not nxt.is_subset(lower):
            msg = f"sat(I^{n + 1}) is not generated by lower saturated powers; the bound {n} may be too small"
            P.warnings.append(msg)
            log.warning(msg)
    return P


def _sat_list(I: Ideal, idx, method):
    work = lambda i: saturate(I.power(i), method=method)
    threads = _threads()
    if threads > 1 and len(idx) > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(work, idx))
    return [work(i) for i in idx]


# --------------------------------------------------------------------------
# truncations and ring extension


def extend_ring(R: GradedRing, I: Ideal, name: str = "U"):
    """``S = R[U]`` with ``deg U = 1``, ``J = IS`` and ``n = m + (U)``."""
    if not R.is_standard_graded:
        raise ValueError("ring extension needs a standard graded ring")
    while name in R.names:
        name += "_"
    poly = PolynomialRing(R.names + (name,), list(R.degrees) + [(1,)])
    pos = list(range(R.nvars))
    S = GradedRing(poly, relations=[r.map_variables(poly, pos) for r in R.relations])
    J = Ideal(S, [g.map_variables(poly, pos) for g in I.gens], check=False)
    return S, J, S.maximal_ideal()


def truncation_ideal(J: Ideal, beta: int, verify: bool = False) -> Ideal:
    """Ideal generated by a basis of ``J_beta``."""
    if beta < 1:
        raise ValueError("beta must be positive")
    T = Ideal(J.ring, graded_piece_basis(J, beta), check=False)
    if verify:
        top = max((g.degree() for g in J.gens), default=0)
        if beta >= top:
            from .ideals import intersect

            trunc = intersect(J, J.ring.maximal_ideal().power(beta))
            if not trunc == T:
                raise AssertionError("truncation differs from J ∩ n^beta")
    return T


def veronese_pair(I: Ideal, r: int, powers: Sequence[int] = (2, 3), method: str = "bayer"):
    """``(sat(I^r), I^r, witness)``; the witness checks ``sat(I^r)^v == sat(I^{rv})``."""
    if r < 1:
        raise ValueError("r must be positive")
    Ir = I.power(r)
    S = saturate(Ir, method=method)
    ok = True
    for v in powers:
        if not saturate(I.power(r * v), method=method) == S.power(v):
            ok = False
            break
    return S, Ir, ok
