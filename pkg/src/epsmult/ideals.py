"""Colon, intersection, saturation, minimal generators, kernels, dimension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .groebner import (
    GradedRing,
    Ideal,
    Reducer,
    eliminate_polys,
    groebner_basis,
)
from .poly import (
    DEGREVLEX,
    Inhomogeneous,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    RingMismatch,
    block,
    weighted,
)


def positive_weights(degrees) -> list | None:
    """A strictly positive weight per variable compatible with the grading."""
    first = [d[0] for d in degrees]
    if all(w > 0 for w in first):
        return first
    total = [sum(d) for d in degrees]
    if all(w > 0 for w in total):
        return total
    return None


def _order_for(weights) -> MonomialOrder:
    return weighted(weights) if weights else DEGREVLEX


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Return ``g / f``; raises ``ValueError`` when ``f`` does not divide ``g``."""
    if not f.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    order = g.ring.default_order()
    lm = f.leading_monomial(order)
    lc = f.terms[lm]
    q = {}
    r = g
    while r.terms:
        m = r.leading_monomial(order)
        d = tuple(a - b for a, b in zip(m, lm))
        if min(d) < 0:
            raise ValueError("polynomial is not divisible")
        c = r.terms[m] / lc
        q[d] = c
        r = r - f.mul_monomial(d, c)
    return Polynomial(g.ring, q)


# --------------------------------------------------------------------------
# intersection and colon


def _with_aux(ring: PolynomialRing, name="_t", degree=None):
    deg = degree if degree is not None else (0,) * ring.rank
    aux = PolynomialRing((name,) + ring.names, [deg] + list(ring.degrees))
    return aux, list(range(1, ring.nvars + 1))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t·I + (1-t)·J``."""
    _same_ring(I, J)
    R = I.ring
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    a = list(I.gens) + list(R.relations)
    b = list(J.gens) + list(R.relations)
    if not I.gens or not J.gens:
        return R.zero_ideal()
    aux, pos = _with_aux(R.poly)
    t = aux.gen(0)
    one = aux.one()
    gens = [t * g.map_variables(aux, pos) for g in a] + [(one - t) * g.map_variables(aux, pos) for g in b]
    w = positive_weights(R.degrees)
    sugar = [0] + (w or [1] * R.nvars)
    out = eliminate_polys(gens, [0], keep_ring=R.poly, sugar_weights=sugar)
    return Ideal(R, _drop_relations(R, out), check=False)


def _drop_relations(R: GradedRing, polys):
    if not R.relations:
        return polys
    red = Reducer(R.poly, R.relation_basis(), R.order)
    return [p for p in polys if red(p).terms]


def colon_element(I: Ideal, f: Polynomial) -> Ideal:
    """``I : f`` computed as ``(I ∩ (f)) / f``."""
    R = I.ring
    f = R(f)
    if not R.reduce(f).terms:
        raise ZeroDivisionError("colon by zero")
    if I.contains(f):
        return R.unit_ideal()
    # (I + relations) ∩ (f) in the polynomial ring; relations must stay in
    # the intersection since they contribute to the quotient
    aux, pos = _with_aux(R.poly)
    t = aux.gen(0)
    gens = [t * g.map_variables(aux, pos) for g in list(I.gens) + list(R.relations)]
    gens.append((aux.one() - t) * f.map_variables(aux, pos))
    w = positive_weights(R.degrees)
    K = eliminate_polys(gens, [0], keep_ring=R.poly, sugar_weights=[0] + (w or [1] * R.nvars))
    return Ideal(R, _drop_relations(R, [exact_divide(g, f) for g in K]) + list(I.gens), check=False)


def colon(I: Ideal, J) -> Ideal:
    """``I : J`` for an ideal ``J`` or a single polynomial."""
    if not isinstance(J, Ideal):
        return colon_element(I, J)
    _same_ring(I, J)
    gens = [g for g in J.gens if I.ring.reduce(g).terms]
    if not gens:
        return I.ring.unit_ideal()
    result = None
    for g in gens:
        K = colon_element(I, g)
        result = K if result is None else intersect(result, K)
    return result


# --------------------------------------------------------------------------
# saturation


def _variable_saturation(I: Ideal, i: int) -> list[Polynomial]:
    """Generators of ``(I + relations) : x_i^∞`` (homogeneous input).

    Uses a reverse-lex type order in which ``x_i`` is the smallest variable;
    dividing every Groebner basis element by its largest power of ``x_i``
    then gives a basis of the saturation.
    """
    R = I.ring
    n = R.nvars
    perm = [j for j in range(n) if j != i] + [i]
    pos = [0] * n
    for new, old in enumerate(perm):
        pos[old] = new
    moved = PolynomialRing([R.names[j] for j in perm], [R.degrees[j] for j in perm])
    w = positive_weights(moved.degrees)
    order = _order_for(w)
    gens = [g.map_variables(moved, pos) for g in list(I.gens) + list(R.relations)]
    G = groebner_basis(gens, order, sugar_weights=w)
    out = []
    for g in G:
        k = min(m[-1] for m in g.terms)
        if k:
            g = Polynomial(moved, {m[:-1] + (m[-1] - k,): c for m, c in g.terms.items()}, _trusted=True)
        out.append(g.map_variables(R.poly, perm))
    return out


def saturate_by_variable(I: Ideal, i: int) -> Ideal:
    return Ideal(I.ring, _drop_relations(I.ring, _variable_saturation(I, i)), check=False)


def _saturate_colon(I: Ideal, J: Ideal) -> Ideal:
    current = I
    while True:
        nxt = colon(current, J)
        if nxt == current:
            return current
        current = nxt


def _saturate_rabinowitsch(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    result = None
    for f in J.gens:
        aux, pos = _with_aux(R.poly, "_s")
        s = aux.gen(0)
        gens = [g.map_variables(aux, pos) for g in list(I.gens) + list(R.relations)]
        gens.append(aux.one() - s * f.map_variables(aux, pos))
        w = positive_weights(R.degrees) or [1] * R.nvars
        out = eliminate_polys(gens, [0], keep_ring=R.poly, sugar_weights=[1] + w)
        K = Ideal(R, _drop_relations(R, out), check=False)
        result = K if result is None else intersect(result, K)
    return result


def _is_variable(f: Polynomial) -> int | None:
    if len(f.terms) != 1:
        return None
    (m,) = f.terms
    if sum(m) == 1:
        return m.index(1)
    return None


def saturate(I: Ideal, J: Ideal | None = None, method: str = "bayer") -> Ideal:
    """``I : J^∞`` (default ``J`` = maximal homogeneous ideal).

    ``method`` is ``bayer`` (saturate by each variable through a reverse-lex
    basis, then intersect), ``colon`` (iterate ``I : J`` to a fixpoint) or
    ``rabinowitsch`` (auxiliary inverse variable).
    """
    R = I.ring
    if J is None:
        J = R.maximal_ideal()
    _same_ring(I, J)
    gens = [g for g in J.gens if R.reduce(g).terms]
    if not gens:
        raise ValueError("saturation by the zero ideal")
    J = Ideal(R, gens, check=False)
    if I.is_unit():
        return I
    if method == "colon":
        return _saturate_colon(I, J)
    if method == "rabinowitsch":
        return _saturate_rabinowitsch(I, J)
    if method != "bayer":
        raise ValueError(f"unknown saturation method {method!r}")
    idx = [_is_variable(g) for g in J.gens]
    if any(i is None for i in idx) or positive_weights(R.degrees) is None:
        return _saturate_colon(I, J)
    result = None
    seen = []
    for i in sorted(set(idx)):
        K = saturate_by_variable(I, i)
        if K.is_unit():
            continue
        if any(K == S for S in seen):
            continue
        seen.append(K)
        result = K if result is None else intersect(result, K)
        if result == I:
            return I
    if result is None:
        return R.unit_ideal()
    return result


# --------------------------------------------------------------------------
# linear algebra on normal forms


class Echelon:
    """Incremental row echelon form over QQ for sparse vectors (dicts)."""

    def __init__(self, key=None):
        self.rows: dict = {}
        self.key = key

    def _pivot(self, v):
        return max(v, key=self.key) if self.key else max(v)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        while v:
            p = self._pivot(v)
            row = self.rows.get(p)
            if row is None:
                return v
            c = v[p]
            for m, a in row.items():
                nv = v.get(m, 0) - c * a
                if nv:
                    v[m] = nv
                else:
                    v.pop(m, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; return False when it lies in the current span."""
        r = self.reduce(v)
        if not r:
            return False
        p = self._pivot(r)
        inv = 1 / r[p]
        self.rows[p] = {m: a * inv for m, a in r.items()}
        return True

    def __len__(self):
        return len(self.rows)


def _level(ring: PolynomialRing, f: Polynomial):
    return f.multidegree()


def minimal_generators(I: Ideal, candidates: Sequence[Polynomial] | None = None,
                       base: Sequence[Polynomial] = ()) -> list[Polynomial]:
    """A minimal homogeneous generating set, chosen degree by degree.

    Candidates are processed in order of (degree, canonical text); a candidate
    is kept when its normal form modulo the lower-degree kept generators and
    the ring relations is independent of those already kept in its degree.
    Elements of ``base`` count as already present and are never returned, so
    the result generates ``I`` modulo ``(base)``.  Output generators are
    primitive integer polynomials.
    """
    R = I.ring
    w = positive_weights(R.degrees)
    if w is None:
        raise Inhomogeneous("minimal generators need a positive grading")
    order = R.order
    keyfun = order.key(R.nvars)

    def level(g):
        return sum(a * b for a, b in zip(next(iter(g.terms)), w))

    def sortkey(g):
        return (g.multidegree(), keyfun(g.leading_monomial(order)), g.to_string(order))

    by_level: dict = {}
    for flag, group in ((0, base), (1, I.gens if candidates is None else candidates)):
        for g in group:
            g = R.reduce(R(g))
            if g.terms:
                by_level.setdefault(level(g), []).append((flag, sortkey(g), g))
    kept: list[Polynomial] = []
    present: list[Polynomial] = []
    for lvl in sorted(by_level):
        lower = present + list(R.relations)
        G = groebner_basis(lower, order, sugar_weights=w, degree_bound=lvl) if lower else []
        red = Reducer(R.poly, G, order) if G else None
        ech: dict = {}
        for flag, _, g in sorted(by_level[lvl], key=lambda t: (t[0], t[1])):
            nf = red(g) if red else g
            if not nf.terms:
                continue
            e = ech.setdefault(g.multidegree(), Echelon(keyfun))
            if e.add(nf.terms):
                present.append(g)
                if flag:
                    kept.append(g.primitive(order))
    return kept


def graded_piece_basis(I: Ideal, degree: int) -> list[Polynomial]:
    """A k-basis (modulo relations) of ``I_degree`` in a positively graded ring.

    Returned elements are normal forms modulo the relations, in echelon form.
    """
    R = I.ring
    w = positive_weights(R.degrees)
    order = R.order
    keyfun = order.key(R.nvars)
    red = Reducer(R.poly, R.relation_basis(order), order)
    ech = Echelon(keyfun)
    out = []
    for g in I.gens:
        dg = sum(a * b for a, b in zip(next(iter(g.terms)), w))
        if dg > degree:
            continue
        for m in monomials_of_degree(w, degree - dg):
            p = red(g.mul_monomial(m))
            if p.terms and ech.add(p.terms):
                out.append(p)
    return out


def monomials_of_degree(weights: Sequence[int], d: int):
    """All exponent vectors with ``sum(e_i w_i) == d``."""
    n = len(weights)
    out = []

    def rec(i, left, cur):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(cur + [left // weights[i]]))
            return
        for e in range(left // weights[i] + 1):
            rec(i + 1, left - e * weights[i], cur + [e])

    if n == 0:
        return [()] if d == 0 else []
    if d < 0:
        return []
    rec(0, d, [])
    return out


# --------------------------------------------------------------------------
# algebra maps


@dataclass
class AlgebraMap:
    """``source -> target`` sending source variable ``i`` to ``images[i]``.

    ``source`` is a polynomial ring (its grading is the declared grading);
    ``target`` a :class:`GradedRing` whose relations are honoured.
    """

    source: PolynomialRing
    target: GradedRing
    images: list

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("one image per source variable is required")
        self.images = [self.target(f) for f in self.images]

    def apply(self, f: Polynomial) -> Polynomial:
        return self.target.reduce(f.evaluate(self.images, self.target.poly))


def kernel_of_algebra_map(phi: AlgebraMap, weights: Sequence[int] | None = None) -> Ideal:
    """Kernel of ``phi`` as an ideal of ``phi.source``.

    Source variables whose image is a bare target variable are identified
    with it; the remaining target variables are eliminated with a block order.
    ``weights`` gives positive weights on the combined ring (target block
    first, then source); by default the sums of grading components are used
    for the source and target degrees are inferred from the images.  The
    returned ideal carries its Groebner basis for the source order.
    """
    src, tgt = phi.source, phi.target
    ident = {}
    for j, f in enumerate(phi.images):
        v = _is_variable(f)
        if v is not None and next(iter(f.terms.values())) == 1 and v not in ident.values():
            ident[j] = v
    elim = [i for i in range(tgt.nvars) if i not in ident.values()]
    k = len(elim)
    names = [f"_e{i}" for i in range(k)] + list(src.names)
    sw = positive_weights(src.degrees)
    if sw is None:
        raise Inhomogeneous("source grading must be positive")
    tw = _target_weights(phi, sw, ident, elim)
    degs = [(w,) for w in tw] + [(w,) for w in sw]
    big = PolynomialRing(names, degs)
    # target variable -> position in big ring
    tpos = [0] * tgt.nvars
    for idx, i in enumerate(elim):
        tpos[i] = idx
    for j, i in ident.items():
        tpos[i] = k + j
    gens = [r.map_variables(big, tpos) for r in tgt.relations]
    for j in range(src.nvars):
        if j in ident:
            continue
        y = big.gen(k + j)
        img = phi.images[j].map_variables(big, tpos)
        if img.terms and not (y - img).is_homogeneous():
            raise Inhomogeneous(f"declared degree of {src.names[j]} disagrees with its image")
        gens.append(y - img)
    inner = _order_for(sw)
    order = block(k, _order_for(tw), inner) if k else inner
    G = groebner_basis(gens, order, sugar_weights=tw + sw)
    ker = []
    for g in G:
        if all(not any(m[:k]) for m in g.terms):
            ker.append(Polynomial(src, {m[k:]: c for m, c in g.terms.items()}, _trusted=True))
    ring = GradedRing(src, order=inner)
    K = Ideal(ring, ker, check=False)
    K._gb[inner] = sorted(ker, key=lambda p: inner.key(src.nvars)(p.leading_monomial(inner)))
    return K


def _target_weights(phi: AlgebraMap, sw, ident, elim):
    """Positive weights on eliminated target variables making all maps homogeneous.

    Identified variables inherit the source weight; others default to the
    target grading's first component, rescaled if identification forces it.
    """
    tgt = phi.target
    tw_full = [None] * tgt.nvars
    for j, i in ident.items():
        tw_full[i] = sw[j]
    base = positive_weights(tgt.degrees) or [1] * tgt.nvars
    # infer a scale from identified variables when possible
    scale = None
    for j, i in ident.items():
        if base[i]:
            s = mpq(sw[j], base[i])
            scale = s if scale is None else scale
    if scale is None:
        # fit weights to images: solve for a common scale using one non-identified image
        for j, f in enumerate(phi.images):
            if j in ident or not f.terms:
                continue
            m = next(iter(f.terms))
            d = sum(e * b for e, b in zip(m, base))
            if d:
                scale = mpq(sw[j], d)
                break
    scale = scale or mpq(1)
    out = []
    for i in elim:
        v = base[i] * scale
        if v.denominator != 1 or v <= 0:
            raise Inhomogeneous("cannot find integral positive weights for the target")
        out.append(int(v))
    return out


# --------------------------------------------------------------------------
# dimension


def _min_hitting_set(sets: list[frozenset]) -> int:
    sets = sorted(set(sets), key=len)
    sets = [s for i, s in enumerate(sets) if not any(t <= s for t in sets[:i])]
    best = [len(set().union(*sets)) if sets else 0]

    def rec(remaining, size):
        if size >= best[0]:
            return
        if not remaining:
            best[0] = size
            return
        # lower bound: greedy disjoint packing
        used = set()
        lb = 0
        for s in remaining:
            if not (s & used):
                lb += 1
                used |= s
        if size + lb >= best[0]:
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rec([r for r in remaining if v not in r], size + 1)

    rec(sets, 0)
    return best[0]


def monomial_dimension(n: int, leads) -> int:
    """Krull dimension of ``k[x_1..x_n]/(leads)`` for monomials ``leads``."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if any(not s for s in supports):
        return -1
    return n - _min_hitting_set(supports)


def krull_dim(obj) -> int:
    """Krull dimension of a :class:`GradedRing` or of ``R/I`` for an Ideal.

    Returns -1 for the zero ring.
    """
    if isinstance(obj, GradedRing):
        R, G = obj, obj.relation_basis()
    else:
        R, G = obj.ring, obj.groebner()
    order = R.order
    return monomial_dimension(R.nvars, [g.leading_monomial(order) for g in G])


def analytic_spread(I: Ideal) -> int:
    """Dimension of the fiber cone ``k[X,Z]/(L + (X))``."""
    R = I.ring
    if not I.gens:
        return 0
    from .blowup import rees_presentation

    L = rees_presentation(I).ideal
    src = L.ring.poly
    n = R.nvars
    zring = PolynomialRing(src.names[n:], [(d[1],) for d in src.degrees[n:]])
    # L + (X) is generated by X and the generators of L with X set to zero
    zgens = []
    for g in L.gens:
        terms = {m[n:]: c for m, c in g.terms.items() if not any(m[:n])}
        if terms:
            zgens.append(Polynomial(zring, terms, _trusted=True))
    Z = GradedRing(zring, relations=zgens) if _all_homog(zgens) else None
    if Z is None:
        G = groebner_basis(zgens, DEGREVLEX) if zgens else []
        return monomial_dimension(zring.nvars, [g.leading_monomial(DEGREVLEX) for g in G])
    return krull_dim(Z)


def _all_homog(polys):
    return all(p.is_homogeneous() for p in polys)
