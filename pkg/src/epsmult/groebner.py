"""Buchberger's algorithm, normal forms, elimination, graded quotient rings.

The engine works on packed monomials: every exponent occupies a 16-bit field
whose top bit is a guard, so monomial multiplication is integer addition and
divisibility is a masked subtraction.  A monomial order defined by an integer
matrix turns into one integer sort key per monomial that is linear in the
exponents, hence ``key(a*b) == key(a) + key(b)``.
"""

from __future__ import annotations

import heapq
import threading
from array import array
from itertools import count
from typing import Iterable, Sequence


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

_FIELD = 16
_MAX_EXP = (1 << (_FIELD - 1)) - 1
_KEY_BASE = 1 << 48


class _Context:
    """Packed arithmetic for one variable count and monomial order."""

    def __init__(self, nvars: int, order: MonomialOrder, sugar_weights=None):
        self.n = nvars
        self.order = order
        rows = order.matrix(nvars)
        nrows = len(rows)
        self.key_weights = [
            sum(rows[r][i] * _KEY_BASE ** (nrows - 1 - r) for r in range(nrows)) for i in range(nvars)
        ]
        self.gmask = sum(1 << (_FIELD * i + _FIELD - 1) for i in range(nvars))
        self.sugar_weights = list(sugar_weights) if sugar_weights else [1] * nvars
        self.nbytes = 2 * nvars

    def pack(self, exps) -> int:
        if exps and max(exps) > _MAX_EXP:
            raise OverflowError("exponent too large for packed monomials")
        return int.from_bytes(array("H", exps).tobytes(), "little")

    def unpack(self, packed: int) -> tuple:
        a = array("H")
        a.frombytes(packed.to_bytes(self.nbytes, "little"))
        return tuple(a)

    def key(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.key_weights) if e)

    def sugar(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.sugar_weights) if e)

    def divides(self, a: int, b: int) -> bool:
        g = self.gmask
        return ((b | g) - a) & g == g

    def convert(self, poly: Polynomial) -> "_EPoly | None":
        if not poly.terms:
            return None
        terms = [(self.key(m), self.pack(m), c) for m, c in poly.terms.items()]
        terms.sort(key=lambda t: t[0], reverse=True)
        sugar = max(self.sugar(m) for m in poly.terms)
        return _EPoly(self, terms, sugar).monic()

    def back(self, ep: "_EPoly", ring: PolynomialRing) -> Polynomial:
        return Polynomial(ring, {self.unpack(p): c for _, p, c in ep.terms}, _trusted=True)


class _EPoly:
    __slots__ = ("terms", "lead_exps", "lead_key", "lead_packed", "supp", "sugar")

    def __init__(self, ctx: _Context, terms, sugar):
        self.terms = terms
        k, p, _ = terms[0]
        self.lead_key = k
        self.lead_packed = p
        self.lead_exps = ctx.unpack(p)
        self.supp = sum(1 << i for i, e in enumerate(self.lead_exps) if e)
        self.sugar = sugar

    def monic(self):
        lc = self.terms[0][2]
        if lc != 1:
            inv = 1 / lc
            self.terms = [(k, p, c * inv) for k, p, c in self.terms]
        return self


def _reduce(ctx: _Context, acc: dict, heap: list, reducers: list, full: bool = True, cache=None):
    """Reduce the polynomial held in ``acc``/``heap`` by ``reducers``.

    ``acc`` maps packed monomial -> coefficient, ``heap`` holds
    ``(-key, packed)``.  Returns the remainder as a descending term list.
    ``cache`` optionally memoizes packed monomial -> reducer (or None).
    """
    gmask = ctx.gmask
    heappop, heappush = heapq.heappop, heapq.heappush
    if cache is None:
        cache = {}
    out = []
    while heap:
        negk, p = heappop(heap)
        c = acc.pop(p, None)
        if not c:
            continue
        hit = cache.get(p, 0)
        if hit == 0:
            pg = p | gmask
            hit = None
            for lp, g in reducers:
                if (pg - lp) & gmask == gmask:
                    hit = (lp, g)
                    break
            cache[p] = hit
        if hit is not None:
            lp, g = hit
        else:
            out.append((-negk, p, c))
            if not full:
                # top-reduced: flush the rest untouched
                while heap:
                    nk, q = heappop(heap)
                    v = acc.pop(q, None)
                    if v:
                        out.append((-nk, q, v))
                return out
            continue
        qk = -negk - g.lead_key
        qp = p - lp
        terms = g.terms
        for i in range(1, len(terms)):
            k2, p2, c2 = terms[i]
            np_ = p2 + qp
            old = acc.get(np_)
            if old is None:
                acc[np_] = -c * c2
                heappush(heap, (-(k2 + qk), np_))
            else:
                acc[np_] = old - c * c2
    return out


def _load(terms, scale=None, shift_key=0, shift_packed=0, acc=None, heap=None):
    acc = {} if acc is None else acc
    heap = [] if heap is None else heap
    for k, p, c in terms:
        np_ = p + shift_packed
        v = c if scale is None else c * scale
        old = acc.get(np_)
        if old is None:
            acc[np_] = v
            heap.append((-(k + shift_key), np_))
        else:
            acc[np_] = old + v
    return acc, heap


class BuchbergerStats:
    def __init__(self):
        self.pairs = 0
        self.zero_reductions = 0
        self.basis_size = 0


def _buchberger(ctx: _Context, polys: list, stats: BuchbergerStats | None = None, degree_bound=None):
    """Return a reduced Groebner basis (list of _EPoly) of ``polys``."""
    G: list[_EPoly] = []
    active: list[int] = []
    pairs: list = []
    tick = count()
    reducers = None
    divcache: dict = {}
    for f in polys:
        heapq.heappush(pairs, (f.sugar, f.lead_key, next(tick), -1, f))

    def lcm_exps(a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def update(h_idx: int):
        h = G[h_idx]
        hl = h.lead_exps
        hp = h.lead_packed
        # new candidate pairs (g, h) grouped by lcm
        cands = []
        for gi in active:
            g = G[gi]
            L = lcm_exps(g.lead_exps, hl)
            cands.append((gi, L, ctx.pack(L), (g.supp & h.supp) == 0))
        # criterion M: drop pairs whose lcm is a strict multiple of another's lcm
        lcms = {c[2] for c in cands}
        keep = [c for c in cands if not any(q != c[2] and ctx.divides(q, c[2]) for q in lcms)]
        # criterion F: one pair per lcm; the whole group goes if any member is coprime
        by_lcm: dict = {}
        for gi, L, Lp, coprime in keep:
            by_lcm.setdefault(Lp, []).append((gi, L, coprime))
        new_pairs = []
        for Lp, group in by_lcm.items():
            if any(cp for _, _, cp in group):
                continue
            gi, L, _ = min(group)
            new_pairs.append((gi, L))
        # prune old pairs (criterion B_k)
        if pairs:
            kept = []
            for item in pairs:
                if item[3] < 0:
                    kept.append(item)
                    continue
                _, _, _, i, j, Lp = item
                if ctx.divides(hp, Lp):
                    Li = ctx.pack(lcm_exps(G[i].lead_exps, hl))
                    Lj = ctx.pack(lcm_exps(G[j].lead_exps, hl))
                    if Li != Lp and Lj != Lp:
                        continue
                kept.append(item)
            if len(kept) != len(pairs):
                pairs[:] = kept
                heapq.heapify(pairs)
        for gi, L in new_pairs:
            g = G[gi]
            s = max(
                g.sugar + ctx.sugar(L) - ctx.sugar(g.lead_exps),
                h.sugar + ctx.sugar(L) - ctx.sugar(hl),
            )
            heapq.heappush(pairs, (s, ctx.key(L), next(tick), gi, h_idx, ctx.pack(L)))
        # remove basis elements made redundant by h
        active[:] = [gi for gi in active if not ctx.divides(hp, G[gi].lead_packed)]
        active.append(h_idx)

    while pairs:
        item = heapq.heappop(pairs)
        sugar = item[0]
        if degree_bound is not None and sugar > degree_bound:
            continue
        if item[3] < 0:
            f = item[4]
            acc, heap = _load(f.terms)
        else:
            _, _, _, i, j, Lp = item
            if stats:
                stats.pairs += 1
            f, g = G[i], G[j]
            sf = Lp - f.lead_packed
            sg = Lp - g.lead_packed
            kf = ctx.key(ctx.unpack(sf))
            kg = ctx.key(ctx.unpack(sg))
            acc, heap = _load(f.terms[1:], None, kf, sf)
            _load(g.terms[1:], -1, kg, sg, acc, heap)
            heapq.heapify(heap)
        if item[3] < 0:
            heapq.heapify(heap)
        if reducers is None:
            reducers = [(G[gi].lead_packed, G[gi]) for gi in active]
            divcache = {p: r for p, r in divcache.items() if r is not None}
        rem = _reduce(ctx, acc, heap, reducers, full=True, cache=divcache)
        if not rem:
            if stats and item[3] >= 0:
                stats.zero_reductions += 1
            continue
        h = _EPoly(ctx, rem, sugar).monic()
        G.append(h)
        update(len(G) - 1)
        reducers = None

    basis = [G[i] for i in active]
    basis.sort(key=lambda g: g.lead_key)
    reduced = []
    for idx, g in enumerate(basis):
        others = [(o.lead_packed, o) for j, o in enumerate(basis) if j != idx]
        acc, heap = _load(g.terms[1:])
        heapq.heapify(heap)
        tail = _reduce(ctx, acc, heap, others, full=True)
        reduced.append(_EPoly(ctx, [g.terms[0]] + tail, g.sugar))
    if stats:
        stats.basis_size = len(reduced)
    return reduced


# --------------------------------------------------------------------------
# public polynomial-level API


def _check_same_ring(polys):
    ring = None
    for p in polys:
        if ring is None:
            ring = p.ring
        elif p.ring != ring:
            raise RingMismatch("generators live in different rings")
    return ring


def _sugar_weights(ring: PolynomialRing):
    w = [d[0] for d in ring.degrees]
    return w if all(x > 0 for x in w) else None


def groebner_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    *,
    sugar_weights=None,
    stats: BuchbergerStats | None = None,
    degree_bound=None,
) -> list[Polynomial]:
    """Reduced Groebner basis, sorted by ascending leading monomial."""
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ring = _check_same_ring(gens)
    order = order or ring.default_order()
    ctx = _Context(ring.nvars, order, sugar_weights or _sugar_weights(ring))
    eps = [ctx.convert(g) for g in gens]
    basis = _buchberger(ctx, eps, stats, degree_bound)
    return [ctx.back(g, ring) for g in basis]


buchberger = groebner_basis


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo the Groebner basis ``G``."""
    if not f.terms:
        return f
    order = order or f.ring.default_order()
    ctx = _Context(f.ring.nvars, order)
    reducers = []
    for g in G:
        if g.ring != f.ring:
            raise RingMismatch("basis and polynomial live in different rings")
        eg = ctx.convert(g)
        if eg is not None:
            reducers.append((eg.lead_packed, eg))
    terms = [(ctx.key(m), ctx.pack(m), c) for m, c in f.terms.items()]
    acc, heap = _load(terms)
    heapq.heapify(heap)
    rem = _reduce(ctx, acc, heap, reducers, full=True)
    return Polynomial(f.ring, {ctx.unpack(p): c for _, p, c in rem}, _trusted=True)


class Reducer:
    """Reusable normal-form operator for a fixed Groebner basis and order."""

    def __init__(self, ring: PolynomialRing, G: Sequence[Polynomial], order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.ctx = _Context(ring.nvars, order)
        self.reducers = []
        for g in G:
            eg = self.ctx.convert(g)
            if eg is not None:
                self.reducers.append((eg.lead_packed, eg))
        self.leads = [eg.lead_exps for _, eg in self.reducers]

    def __call__(self, f: Polynomial) -> Polynomial:
        if not f.terms:
            return f
        ctx = self.ctx
        terms = [(ctx.key(m), ctx.pack(m), c) for m, c in f.terms.items()]
        acc, heap = _load(terms)
        heapq.heapify(heap)
        rem = _reduce(ctx, acc, heap, self.reducers, full=True)
        return Polynomial(self.ring, {ctx.unpack(p): c for _, p, c in rem}, _trusted=True)

    def is_standard(self, exps) -> bool:
        return not any(all(a <= b for a, b in zip(lead, exps)) for lead in self.leads)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, mg = f.leading_monomial(order), g.leading_monomial(order)
    L = tuple(max(a, b) for a, b in zip(mf, mg))
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, mf)), 1 / f.terms[mf])
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, mg)), 1 / g.terms[mg])
    return a - b


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion: all S-polynomials reduce to zero."""
    G = [g for g in G if g.terms]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if normal_form(s_polynomial(G[i], G[j], order), G, order).terms:
                return False
    return True


def elimination_order(nvars: int, k: int, ring: PolynomialRing | None = None) -> MonomialOrder:
    """Block order eliminating the first ``k`` variables."""
    if ring is not None:
        w = [d[0] for d in ring.degrees]
        if all(x > 0 for x in w):
            return block(k, weighted(w[:k]) if k else DEGREVLEX, weighted(w[k:]) if nvars - k else DEGREVLEX)
    return block(k, DEGREVLEX, DEGREVLEX)


def eliminate_polys(gens: Sequence[Polynomial], eliminate: Sequence[int], keep_ring: PolynomialRing | None = None,
                    sugar_weights=None) -> list[Polynomial]:
    """Generators of ``(gens) ∩ k[remaining variables]``.

    ``eliminate`` lists variable positions to remove.  The result lives in
    ``keep_ring`` (default: a ring on the remaining variables, same names and
    degrees, original relative order).
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ring = _check_same_ring(gens)
    n = ring.nvars
    elim = sorted(set(eliminate))
    rest = [i for i in range(n) if i not in elim]
    perm = elim + rest
    moved = PolynomialRing([ring.names[i] for i in perm], [ring.degrees[i] for i in perm])
    pos = {old: new for new, old in enumerate(perm)}
    moved_gens = [g.map_variables(moved, [pos[i] for i in range(n)]) for g in gens]
    k = len(elim)
    w = [d[0] for d in moved.degrees]
    inner = weighted(w[k:]) if all(x > 0 for x in w[k:]) and n - k else DEGREVLEX
    first = weighted(w[:k]) if all(x > 0 for x in w[:k]) and k else DEGREVLEX
    order = block(k, first, inner)
    if sugar_weights is not None:
        sugar_weights = [sugar_weights[i] for i in perm]
    G = groebner_basis(moved_gens, order, sugar_weights=sugar_weights)
    if keep_ring is None:
        keep_ring = PolynomialRing([ring.names[i] for i in rest], [ring.degrees[i] for i in rest])
    out = []
    for g in G:
        if all(not any(m[:k]) for m in g.terms):
            out.append(Polynomial(keep_ring, {m[k:]: c for m, c in g.terms.items()}, _trusted=True))
    return out


# --------------------------------------------------------------------------
# graded quotient rings and ideals


class GradedRing:
    """``QQ[X]/J`` with a multigrading; polynomials are lifts in ``QQ[X]``."""

    def __init__(self, names, degrees=None, relations=(), order: MonomialOrder | None = None):
        self.poly = names if isinstance(names, PolynomialRing) else PolynomialRing(names, degrees)
        rels = []
        for r in relations:
            r = self.poly(r)
            if r.terms and not r.is_homogeneous():
                raise Inhomogeneous(f"relation {r} is not homogeneous")
            if r.terms:
                rels.append(r)
        self.relations = tuple(rels)
        self.order = order or self.poly.default_order()
        self._lock = threading.Lock()
        self._relation_gb = {}

    # -- delegation -------------------------------------------------------
    @property
    def names(self):
        return self.poly.names

    @property
    def degrees(self):
        return self.poly.degrees

    @property
    def nvars(self):
        return self.poly.nvars

    @property
    def rank(self):
        return self.poly.rank

    def __call__(self, text):
        return self.poly(text)

    def gens(self):
        return self.poly.gens()

    def gen(self, i):
        return self.poly.gen(i)

    def zero(self):
        return self.poly.zero()

    def one(self):
        return self.poly.one()

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.poly == other.poly and set(self.relations) == set(other.relations)

    def __hash__(self):
        return hash((self.poly, frozenset(self.relations)))

    def __repr__(self):
        if self.relations:
            return f"{self.poly!r}/({', '.join(map(str, self.relations))})"
        return repr(self.poly)

    @property
    def is_standard_graded(self) -> bool:
        return all(d == (1,) for d in self.degrees)

    def relation_basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or self.order
        with self._lock:
            G = self._relation_gb.get(order)
        if G is None:
            G = groebner_basis(list(self.relations), order)
            with self._lock:
                self._relation_gb[order] = G
        return G

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.relation_basis(), self.order)

    def ideal(self, *gens) -> "Ideal":
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = gens[0]
        return Ideal(self, gens)

    def maximal_ideal(self) -> "Ideal":
        return Ideal(self, self.gens())

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.one()])

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    def with_grading(self, degrees) -> "GradedRing":
        return GradedRing(PolynomialRing(self.names, degrees),
                          relations=[Polynomial(PolynomialRing(self.names, degrees), r.terms) for r in self.relations])


class Ideal:
    """A homogeneous ideal of a :class:`GradedRing`, given by generators."""

    def __init__(self, ring: GradedRing, gens: Iterable = (), check: bool = True):
        self.ring = ring
        out = []
        seen = set()
        for g in gens:
            g = ring(g)
            if not g.terms:
                continue
            if check and not g.is_homogeneous():
                raise Inhomogeneous(f"generator {g} is not homogeneous")
            k = frozenset(g.terms.items())
            if k not in seen:
                seen.add(k)
                out.append(g)
        self.gens = tuple(out)
        self._gb = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __len__(self):
        return len(self.gens)

    def groebner(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        """Reduced GB of generators together with the ring relations."""
        order = order or self.ring.order
        with self._lock:
            G = self._gb.get(order)
        if G is None:
            G = groebner_basis(list(self.gens) + list(self.ring.relations), order)
            with self._lock:
                self._gb[order] = G
        return G

    def reducer(self, order: MonomialOrder | None = None) -> Reducer:
        order = order or self.ring.order
        return Reducer(self.ring.poly, self.groebner(order), order)

    def normal_form(self, f) -> Polynomial:
        return normal_form(self.ring(f), self.groebner(), self.ring.order)

    def contains(self, f) -> bool:
        return not self.normal_form(f).terms

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")
        red = other.reducer()
        return all(not red(g).terms for g in self.gens)

    def __le__(self, other):
        return self.is_subset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, tuple(self.groebner())))

    def is_zero(self) -> bool:
        red = Reducer(self.ring.poly, self.ring.relation_basis(), self.ring.order)
        return all(not red(g).terms for g in self.gens)

    def is_unit(self) -> bool:
        G = self.groebner()
        return any(all(not any(m) for m in g.terms) for g in G)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens, check=False)

    def __mul__(self, other: "Ideal") -> "Ideal":
        red = Reducer(self.ring.poly, self.ring.relation_basis(), self.ring.order)
        prods = []
        for a in self.gens:
            for b in other.gens:
                p = red(a * b)
                if p.terms:
                    prods.append(p)
        return Ideal(self.ring, prods, check=False)

    def power(self, k: int) -> "Ideal":
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            return self.ring.unit_ideal()
        result = self
        for _ in range(k - 1):
            result = _prune(result * self)
        return result

    __pow__ = power

    def generator_degrees(self) -> list:
        return sorted(g.degree() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)


def _prune(I: Ideal) -> Ideal:
    """Drop generators already generated by lower-degree ones (cheap, degree-wise)."""
    gens = sorted(I.gens, key=lambda g: (g.degree(), len(g.terms)))
    if len(gens) <= 1:
        return I
    from .ideals import minimal_generators

    return Ideal(I.ring, minimal_generators(I), check=False)
