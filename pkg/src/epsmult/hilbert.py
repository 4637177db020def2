"""Multigraded Hilbert series, series coefficients and Hilbert polynomial fits.

Numerators are integer polynomials stored as ``{exponent tuple: int}``; a
denominator is a multiset of nonzero degree vectors ``δ``, each standing for
a factor ``(1 - t^δ)``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from gmpy2 import mpq

from .groebner import GradedRing, Ideal
from .poly import Inhomogeneous, rational_str


class NoStablePolynomial(ArithmeticError):
    """Series coefficients did not agree with a polynomial on the probe grids."""


# --------------------------------------------------------------------------
# integer polynomials as dicts


def padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def one_minus(delta: tuple) -> dict:
    return {tuple(0 for _ in delta): 1, tuple(delta): -1}


def divide_one_minus(num: dict, delta: tuple):
    """Exact quotient ``num / (1 - t^delta)`` or ``None`` if not divisible.

    Coefficients split into chains ``m0 + k·delta``; along a chain the
    quotient's coefficients are prefix sums, and divisibility means every
    chain sums to zero.
    """
    chains: dict = {}
    for m, c in num.items():
        k = min((x // d for x, d in zip(m, delta) if d), default=0)
        base = tuple(x - k * d for x, d in zip(m, delta))
        chains.setdefault(base, {})[k] = c
    out = {}
    for base, ks in chains.items():
        if sum(ks.values()):
            return None
        acc = 0
        for k in range(max(ks) + 1):
            acc += ks.get(k, 0)
            if acc:
                out[tuple(b + k * d for b, d in zip(base, delta))] = acc
    return out


def peval_ones(num: dict):
    return sum(num.values())


# --------------------------------------------------------------------------
# rational series


class RationalSeries:
    """``N(t) / prod (1 - t^δ)`` with integer ``N``."""

    __slots__ = ("rank", "numerator", "denominator", "names")

    def __init__(self, rank: int, numerator: dict, denominator: Sequence[tuple] = (), names=None):
        self.rank = rank
        self.numerator = {tuple(m): int(c) for m, c in numerator.items() if c}
        den = [tuple(int(x) for x in d) for d in denominator]
        for d in den:
            if len(d) != rank or not any(d):
                raise ValueError(f"bad denominator factor {d}")
            if any(x < 0 for x in d):
                raise ValueError("denominator exponents must be non-negative")
        self.denominator = tuple(sorted(den))
        if names is None:
            names = ("t",) if rank == 1 else tuple(f"t{i}" for i in range(rank))
        self.names = tuple(names)

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, rank=1, names=None):
        return cls(rank, {}, (), names)

    @classmethod
    def one(cls, rank=1, names=None):
        return cls(rank, {(0,) * rank: 1}, (), names)

    def _like(self, num, den):
        return RationalSeries(self.rank, num, den, self.names)

    def canonical(self) -> "RationalSeries":
        """Cancel every ``(1 - t^δ)`` factor dividing the numerator."""
        if not self.numerator:
            return self._like({}, ())
        num = self.numerator
        kept = []
        for d in sorted(self.denominator, reverse=True):
            q = divide_one_minus(num, d)
            if q is None:
                kept.append(d)
            else:
                num = q
        return self._like(num, kept)

    def is_zero(self) -> bool:
        return not self.numerator

    # -- arithmetic -------------------------------------------------------
    def _common(self, other: "RationalSeries"):
        if other.rank != self.rank:
            raise ValueError("series of different rank")
        ca, cb = Counter(self.denominator), Counter(other.denominator)
        common = ca | cb
        na = self.numerator
        for d, k in (common - ca).items():
            for _ in range(k):
                na = pmul(na, one_minus(d))
        nb = other.numerator
        for d, k in (common - cb).items():
            for _ in range(k):
                nb = pmul(nb, one_minus(d))
        return na, nb, list(common.elements())

    def __add__(self, other):
        na, nb, den = self._common(other)
        return self._like(padd(na, nb), den)

    def __sub__(self, other):
        na, nb, den = self._common(other)
        return self._like(padd(na, nb, -1), den)

    def __neg__(self):
        return self._like({m: -c for m, c in self.numerator.items()}, self.denominator)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({m: c * other for m, c in self.numerator.items()}, self.denominator)
        return self._like(pmul(self.numerator, other.numerator), self.denominator + other.denominator)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries) or other.rank != self.rank:
            return NotImplemented
        na, nb, _ = self._common(other)
        return na == nb

    def __hash__(self):
        c = self.canonical()
        return hash((c.rank, frozenset(c.numerator.items()), c.denominator))

    # -- inspection -------------------------------------------------------
    def numerator_degree(self) -> tuple:
        return tuple(max((m[i] for m in self.numerator), default=0) for i in range(self.rank))

    def pole_order_at_one(self) -> int:
        """Order of the pole at ``t = 1`` (univariate series only)."""
        self._need_univariate()
        if not self.numerator:
            return 0
        num = {m[0]: c for m, c in self.numerator.items()}
        k = 0
        while sum(num.values()) == 0:
            num = _udiv_one_minus_t(num)
            k += 1
        return len(self.denominator) - k

    def _need_univariate(self):
        if self.rank != 1:
            raise ValueError("operation needs a univariate series")

    def coefficient(self, degree) -> int:
        if isinstance(degree, int):
            degree = (degree,)
        degree = tuple(degree)
        if len(degree) != self.rank:
            raise ValueError("degree length differs from series rank")
        if any(x < 0 for x in degree):
            raise ValueError("negative degree")
        return self.coefficients(degree)[degree]

    def coefficients(self, bound) -> "CoefficientTable":
        """All coefficients at degrees componentwise ``<= bound``."""
        if isinstance(bound, int):
            bound = (bound,)
        return CoefficientTable(self, tuple(bound))

    def series(self, n: int) -> list[int]:
        """First ``n + 1`` coefficients of a univariate series."""
        self._need_univariate()
        table = self.coefficients((n,))
        return [table[(i,)] for i in range(n + 1)]

    # -- substitution -----------------------------------------------------
    def restrict(self, keep: int) -> "RationalSeries":
        """Set every variable except ``keep`` to 1.

        Factors not involving ``keep`` must divide the numerator exactly
        (otherwise ``ValueError``); the others become ``(1 - t^{δ_keep})``.
        """
        num = self.numerator
        den = []
        for d in self.denominator:
            if d[keep] == 0:
                q = divide_one_minus(num, d)
                if q is None:
                    raise ValueError(f"factor (1 - {_mono_text(d, self.names)}) does not cancel")
                num = q
            else:
                den.append((d[keep],))
        out: dict = {}
        for m, c in num.items():
            k = (m[keep],)
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return RationalSeries(1, out, den, (self.names[keep],))

    # -- text / json ------------------------------------------------------
    def numerator_text(self) -> str:
        return _poly_text(self.numerator, self.names)

    def denominator_text(self) -> str:
        if not self.denominator:
            return "1"
        parts = []
        for d, k in sorted(Counter(self.denominator).items()):
            f = f"(1-{_mono_text(d, self.names)})"
            parts.append(f if k == 1 else f"{f}^{k}")
        return "*".join(parts)

    def to_text(self) -> str:
        num = self.numerator_text()
        if not self.denominator:
            return num
        den = self.denominator_text()
        if len(self.numerator) > 1:
            num = f"({num})"
        if len(self.denominator) > 1 or "^" in den[-3:]:
            den = f"({den})"
        return f"{num} / {den}"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RationalSeries({self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "variables": list(self.names),
            "numerator": [[list(m), int(c)] for m, c in sorted(self.numerator.items())],
            "denominator": [list(d) for d in self.denominator],
            "text": self.to_text(),
        }

    @classmethod
    def from_json(cls, data) -> "RationalSeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            data["rank"],
            {tuple(m): c for m, c in data["numerator"]},
            [tuple(d) for d in data["denominator"]],
            data.get("variables"),
        )


def _mono_text(m, names) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts) or "1"


def _poly_text(num: dict, names) -> str:
    if not num:
        return "0"
    out = []
    for m, c in sorted(num.items(), key=lambda t: (sum(t[0]), t[0])):
        mono = _mono_text(m, names)
        a = abs(c)
        body = str(a) if mono == "1" else (mono if a == 1 else f"{a}*{mono}")
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def _udiv_one_minus_t(num: dict) -> dict:
    q = divide_one_minus({(k,): c for k, c in num.items()}, (1,))
    return {m[0]: c for m, c in q.items()}


class CoefficientTable:
    """Dense table of series coefficients on a box ``[0, bound]``."""

    def __init__(self, H: RationalSeries, bound: tuple):
        self.bound = bound
        shape = [b + 1 for b in bound]
        if H.rank == 1:
            B = bound[0]
            base = [0] * (B + 1)
            if B >= 0:
                base[0] = 1
            for (d,) in H.denominator:
                for i in range(d, B + 1):
                    base[i] += base[i - d]
            vals = [0] * (B + 1)
            for (m,), c in H.numerator.items():
                for i in range(m, B + 1):
                    vals[i] += c * base[i - m]
            self._vals = vals
            self._rank1 = True
            return
        if H.rank != 2:
            raise NotImplementedError("coefficient tables support ranks 1 and 2")
        A, B = shape
        base = [[0] * B for _ in range(A)]
        base[0][0] = 1
        for d0, d1 in H.denominator:
            for i in range(d0, A):
                row, src = base[i], base[i - d0]
                for j in range(d1, B):
                    row[j] += src[j - d1]
        vals = [[0] * B for _ in range(A)]
        for (m0, m1), c in H.numerator.items():
            for i in range(m0, A):
                row, src = vals[i], base[i - m0]
                for j in range(m1, B):
                    row[j] += c * src[j - m1]
        self._vals = vals
        self._rank1 = False

    def __getitem__(self, deg):
        if self._rank1:
            return self._vals[deg[0]]
        return self._vals[deg[0]][deg[1]]


class LazyCoefficients:
    """Coefficient lookup that recomputes a larger table when needed."""

    def __init__(self, H: RationalSeries, bound=None):
        self.H = H
        self.bound = tuple(bound) if bound else (16,) * H.rank
        self.table = CoefficientTable(H, self.bound)

    def __call__(self, *x) -> int:
        if any(a < 0 for a in x):
            return 0
        if any(a > b for a, b in zip(x, self.bound)):
            self.bound = tuple(max(2 * b, a + 1) for a, b in zip(x, self.bound))
            self.table = CoefficientTable(self.H, self.bound)
        return self.table[tuple(x)]


# --------------------------------------------------------------------------
# Hilbert numerators of monomial ideals


def _minimalize(gens: list) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _degree(m, degrees, rank):
    return tuple(sum(e * d[k] for e, d in zip(m, degrees) if e) for k in range(rank))


class _Numerator:
    def __init__(self, degrees, rank, strategy):
        self.degrees = degrees
        self.rank = rank
        self.strategy = strategy
        self.zero = (0,) * rank

    def shift(self, poly: dict, deg: tuple) -> dict:
        return {tuple(a + b for a, b in zip(m, deg)): c for m, c in poly.items()}

    def run(self, gens: list) -> dict:
        gens = _minimalize(gens)
        return self._rec(gens)

    def _rec(self, gens: list) -> dict:
        if not gens:
            return {self.zero: 1}
        # split off generators coprime to all the others
        supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
        result = {self.zero: 1}
        rest = []
        rest_s = []
        for idx, g in enumerate(gens):
            s = supports[idx]
            if all(not (s & t) for j, t in enumerate(supports) if j != idx):
                result = pmul(result, one_minus(_degree(g, self.degrees, self.rank)))
            else:
                rest.append(g)
                rest_s.append(s)
        if not rest:
            return result
        var, exp = self._pivot(rest, rest_s)
        p = [0] * len(rest[0])
        p[var] = exp
        p = tuple(p)
        # M + (p)
        plus = [g for g in rest if g[var] < exp] + [p]
        # M : p
        colon = []
        for g in rest:
            h = list(g)
            h[var] = max(0, h[var] - exp)
            colon.append(tuple(h))
        a = self._rec(_minimalize(plus))
        b = self._rec(_minimalize(colon))
        b = self.shift(b, _degree(p, self.degrees, self.rank))
        return pmul(result, padd(a, b))

    def _pivot(self, gens, supports):
        n = len(gens[0])
        if self.strategy == "first":
            for i in range(n):
                if any(g[i] for g in gens):
                    return i, 1
        counts = [0] * n
        for s in supports:
            for i in s:
                counts[i] += 1
        var = max(range(n), key=lambda i: (counts[i], -i))
        exps = sorted(g[var] for g in gens if g[var])
        return var, exps[(len(exps) - 1) // 2]


def hilbert_numerator(leads: Sequence[tuple], degrees: Sequence[tuple], strategy: str = "bigatti") -> dict:
    """Numerator ``N`` with ``H(k[x]/(leads)) = N / prod (1 - t^deg x_i)``."""
    degrees = [tuple(d) for d in degrees]
    rank = len(degrees[0]) if degrees else 1
    if any(not any(m) for m in leads):
        return {}
    return _Numerator(degrees, rank, strategy).run([tuple(m) for m in leads])


def _lead_data(obj):
    if isinstance(obj, GradedRing):
        R, G = obj, obj.relation_basis()
    elif isinstance(obj, Ideal):
        R, G = obj.ring, obj.groebner()
    else:
        raise TypeError("expected a GradedRing or an Ideal")
    for g in G:
        if not g.is_homogeneous():
            raise Inhomogeneous(f"{g} is not homogeneous")
    return R, [g.leading_monomial(R.order) for g in G]


def hilbert_series(obj, grading: Sequence[tuple] | None = None, strategy: str = "bigatti",
                   names=None) -> RationalSeries:
    """Hilbert series of a graded ring, or of ``R/I`` when given an Ideal.

    ``grading`` overrides the ring's degree vectors (the defining ideal must
    be homogeneous for it).
    """
    R, leads = _lead_data(obj)
    degrees = [tuple(d) for d in (grading or R.degrees)]
    rank = len(degrees[0]) if degrees else 1
    for d in degrees:
        if not any(d) or any(x < 0 for x in d):
            raise ValueError("variable degrees must be nonzero and non-negative")
    num = hilbert_numerator(leads, degrees, strategy)
    return RationalSeries(rank, num, degrees, names)


def ideal_series(I: Ideal, strategy: str = "bigatti") -> RationalSeries:
    """Hilbert series of ``I`` as an ``R``-module: ``H(R) - H(R/I)``."""
    return hilbert_series(I.ring, strategy=strategy) - hilbert_series(I, strategy=strategy)


def multiplicity(R: GradedRing | Ideal) -> int:
    """``e(R)`` (or ``e(R/I)``) for a standard graded presentation."""
    ring = R if isinstance(R, GradedRing) else R.ring
    if not ring.is_standard_graded:
        raise ValueError("multiplicity needs a standard grading")
    H = hilbert_series(R).canonical()
    return degree_and_multiplicity(H)[1]


def degree_and_multiplicity(H: RationalSeries) -> tuple[int, int]:
    """``(d, e)`` with ``H = N/(1-t)^d`` and ``e = N(1)``, standard grading."""
    H._need_univariate()
    if any(d != (1,) for d in H.denominator):
        raise ValueError("series is not over (1-t) factors")
    if not H.numerator:
        return 0, 0
    num = {m[0]: c for m, c in H.numerator.items()}
    d = len(H.denominator)
    while sum(num.values()) == 0:
        num = _udiv_one_minus_t(num)
        d -= 1
    return d, sum(num.values())


# --------------------------------------------------------------------------
# polynomial fits


@dataclass
class HilbertPolynomialFit:
    """Polynomial ``P`` with ``P(x) = coefficient at x`` on the stable region.

    ``coefficients`` maps exponent tuples in the variables ``x_0..x_{g-1}``
    (exponents of ``t_0..t_{g-1}``) to rationals.  The region is
    ``x_0 >= offsets[0]`` and, for bivariate fits,
    ``x_1 >= shear * x_0 + offsets[1]``.
    """

    total_degree: int
    coefficients: dict
    offsets: tuple
    shear: int = 0
    doubled: bool = False
    notes: list = field(default_factory=list)

    def __call__(self, *x):
        total = mpq(0)
        for m, c in self.coefficients.items():
            term = c
            for xi, e in zip(x, m):
                term *= mpq(xi) ** e
            total += term
        return total

    def coefficient(self, *exps) -> mpq:
        return self.coefficients.get(tuple(exps), mpq(0))

    def to_json(self) -> dict:
        return {
            "total_degree": self.total_degree,
            "coefficients": [[list(m), rational_str(c)] for m, c in sorted(self.coefficients.items())],
            "offsets": list(self.offsets),
            "shear": self.shear,
            "doubled": self.doubled,
        }


def _binom_poly(a: int, shift: int) -> dict:
    """Coefficients of ``C(x - shift, a)`` as a polynomial in ``x``."""
    poly = {0: mpq(1)}
    for k in range(a):
        # multiply by (x - shift - k)
        new: dict = {}
        for e, c in poly.items():
            new[e + 1] = new.get(e + 1, 0) + c
            new[e] = new.get(e, 0) - c * (shift + k)
        poly = new
    f = mpq(1, 1)
    for k in range(2, a + 1):
        f *= k
    return {e: c / f for e, c in poly.items() if c}


def _fit_univariate(f: Callable, D: int, x0: int) -> dict:
    vals = [f(x0 + i) for i in range(D + 1)]
    diffs = []
    row = vals
    for a in range(D + 1):
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    out: dict = {}
    for a, dv in enumerate(diffs):
        if dv:
            for e, c in _binom_poly(a, x0).items():
                out[e] = out.get(e, 0) + dv * c
    return {(e,): c for e, c in out.items() if c}


def _fit_bivariate(f: Callable, D: int, u0: int, v0: int) -> dict:
    """Fit in coordinates ``(x, y)`` from values on ``x0+i, y0+j, i+j<=D``."""
    grid = {(i, j): f(u0 + i, v0 + j) for i in range(D + 1) for j in range(D + 1 - i)}
    out: dict = {}
    # forward differences Δ_x^a Δ_y^b at the corner
    for a in range(D + 1):
        for b in range(D + 1 - a):
            dv = 0
            for i in range(a + 1):
                for j in range(b + 1):
                    dv += (-1) ** (a - i + b - j) * comb(a, i) * comb(b, j) * grid[(i, j)]
            if not dv:
                continue
            px, py = _binom_poly(a, u0), _binom_poly(b, v0)
            for e1, c1 in px.items():
                for e2, c2 in py.items():
                    out[(e1, e2)] = out.get((e1, e2), 0) + dv * c1 * c2
    return {m: c for m, c in out.items() if c}


def _eval(coeffs: dict, x) -> mpq:
    total = mpq(0)
    for m, c in coeffs.items():
        t = c
        for xi, e in zip(x, m):
            if e:
                t *= mpq(xi) ** e
        total += t
    return total


def _unshear(coeffs: dict, shear: int) -> dict:
    """Rewrite ``P(x0, y)`` with ``y = x1 - shear*x0`` as a polynomial in ``(x0, x1)``."""
    if not shear:
        return coeffs
    out: dict = {}
    for (a, b), c in coeffs.items():
        # (x1 - s x0)^b
        for k in range(b + 1):
            coef = c * comb(b, k) * (-shear) ** (b - k)
            key = (a + b - k, k)
            out[key] = out.get(key, 0) + coef
    return {m: c for m, c in out.items() if c}


def fit_hilbert_polynomial(
    H: RationalSeries,
    total_degree_bound: int,
    *,
    maxdeg: int = 1,
    shear: int = 0,
    start: tuple | None = None,
    coefficient: Callable | None = None,
) -> HilbertPolynomialFit:
    """Fit the eventual polynomial of the coefficients of ``H``.

    A probe grid starting at ``(2*D, 2*maxdeg*D)`` (bivariate; the second
    coordinate is measured past ``shear * x0``) or ``2*D`` (univariate) is
    interpolated, then checked on a disjoint larger grid.  On failure the
    start is doubled once; a second failure raises ``NoStablePolynomial``.
    """
    D = total_degree_bound
    if H.rank == 1:
        first = start or (2 * D,)
    elif H.rank == 2:
        first = start or (2 * D, 2 * maxdeg * D)
    else:
        raise NotImplementedError("fits support ranks 1 and 2")
    first = tuple(max(x, 1) for x in first)

    for attempt in range(2):
        st = tuple(s * (2 ** attempt) for s in first)
        ext = D + 3
        get = coefficient
        if get is None:
            if H.rank == 1:
                top = (st[0] + 2 * ext + D + 2,)
            else:
                v_top = st[0] + 2 * ext + D + 2
                top = (v_top, shear * v_top + st[1] + 2 * ext + D + 2)
            get = LazyCoefficients(H, top)
        if H.rank == 1:
            coeffs = _fit_univariate(lambda x: get(x), D, st[0])
            probe = [(st[0] + D + 1 + i,) for i in range(D + ext)]
        else:
            g = lambda x, y: get(x, y + shear * x)
            sheared = _fit_bivariate(g, D, st[0], st[1])
            coeffs = _unshear(sheared, shear)
            probe = []
            for i in range(D + ext):
                for j in range(D + ext - i):
                    x0 = st[0] + D + 1 + i
                    probe.append((x0, shear * x0 + st[1] + D + 1 + j))
        if all(_eval(coeffs, x) == get(*x) for x in probe):
            fit = HilbertPolynomialFit(D, coeffs, st, shear, doubled=attempt == 1)
            if attempt == 1:
                fit.notes.append("probe grid doubled before validation passed")
            return fit
    raise NoStablePolynomial(f"no polynomial of total degree <= {D} fits the probe grids")
