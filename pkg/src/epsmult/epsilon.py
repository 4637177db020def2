"""The epsilon-multiplicity pipeline and its closed-form companions.

The main route builds presentations of the Rees algebra ``R[It]`` and of the
saturated Rees algebra ``⊕ sat(I^v) t^v``; the difference of their bigraded
Hilbert series, with ``t1 = 1``, is ``sum_v λ(sat(I^v)/I^v) t^v``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import factorial, gcd

from gmpy2 import mpq

from .blowup import rees_presentation, saturated_rees_presentation, veronese_pair
from .groebner import Ideal
from .hilbert import LazyCoefficients, RationalSeries
from .ideals import analytic_spread, krull_dim, saturate
from .mixed import MixedMultiplicities, truncated_mixed
from .poly import rational_str, to_fraction

log = logging.getLogger(__name__)


class PoleAtOne(ArithmeticError):
    """A ``(1 - t1^b)`` factor survived cancellation."""


class NotEventuallyQuasiPolynomial(ArithmeticError):
    pass


class NotCofinal(ValueError):
    """``λ(I'/I)`` is infinite."""


class AnalyticSpreadError(ValueError):
    """Refusal when the analytic spread is not maximal (script parity)."""


# --------------------------------------------------------------------------
# univariate integer polynomials as coefficient lists (index = degree)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _udivmod_monic(a, m):
    """Quotient and remainder of ``a`` by the monic (leading coefficient 1) ``m``."""
    a = list(a)
    dm = len(m) - 1
    if len(a) - 1 < dm:
        return [], _trim(a)
    q = [0] * (len(a) - dm)
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            q[k - dm] = c
            for j in range(dm + 1):
                a[k - dm + j] -= c * m[j]
    return _trim(q), _trim(a[:dm])


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> tuple:
    """Coefficients of the ``k``-th cyclotomic polynomial."""
    p = [-1] + [0] * (k - 1) + [1]
    for j in range(1, k):
        if k % j == 0:
            p, r = _udivmod_monic(p, list(cyclotomic(j)))
            assert not r
    return tuple(p)


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def _lcm(values):
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def _to_list(H: RationalSeries):
    deg = max((m[0] for m in H.numerator), default=-1)
    out = [0] * (deg + 1)
    for (m,), c in H.numerator.items():
        out[m] = c
    return out


def _divides_exactly(num, k):
    q, r = _udivmod_monic(num, list(cyclotomic(k)))
    return q if not r else None


def lowest_terms(H: RationalSeries) -> tuple[list, dict]:
    """Write ``H = N / prod_k Phi_k^{m_k}`` in lowest terms.

    ``Phi_1`` stands for ``1 - t`` (not ``t - 1``) so that every
    ``1 - t^e = prod_{k | e} Phi_k``.  Returns ``(N, {k: m_k})``.
    """
    H._need_univariate()
    num = _to_list(H)
    counts: dict = {}
    for (e,) in H.denominator:
        for k in _divisors(e):
            counts[k] = counts.get(k, 0) + 1
    if not num:
        return [], {}
    for k in sorted(counts):
        while counts[k]:
            if k == 1:
                # divide by (1 - t) = -(t - 1)
                q = _divides_exactly(num, 1)
                q = [-c for c in q] if q is not None else None
            else:
                q = _divides_exactly(num, k)
            if q is None:
                break
            num = q
            counts[k] -= 1
    return num, {k: m for k, m in counts.items() if m}


def _phi(k):
    return [1, -1] if k == 1 else list(cyclotomic(k))


def refactor(H: RationalSeries) -> RationalSeries:
    """Lowest terms, re-expressed over ``(1 - t^e)`` factors.

    Greedily takes ``e`` = the largest remaining cyclotomic index; missing
    cyclotomic factors of ``1 - t^e`` are multiplied into the numerator.
    """
    if not H.numerator:
        return RationalSeries(1, {}, (), H.names)
    num, counts = lowest_terms(H)
    counts = dict(counts)
    den = []
    while counts:
        e = max(counts)
        den.append((e,))
        for k in _divisors(e):
            if counts.get(k):
                counts[k] -= 1
                if not counts[k]:
                    del counts[k]
            else:
                num = _umul(num, _phi(k))
    return RationalSeries(1, {(i,): c for i, c in enumerate(num) if c}, den, H.names)


def _poly_str(p, var="t", ascending=False) -> str:
    terms = []
    idx = range(len(p)) if ascending else range(len(p) - 1, -1, -1)
    for i in idx:
        c = p[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) or "0"


def factored_text(H: RationalSeries) -> str:
    """Lowest terms with cyclotomic factors spelled out, e.g. ``t^2 / ((1-t)^4*(1+t))``."""
    num, counts = lowest_terms(H)
    var = H.names[0]
    if not num:
        return "0"
    parts = []
    for k in sorted(counts):
        body = f"1-{var}" if k == 1 else _poly_str(list(cyclotomic(k)), var, ascending=True).replace(" ", "")
        f = f"({body})"
        parts.append(f if counts[k] == 1 else f"{f}^{counts[k]}")
    content = 0
    for c in num:
        content = gcd(content, c)
    if num[-1] < 0:
        content = -content
    low = next(i for i, c in enumerate(num) if c)
    rest = [c // content for c in num[low:]]
    pre = []
    if content != 1:
        pre.append(str(content) if content != -1 else "-")
    if low:
        pre.append(var if low == 1 else f"{var}^{low}")
    if len([c for c in rest if c]) > 1:
        body = _poly_str(rest, var)
        pre.append(f"({body})" if pre else body)
    elif not low:
        pre.append("1" if not pre or pre == ["-"] else "")
    n_txt = "*".join(x for x in pre if x).replace("-*", "-")
    if not parts:
        return n_txt
    den = "*".join(parts)
    if len(parts) > 1 or counts[sorted(counts)[0]] > 1:
        den = f"({den})"
    return f"{n_txt} / {den}"


# --------------------------------------------------------------------------
# quasi-polynomials


@dataclass
class QuasiPolynomial:
    """``f(n) = sum_j table[n mod period][j] n^j`` for ``n >= n0``."""

    degree: int
    period: int
    table: list
    n0: int

    def __call__(self, n: int) -> mpq:
        row = self.table[n % self.period]
        total = mpq(0)
        for j, c in enumerate(row):
            if c:
                total += c * mpq(n) ** j
        return total

    def leading_coefficients(self) -> list:
        return [row[self.degree] if self.degree >= 0 else mpq(0) for row in self.table]

    @property
    def leading_coefficient(self) -> mpq:
        lead = self.leading_coefficients()
        if len(set(lead)) != 1:
            raise NotEventuallyQuasiPolynomial(f"leading coefficient varies with the residue: {lead}")
        return lead[0]

    def to_text(self, var="n") -> str:
        rows = []
        for r, row in enumerate(self.table):
            terms = []
            for j in range(len(row) - 1, -1, -1):
                c = row[j]
                if not c:
                    continue
                mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
                cs = rational_str(c)
                terms.append(cs if not mono else f"{cs}*{mono}")
            body = " + ".join(terms).replace("+ -", "- ") or "0"
            rows.append(body if self.period == 1 else f"[{var} = {r} mod {self.period}] {body}")
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "n0": self.n0,
            "table": [[rational_str(c) for c in row] for row in self.table],
        }


def _interpolate(xs, ys):
    """Coefficients (constant first) of the polynomial through the points."""
    n = len(xs)
    coeffs = [mpq(0)] * n
    for i in range(n):
        # Lagrange basis polynomial
        basis = [mpq(1)]
        denom = mpq(1)
        for j in range(n):
            if j == i:
                continue
            basis = [mpq(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = mpq(ys[i]) / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    return coeffs


def quasi_polynomial(H: RationalSeries) -> QuasiPolynomial:
    """Eventual quasi-polynomial of the coefficients of a univariate series."""
    H = refactor(H)
    es = [d[0] for d in H.denominator]
    period = _lcm(es) if es else 1
    D = len(es) - 1
    ndeg = max((m[0] for m in H.numerator), default=-1)
    start = max(0, ndeg - sum(es) + 1)
    if D < 0:
        return QuasiPolynomial(-1, 1, [[]], start)
    npts = D + 1
    top = start + period * (2 * npts + 3)
    coeff = LazyCoefficients(H, (top,))
    table = []
    for r in range(period):
        first = start + ((r - start) % period)
        xs = [first + period * k for k in range(npts)]
        row = _interpolate(xs, [coeff(x) for x in xs])
        check = [first + period * (npts + k) for k in range(npts + 2)]
        for x in check:
            if sum(c * mpq(x) ** j for j, c in enumerate(row)) != coeff(x):
                raise NotEventuallyQuasiPolynomial(f"coefficient at {x} disagrees with the fit")
        table.append(row)
    degree = max((max((j for j, c in enumerate(row) if c), default=-1) for row in table), default=-1)
    table = [row[: degree + 1] if degree >= 0 else [] for row in table]
    q = QuasiPolynomial(degree, period, table, start)
    n0 = start
    while n0 > 0 and q(n0 - 1) == coeff(n0 - 1):
        n0 -= 1
    q.n0 = n0
    return q


# --------------------------------------------------------------------------
# reading epsilon off a series


def _n_at_one(num):
    return sum(num)


def pole_data(H: RationalSeries):
    """``(pole order at 1, coefficient of 1/(1-t)^pole)`` of a univariate series."""
    H._need_univariate()
    if not H.numerator:
        return 0, mpq(0)
    num = _to_list(H)
    k = 0
    while _n_at_one(num) == 0:
        q = _divides_exactly(num, 1)
        num = [-c for c in q]
        k += 1
    es = [d[0] for d in H.denominator]
    prod = 1
    for e in es:
        prod *= e
    return len(es) - k, mpq(_n_at_one(num), prod)


def epsilon_from_series(H: RationalSeries, d: int, scale: int = 1) -> mpq:
    """Coefficient of ``1/(1-t)^(d+1)`` divided by ``scale^d``."""
    order, c = pole_data(H)
    if order > d + 1:
        raise ArithmeticError(f"pole of order {order} at t = 1 exceeds d + 1 = {d + 1}")
    if order < d + 1:
        return mpq(0)
    return c / mpq(scale) ** d


def specialize(H2: RationalSeries) -> RationalSeries:
    """Cancel all ``(1 - t1^b)`` factors exactly, then set ``t1 = 1``."""
    try:
        return H2.restrict(0)
    except ValueError as exc:
        raise PoleAtOne(str(exc)) from None


def epsilon_series(I: Ideal, n: int, *, generators=None, prune: bool = True, method: str = "bayer",
                   presentations: tuple | None = None, warnings: list | None = None) -> RationalSeries:
    """``sum_v λ(sat(I^v)/I^v) t^v`` in lowest terms over ``(1 - t^e)`` factors."""
    if presentations is None:
        PS = saturated_rees_presentation(I, n, generators=generators, prune=prune, method=method)
        PR = rees_presentation(I)
    else:
        PS, PR = presentations
    if warnings is not None:
        warnings.extend(PS.warnings)
    H = PS.hilbert_series() - PR.hilbert_series()
    return refactor(specialize(H))


def pair_length_series(I: Ideal, Ip: Ideal, check: bool = True) -> RationalSeries:
    """``sum_v λ(I'^v / I^v) t^v`` for ``I ⊆ I'`` with ``λ(I'/I)`` finite."""
    if check:
        if not I.is_subset(Ip):
            raise ValueError("the first ideal must be contained in the second")
        if not Ip.is_subset(saturate(I)):
            raise NotCofinal("the quotient of the two ideals has infinite length")
    H = rees_presentation(Ip).hilbert_series() - rees_presentation(I).hilbert_series()
    return refactor(specialize(H))


# --------------------------------------------------------------------------
# reports


@dataclass
class EpsilonReport:
    dimension: int
    epsilon: mpq
    method: str
    series: RationalSeries | None = None
    quasi: QuasiPolynomial | None = None
    analytic_spread: int | None = None
    warnings: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def epsilon_fraction(self):
        return to_fraction(self.epsilon)

    def to_json(self) -> dict:
        out = {
            "dimension": self.dimension,
            "epsilon": rational_str(self.epsilon),
            "method": self.method,
            "analytic_spread": self.analytic_spread,
            "warnings": list(self.warnings),
        }
        if self.series is not None:
            s = self.series.to_json()
            out["series"] = {
                "num": s["numerator"],
                "den": s["denominator"],
                "text": s["text"],
                "factored": factored_text(self.series),
            }
        if self.quasi is not None:
            out["quasipolynomial"] = self.quasi.to_json()
        if self.details:
            out["details"] = self.details
        return out

    def to_text(self) -> str:
        lines = [f"epsilon = {rational_str(self.epsilon)}", f"method = {self.method}", f"dimension = {self.dimension}"]
        if self.analytic_spread is not None:
            lines.append(f"analytic spread = {self.analytic_spread}")
        if self.series is not None:
            lines.append(f"series = {factored_text(self.series)}")
        if self.quasi is not None:
            lines.append(f"epsilon function (n >= {self.quasi.n0}, period {self.quasi.period}):")
            lines.extend("  " + line for line in self.quasi.to_text().splitlines())
        for k, v in self.details.items():
            lines.append(f"{k} = {v}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines)


def compute_epsilon(I: Ideal, sat_bound: int, *, script_parity: bool = False, generators=None,
                    prune: bool = True, method: str = "bayer", presentations=None) -> EpsilonReport:
    """ε(I) and the ε-function through the saturated Rees algebra."""
    R = I.ring
    d = krull_dim(R)
    ell = analytic_spread(I)
    warnings: list = []
    if ell != d:
        msg = "The analytic spread of the ideal is not maximum"
        if script_parity:
            raise AnalyticSpreadError(msg)
        warnings.append(f"{msg} ({ell} < {d}); epsilon is 0")
    H = epsilon_series(I, sat_bound, generators=generators, prune=prune, method=method,
                       presentations=presentations, warnings=warnings)
    eps = epsilon_from_series(H, d)
    q = quasi_polynomial(H)
    if q.degree == d:
        via_quasi = factorial(d) * q.leading_coefficient
    else:
        via_quasi = mpq(0)
    if via_quasi != eps:
        raise ArithmeticError(f"series coefficient {eps} and quasi-polynomial value {via_quasi} disagree")
    if (eps > 0) != (ell == d):
        warnings.append("positivity of epsilon disagrees with the analytic spread criterion")
    return EpsilonReport(d, eps, "series", H, q, ell, warnings)


def epsilon_via_epNoeth(I: Ideal, v0: int, beta: int | None = None, cross_check: bool = True) -> EpsilonReport:
    """ε from truncated mixed multiplicities of a Veronese pair ``(I^v0, sat(I^v0))``."""
    R = I.ring
    d = krull_dim(R)
    S, P, ok = veronese_pair(I, v0)
    warnings = []
    if not ok:
        warnings.append(f"sat(I^{v0}) powers do not match sat(I^{v0}v) for v = 2, 3")
    degs = [g.degree() for g in list(S.gens) + list(P.gens)]
    beta = beta or max(degs)
    top = truncated_mixed(S, beta)
    bottom = truncated_mixed(P, beta)
    eps = mpq(top[d] - bottom[d]) / mpq(v0) ** d
    details = {"beta": beta, "e_d_saturated": top[d], "e_d_power": bottom[d]}
    H = None
    if cross_check:
        H = pair_length_series(P, S, check=False)
        other = epsilon_from_series(H, d, scale=v0)
        details["series_epsilon"] = rational_str(other)
        if other != eps:
            raise ArithmeticError(f"mixed multiplicity route gives {eps}, series route gives {other}")
    return EpsilonReport(d, eps, "epNoeth", H, None, None, warnings, details)


def epsilon_dim2(e: MixedMultiplicities | list, convention: str = "truncated") -> mpq:
    """Two-dimensional formula.

    ``convention='truncated'``: ``e = (e0, e1, e2)`` of ``(n | <J_bs>)`` and
    ε = e1^2/e0 - e2.  ``convention='rees'``: ``e = (e0, e1, e2)`` of
    ``S[Jt]`` and ε = e1^2/e2 - e0.
    """
    vals = list(e.values if isinstance(e, MixedMultiplicities) else e)
    if len(vals) != 3:
        raise ValueError("the two-dimensional formula needs three values")
    e0, e1, e2 = (mpq(v) for v in vals)
    if convention == "truncated":
        if e0 == 0:
            raise ZeroDivisionError("e0 vanishes")
        return e1 * e1 / e0 - e2
    if convention == "rees":
        if e2 == 0:
            raise ZeroDivisionError("e2 vanishes")
        return e1 * e1 / e2 - e0
    raise ValueError(f"unknown convention {convention!r}")


def epsilon_equigenerated_dim2(e0: int, e1: int) -> mpq:
    """``e1(m|I)^2 / e0(m|I)`` for an ideal generated in one degree."""
    if e0 == 0:
        raise ZeroDivisionError("e0 vanishes")
    return mpq(e1) ** 2 / mpq(e0)


def epsilon_prime_point(e_ring: int, e_local: int) -> mpq:
    """``(e(R) - e(R_P))^2 / e(R)`` for a point on a projective curve."""
    if not (e_ring >= e_local >= 1):
        raise ValueError("need e_ring >= e_local >= 1")
    return mpq(e_ring - e_local) ** 2 / mpq(e_ring)
