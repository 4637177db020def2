"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are exponent tuples; variable identity is positional and names are
only carried for printing and parsing.  Coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import gcd, mpq, mpz

Rational = type(mpq())
Monomial = tuple

ZERO = mpq(0)
ONE = mpq(1)


class RingMismatch(ValueError):
    """Operands live in different polynomial rings."""


class Inhomogeneous(ValueError):
    """A polynomial has terms of differing degree."""


class ZeroPolynomial(ValueError):
    """An operation that needs a nonzero polynomial received zero."""


def to_rational(value) -> Rational:
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value).numerator, Fraction(value).denominator)
    return mpq(value)


def to_fraction(value) -> Fraction:
    value = to_rational(value)
    return Fraction(int(value.numerator), int(value.denominator))


def rational_str(value) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


# --------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a kind plus parameters.

    ``kind`` is one of ``lex``, ``degrevlex``, ``wdegrevlex`` (needs
    ``weights``) or ``block`` (needs ``k`` and two inner orders; the first
    ``k`` variables are eliminated).
    """

    kind: str = "degrevlex"
    weights: tuple = ()
    k: int = 0
    inner: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "wdegrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wdegrevlex":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise ValueError("weight vectors must be strictly positive")
        if self.kind == "block":
            if len(self.inner) != 2 or self.k < 0:
                raise ValueError("block orders nest exactly two orders")

    def matrix(self, n: int) -> list[list[int]]:
        """Rows of an integer matrix defining this order on ``n`` variables."""
        if self.kind == "lex":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        if self.kind in ("degrevlex", "wdegrevlex"):
            if self.kind == "degrevlex":
                top = [1] * n
            else:
                if len(self.weights) != n:
                    raise ValueError("weight vector length differs from variable count")
                top = list(self.weights)
            rows = [top]
            for i in range(n - 1, 0, -1):
                rows.append([-int(j == i) for j in range(n)])
            return rows
        first, second = self.inner
        k = self.k
        a = first.matrix(k) if k else []
        b = second.matrix(n - k) if n - k else []
        rows = [r + [0] * (n - k) for r in a]
        rows += [[0] * k + r for r in b]
        return rows

    def key(self, n: int):
        """Return a function mapping exponent tuples to comparable tuples."""
        rows = self.matrix(n)
        return lambda m: tuple(sum(r[i] * m[i] for i in range(n) if r[i]) for r in rows)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        if len(a) != len(b):
            raise ValueError("monomials of different lengths")
        key = self.key(len(a))
        ka, kb = key(a), key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        if self.kind == "wdegrevlex":
            return f"wdegrevlex{self.weights}"
        if self.kind == "block":
            return f"block({self.k}; {self.inner[0]}, {self.inner[1]})"
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def weighted(weights: Sequence[int]) -> MonomialOrder:
    weights = tuple(int(w) for w in weights)
    if all(w == 1 for w in weights):
        return DEGREVLEX
    return MonomialOrder("wdegrevlex", weights=weights)


def block(k: int, first: MonomialOrder, second: MonomialOrder) -> MonomialOrder:
    return MonomialOrder("block", k=k, inner=(first, second))


def monomial_cmp(a, b, order: MonomialOrder) -> str:
    c = order.compare(a, b)
    return "GT" if c > 0 else "LT" if c < 0 else "EQ"


# --------------------------------------------------------------------------
# rings and polynomials


class PolynomialRing:
    """``QQ[x_1..x_n]`` with a multigrading (one integer vector per variable)."""

    def __init__(self, names: Sequence[str], degrees: Sequence[Sequence[int]] | None = None):
        self.names = tuple(names)
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("variable names must be unique")
        if degrees is None:
            degrees = [(1,)] * n
        degrees = [tuple(int(x) for x in (d if isinstance(d, (tuple, list)) else (d,))) for d in degrees]
        if len(degrees) != n:
            raise ValueError("one degree vector per variable is required")
        if n and len({len(d) for d in degrees}) != 1:
            raise ValueError("degree vectors must share a length")
        self.degrees = tuple(degrees)
        self.rank = len(degrees[0]) if n else 1

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        parts = []
        for name, deg in zip(self.names, self.degrees):
            parts.append(name if deg == (1,) else f"{name}{deg}")
        return f"QQ[{', '.join(parts)}]"

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = to_rational(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps} for {self!r}")
        c = to_rational(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def gen(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            if text.ring != self:
                raise RingMismatch("polynomial belongs to another ring")
            return text
        if isinstance(text, str):
            return self.parse(text)
        return self.constant(text)

    def monomial_degree(self, exps: Sequence[int]) -> tuple:
        out = [0] * self.rank
        for e, d in zip(exps, self.degrees):
            if e:
                for k in range(self.rank):
                    out[k] += e * d[k]
        return tuple(out)

    def default_order(self) -> MonomialOrder:
        return weighted([d[0] for d in self.degrees]) if all(d[0] > 0 for d in self.degrees) else DEGREVLEX


class Polynomial:
    """An immutable element of a :class:`PolynomialRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[tuple, object], *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for m, c in terms.items():
                c = to_rational(c)
                if c:
                    clean[tuple(m)] = c
            self.terms = clean

    # -- basic protocol ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        return self.ring.constant(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, _trusted=True)
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (ONE / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, exps: Sequence[int], coeff=ONE) -> "Polynomial":
        coeff = to_rational(coeff)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): c * coeff for m, c in self.terms.items()},
            _trusted=True,
        )

    # -- inspection ---------------------------------------------------------
    def monomials(self):
        return list(self.terms)

    def coefficient(self, exps) -> Rational:
        return self.terms.get(tuple(exps), ZERO)

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.default_order()
        key = order.key(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        order = order or self.ring.default_order()
        key = order.key(self.ring.nvars)
        return max(self.terms, key=key)

    def leading_coefficient(self, order: MonomialOrder | None = None) -> Rational:
        return self.terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degrees(self) -> set:
        return {self.ring.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def multidegree(self) -> tuple:
        """The common degree vector of all terms."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        degs = self.degrees()
        if len(degs) != 1:
            raise Inhomogeneous(f"terms of {self} have degrees {sorted(degs)}")
        return next(iter(degs))

    def degree(self) -> int:
        """First component of the multidegree."""
        return self.multidegree()[0]

    def support(self) -> set:
        s = set()
        for m in self.terms:
            s.update(i for i, e in enumerate(m) if e)
        return s

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self * (ONE / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder | None = None) -> "Polynomial":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = mpz(1)
        for c in self.terms.values():
            den = den * c.denominator // _gcd(den, c.denominator)
        num = mpz(0)
        for c in self.terms.values():
            num = _gcd(num, (c * den).numerator)
        scale = mpq(den, num)
        if self.leading_coefficient(order) < 0:
            scale = -scale
        return self * scale

    def evaluate(self, images: Sequence["Polynomial"], ring: PolynomialRing | None = None) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i``."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable is required")
        ring = ring or (images[0].ring if images else self.ring)
        result = ring.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            term = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    p = cache.get((i, e))
                    if p is None:
                        p = cache[(i, e)] = images[i] ** e
                    term = term * p
            result = result + term
        return result

    def map_variables(self, ring: PolynomialRing, positions: Sequence[int]) -> "Polynomial":
        """Move variable ``i`` to position ``positions[i]`` of ``ring``."""
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, x in enumerate(m):
                if x:
                    e[positions[i]] += x
            out[tuple(e)] = c
        return Polynomial(ring, out, _trusted=True)

    # -- text -------------------------------------------------------------
    def to_string(self, order: MonomialOrder | None = None, names: Sequence[str] | None = None) -> str:
        names = names or self.ring.names
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not factors:
                body = rational_str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = rational_str(a) + "*" + "*".join(factors)
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def _gcd(a, b):
    return gcd(a, b)


def poly_arith(op: str, a: Polynomial, b=None) -> Polynomial:
    """Dispatch ``add``/``sub``/``mul``/``scalar_mul``/``exp`` by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        if not isinstance(b, Polynomial):
            raise TypeError("mul expects a polynomial; use scalar_mul")
        return a * b
    if op == "scalar_mul":
        return a * to_rational(b)
    if op == "exp":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def multidegree(f: Polynomial, grading: Sequence[Sequence[int]] | None = None) -> tuple:
    """Degree vector of a homogeneous ``f`` under ``grading`` (default: ring's)."""
    if grading is None:
        return f.multidegree()
    ring = PolynomialRing(f.ring.names, grading)
    return Polynomial(ring, f.terms, _trusted=True).multidegree()


def lcm_monomial(a: Iterable[int], b: Iterable[int]) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))
