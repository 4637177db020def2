"""Classical, bigraded and truncation-based mixed multiplicities.

All mixed multiplicities are read off exact polynomial fits of Hilbert
functions of Rees algebras.  Two conventions are supported:

``hoang_trung``
    ``dim (I^v)_u = sum e_i(R[It]) / (i!(d-1-i)!) u^i v^(d-1-i) + ...`` for
    ``u >= b_s v + u_0``.
``katz_verma``
    ``dim (I^v)_(bv+u) = sum e_i(m|I) / (i!(d-1-i)!) u^(d-1-i) v^i + ...``
    for an ideal generated in the single degree ``b``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb, factorial

from gmpy2 import mpq

from .blowup import BigradedPresentation, extend_ring, rees_presentation, truncation_ideal
from .groebner import Ideal
from .hilbert import LazyCoefficients, RationalSeries, fit_hilbert_polynomial
from .ideals import krull_dim, minimal_generators

log = logging.getLogger(__name__)

HT = "hoang_trung"
KV = "katz_verma"
_MANY_GENERATORS = 200


class NotEquigenerated(ValueError):
    pass


@dataclass
class MixedMultiplicities:
    convention: str
    values: list
    beta: int | None = None
    ring: str = ""
    ideal: str = ""
    fit: object = None
    warnings: list = field(default_factory=list)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "values": [int(v) for v in self.values],
            "beta": self.beta,
            "ring": self.ring,
            "ideal": self.ideal,
            "warnings": list(self.warnings),
        }


def _integral(values, what):
    out = []
    for v in values:
        v = mpq(v)
        if v.denominator != 1:
            raise ArithmeticError(f"{what} produced the non-integer value {v}")
        out.append(int(v))
    return out


def _describe(I: Ideal):
    return repr(I.ring), "(" + ", ".join(map(str, I.gens)) + ")"


def _degrees(I: Ideal) -> list[int]:
    return sorted(g.degree() for g in minimal_generators(I))


def _kv_from_series(H: RationalSeries, b: int, D: int):
    """Fit ``dim_(v, bv+u)`` and return ``(values, fit)`` with ``D + 1`` entries."""
    lazy = LazyCoefficients(H)
    fit = fit_hilbert_polynomial(H, D, maxdeg=b, coefficient=lambda v, u: lazy(v, b * v + u))
    vals = [factorial(i) * factorial(D - i) * fit.coefficient(i, D - i) for i in range(D + 1)]
    return vals, fit


def _ht_from_series(H: RationalSeries, bs: int, D: int):
    fit = fit_hilbert_polynomial(H, D, maxdeg=bs, shear=bs)
    vals = [factorial(i) * factorial(D - i) * fit.coefficient(D - i, i) for i in range(D + 1)]
    return vals, fit


def classical_mixed(I: Ideal, b: int | None = None, presentation: BigradedPresentation | None = None) -> MixedMultiplicities:
    """``e_i(m|I)``, ``i = 0..d-1``, for ``I`` generated in one degree ``b``."""
    degs = _degrees(I)
    if len(set(degs)) != 1:
        raise NotEquigenerated(f"generator degrees {degs} are not all equal")
    if b is not None and degs[0] != b:
        raise NotEquigenerated(f"generators have degree {degs[0]}, not {b}")
    b = degs[0]
    d = krull_dim(I.ring)
    P = presentation or rees_presentation(I)
    vals, fit = _kv_from_series(P.hilbert_series(), b, d - 1)
    ring, ideal = _describe(I)
    return MixedMultiplicities(KV, _integral(vals, "classical mixed multiplicity"), None, ring, ideal, fit)


def bigraded_mixed(P: BigradedPresentation | Ideal, extended: bool = False) -> MixedMultiplicities:
    """``e_i(R[It])``, ``i = 0..d-1``, from a Rees presentation.

    With ``extended`` the values are those of ``S[Jt]`` for ``S = R[U]``,
    ``J = IS`` (``i = 0..d``), obtained from ``H_{R[It]} / (1 - t1)``.
    """
    if isinstance(P, Ideal):
        P = rees_presentation(P)
    if P.tag != "rees":
        raise ValueError("bigraded mixed multiplicities need a Rees presentation")
    I = P.source
    d = krull_dim(P.base)
    bs = max(f.degree() for _, f in P.pieces)
    H = P.hilbert_series()
    D = d - 1
    if extended:
        H = RationalSeries(2, H.numerator, H.denominator + ((0, 1),), H.names)
        D = d
    vals, fit = _ht_from_series(H, bs, D)
    ring, ideal = _describe(I) if I is not None else ("", "")
    return MixedMultiplicities(HT, _integral(vals, "bigraded mixed multiplicity"), None, ring, ideal, fit)


def convert_mixed(ht_values, b: int, d: int) -> list[int]:
    """``e_i(m|I) = sum_j C(i,j) b^j e_{d-1-i+j}(R[It])``."""
    ht = list(ht_values)
    if len(ht) != d:
        raise ValueError(f"expected {d} values, got {len(ht)}")
    return [sum(comb(i, j) * b ** j * ht[d - 1 - i + j] for j in range(i + 1)) for i in range(d)]


def truncated_mixed(I: Ideal, beta: int | None = None, presentation: BigradedPresentation | None = None) -> MixedMultiplicities:
    """``e_i(n|<J_beta>)``, ``i = 0..d``, in ``S = R[U]`` with ``J = IS``.

    Uses ``dim (<J_beta>^v)_(beta v + u) = dim (J^v)_(beta v + u)
    = sum_(w <= beta v + u) dim (I^v)_w``, so only the Rees algebra of ``I``
    itself is presented.
    """
    degs = _degrees(I)
    bs = degs[-1]
    beta = bs if beta is None else beta
    if beta < bs:
        raise ValueError(f"beta = {beta} is below the largest generator degree {bs}")
    d = krull_dim(I.ring)
    P = presentation or rees_presentation(I)
    H = P.hilbert_series()
    H = RationalSeries(2, H.numerator, H.denominator + ((0, 1),), H.names)
    vals, fit = _kv_from_series(H, beta, d)
    ring, ideal = _describe(I)
    return MixedMultiplicities(KV, _integral(vals, "truncated mixed multiplicity"), beta, ring, ideal, fit)


def truncated_mixed_direct(I: Ideal, beta: int | None = None) -> MixedMultiplicities:
    """Same numbers as :func:`truncated_mixed`, by presenting ``<J_beta>`` itself.

    Much more expensive; meant for cross-checks on small examples.
    """
    degs = _degrees(I)
    beta = degs[-1] if beta is None else beta
    S, J, _ = extend_ring(I.ring, I)
    T = truncation_ideal(J, beta)
    out = classical_mixed(T, beta)
    out.beta = beta
    if len(T.gens) > _MANY_GENERATORS:
        out.warnings.append(f"truncation has {len(T.gens)} generators")
    return out
