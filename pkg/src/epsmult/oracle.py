"""Brute-force ε-function tables, power by power.

Deliberately independent of the bigraded machinery: each ``sat(I^v)`` is
computed from scratch and lengths come from a univariate Hilbert numerator
routine of its own (generator-by-generator recursion, not pivoting).
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

from .groebner import Ideal
from .ideals import saturate


class InfiniteLength(ArithmeticError):
    pass


class NotYetStable(ValueError):
    pass


def _lcm_mono(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _minimal(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(x <= y for x, y in zip(g, m)) for g in out):
            out.append(m)
    return out


def _numerator(monos, weights):
    """``N(t)`` as ``{degree: coeff}`` with ``H(k[x]/(monos)) = N / prod(1 - t^w)``.

    Uses ``N(M + (m)) = N(M) - t^deg(m) N(M : m)``.
    """

    @lru_cache(maxsize=None)
    def rec(gens):
        if not gens:
            return {0: 1}
        *rest, m = gens
        rest = tuple(rest)
        base = rec(rest)
        colon = tuple(sorted(_minimal(tuple(max(0, x - y) for x, y in zip(g, m)) for g in rest)))
        if any(not any(g) for g in colon):
            return base
        sub = rec(colon)
        dm = sum(w * e for w, e in zip(weights, m))
        out = dict(base)
        for k, c in sub.items():
            out[k + dm] = out.get(k + dm, 0) - c
        return {k: c for k, c in out.items() if c}

    gens = tuple(sorted(_minimal(monos), key=lambda g: (sum(g), g)))
    if any(not any(g) for g in gens):
        return {}
    return rec(gens)


def _weights(ring):
    w = [d[0] for d in ring.degrees]
    if any(x <= 0 for x in w):
        raise ValueError("oracle needs positive first-component degrees")
    return w


def _divide_one_minus(num: dict, e: int):
    """Exact quotient by ``1 - t^e`` or ``None``."""
    if not num:
        return {}
    top = max(num)
    rem = dict(num)
    q = {}
    for k in range(top, e - 1, -1):
        c = rem.get(k, 0)
        if c:
            # c t^k = -c t^{k-e} (1 - t^e) + c t^{k-e}
            q[k - e] = q.get(k - e, 0) - c
            rem[k] = 0
            rem[k - e] = rem.get(k - e, 0) + c
    if any(rem.get(k, 0) for k in range(min(e, top + 1))):
        return None
    return {k: c for k, c in q.items() if c}


def quotient_length(small: Ideal, big: Ideal) -> int:
    """``λ(big/small)`` for ``small ⊆ big`` of finite colength."""
    R = small.ring
    w = _weights(R)
    lead = lambda I: [g.leading_monomial(R.order) for g in I.groebner()]
    a = _numerator(lead(small), w)
    b = _numerator(lead(big), w)
    diff = {k: a.get(k, 0) - b.get(k, 0) for k in set(a) | set(b)}
    diff = {k: c for k, c in diff.items() if c}
    for e in w:
        diff = _divide_one_minus(diff, e)
        if diff is None:
            raise InfiniteLength("the quotient has infinite length")
    return sum(diff.values())


def epsilon_value(I: Ideal, v: int, method: str = "colon") -> int:
    Iv = I.power(v)
    return quotient_length(Iv, saturate(Iv, method=method))


def epsilon_table(I: Ideal, v_max: int, method: str = "colon", threads: int | None = None) -> list[tuple[int, int]]:
    """``[(v, λ(sat(I^v)/I^v)) for v = 1..v_max]``."""
    if v_max < 1:
        raise ValueError("v_max must be at least 1")
    if threads is None:
        try:
            threads = max(1, int(os.environ.get("EPS_CALC_THREADS", "1")))
        except ValueError:
            threads = 1
    vs = list(range(1, v_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            vals = list(ex.map(lambda v: epsilon_value(I, v, method), vs))
    else:
        vals = [epsilon_value(I, v, method) for v in vs]
    return list(zip(vs, vals))


def fit_linear(table, window: int = 3) -> tuple[int, int]:
    """``(a, b)`` with ``λ(v) = a v + b`` on the tail of the table.

    The tail must have at least ``window`` equal successive differences.
    """
    vals = [y for _, y in sorted(table)]
    vs = [v for v, _ in sorted(table)]
    if len(vals) < window + 1:
        raise NotYetStable("table too short to see a stable linear tail")
    diffs = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    if len(set(diffs[-window:])) != 1:
        raise NotYetStable(f"differences {diffs[-window:]} not yet constant")
    a = diffs[-1]
    b = vals[-1] - a * vs[-1]
    return a, b


def table_to_csv(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["v", "length"])
    w.writerows(table)
    return buf.getvalue()


def table_to_json(table) -> str:
    return json.dumps({"table": [{"v": v, "length": n} for v, n in table]})
