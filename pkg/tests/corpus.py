"""Seeded corpus of small homogeneous ideals shared by the property tests."""

from __future__ import annotations

import random

from epsmult.groebner import GradedRing, Ideal

SEED = 20240611


def _monomial(rng, names, deg):
    exps = [0] * len(names)
    for _ in range(deg):
        exps[rng.randrange(len(names))] += 1
    return "*".join(f"{n}^{e}" for n, e in zip(names, exps) if e) or "1"


def _binomial(rng, names, deg):
    a, b = _monomial(rng, names, deg), _monomial(rng, names, deg)
    c = rng.choice([1, -1, 2, -3])
    return f"{a} + ({c})*{b}" if a != b else a


def random_ideal(rng) -> Ideal:
    kind = rng.choice(["mono2", "mono3", "mono3", "mono4", "binom3", "quot"])
    if kind == "mono2":
        names = ["x", "y"]
    elif kind == "mono4":
        names = ["x", "y", "z", "w"]
    else:
        names = ["x", "y", "z"]
    if kind == "quot":
        R = GradedRing(names, relations=[rng.choice(["x^3 - y^2*z", "x*y - z^2", "x^3 + y^3 + z^3"])])
    else:
        R = GradedRing(names)
    ngens = rng.randint(2, 4 if len(names) > 2 else 3)
    gens = []
    for _ in range(ngens):
        deg = rng.choice([1, 2, 2, 2, 3, 3])
        if kind == "binom3":
            gens.append(_binomial(rng, names, deg))
        else:
            gens.append(_monomial(rng, names, deg))
    I = Ideal(R, [R(g) for g in gens])
    if not I.gens or I.is_unit():
        return Ideal(R, [R(names[0])])
    return I


def corpus(size: int = 24, seed: int = SEED) -> list[Ideal]:
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        I = random_ideal(rng)
        if any(I.ring == J.ring and I == J for J in out):
            continue
        out.append(I)
    return out


_CORPUS = None
_REPORTS: dict = {}


def shared_corpus() -> list[Ideal]:
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = corpus()
    return _CORPUS


def epsilon_report(idx: int, max_bound: int = 4):
    """Report for corpus member ``idx`` at the least bound whose witness passes."""
    from epsmult.epsilon import compute_epsilon

    if idx not in _REPORTS:
        I = shared_corpus()[idx]
        for n in range(1, max_bound + 1):
            rep = compute_epsilon(I, n)
            if not any("not generated" in w for w in rep.warnings):
                break
        _REPORTS[idx] = (n, rep)
    return _REPORTS[idx]
