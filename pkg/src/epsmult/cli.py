"""Command-line front end.

Usage::

    epsmult [-i FILE] [--format text|json] [--cache DIR] COMMAND [options]

The input file holds ring and ideal declarations (see :mod:`epsmult.parsing`);
``-`` or no ``-i`` reads standard input.  Exit status is 0 on success, 1 on
usage or input errors and 2 when a computation is refused.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .blowup import BigradedPresentation, rees_presentation, saturated_rees_presentation
from .epsilon import (
    AnalyticSpreadError,
    compute_epsilon,
    epsilon_via_epNoeth,
)
from .groebner import GradedRing, Ideal
from .ideals import analytic_spread, intersect, krull_dim, minimal_generators, saturate
from .mixed import bigraded_mixed, classical_mixed, truncated_mixed
from .oracle import NotYetStable, epsilon_table, fit_linear, table_to_csv
from .parsing import IdealDecl, ParseError, RingDecl, parse_in_context, parse_session_ast

log = logging.getLogger("epsmult")

EXIT_OK, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# sessions


@dataclass
class Session:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    ideal_rings: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def ring(self, name: str) -> GradedRing:
        try:
            return self.rings[name]
        except KeyError:
            raise UsageError(f"unknown ring {name!r}") from None

    def ideal(self, name: str | None) -> Ideal:
        if name is None:
            if len(self.ideals) != 1:
                raise UsageError("several ideals declared; choose one with --ideal")
            return next(iter(self.ideals.values()))
        try:
            return self.ideals[name]
        except KeyError:
            raise UsageError(f"unknown ideal {name!r}") from None

    def format(self) -> str:
        """Session text that parses back to an identical session."""
        lines = []
        done = set()
        for iname, I in self.ideals.items():
            rname = self.ideal_rings[iname]
            if rname not in done:
                lines.append(_ring_text(rname, self.rings[rname]))
                done.add(rname)
            lines.append(f"ideal {iname} = ({', '.join(map(str, I.gens))}) in {rname};")
        for rname, R in self.rings.items():
            if rname not in done:
                lines.append(_ring_text(rname, R))
        return "\n".join(lines) + "\n"


def _ring_text(name: str, R: GradedRing) -> str:
    vs = []
    for v, d in zip(R.names, R.degrees):
        vs.append(v if tuple(d) == (1,) else f"{v}({', '.join(map(str, d))})")
    text = f"ring {name} = QQ[{', '.join(vs)}]"
    if R.relations:
        text += f" / ({', '.join(map(str, R.relations))})"
    return text + ";"


def parse_session(text: str) -> Session:
    ast = parse_session_ast(text)
    sess = Session()
    for decl in ast.decls:
        if isinstance(decl, RingDecl):
            if decl.name in sess.rings or decl.name in sess.ideals:
                raise ParseError(f"name {decl.name!r} already declared", decl.line, decl.col)
            names = [v[0] for v in decl.variables]
            if len(set(names)) != len(names):
                raise ParseError("repeated variable name", decl.line, decl.col)
            ranks = {len(v[1]) for v in decl.variables}
            if len(ranks) != 1:
                raise ParseError("all variables need the same number of weights", decl.line, decl.col)
            base = GradedRing(names, [v[1] for v in decl.variables])
            rels = [parse_in_context(src, base.poly) for src in decl.relations]
            sess.rings[decl.name] = GradedRing(base.poly, relations=rels)
        elif isinstance(decl, IdealDecl):
            if decl.name in sess.rings or decl.name in sess.ideals:
                raise ParseError(f"name {decl.name!r} already declared", decl.line, decl.col)
            if decl.ring not in sess.rings:
                raise ParseError(f"unknown ring {decl.ring!r}", decl.line, decl.col)
            R = sess.rings[decl.ring]
            gens = [parse_in_context(src, R.poly) for src in decl.generators]
            sess.ideals[decl.name] = Ideal(R, gens)
            sess.ideal_rings[decl.name] = decl.ring
    return sess


# --------------------------------------------------------------------------
# presentation cache


class PresentationCache:
    def __init__(self, root: str | None):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    def _key(self, I: Ideal, tag: str, n) -> Path:
        text = "|".join([repr(I.ring), repr(I.ring.degrees), ",".join(map(str, I.gens)), tag, str(n)])
        return self.root / (hashlib.sha256(text.encode()).hexdigest()[:24] + ".json")

    def get(self, I, tag, n, build):
        if not self.root:
            return build()
        path = self._key(I, tag, n)
        if path.exists():
            log.info("cache hit %s", path.name)
            P = BigradedPresentation.from_json(path.read_text())
            P.source = I
            return P
        P = build()
        path.write_text(json.dumps(P.to_json()))
        return P


# --------------------------------------------------------------------------
# commands


def cmd_epsilon(sess, args, cache):
    I = sess.ideal(args.ideal)
    if args.via == "epNoeth":
        rep = epsilon_via_epNoeth(I, args.v0, args.beta)
    else:
        if args.sat_bound is None:
            raise UsageError("--sat-bound is required for the series route")
        log.info("building presentations (generation bound %d)", args.sat_bound)
        PS = cache.get(I, "saturated_rees", args.sat_bound,
                       lambda: saturated_rees_presentation(I, args.sat_bound, prune=True, method=args.method))
        PR = cache.get(I, "rees", 1, lambda: rees_presentation(I))
        rep = compute_epsilon(I, args.sat_bound, script_parity=args.script_parity, presentations=(PS, PR))
    return rep.to_json(), rep.to_text()


def cmd_epsilon_function(sess, args, cache):
    js, _ = cmd_epsilon(sess, args, cache)
    from .epsilon import quasi_polynomial
    from .hilbert import RationalSeries

    H = RationalSeries.from_json({"rank": 1, "variables": ["t"],
                                  "numerator": js["series"]["num"], "denominator": js["series"]["den"]})
    values = H.series(args.terms)
    q = quasi_polynomial(H)
    out = {"quasipolynomial": q.to_json(), "values": values, "epsilon": js["epsilon"]}
    lines = [f"epsilon function (n >= {q.n0}, period {q.period}):"]
    lines += ["  " + line for line in q.to_text().splitlines()]
    lines.append("values: " + ", ".join(map(str, values)))
    return out, "\n".join(lines)


def cmd_oracle(sess, args, cache):
    I = sess.ideal(args.ideal)
    table = epsilon_table(I, args.max_power, method=args.method)
    out = {"table": [{"v": v, "length": n} for v, n in table]}
    try:
        out["linear_fit"] = list(fit_linear(table))
    except NotYetStable:
        out["linear_fit"] = None
    if args.csv:
        return out, table_to_csv(table).rstrip("\n")
    text = "\n".join(f"{v}\t{n}" for v, n in table)
    return out, text


def cmd_mixed(sess, args, cache):
    I = sess.ideal(args.ideal)
    if args.truncate is not None or args.truncated:
        mm = truncated_mixed(I, args.truncate)
    elif args.convention == "ht":
        mm = bigraded_mixed(I)
    else:
        mm = classical_mixed(I)
    js = mm.to_json()
    return js, f"{mm.convention}: {' '.join(map(str, js['values']))}" + (f" (beta = {mm.beta})" if mm.beta else "")


def cmd_saturate(sess, args, cache):
    I = sess.ideal(args.ideal)
    S = saturate(I.power(args.power), method=args.method)
    gens = [str(g) for g in minimal_generators(S)]
    return {"generators": gens}, "\n".join(gens)


def cmd_mingens(sess, args, cache):
    I = sess.ideal(args.ideal)
    gens = [str(g) for g in minimal_generators(I)]
    return {"generators": gens}, "\n".join(gens)


def cmd_rees(sess, args, cache):
    I = sess.ideal(args.ideal)
    if args.sat_bound:
        P = cache.get(I, "saturated_rees", args.sat_bound,
                      lambda: saturated_rees_presentation(I, args.sat_bound, prune=True))
    else:
        P = cache.get(I, "rees", 1, lambda: rees_presentation(I))
    js = P.to_json()
    js["series"] = P.hilbert_series().to_text()
    lines = [f"{n}: {d}" for n, d in js["variables"]]
    lines += js["ideal"]
    lines.append(f"series = {js['series']}")
    return js, "\n".join(lines)


def cmd_analytic_spread(sess, args, cache):
    I = sess.ideal(args.ideal)
    ell, d = analytic_spread(I), krull_dim(I.ring)
    return {"analytic_spread": ell, "dimension": d}, f"analytic spread = {ell} (dim R = {d})"


_CURVES = {
    "elliptic": ("x^3 + y^3 + z^3", ["x + y", "z"], ["x + z", "y"]),
    "cuspidal": ("x^3 - y^2*z", ["x", "y"], ["x", "z"]),
}


def cmd_fatpoint_table(sess, args, cache):
    if args.curve:
        rel, p1, p2 = _CURVES[args.curve]
        R = GradedRing(["x", "y", "z"], relations=[rel])
        P1, P2 = R.ideal(*p1), R.ideal(*p2)
    else:
        if not args.points:
            raise UsageError("give --curve or --points P1,P2")
        names = args.points.split(",")
        if len(names) != 2:
            raise UsageError("--points needs two ideal names")
        P1, P2 = sess.ideal(names[0]), sess.ideal(names[1])
    rows = []
    for item in args.powers:
        try:
            a, b = (int(x) for x in item.split(","))
        except ValueError:
            raise UsageError(f"bad power pair {item!r}") from None
        log.info("row (%d, %d)", a, b)
        I = intersect(P1.power(a), P2.power(b))
        bs = max(g.degree() for g in minimal_generators(I))
        mm = truncated_mixed(I, bs)
        rows.append({"a": a, "b": b, "b_s": bs, "values": [int(v) for v in mm.values]})
    text = ["a\tb\tb_s\te2"] + [f"{r['a']}\t{r['b']}\t{r['b_s']}\t{r['values'][-1]}" for r in rows]
    return {"rows": rows}, "\n".join(text)


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="epsmult", description="epsilon multiplicities of homogeneous ideals")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-i", "--input", default="-", help="session file (default: stdin)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--cache", metavar="DIR", help="directory for cached presentations")
    p.add_argument("-q", "--quiet", action="store_true", help="no progress messages")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ideal_arg(sp):
        sp.add_argument("--ideal", help="ideal name (optional when only one is declared)")

    for name in ("epsilon", "epsilon-function"):
        sp = sub.add_parser(name)
        ideal_arg(sp)
        sp.add_argument("--sat-bound", type=int, help="generation bound of the saturated Rees algebra")
        sp.add_argument("--method", choices=["bayer", "colon", "rabinowitsch"], default="bayer")
        sp.add_argument("--script-parity", action="store_true",
                        help="refuse (exit 2) when the analytic spread is not maximal")
        sp.add_argument("--via", choices=["series", "epNoeth"], default="series")
        sp.add_argument("--v0", type=int, default=1, help="Veronese degree for --via epNoeth")
        sp.add_argument("--beta", type=int, help="truncation degree for --via epNoeth")
        if name == "epsilon-function":
            sp.add_argument("--terms", type=int, default=10, help="number of values to list")

    sp = sub.add_parser("oracle")
    ideal_arg(sp)
    sp.add_argument("--max-power", type=int, required=True)
    sp.add_argument("--method", choices=["bayer", "colon", "rabinowitsch"], default="colon")
    sp.add_argument("--csv", action="store_true", help="CSV text output")

    sp = sub.add_parser("mixed")
    ideal_arg(sp)
    sp.add_argument("--truncate", type=int, metavar="BETA", help="truncation degree")
    sp.add_argument("--truncated", action="store_true", help="truncate at the top generator degree")
    sp.add_argument("--convention", choices=["ht", "kv"], default="kv")

    sp = sub.add_parser("saturate")
    ideal_arg(sp)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--method", choices=["bayer", "colon", "rabinowitsch"], default="bayer")

    for name in ("mingens", "analytic-spread"):
        ideal_arg(sub.add_parser(name))

    sp = sub.add_parser("rees")
    ideal_arg(sp)
    sp.add_argument("--sat-bound", type=int, help="present the saturated Rees algebra instead")

    sp = sub.add_parser("fatpoint-table")
    sp.add_argument("--curve", choices=sorted(_CURVES))
    sp.add_argument("--points", help="two declared ideals P1,P2")
    sp.add_argument("--powers", nargs="+", default=["1,1"], metavar="A,B")
    return p


COMMANDS = {
    "epsilon": cmd_epsilon,
    "epsilon-function": cmd_epsilon_function,
    "oracle": cmd_oracle,
    "mixed": cmd_mixed,
    "saturate": cmd_saturate,
    "mingens": cmd_mingens,
    "rees": cmd_rees,
    "analytic-spread": cmd_analytic_spread,
    "fatpoint-table": cmd_fatpoint_table,
}


def run(argv=None, stdin=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s")
    try:
        if args.command == "fatpoint-table" and args.curve:
            sess = Session()
        else:
            if args.input == "-":
                text = (stdin or sys.stdin).read()
            else:
                try:
                    text = Path(args.input).read_text()
                except OSError as exc:
                    raise UsageError(str(exc)) from None
            sess = parse_session(text)
        cache = PresentationCache(args.cache)
        js, text = COMMANDS[args.command](sess, args, cache)
    except AnalyticSpreadError as exc:
        if args.format == "json":
            print(json.dumps({"error": str(exc), "refused": True}), file=stdout)
        else:
            print(str(exc), file=stdout)
        return EXIT_REFUSED
    except (UsageError, ParseError) as exc:
        print(f"epsmult: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(js, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
