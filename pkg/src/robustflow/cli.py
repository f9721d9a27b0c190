"""Command-line front end: generate instances, solve, evaluate and analyze.

Exit codes: 0 on success, 1 when a check finds an infeasibility or
violation, 2 on usage, parse or cap errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import analysis, evaluation, generators, lp, solvers, textio
from .model import (
    DEFAULT_MAX_SCENARIOS, INF, CapExceeded, InvalidInstance, TemporallyRepeatedFlow,
)
from .paths import DEFAULT_MAX_PATHS, is_valid_path, path_tau

FAMILIES = ("log-gap", "linear-gap", "clique", "disjoint-paths", "static", "random", "random-dag")


class UsageError(Exception):
    pass


class _Out:
    """Exact rational text, plus an optional decimal rendering for people."""

    def __init__(self, decimal, stream):
        self.decimal = decimal
        self.stream = stream

    def num(self, value) -> str:
        if value is None:
            return "na"
        if value is INF or self.decimal is None:
            return str(value)
        return f"{value}~{_decimal(Fraction(value), self.decimal)}"

    def line(self, text: str = "") -> None:
        print(text, file=self.stream)


def _decimal(q: Fraction, digits: int) -> str:
    sign = "-" if q < 0 else ""
    scaled = round(abs(q) * 10**digits)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}" + (f".{frac:0{digits}d}" if digits else "")


def _caps(args) -> dict:
    return dict(max_paths=args.cap_paths, max_scenarios=args.cap_scenarios,
                max_nonzeros=args.cap_lp_nonzeros)


def _parse_range(text: str):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--r-range expects a..b, got {text!r}") from None
    if not sep or lo > hi:
        raise UsageError(f"--r-range expects a..b with a <= b, got {text!r}")
    return range(lo, hi + 1)


def _pairs(text: str, sep: str):
    out = []
    for item in filter(None, text.split(",")):
        a, mark, b = item.partition(sep)
        if not mark or not a or not b:
            raise UsageError(f"malformed pair {item!r}; expected a{sep}b")
        out.append((a, b))
    return out


def _need(params, n, usage):
    if len(params) != n:
        raise UsageError(f"usage: generate {usage}")
    return params


def _int_param(text, what):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _generate(family, params, seed):
    """Return ``(instance, certificate or None)``."""
    if family in ("log-gap", "linear-gap"):
        (r,) = _need(params, 1, f"{family} <r>")
        gen = generators.gen_log_gap if family == "log-gap" else generators.gen_linear_gap
        return gen(_int_param(r, "r"))
    if family == "clique":
        edges_text, r = _need(params, 2, "clique <a-b,b-c,...> <r>")
        edges = _pairs(edges_text, "-")
        vertices = list(dict.fromkeys(v for e in edges for v in e))
        return generators.gen_clique_reduction(vertices, edges, _int_param(r, "r"))
    if family == "disjoint-paths":
        arcs_text, s1, s2, d1, d2 = _need(params, 5, "disjoint-paths <a>b,...> <s1> <s2> <d1> <d2>")
        arcs = _pairs(arcs_text, ">")
        vertices = list(dict.fromkeys([v for a in arcs for v in a] + [s1, s2, d1, d2]))
        return generators.gen_disjoint_paths_reduction(vertices, arcs, s1, s2, d1, d2), None
    if family == "static":
        (path,) = _need(params, 1, "static <instance-file>")
        base = textio.read_instance(path, validate=False)
        static = generators.StaticInstance(
            base.vertices, tuple((e.id, e.tail, e.head, e.capacity) for e in base.edges),
            base.s, base.d, base.gamma)
        return generators.gen_static_embedding(static), None
    if family in ("random", "random-dag"):
        _need(params, 0, f"{family} [--seed N]")
        rng = random.Random(seed)
        gen = generators.random_instance if family == "random" else generators.random_dag_instance
        return gen(rng), None
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _load_solution(args, inst):
    sol = textio.read_solution(args.solution)
    paths = sol.rates if isinstance(sol, TemporallyRepeatedFlow) else sol.paths()
    for p in paths:
        if not is_valid_path(p, inst):
            raise UsageError(f"{p} is not a simple s-d path of the instance")
    return sol


def _as_triples(sol, inst):
    return sol.to_triples(inst) if isinstance(sol, TemporallyRepeatedFlow) else sol


def _dump(args, problems):
    if args.dump_lp and problems:
        with open(args.dump_lp, "w", encoding="utf-8") as fh:
            fh.write(problems[-1][0].to_text())


def _emit_solution(args, out, sol):
    if args.output:
        textio.write_solution(sol, args.output)
    else:
        out.stream.write(textio.format_solution(sol))


def cmd_generate(args, out):
    inst, cert = _generate(args.family, args.params, args.seed)
    text = textio.format_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.stream.write(text)
    if args.certificate:
        if cert is None:
            raise UsageError(f"family {args.family!r} has no certificate")
        textio.write_solution(cert, args.certificate)
    return 0


def cmd_solve_tr(args, out):
    inst = textio.read_instance(args.instance)
    if args.mode == "exact":
        res = solvers.solve_tr_exact(inst, **_caps(args))
    else:
        res = solvers.solve_tr_compact(inst, **_caps(args))
    _dump(args, res.lps)
    out.line(f"value {out.num(res.robust_value)}")
    _emit_solution(args, out, res.flow)
    return 0


def cmd_solve_general(args, out):
    inst = textio.read_instance(args.instance)
    res = solvers.solve_general(inst, **_caps(args))
    _dump(args, res.lps)
    out.line(f"value {out.num(res.robust_value)}")
    out.line(f"support {res.support_size}")
    _emit_solution(args, out, res.solution)
    return 0


def _adversary(args, inst, sol):
    caps = _caps(args)
    if isinstance(sol, TemporallyRepeatedFlow):
        return evaluation.robust_value_tr(sol, inst, max_scenarios=caps["max_scenarios"])
    return evaluation.robust_value(sol, inst, max_scenarios=caps["max_scenarios"])


def cmd_robust_value(args, out):
    inst = textio.read_instance(args.instance)
    rep = _adversary(args, inst, _load_solution(args, inst))
    out.line(f"value {out.num(rep.robust_value)}")
    return 0


def cmd_worst_scenario(args, out):
    inst = textio.read_instance(args.instance)
    rep = _adversary(args, inst, _load_solution(args, inst))
    z = ",".join(rep.worst_scenario.ordered(inst))
    out.line(f"scenario z={z} value={out.num(rep.robust_value)}")
    return 0


def cmd_verify(args, out):
    inst = textio.read_instance(args.instance)
    sol = _load_solution(args, inst)
    if isinstance(sol, TemporallyRepeatedFlow):
        over = evaluation.check_tr_capacity(sol, inst)
        if over:
            for eid in over:
                load = sol.edge_loads()[eid]
                out.line(f"overload e={eid} load={load} u={inst.edge(eid).capacity}")
            return 1
        for p in sol.rates:
            if path_tau(p, inst) > inst.T:
                out.line(f"path {p} is longer than T={inst.T}")
                return 1
    for t in _as_triples(sol, inst):
        if t.a < 0 or t.b > inst.T:
            out.line(f"interval [{t.a},{t.b}) of path {t.path} leaves [0,{inst.T})")
            return 1
    v = evaluation.verify_feasibility(_as_triples(sol, inst), inst,
                                      max_scenarios=args.cap_scenarios)
    if v is not None:
        out.line(v.record(inst))
        return 1
    out.line("feasible")
    return 0


def cmd_analyze(args, out):
    inst = textio.read_instance(args.instance)
    rep = analysis.analyze(inst, gap=args.gap, bound=args.bound, **_caps(args))
    out.line(f"report t_bounded={str(rep.t_bounded).lower()} k={rep.k} eta={out.num(rep.eta)} "
             f"gap={out.num(rep.gap)} bound={out.num(rep.asymptotic_bound)}")
    return 0


def cmd_gap_sweep(args, out):
    if args.family not in ("log-gap", "linear-gap"):
        raise UsageError("gap-sweep supports log-gap and linear-gap")
    out.line("r tr_opt general_opt gap")
    for r in _parse_range(args.r_range):
        inst, _ = _generate(args.family, [str(r)], None)
        tr = solvers.solve_tr_exact(inst, **_caps(args)).robust_value
        general = solvers.solve_general(inst, **_caps(args)).robust_value
        gap = general / tr if tr else INF
        out.line(f"{r} {out.num(tr)} {out.num(general)} {out.num(gap)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--decimal", type=int, metavar="K",
                        help="also show numbers with K decimal digits")
    common.add_argument("--cap-paths", type=int, default=DEFAULT_MAX_PATHS)
    common.add_argument("--cap-scenarios", type=int, default=DEFAULT_MAX_SCENARIOS)
    common.add_argument("--cap-lp-nonzeros", type=int, default=lp.DEFAULT_MAX_NONZEROS)

    parser = argparse.ArgumentParser(prog="robustflow",
                                     description="Robust maximum flows over time.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write an instance family member")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")
    g.add_argument("-c", "--certificate", help="also write the certificate solution here")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve-tr", parents=[common], help="optimal robust temporally repeated flow")
    s.add_argument("instance")
    s.add_argument("--mode", choices=("exact", "compact"), default="exact")
    s.add_argument("-o", "--output")
    s.add_argument("--dump-lp", metavar="FILE")
    s.set_defaults(func=cmd_solve_tr)

    s = sub.add_parser("solve-general", parents=[common], help="optimal general robust flow")
    s.add_argument("instance")
    s.add_argument("-o", "--output")
    s.add_argument("--dump-lp", metavar="FILE")
    s.set_defaults(func=cmd_solve_general)

    for name, func, text in (("robust-value", cmd_robust_value, "worst-case value of a solution"),
                             ("worst-scenario", cmd_worst_scenario, "the adversary's best scenario"),
                             ("verify", cmd_verify, "brute-force feasibility check")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("instance")
        s.add_argument("solution")
        s.set_defaults(func=func)

    a = sub.add_parser("analyze", parents=[common], help="structural parameters")
    a.add_argument("instance")
    a.add_argument("--gap", action="store_true", help="also solve both LPs for the gap")
    a.add_argument("--bound", action="store_true", help="also compute the large-T gap bound")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("gap-sweep", parents=[common], help="gap table over a family")
    w.add_argument("family")
    w.add_argument("--r-range", required=True, metavar="A..B")
    w.set_defaults(func=cmd_gap_sweep)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = _Out(args.decimal, stdout)
    try:
        return args.func(args, out)
    except (CapExceeded, lp.LpTooLarge) as exc:
        print(f"error: desk-scale cap exceeded: {exc}", file=sys.stderr)
    except textio.ParseError as exc:
        print(f"error: parse error: {exc}", file=sys.stderr)
    except (UsageError, InvalidInstance, solvers.PreconditionError,
            solvers.UnboundedInstance, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


def main_entry() -> None:
    sys.exit(main())
