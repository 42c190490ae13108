"""plcc command line: gen, recognize, colorable, choosable, lambda,
partial-color and verify-paper.

Exit codes: 0 success, 1 negative answer, 2 usage or precondition error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from math import ceil

from . import constructions
from .algorithms import (
    PartialColoring,
    PlccReport,
    bounds_report,
    lambda_t_exact,
    partial_color_chordal,
    partial_color_chordless,
    partial_color_clawfree,
    partial_color_h_family,
    partial_color_tw2,
)
from .graph import GraphFormatError, format_graph, read_graph
from .harness import CLAIMS, DEFAULT_BUDGET, FAIL, Context, verify_paper
from .listcolor import (
    CHOOSABLE,
    INCONCLUSIVE,
    AssignmentFormatError,
    format_assignment,
    is_choosable,
    is_list_colorable,
    list_chromatic_number,
    max_colorable_subgraph,
    read_assignment,
    sample_choosability,
)
from .structure import (
    StructureError,
    classify_two_choosable_core,
    degeneracy_order,
    find_chorded_cycle,
    find_claw,
    find_induced_cycle,
    is_chordal,
    is_treewidth_at_most_2,
    optimal_coloring,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    """Bad input or a failed precondition; maps to exit code 2."""


def _one_based(vs):
    return [v + 1 for v in vs]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)


def _load_graph(path):
    try:
        return read_graph(path)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _load_lists(path, g):
    try:
        lists = read_assignment(path, g.n)
    except AssignmentFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None
    missing = [v + 1 for v in range(g.n) if v not in lists]
    if missing:
        raise UsageError(f"assignment has no list for vertices {missing}")
    return lists


# -- gen --------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        g = constructions.NAMED[args.graph](args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = format_graph(g, comment=f"{args.graph}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- recognize --------------------------------------------------------------


def recognize(g) -> dict:
    claw = find_claw(g)
    peo = is_chordal(g)
    chorded = find_chorded_cycle(g)
    tw2 = is_treewidth_at_most_2(g)
    cls = classify_two_choosable_core(g)
    out = {
        "n": g.n,
        "m": g.m,
        "claw_free": claw is None,
        "claw": _one_based(claw) if claw else None,
        "chordal": peo is not None,
        "peo": _one_based(peo.order) if peo else None,
        "induced_cycle": None if peo else _one_based(find_induced_cycle(g)),
        "chordless": chorded is None,
        "chorded_cycle": None,
        "treewidth_le_2": tw2 is not None,
        "elimination": _one_based(tw2.order) if tw2 else None,
        "degeneracy": degeneracy_order(g).width,
        "chromatic_number": optimal_coloring(g)[0],
        "core": [
            {"vertices": _one_based(vs), "class": str(c)} for vs, c in cls.components
        ],
        "two_choosable": cls.is_two_choosable,
    }
    if chorded:
        cyc, (a, b) = chorded
        out["chorded_cycle"] = {"cycle": _one_based(cyc), "chord": [a + 1, b + 1]}
    return out


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph)
    rep = recognize(g)
    core = ", ".join(c["class"] for c in rep["core"]) or "empty"
    lines = [
        f"vertices      {rep['n']}",
        f"edges         {rep['m']}",
        f"claw-free     {rep['claw_free']}" + (f"  claw {rep['claw']}" if rep["claw"] else ""),
        f"chordal       {rep['chordal']}"
        + (f"  induced cycle {rep['induced_cycle']}" if rep["induced_cycle"] else ""),
        f"chordless     {rep['chordless']}"
        + (f"  cycle {rep['chorded_cycle']['cycle']} chord {rep['chorded_cycle']['chord']}"
           if rep["chorded_cycle"] else ""),
        f"tw<=2         {rep['treewidth_le_2']}",
        f"degeneracy    {rep['degeneracy']}",
        f"chi           {rep['chromatic_number']}",
        f"core          {core}",
        f"2-choosable   {rep['two_choosable']}",
    ]
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK


# -- colorable --------------------------------------------------------------


def cmd_colorable(args) -> int:
    g = _load_graph(args.graph)
    lists = _load_lists(args.assignment, g)
    col = is_list_colorable(g, lists)
    if col is None:
        _emit(args, {"colorable": False, "coloring": None}, "none")
        return EXIT_NO
    text = "\n".join(f"{v + 1} {col[v]}" for v in sorted(col))
    _emit(args, {"colorable": True, "coloring": {str(v + 1): col[v] for v in sorted(col)}}, text)
    return EXIT_OK


# -- choosable --------------------------------------------------------------


def _sizes(args, g) -> list[int]:
    if (args.sizes is None) == (args.k is None):
        raise UsageError("give exactly one of --sizes and --k")
    if args.k is not None:
        sizes = [args.k] * g.n
    else:
        try:
            sizes = [int(x) for x in args.sizes.replace(",", " ").split()]
        except ValueError:
            raise UsageError("--sizes must be integers") from None
    if len(sizes) != g.n or any(s < 1 for s in sizes):
        raise UsageError(f"need {g.n} positive list sizes")
    return sizes


def _write_witness(args, lists) -> str:
    path = args.witness or f"{args.graph}.witness"
    with open(path, "w") as fh:
        fh.write("# assignment with no proper list coloring\n")
        fh.write(format_assignment(lists))
    return path


def cmd_choosable(args) -> int:
    g = _load_graph(args.graph)
    sizes = _sizes(args, g)
    if args.sample:
        palettes = args.palettes or None
        try:
            res = sample_choosability(g, sizes, args.sample, palettes, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {"mode": "sampled", "tried": res.tried, "failures": len(res.failures),
                   "per_palette": res.per_palette, "witness_file": None}
        if res.failures:
            payload["verdict"] = "not_choosable"
            payload["witness_file"] = _write_witness(args, res.failures[0])
            _emit(args, payload, f"not choosable (sampled); witness in {payload['witness_file']}")
            return EXIT_NO
        payload["verdict"] = "no_counterexample"
        _emit(args, payload, f"no counterexample in {res.tried} sampled assignments")
        return EXIT_OK
    v = is_choosable(g, sizes, budget=args.budget)
    payload = {"mode": "exact", "verdict": v.status, "examined": v.examined,
               "nodes": v.nodes, "pruned": v.pruned, "witness_file": None}
    if v.status == CHOOSABLE:
        _emit(args, payload, f"choosable ({v.nodes} nodes)")
        return EXIT_OK
    if v.status == INCONCLUSIVE:
        payload["budget"] = args.budget
        _emit(args, payload, f"inconclusive: budget of {args.budget} nodes exhausted")
        return EXIT_INCONCLUSIVE
    payload["witness_file"] = _write_witness(args, v.witness)
    _emit(args, payload, f"not choosable; witness in {payload['witness_file']}")
    return EXIT_NO


# -- lambda and partial-color -------------------------------------------------


def _bounds(n, s, t, chi):
    try:
        return bounds_report(n, s, t, max(chi, 2))
    except ValueError:
        return None


def _report_text(rep: PlccReport) -> str:
    lines = [
        f"algorithm  {rep.algorithm}",
        f"n={rep.n} s={rep.s} t={rep.t}",
        f"achieved   {rep.achieved}",
        f"target     {rep.target} (ceil {ceil(rep.target)})",
    ]
    if rep.bounds is not None:
        for name in ("albertson", "chappell", "haas"):
            lines.append(f"{name:<10} {getattr(rep.bounds, name)}")
    if rep.witness is not None:
        lines.append("worst assignment:")
        lines.append(format_assignment(rep.witness).rstrip())
    return "\n".join(lines)


def cmd_lambda(args) -> int:
    g = _load_graph(args.graph)
    start = time.perf_counter()
    lc = list_chromatic_number(g, budget=args.budget)
    if lc.value is None:
        raise UsageError(f"chi_L only bracketed in [{lc.low}, {lc.high}]; pass --s")
    s = args.s or lc.value
    if not 1 <= args.t < s:
        raise UsageError(f"need 1 <= t < s = {s}")
    res = lambda_t_exact(g, args.t, budget=args.budget)
    elapsed = (time.perf_counter() - start) * 1000
    chi = optimal_coloring(g)[0]
    rep = PlccReport(g.n, s, args.t, res.value if res.value is not None else -1,
                     Fraction(args.t * g.n, s), _bounds(g.n, s, args.t, chi),
                     "exact-lambda", elapsed, res.witness)
    payload = rep.to_dict()
    payload["status"] = res.status
    _emit(args, payload, _report_text(rep) + f"\nstatus     {res.status}")
    if res.status != "exact":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.achieved >= rep.target else EXIT_NO


ALGORITHMS = ("clawfree", "chordless", "chordal", "tw2", "hfamily", "exact")


def _h_rank(g) -> int:
    if g.n == 0 or g.n % 8 or g != constructions.h_family(g.n // 8):
        raise UsageError("graph is not h_family(r) in its generated labelling")
    return g.n // 8


def cmd_partial_color(args) -> int:
    g = _load_graph(args.graph)
    lists = _load_lists(args.assignment, g)
    sizes = {len(lists[v]) for v in range(g.n)}
    if len(sizes) > 1:
        raise UsageError("lists must all have the same size")
    t = sizes.pop() if sizes else 0
    chi = optimal_coloring(g)[0]
    start = time.perf_counter()
    try:
        if args.algorithm == "clawfree":
            s = args.s or degeneracy_order(g).width + 1
            pc = partial_color_clawfree(g, lists, s)
        elif args.algorithm == "chordless":
            pc, s = partial_color_chordless(g, lists), 3
        elif args.algorithm == "chordal":
            pc = partial_color_chordal(g, lists)
            s = max(pc.info.get("omega", t), 1)
        elif args.algorithm == "tw2":
            pc, s = partial_color_tw2(g, lists), 3
        elif args.algorithm == "hfamily":
            _h_rank(g)
            pc, s = partial_color_h_family(g, lists), 3
        else:
            best, col = max_colorable_subgraph(g, lists)
            lc = list_chromatic_number(g, budget=args.budget)
            s = args.s or lc.value or lc.high
            pc = PartialColoring(col, Fraction(t * g.n, s), "exact")
    except StructureError as exc:
        detail = f" (witness {_one_based(_flatten(exc.witness))})" if exc.witness else ""
        raise UsageError(f"{args.algorithm}: {exc}{detail}") from None
    except ValueError as exc:
        raise UsageError(f"{args.algorithm}: {exc}") from None
    elapsed = (time.perf_counter() - start) * 1000
    rep = PlccReport(g.n, s, t, pc.size, pc.target, _bounds(g.n, s, t, chi),
                     pc.algorithm, elapsed, None)
    text = _report_text(rep) + "\ncoloring:\n" + "\n".join(
        f"{v + 1} {pc.coloring[v]}" for v in sorted(pc.coloring)
    )
    _emit(args, rep.to_dict(), text)
    return EXIT_OK if pc.size >= ceil(pc.target) else EXIT_NO


def _flatten(w):
    if isinstance(w, int):
        return [w]
    out = []
    for x in w:
        out.extend(_flatten(x))
    return out


# -- verify-paper -------------------------------------------------------------


def cmd_verify_paper(args) -> int:
    ctx = Context(scale=args.scale, seed=args.seed, budget=args.budget)
    results = verify_paper(ctx, names=args.claims)
    if args.format == "json":
        for r in results:
            print(r.to_json())
    else:
        for r in results:
            print(f"{r.claim:<26} {r.status:<13} {r.mode:<8} {r.elapsed_ms / 1000:8.2f}s")
            if r.status == FAIL:
                print(f"    {r.details.get('error')}")
    return EXIT_NO if any(r.status == FAIL for r in results) else EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default: text on a terminal, else json)")
    ap = argparse.ArgumentParser(prog="plcc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a named graph")
    p.add_argument("--graph", required=True, choices=sorted(constructions.NAMED))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("recognize", parents=[common], help="family recognizers and core class")
    p.add_argument("graph")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("colorable", parents=[common], help="find a list coloring")
    p.add_argument("graph")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_colorable)

    p = sub.add_parser("choosable", parents=[common], help="decide choosability for a size profile")
    p.add_argument("graph")
    p.add_argument("--sizes", help="comma-separated list sizes in vertex order")
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.add_argument("--sample", type=int, default=0, metavar="TRIALS",
                   help="sample TRIALS random assignments per palette size instead")
    p.add_argument("--palettes", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness", help="where to write a counterexample assignment")
    p.set_defaults(func=cmd_choosable)

    p = sub.add_parser("lambda", parents=[common], help="exact lambda_t")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, help="list chromatic number, if known")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("partial-color", parents=[common], help="run a constructive algorithm")
    p.add_argument("graph")
    p.add_argument("assignment")
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_partial_color)

    p = sub.add_parser("verify-paper", parents=[common], help="re-run every claim check")
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--claims", nargs="*", choices=sorted(CLAIMS))
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.format is None:
        args.format = "text" if sys.stdout.isatty() else "json"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"plcc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
