"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (connected, inequivalent, invalid),
2 error (bad arguments, unreadable or malformed input).
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .equivalence import METHODS, equivalent
from .graph import (
    GraphError, GuardError, check_kind, is_mag, read_graph, serialize_graph, validate_maximal,
)
from .heads import (
    algorithm1, enumerate_heads, param_set_full, s3_brute, s3_tilde_brute,
)
from .msep import m_connected_oracle, m_separated
from .opcount import OpCounter
from .projection import algorithm2, project_latent
from .randbench import (
    GenConfig, ancestor_expectation_experiment, complexity_sweep, exact_ancestor_expectation,
    loglog_slope, random_admg, summarize, worst_case_family, write_csv,
)

OK, NEGATIVE, ERROR = 0, 1, 2


def _labels(G, text: str) -> list[int]:
    if not text:
        return []
    return [G.index(x) for x in text.split(",") if x]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- subcommands -------------------------------------------------------------


def cmd_validate(args, out) -> int:
    G = read_graph(args.graph, check=False)
    summary = G.is_summary()
    maximal = summary and validate_maximal(G)
    print(f"type: {G.kind}", file=out)
    print(f"ancestral: {_yes(G.is_ancestral())}", file=out)
    print(f"maximal: {_yes(maximal) if summary else 'n/a'}", file=out)
    print(f"summary: {_yes(summary)}", file=out)
    print(f"mag: {_yes(maximal and is_mag(G))}", file=out)
    try:
        check_kind(G)
    except GraphError as exc:
        print(f"invalid {G.kind}: {exc}", file=out)
        return NEGATIVE
    print(f"valid {G.kind}", file=out)
    return OK


def cmd_msep(args, out) -> int:
    G = read_graph(args.graph)
    A, B, C = _labels(G, args.a), _labels(G, args.b), _labels(G, args.cond)
    if args.oracle:
        if len(A) != 1 or len(B) != 1:
            raise GraphError("--oracle takes single vertices")
        sep = not m_connected_oracle(G, A[0], B[0], C)
    else:
        sep = m_separated(G, A, B, C)
    print("separated" if sep else "connected", file=out)
    return OK if sep else NEGATIVE


def cmd_paramset(args, out) -> int:
    G = read_graph(args.graph)
    if args.which == "full":
        ps = param_set_full(G)
    elif args.which == "s3":
        ps = s3_brute(G)
    elif args.brute:
        ps = s3_tilde_brute(G)
    else:
        # S~3 is determined by the parametrizing set, which projection preserves
        ps = algorithm1(G if is_mag(G) else algorithm2(G).mag, check=False)
    for line in ps.lines():
        print(line, file=out)
    return OK


def cmd_heads(args, out) -> int:
    G = read_graph(args.graph)
    for head, tl in enumerate_heads(G):
        print(f"{G.fmt(head)} : {G.fmt(tl)}", file=out)
    return OK


def cmd_project(args, out) -> int:
    G = read_graph(args.graph)
    if args.latent:
        mag = project_latent(G, _labels(G, args.latent))
        prov = [f"{a} {m} {b}\tinducing" for a, m, b in sorted(mag.labelled_edges())]
    else:
        res = algorithm2(G)
        mag = res.mag
        prov = res.provenance_lines()
    out.write(serialize_graph(mag))
    if args.provenance:
        with open(args.provenance, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in prov))
    return OK


def cmd_equiv(args, out) -> int:
    G1, G2 = read_graph(args.first), read_graph(args.second)
    rep = equivalent(G1, G2, args.method)
    print(rep.describe(), file=out)
    return OK if rep.equivalent else NEGATIVE


def cmd_gen(args, out) -> int:
    if args.worst:
        N, M, L = _ints(args.worst)
        G = worst_case_family(N, M, L)
    else:
        model = "bernoulli-sparse" if args.r is not None else "fixed-edges"
        e = args.e
        if e is None and args.r is None:
            e = min(3 * args.n, args.n * (args.n - 1) // 2)
        G = random_admg(GenConfig(args.n, e, args.p, args.seed, model, args.r))
    text = serialize_graph(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return OK


def cmd_bench(args, out) -> int:
    if args.study == "sweep":
        recs = complexity_sweep(_ints(args.ns), args.trials, args.seed, args.e_factor, args.p)
        if args.out:
            write_csv(recs, args.out)
        rows = summarize(recs)
        print("n\ttrials\tmean_total_ops\tmean_heads3\tmean_wall_ms", file=out)
        for r in rows:
            print(f"{r['n']}\t{r['trials']}\t{r['total_ops']:.1f}\t{r['heads3']:.1f}\t{r['wall_ms']:.3f}", file=out)
        if len(rows) > 1:
            slope = loglog_slope([r["n"] for r in rows], [r["total_ops"] for r in rows])
            print(f"loglog_slope\t{slope:.3f}", file=out)
    elif args.study == "ancestors":
        if args.exact:
            print("i\tE_ancestors\tE_paths\tformula", file=out)
            for row in exact_ancestor_expectation(args.n, args.r):
                print(f"{row.i}\t{float(row.ancestors):.12f}\t{float(row.paths):.12f}\t"
                      f"{float(row.formula):.12f}", file=out)
        else:
            rows = ancestor_expectation_experiment(args.n, args.r, args.trials, args.seed)
            print("i\tmean_ancestors\tse\tmean_paths\tse\tformula", file=out)
            for r in rows:
                print(f"{r.i}\t{r.mean_ancestors:.4f}\t{r.se_ancestors:.4f}\t{r.mean_paths:.4f}\t"
                      f"{r.se_paths:.4f}\t{r.theory:.4f}", file=out)
            print(f"e^r\t{math.exp(args.r):.4f}", file=out)
    else:
        print("size\tn\te\tvwz_heads\ttriple_candidates\ttotal_ops", file=out)
        for k in _ints(args.sizes):
            G = worst_case_family(k, k, k)
            counter = OpCounter()
            algorithm1(G, counter, check=False)
            w = G.index("w")
            vwz = sum(
                1 for h, _ in enumerate_heads(G)
                if len(h) == 3 and w in h and {G.labels[x][0] for x in h} == {"v", "w", "z"}
            )
            print(f"{k}\t{G.n}\t{len(G.edges)}\t{vwz}\t{counter.triple_candidates}\t{counter.total}", file=out)
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="magequiv", description="Markov equivalence of MAGs and ADMGs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph file against its declared type")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("msep", help="test an m-separation statement")
    s.add_argument("graph")
    s.add_argument("a", help="vertex label (or comma-separated set)")
    s.add_argument("b")
    s.add_argument("cond", nargs="?", default="", help="comma-separated conditioning set")
    s.add_argument("--oracle", action="store_true", help="use exhaustive path enumeration")
    s.set_defaults(func=cmd_msep)

    s = sub.add_parser("paramset", help="print a parametrizing set")
    s.add_argument("graph")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--full", dest="which", action="store_const", const="full")
    g.add_argument("--s3", dest="which", action="store_const", const="s3")
    g.add_argument("--s3tilde", dest="which", action="store_const", const="s3tilde")
    s.add_argument("--brute", action="store_true", help="compute S~3 from the definition")
    s.set_defaults(func=cmd_paramset, which="full")

    s = sub.add_parser("heads", help="list heads and tails")
    s.add_argument("graph")
    s.set_defaults(func=cmd_heads)

    s = sub.add_parser("project", help="project to a Markov equivalent MAG")
    s.add_argument("graph")
    s.add_argument("--latent", default="", help="comma-separated latent vertices to marginalize")
    s.add_argument("--provenance", metavar="PATH", help="write the reason for each output edge")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("equiv", help="decide Markov equivalence")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--method", choices=METHODS, default="s3tilde")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("gen", help="generate a random ADMG or a worst-case graph")
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--e", type=int, help="edge count (default 3n, capped)")
    s.add_argument("--r", type=float, help="use independent edges with probability r/n")
    s.add_argument("--p", type=float, default=0.5, help="probability an edge is bidirected")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--worst", metavar="N,M,L", help="emit the worst-case family member instead")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="run an empirical study")
    s.add_argument("study", choices=("sweep", "ancestors", "worst"))
    s.add_argument("--ns", default="20,40,60,80,100")
    s.add_argument("--trials", type=int, default=250)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="CSV path for sweep records")
    s.add_argument("--e-factor", type=int, default=3)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--r", type=float, default=3.0)
    s.add_argument("--exact", action="store_true", help="exact enumeration (n <= 7)")
    s.add_argument("--sizes", default="2,3,4")
    s.set_defaults(func=cmd_bench)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code in (0, None) else ERROR
    try:
        return args.func(args, out)
    except (GraphError, GuardError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return ERROR


def main() -> None:
    sys.exit(run())
