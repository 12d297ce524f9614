"""Command-line front end.

Subcommands
-----------
density       A_G for a graph file or built-in graph name
tuples        C_{k,r}, C'_{k,r}, C_k or A_k
local-factor  multivariate and univariate local factors by all three formulas
verify        exact or Monte Carlo counts compared with the computed density
classes       isomorphism classes on k vertices with multiplicities and factors

Graphs are read from a file when the path exists, otherwise resolved as a
built-in name (c4, path3, k4, empty2, example2; a trailing ``.g`` is ignored).
The default prime limit comes from $COPRIMALITY_PRIME_LIMIT, else 10^7.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import density as dn
from . import empirical as em
from . import graph as gr
from . import local_factor as lf
from .euler import DEFAULT_PRIME_LIMIT, MIN_PRIME_LIMIT, format_decimal

ENV_PRIME_LIMIT = "COPRIMALITY_PRIME_LIMIT"


def load_graph(ref: str) -> gr.CoprimalityGraph:
    path = Path(ref)
    if path.is_file():
        return gr.parse_graph(path.read_text())
    return gr.builtin_graph(ref)


def _parse_cover(text: str, G: gr.CoprimalityGraph) -> frozenset[int]:
    if text == "auto":
        return gr.min_vertex_cover(G)
    if text == "all":
        return G.vertices
    if text == "nonisolated":
        return gr.non_isolated(G)
    try:
        return frozenset(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise gr.GraphError(f"bad cover list {text!r}") from None


def _emit(fmt: str, payload: dict, human: str, rows: list[dict] | None = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        rows = rows if rows is not None else [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        sys.stdout.write(buf.getvalue())
    else:
        print(human)


def _report_text(rep: dn.DensityReport) -> str:
    lines = [f"{rep.label}", f"  value        {format_decimal(rep.value)}",
             f"  error bound  {format_decimal(rep.error_bound)}", f"  prime limit  {rep.prime_limit}"]
    if rep.num_classes is not None:
        lines.append(f"  classes      {rep.num_classes}")
    if "polynomial" in rep.provenance:
        lines.append(f"  local factor {rep.provenance['polynomial']}")
    return "\n".join(lines)


def cmd_density(args) -> int:
    G = load_graph(args.graph)
    rep = dn.density_A(G, args.prime_limit)
    payload = rep.to_dict() | {"polynomial": rep.provenance["polynomial"]}
    _emit(args.format, payload, _report_text(rep))
    return 0


def cmd_tuples(args) -> int:
    if args.mode == "noncoprime":
        rep = dn.density_pairwise_noncoprime(args.k, args.prime_limit)
    elif args.mode == "coprime":
        rep = dn.density_pairwise_coprime(args.k, args.prime_limit)
    elif args.r is None:
        raise dn.DensityError(f"--r is required with --mode {args.mode}")
    elif args.mode == "exact":
        rep = dn.density_exact_r(args.k, args.r, args.prime_limit)
    else:
        rep = dn.density_at_least_r(args.k, args.r, args.prime_limit)
    _emit(args.format, rep.to_dict(), _report_text(rep))
    return 0


def cmd_local_factor(args) -> int:
    G = load_graph(args.graph)
    J = _parse_cover(args.cover, G)
    by_sets = lf.factor_by_independent_sets(G)
    by_edges = lf.factor_by_edge_subsets(G)
    by_cover = lf.factor_by_vertex_cover(G, J)
    agree = by_cover == by_edges and lf.collapse(by_edges) == by_sets == lf.collapse(by_cover)
    payload = {
        "k": G.k,
        "edges": [list(e) for e in G.sorted_edges()],
        "cover": sorted(J),
        "cover_terms": [sorted(L) for L in lf.cover_terms(G, J)],
        "independent_sets": by_sets.to_list(),
        "edge_subsets": {"multivariate": by_edges.to_dict(), "univariate": lf.collapse(by_edges).to_list()},
        "vertex_cover": {"multivariate": by_cover.to_dict(), "univariate": lf.collapse(by_cover).to_list()},
        "agree": agree,
    }
    human = "\n".join([
        f"graph k={G.k} edges={G.sorted_edges()}",
        f"cover J={sorted(J)}  terms L={[sorted(L) for L in lf.cover_terms(G, J)]}",
        f"vertex cover:     {by_cover.pretty()}",
        f"edge subsets:     {by_edges.pretty()}",
        f"univariate (independent sets): {by_sets.to_list()}",
        f"univariate (edge subsets):     {lf.collapse(by_edges).to_list()}",
        f"univariate (vertex cover):     {lf.collapse(by_cover).to_list()}",
        f"agreement: {'yes' if agree else 'NO'}",
    ])
    _emit(args.format, payload, human)
    return 0 if agree else 1


def cmd_verify(args) -> int:
    if args.graph:
        G = load_graph(args.graph)
        target = dn.density_A(G, args.prime_limit)
        query = G
    else:
        if args.k is None or args.r is None:
            raise em.EmpiricalError("verify needs --graph or both --k and --r")
        query = (args.k, args.r, args.mode)
        target = (dn.density_exact_r if args.mode == dn.EXACT else dn.density_at_least_r)(
            args.k, args.r, args.prime_limit)
    value = float(target.value)
    payload: dict = {"target": target.to_dict()}
    if args.mc:
        res = em.monte_carlo(query, args.X, args.samples, args.seed)
        ok = res.brackets(value)
        payload |= {"count": res.to_dict(), "brackets": ok}
        human = (f"{target.label} = {format_decimal(target.value)}\n"
                 f"monte carlo: {res.count}/{res.samples} = {res.estimate:.6f} +- {res.ci_halfwidth:.6f}"
                 f" (seed {res.seed})\nbrackets: {'yes' if ok else 'NO'}")
    else:
        if isinstance(query, gr.CoprimalityGraph):
            res = em.count_delta_exact(query, args.x, threads=args.threads)
            row = em.convergence_diagnostic(query, [args.x], args.prime_limit, density=value)[0] if args.x >= 2 else None
            remainder = row.normalized_remainder if row else None
        else:
            res = em.count_beta_exact(args.k, args.r, args.mode, args.x, threads=args.threads)
            remainder = None
        ok = True
        payload |= {"count": res.to_dict(), "normalized_remainder": remainder}
        human = (f"{target.label} = {format_decimal(target.value)}\n"
                 f"exact count over [1,{res.x}]^k: {res.count} (estimate {res.estimate:.6f})")
        if remainder is not None:
            human += f"\nnormalized remainder: {remainder:.6f}"
    _emit(args.format, payload, human)
    return 0 if ok else 1


def cmd_classes(args) -> int:
    table = dn.build_iso_table(args.k)
    rows = [{"edges": c.num_edges, "multiplicity": c.multiplicity, "key": c.key.hex(),
             "representative": [list(e) for e in c.representative.sorted_edges()],
             "polynomial": c.factor.to_list()} for c in table.classes]
    human = "\n".join(f"{r['edges']:>3} {r['multiplicity']:>6}  {r['polynomial']}  {r['representative']}"
                      for r in rows)
    _emit(args.format, {"k": args.k, "classes": rows}, f" |E|   mult  local factor  representative\n{human}",
          rows=rows)
    return 0


def _positive_limit(text: str) -> int:
    v = int(float(text))
    if v < MIN_PRIME_LIMIT:
        raise argparse.ArgumentTypeError(f"prime limit must be >= {MIN_PRIME_LIMIT}")
    return v


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    default_limit = os.environ.get(ENV_PRIME_LIMIT, str(DEFAULT_PRIME_LIMIT))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime-limit", type=_positive_limit, default=_positive_limit(default_limit))
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--threads", type=_threads, default=1)

    p = argparse.ArgumentParser(prog="coprimality", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("density", parents=[common], help="A_G for one graph")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("tuples", parents=[common], help="exactly / at least r coprime pairs")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int)
    s.add_argument("--mode", choices=("exact", "atleast", "noncoprime", "coprime"), default="exact")
    s.set_defaults(func=cmd_tuples)

    s = sub.add_parser("local-factor", parents=[common], help="local factors by all three formulas")
    s.add_argument("--graph", required=True)
    s.add_argument("--cover", default="auto", help="auto, all, nonisolated, or a list like 1,2,4")
    s.set_defaults(func=cmd_local_factor)

    s = sub.add_parser("verify", parents=[common], help="compare counts with the computed density")
    s.add_argument("--graph")
    s.add_argument("--k", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--mode", choices=(dn.EXACT, dn.AT_LEAST), default=dn.EXACT)
    how = s.add_mutually_exclusive_group(required=True)
    how.add_argument("--mc", action="store_true")
    how.add_argument("--exact", action="store_true")
    s.add_argument("--x", type=int, default=40)
    s.add_argument("--X", type=int, default=10**6)
    s.add_argument("--samples", type=int, default=10**6)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classes", parents=[common], help="isomorphism class table")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_classes)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
