"""Command-line front end.

Subcommands: ingest, truss, centrality, rank, eval, generate, bench.
Exit status is 0 on success, 1 on file or data errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import resource
import sys
import time
from pathlib import Path

import numpy as np

from . import _backend
from .baselines import (
    CentralityVector,
    DistanceConvention,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    laplacian_centrality,
    network_constraint,
)
from .evaluation import (
    evaluate,
    rank_values,
    read_ground_truth,
    write_rank_table,
    write_report,
)
from .generators import GeneratorSpec, generate
from .graph import IngestError, load_graph, write_edge_list
from .social import (
    SCConfig,
    SCScores,
    read_communities,
    read_potentials,
    sc_com_score,
    sc_score,
    write_scores,
)
from .truss import k_truss_decompose

log = logging.getLogger("socialcentrality")

MEASURES = ("sc", "sc-com", "dc", "ec", "bc", "cc", "lc", "nc")
LOWER_IS_BETTER = {"nc"}


class UsageError(Exception):
    pass


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


class _Output:
    def __init__(self, path):
        self.fh, self.own = _open_out(path)

    def __enter__(self):
        return self.fh

    def __exit__(self, *exc):
        if self.own:
            self.fh.close()
        else:
            self.fh.flush()


# -- subcommands ----------------------------------------------------------------


def cmd_ingest(args):
    g = load_graph(args.input, args.mode)
    log.info("ingested %s: n=%d m=%d", args.input, g.n, g.m)
    with _Output(args.out) as fh:
        write_edge_list(g, fh)
    return 0


def cmd_truss(args):
    g = load_graph(args.input, args.mode)
    d = k_truss_decompose(g, backend=args.backend)
    labels = g.labels
    if args.edges or not args.nodes:
        with _Output(args.edges) as fh:
            for u, v, t in zip(g.edge_src.tolist(), g.edge_dst.tolist(), d.edge_truss.tolist()):
                fh.write(f"{labels[u]}\t{labels[v]}\t{t}\n")
    if args.nodes:
        with _Output(args.nodes) as fh:
            for lab, tau in zip(labels, d.node_truss.tolist()):
                fh.write(f"{lab}\t{tau}\n")
    return 0


def _write_vector(cv: CentralityVector, dest):
    with _Output(dest) as fh:
        fh.write(f"label,{cv.measure}\n")
        for lab, v in zip(cv.labels, cv.values.tolist()):
            fh.write(f"{_csv_label(lab)},{v:.12g}\n")


def _csv_label(label: str) -> str:
    if any(ch in label for ch in ',"\n'):
        return '"' + label.replace('"', '""') + '"'
    return label


def _compute(measure, g, args, cache):
    if measure in ("sc", "sc-com"):
        if "truss" not in cache:
            cache["truss"] = k_truss_decompose(g, backend=args.backend)
        cfg = read_potentials(args.potentials, g) if args.potentials else SCConfig()
        if measure == "sc":
            return sc_score(g, cache["truss"], cfg)
        return sc_com_score(g, read_communities(args.communities), cfg, d=cache["truss"])
    if measure == "dc":
        return degree_centrality(g, weighted=not args.unweighted_dc)
    if measure == "ec":
        return eigenvector_centrality(g)
    if measure == "bc":
        return betweenness_centrality(g, args.conv, threads=args.threads)
    if measure == "cc":
        return closeness_centrality(g, args.conv, threads=args.threads)
    if measure == "lc":
        return laplacian_centrality(g)
    return network_constraint(g)


def cmd_centrality(args):
    measures = list(dict.fromkeys(args.measure))
    if "sc-com" in measures and not args.communities:
        raise UsageError("--measure sc-com needs --communities")
    if len(measures) > 1 and not args.out_dir:
        raise UsageError("several measures need --out-dir")
    g = load_graph(args.input, args.mode)
    cache = {}
    for measure in measures:
        result = _compute(measure, g, args, cache)
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            dest = os.path.join(args.out_dir, f"{measure}.csv")
        else:
            dest = args.out
        if isinstance(result, SCScores):
            with _Output(dest) as fh:
                write_scores(result, fh)
        else:
            _write_vector(result, dest)
    return 0


def _read_score_file(path, name=None):
    """Return ``(measure, labels, values)`` from a score CSV."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "label" or len(header) < 2:
            raise ValueError(f"{path}: not a score file (header must start with 'label')")
        col = header.index("psi") if "psi" in header else 1
        labels, values = [], []
        for lineno, row in enumerate(reader, start=2):
            try:
                values.append(float(row[col]))
            except (IndexError, ValueError):
                raise ValueError(f"{path}: line {lineno}: bad score row") from None
            labels.append(row[0])
    if name is None:
        name = header[1] if col == 1 else Path(path).stem
    return name, labels, np.array(values)


def _ranked_from_files(paths, names):
    if names and len(names) != len(paths):
        raise UsageError("--name must be given once per score file")
    out = []
    for k, path in enumerate(paths):
        measure, labels, values = _read_score_file(path, names[k] if names else None)
        out.append(rank_values(measure, labels, values, measure not in LOWER_IS_BETTER))
    return out


def cmd_rank(args):
    ranked = _ranked_from_files(args.scores, args.name)
    with _Output(args.out) as fh:
        write_rank_table(ranked, fh, top=args.top)
    return 0


def cmd_eval(args):
    gt = read_ground_truth(args.gt)
    ranked = _ranked_from_files(args.scores, args.name)
    rows = []
    for r in ranked:
        rows.extend(evaluate(gt, r, args.k))
    with _Output(args.out) as fh:
        write_report(rows, fh)
    return 0


def _spec_from(args) -> GeneratorSpec:
    return GeneratorSpec(
        model=args.model,
        n=args.n,
        m=args.m,
        nei=args.nei,
        p=args.p,
        ambs=args.ambs,
        fw=args.fw,
        bw=args.bw,
        seed=args.seed,
    )


def cmd_generate(args):
    spec = _spec_from(args)
    g = generate(spec)
    header = " ".join(f"{k}={v}" for k, v in spec.metadata().items())
    with _Output(args.out) as fh:
        write_edge_list(g, fh, header=header)
    return 0


def cmd_bench(args):
    stages = []
    t0 = time.perf_counter()
    if args.input:
        g = load_graph(args.input, args.mode)
        stages.append(("ingest", time.perf_counter() - t0))
    else:
        if not args.model or not args.n:
            raise UsageError("bench needs --input or --model and --n")
        g = generate(_spec_from(args))
        stages.append(("generate", time.perf_counter() - t0))
    d = k_truss_decompose(g, backend=args.backend)
    stages.append(("support", d.timings["support"]))
    stages.append(("peel", d.timings["peel"]))
    t1 = time.perf_counter()
    sc_score(g, d)
    stages.append(("score", time.perf_counter() - t1))
    total = sum(t for _, t in stages)
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0
    backend = args.backend or _backend.BACKEND
    out = sys.stdout
    out.write(f"# backend={backend} n={g.n} m={g.m} max_truss={d.max_level}\n")
    for name, t in stages:
        out.write(f"{name}\t{t:.3f}\n")
    out.write(f"total\t{total:.3f}\n")
    out.write(f"peak_rss_mb\t{peak:.1f}\n")
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads for per-source measures (default 1)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("input", help="input file")
    graph_in.add_argument(
        "--mode",
        choices=("edge-list", "coauthor", "email"),
        default="edge-list",
        help="input format: weighted edge list, paper/author pairs or email/sender/recipient triples",
    )

    backend = argparse.ArgumentParser(add_help=False)
    backend.add_argument("--backend", choices=("cython", "python"), default=None, help="truss kernel backend (default: compiled if available)")

    p = argparse.ArgumentParser(prog="socialcentrality", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ingest", parents=[common, graph_in], help="normalize input to a coalesced edge list")
    s.add_argument("--out", help="output edge list (default stdout)")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("truss", parents=[common, graph_in, backend], help="edge and node trussness as TSV")
    s.add_argument("--edges", help="write 'labelA labelB t' rows here (default stdout)")
    s.add_argument("--nodes", help="write 'label tau' rows here")
    s.set_defaults(func=cmd_truss)

    s = sub.add_parser("centrality", parents=[common, graph_in, backend], help="compute centrality scores")
    s.add_argument("--measure", action="append", required=True, choices=MEASURES, help="measure to compute; repeatable")
    s.add_argument("--potentials", help="CSV label,alpha,delta of innate potentials (default 1)")
    s.add_argument("--communities", help="CSV label,community; required for sc-com")
    s.add_argument("--conv", choices=[c.value for c in DistanceConvention], default="reciprocal", help="path length from weight for bc/cc (default reciprocal)")
    s.add_argument("--unweighted-dc", action="store_true", help="dc counts neighbors instead of summing weights")
    s.add_argument("--out", help="output CSV for a single measure (default stdout)")
    s.add_argument("--out-dir", help="directory receiving <measure>.csv per measure")
    s.set_defaults(func=cmd_centrality)

    s = sub.add_parser("rank", parents=[common], help="competition-rank score files into a rank matrix")
    s.add_argument("scores", nargs="+", help="score CSVs written by 'centrality'")
    s.add_argument("--name", action="append", help="column name per score file (default from header or file name)")
    s.add_argument("--top", type=int, help="print ranks beyond this as '-'")
    s.add_argument("--out", help="output TSV (default stdout)")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("eval", parents=[common], help="compare score files with ground truth")
    s.add_argument("scores", nargs="+", help="score CSVs written by 'centrality'")
    s.add_argument("--gt", required=True, help="ground truth CSV label,value")
    s.add_argument("--k", type=int, action="append", required=True, help="top-k cutoff; repeatable")
    s.add_argument("--name", action="append", help="measure name per score file")
    s.add_argument("--out", help="report CSV (default stdout)")
    s.set_defaults(func=cmd_eval)

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--model", choices=("er", "ws", "ff"), help="random graph model")
    gen.add_argument("--n", type=int, help="number of nodes")
    gen.add_argument("--m", type=int, help="ER edge count (default 2n)")
    gen.add_argument("--nei", type=int, default=4, help="WS neighbors on each side (default 4)")
    gen.add_argument("--p", type=float, default=0.3, help="WS rewiring probability (default 0.3)")
    gen.add_argument("--ambs", type=int, default=4, help="FF ambassadors (default 4)")
    gen.add_argument("--fw", type=float, default=0.3, help="FF forward burning probability (default 0.3)")
    gen.add_argument("--bw", type=float, default=0.2, help="FF backward burning factor (default 0.2)")

    s = sub.add_parser("generate", parents=[common, gen], help="write a synthetic graph as an edge list")
    s.add_argument("--out", help="output edge list (default stdout)")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("bench", parents=[common, gen, backend], help="time the SC pipeline stage by stage")
    s.add_argument("--input", help="time a graph file instead of a generated one")
    s.add_argument("--mode", choices=("edge-list", "coauthor", "email"), default="edge-list")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.func is cmd_generate and not (args.model and args.n):
        parser.error("generate needs --model and --n")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, IngestError, ValueError, KeyError) as exc:
        print(f"socialcentrality: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
