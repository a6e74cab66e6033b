"""Command-line front end: catalogs, random-index tables, matrix checks.

Exit codes for ``check``: 0 when the inconsistency is acceptable, 2 when
it is not, 1 on any error (unparseable file, disconnected graph, bad
arguments).  Table and enumeration commands write CSV with a mandatory
header; identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog, randindex
from .completion import CompletionMethod, minimize_lambda_max
from .core import (
    DisconnectedGraphError,
    MatrixFormatError,
    is_connected,
    parse_matrix_text,
    representing_graph,
)
from .spectral import CR_THRESHOLD, consistency_index

__all__ = ["main"]

CATALOG_COLUMNS = [
    "n", "m", "graph_id", "canonical_code", "degree_sequence",
    "spectral_radius", "probability",
]

FIG2_COLUMNS = ["n", "graph_id", "spectral_radius", "random_index"]
FIG6_COLUMNS = ["n", "m", "graph_id", "random_index", "acceptance_pct"]


def _parse_range(spec: str) -> list[int]:
    """'4' -> [4]; '2..5' -> [2, 3, 4, 5]."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            return []
        return list(range(lo, hi + 1))
    return [int(spec)]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcmri",
        description="Graph-conditioned inconsistency thresholds for incomplete "
                    "pairwise comparison matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list graph classes for (n, m)")
    p_enum.add_argument("--n", required=True, type=int)
    p_enum.add_argument("--m", required=True, type=int)
    p_enum.add_argument("--samples", type=int, default=randindex.DEFAULT_SAMPLES,
                        help="Monte Carlo samples for occurrence probabilities")
    p_enum.add_argument("--seed", type=int, default=randindex.DEFAULT_SEED)

    p_ri = sub.add_parser("ri", help="random indices for every class of (n, m)")
    p_ri.add_argument("--n", required=True, type=int)
    p_ri.add_argument("--m", required=True, type=int)
    p_ri.add_argument("--samples", type=int, default=randindex.DEFAULT_SAMPLES)
    p_ri.add_argument("--seed", type=int, default=randindex.DEFAULT_SEED)

    p_table = sub.add_parser("table", help="random-index table over (n, m) ranges")
    p_table.add_argument("--n", required=True, help="size or range, e.g. 5 or 4..6")
    p_table.add_argument("--m", default="1..7", help="missing-entry range, e.g. 2..5")
    p_table.add_argument("--samples", type=int, default=randindex.DEFAULT_SAMPLES)
    p_table.add_argument("--seed", type=int, default=randindex.DEFAULT_SEED)
    p_table.add_argument("--output", default=None, help="CSV path (default stdout)")
    p_table.add_argument("--figure", choices=["fig2", "fig6"], default=None,
                         help="emit figure data instead of the full table")

    p_check = sub.add_parser("check", help="verdict for one matrix file")
    p_check.add_argument("input_path")
    p_check.add_argument("--samples", type=int, default=randindex.DEFAULT_SAMPLES)
    p_check.add_argument("--seed", type=int, default=randindex.DEFAULT_SEED)
    p_check.add_argument("--method", choices=["method1", "method2"], default="method2")

    p_serve = sub.add_parser("serve", help="run the monitoring HTTP service")
    p_serve.add_argument("--listen", default="127.0.0.1:8000", dest="listen_address")
    p_serve.add_argument("--samples", type=int, default=20_000,
                         help="Monte Carlo samples per cached threshold")
    p_serve.add_argument("--seed", type=int, default=randindex.DEFAULT_SEED)
    p_serve.add_argument("--journal", default=None, help="append-only history journal path")
    return parser


def cmd_enumerate(n: int, m: int, samples: int, seed: int, out) -> int:
    classes = catalog.enumerate_missing_edge_graphs(n, m)
    probs = catalog.class_probabilities(n, m, classes, samples=samples, seed=seed)
    rows = [
        {
            "n": c.n,
            "m": c.m,
            "graph_id": c.graph_id,
            "canonical_code": c.code_hex,
            "degree_sequence": "-".join(str(d) for d in c.degree_sequence),
            "spectral_radius": repr(c.spectral_radius),
            "probability": repr(float(p)),
        }
        for c, p in zip(classes, probs)
    ]
    out.write(randindex.rows_to_csv(CATALOG_COLUMNS, rows))
    return 0


def cmd_ri(n: int, m: int, samples: int, seed: int, out) -> int:
    classes = catalog.enumerate_missing_edge_graphs(n, m)
    probs = catalog.class_probabilities(n, m, classes, samples=samples, seed=seed)
    rows = []
    for cls, prob in zip(classes, probs):
        rec = randindex.random_index_for(cls, samples, seed)
        rows.append(randindex._table_row(cls, rec, float(prob)))
    out.write(randindex.rows_to_csv(randindex.TABLE_COLUMNS, rows))
    return 0


def cmd_table(n_spec: str, m_spec: str, samples: int, seed: int,
              output_path, figure, out) -> int:
    n_values = _parse_range(n_spec)
    m_values = _parse_range(m_spec)
    if figure == "fig2":
        rows = randindex.figure_spectral_ri_rows(n_values or range(4, 10), samples, seed)
        text = randindex.rows_to_csv(FIG2_COLUMNS, rows)
    elif figure == "fig6":
        rows = randindex.figure_acceptance_rows(n_values, m_values, samples, seed)
        text = randindex.rows_to_csv(FIG6_COLUMNS, rows)
    else:
        rows = randindex.threshold_table(n_values, m_values, samples, seed)
        text = randindex.rows_to_csv(randindex.TABLE_COLUMNS, rows)
    if output_path:
        with open(output_path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_check(input_path: str, samples: int, seed: int, method_name: str, out) -> int:
    with open(input_path, encoding="utf-8") as fh:
        pcm = parse_matrix_text(fh.read())
    graph = representing_graph(pcm)
    if not is_connected(graph):
        raise DisconnectedGraphError(
            "no unique completion: the comparison graph is disconnected"
        )
    method = CompletionMethod(method_name)
    cls = catalog.classify(graph)
    result = minimize_lambda_max(pcm, method)
    ci = consistency_index(result.lambda_star, pcm.n)
    rec = randindex.random_index_for(cls, samples, seed)

    out.write(f"n: {pcm.n}\n")
    out.write(f"m: {pcm.missing_count}\n")
    out.write(f"canonical_code: {cls.code_hex}\n")
    out.write(f"spectral_radius: {cls.spectral_radius:.6f}\n")
    out.write(f"lambda_star: {result.lambda_star:.6f}\n")
    out.write(f"ci: {ci:.6f}\n")
    out.write(f"ri: {rec.random_index:.6f} ({rec.mode}, {rec.sample_count} samples)\n")
    if rec.random_index > 0:
        cr = ci / rec.random_index
        acceptable = cr <= CR_THRESHOLD
        out.write(f"cr: {cr:.6f}\n")
    else:
        # Degenerate families (n = 2) are consistent by construction.
        acceptable = ci <= 1e-12
        out.write("cr: undefined (random index is zero)\n")
    out.write(f"verdict: {'ACCEPTABLE' if acceptable else 'UNACCEPTABLE'}\n")
    return 0 if acceptable else 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args.n, args.m, args.samples, args.seed, out)
        if args.command == "ri":
            return cmd_ri(args.n, args.m, args.samples, args.seed, out)
        if args.command == "table":
            return cmd_table(args.n, args.m, args.samples, args.seed,
                             args.output, args.figure, out)
        if args.command == "check":
            return cmd_check(args.input_path, args.samples, args.seed, args.method, out)
        if args.command == "serve":
            from .service import run_server

            run_server(args.listen_address, samples=args.samples, seed=args.seed,
                       journal_path=args.journal)
            return 0
    except (MatrixFormatError, DisconnectedGraphError, OSError, ValueError,
            catalog.UnsupportedSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
