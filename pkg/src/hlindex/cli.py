"""Command-line entry point. Every command prints one JSON object to stdout.

Exit status: 0 on success, 1 when a numerical check fails, 2 when the input
is rejected.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from . import experiments
from .graph import bipartition, format_graph_text, parse_graph_text
from .hl import CheckFailure
from .lifts import cyclic_voltage_graph, factorization_discrepancy, lift_spectrum_factored


def _read_graph(path: str):
    text = Path(path).read_text(encoding="utf-8")
    G, volts = parse_graph_text(text)
    return G, volts, text.encode("utf-8")


def cmd_hl(args) -> tuple[dict, bytes]:
    G, _, raw = _read_graph(args.input)
    return experiments.graph_report(G), raw


def cmd_lift(args) -> tuple[dict, bytes]:
    if args.t < 1:
        raise ValueError(f"--t must be >= 1, got {args.t}")
    G, volts, raw = _read_graph(args.input)
    cvg = cyclic_voltage_graph(G, volts, args.t)
    spec = lift_spectrum_factored(cvg)
    out = {
        "base_order": G.n,
        "t": args.t,
        "lift_order": G.n * args.t,
        "spectrum": experiments.spectrum_summary(spec, bipartite=bipartition(G) is not None),
    }
    if args.verify:
        gap = factorization_discrepancy(cvg)
        out["verified"] = gap <= 1e-6
        out["max_discrepancy"] = gap
        if not out["verified"]:
            raise CheckFailure(f"factored and explicit lift spectra differ by {gap:.3g}")
    return out, raw


def cmd_pp(args) -> tuple[dict, bytes]:
    G, report = experiments.pp_report(args.q)
    text = format_graph_text(G, comment=f"incidence graph of PG(2,{args.q}): points 0..{G.n // 2 - 1}, lines after")
    Path(args.output).write_text(text, encoding="utf-8")
    report["output"] = str(args.output)
    if not report["spectrum_ok"]:
        raise CheckFailure(f"PG(2,{args.q}) incidence graph has an unexpected spectrum")
    return report, b""


def cmd_infinit(args) -> tuple[dict, bytes]:
    return experiments.run_infinit(args.q, args.tmax).as_dict(), b""


def cmd_refined(args) -> tuple[dict, bytes]:
    return experiments.refined_margin(args.t, args.h).as_dict(), b""


def cmd_sweep(args) -> tuple[dict, bytes]:
    return experiments.run_sweep(args.n, args.trials, args.seed), b""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hlindex", description="Median eigenvalues of graphs and their cyclic lifts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hl", help="HL-index and bound verdicts for a graph file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_hl)

    p = sub.add_parser("lift", help="spectrum of the cyclic t-lift of a voltage graph file")
    p.add_argument("--input", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also solve the explicit lift and compare")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("pp", help="write the PG(2,q) incidence graph")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_pp)

    p = sub.add_parser("infinit", help="double cover of PG(2,q) with one voltage edge")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--tmax", type=int, default=12)
    p.set_defaults(func=cmd_infinit)

    p = sub.add_parser("refined", help="sign of the refined lower-bound expression")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.set_defaults(func=cmd_refined)

    p = sub.add_parser("sweep", help="random connected bipartite graphs against the bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k != "func"}
    start = time.perf_counter()
    try:
        results, raw = args.func(args)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 2
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode() + raw).hexdigest()
    report = {"command": args.command, "input_digest": digest, **results}
    report["duration_s"] = time.perf_counter() - start
    print(json.dumps(report, ensure_ascii=False))
    return 0


if __name__ == "__main__":
    sys.exit(main())
