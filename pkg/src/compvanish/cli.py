"""Command-line interface: ``compvanish <command> ...``.

Exit status is 0 on success, 1 for a negative outcome (invalid
certificate, no certificate found, inconclusive Gröbner run) and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .census import (
    CERTIFY_METHODS,
    CensusOptions,
    NoCertificateFound,
    certify_graph,
    format_row,
    run_census,
    TSV_HEADER,
)
from .certify import CertificateError, RobustCertificate, read_certificate, verify, verify_robust, write_certificate
from .graph import (
    Graph,
    InvalidGraph6,
    UnsupportedSize,
    canonical_form,
    decode_graph6,
    encode_graph6,
    generate_all,
    read_graph_list,
)
from .groebner import Limits, TreeSide, groebner_refutes
from .structure import MDatabase, classify

OUT_ENV = "COMPVANISH_OUT"
EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _out_dir(args: argparse.Namespace) -> Path:
    return Path(args.out or os.environ.get(OUT_ENV) or ".")


def _inputs(args: argparse.Namespace) -> list[str]:
    lines = list(args.graph6 or [])
    if args.file:
        for line in Path(args.file).read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                lines.append(line)
    if not lines:
        raise UsageError("no input graphs (give graph6 strings or --file)")
    return lines


def _one_graph(text: str) -> Graph:
    try:
        return decode_graph6(text)
    except InvalidGraph6 as exc:
        raise UsageError(f"{text!r}: {exc}") from exc


def _parse_limits(text: Optional[str]) -> Limits:
    """``spolys,degree,seconds``; empty fields keep the default."""
    if not text:
        return Limits()
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--limits expects spolys,degree,seconds")
    base = Limits()
    try:
        return Limits(int(parts[0]) if parts[0] else base.max_spolys,
                      int(parts[1]) if parts[1] else base.max_degree,
                      float(parts[2]) if parts[2] else base.timeout)
    except ValueError as exc:
        raise UsageError(f"bad --limits: {exc}") from exc


# -- commands ---------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> int:
    db = MDatabase.from_file(args.db) if args.db else None
    status = EXIT_OK
    for text in _inputs(args):
        try:
            g = decode_graph6(text)
        except InvalidGraph6 as exc:
            print(json.dumps({"graph6": text, "error": str(exc)}))
            status = EXIT_USAGE
            continue
        report = classify(g, db)
        print(json.dumps({
            "graph6": text, "n": g.n, "verdict": report.verdict.value,
            "reason": list(report.reason), "robust_alpha": report.robust_alpha,
            "robust_beta": report.robust_beta,
        }))
    return status


def cmd_certify(args: argparse.Namespace) -> int:
    g = _one_graph(args.graph6)
    methods = args.methods.split(",") if args.methods else list(CERTIFY_METHODS)
    unknown = [m for m in methods if m not in CERTIFY_METHODS]
    if unknown:
        raise UsageError(f"unknown methods {unknown}; choose from {list(CERTIFY_METHODS)}")
    try:
        cert, how = certify_graph(g, methods, args.attempts, args.seed)
    except NoCertificateFound as exc:
        print(f"NoCertificateFound for {args.graph6}")
        for method, why in exc.diagnostics:
            print(f"  {method}: {why}")
        return EXIT_NEGATIVE
    path = Path(args.out) if args.out and args.out.endswith(".json") else \
        _out_dir(args) / f"cert_n{g.n}_{canonical_form(g).bits:x}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    write_certificate(path, cert)
    print(f"certificate ({how}, provenance {cert.provenance.value}) written to {path}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _one_graph(args.graph6)
    try:
        cert = read_certificate(args.certificate)
    except (OSError, ValueError, KeyError, CertificateError) as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc}") from exc
    if cert.graph != g:
        print(f"Invalid: certificate is for {encode_graph6(cert.graph)}, not {args.graph6} (pattern)")
        return EXIT_NEGATIVE
    res = verify_robust(cert) if isinstance(cert, RobustCertificate) else verify(cert)
    if res:
        print(f"Valid: {res.reason}")
        return EXIT_OK
    where = f" at {res.entry[0]}[{res.entry[1]},{res.entry[2]}]" if res.entry else ""
    print(f"Invalid: {res.reason}{where}")
    return EXIT_NEGATIVE


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        graphs = generate_all(args.n, args.filter)
    except UnsupportedSize as exc:
        raise UsageError(str(exc)) from exc
    for line in sorted(encode_graph6(g) for g in graphs):
        print(line)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    if not 1 <= args.max_n <= 8:
        raise UsageError("--max-n must be between 1 and 8")
    graphs = None
    if args.file:
        # sizes absent from the file are empty rather than generated
        graphs = {n: [] for n in range(1, args.max_n + 1)}
        for g in read_graph_list(args.file):
            graphs.setdefault(g.n, []).append(g)
    options = CensusOptions(max_n=args.max_n, seed=args.seed, grobner=args.grobner,
                            attempts_per_side=args.attempts, limits=_parse_limits(args.limits))
    out = _out_dir(args) if (args.out or os.environ.get(OUT_ENV)) else None
    print(TSV_HEADER, flush=True)
    result = run_census(options, graphs, out, on_row=lambda r: print(format_row(r), flush=True))
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "census.tsv").write_text(result.tsv())
        (out / "ledger.jsonl").write_text(result.jsonl())
    return EXIT_OK


def cmd_groebner(args: argparse.Namespace) -> int:
    g = _one_graph(args.graph6)
    sides = {"G": (TreeSide.GRAPH,), "co-G": (TreeSide.COMPLEMENT,),
             "both": (TreeSide.GRAPH, TreeSide.COMPLEMENT)}[args.tree_side]
    roots = None if args.tree_root is None else [args.tree_root]
    if roots and not 0 <= roots[0] < g.n:
        raise UsageError(f"--tree-root must be a vertex of the graph (0..{g.n - 1})")
    try:
        report = groebner_refutes(g, _parse_limits(args.limits), sides, roots)
    except ValueError as exc:
        print(f"Inconclusive: {exc}")
        return EXIT_NEGATIVE
    for run in report.runs:
        res, prog = run.result, run.result.progress
        print(f"run: tree in {run.tree_side.value}, root {run.root}")
        for fix in run.fixed:
            print(f"  fix {fix}")
        state = "complete" if res.complete else f"stopped ({prog.reason})"
        print(f"  basis: {len(res.basis)} polynomials, {state}, {prog.spolys} S-polynomials, "
              f"{prog.seconds:.2f}s")
        if run.witness:
            print(f"  witness: {run.witness}")
        elif res.complete and len(res.basis) <= args.show:
            for p in res.basis:
                print(f"    {p.format(res.order)}")
    print(report.outcome.value)
    return EXIT_OK if report.refuted else EXIT_NEGATIVE


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compvanish",
                                     description="Complementary vanishing graphs: decide, certify, refute.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify graphs (one JSON record per input)")
    p.add_argument("graph6", nargs="*")
    p.add_argument("--file", help="graph6 list, one per line")
    p.add_argument("--db", help="graph6 list replacing the built-in minimal graphs")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="find a certificate and write it as JSON")
    p.add_argument("graph6")
    p.add_argument("--methods", help=f"comma-separated subset of {','.join(CERTIFY_METHODS)}")
    p.add_argument("--attempts", type=int, default=1000, help="random-trial attempts (both sides)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help=f"output file (*.json) or directory; default ${OUT_ENV} or .")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a certificate file exactly")
    p.add_argument("graph6")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="list graphs up to isomorphism")
    p.add_argument("n", type=int)
    p.add_argument("--filter", choices=["all", "cc"], default="all")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("census", help="count pairs by deciding method")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=500, help="random-trial attempts per side")
    p.add_argument("--grobner", action="store_true", help="run Buchberger instead of matching H1-H4")
    p.add_argument("--limits", help="Gröbner limits as spolys,degree,seconds")
    p.add_argument("--file", help="graph6 list to use instead of the built-in generator")
    p.add_argument("--out", help=f"directory for census.tsv, ledger.jsonl, certificates/ (or ${OUT_ENV})")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("groebner", help="try to refute a graph with Gröbner bases")
    p.add_argument("graph6")
    p.add_argument("--tree-side", choices=["G", "co-G", "both"], default="both")
    p.add_argument("--tree-root", type=int, help="only this BFS root (default: every vertex)")
    p.add_argument("--limits", help="spolys,degree,seconds")
    p.add_argument("--show", type=int, default=20, help="print complete bases up to this size")
    p.set_defaults(func=cmd_groebner)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
