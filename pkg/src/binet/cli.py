"""binet command line: ingest -> cfg/ddg/pdg -> metrics -> classify/report.

Stages communicate through files only, so each is independently
scriptable and testable. Exit codes: 0 success, 1 usage error, 2 input
parse error, 3 I/O error. Diagnostics go to stderr, data to files or
stdout.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from pathlib import Path
from typing import Optional

from binet import asm, cfg, ddg, metrics, pdg, refdata, report
from binet.graph import read_edge_list, write_edge_list


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract says 1
        raise _UsageError(message)


def _out_stream(path: Optional[str]):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _write_json(doc: dict, path: Optional[str]) -> None:
    fh = _out_stream(path)
    try:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _jump_set(strict: bool) -> frozenset[str]:
    return asm.JUMP_FAMILY_ONLY if strict else asm.JUMP_OPCODES


def _ddg_config(args) -> ddg.DdgConfig:
    move_opcodes = tuple(tok.strip() for tok in args.move_opcodes.split(",") if tok.strip())
    return ddg.DdgConfig(
        move_opcodes=move_opcodes,
        register_aliasing=args.register_aliasing.replace("-", "_"),
        reverse_edges=args.reverse_edges,
    )


def _cfg_config(args) -> cfg.CfgConfig:
    return cfg.CfgConfig(edge_policy=args.edges.replace("-", "_"),
                         call_edges=not args.no_call_edges)


# -- subcommands --------------------------------------------------------------


def cmd_ingest(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    instrs = asm.parse_disassembly(text, syntax=args.syntax)
    blocks = asm.segment_blocks(instrs, _jump_set(args.strict_jumps))
    _write_json(asm.blocks_to_dict(blocks), args.output)
    return 0


def cmd_cfg(args) -> int:
    blocks = asm.load_blocks(args.blocks)
    result = cfg.build_cfg(blocks, _cfg_config(args))
    write_edge_list(result.graph, args.output)
    result.write_sidecar(f"{os.path.splitext(args.output)[0]}.meta.json")
    return 0


def cmd_ddg(args) -> int:
    blocks = asm.load_blocks(args.blocks)
    config = _ddg_config(args)
    os.makedirs(args.output, exist_ok=True)
    index = []
    for block in blocks:
        g = ddg.build_ddg(block, config)
        write_edge_list(g, os.path.join(args.output, f"ddg_{block.index}.edges"))
        index.append({"index": block.index, "n": g.n, "l": g.num_edges})
    with open(os.path.join(args.output, "index.json"), "w", encoding="utf-8") as fh:
        json.dump({"blocks": index}, fh)
        fh.write("\n")
    return 0


def cmd_pdg(args) -> int:
    blocks = asm.load_blocks(args.blocks)
    cfg_result = cfg.build_cfg(blocks, _cfg_config(args))
    ddgs = ddg.build_all_ddgs(blocks, _ddg_config(args))
    composed = pdg.build_pdg(cfg_result.graph, ddgs)
    pdg.save_pdg(composed, args.output)
    return 0


def cmd_metrics(args) -> int:
    if args.cliques and not args.output:
        raise _UsageError("--cliques needs -o so the census has a file to land in")
    g = read_edge_list(args.graph, fmt=args.format)
    record = metrics.compute_metrics(
        g, mode=args.mode, gamma_method=args.gamma.replace("-", "_"), k_min=args.k_min)
    _write_json(record.to_dict(), args.output)
    if args.cliques:
        sizes = [int(tok) for tok in args.cliques.split(",") if tok.strip()]
        census = {str(k): metrics.count_k_cliques(g, k) for k in sizes}
        path = f"{os.path.splitext(args.output)[0]}.cliques.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(census, fh)
            fh.write("\n")
    return 0


def cmd_classify(args) -> int:
    with open(args.metrics, "r", encoding="utf-8") as fh:
        record = metrics.NetworkMetrics.from_dict(json.load(fh))
    thresholds = (report.Thresholds.from_dict(json.loads(args.thresholds))
                  if args.thresholds else report.Thresholds())
    verdict = report.classify(record, thresholds)
    _write_json({"metrics": record.to_dict(), "classification": verdict.to_dict()},
                args.output)
    return 0


def _corpus_sample_row(path_str: str, syntax: str, strict_jumps: bool,
                       edge_policy: str, call_edges: bool, gamma_method: str) -> dict:
    """Worker for one corpus sample; returns CorpusRow fields."""
    with open(path_str, "r", encoding="utf-8") as fh:
        text = fh.read()
    blocks = asm.segment_blocks(asm.parse_disassembly(text, syntax=syntax),
                                _jump_set(strict_jumps))
    result = cfg.build_cfg(blocks, cfg.CfgConfig(edge_policy=edge_policy,
                                                 call_edges=call_edges))
    record = metrics.compute_metrics(result.graph, gamma_method=gamma_method)
    return {
        "sample": Path(path_str).stem,
        "n": record.n, "l": record.l, "k_max": record.k_max,
        "k1": record.k1, "k2": record.k2,
        "pearson": record.pearson_r, "gamma": record.gamma,
    }


def cmd_corpus(args) -> int:
    sample_dir = Path(args.samples)
    files = sorted(p for p in sample_dir.iterdir()
                   if p.is_file() and not p.name.startswith("."))
    worker_args = [(str(p), args.syntax, args.strict_jumps,
                    args.edges.replace("-", "_"), not args.no_call_edges,
                    args.gamma.replace("-", "_")) for p in files]
    rows: list[report.CorpusRow] = []
    failures = 0
    if args.jobs > 1 and len(files) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {pool.submit(_corpus_sample_row, *wa): wa[0] for wa in worker_args}
            for future in concurrent.futures.as_completed(futures):
                name = futures[future]
                try:
                    rows.append(report.CorpusRow(**future.result()))
                except Exception as exc:  # noqa: BLE001 - one bad sample must not kill the run
                    failures += 1
                    print(f"corpus: sample {name} failed: {exc}", file=sys.stderr)
    else:
        for wa in worker_args:
            try:
                rows.append(report.CorpusRow(**_corpus_sample_row(*wa)))
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print(f"corpus: sample {wa[0]} failed: {exc}", file=sys.stderr)
    rows.sort(key=lambda r: r.sample)
    if args.output:
        report.render_corpus_csv(rows, args.output)
    else:
        sys.stdout.write(report.CSV_HEADER + "\n")
        for r in rows:
            sys.stdout.write(f"{r.sample},{r.n},{r.l},{r.k_max},"
                             f"{report._fmt(r.k1)},{report._fmt(r.k2)},"
                             f"{report._fmt(r.pearson)},{report._fmt(r.gamma)}\n")
    if files and failures == len(files):
        print("corpus: every sample failed", file=sys.stderr)
        return 2
    return 0


def cmd_plotdata(args) -> int:
    if (args.graph is None) == (args.ddg_dir is None):
        raise _UsageError("give either a graph file or --ddg-dir, not both")
    if args.graph is not None:
        g = read_edge_list(args.graph, fmt=args.format)
        for path in report.emit_plot_data(g, args.output):
            print(path, file=sys.stderr)
        return 0
    ddg_dir = Path(args.ddg_dir)
    with open(ddg_dir / "index.json", "r", encoding="utf-8") as fh:
        index = json.load(fh)["blocks"]
    records = []
    sizes = []
    for entry in sorted(index, key=lambda e: e["index"]):
        g = read_edge_list(ddg_dir / f"ddg_{entry['index']}.edges")
        sizes.append(g.n)
        if g.n < 1:
            continue
        record = metrics.basic_metrics(g)
        if g.n >= 2:
            record.k1, record.k2 = metrics.diameter_predictors(
                g.n, g.undirected_edge_count, int(g.undirected_degrees().max()))
        try:
            record.pearson_r = metrics.assortativity(g)
        except metrics.EmptyGraph:
            record.pearson_r = None
        records.append(record)
    for path in report.emit_ddg_plot_data(records, args.output, sizes=sizes):
        print(path, file=sys.stderr)
    return 0


def cmd_selftest(args) -> int:
    return 0 if refdata.run_selftest(sys.stdout, seed=args.seed) else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="binet",
                     description="Reconstruct and measure the networks inside a binary: "
                                 "control flow, data dependencies, and their composition.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a disassembly listing into basic blocks")
    p.add_argument("input", help="disassembly text file")
    p.add_argument("--syntax", choices=["intel", "canonical"], default="canonical")
    p.add_argument("--strict-jumps", action="store_true",
                   help="terminate blocks only on j* opcodes, not call/ret")
    p.add_argument("-o", "--output", help="blocks JSON (default stdout)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("cfg", help="build the control flow graph from blocks JSON")
    p.add_argument("blocks", help="blocks JSON from ingest")
    p.add_argument("--edges", choices=["jumps-only", "with-fallthrough"],
                   default="jumps-only")
    p.add_argument("--no-call-edges", action="store_true",
                   help="do not add edges for resolvable call targets")
    p.add_argument("-o", "--output", required=True,
                   help="edge-list path; a .meta.json sidecar lands next to it")
    p.set_defaults(func=cmd_cfg)

    p = sub.add_parser("ddg", help="build one data dependency graph per block")
    p.add_argument("blocks", help="blocks JSON from ingest")
    p.add_argument("--move-opcodes", default=",".join(ddg.DdgConfig().move_opcodes),
                   help="comma-separated opcode prefixes treated as data moves")
    p.add_argument("--register-aliasing", choices=["none", "full-width"], default="none")
    p.add_argument("--reverse-edges", action="store_true",
                   help="point edges destination->source instead")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_ddg)

    p = sub.add_parser("pdg", help="compose the CFG and DDGs into a dependence graph")
    p.add_argument("blocks", help="blocks JSON from ingest")
    p.add_argument("--edges", choices=["jumps-only", "with-fallthrough"],
                   default="jumps-only")
    p.add_argument("--no-call-edges", action="store_true")
    p.add_argument("--move-opcodes", default=",".join(ddg.DdgConfig().move_opcodes))
    p.add_argument("--register-aliasing", choices=["none", "full-width"], default="none")
    p.add_argument("--reverse-edges", action="store_true")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_pdg)

    p = sub.add_parser("metrics", help="compute the full metric record of a graph")
    p.add_argument("graph", help="edge-list file (or adjacency matrix CSV)")
    p.add_argument("--format", choices=["edges", "matrix"], default="edges")
    p.add_argument("--mode", choices=["undirected", "directed"], default="undirected")
    p.add_argument("--gamma", choices=["mle", "ccdf-ls"], default="mle")
    p.add_argument("--k-min", type=int, default=None,
                   help="fixed power-law cutoff (default: KS-selected)")
    p.add_argument("--cliques", default=None,
                   help="comma-separated clique sizes to census into <out>.cliques.json")
    p.add_argument("-o", "--output", help="metrics JSON (default stdout)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("classify", help="turn a metrics record into verdicts")
    p.add_argument("metrics", help="metrics JSON from the metrics subcommand")
    p.add_argument("--thresholds", default=None,
                   help="JSON object overriding classification thresholds")
    p.add_argument("-o", "--output", help="report JSON (default stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("corpus", help="run the CFG pipeline over a directory of listings")
    p.add_argument("samples", help="directory with one disassembly file per sample")
    p.add_argument("--syntax", choices=["intel", "canonical"], default="canonical")
    p.add_argument("--strict-jumps", action="store_true")
    p.add_argument("--edges", choices=["jumps-only", "with-fallthrough"],
                   default="jumps-only")
    p.add_argument("--no-call-edges", action="store_true")
    p.add_argument("--gamma", choices=["mle", "ccdf-ls"], default="mle")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                   help="worker pool size (default: available CPUs)")
    p.add_argument("-o", "--output", help="corpus CSV (default stdout)")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("plotdata", help="emit plot-ready TSV files")
    p.add_argument("graph", nargs="?", default=None,
                   help="edge-list file for degree histogram and rank plots")
    p.add_argument("--ddg-dir", default=None,
                   help="ddg output directory for corpus-level size/scatter plots")
    p.add_argument("--format", choices=["edges", "matrix"], default="edges")
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("selftest", help="check the reference tables and oracles")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"binet: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"binet: {exc}", file=sys.stderr)
        return 1
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"binet: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"binet: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
