"""Command-line front end.

    hcp3 gen k10 -o k10.hcp
    hcp3 convert -p sgate -i k10.hcp -o out.hcp --trace out.trc --report r.txt
        (also writes out.trc.1, out.trc.2: one trace per stage)
    hcp3 verify -i k10.hcp -c out.hcp --trace out.trc
    hcp3 stats -i out.hcp
    hcp3 dot -i k10.hcp -o k10.dot
    hcp3 table1 --quick
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import generators
from .graph_core import (
    GraphError,
    Provenance,
    ProvenanceError,
    compose_provenance,
    degrees,
    export_dot,
    parse_graph,
    parse_tsplib,
    read_trace,
    serialize_graph,
    write_graph,
    write_trace,
)
from .reductions import ConversionError, run_pipeline

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class CliError(Exception):
    pass


def _read(path: str, fmt: str = "hcp"):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_tsplib(text) if fmt == "tsplib" else parse_graph(text)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def cmd_gen(args) -> int:
    try:
        g = generators.generate(args.name)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc).strip("'\"")) from None
    _write_text(args.output, serialize_graph(g))
    return EXIT_OK


def cmd_convert(args) -> int:
    g = _read(args.input, args.format)
    try:
        out, prov, rep = run_pipeline(args.pipeline, g)
    except ConversionError as exc:
        raise CliError(str(exc)) from None
    _write_text(args.output, serialize_graph(out))
    if args.trace:
        stages = prov.stage_provenances() if args.stage_traces and len(prov.levels) > 1 else []
        targets = [(prov, args.trace)] + [(p, f"{args.trace}.{i}") for i, p in enumerate(stages, 1)]
        for p, path in targets:
            try:
                write_trace(p, path)
            except OSError as exc:
                raise CliError(f"cannot write {path}: {exc.strerror}") from None
    if args.report:
        _write_text(args.report, rep.to_text())
    else:
        print(f"{args.pipeline}: {g.n} -> {out.n} vertices, {g.num_edges} -> {out.num_edges} edges")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import SearchBudget, check_equivalence

    g = _read(args.input, args.format)
    conv = _read(args.converted)
    try:
        prov = read_trace(args.trace)
    except OSError as exc:
        raise CliError(f"cannot read {args.trace}: {exc.strerror}") from None
    except GraphError as exc:
        raise CliError(f"{args.trace}: {exc}") from None
    if prov.input_n != g.n or prov.output_n != conv.n:
        raise CliError(
            f"trace maps {prov.output_n} -> {prov.input_n} vertices, "
            f"but the graphs have {conv.n} and {g.n}"
        )
    prov = _with_stage_traces(prov, args.trace)
    factor = None
    if args.count:
        # cycle counts are comparable only where a conversion multiplies them by a known factor
        factor = _count_factor(prov.stage, g, conv)
    try:
        v = check_equivalence(g, conv, prov, SearchBudget(args.budget), count_factor=factor)
    except ProvenanceError as exc:
        raise CliError(str(exc)) from None
    print(f"status: {v.status}")
    print(f"input_hamiltonian: {_tri(v.input_hamiltonian)}")
    print(f"converted_hamiltonian: {_tri(v.output_hamiltonian)}")
    if v.lift_valid is not None:
        print(f"lift_valid: {_tri(v.lift_valid)}")
        print(f"lifted_cycle: {' '.join(map(str, v.lifted or []))}")
    if v.input_count is not None:
        print(f"input_count: {v.input_count}")
        print(f"converted_count: {v.output_count}")
    if args.count and factor is None:
        print("count_check: skipped (no exact count identity for this conversion)")
    if v.detail:
        print(f"detail: {v.detail}")
    return {"equivalent": EXIT_OK, "inequivalent": EXIT_NO}.get(v.status, EXIT_UNKNOWN)


def _with_stage_traces(prov: Provenance, path: str) -> Provenance:
    """Attach the per-stage traces ``path.1``, ``path.2``, ... when they
    compose to ``prov``. They only speed up the search."""
    stages = []
    while os.path.exists(f"{path}.{len(stages) + 1}"):
        try:
            stages.append(read_trace(f"{path}.{len(stages) + 1}"))
        except (OSError, GraphError):
            stages = []
            break
    if not stages or prov.collapsed:
        return prov
    try:
        comp = stages[0]
        for st in stages[1:]:
            comp = compose_provenance(st, comp)
    except ProvenanceError:
        comp = None
    if comp is None or comp != prov:
        print(f"hcp3: warning: stage traces next to {path} do not match it; ignoring them", file=sys.stderr)
        return prov
    return Provenance(prov.stage, prov.input_n, prov.origin, prov.collapsed, tuple(st.origin for st in stages))


def _count_factor(stage: str, g, conv) -> int | None:
    head = stage.split("+")[-1].split(":")[0]
    if stage in ("karp", "identity") or head in ("karp", "bound"):
        return 1
    if head == "cubify" and not g.directed and "collapsed" not in stage:
        return 2 ** int((degrees(g).degree == 2).sum())
    return None


def _tri(x) -> str:
    return "unknown" if x is None else str(bool(x)).lower()


def cmd_stats(args) -> int:
    g = _read(args.input, args.format)
    prof = degrees(g)
    print(f"mode: {g.mode}")
    print(f"vertices: {g.n}")
    print(f"edges: {g.num_edges}")
    print(f"k: {prof.k}")
    if g.directed:
        print(f"max_in: {prof.max_in}")
        print(f"max_out: {prof.max_out}")
    print(f"max_degree: {prof.max_degree}")
    print(f"mean_degree: {prof.mean_degree:.4f}")
    hist = {}
    for d in prof.degree.tolist():
        hist[d] = hist.get(d, 0) + 1
    print("degree_histogram: " + " ".join(f"{d}:{c}" for d, c in sorted(hist.items())))
    return EXIT_OK


def cmd_dot(args) -> int:
    g = _read(args.input, args.format)
    _write_text(args.output, export_dot(g))
    return EXIT_OK


def cmd_table1(args) -> int:
    from .reductions import quick_3hcp, sgate_pipeline

    bad = 0
    head = f"{'instance':16s} {'N':>4s} {'sgate':>10s} {'expected':>10s}"
    if args.quick:
        head += f" {'quick':>9s} {'expected':>9s} {'<=25k':>6s}"
    print(head)
    for inst in generators.TABLE1:
        t0 = time.perf_counter()
        g = generators.named(inst.name)
        out, _, _ = sgate_pipeline(g)
        mark = "" if out.n == inst.sgate_vertices else "  MISMATCH"
        bad += bool(mark)
        line = f"{inst.name:16s} {g.n:4d} {out.n:10,d} {inst.sgate_vertices:10,d}"
        if args.quick:
            q, _, rep = quick_3hcp(g)
            line += f" {q.n:9,d} {inst.quick_vertices:9,d} {str(rep.within_25k).lower():>6s}"
        line += f"  ({time.perf_counter() - t0:.2f}s){mark}"
        print(line)
    print(f"s-gate column: {len(generators.TABLE1) - bad}/{len(generators.TABLE1)} match")
    return EXIT_OK if bad == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hcp3", description="Convert HCP instances to cubic HCP and check them.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=["hcp", "tsplib"], default="hcp", help="input file format")

    sp = sub.add_parser("gen", help="write a generated or embedded instance")
    sp.add_argument("name", help="k<N>, andrasfai:<K>, paley:<Q>, knight:<R>x<C>, or a named instance")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("convert", help="run a conversion pipeline")
    sp.add_argument("-p", "--pipeline", required=True, help="karp, cubify, sgate, quick, bound:D or 3hcp:D")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--trace", help="write the composed provenance here, and each stage's to TRACE.1, TRACE.2, ...")
    sp.add_argument(
        "--no-stage-traces", dest="stage_traces", action="store_false", help="write only the composed trace"
    )
    sp.add_argument("--report", help="write the conversion report here")
    add_format(sp)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("verify", help="check that a converted graph is equivalent to its input")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-c", "--converted", required=True)
    sp.add_argument("--trace", required=True, help="composed trace; stage traces beside it are used if present")
    sp.add_argument("--count", action="store_true", help="also compare cycle counts where an identity is known")
    sp.add_argument("--budget", type=int, default=10**8, help="node expansions per search")
    add_format(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("stats", help="print size and degree statistics")
    sp.add_argument("-i", "--input", required=True)
    add_format(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("dot", help="export Graphviz DOT")
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-o", "--output", required=True)
    add_format(sp)
    sp.set_defaults(func=cmd_dot)

    sp = sub.add_parser("table1", help="reproduce the benchmark table")
    sp.add_argument("--quick", action="store_true", help="also run the quick pipeline")
    sp.set_defaults(func=cmd_table1)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "budget", 1) is not None and getattr(args, "budget", 1) <= 0:
        print("hcp3: error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"hcp3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
