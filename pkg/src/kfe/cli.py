"""Command-line front end.

Modes
-----
count   print the number of independent sets
stream  write the solution diff stream (text by default, ``--binary`` for
        varint pairs, ``--materialize`` for explicit vertex lines)
verify  cross-check both engines (and the exhaustive oracle on small inputs);
        exit 0 iff everything agrees
bench   run a family x size table with instrumentation, CSV or ``--json``
stats   one instrumented run condensed to a JSON report

Exit codes: 0 success, 1 verification mismatch, 2 parse/config error.
Set KFE_DEBUG_CHECKS=1 (or pass --debug-checks) to enable structural
assertions after every rollback.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import analysis
from .enumerator import (
    BinaryStreamSink,
    CollectSink,
    LimitSink,
    MaterializeSink,
    Sink,
    TextStreamSink,
    enumerate_linear_space,
    enumerate_reference,
)
from .errors import GraphParseError, GuardError
from .graph import Graph, generate, parse_dimacs, parse_edge_list

CSV_COLUMNS = "family,n,m,M,ops,ops_per_solution,peak_space,omega,q"


@dataclass
class RunConfig:
    mode: str
    input_path: str | None = None
    gen_spec: str | None = None
    fmt: str = "edgelist"
    engine: str = "linear"
    limit: int | None = None
    out: str | None = None
    json_out: bool = False
    materialize: bool = False
    binary: bool = False
    seed: int = 0
    families: list[str] | None = None
    sizes: list[int] | None = None
    debug: bool | None = None

    def __post_init__(self):
        if (self.input_path is None) == (self.gen_spec is None) and self.mode != "bench":
            raise ValueError("exactly one of --input and --gen is required")
        if self.limit is not None and self.limit < 1:
            raise ValueError("--limit must be at least 1")


def parse_gen_spec(spec: str, seed: int) -> Graph:
    """``family:arg[:arg...]`` generator syntax, e.g. star:5, grid:3:4,
    gnp:20:0.3, bipartite:10:10:0.05."""
    parts = spec.split(":")
    family, args = parts[0], parts[1:]
    try:
        if family in ("empty", "complete", "path", "star"):
            (n,) = args
            return generate(family, n=int(n))
        if family == "grid":
            rows, cols = args
            return generate("grid", rows=int(rows), cols=int(cols))
        if family in ("gnp", "random_gnp"):
            n, p = args
            return generate("random_gnp", n=int(n), p=float(p), seed=seed)
        if family in ("bipartite", "random_bipartite"):
            n1, n2, p = args
            return generate("random_bipartite", n1=int(n1), n2=int(n2), p=float(p), seed=seed)
    except ValueError as exc:
        raise ValueError(f"bad generator spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown generator family in {spec!r}")


def load_graph(cfg: RunConfig) -> Graph:
    if cfg.gen_spec is not None:
        return parse_gen_spec(cfg.gen_spec, cfg.seed)
    with open(cfg.input_path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if cfg.fmt == "dimacs":
        return parse_dimacs(text)
    return parse_edge_list(text)


def _enumerate(g: Graph, cfg: RunConfig, sink: Sink | None) -> int:
    if sink is not None and cfg.limit is not None:
        sink = LimitSink(sink, cfg.limit)
    if cfg.engine == "reference":
        return enumerate_reference(g, sink)
    return enumerate_linear_space(g, sink, debug=cfg.debug)


def _open_out(cfg: RunConfig, binary: bool = False):
    if cfg.out:
        return open(cfg.out, "wb" if binary else "w")
    return sys.stdout.buffer if binary else sys.stdout


def mode_count(g: Graph, cfg: RunConfig) -> int:
    print(_enumerate(g, cfg, None))
    return 0


def mode_stream(g: Graph, cfg: RunConfig) -> int:
    out = _open_out(cfg, binary=cfg.binary)
    try:
        if cfg.materialize:
            sink = MaterializeSink()
            _enumerate(g, cfg, sink)
            out.write("\n".join(" ".join(map(str, s)) for s in sink.solutions) + "\n")
        elif cfg.binary:
            _enumerate(g, cfg, BinaryStreamSink(out))
        else:
            _enumerate(g, cfg, TextStreamSink(out))
    finally:
        if cfg.out:
            out.close()
    return 0


def mode_verify(g: Graph, cfg: RunConfig) -> int:
    ref = CollectSink()
    lin = CollectSink()
    enumerate_reference(g, ref)
    enumerate_linear_space(g, lin, debug=True)
    if ref.diffs != lin.diffs:
        print("engine mismatch: diff streams differ", file=sys.stderr)
        return 1
    checked = "engines agree"
    if g.n <= analysis.BRUTE_FORCE_GUARD:
        from .enumerator import replay_diffs

        emitted = {frozenset(s) for s in replay_diffs(lin.diffs)}
        expected = analysis.brute_force_independent_sets(g)
        if len(lin.diffs) != len(expected) or emitted != expected:
            print("oracle mismatch: emitted solutions differ from brute force", file=sys.stderr)
            return 1
        checked = "engines and oracle agree"
    print(f"{checked}: {len(lin.diffs)} solutions", file=sys.stderr)
    return 0


def mode_stats(g: Graph, cfg: RunConfig) -> int:
    report = analysis.run_report(g, limit=cfg.limit, debug=bool(cfg.debug))
    out = _open_out(cfg)
    out.write(json.dumps(report, indent=2) + "\n")
    if cfg.out:
        out.close()
    return 0


def _bench_graph(family: str, n: int, seed: int) -> Graph:
    name, _, p = family.partition(":")
    if name in ("gnp", "random_gnp"):
        return generate("random_gnp", n=n, p=float(p or 0.3), seed=seed)
    if name in ("bipartite", "random_bipartite"):
        return generate("random_bipartite", n1=n // 2, n2=n - n // 2, p=float(p or 0.3), seed=seed)
    if name in ("empty", "complete", "path", "star"):
        return generate(name, n=n)
    raise ValueError(f"unknown bench family {family!r}")


def bench_suite(families: list[str], sizes: list[int], seed: int, limit: int | None = None) -> list[dict]:
    """Instrumented rows for every family x size pair; per-row oracle guard
    failures leave omega/q empty instead of stopping the suite."""
    rows = []
    for family in families:
        for n in sizes:
            g = _bench_graph(family, n, seed)
            count, stats = analysis.instrumented_run(g, limit=limit, debug=False)
            try:
                omega = analysis.clique_number(g)
                q = omega + 1
            except GuardError:
                omega = q = None
            rows.append(
                {
                    "family": family,
                    "n": g.n,
                    "m": g.m,
                    "M": count,
                    "ops": stats.total_ops,
                    "ops_per_solution": stats.total_ops / max(count, 1),
                    "peak_space": stats.peak_live,
                    "omega": omega,
                    "q": q,
                }
            )
    return rows


def mode_bench(cfg: RunConfig) -> int:
    rows = bench_suite(cfg.families or [], cfg.sizes or [], cfg.seed, cfg.limit)
    out = _open_out(cfg)
    if cfg.json_out:
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        out.write(CSV_COLUMNS + "\n")
        for r in rows:
            cells = [str(r[c] if r[c] is not None else "") for c in CSV_COLUMNS.split(",")]
            out.write(",".join(cells) + "\n")
    if cfg.out:
        out.close()
    return 0


def run(cfg: RunConfig) -> int:
    if cfg.mode == "bench":
        return mode_bench(cfg)
    g = load_graph(cfg)
    if cfg.mode == "count":
        return mode_count(g, cfg)
    if cfg.mode == "stream":
        return mode_stream(g, cfg)
    if cfg.mode == "verify":
        return mode_verify(g, cfg)
    if cfg.mode == "stats":
        return mode_stats(g, cfg)
    raise ValueError(f"unknown mode {cfg.mode!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kfe", description="Enumerate all independent sets of a graph.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="graph file to read")
    src.add_argument("--gen", metavar="SPEC", help="generate a graph, e.g. star:5, gnp:20:0.3")
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--mode", choices=("count", "stream", "verify", "bench", "stats"), default="count")
    p.add_argument("--engine", choices=("linear", "reference"), default="linear")
    p.add_argument("--limit", type=int, help="stop after this many solutions")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--json", action="store_true", help="JSON bench output instead of CSV")
    p.add_argument("--materialize", action="store_true", help="stream explicit vertex sets (may be much larger than the diff stream)")
    p.add_argument("--binary", action="store_true", help="binary diff stream")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--families", help="bench: comma-separated generator families")
    p.add_argument("--sizes", help="bench: comma-separated vertex counts")
    p.add_argument("--debug-checks", action="store_true", help="force rollback shadow checks on")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            mode=args.mode,
            input_path=args.input,
            gen_spec=args.gen,
            fmt=args.format,
            engine=args.engine,
            limit=args.limit,
            out=args.out,
            json_out=args.json,
            materialize=args.materialize,
            binary=args.binary,
            seed=args.seed,
            families=args.families.split(",") if args.families else None,
            sizes=[int(s) for s in args.sizes.split(",")] if args.sizes else None,
            debug=True if args.debug_checks else None,
        )
        return run(cfg)
    except (GraphParseError, ValueError, OSError) as exc:
        print(f"kfe: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
