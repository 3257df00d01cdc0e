"""Command-line frontend.

Exit codes: 0 success, 1 domain error (degenerate or unsuitable input),
2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .axioms import AxiomConfig, check_axioms, sweep_ratios
from .elites import c_core_elite, core_decomposition, read_elite_file, rich_club
from .errors import DomainError, GraphFormatError, PowersymError
from .export import (
    fmt_real,
    report_to_dict,
    shift_sidecar,
    write_diagram_csv,
    write_sweep_csv,
    write_temporal_csv,
)
from .generators import (
    DegreeSequence,
    ElitisticParams,
    degree_symmetry_point,
    expected_influence,
    generate_configuration,
    generate_elitistic,
    generate_elitistic_growth,
    generate_grid,
)
from .graph import ingest_edge_list, write_edge_list, write_timestamped
from .influence import shift_diagram
from .oracles import exact_pairing_expectation, min_elite_exhaustive, monte_carlo_expected_influence
from .temporal import build_frames, elite_fraction_series

THREADS_ENV = "POWERSYM_THREADS"


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# argument types
# --------------------------------------------------------------------------


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def rational(text):
    try:
        cfg = AxiomConfig(text, 1)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {text!r}") from None
    return cfg.c_d


def elite_selector(text):
    kind, sep, arg = text.partition(":")
    if not sep or kind not in ("rich", "core", "file") or not arg:
        raise argparse.ArgumentTypeError(f"selector must be rich:<k>, core:<c> or file:<path>, got {text!r}")
    if kind == "file":
        return kind, arg
    return kind, positive_int(arg)


# --------------------------------------------------------------------------
# I/O helpers
# --------------------------------------------------------------------------


@contextlib.contextmanager
def open_output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def load_graph(args, has_timestamps=False):
    mode = args.self_loops
    if args.graph == "-":
        return ingest_edge_list(sys.stdin, self_loop_mode=mode, dedup=args.dedup, has_timestamps=has_timestamps)
    return ingest_edge_list(Path(args.graph), self_loop_mode=mode, dedup=args.dedup, has_timestamps=has_timestamps)


def read_ordering(graph, path):
    index = {label: i for i, label in enumerate(graph.labels)}
    order = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            label = line.strip()
            if not label or label.startswith("#"):
                continue
            if label not in index:
                raise DomainError(f"ordering line {lineno}: unknown vertex {label!r}")
            order.append(index[label])
    return order


def dump_json(obj, out):
    json.dump(obj, out, indent=2)
    out.write("\n")


def resolve_elite(graph, selector):
    kind, arg = selector
    if kind == "rich":
        return rich_club(graph, arg)
    if kind == "core":
        return c_core_elite(graph, core_decomposition(graph), arg)
    with open(arg, encoding="utf-8") as fh:
        return read_elite_file(graph, fh)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_shift(args):
    graph = load_graph(args)
    if graph.n < 2:
        raise DomainError("graph too small")
    ordering = read_ordering(graph, args.ordering) if args.ordering else None
    diagram = shift_diagram(graph, ordering)
    with open_output(args.output) as out:
        write_diagram_csv(diagram, out, sample=args.sample)
    sidecar = args.sidecar
    if sidecar is None and args.output not in (None, "-"):
        sidecar = str(Path(args.output).with_suffix(".json"))
    if sidecar:
        with open_output(sidecar) as out:
            dump_json(shift_sidecar(diagram), out)


def cmd_axioms(args):
    graph = load_graph(args)
    partition = resolve_elite(graph, args.elite)
    report = check_axioms(graph, partition, AxiomConfig(args.cd, args.cr))
    with open_output(args.output) as out:
        dump_json(report_to_dict(report), out)


def cmd_sweep(args):
    graph = load_graph(args)
    table = sweep_ratios(graph, args.method, AxiomConfig(args.cd, args.cr), grid=args.grid, points=args.points)
    with open_output(args.output) as out:
        write_sweep_csv(table, out)


def cmd_temporal(args):
    edges = load_graph(args, has_timestamps=True)
    series = elite_fraction_series(
        build_frames(edges, args.frames), method=args.method,
        self_loop_mode=args.self_loops, threads=args.threads,
    )
    for frame in series.frames:
        for flag in frame.flags:
            print(f"powersym: frame {frame.t_index}: {flag}", file=sys.stderr)
    with open_output(args.output) as out:
        write_temporal_csv(series, out)


def read_degrees(spec):
    path = Path(spec)
    if path.is_file():
        return DegreeSequence.parse(path.read_text(encoding="utf-8"))
    return DegreeSequence.parse(spec)


def cmd_generate(args):
    header = [f"powersym {__version__}"]
    if args.model == "config-model":
        seq = read_degrees(args.degrees)
        graph = generate_configuration(seq, seed=args.seed)
        header += [f"generate config-model n={seq.n} m={seq.m} seed={args.seed}", "self-loops: none"]
    elif args.model == "elitistic":
        params = ElitisticParams(args.z, args.b)
        graph, _ = generate_elitistic(params)
        header += [f"generate elitistic Z={args.z} b={args.b} elite=0..{params.elite_size - 1}"]
    elif args.model == "grid":
        graph = generate_grid(args.side)
        header += [f"generate grid side={args.side}"]
    else:
        edges = generate_elitistic_growth(args.n, args.b)
        header += [f"generate elitistic-growth n={args.n} b={args.b}"]
        with open_output(args.output) as out:
            write_timestamped(edges, out, header)
        return
    with open_output(args.output) as out:
        write_edge_list(graph, out, header)


def cmd_oracle_min_elite(args):
    graph = load_graph(args)
    result = min_elite_exhaustive(graph, AxiomConfig(args.cd, args.cr))
    payload = {
        "n": graph.n,
        "size": result.size,
        "example_set": None if result.example_set is None else [graph.labels[v] for v in result.example_set],
        "i_ee": result.i_ee,
        "sqrt_bound_holds": result.sqrt_bound_holds,
    }
    with open_output(args.output) as out:
        dump_json(payload, out)


def cmd_oracle_expect(args):
    seq = read_degrees(args.degrees)
    mc = monte_carlo_expected_influence(seq, args.i, args.trials, seed=args.seed, threads=args.threads)
    formula = expected_influence(seq, args.i)
    exact = exact_pairing_expectation(seq, args.i)
    payload = {
        "n": seq.n,
        "m": seq.m,
        "i": args.i,
        "kappa": degree_symmetry_point(seq),
        "trials": args.trials,
        "seed": args.seed,
        "monte_carlo": {
            "mean_ep": fmt_real(mc.mean_ep), "mean_ee": fmt_real(mc.mean_ee), "mean_pp": fmt_real(mc.mean_pp),
            "stderr_ep": fmt_real(mc.stderr_ep), "stderr_ee": fmt_real(mc.stderr_ee),
            "stderr_pp": fmt_real(mc.stderr_pp),
        },
        "product_formula": {k: fmt_real(v) for k, v in formula._asdict().items()},
        "exact_pairing": {k: fmt_real(v) for k, v in exact._asdict().items()},
    }
    with open_output(args.output) as out:
        dump_json(payload, out)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common(suppress):
    # Shared options, accepted both before and after the subcommand name.
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--self-loops", choices=("implicit", "none"),
                   default=default if suppress else "implicit",
                   help="self-loop convention (default: implicit)")
    p.add_argument("--threads", type=positive_int, default=default if suppress else default_threads(),
                   help=f"worker upper bound (default: ${THREADS_ENV} or CPU count)")
    p.add_argument("--dedup", action="store_true", default=default if suppress else False,
                   help="collapse parallel edges on ingestion")
    return p


def _graph_arg(p):
    p.add_argument("graph", nargs="?", default="-", help="edge-list file ('-' for stdin)")
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")


def _add_analysis_commands(sub, common):
    p = sub.add_parser("shift", parents=[common], help="elite influence shift diagram (CSV + JSON sidecar)")
    _graph_arg(p)
    p.add_argument("--ordering", default=None, help="file with one vertex label per line (default: degree order)")
    p.add_argument("--sidecar", default=None, help="JSON sidecar path (default: OUTPUT with .json suffix)")
    p.add_argument("--sample", type=positive_int, default=None, help="emit about this many log-spaced rows")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("axioms", parents=[common], help="axiom report for one elite (JSON)")
    _graph_arg(p)
    p.add_argument("--elite", type=elite_selector, required=True, help="rich:<k>, core:<c> or file:<path>")
    p.add_argument("--cd", type=rational, default=AxiomConfig().c_d, help="dominance constant (default 1)")
    p.add_argument("--cr", type=rational, default=AxiomConfig().c_r, help="robustness constant (default 1)")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("sweep", parents=[common], help="dom/rob/dns over elite sizes (CSV)")
    _graph_arg(p)
    p.add_argument("--method", choices=("rich", "core"), default="rich")
    p.add_argument("--grid", choices=("full", "log"), default="full")
    p.add_argument("--points", type=positive_int, default=200)
    p.add_argument("--cd", type=rational, default=AxiomConfig().c_d)
    p.add_argument("--cr", type=rational, default=AxiomConfig().c_r)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("temporal", parents=[common], help="elite fraction at the symmetry point per growth frame (CSV)")
    _graph_arg(p)
    p.add_argument("--frames", type=positive_int, default=20)
    p.add_argument("--method", choices=("rich", "core"), default="rich")
    p.set_defaults(func=cmd_temporal)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powersym", parents=[_common(False)], description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"powersym {__version__}")
    common = _common(True)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_analysis_commands(sub, common)
    analyze = sub.add_parser("analyze", help="same commands as the top level")
    _add_analysis_commands(analyze.add_subparsers(dest="analysis", required=True), common)

    gen = sub.add_parser("generate", help="synthetic graphs in edge-list format")
    gsub = gen.add_subparsers(dest="model", required=True)
    p = gsub.add_parser("config-model", parents=[common])
    p.add_argument("--degrees", required=True, help="file or inline list such as 3,3,2,2,2")
    p.add_argument("--seed", type=int, default=0)
    p = gsub.add_parser("elitistic", parents=[common])
    p.add_argument("--z", type=positive_int, required=True)
    p.add_argument("--b", type=positive_int, default=1)
    p = gsub.add_parser("grid", parents=[common])
    p.add_argument("--side", type=positive_int, required=True)
    p = gsub.add_parser("elitistic-growth", parents=[common], help="timestamped growth process (u v t lines)")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--b", type=positive_int, default=1)
    for p in gsub.choices.values():
        p.add_argument("-o", "--output", default=None)
    gen.set_defaults(func=cmd_generate)

    orc = sub.add_parser("oracle", help="brute-force references (JSON)")
    osub = orc.add_subparsers(dest="oracle", required=True)
    p = osub.add_parser("min-elite", parents=[common])
    _graph_arg(p)
    p.add_argument("--cd", type=rational, default=AxiomConfig().c_d)
    p.add_argument("--cr", type=rational, default=AxiomConfig().c_r)
    p.set_defaults(func=cmd_oracle_min_elite)
    p = osub.add_parser("expect-config", parents=[common])
    p.add_argument("--degrees", required=True)
    p.add_argument("--i", type=positive_int, required=True)
    p.add_argument("--trials", type=positive_int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_oracle_expect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (GraphFormatError, OSError) as exc:
        print(f"powersym: error: {exc}", file=sys.stderr)
        return 2
    except (PowersymError, ValueError, IndexError) as exc:
        print(f"powersym: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
