"""Command-line interface for py_bwcodes."""

import argparse
import csv
import io
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import yaml

from . import __version__
from .bounds import (
    ConstantWeightResolver,
    ReferenceTable,
    build_patched_code,
    load_reference_table,
    load_shipped_table,
    patch_lower_bound,
)
from .config import get_config_manager
from .corpus import (
    Provenance,
    code_from_clique,
    load_appendix,
    read_code_file,
    serialize_code,
    verify_code,
)
from .defaults import get_default_yaml
from .exact import SearchBudget, max_clique_exact
from .exceptions import BWCodesError, CapacityError, ParseError, UsageError
from .graph import build_graph, clique_is_code, export_dimacs
from .greedy import GreedyConfig, greedy_restarts
from .logger import get_logger
from .words import CodeParams, WeightMode

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

TABLE_COLUMNS = [
    "length",
    "weight",
    "constant_ref",
    "bounded_ref",
    "bounded_computed",
    "status",
]


@dataclass
class RunRecord:
    """Everything needed to repeat a search run."""

    params: Dict[str, Any]
    solver: str
    config: Dict[str, Any]
    size: int
    proven_optimal: bool
    seed: Optional[int]
    elapsed: float
    output: Optional[str]
    argv: List[str] = field(default_factory=list)

    def to_yaml(self) -> str:
        return yaml.safe_dump(asdict(self), sort_keys=False)


def _params_from_args(args) -> CodeParams:
    return CodeParams(args.length, args.distance, args.weight, WeightMode(args.mode))


def _search_settings(args) -> Dict[str, Any]:
    """Search section of the configuration with command-line overrides applied."""
    settings = dict(get_config_manager().get_section("search"))
    overrides = {
        "restarts": getattr(args, "restarts", None),
        "sample_fraction": getattr(args, "sample_fraction", None),
        "threshold": getattr(args, "threshold", None),
        "jobs": getattr(args, "jobs", None),
    }
    settings.update({k: v for k, v in overrides.items() if v is not None})
    if getattr(args, "coloring_bound", False):
        settings["coloring_bound"] = True
    return settings


def _draw_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


def _greedy_config(settings: Dict[str, Any], seed: int) -> GreedyConfig:
    return GreedyConfig(
        sample_fraction=float(settings["sample_fraction"]),
        threshold_y=int(settings["threshold"]),
        restarts=int(settings["restarts"]),
        master_seed=seed,
        coloring_bound=bool(settings["coloring_bound"] or settings["greedy_coloring_bound"]),
        jobs=int(settings["jobs"]),
    )


def _load_table(args) -> ReferenceTable:
    path = getattr(args, "table", None)
    if path:
        return load_reference_table(Path(path).read_text(), source_name=str(path))
    return load_shipped_table()


def cmd_search(args) -> int:
    """Build the graph, run a solver and write the code it finds."""
    params = _params_from_args(args)
    settings = _search_settings(args)
    graph = build_graph(params, cap=int(settings["enumeration_cap"]))

    seed = None
    if args.solver == "exact":
        budget = SearchBudget(time_limit=args.time_limit)
        result = max_clique_exact(graph, budget=budget, coloring_bound=settings["coloring_bound"])
        clique, proven, elapsed = result.clique, result.proven_optimal, result.elapsed
        provenance = Provenance.EXACT
        echo = {"time_limit": args.time_limit, "coloring_bound": settings["coloring_bound"]}
    else:
        seed = args.seed if args.seed is not None else _draw_seed()
        config = _greedy_config(settings, seed)
        result = greedy_restarts(graph, config)
        clique, proven, elapsed = result.clique, False, result.elapsed
        provenance = Provenance.GREEDY
        echo = asdict(config)
        echo["best_restart_index"] = result.best_restart_index

    if not clique_is_code(graph, clique):
        raise RuntimeError("solver returned a vertex set that is not a clique")

    code = code_from_clique(graph, clique, provenance)
    out_path = Path(args.out) if args.out else Path(f"A_{params.n}_{params.d}_{params.w}.txt")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "wb") as sink:
        serialize_code(code, sink)

    if seed is not None:
        print(f"seed: {seed}")
    if args.solver == "exact":
        status = "optimal" if proven else "NOT proven optimal (budget exhausted)"
    else:
        status = "greedy lower bound"
    print(f"{params}: size {code.size}, {status}")
    print(f"proven_optimal: {str(proven).lower()}")
    print(f"wrote {out_path}")

    if not args.no_record:
        record = RunRecord(
            params={"n": params.n, "d": params.d, "w": params.w, "mode": params.mode.value},
            solver=args.solver,
            config=echo,
            size=code.size,
            proven_optimal=proven,
            seed=seed,
            elapsed=round(elapsed, 6),
            output=str(out_path),
            argv=list(args.argv or []),
        )
        record_path = Path(args.record) if args.record else out_path.with_suffix(".run.yaml")
        record_path.write_text(record.to_yaml())

    return EXIT_OK


def cmd_verify(args) -> int:
    """Verify a code file, or a shipped appendix listing, against its parameters."""
    if args.appendix:
        try:
            n, d, w = (int(x) for x in args.appendix.split(","))
        except ValueError as exc:
            raise UsageError(f"--appendix expects n,d,w, got {args.appendix!r}") from exc
        code = load_appendix(n, d, w, WeightMode(args.mode))
    else:
        if args.path is None:
            raise UsageError("give a code file or --appendix n,d,w")
        if None in (args.length, args.distance, args.weight):
            raise UsageError("verifying a file needs -n, -d and -w")
        path = Path(args.path)
        if not path.is_file():
            raise FileNotFoundError(f"no such code file: {path}")
        code = read_code_file(path, _params_from_args(args))

    report = verify_code(code)
    print(report.render())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_bound(args) -> int:
    """Print the patching lower bound and the residue class attaining it."""
    bounds_config = get_config_manager().get_section("bounds")
    resolver = ConstantWeightResolver(
        _load_table(args),
        max_vertices=int(bounds_config["backfill_max_vertices"]),
        time_limit=bounds_config["backfill_time_limit"],
    )
    n, d, w = args.length, args.distance, args.weight

    if args.emit:
        bound, code = build_patched_code(n, d, w, resolver)
        with open(args.emit, "wb") as sink:
            serialize_code(code, sink)
    else:
        bound = patch_lower_bound(n, d, w, resolver=resolver)

    terms = " + ".join(f"A({n},{d},{j})={t}" for j, t in zip(bound.weights, bound.terms))
    print(f"lower bound: {bound.value}")
    print(f"residue: m={bound.residue}")
    print("weights: {" + ",".join(str(j) for j in bound.weights) + "}")
    print(f"terms: {terms}")
    if args.emit:
        print(f"wrote {args.emit}")
    return EXIT_OK


def parse_row_spec(spec: Optional[str], available: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """
    Select (n, w) rows. Items are "n", "n:w" or "n1-n2", comma separated;
    None selects everything and "" selects nothing.
    """
    if spec is None:
        return list(available)
    chosen = set()
    for item in (part.strip() for part in spec.split(",")):
        if not item:
            continue
        try:
            if ":" in item:
                n, w = (int(x) for x in item.split(":"))
                chosen.update(r for r in available if r == (n, w))
            elif "-" in item:
                lo, hi = (int(x) for x in item.split("-"))
                chosen.update(r for r in available if lo <= r[0] <= hi)
            else:
                chosen.update(r for r in available if r[0] == int(item))
        except ValueError as exc:
            raise UsageError(f"bad row selector {item!r}") from exc
    return [r for r in available if r in chosen]


def _table_row(
    args, table: ReferenceTable, d: int, n: int, w: int, settings, seed: int
) -> Dict[str, Any]:
    constant = table.lookup(n, d, w, WeightMode.CONSTANT)
    bounded = table.lookup(n, d, w, WeightMode.BOUNDED)
    solver = args.solver
    if solver == "auto":
        solver = "exact" if bounded is not None and bounded.optimal else "greedy"

    graph = build_graph(CodeParams(n, d, w), cap=int(settings["enumeration_cap"]))
    if solver == "exact":
        result = max_clique_exact(
            graph,
            budget=SearchBudget(time_limit=args.time_limit),
            coloring_bound=settings["coloring_bound"],
        )
        computed, proven = result.size, result.proven_optimal
    else:
        result = greedy_restarts(graph, _greedy_config(settings, seed))
        computed, proven = result.size, False

    exact_row = bounded is not None and bounded.optimal and solver == "exact"
    if bounded is None:
        status = "optimal" if proven else "found"
    elif exact_row:
        if not proven:
            status = "unproven"
        else:
            status = "match" if computed == bounded.value else "mismatch"
    else:
        status = "attained" if computed >= bounded.value else "below"

    return {
        "length": n,
        "weight": w,
        "constant_ref": constant.value if constant else "",
        "bounded_ref": bounded.value if bounded else "",
        "starred": bounded is not None and not bounded.optimal,
        "bounded_computed": computed,
        "status": status,
        "exact_row": exact_row,
        "solver": solver,
    }


def _render_table(rows: List[Dict[str, Any]], d: int, fmt: str) -> str:
    if fmt == "markdown":
        lines = [
            f"Distance {d}",
            "",
            "| Length | Weight | Constant | Bounded | Computed | Status |",
            "|---:|---:|---:|---:|---:|:---|",
        ]
        for row in rows:
            star = "★" if row["starred"] else ""
            lines.append(
                f"| {row['length']} | {row['weight']} | {row['constant_ref']} | "
                f"{row['bounded_ref']}{star} | {row['bounded_computed']} | {row['status']} |"
            )
        return "\n".join(lines) + "\n"

    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=TABLE_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_table(args) -> int:
    """Recompute one distance block of the reference tables."""
    table = _load_table(args)
    settings = _search_settings(args)
    fmt = args.format or get_config_manager().get_section("tables").get("format", "csv")
    selected = parse_row_spec(args.rows, table.rows(args.distance))
    seed = args.seed if args.seed is not None else _draw_seed()

    rows = []
    for n, w in selected:
        row = _table_row(args, table, args.distance, n, w, settings, seed)
        get_logger().info("Row n={} w={}: {}", n, w, row["status"])
        rows.append(row)

    if any(r["solver"] == "greedy" for r in rows):
        # stdout holds only the table
        print(f"seed: {seed}", file=sys.stderr)
    sys.stdout.write(_render_table(rows, args.distance, fmt))
    failed = [r for r in rows if r["exact_row"] and r["status"] != "match"]
    return EXIT_FAILED if failed else EXIT_OK


def cmd_export_graph(args) -> int:
    """Write the compatibility graph in DIMACS format."""
    params = _params_from_args(args)
    settings = _search_settings(args)
    graph = build_graph(params, cap=int(settings["enumeration_cap"]))
    if args.out:
        with open(args.out, "wb") as sink:
            export_dimacs(graph, sink)
        print(f"wrote {args.out}: {graph.num_vertices} vertices, {graph.edge_count()} edges")
    else:
        sys.stdout.flush()
        export_dimacs(graph, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_config_show(args) -> int:
    """Show the configuration file in use."""
    config_manager = get_config_manager()
    config_path = config_manager.get_config_path() or config_manager.discover_config()

    if config_path is None:
        print("Configuration file: none (built-in defaults)")
        print("\nEffective configuration:")
        print("-" * 60)
        print(yaml.safe_dump(config_manager.get_config(), sort_keys=False), end="")
        print("-" * 60)
        return EXIT_OK

    print(f"Configuration file: {config_path}")
    print(f"Exists: {config_path.exists()}")
    if config_path.exists():
        print("\nConfiguration content:")
        print("-" * 60)
        print(config_path.read_text())
        print("-" * 60)
    return EXIT_OK


def cmd_config_init(args) -> int:
    """Write a configuration file with the default settings."""
    output_path = Path(args.output) if args.output else Path.cwd() / "bwcodes.yaml"

    if output_path.exists() and not args.force:
        print(f"Error: {output_path} already exists. Use --force to overwrite.", file=sys.stderr)
        return EXIT_FAILED

    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(get_default_yaml(args.name or "py_bwcodes"))
    print(f"Created configuration file: {output_path}")
    return EXIT_OK


def cmd_config_validate(args) -> int:
    """Validate a configuration file."""
    config_path = Path(args.file) if args.file else get_config_manager().discover_config()
    if config_path is None:
        print("Error: no configuration file found", file=sys.stderr)
        return EXIT_FAILED

    print(f"Validating: {config_path}")
    try:
        with open(config_path, "r") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        print(f"Error: Invalid YAML syntax: {e}", file=sys.stderr)
        return EXIT_FAILED

    if config is None:
        print("Warning: Configuration file is empty", file=sys.stderr)
        return EXIT_FAILED
    if not isinstance(config, dict):
        print("Error: top level must be a mapping", file=sys.stderr)
        return EXIT_FAILED

    known = set(get_config_manager().SECTIONS)
    unknown = sorted(set(config) - known)
    if unknown:
        print(f"Warning: Unknown sections: {', '.join(unknown)}", file=sys.stderr)
        return EXIT_FAILED

    print("✓ Configuration is valid")
    return EXIT_OK


def _add_params(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("-n", "--length", type=int, required=required, help="word length n")
    parser.add_argument("-d", "--distance", type=int, required=required, help="minimum distance d")
    parser.add_argument("-w", "--weight", type=int, required=required, help="weight parameter w")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in WeightMode],
        default=WeightMode.BOUNDED.value,
        help="weight constraint (default: bounded)",
    )


def _add_greedy_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--restarts", type=int, help="greedy restarts (default from config: 1000)")
    parser.add_argument("--sample-fraction", type=float, help="sampled fraction x/s (default 0.1)")
    parser.add_argument("--threshold", type=int, help="switch to exact search at y vertices (default 100)")
    parser.add_argument("--seed", type=int, help="master seed for all randomness")
    parser.add_argument("--jobs", type=int, help="worker processes for greedy restarts")
    parser.add_argument(
        "--coloring-bound", action="store_true", help="use the colouring bound in exact search"
    )
    parser.add_argument("--time-limit", type=float, help="wall-clock limit in seconds for exact search")


def build_parser() -> Tuple[argparse.ArgumentParser, argparse.ArgumentParser]:
    parser = argparse.ArgumentParser(
        prog="py_bwcodes",
        description="py_bwcodes - optimal bounded-weight binary codes via maximum clique search",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-c", "--config", help="configuration file (default: auto-discover)")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subparsers.add_parser("version", help="Show version")

    search = subparsers.add_parser("search", help="Search for a large code")
    _add_params(search)
    search.add_argument("--solver", choices=["exact", "greedy"], default="exact")
    _add_greedy_options(search)
    search.add_argument("-o", "--out", help="code file to write (default: ./A_n_d_w.txt)")
    search.add_argument("--record", help="run record path (default: <out>.run.yaml)")
    search.add_argument("--no-record", action="store_true", help="do not write a run record")
    search.set_defaults(func=cmd_search)

    verify = subparsers.add_parser("verify", help="Verify a code file")
    verify.add_argument("path", nargs="?", help="code file")
    _add_params(verify, required=False)
    verify.add_argument("--appendix", help="verify the shipped listing n,d,w instead of a file")
    verify.set_defaults(func=cmd_verify)

    bound = subparsers.add_parser("bound", help="Patching lower bound from constant-weight values")
    bound.add_argument("-n", "--length", type=int, required=True)
    bound.add_argument("-d", "--distance", type=int, required=True)
    bound.add_argument("-w", "--weight", type=int, required=True)
    bound.add_argument("--table", help="reference table file (default: shipped tables)")
    bound.add_argument("--emit", help="also write a patched code attaining the bound")
    bound.set_defaults(func=cmd_bound)

    table = subparsers.add_parser("table", help="Recompute a distance block of the reference tables")
    table.add_argument("-d", "--distance", type=int, required=True)
    table.add_argument("--rows", help='rows to run: "n", "n:w" or "n1-n2", comma separated')
    table.add_argument("--solver", choices=["auto", "exact", "greedy"], default="auto")
    table.add_argument("--format", choices=["csv", "markdown"])
    table.add_argument("--table", help="reference table file (default: shipped tables)")
    _add_greedy_options(table)
    table.set_defaults(func=cmd_table)

    export = subparsers.add_parser("export-graph", help="Write the compatibility graph as DIMACS")
    _add_params(export)
    export.add_argument("-o", "--out", help="output file (default: stdout)")
    export.set_defaults(func=cmd_export_graph)

    config_parser = subparsers.add_parser("config", help="Manage configuration")
    config_subparsers = config_parser.add_subparsers(dest="subcommand")

    show_parser = config_subparsers.add_parser("show", help="Show current configuration")
    show_parser.set_defaults(func=cmd_config_show)

    init_parser = config_subparsers.add_parser("init", help="Initialize new configuration file")
    init_parser.add_argument("-o", "--output", help="Output path (default: ./bwcodes.yaml)")
    init_parser.add_argument("--name", help="Stem for the suggested log file")
    init_parser.add_argument("-f", "--force", action="store_true", help="Overwrite existing file")
    init_parser.set_defaults(func=cmd_config_init)

    validate_parser = config_subparsers.add_parser("validate", help="Validate configuration file")
    validate_parser.add_argument("file", nargs="?", help="Config file to validate")
    validate_parser.set_defaults(func=cmd_config_validate)

    return parser, config_parser


def main(argv: Optional[list] = None) -> int:
    """Main CLI entry point."""
    parser, config_parser = build_parser()
    raw_argv = list(sys.argv[1:] if argv is None else argv)

    try:
        args = parser.parse_args(raw_argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.argv = raw_argv

    if args.command == "version":
        print(f"py_bwcodes version {__version__}")
        return EXIT_OK

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    if args.command == "config" and args.subcommand is None:
        config_parser.print_help()
        return EXIT_OK

    try:
        logger = get_logger()
        # init and validate work on the file itself and must run when it is broken
        repairing = args.command == "config" and args.subcommand in ("init", "validate")
        if args.config and not repairing:
            logger.set_config(Path(args.config))
        return args.func(args)
    except (UsageError, ParseError, FileNotFoundError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except BWCodesError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        get_logger().exception(e, context={"command": args.command})
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
