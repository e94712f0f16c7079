#!/usr/bin/env python3
"""
polytri - Polytope Triangulator

Builds and checks the minimal triangulation of the associahedron, its
parking-function labels and the analogous triangulation of the permutohedron.
Data goes to standard output, logs and progress to standard error.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

import config
from assoc_triangulation import (
    check_associahedron_triangulation, simplex_count_recursion, triangulate_associahedron,
    validate_association,
)
from export import build_bundle, bundle_to_json, check_bundle, load_bundle, triangulation_to_off
from models import DomainError, PolytopeKind, PolytriError, ValidationReport
from parking import (
    decompose_pf, decomposition_count, enumerate_parking, format_parking_table, parking_count,
)
from permutohedron import (
    check_permutohedron_triangulation, triangulate_permutohedron, validate_permutohedron, zp_count,
)
from trees import catalan, enumerate_trees, loday_point

logger = logging.getLogger("polytri")

console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CONSTRUCTION_BOUNDS = {
    PolytopeKind.ASSOCIAHEDRON: config.MAX_ASSOC_DIM,
    PolytopeKind.PERMUTOHEDRON: config.MAX_PERM_DIM,
}

# counts: sizes up to which the "built" column is filled in
COUNTS_PARKING_ENUMERATION = 7


class UsageError(Exception):
    """Arguments that parse but fall outside what the command supports."""


def setup_logging(verbose: bool = False, debug: bool = False) -> None:
    """Route log records through rich on standard error."""
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = config.log_level()
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write data to a file, or to standard output when no file is given."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def format_coords(coords) -> str:
    """Format a point as (x1,x2,...)."""
    return "(" + ",".join(str(x) for x in coords) + ")"


# =============================================================================
# PRINTING
# =============================================================================

def print_trees(trees, with_coords: bool) -> None:
    """Print the trees of Y_n with their Loday points."""
    table = Table(title=f"Y_{trees[0].size}", box=box.ROUNDED)
    table.add_column("#", justify="right", style="dim")
    table.add_column("Tree", style="cyan")
    if with_coords:
        table.add_column("Loday point", style="green")
    for i, tree in enumerate(trees):
        row = [str(i), tree.code]
        if with_coords:
            row.append(format_coords(loday_point(tree)) if not tree.is_leaf else "-")
        table.add_row(*row)
    console.print(table)


def print_report(report: ValidationReport) -> None:
    """Human-readable check list on standard error."""
    table = Table(title=f"{report.kind.value} n={report.n}", box=box.ROUNDED)
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Details", style="dim")
    colors = {"pass": "green", "fail": "red", "skipped": "yellow"}
    for name, check in report.checks.items():
        status = check.status.value
        details = ", ".join(f"{key}={value}" for key, value in check.details.items())
        table.add_row(name, f"[{colors[status]}]{status}[/{colors[status]}]", details)
    err_console.print(table)
    if report.passed:
        err_console.print("[bold green]All checks passed[/bold green]")
    else:
        err_console.print(f"[bold red]Failed: {', '.join(report.failed_checks)}[/bold red]")


@dataclass
class CountRow:
    n: int
    recursion: int
    closed: Optional[int] = None
    built: Optional[int] = None

    @property
    def mismatch(self) -> bool:
        return any(value is not None and value != self.recursion for value in (self.closed, self.built))


def compute_counts(what: str, n_max: int) -> list[CountRow]:
    """Count rows for one sequence: recursion, closed form and built size."""
    rows = []
    if what == "simplices":
        for n in range(1, n_max + 1):
            built = triangulate_associahedron(n).simplex_count if n <= config.MAX_ASSOC_DIM else None
            rows.append(CountRow(n, simplex_count_recursion(n), parking_count(n), built))
    elif what == "parking":
        for n in range(1, n_max + 1):
            built = len(enumerate_parking(n)) if n <= COUNTS_PARKING_ENUMERATION else None
            rows.append(CountRow(n, decomposition_count(n), parking_count(n), built))
    else:
        for n in range(0, n_max + 1):
            built = triangulate_permutohedron(n).simplex_count if n <= config.MAX_PERM_DIM else None
            rows.append(CountRow(n, zp_count(n), None, built))
    return rows


def print_counts(what: str, rows: list[CountRow]) -> None:
    """Print a counts table, flagging rows where the values disagree."""
    table = Table(title=f"counts: {what}", box=box.ROUNDED)
    table.add_column("n", justify="right", style="cyan")
    table.add_column("recursion", justify="right")
    table.add_column("closed form", justify="right")
    table.add_column("built", justify="right")
    table.add_column("", style="red")
    for row in rows:
        table.add_row(
            str(row.n),
            str(row.recursion),
            "-" if row.closed is None else str(row.closed),
            "-" if row.built is None else str(row.built),
            "MISMATCH" if row.mismatch else "",
        )
    console.print(table)


# =============================================================================
# COMMANDS
# =============================================================================

def run_trees(args) -> int:
    """List the planar binary trees with n internal vertices."""
    if not 0 <= args.n <= config.MAX_TREE_VERTICES:
        raise UsageError(f"--n must lie in 0..{config.MAX_TREE_VERTICES}")
    if args.count_only:
        sys.stdout.write(f"{catalan(args.n)}\n")
        return EXIT_OK

    with_coords = not args.no_coords
    if with_coords and args.n > config.MAX_TREE_COORDS:
        raise UsageError(f"coordinates are listed up to n={config.MAX_TREE_COORDS}; use --no-coords")

    with err_console.status(f"[bold cyan]Enumerating Y_{args.n}...[/bold cyan]"):
        trees = enumerate_trees(args.n)

    if args.format == "json":
        entries = [
            {"tree": t.code, "coords": list(loday_point(t)) if with_coords and not t.is_leaf else None}
            for t in trees
        ]
        sys.stdout.write(json.dumps(entries, sort_keys=True, indent=2) + "\n")
    elif args.format == "text":
        lines = []
        for t in trees:
            if with_coords and not t.is_leaf:
                lines.append(f"{t.code} {format_coords(loday_point(t))}")
            else:
                lines.append(t.code)
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        print_trees(trees, with_coords)
    return EXIT_OK


def _check_polytope_bounds(kind: PolytopeKind, n: int) -> None:
    bound = CONSTRUCTION_BOUNDS[kind]
    if not 0 <= n <= bound:
        raise UsageError(f"--n must lie in 0..{bound} for --polytope {kind.value}")


def _triangulate(kind: PolytopeKind, n: int):
    if kind == PolytopeKind.ASSOCIAHEDRON:
        return triangulate_associahedron(n)
    return triangulate_permutohedron(n)


def _check(tri, seed: int, samples: int, hull_samples: int, geometry: bool) -> ValidationReport:
    if tri.kind == PolytopeKind.ASSOCIAHEDRON:
        return check_associahedron_triangulation(tri, seed, samples, hull_samples, geometry=geometry)
    return check_permutohedron_triangulation(tri, seed, samples, hull_samples, geometry=geometry)


def run_triangulate(args) -> int:
    """Build a triangulation and export it as JSON or OFF."""
    kind = PolytopeKind(args.polytope)
    _check_polytope_bounds(kind, args.n)
    if args.format == "off" and args.n > config.MAX_OFF_DIM:
        raise UsageError(f"OFF export needs --n <= {config.MAX_OFF_DIM}")

    with err_console.status(f"[bold cyan]Triangulating {kind.value} n={args.n}...[/bold cyan]"):
        tri = _triangulate(kind, args.n)
        report = _check(tri, args.seed, args.samples, args.hull_samples, geometry=args.validate)

    if args.format == "off":
        write_output(triangulation_to_off(tri), args.out)
    else:
        write_output(bundle_to_json(build_bundle(tri, args.seed, report)), args.out)

    if not report.passed:
        print_report(report)
        return EXIT_FAILED
    return EXIT_OK


def run_verify(args) -> int:
    """Validate a fresh triangulation or a stored bundle."""
    if args.samples < 0 or args.hull_samples < 0:
        raise UsageError("sample counts must be non-negative")

    if args.check_file:
        path = Path(args.check_file)
        if not path.is_file():
            raise UsageError(f"no such file: {path}")
        try:
            bundle = load_bundle(path)
        except DomainError as exc:
            err_console.print(f"[red]{exc}[/red]")
            return EXIT_FAILED
        bound = CONSTRUCTION_BOUNDS[bundle.kind]
        if bundle.n > bound:
            err_console.print(f"[red]bundle dimension {bundle.n} is above the bound {bound}[/red]")
            return EXIT_FAILED
        with err_console.status(f"[bold cyan]Checking {path}...[/bold cyan]"):
            report = check_bundle(bundle, args.seed, args.samples, args.hull_samples)
    else:
        if args.polytope is None or args.n is None:
            raise UsageError("verify needs --polytope and --n, or --check-file")
        kind = PolytopeKind(args.polytope)
        _check_polytope_bounds(kind, args.n)
        with err_console.status(f"[bold cyan]Validating {kind.value} n={args.n}...[/bold cyan]"):
            if kind == PolytopeKind.ASSOCIAHEDRON:
                report = validate_association(args.n, args.seed, args.samples, args.hull_samples)
            else:
                report = validate_permutohedron(args.n, args.seed, args.samples, args.hull_samples)

    sys.stdout.write(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n")
    print_report(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse '1,2,3', '(1,2,3)' or '[1, 2, 3]' into integers."""
    cleaned = text.strip().strip("()[]")
    try:
        return tuple(int(token) for token in cleaned.split(",") if token.strip())
    except ValueError as exc:
        raise UsageError(f"--decompose expects comma-separated integers, got {text!r}") from exc


def run_parking(args) -> int:
    """Print the parking-function table or decompose one sequence."""
    if args.decompose is not None:
        sequence = parse_sequence(args.decompose)
        try:
            decomposition = decompose_pf(sequence)
        except DomainError as exc:
            err_console.print(f"[red]{exc}[/red]")
            return EXIT_FAILED
        if args.format == "json":
            sys.stdout.write(json.dumps(decomposition.to_dict(), sort_keys=True) + "\n")
        else:
            sys.stdout.write(f"{decomposition}\n")
        return EXIT_OK

    if not 1 <= args.n <= config.MAX_PARKING_LENGTH:
        raise UsageError(f"--n must lie in 1..{config.MAX_PARKING_LENGTH}")
    with err_console.status("[bold cyan]Classifying parking functions...[/bold cyan]"):
        table = format_parking_table(args.n, all_lengths=args.all_lengths)
    sys.stdout.write(table)
    return EXIT_OK


def run_counts(args) -> int:
    """Print one of the count sequences up to --n-max."""
    if not 0 <= args.n_max <= config.MAX_COUNT_N:
        raise UsageError(f"--n-max must lie in 0..{config.MAX_COUNT_N}")
    with err_console.status(f"[bold cyan]Counting {args.what}...[/bold cyan]"):
        rows = compute_counts(args.what, args.n_max)

    if args.format == "text":
        sys.stdout.write(",".join(str(row.recursion) for row in rows) + "\n")
    else:
        print_counts(args.what, rows)

    mismatches = [row.n for row in rows if row.mismatch]
    if mismatches:
        logger.error("count mismatch for n in %s", mismatches)
        return EXIT_FAILED
    return EXIT_OK


# =============================================================================
# ARGUMENTS
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    """Build the argparse parser with one subcommand per command."""
    parser = argparse.ArgumentParser(
        prog="polytri",
        description="Minimal triangulations of the associahedron and the permutohedron.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {config.VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    parser.add_argument("--debug", action="store_true", help="log everything")
    commands = parser.add_subparsers(dest="command", required=True)

    trees = commands.add_parser("trees", help="list the planar binary trees Y_n")
    trees.add_argument("--n", type=int, required=True)
    trees.add_argument("--format", choices=["table", "text", "json"], default="table")
    trees.add_argument("--count-only", action="store_true")
    trees.add_argument("--no-coords", action="store_true")
    trees.set_defaults(handler=run_trees)

    polytopes = [k.value for k in PolytopeKind]

    triangulate = commands.add_parser("triangulate", help="build a triangulation and export it")
    triangulate.add_argument("--polytope", choices=polytopes, required=True)
    triangulate.add_argument("--n", type=int, required=True)
    triangulate.add_argument("--format", choices=["json", "off"], default="json")
    triangulate.add_argument("--out", help="output file (standard output when absent)")
    triangulate.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    triangulate.add_argument("--validate", action="store_true",
                             help="include the exact geometric checks in the validation summary")
    triangulate.add_argument("--samples", type=int, default=config.DEFAULT_INTERIOR_SAMPLES)
    triangulate.add_argument("--hull-samples", type=int, default=config.DEFAULT_HULL_SAMPLES)
    triangulate.set_defaults(handler=run_triangulate)

    verify = commands.add_parser("verify", help="run the validation suite")
    verify.add_argument("--polytope", choices=polytopes)
    verify.add_argument("--n", type=int)
    verify.add_argument("--check-file", help="validate an exported JSON bundle instead")
    verify.add_argument("--samples", type=int, default=config.DEFAULT_INTERIOR_SAMPLES,
                        help="random interior points per simplex")
    verify.add_argument("--hull-samples", type=int, default=config.DEFAULT_HULL_SAMPLES,
                        help="random points of the whole polytope")
    verify.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    verify.set_defaults(handler=run_verify)

    parking = commands.add_parser("parking", help="parking-function table or decomposition")
    target = parking.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=int)
    target.add_argument("--decompose", metavar="SEQ")
    parking.add_argument("--all-lengths", action="store_true", help="table for every length 1..n")
    parking.add_argument("--format", choices=["text", "json"], default="text")
    parking.set_defaults(handler=run_parking)

    counts = commands.add_parser("counts", help="simplex and parking-function counts")
    counts.add_argument("--what", choices=["simplices", "parking", "zp"], required=True)
    counts.add_argument("--n-max", type=int, required=True)
    counts.add_argument("--format", choices=["table", "text"], default="table")
    counts.set_defaults(handler=run_counts)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(args.verbose, args.debug)
    try:
        return args.handler(args)
    except UsageError as exc:
        err_console.print(f"[red]usage error:[/red] {exc}")
        return EXIT_USAGE
    except PolytriError as exc:
        err_console.print(f"[red]{exc}[/red]")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
