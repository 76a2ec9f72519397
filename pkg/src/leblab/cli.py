"""Command-line front end.

Exit codes: 0 success, 1 input or runtime error, 2 oracle mismatch.
Errors are printed to stderr as one JSON object carrying the error code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import (
    InconsistentTerminalSet,
    InputError,
    LebError,
    UnmatchedShapeKey,
    UnresolvedNonGenericPattern,
)
from .exactnum import format_rat, parse_rat
from .figures import mesh_svg, orbit_svg
from .graph import adjacency_matrix, build_graph, to_dot
from .meshsim import run_mesh, tree_expand_levels
from .orbit import compute_orbit, is_terminal, quadruple_partition, terminal_quadruples
from .sampling import grid_points
from .shapespace import (
    ShapePoint,
    SideLengths,
    classify,
    format_point,
    from_side_lengths,
    on_genericity_geodesic,
)
from .spectral import (
    DENSE_LIMIT,
    collapse_counts,
    conjecture_report,
    convergence_rate,
    counts_sequence,
    spectral_radius,
    spectrum,
    summarize,
)

SCHEMA_VERSION = 1
ORACLE_ERRORS = (UnmatchedShapeKey, InconsistentTerminalSet, UnresolvedNonGenericPattern)
SWEEP_COLUMNS = [
    "schema_version", "index", "x", "y", "region", "l", "q", "xi", "rho", "rho_ok",
    "spectrum_in_set", "bipartite", "diagonalizable", "status", "error",
]


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); 2 is reserved for oracle mismatches
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage_error", message)
        raise SystemExit(1)


def _emit_error(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "message": message}, sort_keys=True) + "\n")


# --- output ------------------------------------------------------------------

def write_output(text: str, out: str | None) -> None:
    """Write to ``out`` through a temporary file and rename, or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, sort_keys=True, indent=2) + "\n"


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _fmt_float(v: float) -> str:
    return f"{v:.12g}"


# --- input -------------------------------------------------------------------

def point_from_args(args) -> ShapePoint:
    given = [args.x is not None, args.sides is not None, args.side_lengths is not None]
    if sum(given) != 1:
        raise InputError("give exactly one of --x/--s, --sides or --side-lengths")
    if args.sides is not None:
        parts = [parse_rat(p) for p in args.sides.split(",")]
        if len(parts) != 3:
            raise InputError("--sides needs three squared side lengths a,b,c")
        return from_side_lengths(SideLengths(*parts))
    if args.side_lengths is not None:
        parts = args.side_lengths.split(",")
        if len(parts) != 3:
            raise InputError("--side-lengths needs three side lengths a,b,c")
        return from_side_lengths(SideLengths.from_decimal_sides(*parts))
    if args.s is None:
        raise InputError("--x needs --s (coefficient of sqrt(d) in Im z)")
    return ShapePoint(parse_rat(args.x), parse_rat(args.s), args.d)


def parse_grid(spec: str) -> tuple[Fraction, tuple[Fraction, Fraction, Fraction, Fraction] | None]:
    """``STEP`` or ``STEP,X0,X1,Y0,Y1`` (closed ranges)."""
    parts = [parse_rat(p) for p in spec.split(",")]
    if len(parts) not in (1, 5):
        raise InputError("--grid takes STEP or STEP,X0,X1,Y0,Y1")
    if parts[0] <= 0:
        raise InputError("grid step must be positive")
    return parts[0], (tuple(parts[1:]) if len(parts) == 5 else None)


def _steps(args, default: int) -> int:
    j = default if args.steps is None else args.steps
    if j < 0:
        raise InputError("--steps must be nonnegative")
    return j


# --- commands ------------------------------------------------------------------

def orbit_report(z: ShapePoint) -> dict:
    orb = compute_orbit(z)
    part = quadruple_partition(orb)
    points = []
    for i, p in enumerate(orb.points):
        left, right = orb.successors(i)
        points.append({
            "index": i,
            "point": format_point(p),
            **p.to_json(),
            "region": str(classify(p)),
            "terminal": is_terminal(p),
            "geodesic": str(on_genericity_geodesic(p)),
            "quadruple": part[i],
            "L": left,
            "R": right,
        })
    return {
        "z": format_point(z),
        "l": len(orb),
        "q": len(terminal_quadruples(orb)),
        "generic": orb.is_generic(),
        "points": points,
    }


def cmd_orbit(args) -> int:
    z = point_from_args(args)
    if args.format == "svg":
        write_output(orbit_svg(compute_orbit(z)), args.out)
    else:
        write_output(dump_json(orbit_report(z)), args.out)
    return 0


def cmd_graph(args) -> int:
    z = point_from_args(args)
    g = build_graph(compute_orbit(z))
    if args.format == "dot":
        write_output(to_dot(g), args.out)
    else:
        write_output(dump_json({"z": format_point(z), **g.to_json()}), args.out)
    return 0


def cmd_spectrum(args) -> int:
    z = point_from_args(args)
    g = build_graph(compute_orbit(z))
    summary = summarize(adjacency_matrix(g), g)
    write_output(dump_json({"z": format_point(z), **summary.to_json()}), args.out)
    return 0


def cmd_distribution(args) -> int:
    z = point_from_args(args)
    j = _steps(args, 6)
    g = build_graph(compute_orbit(z))
    counts = collapse_counts(counts_sequence(adjacency_matrix(g), j)[-1], g)
    rows = [
        {
            "schema_version": SCHEMA_VERSION,
            "j": j,
            "class": i,
            "point": format_point(p),
            "count": c,
            "prob": format_rat(Fraction(c, 2**j)),
        }
        for i, (p, c) in enumerate(zip(g.orbit.points, counts))
    ]
    cols = ["schema_version", "j", "class", "point", "count", "prob"]
    if args.format == "json":
        write_output(dump_json({"z": format_point(z), "rows": rows}), args.out)
    else:
        write_output(_csv_text(cols, rows), args.out)
    return 0


def mesh_verdict(z: ShapePoint, j: int) -> dict:
    """Planar simulation, word-tree expansion and matrix powers, level by level."""
    run = run_mesh(z, j)
    tree = tree_expand_levels(z, j, orbit=run.orbit)
    g = build_graph(run.orbit)
    mat = [collapse_counts(cv, g) for cv in counts_sequence(adjacency_matrix(g), j)]
    bad = [k for k in range(j + 1) if not (run.levels[k] == tree[k] == mat[k])]
    angle_ok = run.min_angle >= run.seed_min_angle / 2 - 1e-9
    return {
        "z": format_point(z),
        "steps": j,
        "verdict": "MATCH" if not bad and angle_ok else "MISMATCH",
        "mismatched_levels": bad,
        "final_counts": run.levels[-1],
        "min_angle": run.min_angle,
        "seed_min_angle": run.seed_min_angle,
        "angle_bound_ok": angle_ok,
    }


def cmd_mesh_check(args) -> int:
    z = point_from_args(args)
    j = _steps(args, 10)
    if args.format == "svg":
        write_output(mesh_svg(run_mesh(z, j)), args.out)
        return 0
    report = mesh_verdict(z, j)
    write_output(dump_json(report), args.out)
    return 0 if report["verdict"] == "MATCH" else 2


def cmd_conjectures(args) -> int:
    z = point_from_args(args)
    g = build_graph(compute_orbit(z))
    flags = conjecture_report(adjacency_matrix(g), g)
    write_output(dump_json({"z": format_point(z), "flags": flags.to_json()}), args.out)
    return 0


def sweep_row(task: tuple[int, str, str, float]) -> dict:
    """One atlas row; failures are recorded in the row rather than raised."""
    index, xs, ys, tol = task
    row = {c: "" for c in SWEEP_COLUMNS}
    row.update(schema_version=SCHEMA_VERSION, index=index, x=xs, y=ys)
    try:
        z = ShapePoint(Fraction(xs), Fraction(ys))
        row["region"] = str(classify(z))
        orb = compute_orbit(z)
        row["l"] = len(orb)
        row["q"] = len(terminal_quadruples(orb))
        g = build_graph(orb)
        if g.n > DENSE_LIMIT:
            raise InputError(f"graph with {g.n} vertices exceeds the dense limit")
        A = adjacency_matrix(g)
        vals = spectrum(A)
        rho = spectral_radius(vals)
        flags = conjecture_report(A, g, vals)
        row.update(
            xi=_fmt_float(convergence_rate(A, vals)),
            rho=_fmt_float(rho),
            rho_ok=abs(rho - 2) <= tol,
            spectrum_in_set=flags.spectrum_in_set,
            bipartite=flags.bipartite,
            diagonalizable=flags.diagonalizable,
            status="ok",
        )
    except LebError as exc:
        row.update(status="error", error=exc.code)
    return row


def _load_checkpoint(path: Path) -> dict[int, dict]:
    done: dict[int, dict] = {}
    if path.exists():
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                done[rec["index"]] = rec
    return done


def cmd_sweep(args) -> int:
    if args.d != 1:
        raise InputError("sweeps run over rational grids (d = 1)")
    step, box = parse_grid(args.grid or "1/16")
    pts = list(grid_points(step))
    if box is not None:
        x0, x1, y0, y1 = box
        pts = [p for p in pts if x0 <= p.x <= x1 and y0 <= p.s <= y1]
    tasks = [(i, format_rat(p.x), format_rat(p.s), args.tol) for i, p in enumerate(pts)]
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    done = _load_checkpoint(ckpt) if ckpt else {}
    todo = [t for t in tasks if t[0] not in done]
    rows: dict[int, dict] = dict(done)
    fh = ckpt.open("a", encoding="utf-8") if ckpt else None
    try:
        if args.jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = pool.map(sweep_row, todo, chunksize=8)
                for row in results:
                    rows[row["index"]] = row
                    if fh:
                        fh.write(json.dumps(row, sort_keys=True) + "\n")
                        fh.flush()
        else:
            for t in todo:
                row = sweep_row(t)
                rows[row["index"]] = row
                if fh:
                    fh.write(json.dumps(row, sort_keys=True) + "\n")
                    fh.flush()
    finally:
        if fh:
            fh.close()
    ordered = [rows[t[0]] for t in tasks]
    if args.format == "json":
        write_output(dump_json({"grid": args.grid or "1/16", "rows": ordered}), args.out)
    else:
        write_output(_csv_text(SWEEP_COLUMNS, ordered), args.out)
    return 0


def cmd_theorem_check(args) -> int:
    from .theorems import default_suite

    kw = {} if args.seed is None else {"seed": args.seed}
    results = default_suite(quick=not args.full, **kw)
    if args.format == "json":
        write_output(dump_json({"checks": [r.to_json() for r in results]}), args.out)
    else:
        write_output("".join(r.line() + "\n" for r in results), args.out)
    return 0 if all(r.passed for r in results) else 2


COMMANDS = {
    "orbit": (cmd_orbit, ("json", "svg"), "orbit listing or SVG figure"),
    "graph": (cmd_graph, ("dot", "json"), "bisection graph as DOT or JSON"),
    "spectrum": (cmd_spectrum, ("json",), "spectrum, eigenspace dimensions, limit distributions"),
    "distribution": (cmd_distribution, ("csv", "json"), "class counts after --steps refinements"),
    "mesh-check": (cmd_mesh_check, ("json", "svg"), "planar vs word-tree vs matrix counts"),
    "sweep": (cmd_sweep, ("csv", "json"), "atlas of l, q, xi over a rational grid"),
    "conjectures": (cmd_conjectures, ("json",), "report-only spectral diagnostics"),
    "theorem-check": (cmd_theorem_check, ("text", "json"), "run the theorem suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leblab", description="Longest-edge bisection dynamics in exact arithmetic.")
    parser.add_argument("--version", action="version", version=f"leblab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, formats, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--x", help="Re z as p/q or a decimal")
        p.add_argument("--s", help="Im z = s*sqrt(d); s as p/q or a decimal")
        p.add_argument("--d", type=int, default=1, help="square-free d (default 1)")
        p.add_argument("--sides", help="squared side lengths a,b,c (rationals)")
        p.add_argument("--side-lengths", help="side lengths a,b,c as exact decimals")
        p.add_argument("--steps", type=int, help="refinement steps j")
        p.add_argument("--grid", help="sweep grid STEP or STEP,X0,X1,Y0,Y1 (default 1/16)")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--seed", type=int, default=None, help="sampling seed (theorem-check)")
        p.add_argument("--tol", type=float, default=1e-9, help="tolerance for rho = 2 (default 1e-9)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
        p.add_argument("--checkpoint", help="JSONL file making a sweep resumable")
        if name == "theorem-check":
            p.add_argument("--full", action="store_true", help="larger samples")
        p.set_defaults(handler=COMMANDS[name][0])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ORACLE_ERRORS as exc:
        _emit_error(exc.code, str(exc))
        return 2
    except LebError as exc:
        _emit_error(exc.code, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
