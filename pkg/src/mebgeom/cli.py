"""Command-line front end: ``mebgeom <command> --input points.csv [--json]``.

Exit codes: 0 on success, 1 when some certified bound fails, 2 on input or
usage errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import certify, extent, partition
from .errors import GeometryError
from .meb import minimum_enclosing_ball
from .simplex import (
    Simplex,
    barycentric_circumradius,
    barycentric_inradius_and_thickness,
    edge_energies,
    median_profile,
    regular_measures,
)
from .tolerance import Tolerance

EXIT_OK, EXIT_FAILED_BOUND, EXIT_INPUT = 0, 1, 2

CERTIFY_SUITES = ("jung", "steinhagen", "variant-jung", "eggleston", "perelman-pukhov")
PARTITION_KINDS = ("radon", "tverberg", "caratheodory", "nd-caratheodory", "nd-tverberg")


class InputError(GeometryError):
    """Malformed input file or command-line parameters."""


def parse_points(path) -> np.ndarray:
    """Read a CSV point file: one point per row, '#' lines are comments."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    rows: list[list[float]] = []
    width = None
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{path}: row {lineno}: expected {width} columns, found {len(row)}")
        values = []
        for col, cell in enumerate(row, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise InputError(f"{path}: row {lineno}, column {col}: not a number: {cell.strip()!r}") from None
            if not math.isfinite(v):
                raise InputError(f"{path}: row {lineno}, column {col}: non-finite value {cell.strip()!r}")
            values.append(v)
        rows.append(values)
    if not rows:
        raise InputError(f"{path}: row 1, column 1: no points found")
    return np.array(rows, dtype=float)


def parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")], dtype=float)
    except ValueError:
        raise InputError(f"cannot parse point {text!r}; expected comma-separated numbers") from None


# --- serialization -------------------------------------------------------

def _encode(obj) -> str:
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        if x == 0.0:
            return "0"
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Compact JSON with every float written to 17 significant digits."""
    return _encode(obj)


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.extend(_text(item, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")
    return lines


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".10g")
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


# --- commands -------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    input_path: str | None
    json: bool
    seed: int
    tol: Tolerance
    cutoff: int
    args: argparse.Namespace


def _points(cfg: RunConfig) -> np.ndarray:
    if cfg.input_path is None:
        raise InputError(f"{cfg.command}: --input is required")
    return parse_points(cfg.input_path)


def _cmd_meb(cfg):
    res = minimum_enclosing_ball(_points(cfg), cfg.seed, cfg.tol)
    return {"radius": res.radius, "center": res.center, "support": res.support,
            "certified": res.certified}, []


def _cmd_diameter(cfg):
    res = extent.diameter(_points(cfg))
    return {"diameter": res.value, "pair": list(res.pair), "shortest": res.shortest,
            "shortest_pair": list(res.shortest_pair)}, []


def _cmd_width(cfg):
    res = extent.width(_points(cfg), cfg.seed, cfg.tol)
    return {"width": res.value, "direction": res.direction, "exact": res.exact}, []


def _cmd_profile(cfg):
    prof = extent.extent_profile(_points(cfg), cfg.seed, cfg.tol, check=False)
    result = {
        "circumradius": prof.circumradius,
        "inradius": prof.inradius,
        "diameter": prof.diameter,
        "width": prof.width,
        "width_exact": prof.width_exact,
        "circumcenter": prof.circumcenter,
        "incenter": prof.incenter,
    }
    reports = [certify.make_report(f"eggleston: {n}", a, b, cfg.tol) for n, a, b in prof.eggleston()]
    return result, reports


def _cmd_certify(cfg):
    pts = _points(cfg)
    suite = cfg.args.suite
    if suite == "jung":
        reports = [certify.jung_check(pts, cfg.seed, cfg.tol)]
    elif suite == "steinhagen":
        reports = [certify.steinhagen_check(pts, cfg.seed, cfg.tol)]
    elif suite == "variant-jung":
        reports = [certify.variant_jung_check(pts, cfg.cutoff, cfg.seed, cfg.tol)]
    elif suite == "eggleston":
        reports = certify.eggleston_check(pts, cfg.seed, cfg.tol)
    else:
        reports = list(certify.perelman_pukhov_extremes(pts, cfg.seed, cfg.tol))
    return {"suite": suite, "all_hold": all(r.holds for r in reports)}, reports


def _cmd_simplex(cfg):
    s = Simplex(_points(cfg), cfg.tol)
    e = edge_energies(s)
    med = median_profile(s)
    inr, theta = barycentric_inradius_and_thickness(s)
    return {
        "m": s.m,
        "d": s.d,
        "diameter": s.diameter,
        "barycenter": med.barycenter,
        "vertex_energy": e.vertex_energy,
        "face_energy": e.face_energy,
        "total_energy": e.total_energy,
        "median_lengths": med.median_lengths,
        "vertex_barycenter_distances": med.vertex_barycenter_distances,
        "barycentric_circumradius": barycentric_circumradius(s),
        "barycentric_inradius": inr,
        "thickness": theta,
    }, []


def _cmd_regular(cfg):
    a = cfg.args
    if a.dim is None:
        raise InputError("regular: --dim is required")
    m = regular_measures(a.dim, a.diam)
    return {"dim": a.dim, "diam": a.diam, "circumradius": m.circumradius, "inradius": m.inradius,
            "width": m.width, "median_length": m.median_length}, []


def _cmd_radii_table(cfg):
    a = cfg.args
    if a.kind is None or a.dim is None:
        raise InputError("radii-table: --kind and --dim are required")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", certify.FormulaConsistencyWarning)
        rows = certify.radii_table(a.kind, a.dim)
    return {
        "kind": rows[0].kind,
        "dim": a.dim,
        "rows": [{"j": r.j, "inner": r.inner, "outer": r.outer} for r in rows],
        "consistency_note": rows[-1].consistency_note,
        "warnings": [str(w.message) for w in caught],
    }, []


def _cmd_partition(cfg):
    pts = _points(cfg)
    a = cfg.args
    kind = a.kind
    if kind == "radon":
        cert = partition.radon_partition(pts, cfg.tol)
        return _certificate(cert), []
    if kind == "tverberg":
        if a.p is None:
            raise InputError("partition tverberg: --p is required")
        return _certificate(partition.tverberg_bruteforce(pts, a.p)), []
    if kind == "caratheodory":
        if a.point is None:
            raise InputError("partition caratheodory: --point is required")
        comb = partition.caratheodory_reduce(pts, parse_vector(a.point), cfg.tol)
        return {"indices": comb.indices, "weights": comb.weights,
                "reconstruction_error": comb.reconstruction_error}, []
    if kind == "nd-caratheodory":
        if a.r is None:
            raise InputError("partition nd-caratheodory: --r is required")
        target = parse_vector(a.point) if a.point is not None else pts.mean(axis=0)
        res = partition.nd_caratheodory(pts, target, a.r, cfg.seed)
        report = certify.make_report("nd-caratheodory", res.distance, res.bound, cfg.tol)
        return {"indices": res.indices, "distance": res.distance, "bound": res.bound,
                "method": res.method, "point": target}, [report]
    if a.k is None:
        raise InputError("partition nd-tverberg: --k is required")
    cert = partition.nd_tverberg_search(pts, a.k, cfg.seed)
    report = certify.make_report("nd-tverberg", cert.residual, cert.details["bound"], cfg.tol)
    return _certificate(cert), [report]


def _certificate(cert) -> dict:
    return {"parts": cert.parts, "witness": cert.witness, "residual": cert.residual,
            "exhaustive": cert.exhaustive}


COMMANDS = {
    "meb": _cmd_meb,
    "diameter": _cmd_diameter,
    "width": _cmd_width,
    "profile": _cmd_profile,
    "certify": _cmd_certify,
    "simplex": _cmd_simplex,
    "regular": _cmd_regular,
    "radii-table": _cmd_radii_table,
    "partition": _cmd_partition,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="CSV file, one point per row")
    common.add_argument("--json", action="store_true", help="emit a single JSON object")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--rel-eps", type=float, default=1e-9)
    common.add_argument("--abs-eps", type=float, default=1e-12)
    common.add_argument("--cutoff", type=int, default=certify.DEFAULT_CUTOFF,
                        help="largest set size for exhaustive barycentric enumeration")

    parser = argparse.ArgumentParser(prog="mebgeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("meb", "diameter", "width", "profile", "simplex"):
        sub.add_parser(name, parents=[common])
    cert = sub.add_parser("certify", parents=[common])
    cert.add_argument("suite", choices=CERTIFY_SUITES)
    reg = sub.add_parser("regular", parents=[common])
    reg.add_argument("--dim", type=int)
    reg.add_argument("--diam", type=float, default=1.0)
    tab = sub.add_parser("radii-table", parents=[common])
    tab.add_argument("--kind", choices=("simplex", "cube", "cross"))
    tab.add_argument("--dim", type=int)
    part = sub.add_parser("partition", parents=[common])
    part.add_argument("kind", choices=PARTITION_KINDS)
    part.add_argument("--p", type=int)
    part.add_argument("--k", type=int)
    part.add_argument("--r", type=int)
    part.add_argument("--point", help='comma-separated coordinates, e.g. "0.5,0.5"')
    return parser


def run(cfg: RunConfig) -> tuple[int, dict]:
    result, reports = COMMANDS[cfg.command](cfg)
    out = {
        "command": cfg.command,
        "input": cfg.input_path,
        "result": result,
        "reports": [r.as_dict() for r in reports],
        "tolerances": {"rel_eps": cfg.tol.rel_eps, "abs_eps": cfg.tol.abs_eps},
        "seed": cfg.seed,
    }
    code = EXIT_OK if all(r.holds for r in reports) else EXIT_FAILED_BOUND
    return code, out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.input, args.json, args.seed,
                        Tolerance(args.rel_eps, args.abs_eps), args.cutoff, args)
        code, out = run(cfg)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.json:
        print(dumps(out))
    else:
        print("\n".join(_text({"command": out["command"], **out["result"]})))
        for r in out["reports"]:
            status = "holds" if r["holds"] else "FAILS"
            print(f"[{status}] {r['bound_name']}: {_fmt(r['quantity'])} <= {_fmt(r['bound'])} "
                  f"(slack {_fmt(r['slack'])})")
    return code


if __name__ == "__main__":
    sys.exit(main())
