"""Command line: ``eqdef <subcommand> ...`` (also ``python -m eqdef``).

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Any

from .cohomology import (
    CONVENTIONS,
    basis_h1_cyclic,
    dim_h1_cyclic,
    dim_h1_elem_abelian,
    local_bounds,
    tame_local_bounds,
)
from .filtration import RamificationFiltration
from .globalcontrib import CoverData, global_contribution, total_dimension
from . import worked

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------------

def render_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, obj)]


def _cell(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "(" + ", ".join(_cell(x) for x in v) + ")" if v else "()"
    return str(v)


def render_table(rows: list[list[Any]], header: list[str] | None = None) -> str:
    cells = [[_cell(c) for c in r] for r in rows]
    if header:
        cells.insert(0, list(header))
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_csv(rows: list[list[Any]], header: list[str] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    for r in rows:
        w.writerow([_cell(c) for c in r])
    return buf.getvalue()


def emit(obj: Any, fmt: str, rows: list[list[Any]] | None = None, header: list[str] | None = None) -> str:
    """Render ``obj``; ``rows``/``header`` override the key-value layout for table and CSV."""
    if fmt == "json":
        return render_json(obj)
    if rows is None:
        rows = [[k, v] for k, v in _flatten(obj)]
        header = header or ["quantity", "value"]
    return render_table(rows, header) if fmt == "table" else render_csv(rows, header)


# -- inputs ------------------------------------------------------------------------

def _read_json(path: str, what: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {what} file {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    return data


def _load_filtration(path: str) -> tuple[RamificationFiltration, Any]:
    data = _read_json(path, "filtration")
    try:
        filt = RamificationFiltration.from_dict(data)
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None
    return filt, data.get("invariants")


def _invariants(filt: RamificationFiltration, spec: Any, path: str):
    """``(counts, exponents)`` from ``"unipotent"``, ``None`` or ``{step: [exponents]}``."""
    if spec is None or spec == "none":
        return None, None
    if spec == "unipotent":
        return "unipotent", "unipotent"
    if not isinstance(spec, dict):
        raise UsageError(f"{path}: 'invariants' must be \"unipotent\" or an object")
    exps = {}
    for k, v in spec.items():
        if not str(k).isdigit() or not isinstance(v, list) or not all(isinstance(e, int) for e in v):
            raise UsageError(f"{path}: invariants[{k!r}] must map a step number to a list of exponents")
        exps[int(k)] = v
    return {k: len(v) for k, v in exps.items()}, exps


def _local(filt: RamificationFiltration, spec: Any, path: str, convention: str):
    counts, exps = _invariants(filt, spec, path)
    wild = local_bounds(filt, counts)
    if filt.tame_order > 1:
        return wild, tame_local_bounds(filt, convention, exps)
    return wild, wild


# -- subcommands -----------------------------------------------------------------

def cmd_cyclic(args) -> tuple[str, int]:
    p, n, a = _need(args, "p", "n", "a")
    dim = dim_h1_cyclic(p, n, a)
    obj: dict = {"p": p, "n": n, "a": a, "dim": dim}
    if args.s is not None and args.s > 1:
        obj["s"] = args.s
        obj["dim"] = dim_h1_elem_abelian(p, n, args.s, a)
    elif args.basis:
        obj["basis"] = basis_h1_cyclic(p, n, a)
    return emit(obj, args.format), EXIT_OK


def cmd_local_bounds(args) -> tuple[str, int]:
    if not args.filtration:
        raise UsageError("--filtration FILE is required")
    path = args.filtration[0]
    filt, spec = _load_filtration(path)
    wild, local = _local(filt, args.invariants or spec, path, args.convention)
    obj = {"bounds": list(wild.interval), "G_1": wild.to_dict()}
    if local is not wild:
        obj["G_0"] = local.to_dict()
    return emit(obj, args.format), EXIT_OK


def cmd_global(args) -> tuple[str, int]:
    cover = _load_cover(args)
    return emit({"global": global_contribution(cover)}, args.format), EXIT_OK


def _load_cover(args) -> CoverData:
    if not args.cover:
        raise UsageError("--cover FILE is required")
    data = _read_json(args.cover, "cover")
    try:
        return CoverData.from_dict(data)
    except ValueError as e:
        raise UsageError(f"{args.cover}: {e}") from None


def cmd_total(args) -> tuple[str, int]:
    cover = _load_cover(args)
    locals_ = []
    for path in args.filtration or []:
        filt, spec = _load_filtration(path)
        locals_.append(_local(filt, args.invariants or spec, path, args.convention)[1])
    report = total_dimension(global_contribution(cover), locals_)
    return emit(report.to_dict(), args.format), EXIT_OK


def cmd_example(args) -> tuple[str, int]:
    name = args.name
    if name == "fermat":
        (p,) = _need(args, "p")
        rep = worked.fermat(p, args.convention, oracle=args.oracle)
    elif name == "pcover":
        rep = worked.pcover(*_need(args, "p", "m"))
    elif name == "lehr-matignon":
        rep = worked.lehr_matignon(*_need(args, "p", "m"))
    else:
        p, j, m = _need(args, "p", "j", "m")
        rep = worked.pries(p, j, m, args.convention)
    return emit(rep.to_dict(), args.format), EXIT_OK


def cmd_table_pries(args) -> tuple[str, int]:
    reports = worked.pries_table(args.convention)
    if args.format == "json":
        rows = []
        for r in reports:
            ref = worked.REFERENCE_ROWS[(r.params["p"], r.params["j"], r.params["m"])]
            rows.append({**r.params, **r.quantities,
                         "tabulated": dict(zip(("r", "dim", "global", "total"), ref)),
                         "notes": r.notes})
        return render_json(rows), EXIT_OK
    rows = []
    for r in reports:
        ref = worked.REFERENCE_ROWS[(r.params["p"], r.params["j"], r.params["m"])]
        ours = [r.quantities[k] for k in ("r", "dim", "global", "total")]
        cells = [f"{o} (tab. {t})" if o != t else o for o, t in zip(ours, ref)]
        rows.append([r.params["p"], r.params["j"], r.params["m"], *cells])
    return emit(None, args.format, rows, list(worked.PRIES_COLUMNS)), EXIT_OK


def cmd_oracle(args) -> tuple[str, int]:
    from .oracle import StabilizationError, h1_cyclic_bruteforce, h1_elem_abelian_bruteforce

    s = args.s or 1
    ps = [args.p] if args.p else [5, 7]
    cases = []
    for p in ps:
        ns = [args.n] if args.n else [n for n in range(1, 13) if n % p]
        as_ = [args.a] if args.a is not None else range(-12, 13)
        cases += [(p, n, a) for n in ns for a in as_]
    if args.sample:
        cases = sorted(random.Random(args.seed).sample(cases, min(args.sample, len(cases))))
    rows, status = [], EXIT_OK
    for p, n, a in cases:
        try:
            if s == 1:
                res = h1_cyclic_bruteforce(p, n, a, base_precision=args.precision)
                want, want_basis = dim_h1_cyclic(p, n, a), sorted(basis_h1_cyclic(p, n, a))
                ok = res.dimension == want and sorted(res.exponents) == want_basis
            else:
                res = h1_elem_abelian_bruteforce(p, n, s, a, base_precision=args.precision)
                want = dim_h1_elem_abelian(p, n, s, a)
                ok = res.dimension == want
            rows.append([p, n, a, want, res.dimension, res.precision, "ok" if ok else "MISMATCH"])
            if not ok:
                status = EXIT_MISMATCH
        except StabilizationError as e:
            rows.append([p, n, a, None, None, None, f"UNSTABLE: {e}"])
            status = EXIT_MISMATCH
    header = ["p", "n", "a", "closed form", "oracle", "precision", "status"]
    if args.format == "json":
        out = render_json({"s": s, "cases": [dict(zip(header, r)) for r in rows],
                           "passed": status == EXIT_OK})
    else:
        out = emit(None, args.format, rows, header)
        if args.format == "table":
            bad = sum(r[-1] != "ok" for r in rows)
            out += f"{len(rows) - bad}/{len(rows)} passed\n"
    return out, status


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing {' '.join(missing)}")
    return tuple(getattr(args, n) for n in names)


# -- parser ------------------------------------------------------------------------

COMMANDS = {
    "cyclic": cmd_cyclic,
    "local-bounds": cmd_local_bounds,
    "global": cmd_global,
    "total": cmd_total,
    "example": cmd_example,
    "table-pries": cmd_table_pries,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag in ("p", "n", "a", "s", "j", "m", "precision", "sample"):
        common.add_argument(f"--{flag}", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--basis", action="store_true")
    common.add_argument("--filtration", action="append", metavar="FILE")
    common.add_argument("--cover", metavar="FILE")
    common.add_argument("--invariants", choices=["none", "unipotent"],
                        help="override the invariants given in the filtration file")
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--convention", choices=CONVENTIONS, default="derived",
                        help="tame weight convention (default: derived)")
    parser = argparse.ArgumentParser(prog="eqdef", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "cyclic": "dimension (and basis) of H^1(Z/p, t^a k[[t]])",
        "local-bounds": "bounds for the local term of a filtration",
        "global": "global contribution of a cover",
        "total": "global plus local terms",
        "example": "worked example report",
        "table-pries": "the Z/p x| Z/m comparison table",
        "oracle": "brute-force verification sweep",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "example":
            sp.add_argument("name", choices=["fermat", "pcover", "lehr-matignon", "pries"])
            sp.add_argument("--oracle", action="store_true", help="compute invariants by brute force")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = COMMANDS[args.command](args)
    except (UsageError, ValueError) as e:
        print(f"eqdef {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
