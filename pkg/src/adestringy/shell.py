"""Command line front end: ``adestringy <command> [options]``.

Exit status is 0 when every requested check passes, 1 when a check
fails or the two routes disagree, and 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .catalog import (
    FAMILIES,
    ResolutionError,
    SingularitySpec,
    StratifiedResolution,
    build_resolution,
    resolution_from_json,
)
from .closedform import ClosedFormMismatch, classify_polynomiality, contribution_closed
from .exactalg import (
    PolyParseError,
    Polynomial,
    RationalFunction,
    parse_polynomial,
    rf_as_polynomial,
    rf_limit_at_one,
)
from .stringy import (
    StringyReport,
    Verdict,
    assemble_global,
    contribution_from_strata,
    make_report,
    stringy_euler_direct,
)

COMMANDS = ("contribution", "euler", "classify", "assemble", "table", "verify")
METHODS = ("strata", "closed", "both")
FORMATS = ("json", "text", "latex", "csv")

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- ingestion --------------------------------------------------------------

def ingest_resolution(path: str | Path) -> StratifiedResolution:
    """Read and validate a resolution file in the catalog JSON schema."""
    path = Path(path)
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolyParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    return resolution_from_json(data, source=str(path))


def read_sing_file(path: str | Path) -> list[SingularitySpec]:
    """A JSON array of ``"FAMILY:n:m=M"`` tokens or ``{"family", "n", "m"}`` objects."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise PolyParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, list):
        raise UsageError(f"{path}: expected a JSON array of singularities")
    specs = []
    for i, entry in enumerate(data):
        try:
            if isinstance(entry, str):
                specs.append(SingularitySpec.parse(entry))
            elif isinstance(entry, dict):
                specs.append(SingularitySpec.of(entry.get("family"), entry.get("n"), entry.get("m")))
            else:
                raise ValueError(f"unsupported entry {entry!r}")
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{path}: /{i}: {exc}") from None
    return specs


def parse_range(text: str, what: str) -> list[int]:
    """``"3"``, ``"1..9"`` (inclusive) or ``"4,6,8"``."""
    values: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                values.extend(range(int(lo), int(hi) + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise UsageError(f"bad {what} range {text!r}; expected e.g. 1..9 or 4,6") from None
    if not values:
        raise UsageError(f"empty {what} range {text!r}")
    return sorted(set(values))


# -- evaluation -------------------------------------------------------------

@dataclass(frozen=True)
class RouteResult:
    value: RationalFunction
    strata: RationalFunction | None
    closed: RationalFunction | None
    euler_direct: Fraction | None

    @property
    def agree(self) -> bool | None:
        if self.strata is None or self.closed is None:
            return None
        return self.strata == self.closed


def evaluate(spec: SingularitySpec | None, method: str,
             resolution: StratifiedResolution | None = None) -> RouteResult:
    strata = closed = direct = None
    if method in ("strata", "both"):
        res = resolution if resolution is not None else build_resolution(spec)
        strata = contribution_from_strata(res)
        direct = stringy_euler_direct(res)
    if method in ("closed", "both"):
        if spec is None:
            raise UsageError("the closed route needs --family/--n/--m")
        closed = contribution_closed(spec)
    value = strata if strata is not None else closed
    return RouteResult(value, strata, closed, direct)


def contribution_report(spec: SingularitySpec | None, method: str,
                        resolution: StratifiedResolution | None = None) -> tuple[StringyReport, RouteResult]:
    r = evaluate(spec, method, resolution)
    checks = {"routes_agree": Verdict.of(r.agree)}
    source = spec.token() if spec is not None else resolution.source
    return make_report(source, r.value, checks, euler_direct=r.euler_direct), r


# -- rendering --------------------------------------------------------------

def _report_rows(rep: StringyReport) -> list[tuple[str, str]]:
    rows = [
        ("source", rep.source),
        ("contribution", rep.contribution.to_text()),
        ("euler", _frac(rep.euler)),
        ("polynomial", "yes" if rep.is_polynomial else "no"),
    ]
    if rep.hodge_numbers is not None:
        rows.append(("hodge_numbers", "[" + ", ".join(map(str, rep.hodge_numbers)) + "]"))
    rows += [(name, v.value) for name, v in rep.checks.items()]
    return rows


def render_report(rep: StringyReport, fmt: str, extra: dict | None = None) -> str:
    extra = extra or {}
    if fmt == "json":
        data = rep.to_json()
        data.update(extra)
        return json.dumps(data, indent=2, sort_keys=False) + "\n"
    rows = _report_rows(rep) + [(k, str(v)) for k, v in extra.items()]
    if fmt == "text":
        width = max(len(k) for k, _ in rows)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)
    if fmt == "latex":
        return f"E = {rep.contribution.to_latex()}\n"
    return _csv([k for k, _ in rows], [[v for _, v in rows]])


def _csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_mismatch(r: RouteResult) -> str:
    return (f"routes disagree:\n  strata: {r.strata.to_text()}\n  closed: {r.closed.to_text()}\n")


# -- commands ---------------------------------------------------------------

def _spec_from_args(args, required: bool = True) -> SingularitySpec | None:
    if args.family is None:
        if required:
            raise UsageError("--family is required")
        return None
    if args.m is None:
        raise UsageError("--m is required")
    return SingularitySpec.of(args.family, args.n, args.m)


def cmd_contribution(args, out) -> int:
    resolution = ingest_resolution(args.resolution_file) if args.resolution_file else None
    spec = _spec_from_args(args, required=resolution is None)
    method = args.method
    if resolution is not None and spec is None and method == "both":
        method = "strata"
    rep, r = contribution_report(spec, method, resolution)
    out.write(render_report(rep, args.format))
    if r.agree is False:
        sys.stderr.write(render_mismatch(r))
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_euler(args, out) -> int:
    resolution = ingest_resolution(args.resolution_file) if args.resolution_file else None
    spec = _spec_from_args(args, required=resolution is None)
    method = args.method
    if resolution is not None and spec is None and method == "both":
        method = "strata"
    r = evaluate(spec, method, resolution)
    values = {}
    if r.strata is not None:
        values["strata_limit"] = rf_limit_at_one(r.strata)
        values["strata_direct"] = r.euler_direct
    if r.closed is not None:
        values["closed_limit"] = rf_limit_at_one(r.closed)
    ok = len(set(values.values())) == 1
    euler = next(iter(values.values()))
    source = spec.token() if spec is not None else resolution.source
    fields = [("source", source), ("euler", _frac(euler))] + [(k, _frac(v)) for k, v in values.items()]
    fields.append(("consistent", Verdict.of(ok).value))
    out.write(_render_fields(fields, args.format, latex=_latex_frac(euler)))
    return EXIT_OK if ok else EXIT_CHECK


def _latex_frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _render_fields(fields: list[tuple[str, str]], fmt: str, latex: str) -> str:
    if fmt == "json":
        return json.dumps(dict(fields), indent=2) + "\n"
    if fmt == "text":
        width = max(len(k) for k, _ in fields)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in fields)
    if fmt == "latex":
        return latex + "\n"
    return _csv([k for k, _ in fields], [[v for _, v in fields]])


def cmd_classify(args, out) -> int:
    spec = _spec_from_args(args)
    verdict = "polynomial" if classify_polynomiality(spec) else "not polynomial"
    fields = [("source", spec.token()), ("classification", verdict)]
    out.write(_render_fields(fields, args.format, latex=f"\\text{{{verdict}}}"))
    return EXIT_OK


def cmd_assemble(args, out) -> int:
    if args.smooth_part is None:
        raise UsageError("--smooth-part is required")
    path = Path(args.smooth_part)
    try:
        smooth = parse_polynomial(path.read_text())
    except PolyParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    specs = [SingularitySpec.parse(t) for t in args.sing or []]
    if args.sing_file:
        specs += read_sing_file(args.sing_file)
    if args.projective and args.dim is None:
        raise UsageError("--projective needs --dim")
    if args.dim is not None and smooth.degree is not None and smooth.degree > args.dim:
        raise UsageError(f"smooth part has degree {smooth.degree} > --dim {args.dim}")

    contributions, agree = [], True
    for spec in specs:
        r = evaluate(spec, args.method)
        if r.agree is False:
            agree = False
            sys.stderr.write(f"{spec.token()}: " + render_mismatch(r))
        contributions.append(r.value)
    total = assemble_global(smooth, contributions)
    checks = {"routes_agree": Verdict.of(agree if args.method == "both" and specs else None)}
    rep = make_report(path.name, total, checks, dim=args.dim, projective=args.projective)
    if rep.hodge_numbers is not None and args.dim is not None and len(rep.hodge_numbers) - 1 > args.dim:
        raise UsageError(f"E-function has degree {len(rep.hodge_numbers) - 1} > --dim {args.dim}")
    extra = {"singularities": [s.token() for s in specs]} if args.format == "json" else {}
    out.write(render_report(rep, args.format, extra))
    return EXIT_OK if rep.ok else EXIT_CHECK


TABLE_HEADER = ["family", "n", "m", "contribution", "euler", "polynomial", "classification", "routes"]


def _table_row(spec: SingularitySpec) -> list[str]:
    r = evaluate(spec, "both")
    return [
        spec.family, str(spec.n), str(spec.m),
        r.value.to_text(),
        _frac(rf_limit_at_one(r.value)),
        "yes" if rf_as_polynomial(r.value) is not None else "no",
        "polynomial" if classify_polynomiality(spec) else "not polynomial",
        "pass" if r.agree else "MISMATCH",
    ]


def grid(families: list[str], ns: list[int] | None, ms: list[int]) -> list[SingularitySpec]:
    """Cells in (family, n, m) order; E families ignore ``ns``, other families skip invalid ``n``."""
    cells = []
    for fam in sorted(set(families), key=FAMILIES.index):
        if fam in ("E6", "E7", "E8"):
            fam_ns = [int(fam[1])]
        else:
            if ns is None:
                raise UsageError(f"--n range is required for family {fam}")
            fam_ns = [n for n in ns if n >= (1 if fam == "A" else 4)]
        cells += [SingularitySpec(fam, n, m) for n in fam_ns for m in ms]
    if not cells:
        raise UsageError("the requested ranges contain no valid singularity")
    return cells


def _grid_from_args(args) -> list[SingularitySpec]:
    families = []
    for f in args.family or []:
        families += [x.strip() for x in f.split(",") if x.strip()]
    if not families:
        raise UsageError("--family is required")
    for f in families:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}")
    if args.m is None:
        raise UsageError("--m range is required")
    ns = parse_range(args.n, "n") if args.n is not None else None
    return grid(families, ns, parse_range(args.m, "m"))


def _map(fn, cells, jobs: int):
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def cmd_table(args, out) -> int:
    cells = _grid_from_args(args)
    rows = _map(_table_row, cells, args.jobs)
    ok = all(r[-1] == "pass" for r in rows)
    fmt = args.format
    if fmt == "json":
        out.write(json.dumps([dict(zip(TABLE_HEADER, r)) for r in rows], indent=2) + "\n")
    elif fmt == "text":
        widths = [max(len(x) for x in col) for col in zip(TABLE_HEADER, *rows)]
        for r in [TABLE_HEADER] + rows:
            out.write("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() + "\n")
    elif fmt == "latex":
        out.write("\\begin{tabular}{lll}\n")
        for spec in cells:
            value = contribution_closed(spec)
            out.write(f"${spec.family[0]}_{{{spec.n}}}$ & {spec.m} & ${value.to_latex()}$ \\\\\n")
        out.write("\\end{tabular}\n")
    else:
        out.write(_csv(TABLE_HEADER, rows))
    return EXIT_OK if ok else EXIT_CHECK


def _verify_cell(spec: SingularitySpec) -> dict[str, bool]:
    res = build_resolution(spec)
    strata = contribution_from_strata(res)
    closed = contribution_closed(spec)
    checks = {
        "routes_agree": strata == closed,
        "euler_consistent": rf_limit_at_one(strata) == stringy_euler_direct(res),
        "normalized_at_zero": strata(0) == 1,
    }
    if spec.m == 3:
        checks["surface_crepant"] = strata == RationalFunction(Polynomial((1, spec.n)))
    if spec.m == 4:
        checks["threefold_table"] = contribution_closed(spec, "m4_table") == closed
    return checks


def cmd_verify(args, out) -> int:
    if args.family is None:
        args.family = list(FAMILIES)
        args.n = args.n or "1..20"
    if args.m is None:
        args.m = "3..10"
    cells = _grid_from_args(args)
    results = _map(_verify_cell, cells, args.jobs)
    rows, failed = [], 0
    for spec, checks in zip(cells, results):
        bad = sorted(k for k, v in checks.items() if not v)
        failed += bool(bad)
        rows.append([spec.token(), str(len(checks)), "pass" if not bad else "fail: " + ",".join(bad)])
    summary = f"{len(cells) - failed}/{len(cells)} cells pass"
    if args.format == "json":
        out.write(json.dumps({"cells": [dict(zip(("cell", "checks", "verdict"), r)) for r in rows],
                              "summary": summary}, indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv(["cell", "checks", "verdict"], rows))
    else:
        for r in rows:
            if args.verbose or r[2] != "pass":
                out.write(f"{r[0]}  {r[2]}\n")
        out.write(summary + "\n")
    return EXIT_OK if not failed else EXIT_CHECK


HANDLERS = {
    "contribution": cmd_contribution,
    "euler": cmd_euler,
    "classify": cmd_classify,
    "assemble": cmd_assemble,
    "table": cmd_table,
    "verify": cmd_verify,
}


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adestringy",
        description="Stringy E-function contributions of A-D-E singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="text", ranged=False):
        if ranged:
            p.add_argument("--family", action="append", help="family or comma list (repeatable)")
            p.add_argument("--n", help="index range, e.g. 1..9")
            p.add_argument("--m", help="range of variable counts, e.g. 3..6")
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
        else:
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--n", type=int)
            p.add_argument("--m", type=int)
        p.add_argument("--format", choices=FORMATS, default=fmt_default)
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("contribution", help="local contribution of one singular point")
    common(p)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--resolution-file", help="custom resolution in the catalog JSON schema")

    p = sub.add_parser("euler", help="stringy Euler number of the contribution")
    common(p)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--resolution-file")

    p = sub.add_parser("classify", help="polynomiality classification")
    common(p)

    p = sub.add_parser("assemble", help="global E-function from a smooth part and singular points")
    common(p)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--smooth-part", help="file holding H of the smooth locus")
    p.add_argument("--sing", action="append", help="FAMILY:n:m=M (repeatable)")
    p.add_argument("--sing-file", help="JSON array of singularity tokens")
    p.add_argument("--projective", action="store_true", help="enable duality and Hodge symmetry checks")
    p.add_argument("--dim", type=int)

    p = sub.add_parser("table", help="sweep a grid and tabulate contributions")
    common(p, fmt_default="csv", ranged=True)

    p = sub.add_parser("verify", help="check route agreement and invariants over a grid")
    common(p, ranged=True)
    p.add_argument("-v", "--verbose", action="store_true", help="list passing cells too")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = HANDLERS[args.command](args, buf)
    except ClosedFormMismatch as exc:
        sys.stderr.write(f"adestringy {args.command}: {exc}\n")
        return EXIT_CHECK
    except (UsageError, ResolutionError, PolyParseError, ValueError, OSError) as exc:
        sys.stderr.write(f"adestringy {args.command}: error: {exc}\n")
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
