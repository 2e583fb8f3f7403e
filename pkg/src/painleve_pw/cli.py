"""Command line entry point ``pw``.

Every subcommand prints to stdout. When ``PW_OUTPUT_DIR`` is set the same
text is also written to a file in that directory.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from .cubic import CaseError, load_registry
from .kodaira import FiberError, fiber_class, identify_fiber, parse_class
from .pipeline import FORMATS, CaseAnalysisError, analyze_all, analyze_case, emit_tables, verify_pw
from .polynomial import PolynomialError, parse_poly
from .singularity import ClassificationError, classify, hessian_corank, milnor_number

OUTPUT_DIR_ENV = "PW_OUTPUT_DIR"
_EXTENSIONS = {"text": "txt", "json": "json", "csv": "csv", "latex": "tex"}
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class UsageError(Exception):
    pass


def read_poly_file(path: str | Path):
    """Read a chart polynomial; an optional ``variables: a, b, c`` line fixes the ring."""
    variables = None
    body = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("variables:"):
            variables = tuple(v.strip() for v in line.split(":", 1)[1].split(",") if v.strip())
            continue
        body.append(line)
    text = " ".join(body)
    if not text:
        raise UsageError(f"{path}: no polynomial found")
    if variables is None:
        variables = tuple(sorted(set(_IDENT_RE.findall(text))))
    if not variables:
        raise UsageError(f"{path}: constant polynomial has no singular point to study")
    return parse_poly(text, variables)


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects name=value, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def _emit(text: str, stem: str, fmt: str = "text") -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        safe = re.sub(r"[^A-Za-z0-9_.-]", "_", stem)
        (path / f"{safe}.{_EXTENSIONS[fmt]}").write_text(text, encoding="utf-8")


def _registry(args):
    return load_registry(args.registry) if args.registry else None


def _format_case(report) -> str:
    lines = [
        f"case: {report.tag}",
        "parameters: " + (", ".join(f"{k}={v}" for k, v in report.parameters.items()) or "none"),
        f"singularities: {report.singularity_label()}",
    ]
    for s in report.singularities:
        lines.append(f"  {s.vertex}: {s.ade_type} (corank {s.corank}, mu {s.milnor})")
    lines += [
        f"N: {report.N}",
        f"WH: {report.WH}",
        f"fiber: {report.fiber}",
        f"chi: {report.chi}",
        f"d: {report.d}",
        f"PH: {report.PH}",
        f"P=W: {'yes' if verify_pw(report) else 'NO'}",
        "checks:",
    ]
    for c in report.checks:
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: {c.note}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    report = analyze_case(args.case, _parse_params(args.param), _registry(args))
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    else:
        text = _format_case(report)
    _emit(text, f"analyze-{args.case}", args.format)
    return 0 if report.passed else 1


def cmd_verify_pw(args) -> int:
    registry = _registry(args)
    if args.case and not args.all:
        reports = [analyze_case(args.case, registry=registry)]
    else:
        reports = analyze_all(registry)
    lines = []
    for r in reports:
        failed = [c.name for c in r.checks if not c.passed]
        status = "PASS" if not failed else "FAIL (" + ", ".join(failed) + ")"
        lines.append(f"{r.tag}: PH = {r.PH}; q^-1 WH = {r.WH.shift_q(-1)}; {status}")
    ok = all(r.passed for r in reports)
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} cases pass all checks")
    _emit("\n".join(lines) + "\n", "verify-pw")
    return 0 if ok else 1


def cmd_table(args) -> int:
    reports = analyze_all(_registry(args))
    _emit(emit_tables(reports, args.format), "table", args.format)
    return 0


def cmd_classify(args) -> int:
    poly = read_poly_file(args.file)
    r = classify(poly)
    lines = [
        f"polynomial: {poly}",
        f"variables: {', '.join(poly.variables)}",
        f"corank: {r.corank}",
        f"milnor: {r.milnor}",
        f"type: {r.ade_type}",
        f"split_quadric_type: {r.bruce_wall_type or 'not applicable'}",
    ]
    if r.k1 is not None:
        lines.append(f"contact_orders: {r.k1}, {r.k2}")
    _emit("\n".join(lines) + "\n", f"classify-{Path(args.file).stem}")
    return 0


def cmd_milnor(args) -> int:
    poly = read_poly_file(args.file)
    mu = milnor_number(poly, cap=args.cap)
    text = f"polynomial: {poly}\ncorank: {hessian_corank(poly)}\nmilnor: {mu}\n"
    _emit(text, f"milnor-{Path(args.file).stem}")
    return 0


def cmd_kodaira_class(args) -> int:
    m = parse_class(args.cls)
    tag = identify_fiber(m)
    _emit(f"class: {m}\nfiber: {tag}\ncheck: {fiber_class(tag)}\n", "kodaira-class")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pw", description="Hodge polynomials of Painleve character varieties and P = W checks.")
    p.add_argument("--registry", help="case registry JSON file replacing the shipped one")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of one case")
    a.add_argument("case")
    a.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="override a parameter with a rational value (repeatable)")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-pw", help="check P = W and the consistency checks; exit 1 on any failure")
    v.add_argument("case", nargs="?")
    v.add_argument("--all", action="store_true", help="every registry case (the default without a case)")
    v.set_defaults(func=cmd_verify_pw)

    t = sub.add_parser("table", help="emit both tables for all registry cases")
    t.add_argument("--format", choices=FORMATS, default="text")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("classify-singularity", help="A_k type of a chart polynomial at the origin")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    m = sub.add_parser("milnor", help="Milnor number of a chart polynomial at the origin")
    m.add_argument("file")
    m.add_argument("--cap", type=int, default=12, help="truncation degree cap")
    m.set_defaults(func=cmd_milnor)

    k = sub.add_parser("kodaira-class", help="identify a Kodaira fiber from its Grothendieck class")
    k.add_argument("cls", metavar="CLASS", help='"a,b,c,d" coefficients of [pt],[C],[C*],[P1] or a polynomial in L')
    k.set_defaults(func=cmd_kodaira_class)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CaseError, CaseAnalysisError, ClassificationError, FiberError,
            PolynomialError, ValueError, OSError) as exc:
        print(f"pw: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
