"""Per-case analysis: both Hodge polynomials, the P = W comparison, and table output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cubic import (
    CaseRecord,
    affine_smooth_check,
    default_registry,
    make_case,
    singular_points_at_infinity,
)
from .hodge import HodgePolynomial
from .kodaira import CHI_E1, DolbeaultReport, dolbeault_report
from .nerve import NerveComplex, WeightReport, delta_ranks, nerve_homology, weight_report
from .singularity import SingularityReport, classify

SCHEMA_VERSION = "1.0"
FORMATS = ("text", "json", "csv", "latex")
CSV_COLUMNS = ("case", "parameters", "singularities", "N", "WH", "fiber", "chi", "d", "PH",
               "pw", "all_checks_pass")


class CaseAnalysisError(RuntimeError):
    def __init__(self, tag: str, cause: Exception):
        self.tag = tag
        self.cause = cause
        super().__init__(f"case {tag}: {cause}")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    note: str = ""


@dataclass
class CaseReport:
    tag: str
    N: int
    WH: HodgePolynomial
    d: int
    PH: HodgePolynomial
    chi: int | None = None
    fiber: str | None = None
    parameters: dict = field(default_factory=dict)
    singularities: list[SingularityReport] = field(default_factory=list)
    nerve: NerveComplex | None = None
    weight: WeightReport | None = None
    dolbeault: DolbeaultReport | None = None
    untwisted: bool = False
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def singularity_label(self) -> str:
        types = sorted((s.milnor for s in self.singularities), reverse=True)
        return " + ".join(f"A_{k}" for k in types) if types else "none"

    def to_json(self) -> dict:
        return {
            "case": self.tag,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "singularities": [s.to_json() for s in self.singularities],
            "N": self.N,
            "nerve": self.nerve.to_json() if self.nerve else None,
            "weight": self.weight.to_json() if self.weight else None,
            "WH": self.WH.to_json(),
            "fiber": self.fiber,
            "chi": self.chi,
            "d": self.d,
            "PH": self.PH.to_json(),
            "lattice": self.dolbeault.lattice.to_json() if self.dolbeault else None,
            "pw": verify_pw(self),
            "checks": [{"name": c.name, "passed": c.passed, "note": c.note} for c in self.checks],
        }


def verify_pw(r: CaseReport) -> bool:
    """PH(q, t) == q^-1 WH(q, t), coefficient by coefficient."""
    return r.PH == r.WH.shift_q(-1)


def euler_consistency(r: CaseReport) -> bool:
    """b0 + b2 of the Dolbeault space plus chi of the fiber at infinity is chi(E(1))."""
    return 1 + (1 + r.d) + r.chi == CHI_E1


def betti_match(r: CaseReport) -> bool:
    """b2 from the Betti side (5 - N) equals b2 from the Dolbeault side (1 + d)."""
    return 5 - r.N == 1 + r.d


def analyze_case(tag: str, parameters: Mapping[str, object] | None = None,
                 registry: Mapping[str, CaseRecord] | None = None) -> CaseReport:
    registry = default_registry() if registry is None else registry
    try:
        return _analyze(tag, parameters, registry)
    except CaseAnalysisError:
        raise
    except Exception as exc:  # attach the case to whatever went wrong
        raise CaseAnalysisError(tag, exc) from exc


def _analyze(tag, parameters, registry) -> CaseReport:
    cubic = make_case(tag, parameters, registry)
    record = cubic.case.record
    checks: list[Check] = [Check("boundary_triangle", True, "F(0, x1, x2, x3) = x1*x2*x3")]

    cert = affine_smooth_check(cubic)
    checks.append(Check("affine_smooth", cert.smooth, "reduced Groebner basis of (f, grad f) is {1}"))

    charts = singular_points_at_infinity(cubic)
    checks.append(Check("vertex_criterion", True,
                        "x_k^2 coefficient test agrees with the Jacobian; no off-vertex singular points"))
    sings = [classify(ch) for ch in charts]
    checks.append(Check("classifier_cross_check",
                        all(s.bruce_wall_type in (None, s.ade_type) for s in sings),
                        "Milnor number vs split-quadric criterion"))
    N = sum(s.milnor for s in sings)

    weight = weight_report(sings)
    b0, b1 = nerve_homology(weight.nerve)
    checks.append(Check("nerve_cycle", weight.nerve.is_cycle() and len(weight.nerve.vertices) == N + 3,
                        f"cycle of length {len(weight.nerve.vertices)}"))
    checks.append(Check("nerve_homology", (b0, b1) == (1, 1), f"(b0, b1) = ({b0}, {b1})"))
    checks.append(Check("delta_ranks", delta_ranks(weight.nerve) == (1, 1),
                        "ker = coker = 1 for the nerve differential"))

    dol = dolbeault_report(record.expected_fiber)
    checks.append(Check("lattice", dol.lattice.negative_semidefinite and dol.lattice.radical_dimension == 1,
                        "negative semidefinite, radical spanned by the multiplicities"))
    checks.append(Check("b1_vanishing", dol.b1_check, "dual graph of the fiber at infinity is a tree"))

    observed = sorted((s.vertex, s.ade_type) for s in sings)
    expected = sorted(record.expected_singularities)
    checks.append(Check("registry_singularities", observed == expected,
                        f"computed {observed}, registry {expected}"))
    checks.append(Check("registry_fiber", True,
                        f"fiber at infinity {record.expected_fiber} is quoted data, not computed"))

    report = CaseReport(
        tag=tag, N=N, WH=weight.WH, d=dol.d, PH=dol.PH, chi=dol.chi, fiber=dol.fiber.tag,
        parameters=dict(cubic.case.parameters), singularities=sings, nerve=weight.nerve,
        weight=weight, dolbeault=dol, untwisted=record.untwisted, checks=checks)
    report.checks.append(Check("pw", verify_pw(report), "PH = q^-1 WH"))
    report.checks.append(Check("euler_consistency", euler_consistency(report),
                               f"1 + {1 + report.d} + {report.chi} = {CHI_E1}"))
    report.checks.append(Check(
        "betti_match", betti_match(report),
        "diffeomorphic spaces" if record.untwisted
        else "consistency only: no diffeomorphism is known in this twisted case"))
    return report


def analyze_all(registry: Mapping[str, CaseRecord] | None = None) -> list[CaseReport]:
    registry = default_registry() if registry is None else registry
    return [analyze_case(tag, registry=registry) for tag in registry]


# -- tables -------------------------------------------------------------------

_LATEX_TAGS = {"V_degen": r"V_{\mathrm{deg}}"}


def _latex_tag(tag: str) -> str:
    return f"${_LATEX_TAGS.get(tag, tag)}$"


def _latex_fiber(tag: str) -> str:
    return "$" + tag.replace("^(1)", "^{(1)}") + "$"


def _latex_sings(r: CaseReport) -> str:
    return r"$\emptyset$" if not r.singularities else f"${r.singularity_label()}$"


def _text_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header).rstrip(), "  ".join("-" * w for w in widths)]
    lines += [fmt.format(*row).rstrip() for row in rows]
    return "\n".join(lines)


def emit_tables(reports: Sequence[CaseReport], format: str = "text") -> str:
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; choose from {', '.join(FORMATS)}")
    if format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "cases": [r.to_json() for r in reports]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            params = ";".join(f"{k}={v}" for k, v in r.parameters.items())
            w.writerow([r.tag, params, r.singularity_label(), r.N, str(r.WH), r.fiber, r.chi,
                        r.d, str(r.PH), verify_pw(r), r.passed])
        return buf.getvalue()
    if format == "text":
        t1 = _text_table(("X", "F_inf", "PH(q,t)"),
                         [(r.tag, r.fiber, str(r.PH)) for r in reports])
        t2 = _text_table(("X", "Singularities", "WH(q,t)"),
                         [(r.tag, r.singularity_label(), str(r.WH)) for r in reports])
        t3 = _text_table(("X", "N", "d", "PH = q^-1 WH"),
                         [(r.tag, str(r.N), str(r.d), "yes" if verify_pw(r) else "NO") for r in reports])
        return (f"Fiber at infinity and perverse polynomial\n{t1}\n\n"
                f"Singularities at infinity and weight polynomial\n{t2}\n\n"
                f"P = W\n{t3}\n")
    # latex
    out = []
    for caption, cols in (
        ("Fiber at infinity and perverse Hodge polynomial",
         lambda r: (_latex_tag(r.tag), _latex_fiber(r.fiber), f"${r.PH.to_latex()}$")),
        ("Singularities at infinity and weight Hodge polynomial",
         lambda r: (_latex_tag(r.tag), _latex_sings(r), f"${r.WH.to_latex()}$")),
    ):
        out.append(r"\begin{tabular}{|l|l|r|}")
        out.append(r" \hline")
        out.append(" $X$ & " + ("$F_{\\infty}^{PX}$ & $PH^{PX}(q,t)$" if "perverse" in caption
                                else "Singularities & $WH^{PX}(q,t)$") + r" \\")
        out.append(r" \hline")
        for r in reports:
            out.append(" " + " & ".join(cols(r)) + r" \\")
            out.append(r" \hline")
        out.append(r"\end{tabular}")
        out.append(f"% {caption}")
        out.append("")
    return "\n".join(out)
