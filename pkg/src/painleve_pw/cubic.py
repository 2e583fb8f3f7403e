"""Affine cubic surfaces ``x1*x2*x3 + Q(x1, x2, x3) = 0`` and their boundary.

The projective closure lives in P^3 with coordinates ``[x0:x1:x2:x3]``; the
plane ``x0 = 0`` meets it in the triangle of lines ``x1*x2*x3 = 0`` whose
vertices are the coordinate points e1, e2, e3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .groebner import groebner_basis
from .polynomial import (
    MultiPoly,
    PolynomialError,
    homogenize,
    parse_poly,
    to_univariate,
    univariate_gcd,
)

AFFINE_VARS = ("x1", "x2", "x3")
PROJECTIVE_VARS = ("x0", "x1", "x2", "x3")

# vertex label -> index of its nonzero coordinate in PROJECTIVE_VARS
VERTICES = {
    "[0:1:0:0]": 1,
    "[0:0:1:0]": 2,
    "[0:0:0:1]": 3,
}


class CaseError(ValueError):
    """Unknown case tag or invalid parameters."""


class ParameterError(CaseError):
    def __init__(self, parameter: str, message: str):
        self.parameter = parameter
        super().__init__(f"parameter {parameter!r}: {message}")


class BoundaryError(ValueError):
    """The cubic does not have the expected shape along x0 = 0."""


class AffineSingularityError(ValueError):
    def __init__(self, certificate: "SmoothnessCertificate"):
        self.certificate = certificate
        super().__init__("singular affine point possible: Groebner basis of "
                         "(f, df/dx1, df/dx2, df/dx3) is not {1}")


# -- registry -------------------------------------------------------------------

@dataclass(frozen=True)
class CaseRecord:
    tag: str
    quadric: str
    parameters: tuple[str, ...]
    defaults: dict[str, Fraction]
    nonzero: tuple[str, ...]
    expected_fiber: str
    expected_singularities: tuple[tuple[str, str], ...]
    untwisted: bool = False


def _record_from_json(raw: Mapping) -> CaseRecord:
    try:
        return CaseRecord(
            tag=raw["tag"],
            quadric=raw["quadric"],
            parameters=tuple(raw.get("parameters", ())),
            defaults={k: Fraction(str(v)) for k, v in raw.get("defaults", {}).items()},
            nonzero=tuple(raw.get("nonzero", ())),
            expected_fiber=raw["expected_fiber"],
            expected_singularities=tuple(
                (s["vertex"], s["type"]) for s in raw.get("expected_singularities", ())),
            untwisted=bool(raw.get("untwisted", False)),
        )
    except KeyError as exc:
        raise CaseError(f"registry record is missing field {exc.args[0]!r}: {raw!r}") from None


def load_registry(path: str | Path | None = None) -> dict[str, CaseRecord]:
    """Read a case registry; the shipped one when ``path`` is None.

    Record order is preserved and is the order used in every emitted table.
    """
    if path is None:
        text = resources.files("painleve_pw").joinpath("data/cases.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    records = data["cases"] if isinstance(data, dict) else data
    registry: dict[str, CaseRecord] = {}
    for raw in records:
        rec = _record_from_json(raw)
        if rec.tag in registry:
            raise CaseError(f"duplicate case tag {rec.tag!r} in registry")
        registry[rec.tag] = rec
    return registry


_DEFAULT_REGISTRY: dict[str, CaseRecord] | None = None


def default_registry() -> dict[str, CaseRecord]:
    global _DEFAULT_REGISTRY
    if _DEFAULT_REGISTRY is None:
        _DEFAULT_REGISTRY = load_registry()
    return _DEFAULT_REGISTRY


# -- cubic surfaces ------------------------------------------------------------

@dataclass(frozen=True)
class PainleveCase:
    tag: str
    parameters: dict[str, Fraction]
    fiber_at_infinity: str
    record: CaseRecord | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ProjectiveCubic:
    F: MultiPoly
    f: MultiPoly
    case: PainleveCase | None = None

    @property
    def quadric(self) -> MultiPoly:
        x1, x2, x3 = MultiPoly.gens(AFFINE_VARS)
        return self.f - x1 * x2 * x3


@dataclass(frozen=True)
class VertexChart:
    """Local picture of the closure at a triangle vertex.

    The vertex's nonzero coordinate is set to 1; the other three projective
    coordinates (x0 first) are local variables centred at the vertex.
    """

    vertex: str | None
    chart_poly: MultiPoly

    @property
    def variables(self) -> tuple[str, ...]:
        return self.chart_poly.variables

    @property
    def f2(self) -> MultiPoly:
        return self.chart_poly.graded_part(2)

    @property
    def f3(self) -> MultiPoly:
        return self.chart_poly.graded_part(3)

    def is_singular(self) -> bool:
        return self.chart_poly.graded_part(0).is_zero() and self.chart_poly.graded_part(1).is_zero()


def cubic_from_quadric(Q: MultiPoly, case: PainleveCase | None = None) -> ProjectiveCubic:
    if Q.variables != AFFINE_VARS:
        Q = Q.with_variables(AFFINE_VARS)
    if Q.total_degree() > 2:
        raise CaseError(f"Q must have degree at most 2, got {Q}")
    x1, x2, x3 = MultiPoly.gens(AFFINE_VARS)
    f = x1 * x2 * x3 + Q
    F = homogenize(f, 3, "x0")
    cubic = ProjectiveCubic(F=F, f=f, case=case)
    check_boundary_triangle(cubic)
    return cubic


def check_boundary_triangle(c: ProjectiveCubic) -> None:
    """F restricted to x0 = 0 must be x1*x2*x3, and F must homogenize f."""
    x0, x1, x2, x3 = MultiPoly.gens(PROJECTIVE_VARS)
    at_infinity = c.F.substitute("x0", 0)
    if at_infinity != x1 * x2 * x3:
        raise BoundaryError(f"F(0, x1, x2, x3) = {at_infinity}, expected x1*x2*x3")
    if not c.F.is_homogeneous(3):
        raise BoundaryError("F is not a homogeneous cubic")
    if c.F.substitute("x0", 1).drop("x0") != c.f:
        raise BoundaryError("F does not restrict to f on x0 = 1")


def make_case(tag: str, parameters: Mapping[str, object] | None = None,
              registry: Mapping[str, CaseRecord] | None = None) -> ProjectiveCubic:
    registry = default_registry() if registry is None else registry
    if tag not in registry:
        raise CaseError(f"unknown case {tag!r}; known: {', '.join(registry)}")
    rec = registry[tag]
    values = dict(rec.defaults)
    for name, value in (parameters or {}).items():
        if name not in rec.parameters:
            raise ParameterError(name, f"not a parameter of case {tag} (expects {list(rec.parameters)})")
        try:
            values[name] = Fraction(str(value)) if not isinstance(value, Fraction) else value
        except (ValueError, ZeroDivisionError):
            raise ParameterError(name, f"not a rational number: {value!r}") from None
    for name in rec.parameters:
        if name not in values:
            raise ParameterError(name, "no value given and no default")
    for name in rec.nonzero:
        if values[name] == 0:
            raise ParameterError(name, f"must be nonzero for case {tag}")
    try:
        Q = parse_poly(rec.quadric, AFFINE_VARS, params={n: values[n] for n in rec.parameters})
    except PolynomialError as exc:
        raise CaseError(f"case {tag}: cannot parse quadric {rec.quadric!r}: {exc}") from exc
    case = PainleveCase(tag=tag, parameters={n: values[n] for n in rec.parameters},
                        fiber_at_infinity=rec.expected_fiber, record=rec)
    return cubic_from_quadric(Q, case)


# -- boundary singularities ------------------------------------------------------

def vertex_chart(F: MultiPoly, vertex: str) -> VertexChart:
    k = VERTICES[vertex]
    name = PROJECTIVE_VARS[k]
    poly = F.substitute(name, 1).drop(name)
    return VertexChart(vertex=vertex, chart_poly=poly)


def vertex_point(vertex: str) -> tuple[int, int, int, int]:
    k = VERTICES[vertex]
    return tuple(int(i == k) for i in range(4))


def vertex_is_singular_closed_form(c: ProjectiveCubic, vertex: str) -> bool:
    """The vertex e_k is singular iff Q has no x_k^2 term."""
    k = VERTICES[vertex]
    mono = tuple(2 if i == k - 1 else 0 for i in range(3))
    return c.quadric.coefficient(mono) == 0


def vertex_is_singular_jacobian(c: ProjectiveCubic, vertex: str) -> bool:
    pt = vertex_point(vertex)
    return all(c.F.diff(v).evaluate(pt) == 0 for v in PROJECTIVE_VARS)


def non_vertex_boundary_singularities(c: ProjectiveCubic) -> dict[str, list[Fraction]]:
    """For each boundary line, the monic gcd locating singular points off the vertices.

    The line L_i = {x0 = 0, x_i = 0} is parametrized by x_j = 1, x_l = s; a
    vertex-free singular point is a nonzero root of the gcd of the restricted
    partials.  An empty dict means the triangle carries singular points at
    vertices only.  A zero gcd (whole line singular) is reported as ``[]``.
    """
    partials = [c.F.diff(v) for v in PROJECTIVE_VARS]
    offenders: dict[str, list[Fraction]] = {}
    for i in (1, 2, 3):
        j, l = [m for m in (1, 2, 3) if m != i]
        restricted = []
        for p in partials:
            r = p.substitute("x0", 0).substitute(PROJECTIVE_VARS[i], 0).substitute(PROJECTIVE_VARS[j], 1)
            for v in PROJECTIVE_VARS:
                if v != PROJECTIVE_VARS[l]:
                    r = r.drop(v)
            restricted.append(to_univariate(r, PROJECTIVE_VARS[l]))
        g = univariate_gcd(restricted)
        if not g:
            offenders[f"L{i}"] = []
            continue
        while len(g) > 1 and g[0] == 0:  # strip the root s = 0, which is a vertex
            g = g[1:]
        if len(g) > 1:
            offenders[f"L{i}"] = g
    return offenders


def singular_points_at_infinity(c: ProjectiveCubic) -> list[VertexChart]:
    """Singular points of the closure on x0 = 0, each with its vertex chart."""
    offenders = non_vertex_boundary_singularities(c)
    if offenders:
        raise BoundaryError(f"singular points away from the triangle vertices on {sorted(offenders)}")
    charts = []
    for vertex in VERTICES:
        closed = vertex_is_singular_closed_form(c, vertex)
        brute = vertex_is_singular_jacobian(c, vertex)
        if closed != brute:
            raise BoundaryError(
                f"vertex criterion disagrees with the Jacobian at {vertex}: {closed} vs {brute}")
        if brute:
            chart = vertex_chart(c.F, vertex)
            assert chart.is_singular()
            charts.append(chart)
    return charts


# -- affine smoothness -----------------------------------------------------

@dataclass(frozen=True)
class SmoothnessCertificate:
    smooth: bool
    generators: tuple[MultiPoly, ...]
    basis: tuple[MultiPoly, ...]


def affine_smooth_check(c: ProjectiveCubic | MultiPoly) -> SmoothnessCertificate:
    """Certify that f = 0 has no singular point in affine 3-space over C.

    1 lies in (f, f_x1, f_x2, f_x3) exactly when these have no common complex
    zero, so a reduced Groebner basis equal to {1} is a complete certificate.
    """
    f = c.f if isinstance(c, ProjectiveCubic) else c
    gens = (f,) + tuple(f.diff(v) for v in f.variables)
    basis = tuple(groebner_basis(gens))
    cert = SmoothnessCertificate(
        smooth=len(basis) == 1 and basis[0].is_constant(), generators=gens, basis=basis)
    if not cert.smooth:
        raise AffineSingularityError(cert)
    return cert


def parse_vertex(text: str) -> str:
    key = text.replace(" ", "")
    if key not in VERTICES:
        raise ValueError(f"not a triangle vertex: {text!r}")
    return key


def expected_singularities(record: CaseRecord) -> list[tuple[str, str]]:
    return list(record.expected_singularities)


def format_vertex_list(charts: Sequence[VertexChart]) -> list[str]:
    return [ch.vertex for ch in charts]
