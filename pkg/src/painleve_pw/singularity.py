"""A_k classification of surface singularities at the origin of a chart.

Two independent routes are implemented:

* Hessian corank plus the Milnor number, computed as the colength of the
  Jacobian ideal in the local ring by truncation at increasing degree;
* the split-quadric criterion: with ``f2 = u*v`` and kernel point ``w``,
  the type is A_2 if ``f3(w) != 0`` and otherwise A_{k1+k2+1}, where k_i is
  the order of contact of ``f3 = 0`` with the line ``{u = 0}`` resp.
  ``{v = 0}`` at ``w``.

:func:`classify` runs both and refuses to answer when they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import isqrt
from typing import Sequence

from .cubic import VertexChart
from .linalg import nullspace, rank
from .polynomial import MultiPoly

MILNOR_DEGREE_CAP = 12
# unordered pairs {k1, k2} covered by the split-quadric criterion
ALLOWED_CONTACT_ORDERS = ((1, 1), (1, 2), (1, 3))


class ClassificationError(ValueError):
    pass


class NotSingularError(ClassificationError):
    pass


class NonIsolatedError(ClassificationError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"non-isolated or cap exceeded: Jacobian colength did not stabilize by degree {cap}")


def _as_chart(chart: VertexChart | MultiPoly) -> VertexChart:
    if isinstance(chart, MultiPoly):
        return VertexChart(vertex=None, chart_poly=chart)
    return chart


def ade_tag(k: int) -> str:
    return f"A_{k}"


def quadratic_form_matrix(f2: MultiPoly) -> list[list[Fraction]]:
    """Symmetric matrix of second derivatives (the Hessian of f2)."""
    n = len(f2.variables)
    m = [[Fraction(0)] * n for _ in range(n)]
    for mono, c in f2.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        if len(idx) != 2:
            raise ClassificationError(f"{f2} is not a quadratic form")
        i, j = idx
        if i == j:
            m[i][i] += 2 * c
        else:
            m[i][j] += c
            m[j][i] += c
    return m


def _require_singular(chart: VertexChart) -> None:
    low = chart.chart_poly.graded_part(0) + chart.chart_poly.graded_part(1)
    if not low.is_zero():
        raise NotSingularError(f"origin is not a singular point: low-order part {low}")


def hessian_corank(chart: VertexChart | MultiPoly) -> int:
    chart = _as_chart(chart)
    _require_singular(chart)
    n = len(chart.variables)
    f2 = chart.chart_poly.graded_part(2)
    if f2.is_zero():
        return n
    return n - rank(quadratic_form_matrix(f2))


# -- Milnor number ----------------------------------------------------------

def _monomials_below(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree):
        for combo in combinations_with_replacement(range(n), d):
            mono = [0] * n
            for i in combo:
                mono[i] += 1
            out.append(tuple(mono))
    return out


def jacobian_colength_truncated(poly: MultiPoly, degree: int) -> int:
    """dim of O / (J + m^degree), with J the ideal of partial derivatives."""
    n = len(poly.variables)
    monos = _monomials_below(n, degree)
    partials = [poly.diff(v) for v in poly.variables]
    partials = [list(p.items()) for p in partials if not p.is_zero()]
    pivots: dict[tuple, dict] = {}
    # order: reduce lower-degree monomials first (local order)
    order = {m: i for i, m in enumerate(monos)}
    for p in partials:
        low = min(sum(m) for m, _ in p)
        for mono in monos:
            if sum(mono) + low >= degree:
                continue
            row: dict[tuple, Fraction] = {}
            for m, c in p:
                prod = tuple(a + b for a, b in zip(m, mono))
                if sum(prod) < degree:
                    row[prod] = row.get(prod, 0) + c
            row = {m: c for m, c in row.items() if c}
            while row:
                lead = min(row, key=order.__getitem__)
                piv = pivots.get(lead)
                if piv is None:
                    inv = 1 / row[lead]
                    pivots[lead] = {m: c * inv for m, c in row.items()}
                    break
                f = row[lead]
                for m, c in piv.items():
                    v = row.get(m, 0) - f * c
                    if v:
                        row[m] = v
                    else:
                        row.pop(m, None)
    return len(monos) - len(pivots)


def milnor_number(chart: VertexChart | MultiPoly, cap: int = MILNOR_DEGREE_CAP) -> int:
    """Milnor number of the singularity at the origin.

    mu_D = dim O/(J + m^D) is nondecreasing in D; if mu_D = mu_{D+1} then
    m^D lies in J + m^{D+1}, hence in J by Nakayama, so mu_D is the colength
    of J itself.
    """
    chart = _as_chart(chart)
    _require_singular(chart)
    poly = chart.chart_poly
    prev = jacobian_colength_truncated(poly, 1)
    for d in range(2, cap + 1):
        cur = jacobian_colength_truncated(poly, d)
        if cur == prev:
            return cur
        prev = cur
    raise NonIsolatedError(cap)


def linear_change(poly: MultiPoly, matrix: Sequence[Sequence]) -> MultiPoly:
    """Substitute x_i -> sum_j matrix[i][j] * x_j for all variables at once."""
    vars_ = poly.variables
    gens = MultiPoly.gens(vars_)
    mapping = {}
    for i, v in enumerate(vars_):
        img = MultiPoly.zero(vars_)
        for j, g in enumerate(gens):
            if matrix[i][j]:
                img = img + g * Fraction(matrix[i][j])
        mapping[v] = img
    return poly.compose(mapping, vars_)


# -- split-quadric criterion ------------------------------------------------------

@dataclass(frozen=True)
class BruceWallResult:
    ade_type: str | None
    k1: int | None = None
    k2: int | None = None
    reason: str = ""

    @property
    def supported(self) -> bool:
        return self.ade_type is not None


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _restrict_to_line(f: MultiPoly, base: Sequence[Fraction], direction: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients in s of f(base + s*direction), lowest degree first."""
    s = MultiPoly.variable("s", ("s",))
    images = {v: s * direction[i] + base[i] for i, v in enumerate(f.variables)}
    images = {v: (img if isinstance(img, MultiPoly) else MultiPoly.constant(img, ("s",)))
              for v, img in images.items()}
    restricted = f.compose(images, ("s",))
    deg = max(restricted.total_degree(), 0)
    return [restricted.coefficient((e,)) for e in range(deg + 1)]


def _null_directions(f2: MultiPoly, kernel: Sequence[Fraction]) -> list[list[Fraction]] | None:
    """Two rational null vectors of f2 spanning, with the kernel, the two lines.

    Returns None when the binary form on a complement of the kernel does not
    split over Q.
    """
    n = len(kernel)
    ea, eb = None, None
    # pick two coordinate vectors completing the kernel vector to a basis
    for a in range(n):
        for b in range(a + 1, n):
            third = [c for c in range(n) if c not in (a, b)][0]
            if kernel[third]:
                ea, eb = a, b
                break
        if ea is not None:
            break
    def unit(i):
        return [Fraction(int(j == i)) for j in range(n)]
    m = quadratic_form_matrix(f2)
    A = m[ea][ea] / 2
    B = m[ea][eb]
    C = m[eb][eb] / 2
    disc = B * B - 4 * A * C
    root = _rational_sqrt(disc)
    if root is None or disc == 0:
        return None
    if A != 0:
        dirs = []
        for sign in (1, -1):
            r = (-B + sign * root) / (2 * A)
            dirs.append([r * x + y for x, y in zip(unit(ea), unit(eb))])
        return dirs
    # A == 0: f2 = t*(B*s + C*t) on the complement, so B != 0
    return [unit(ea), [-C * x + B * y for x, y in zip(unit(ea), unit(eb))]]


def bruce_wall_classify(chart: VertexChart | MultiPoly) -> BruceWallResult:
    chart = _as_chart(chart)
    _require_singular(chart)
    corank = hessian_corank(chart)
    if corank == 0:
        return BruceWallResult("A_1", reason="non-degenerate quadratic part")
    if corank >= 2:
        return BruceWallResult(None, reason=f"Hessian corank {corank}")
    f2, f3 = chart.f2, chart.f3
    if not (chart.chart_poly - f2 - f3).is_zero():
        return BruceWallResult(None, reason="chart polynomial has terms of degree > 3")
    (kernel,) = nullspace(quadratic_form_matrix(f2))
    if f3.evaluate(kernel) != 0:
        return BruceWallResult("A_2", reason="cubic part nonzero at the kernel point")
    dirs = _null_directions(f2, kernel)
    if dirs is None:
        return BruceWallResult(None, reason="quadratic part does not split over Q")
    ks = []
    for d in dirs:
        coeffs = _restrict_to_line(f3, kernel, d)
        order = next((i for i, c in enumerate(coeffs) if c), None)
        if order is None:
            return BruceWallResult(None, reason="cubic part contains a kernel line")
        ks.append(order)
    k1, k2 = sorted(ks)
    if (k1, k2) not in ALLOWED_CONTACT_ORDERS:
        return BruceWallResult(None, k1, k2, reason=f"contact orders {{{k1}, {k2}}} outside the criterion's table")
    return BruceWallResult(ade_tag(k1 + k2 + 1), k1, k2, reason="contact orders of cubic part with f2 = 0")


# -- combined report -------------------------------------------------------------

@dataclass(frozen=True)
class SingularityReport:
    vertex: str | None
    corank: int
    milnor: int
    ade_type: str
    bruce_wall_type: str | None = None
    k1: int | None = None
    k2: int | None = None

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "corank": self.corank,
            "milnor": self.milnor,
            "ade_type": self.ade_type,
            "bruce_wall_type": self.bruce_wall_type,
            "k1": self.k1,
            "k2": self.k2,
        }


def classify(chart: VertexChart | MultiPoly) -> SingularityReport:
    chart = _as_chart(chart)
    corank = hessian_corank(chart)
    if corank >= 2:
        raise ClassificationError("non-A singularity, out of scope")
    mu = milnor_number(chart)
    bw = bruce_wall_classify(chart)
    ade = ade_tag(mu)
    if bw.supported and bw.ade_type != ade:
        raise ClassificationError(
            f"cross-check mismatch at {chart.vertex}: Milnor number gives {ade}, "
            f"quadric criterion gives {bw.ade_type}")
    return SingularityReport(vertex=chart.vertex, corank=corank, milnor=mu, ade_type=ade,
                             bruce_wall_type=bw.ade_type, k1=bw.k1, k2=bw.k2)
