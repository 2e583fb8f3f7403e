"""Kodaira fibers, their dual graphs and lattices, and the perverse polynomial.

Dual graphs of the affine Dynkin types carry the standard Kodaira marks
(component multiplicities).  The marks are not trusted blindly: the lattice
certificate recomputes them as the generator of the radical of the
intersection form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .hodge import HodgePolynomial
from .linalg import congruence_diagonalize, nullspace, primitive_integer_vector
from .polynomial import PolynomialError, parse_poly

CHI_E1 = 12  # Euler characteristic of the rational elliptic surface

# cuspidal / tangential fibers: components do not meet transversally
_NON_TRANSVERSE_CHI = {"II": 2, "III": 3, "IV": 4}


class FiberError(ValueError):
    pass


class LatticeError(FiberError):
    pass


@dataclass(frozen=True)
class KodairaFiber:
    tag: str
    components: tuple[str, ...]
    multiplicities: tuple[int, ...]
    # pairs of component indices, with repetition for multiple intersections;
    # (i, i) is a node of component i
    edges: tuple[tuple[int, int], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def adjacency(self) -> list[list[int]]:
        n = self.n_components
        adj = [[0] * n for _ in range(n)]
        for i, j in self.edges:
            if i == j:
                adj[i][i] += 1
            else:
                adj[i][j] += 1
                adj[j][i] += 1
        return adj

    def intersection_matrix(self) -> list[list[int]]:
        """Self-intersection -2 (+2 per node) on the diagonal, crossing counts off it."""
        adj = self.adjacency()
        return [[(-2 + 2 * adj[i][i]) if i == j else adj[i][j]
                 for j in range(self.n_components)] for i in range(self.n_components)]

    def is_connected(self) -> bool:
        n = self.n_components
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for w in range(n):
                if adj[v][w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


# -- constructors for the standard fibers ----------------------------------------------

def _chain(n: int, start: int = 0) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(start, start + n - 1)]


def affine_D(n: int) -> KodairaFiber:
    """D_n^(1) (Kodaira I_{n-4}^*): a chain of n-3 mark-2 nodes with two leaves at each end."""
    if n < 4:
        raise FiberError("D_n^(1) needs n >= 4")
    inner = n - 3
    names = [f"C{i}" for i in range(n + 1)]
    mults = [1, 1] + [2] * inner + [1, 1]
    edges = [(0, 2), (1, 2)] + _chain(inner, 2) + [(inner + 1, inner + 2), (inner + 1, inner + 3)]
    return KodairaFiber(f"D_{n}^(1)", tuple(names), tuple(mults), tuple(edges))


def affine_E(n: int) -> KodairaFiber:
    if n == 6:
        # centre 0, three arms of length two
        mults = [3, 2, 1, 2, 1, 2, 1]
        edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    elif n == 7:
        # chain of seven with a leaf on the middle node
        mults = [1, 2, 3, 4, 3, 2, 1, 2]
        edges = _chain(7) + [(3, 7)]
    elif n == 8:
        # chain 1-2-3-4-5-6-4-2 with a leaf of mark 3 on the mark-6 node
        mults = [1, 2, 3, 4, 5, 6, 4, 2, 3]
        edges = _chain(8) + [(5, 8)]
    else:
        raise FiberError("E_n^(1) exists for n in 6, 7, 8")
    names = [f"C{i}" for i in range(len(mults))]
    return KodairaFiber(f"E_{n}^(1)", tuple(names), tuple(mults), tuple(edges))


def kodaira_I(n: int) -> KodairaFiber:
    """I_n = A_{n-1}^(1): a cycle of n rational curves (a nodal curve for n = 1)."""
    if n < 1:
        raise FiberError("I_n needs n >= 1")
    names = [f"C{i}" for i in range(n)]
    if n == 1:
        edges = [(0, 0)]
    else:
        edges = [(i, (i + 1) % n) for i in range(n)]
        if n == 2:
            edges = [(0, 1), (0, 1)]
    return KodairaFiber(f"I_{n}", tuple(names), (1,) * n, tuple(edges))


def kodaira_additive(tag: str) -> KodairaFiber:
    """II, III, IV: dual graphs that only record which components meet."""
    if tag == "II":
        return KodairaFiber("II", ("C0",), (1,), ((0, 0),))
    if tag == "III":
        return KodairaFiber("III", ("C0", "C1"), (1, 1), ((0, 1), (0, 1)))
    if tag == "IV":
        return KodairaFiber("IV", ("C0", "C1", "C2"), (1, 1, 1), ((0, 1), (1, 2), (0, 2)))
    raise FiberError(f"unknown additive fiber {tag!r}")


_TAG_RE = re.compile(r"^(?P<kind>[ADE])_?(?P<n>\d+)(?:\^?\(1\))$|^I_?(?P<i>\d+)$|^(?P<add>II|III|IV)$")


@lru_cache(maxsize=None)
def fiber(tag: str) -> KodairaFiber:
    """Look up a fiber by tag, e.g. ``D_4^(1)``, ``E_8^(1)``, ``A_2^(1)``, ``I_3``, ``IV``."""
    m = _TAG_RE.match(tag.replace(" ", ""))
    if not m:
        raise FiberError(f"unrecognized fiber tag {tag!r}")
    if m.group("add"):
        return kodaira_additive(m.group("add"))
    if m.group("i"):
        return kodaira_I(int(m.group("i")))
    kind, n = m.group("kind"), int(m.group("n"))
    if kind == "D":
        return affine_D(n)
    if kind == "E":
        return affine_E(n)
    f = kodaira_I(n + 1)
    return KodairaFiber(f"A_{n}^(1)", f.components, f.multiplicities, f.edges)


# -- invariants ----------------------------------------------------------------

def euler_characteristic(f: KodairaFiber) -> int:
    """chi of the reduced fiber: 2 per rational component, minus 1 per crossing."""
    if f.tag in _NON_TRANSVERSE_CHI:
        return _NON_TRANSVERSE_CHI[f.tag]
    return 2 * f.n_components - len(f.edges)


def b1_vanishing_check(f: KodairaFiber) -> bool:
    """True iff the dual graph is a tree."""
    if any(i == j for i, j in f.edges):
        return False
    return f.is_connected() and len(f.edges) == f.n_components - 1


@dataclass(frozen=True)
class LatticeCertificate:
    matrix: tuple[tuple[int, ...], ...]
    pivots: tuple[Fraction, ...]
    radical_dimension: int
    radical_generator: tuple[int, ...]

    @property
    def negative_semidefinite(self) -> bool:
        return all(p <= 0 for p in self.pivots)

    def to_json(self) -> dict:
        return {
            "negative_semidefinite": self.negative_semidefinite,
            "pivots": [str(p) for p in self.pivots],
            "radical_dimension": self.radical_dimension,
            "radical_generator": list(self.radical_generator),
        }


def lattice_certificate(f: KodairaFiber) -> LatticeCertificate:
    m = f.intersection_matrix()
    pivots, clean = congruence_diagonalize(m)
    if not clean or any(p > 0 for p in pivots):
        raise LatticeError(f"{f.tag}: intersection form is not negative semidefinite (pivots {pivots})")
    radical = nullspace(m)
    if len(radical) != 1:
        raise LatticeError(f"{f.tag}: radical has dimension {len(radical)}, expected 1")
    gen = tuple(primitive_integer_vector(radical[0]))
    if gen != f.multiplicities:
        raise LatticeError(f"{f.tag}: radical generator {gen} differs from the marks {f.multiplicities}")
    if sum(1 for p in pivots if p == 0) != 1:
        raise LatticeError(f"{f.tag}: expected exactly one zero pivot, got {pivots}")
    return LatticeCertificate(
        matrix=tuple(tuple(r) for r in m), pivots=tuple(pivots),
        radical_dimension=1, radical_generator=gen)


def perverse_polynomial(f: KodairaFiber) -> HodgePolynomial:
    """q^-1 + d q^-2 t^2 + q^-3 t^2 with d = 10 - chi(F)."""
    d = 10 - euler_characteristic(f)
    if not 0 <= d <= 4:
        raise FiberError(f"{f.tag} gives d = {d}, outside 0..4: not a fiber at infinity of a Painleve space")
    return HodgePolynomial({(-1, 0): 1, (-2, 2): d, (-3, 2): 1})


@dataclass(frozen=True)
class DolbeaultReport:
    fiber: KodairaFiber
    chi: int
    d: int
    PH: HodgePolynomial
    lattice: LatticeCertificate
    b1_check: bool

    @property
    def b2_dolbeault(self) -> int:
        return 1 + self.d


def dolbeault_report(tag: str) -> DolbeaultReport:
    f = fiber(tag)
    chi = euler_characteristic(f)
    PH = perverse_polynomial(f)
    return DolbeaultReport(
        fiber=f, chi=chi, d=10 - chi, PH=PH,
        lattice=lattice_certificate(f), b1_check=b1_vanishing_check(f))


# -- Grothendieck classes ----------------------------------------------------------

@dataclass(frozen=True)
class MotivicClass:
    """Integer polynomial in the Lefschetz class L; coefficients lowest degree first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __add__(self, other: "MotivicClass") -> "MotivicClass":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return MotivicClass(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, k: int) -> "MotivicClass":
        return MotivicClass(tuple(k * c for c in self.coefficients))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for e in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[e]
            if not c:
                continue
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)}{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


POINT = MotivicClass((1,))
AFFINE_LINE = MotivicClass((0, 1))
MULTIPLICATIVE_GROUP = MotivicClass((-1, 1))
PROJECTIVE_LINE = MotivicClass((1, 1))


def motivic_class(a_pt: int, b_C: int, c_Cx: int, d_P1: int) -> MotivicClass:
    """a[pt] + b[C] + c[C^x] + d[P^1]."""
    return a_pt * POINT + b_C * AFFINE_LINE + c_Cx * MULTIPLICATIVE_GROUP + d_P1 * PROJECTIVE_LINE


def fiber_class(tag: str) -> MotivicClass:
    """Grothendieck class of a Kodaira fiber of type I_n, II, III or IV."""
    f = fiber(tag)
    if f.tag.startswith("I_"):
        n = f.n_components
        if n == 1:
            return MULTIPLICATIVE_GROUP + POINT  # nodal cubic
        return n * PROJECTIVE_LINE + (-n) * POINT  # n lines glued in a cycle
    if f.tag == "II":
        return AFFINE_LINE + POINT  # cuspidal cubic
    if f.tag == "III":
        return 2 * PROJECTIVE_LINE + (-1) * POINT  # two lines tangent at one point
    if f.tag == "IV":
        return 3 * PROJECTIVE_LINE + (-2) * POINT  # three concurrent lines
    raise FiberError(f"no Grothendieck class tabulated for {tag!r}")


CLASS_TABLE_TAGS = tuple(f"I_{n}" for n in range(1, 10)) + ("II", "III", "IV")


def identify_fiber(m: MotivicClass) -> str:
    matches = [tag for tag in CLASS_TABLE_TAGS if fiber_class(tag) == m]
    if not matches:
        raise FiberError(f"no supported Kodaira fiber has class {m}")
    assert len(matches) == 1, f"class {m} matches several fibers: {matches}"
    return matches[0]


def parse_class(text: str) -> MotivicClass:
    """Parse ``"a,b,c,d"`` generator coefficients or a polynomial in L such as ``"3L+1"``."""
    text = text.strip()
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers a,b,c,d, got {text!r}")
        try:
            return motivic_class(*(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"generator coefficients must be integers: {text!r}") from None
    expr = re.sub(r"(\d)\s*L", r"\1*L", text)
    try:
        p = parse_poly(expr, ("L",))
    except PolynomialError as exc:
        raise ValueError(f"cannot parse class {text!r}: {exc}") from None
    deg = max(p.total_degree(), 0)
    coeffs = [p.coefficient((e,)) for e in range(deg + 1)]
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"class {text!r} has non-integer coefficients")
    return MotivicClass(tuple(int(c) for c in coeffs))
