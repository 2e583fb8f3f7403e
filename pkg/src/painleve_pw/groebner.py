"""Minimal Buchberger algorithm over the rationals, graded reverse lex order.

Only what the affine smoothness certificate needs: S-polynomials, full
reduction, Buchberger's coprime-leading-monomial criterion and a final
interreduction.  Polynomials are handled internally as plain dicts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .polynomial import MultiPoly, grevlex_key

_Poly = dict  # dict[tuple[int, ...], Fraction]


def _lead(p: _Poly) -> tuple:
    return max(p, key=grevlex_key)


def _monic(p: _Poly) -> _Poly:
    lc = p[_lead(p)]
    if lc == 1:
        return p
    return {m: c / lc for m, c in p.items()}


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(p: _Poly, q: _Poly, coeff: Fraction, shift: tuple) -> _Poly:
    out = dict(p)
    for m, c in q.items():
        key = tuple(a + b for a, b in zip(m, shift))
        v = out.get(key, 0) - coeff * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _reduce(p: _Poly, basis: list[_Poly], leads: list[tuple]) -> _Poly:
    """Full normal form of ``p`` modulo ``basis`` (all monic)."""
    remainder: _Poly = {}
    p = dict(p)
    while p:
        lm = _lead(p)
        lc = p[lm]
        for g, glm in zip(basis, leads):
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                p = _sub_scaled(p, g, lc, shift)
                break
        else:
            remainder[lm] = lc
            del p[lm]
    return remainder


def _s_poly(f: _Poly, flm: tuple, g: _Poly, glm: tuple) -> _Poly:
    lcm = _lcm(flm, glm)
    sf = tuple(a - b for a, b in zip(lcm, flm))
    sg = tuple(a - b for a, b in zip(lcm, glm))
    out = {tuple(a + b for a, b in zip(m, sf)): c for m, c in f.items()}
    return _sub_scaled(out, g, Fraction(1), sg)


def groebner_basis(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Reduced Groebner basis (monic, grevlex) of the ideal generated by ``polys``."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    variables = polys[0].variables
    for p in polys:
        if p.variables != variables:
            raise ValueError("all generators must share one variable list")
    one = (0,) * len(variables)

    basis: list[_Poly] = []
    leads: list[tuple] = []
    for p in polys:
        r = _reduce(p.terms, basis, leads)
        if r:
            r = _monic(r)
            basis.append(r)
            leads.append(_lead(r))
    if one in leads:
        return [MultiPoly.constant(1, variables)]

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        # normal selection strategy: smallest lcm first
        pairs.sort(key=lambda ij: grevlex_key(_lcm(leads[ij[0]], leads[ij[1]])), reverse=True)
        i, j = pairs.pop()
        li, lj = leads[i], leads[j]
        if all(not (a and b) for a, b in zip(li, lj)):
            continue  # coprime leading monomials reduce to zero
        s = _s_poly(basis[i], li, basis[j], lj)
        r = _reduce(s, basis, leads)
        if not r:
            continue
        r = _monic(r)
        rl = _lead(r)
        if rl == one:
            return [MultiPoly.constant(1, variables)]
        k = len(basis)
        basis.append(r)
        leads.append(rl)
        pairs.extend((m, k) for m in range(k))

    return [MultiPoly(variables, g) for g in _interreduce(basis, leads)]


def _interreduce(basis: list[_Poly], leads: list[tuple]) -> list[_Poly]:
    keep = []
    for i, li in enumerate(leads):
        redundant = any(
            _divides(lj, li) and (lj != li or j < i)
            for j, lj in enumerate(leads) if j != i)
        if not redundant:
            keep.append(i)
    kept = [basis[i] for i in keep]
    kept_leads = [leads[i] for i in keep]
    out = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        other_leads = kept_leads[:idx] + kept_leads[idx + 1:]
        lm = kept_leads[idx]
        tail = {m: c for m, c in g.items() if m != lm}
        reduced = _reduce(tail, others, other_leads)
        reduced[lm] = g[lm]
        out.append(_monic(reduced))
    out.sort(key=lambda p: grevlex_key(_lead(p)))
    return out


def ideal_contains_one(polys: Iterable[MultiPoly]) -> bool:
    gb = groebner_basis(polys)
    return len(gb) == 1 and gb[0].is_constant()
