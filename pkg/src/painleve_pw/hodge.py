"""Two-variable Laurent polynomials recording graded dimensions of cohomology."""

from __future__ import annotations

from typing import Iterable, Mapping


class HodgePolynomial:
    """Map ``(i, k) -> c``, standing for ``sum c * q**i * t**k``.

    ``i`` (the q-exponent) may be negative; ``k`` is a cohomological degree.
    Coefficients are nonnegative integers and zero entries are never stored.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[tuple[int, int], int] = {}
        for (i, k), c in items:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"coefficient of q^{i} t^{k} must be a nonnegative integer, got {c!r}")
            if c:
                clean[(int(i), int(k))] = clean.get((int(i), int(k)), 0) + c
        self._coeffs = clean

    @property
    def coefficients(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    def coefficient(self, i: int, k: int) -> int:
        return self._coeffs.get((i, k), 0)

    def __eq__(self, other):
        if not isinstance(other, HodgePolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "HodgePolynomial") -> "HodgePolynomial":
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            out[key] = out.get(key, 0) + c
        return HodgePolynomial(out)

    def shift_q(self, n: int) -> "HodgePolynomial":
        """Multiply by ``q**n``."""
        return HodgePolynomial({(i + n, k): c for (i, k), c in self._coeffs.items()})

    def betti_numbers(self) -> dict[int, int]:
        """Specialization q = 1: total dimension in each degree."""
        out: dict[int, int] = {}
        for (_, k), c in self._coeffs.items():
            out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    def coefficient_sum(self) -> int:
        return sum(self._coeffs.values())

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        # descending q-exponent, the order used when writing these out by hand
        return sorted(((i, k, c) for (i, k), c in self._coeffs.items()),
                      key=lambda t: (-t[0], t[1]))

    def _render(self, latex: bool) -> str:
        if not self._coeffs:
            return "0"
        pieces = []
        for i, k, c in self.sorted_terms():
            factors = []
            if i:
                factors.append(f"q^{{{i}}}" if latex else f"q^{i}")
            if k:
                factors.append(f"t^{k}" if (latex and 0 <= k < 10) else (f"t^{{{k}}}" if latex else f"t^{k}"))
            if latex:
                mono = "".join(factors)
                body = mono if c == 1 and mono else f"{c}{mono}"
            else:
                mono = "*".join(factors)
                body = mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c))
            pieces.append(body)
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self._render(latex=False)

    def to_latex(self) -> str:
        return self._render(latex=True)

    def __repr__(self) -> str:
        return f"HodgePolynomial({str(self)!r})"

    def to_json(self) -> list[dict[str, int]]:
        return [{"q": i, "t": k, "coeff": c} for i, k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, items: Iterable[Mapping[str, int]]) -> "HodgePolynomial":
        return cls({(d["q"], d["t"]): d["coeff"] for d in items})
