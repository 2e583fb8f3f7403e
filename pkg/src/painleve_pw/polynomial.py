"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is an immutable map from exponent vectors to nonzero
:class:`fractions.Fraction` coefficients over an ordered tuple of variable
names.  Every operation returns a normalized value, so two polynomials are
equal exactly when their term maps are equal.

Expression grammar accepted by :func:`parse_poly`::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INTEGER)?
    atom   := NUMBER | NAME | "(" expr ")"

Division is only allowed by a nonzero constant, so ``3/4*x1`` is fine but
``1/x1`` is rejected.  Exponents are nonnegative integer literals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]
Monomial = tuple  # tuple[int, ...]


class PolynomialError(ValueError):
    """Base class for errors raised by this module."""


class PolySyntaxError(PolynomialError):
    """Malformed expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UndeclaredVariableError(PolynomialError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"undeclared variable {name!r} at position {position}")


def _as_fraction(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


def grevlex_key(mono: Monomial) -> tuple:
    """Sort key such that a larger key is a larger monomial in grevlex order."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


class MultiPoly:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, Number] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolynomialError(f"repeated variable names in {variables}")
        n = len(variables)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise PolynomialError(f"exponent vector {mono} does not match {n} variables")
            if any(e < 0 for e in mono):
                raise PolynomialError(f"negative exponent in {mono}")
            c = _as_fraction(coeff)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._vars = variables
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        # Trusted fast path: terms already normalized, nothing zero.
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, value: Number, variables: Iterable[str]) -> "MultiPoly":
        variables = tuple(variables)
        c = _as_fraction(value)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, name: str, variables: Iterable[str]) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise PolynomialError(f"{name!r} is not one of {variables}")
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {mono: Fraction(1)})

    @classmethod
    def gens(cls, variables: Iterable[str]) -> tuple["MultiPoly", ...]:
        variables = tuple(variables)
        return tuple(cls.variable(v, variables) for v in variables)

    # -- basic accessors ----------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((m[i] for m in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise PolynomialError(f"{var!r} is not one of {self._vars}") from None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._vars != self._vars:
                raise PolynomialError(
                    f"variable lists differ: {self._vars} vs {other._vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self._vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self._vars, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MultiPoly.zero(self._vars)
            return MultiPoly._raw(self._vars, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly._raw(self._vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.constant(other, self._vars)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and grading -------------------------------------------------

    def diff(self, var: str) -> "MultiPoly":
        i = self._index(var)
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return MultiPoly._raw(self._vars, out)

    def graded_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self._vars, {m: c for m, c in self._terms.items() if sum(m) == d})

    def graded_parts(self) -> dict[int, "MultiPoly"]:
        return {d: self.graded_part(d) for d in sorted({sum(m) for m in self._terms})}

    # -- substitution -------------------------------------------------------

    def substitute(self, var: str, value: Union[Number, "MultiPoly"]) -> "MultiPoly":
        """Replace ``var`` by a constant or by a polynomial in the same ring.

        The variable list is kept; use :meth:`drop` afterwards to leave the
        smaller ring.
        """
        i = self._index(var)
        if isinstance(value, MultiPoly):
            value = self._coerce(value)
            out = MultiPoly.zero(self._vars)
            powers: dict[int, MultiPoly] = {}
            for m, c in self._terms.items():
                e = m[i]
                if e not in powers:
                    powers[e] = value ** e
                rest = MultiPoly._raw(self._vars, {m[:i] + (0,) + m[i + 1:]: c})
                out = out + rest * powers[e]
            return out
        v = _as_fraction(value)
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            key = m[:i] + (0,) + m[i + 1:]
            s = out.get(key, 0) + c * v ** m[i]
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MultiPoly._raw(self._vars, out)

    def compose(self, mapping: Mapping[str, "MultiPoly"], variables: Iterable[str]) -> "MultiPoly":
        """Simultaneous substitution into the ring on ``variables``.

        Every variable of ``self`` must appear in ``mapping``; each image is a
        polynomial over ``variables``.
        """
        variables = tuple(variables)
        images = []
        for v in self._vars:
            if v not in mapping:
                raise PolynomialError(f"no image given for {v!r}")
            img = mapping[v]
            if img.variables != variables:
                raise PolynomialError(f"image of {v!r} is not over {variables}")
            images.append(img)
        cache: dict[tuple[int, int], MultiPoly] = {}
        out = MultiPoly.zero(variables)
        for m, c in self._terms.items():
            term = MultiPoly.constant(c, variables)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    term = term * cache[(i, e)]
            out = out + term
        return out

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != len(self._vars):
            raise PolynomialError(
                f"point has {len(point)} coordinates, expected {len(self._vars)}")
        pt = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(pt, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def drop(self, var: str) -> "MultiPoly":
        """Remove a variable that does not occur in any term."""
        i = self._index(var)
        if any(m[i] for m in self._terms):
            raise PolynomialError(f"{var!r} still occurs in the polynomial")
        variables = self._vars[:i] + self._vars[i + 1:]
        return MultiPoly._raw(variables, {m[:i] + m[i + 1:]: c for m, c in self._terms.items()})

    def with_variables(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-embed into a ring whose variables include every occurring one."""
        variables = tuple(variables)
        used = {v for m in self._terms for v, e in zip(self._vars, m) if e}
        missing = used - set(variables)
        if missing:
            raise PolynomialError(f"variables {sorted(missing)} not in target ring")
        pos = {v: i for i, v in enumerate(self._vars)}
        out = {}
        for m, c in self._terms.items():
            out[tuple(m[pos[v]] if v in pos else 0 for v in variables)] = c
        return MultiPoly._raw(variables, out)

    # -- printing ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, m) if e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, variables={self._vars})"


# -- standalone helpers mirroring the methods ----------------------------------

def partial_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)


def graded_part(p: MultiPoly, d: int) -> MultiPoly:
    return p.graded_part(d)


def substitute(p: MultiPoly, var: str, value) -> MultiPoly:
    return p.substitute(var, value)


def evaluate(p: MultiPoly, point: Sequence[Number]) -> Fraction:
    return p.evaluate(point)


def homogenize(p: MultiPoly, degree: int, new_var: str) -> MultiPoly:
    """Homogenize ``p`` to ``degree`` with ``new_var`` prepended to the variables."""
    if new_var in p.variables:
        raise PolynomialError(f"{new_var!r} already a variable of the polynomial")
    if degree < p.total_degree():
        raise PolynomialError(
            f"degree {degree} is smaller than the total degree {p.total_degree()}")
    variables = (new_var,) + p.variables
    return MultiPoly._raw(
        variables, {(degree - sum(m),) + m: c for m, c in p.items()})


# -- parser ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.vars = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, tok[2], self.text)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    self.fail("division by a non-constant", op_tok)
                c = rhs.constant_term()
                if not c:
                    self.fail("division by zero", op_tok)
                acc = acc / c
        return acc

    def unary(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            operand = self.unary()
            return -operand if tok[1] == "-" else operand
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or not exp_tok[1].isdigit():
                self.fail("exponent must be a nonnegative integer literal", exp_tok)
            return base ** int(exp_tok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return MultiPoly.constant(Fraction(value), self.vars)
        if kind == "name":
            if value not in self.vars:
                raise UndeclaredVariableError(value, pos)
            return MultiPoly.variable(value, self.vars)
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected token {value!r}", tok)


def parse_poly(text: str, variables: Iterable[str], params: Mapping[str, Number] | None = None) -> MultiPoly:
    """Parse ``text`` into a polynomial over ``variables``.

    ``params`` binds extra names to rational constants before parsing, which
    is how case quadrics such as ``s1*x1`` get concrete coefficients.
    """
    variables = tuple(variables)
    if not params:
        return _Parser(text, variables).parse()
    names = tuple(params)
    clash = set(names) & set(variables)
    if clash:
        raise PolynomialError(f"names used both as variable and parameter: {sorted(clash)}")
    ext = _Parser(text, variables + names).parse()
    for name in names:
        ext = ext.substitute(name, _as_fraction(params[name])).drop(name)
    return ext


# -- univariate helpers (coefficient lists, lowest degree first) ---------------

def to_univariate(p: MultiPoly, var: str) -> list[Fraction]:
    """Coefficient list of a polynomial that involves only ``var``."""
    i = p._index(var)
    coeffs: list[Fraction] = []
    for m, c in p.items():
        if any(e for j, e in enumerate(m) if j != i):
            raise PolynomialError(f"polynomial is not univariate in {var!r}")
        while len(coeffs) <= m[i]:
            coeffs.append(Fraction(0))
        coeffs[m[i]] = c
    return _trim(coeffs)


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def univariate_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        factor = r[-1] / lead
        q[shift] = factor
        for k, c in enumerate(b):
            r[shift + k] -= factor * c
        r = _trim(r)
    return _trim(q), r


def univariate_gcd(polys: Iterable[list[Fraction]]) -> list[Fraction]:
    """Monic gcd of univariate coefficient lists; [] if all are zero."""
    g: list[Fraction] = []
    for p in polys:
        a, b = _trim(g), _trim(p)
        while b:
            _, r = univariate_divmod(a, b)
            a, b = b, r
        g = a
    if g:
        g = [c / g[-1] for c in g]
    return g


def order_of_vanishing(coeffs: Sequence[Fraction]) -> int | None:
    """Index of the first nonzero coefficient; None for the zero polynomial."""
    for i, c in enumerate(coeffs):
        if c:
            return i
    return None
