"""Sparse multivariate polynomials with integer coefficients, plus a tiny
parser for literals like ``3*X^2*Y - 2``.

Monomials are exponent tuples over a fixed, ordered list of variables.
"""
from __future__ import annotations

import re
from typing import Callable, Iterator, Mapping, Sequence, TypeVar

Monomial = tuple[int, ...]
T = TypeVar("T")


class IntPoly:
    """Immutable polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c: int) -> IntPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> IntPoly:
        return cls(nvars, {tuple(int(k == i) for k in range(nvars)): 1})

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return IntPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> IntPoly:
        return self._coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = self._coerce(other)
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return IntPoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        out = IntPoly.const(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def _coerce(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, IntPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return IntPoly.const(self.nvars, int(other))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        return isinstance(other, IntPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms ordered by total degree, then lexicographically."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def evaluate(self, point: Sequence[T], one: T, add: Callable[[T, T], T],
                 mul: Callable[[T, T], T], scale: Callable[[int, T], T]) -> T:
        """Evaluate in an arbitrary commutative ring given by callables."""
        total = scale(0, one)
        for m, c in self.terms.items():
            val = one
            for x, e in zip(point, m):
                for _ in range(e):
                    val = mul(val, x)
            total = add(total, scale(c, val))
        return total

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"IntPoly({self.nvars}, {self.terms!r})"


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<tuple>\([^()]*\))|(?P<name>[A-Za-z_][A-Za-z_0-9.]*)"
    r"|(?P<op>[-+*^]))"
)


def tokenize(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SyntaxError(f"unexpected character {text[pos:pos + 1]!r} at column {pos + 1}")
        kind = m.lastgroup
        yield kind, m.group(kind)
        pos = m.end()


def parse_terms(text: str, names: Sequence[str]) -> list[tuple[list[str], Monomial, int]]:
    """Split a polynomial literal into ``(coefficient tokens, monomial, sign)`` terms.

    Coefficient tokens are returned raw (integers, fractions like ``1/2`` or
    tuples like ``(0,1)``) so callers decide how to interpret them.
    """
    index = {n: i for i, n in enumerate(names)}
    tokens = list(tokenize(text))
    terms = []
    i = 0
    sign = 1
    expect_term = True
    coeffs: list[str] = []
    mono = [0] * len(names)
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if not expect_term:
                terms.append((coeffs, tuple(mono), sign))
                coeffs, mono = [], [0] * len(names)
                sign = 1
            if val == "-":
                sign = -sign
            expect_term = True
            i += 1
            continue
        if kind == "op" and val == "*":
            i += 1
            continue
        if kind == "op":
            raise SyntaxError(f"unexpected {val!r}")
        if kind in ("num", "tuple"):
            coeffs.append(val)
        else:
            if val not in index:
                raise SyntaxError(f"unknown variable {val!r}")
            e = 1
            if i + 2 < len(tokens) + 1 and i + 1 < len(tokens) and tokens[i + 1] == ("op", "^"):
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "num":
                    raise SyntaxError("exponent must be a nonnegative integer")
                e = int(tokens[i + 2][1])
                i += 2
            mono[index[val]] += e
        expect_term = False
        i += 1
    if expect_term:
        if terms or coeffs:
            raise SyntaxError("dangling operator")
        raise SyntaxError("empty polynomial")
    terms.append((coeffs, tuple(mono), sign))
    return terms


def parse_int_poly(text: str, names: Sequence[str]) -> IntPoly:
    """Parse ``3*X^2*Y - 2`` style literals with integer coefficients."""
    out = IntPoly(len(names))
    for coeffs, mono, sign in parse_terms(text, names):
        c = sign
        for tok in coeffs:
            if not tok.isdigit():
                raise SyntaxError(f"integer coefficient expected, got {tok!r}")
            c *= int(tok)
        out = out + IntPoly(len(names), {mono: c})
    return out
