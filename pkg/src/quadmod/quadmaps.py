"""Explicit polynomial maps ``R^m -> R^n``: cross-effects, cross-actions, the
quadratic test, the linear + homogeneous splitting and factorization through P^2.

Coefficients are ring elements given by integer coordinates. For rings without
additive torsion they may also be rational (so ``n -> n(n-1)/2`` can be
written as ``1/2*x^2 - 1/2*x``); such maps must be integer valued.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .functors import P2Layout, p2
from .modules import FPModule, ModuleMap, act
from .poly import parse_terms
from .ring import FiniteZAlgebra

Coeff = tuple  # ring coordinates (ints or Fractions)
Mono = tuple[int, ...]


class QuadMapError(ValueError):
    pass


class CoeffRing:
    """Arithmetic on coefficient tuples; rational entries only for torsion-free rings."""

    def __init__(self, R: FiniteZAlgebra):
        self.R = R
        self.n = R.rank
        self.rational_ok = R.is_torsion_free()

    def zero(self) -> Coeff:
        return (0,) * self.n

    def one(self) -> Coeff:
        return tuple(self.R.one())

    def of(self, c: Sequence) -> Coeff:
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in c):
            if not self.rational_ok:
                raise QuadMapError("rational coefficients need a ring without additive torsion")
            return tuple(Fraction(x) for x in c)
        return tuple(self.R.reduce([int(x) for x in c]))

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        return self.of([x + y for x, y in zip(a, b)])

    def neg(self, a: Coeff) -> Coeff:
        return self.of([-x for x in a])

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        out = [0] * self.n
        S = self.R.structure
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, c in enumerate(S[i][j]):
                    if c:
                        out[k] += x * y * c
        return self.of(out)

    def is_zero(self, a: Coeff) -> bool:
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in a):
            return False
        return self.R.is_zero([int(x) for x in a])

    def integral(self, a: Coeff) -> list[int] | None:
        if any(Fraction(x).denominator != 1 for x in a):
            return None
        return [int(x) for x in a]


class RPoly:
    """Sparse polynomial with ring coefficients."""

    __slots__ = ("K", "nvars", "terms")

    def __init__(self, K: CoeffRing, nvars: int, terms: dict[Mono, Coeff] | None = None):
        self.K = K
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if not K.is_zero(c)}

    @classmethod
    def var(cls, K: CoeffRing, nvars: int, i: int) -> RPoly:
        return cls(K, nvars, {tuple(int(k == i) for k in range(nvars)): K.one()})

    @classmethod
    def const(cls, K: CoeffRing, nvars: int, c: Sequence) -> RPoly:
        return cls(K, nvars, {(0,) * nvars: K.of(c)})

    def __add__(self, other: RPoly) -> RPoly:
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = self.K.add(t[m], c) if m in t else c
        return RPoly(self.K, self.nvars, t)

    def __neg__(self) -> RPoly:
        return RPoly(self.K, self.nvars, {m: self.K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: RPoly) -> RPoly:
        return self + (-other)

    def __mul__(self, other: RPoly) -> RPoly:
        t: dict[Mono, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = self.K.mul(c1, c2)
                t[m] = self.K.add(t[m], c) if m in t else c
        return RPoly(self.K, self.nvars, t)

    def scaled(self, c: Sequence) -> RPoly:
        return RPoly.const(self.K, self.nvars, c) * self

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def substitute(self, images: Sequence[RPoly]) -> RPoly:
        """Replace variable ``i`` by ``images[i]``."""
        nv = images[0].nvars if images else 0
        out = RPoly(self.K, nv)
        cache: dict[tuple[int, int], RPoly] = {}
        for m, c in self.terms.items():
            term = RPoly.const(self.K, nv, c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        p = RPoly.const(self.K, nv, self.K.one())
                        for _ in range(e):
                            p = p * images[i]
                        cache[(i, e)] = p
                    term = term * cache[(i, e)]
            out = out + term
        return out

    def evaluate(self, point: Sequence[Sequence[int]]) -> Coeff:
        K = self.K
        total = K.zero()
        for m, c in self.terms.items():
            val = c
            for x, e in zip(point, m):
                for _ in range(e):
                    val = K.mul(val, K.of(x))
            total = K.add(total, val)
        return total

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0])):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            sign = "+"
            if len(c) == 1 and c[0] < 0:
                sign, c = "-", (-c[0],)
            coeff = _format_coeff(c)
            if not mono:
                body = coeff
            elif coeff == "1":
                body = mono
            else:
                body = f"{coeff}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _format_coeff(c: Coeff) -> str:
    if len(c) == 1:
        return str(c[0])
    return "(" + ",".join(str(x) for x in c) + ")"


@dataclass
class PolyMap:
    """``f: R^m -> R^n`` with ``f(x)_k = F_k(x_1, ..., x_m)``, pointed."""

    ring: FiniteZAlgebra
    m: int
    n: int
    components: list[RPoly]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise QuadMapError(f"expected {self.n} components, got {len(self.components)}")
        for F in self.components:
            if F.nvars != self.m:
                raise QuadMapError("component polynomial has the wrong number of variables")
            if (0,) * self.m in F.terms:
                raise QuadMapError("constant terms must vanish")

    @property
    def K(self) -> CoeffRing:
        return self.components[0].K if self.components else CoeffRing(self.ring)

    @property
    def degree(self) -> int:
        return max((F.degree() for F in self.components), default=-1)

    def variable_names(self) -> list[str]:
        return variable_names(self.m)

    def __call__(self, x: Sequence[Sequence[int]]) -> list[list[int]]:
        out = []
        for F in self.components:
            v = self.K.integral(F.evaluate(x))
            if v is None:
                raise QuadMapError("map is not integer valued at this point")
            out.append(self.ring.reduce(v))
        return out

    def compose_with(self, images: Sequence[RPoly]) -> list[RPoly]:
        return [F.substitute(images) for F in self.components]

    def format(self) -> str:
        names = self.variable_names()
        return "[" + ", ".join(F.format(names) for F in self.components) + "]"

    def is_integer_valued(self) -> bool:
        """Integral on all of ``R^m``.

        Each output coordinate is a polynomial of degree ``<= d`` in the
        ``m * rank`` integer input coordinates, so integrality on the grid
        ``{0..d}^(m*rank)`` decides it.
        """
        K = self.K
        if all(K.integral(c) is not None for F in self.components for c in F.terms.values()):
            return True
        d = self.degree
        R = self.ring
        for coords in itertools.product(range(d + 1), repeat=self.m * R.rank):
            x = [list(coords[i * R.rank:(i + 1) * R.rank]) for i in range(self.m)]
            if any(K.integral(F.evaluate(x)) is None for F in self.components):
                return False
        return True


def variable_names(m: int) -> list[str]:
    return [f"x{i + 1}" for i in range(m)]


def parse_coefficient(tok: str, R: FiniteZAlgebra) -> list:
    if tok.startswith("("):
        parts = [p.strip() for p in tok[1:-1].split(",") if p.strip()]
        if len(parts) != R.rank:
            raise QuadMapError(f"element literal {tok} needs {R.rank} coordinates")
        return [Fraction(p) for p in parts]
    return [x * Fraction(tok) for x in R.one()]


def parse_polymap(R: FiniteZAlgebra, m: int, n: int, texts: Sequence[str]) -> PolyMap:
    """Components written like ``1/2*x^2 - 1/2*x`` or ``(0,1)*x1*x2 + 3*x2``.

    Variables are ``x1..xm``; for ``m = 1`` plain ``x`` works too.
    """
    K = CoeffRing(R)
    names = variable_names(m)
    alias = ["x"] if m == 1 else []
    comps = []
    for text in texts:
        poly = RPoly(K, m)
        for coeffs, mono, sign in parse_terms(text, names + alias):
            if alias:
                mono = (mono[0] + mono[1],)
            c = [sign * x for x in R.one()]
            for tok in coeffs:
                c = list(K.mul(tuple(c), K.of(parse_coefficient(tok, R))))
            poly = poly + RPoly(K, m, {mono: K.of(c)})
        comps.append(poly)
    f = PolyMap(R, m, n, comps)
    if not f.is_integer_valued():
        raise QuadMapError("map is not integer valued")
    return f


# -- symbolic machinery ------------------------------------------------------------------------------


def _vars(K: CoeffRing, nvars: int, start: int, count: int) -> list[RPoly]:
    return [RPoly.var(K, nvars, start + i) for i in range(count)]


def _shift(K: CoeffRing, vs: Sequence[RPoly], scalar: RPoly | None = None) -> list[RPoly]:
    return [v * scalar if scalar is not None else v for v in vs]


def _sum(a: Sequence[RPoly], b: Sequence[RPoly]) -> list[RPoly]:
    return [x + y for x, y in zip(a, b)]


@dataclass
class CrossEffect:
    bilinear: bool
    matrix: list[list[list[Coeff]]] | None  # matrix[k][i][j]: coefficient of x_i y_j in component k
    offending: tuple[int, Mono] | None  # component and monomial in (x, y) variables
    polynomials: list[RPoly]

    def format(self, m: int) -> str:
        names = [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)]
        return "[" + ", ".join(F.format(names) for F in self.polynomials) + "]"


def cross_effect(f: PolyMap) -> CrossEffect:
    """``d_f(x, y) = f(x + y) - f(x) - f(y)`` expanded symbolically."""
    K, m = f.K, f.m
    X = _vars(K, 2 * m, 0, m)
    Y = _vars(K, 2 * m, m, m)
    polys = [a - b - c for a, b, c in zip(f.compose_with(_sum(X, Y)), f.compose_with(X), f.compose_with(Y))]
    matrix = [[[K.zero() for _ in range(m)] for _ in range(m)] for _ in polys]
    for k, P in enumerate(polys):
        for mono, c in sorted(P.terms.items()):
            if sum(mono[:m]) != 1 or sum(mono[m:]) != 1:
                return CrossEffect(False, None, (k, mono), polys)
            i, j = mono[:m].index(1), mono[m:].index(1)
            matrix[k][i][j] = c
    return CrossEffect(True, matrix, None, polys)


def cross_actions(f: PolyMap, r: Sequence[int]) -> tuple[PolyMap, PolyMap]:
    """``(f_r, f_[r])`` with ``f_r(x) = f(rx) - r f(x)`` and ``f_[r](x) = f(rx) - r^2 f(x)``."""
    K, m = f.K, f.m
    X = _vars(K, m, 0, m)
    rc = K.of(r)
    frx = f.compose_with([v.scaled(rc) for v in X])
    r2 = K.mul(rc, rc)
    fr = [a - F.scaled(rc) for a, F in zip(frx, f.components)]
    fsq = [a - F.scaled(r2) for a, F in zip(frx, f.components)]
    return PolyMap(f.ring, m, f.n, fr), PolyMap(f.ring, m, f.n, fsq)


def _identities(f: PolyMap) -> list[tuple[str, list[RPoly], int]]:
    """The three defining laws as polynomials in (x, y, z, r, s); last entry: variable count."""
    K, m = f.K, f.m
    nv = 3 * m + 2
    X, Y, Z = (_vars(K, nv, k * m, m) for k in range(3))
    r, s = RPoly.var(K, nv, 3 * m), RPoly.var(K, nv, 3 * m + 1)
    F = f.compose_with
    add1 = [a - b - c - d + e + g + h for a, b, c, d, e, g, h in zip(
        F(_sum(_sum(X, Y), Z)), F(_sum(X, Y)), F(_sum(Y, Z)), F(_sum(X, Z)), F(X), F(Y), F(Z))]
    rs = r * s
    rX, sY = _shift(K, X, r), _shift(K, Y, s)
    add2 = [a - b - c - rs * (d - e - g) for a, b, c, d, e, g in zip(
        F(_sum(rX, sY)), F(rX), F(sY), F(_sum(X, Y)), F(X), F(Y))]
    r2 = r * r
    scal = [a - r2 * b - s * c + r2 * s * d for a, b, c, d in zip(
        F(_shift(K, X, rs)), F(_shift(K, X, s)), F(rX), F(X))]
    return [("defadd1", add1, nv), ("defadd2", add2, nv), ("defscal1", scal, nv)]


@dataclass
class QuadraticVerdict:
    quadratic: bool
    method: str  # "symbolic", "exhaustive" or "sampled"
    identity: str | None = None
    component: int | None = None
    monomial: Mono | None = None
    point: dict | None = None

    def format(self) -> str:
        if self.quadratic:
            return f"quadratic ({self.method})"
        out = f"not quadratic: {self.identity} fails"
        if self.monomial is not None:
            out += f" (component {self.component + 1}, monomial {self.monomial})"
        if self.point:
            out += " at " + ", ".join(f"{k}={v}" for k, v in self.point.items())
        return out


_EXHAUSTIVE_LIMIT = 200_000


def _point_labels(m: int) -> list[str]:
    return [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + \
           [f"z{i + 1}" for i in range(m)] + ["r", "s"]


def _find_counterexample(f: PolyMap, polys: list[RPoly], nv: int, rng: random.Random) -> dict | None:
    """A point where one of ``polys`` is nonzero as a function."""
    R, K = f.ring, f.K
    labels = _point_labels(f.m)

    used = [any(mono[i] for P in polys for mono in P.terms) for i in range(nv)]

    def bad(point) -> bool:
        return any(not K.is_zero(P.evaluate(point)) for P in polys)

    def shown(point) -> dict:
        return {l: _format_coeff(tuple(v)) for l, v, u in zip(labels, point, used) if u}

    if _exhaustive_feasible(R, nv):
        elems = [list(e) for e in R.elements()]
        for point in itertools.product(elems, repeat=nv):
            if bad(point):
                return shown(point)
        return None
    for bound in (1, 2, 3, 5, 8):
        for _ in range(400):
            point = [R.random_element(rng, bound) for _ in range(nv)]
            if bad(point):
                return shown(point)
    return None


def is_quadratic(f: PolyMap, rng: random.Random | None = None) -> QuadraticVerdict:
    """Check the three defining laws as polynomial identities.

    Coefficientwise vanishing proves a law. Otherwise a failing point is
    searched for; over a small finite ring a polynomial can vanish as a
    function without vanishing coefficientwise, and the exhaustive search then
    decides. Over torsion-free rings coefficientwise comparison is exact.
    """
    rng = rng or random.Random(0)
    method = "symbolic"
    for name, polys, nv in _identities(f):
        nonzero = [(k, P) for k, P in enumerate(polys) if not P.is_zero()]
        if not nonzero:
            continue
        point = _find_counterexample(f, polys, nv, rng)
        if point is None and _exhaustive_feasible(f.ring, nv):
            method = "exhaustive"
            continue
        k, P = nonzero[0]
        mono = min(P.terms, key=lambda mo: (sum(mo), mo))
        return QuadraticVerdict(False, "symbolic", name, k, mono, point)
    return QuadraticVerdict(True, method)


def _exhaustive_feasible(R: FiniteZAlgebra, nv: int) -> bool:
    return R.is_finite() and R.order() ** nv <= _EXHAUSTIVE_LIMIT


def is_linear(f: PolyMap) -> bool:
    return all(sum(m) == 1 for F in f.components for m in F.terms)


def is_homogeneous(f: PolyMap) -> bool:
    """``f(rx) = r^2 f(x)`` as a polynomial identity in (x, r)."""
    K, m = f.K, f.m
    X = _vars(K, m + 1, 0, m)
    r = RPoly.var(K, m + 1, m)
    lhs = f.compose_with([v * r for v in X])
    rhs = [(r * r) * F.substitute(X) for F in f.components]
    return all((a - b).is_zero() for a, b in zip(lhs, rhs))


def poly_equal(f: PolyMap, g: PolyMap) -> bool:
    return all((a - b).is_zero() for a, b in zip(f.components, g.components))


@dataclass
class LinHomSplit:
    available: bool
    r: list[int] | None = None
    linear: PolyMap | None = None
    homogeneous: PolyMap | None = None
    reason: str = ""


def _box(R: FiniteZAlgebra, bound: int) -> Iterable[list[int]]:
    pts = itertools.product(range(-bound, bound + 1), repeat=R.rank)
    for p in sorted(pts, key=lambda v: (max(map(abs, v)), [abs(x) for x in v], v)):
        yield list(p)


def find_unit_pair(R: FiniteZAlgebra, bound: int = 3) -> list[int] | None:
    """Some ``r`` with ``r`` and ``r - 1`` both invertible, coordinates in ``[-bound, bound]``."""
    for r in _box(R, bound):
        if R.inverse(r) is not None and R.inverse(R.sub(r, R.one())) is not None:
            return R.reduce(r)
    return None


def decompose_lin_hom(f: PolyMap, r: Sequence[int] | None = None, bound: int = 3) -> LinHomSplit:
    """``f = f1 + f2`` with ``f1 = -f_[r] / (r^2 - r)`` linear and ``f2 = f_r / (r^2 - r)`` homogeneous."""
    if not is_quadratic(f).quadratic:
        raise QuadMapError("decomposition needs a quadratic map")
    R = f.ring
    if r is None:
        r = find_unit_pair(R, bound)
        if r is None:
            return LinHomSplit(False, reason=f"no r with r and r-1 invertible in the box [-{bound},{bound}]")
    else:
        r = R.reduce(list(r))
        if R.inverse(r) is None or R.inverse(R.sub(r, R.one())) is None:
            return LinHomSplit(False, r=r, reason="r and r-1 must both be invertible")
    c = R.inverse(R.sub(R.square(r), r))
    fr, fsq = cross_actions(f, r)
    minus_c = R.neg(c)
    f1 = PolyMap(R, f.m, f.n, [F.scaled(minus_c) for F in fsq.components])
    f2 = PolyMap(R, f.m, f.n, [F.scaled(c) for F in fr.components])
    total = PolyMap(R, f.m, f.n, [a + b for a, b in zip(f1.components, f2.components)])
    if not (poly_equal(total, f) and is_linear(f1) and is_homogeneous(f2)):
        raise QuadMapError("decomposition failed its own verification")
    return LinHomSplit(True, r, f1, f2)


# -- factorization through P^2 -------------------------------------------------------------------------


@dataclass
class P2Factorization:
    map: ModuleMap
    layout: P2Layout


def factor_through_p2(f: PolyMap) -> P2Factorization:
    """The linear ``g: P^2(R^m) -> R^n`` with ``g(p(x)) = f(x)``.

    On labels: ``u_i -> f(e_i)``, ``c_ij -> d_f(e_i, e_j)`` and
    ``i_i(t) -> f(r e_i) - r f(e_i)`` for the witness ``r`` of ``t = D(r)``.
    """
    if not is_quadratic(f).quadratic:
        raise QuadMapError("only quadratic maps factor through P^2")
    R = f.ring
    src = FPModule.free(R, f.m, variable_names(f.m))
    P = p2(src)
    lay: P2Layout = P.layout["layout"]
    tgt = FPModule.free(R, f.n)

    def e(i: int, r=None) -> list[list[int]]:
        x = [R.zero() for _ in range(f.m)]
        x[i] = list(r) if r is not None else R.one()
        return x

    def flat(v: list[list[int]]) -> list[int]:
        return [c for block in v for c in block]

    cols: list = [None] * lay.size
    for i in range(f.m):
        fe = flat(f(e(i)))
        cols[lay.u(i)] = fe
        for s, w in enumerate(lay.ideal.witnesses):
            fre = flat(f(e(i, w)))
            cols[lay.iota(i, s)] = [a - b for a, b in zip(fre, act(R, w, fe))]
    for (i, j), k in lay.cross.items():
        both = e(i)
        both[j] = R.one()
        v = flat(f(both))
        cols[k] = [a - b - c for a, b, c in zip(v, flat(f(e(i))), flat(f(e(j))))]
    return P2Factorization(ModuleMap(P.module, tgt, cols), lay)


def factorization_check(f: PolyMap, fac: P2Factorization, points: Iterable[Sequence[Sequence[int]]]) -> bool:
    for x in points:
        flat_x = [c for block in x for c in block]
        lhs = fac.map.apply(fac.layout.p(flat_x))
        rhs = [c for block in f(x) for c in block]
        if not fac.map.codomain.eq(lhs, rhs):
            return False
    return True
