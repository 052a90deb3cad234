"""Commutative rings that are finitely generated as abelian groups.

A ring is ``Z^n / L`` for a lattice ``L`` together with integer structure
constants ``b_i * b_j = sum_l c[i][j][l] b_l``.  Elements are coordinate
lists over the basis ``b_0, ..., b_{n-1}``; they are stored unreduced and only
reduced (canonical coset representative) for equality and display.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .lattice import Lattice, preimage_lattice, solve_affine
from .poly import IntPoly

Coords = list[int]


class RingError(ValueError):
    pass


class FiniteZAlgebra:
    """Commutative unital ring ``Z^n / L`` with integer structure constants."""

    def __init__(self, rank: int, relations: Sequence[Sequence[int]],
                 structure: Sequence[Sequence[Sequence[int]]], unit: Sequence[int],
                 name: str = "R", recipe: tuple | None = None):
        self.rank = rank
        self.lattice = Lattice(rank, relations)
        self.structure = [[list(structure[i][j]) for j in range(rank)] for i in range(rank)]
        self.unit = list(unit)
        self.name = name
        self.recipe = recipe
        self._mul_cache: dict[tuple[int, ...], list[Coords]] = {}
        self._presentation: RingPresentation | None = None

    # -- element arithmetic on raw coordinate lists --------------------------------

    def zero(self) -> Coords:
        return [0] * self.rank

    def one(self) -> Coords:
        return list(self.unit)

    def basis_element(self, i: int) -> Coords:
        return [int(k == i) for k in range(self.rank)]

    def from_int(self, c: int) -> Coords:
        return [c * u for u in self.unit]

    def add(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        return [x + y for x, y in zip(a, b)]

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        return [x - y for x, y in zip(a, b)]

    def neg(self, a: Sequence[int]) -> Coords:
        return [-x for x in a]

    def scale(self, c: int, a: Sequence[int]) -> Coords:
        return [c * x for x in a]

    def mul(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        table = self.mul_table(a)
        out = [0] * self.rank
        for bj, col in zip(b, table):
            if bj:
                for l, v in enumerate(col):
                    out[l] += bj * v
        return out

    def mul_table(self, a: Sequence[int]) -> list[Coords]:
        """``table[j] = a * b_j`` (cached per coordinate tuple)."""
        key = tuple(a)
        table = self._mul_cache.get(key)
        if table is None:
            n = self.rank
            table = [[0] * n for _ in range(n)]
            for i, ai in enumerate(a):
                if ai:
                    row = self.structure[i]
                    for j in range(n):
                        cij = row[j]
                        tj = table[j]
                        for l in range(n):
                            tj[l] += ai * cij[l]
            if len(self._mul_cache) < 100_000:
                self._mul_cache[key] = table
        return table

    def power(self, a: Sequence[int], e: int) -> Coords:
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def square(self, a: Sequence[int]) -> Coords:
        return self.mul(a, a)

    def reduce(self, a: Sequence[int]) -> Coords:
        return self.lattice.reduce(a)

    def eq(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.sub(a, b) in self.lattice

    def is_zero(self, a: Sequence[int]) -> bool:
        return list(a) in self.lattice

    def divide(self, a: Sequence[int], c: Sequence[int]) -> Coords | None:
        """Some ``s`` with ``c * s == a``, or None."""
        sol = solve_affine(self.mul_table(c), a, self.lattice)
        return sol

    def inverse(self, a: Sequence[int]) -> Coords | None:
        return self.divide(self.one(), a)

    # -- structure -----------------------------------------------------------------

    def is_finite(self) -> bool:
        return self.lattice.rank == self.rank

    def is_torsion_free(self) -> bool:
        return self.lattice.rank == 0

    def order(self) -> int | None:
        if not self.is_finite():
            return None
        out = 1
        for k, p in enumerate(self.lattice.pivots):
            out *= self.lattice.basis[k][p]
        return out

    def elements(self) -> Iterator[Coords]:
        """All elements (canonical representatives) of a finite ring."""
        if not self.is_finite():
            raise RingError(f"{self.name} is infinite")
        ranges = [range(self.lattice.basis[k][p]) for k, p in enumerate(self.lattice.pivots)]
        for combo in itertools.product(*ranges):
            yield list(combo)

    def random_element(self, rng: random.Random, bound: int = 3) -> Coords:
        return [rng.randint(-bound, bound) for _ in range(self.rank)]

    def ideal_lattice(self, generators: Sequence[Sequence[int]]) -> Lattice:
        """Additive lattice (containing ``L``) of the ideal generated by ``generators``."""
        vecs = [self.mul(g, self.basis_element(k)) for g in generators for k in range(self.rank)]
        return Lattice(self.rank, self.lattice.basis + vecs)

    def two_torsion_lattice(self) -> Lattice:
        """Lattice of coordinates ``a`` with ``2a = 0`` in the ring."""
        cols = [self.scale(2, self.basis_element(k)) for k in range(self.rank)]
        return preimage_lattice(cols, self.rank, self.lattice)

    def element(self, coords: Sequence[int]) -> RingElement:
        if len(coords) != self.rank:
            raise RingError(f"element of {self.name} needs {self.rank} coordinates")
        return RingElement(self, tuple(coords))

    def format(self, a: Sequence[int]) -> str:
        return "(" + ",".join(str(x) for x in self.reduce(a)) + ")"

    @property
    def presentation(self) -> RingPresentation:
        """Canonical polynomial presentation (built from the preset recipe)."""
        if self._presentation is None:
            self._presentation = canonical_presentation(self)
        return self._presentation

    def __repr__(self) -> str:
        return f"<ring {self.name} rank {self.rank}>"


@dataclass(frozen=True)
class RingElement:
    """Thin value wrapper around ring coordinates."""

    ring: FiniteZAlgebra = field(repr=False, compare=False)
    coords: tuple[int, ...]

    def _other(self, other) -> tuple[int, ...]:
        if isinstance(other, RingElement):
            return other.coords
        return tuple(self.ring.from_int(int(other)))

    def __add__(self, other) -> RingElement:
        return RingElement(self.ring, tuple(self.ring.add(self.coords, self._other(other))))

    __radd__ = __add__

    def __sub__(self, other) -> RingElement:
        return RingElement(self.ring, tuple(self.ring.sub(self.coords, self._other(other))))

    def __rsub__(self, other) -> RingElement:
        return RingElement(self.ring, tuple(self.ring.sub(self._other(other), self.coords)))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, tuple(self.ring.neg(self.coords)))

    def __mul__(self, other) -> RingElement:
        return RingElement(self.ring, tuple(self.ring.mul(self.coords, self._other(other))))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RingElement, int)):
            return NotImplemented
        return self.ring.eq(self.coords, self._other(other))

    def __hash__(self) -> int:
        return hash(tuple(self.ring.reduce(self.coords)))

    def __repr__(self) -> str:
        return self.ring.format(self.coords)


# -- presets ---------------------------------------------------------------------


def integers() -> FiniteZAlgebra:
    return FiniteZAlgebra(1, [], [[[1]]], [1], name="Z", recipe=("Z",))


def integers_mod(n: int) -> FiniteZAlgebra:
    if n < 1:
        raise RingError(f"Zmod needs n >= 1, got {n}")
    return FiniteZAlgebra(1, [[n]], [[[1]]], [1], name=f"Z/{n}", recipe=("Zmod", n))


def monogenic(coeffs: Sequence[int]) -> FiniteZAlgebra:
    """``Z[X]/(f)`` for monic ``f = X^d + c_{d-1} X^{d-1} + ... + c_0``.

    ``coeffs`` lists ``c_0, ..., c_{d-1}``; the basis is ``1, X, ..., X^{d-1}``.
    """
    d = len(coeffs)
    if d < 1:
        raise RingError("monogenic needs a polynomial of degree >= 1")
    coeffs = [int(c) for c in coeffs]

    def reduce_power(k: int) -> Coords:
        # X^k in the basis 1..X^{d-1}
        vec = [0] * (2 * d)
        vec[k] = 1
        for top in range(2 * d - 1, d - 1, -1):
            c = vec[top]
            if c:
                vec[top] = 0
                for i, ci in enumerate(coeffs):
                    vec[top - d + i] -= c * ci
        return vec[:d]

    structure = [[reduce_power(i + j) for j in range(d)] for i in range(d)]
    X = IntPoly.var(1, 0)
    f = X ** d
    for i, c in enumerate(coeffs):
        f = f + c * X ** i
    terms = sorted(f.terms.items(), key=lambda mc: -mc[0][0])
    name = "Z[X]/(" + IntPoly(1, dict(terms[:1])).format(["X"])
    for m, c in terms[1:]:
        body = IntPoly(1, {m: abs(c)}).format(["X"])
        name += (" - " if c < 0 else " + ") + body
    name += ")"
    return FiniteZAlgebra(d, [], structure, [1] + [0] * (d - 1), name=name,
                          recipe=("monogenic", tuple(coeffs)))


def product(R: FiniteZAlgebra, S: FiniteZAlgebra) -> FiniteZAlgebra:
    n, m = R.rank, S.rank
    rels = [list(b) + [0] * m for b in R.lattice.basis] + [[0] * n + list(b) for b in S.lattice.basis]
    structure = [[[0] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            structure[i][j][:n] = R.structure[i][j]
    for i in range(m):
        for j in range(m):
            structure[n + i][n + j][n:] = S.structure[i][j]
    unit = list(R.unit) + list(S.unit)
    return FiniteZAlgebra(n + m, rels, structure, unit, name=f"{R.name} x {S.name}",
                          recipe=("product", R, S))


def make_ring(preset: str, *args) -> FiniteZAlgebra:
    """Build a preset ring: ``integers``, ``integers_mod(n)``, ``monogenic(coeffs)``, ``product(R, S)``."""
    table = {"integers": integers, "Z": integers, "integers_mod": integers_mod, "Zmod": integers_mod,
             "monogenic": monogenic, "product": product}
    try:
        ctor = table[preset]
    except KeyError:
        raise RingError(f"unknown ring preset {preset!r}") from None
    R = ctor(*args)
    report = validate_ring(R)
    if not report.ok:
        raise RingError("; ".join(report.failures))
    return R


# -- ring-level predicates -----------------------------------------------------------


@dataclass
class RingReport:
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_ring(R: FiniteZAlgebra) -> RingReport:
    """Check well-definedness, commutativity, associativity and the unit on basis elements."""
    n = R.rank
    failures = []
    basis = [R.basis_element(i) for i in range(n)]
    for v in R.lattice.basis:
        for j in range(n):
            if not R.is_zero(R.mul(v, basis[j])):
                failures.append(f"multiplication not well defined on relation {v} * b{j}")
    for i in range(n):
        for j in range(i + 1, n):
            if not R.eq(R.structure[i][j], R.structure[j][i]):
                failures.append(f"commutativity fails for b{i}*b{j}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = R.mul(R.mul(basis[i], basis[j]), basis[k])
                right = R.mul(basis[i], R.mul(basis[j], basis[k]))
                if not R.eq(left, right):
                    failures.append(f"associativity fails for (b{i},b{j},b{k})")
    for i in range(n):
        if not R.eq(R.mul(R.unit, basis[i]), basis[i]):
            failures.append(f"unit fails on b{i}")
    return RingReport(failures)


def ring_mul(R: FiniteZAlgebra, a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_eq(R: FiniteZAlgebra, a: RingElement, b: RingElement) -> bool:
    return R.eq(a.coords, b.coords)


def frobenius_square(R: FiniteZAlgebra, a: RingElement) -> RingElement:
    return a * a


def i2_lattice(R: FiniteZAlgebra) -> Lattice:
    """Additive lattice of the ideal generated by all ``r^2 - r``."""
    gens = [R.from_int(2)] + [R.sub(R.square(b), b) for b in (R.basis_element(k) for k in range(R.rank))]
    return R.ideal_lattice(gens)


def is_2_binomial(R: FiniteZAlgebra) -> bool:
    """True iff ``R`` has no additive 2-torsion and ``I_2`` lies in ``2R``."""
    if R.two_torsion_lattice() != R.lattice:
        return False
    return R.ideal_lattice([R.from_int(2)]).contains_lattice(i2_lattice(R))


# -- presentations -------------------------------------------------------------------


class RingPresentation:
    """``Z[X_1..X_k] / (P_alpha)`` together with a surjection onto a target ring."""

    def __init__(self, names: Sequence[str], relations: Sequence[IntPoly],
                 target: FiniteZAlgebra, images: Sequence[Sequence[int]]):
        self.names = list(names)
        self.relations = list(relations)
        self.target = target
        self.images = [list(x) for x in images]
        if len(self.images) != len(self.names):
            raise RingError("one image per variable required")
        self._monomials: list[tuple[IntPoly, Coords]] | None = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def evaluate(self, P: IntPoly) -> Coords:
        R = self.target
        return P.evaluate(self.images, R.one(), R.add, R.mul, R.scale)

    def _spanning_monomials(self) -> list[tuple[IntPoly, Coords]]:
        if self._monomials is not None:
            return self._monomials
        R = self.target
        one = IntPoly.const(self.nvars, 1)
        gens = [(one, R.one())]
        lat = R.lattice.extend([R.one()])
        frontier = list(gens)
        while frontier:
            new = []
            for poly, vec in frontier:
                for i in range(self.nvars):
                    p2 = poly * IntPoly.var(self.nvars, i)
                    v2 = R.mul(vec, self.images[i])
                    if v2 not in lat:
                        lat = lat.extend([v2])
                        new.append((p2, v2))
            gens.extend(new)
            frontier = new
        self._monomials = gens
        self._span = lat
        return gens

    def validate(self) -> list[str]:
        failures = []
        for P in self.relations:
            if not self.target.is_zero(self.evaluate(P)):
                failures.append(f"relation {P.format(self.names)} does not vanish in {self.target.name}")
        self._spanning_monomials()
        if not self._span.is_full():
            failures.append("images do not generate the target ring")
        return failures

    def preimage(self, r: Sequence[int]) -> IntPoly:
        """A polynomial ``P`` with ``P(images) == r`` in the target."""
        gens = self._spanning_monomials()
        sol = solve_affine([v for _, v in gens], r, self.target.lattice)
        if sol is None:
            raise RingError("element not in the image of the presentation")
        out = IntPoly(self.nvars)
        for c, (poly, _) in zip(sol, gens):
            if c:
                out = out + c * poly
        return out

    def __repr__(self) -> str:
        rels = ", ".join(P.format(self.names) for P in self.relations)
        return f"Z[{', '.join(self.names)}]/({rels})"


def _embed(P: IntPoly, nvars: int, offset: int) -> IntPoly:
    terms = {}
    for m, c in P.terms.items():
        mono = [0] * nvars
        mono[offset:offset + len(m)] = m
        terms[tuple(mono)] = c
    return IntPoly(nvars, terms)


def canonical_presentation(R: FiniteZAlgebra) -> RingPresentation:
    """Deterministic presentation for each preset ring."""
    if R.recipe is None:
        raise RingError(f"{R.name} has no canonical presentation; supply one")
    kind = R.recipe[0]
    if kind == "Z":
        return RingPresentation([], [], R, [])
    if kind == "Zmod":
        n = R.recipe[1]
        X = IntPoly.var(1, 0)
        return RingPresentation(["X"], [X, IntPoly.const(1, n)], R, [R.zero()])
    if kind == "monogenic":
        coeffs = R.recipe[1]
        d = len(coeffs)
        X = IntPoly.var(1, 0)
        f = X ** d
        for i, c in enumerate(coeffs):
            f = f + c * X ** i
        image = R.basis_element(1) if d >= 2 else R.from_int(-coeffs[0])
        return RingPresentation(["X"], [f], R, [image])
    if kind == "product":
        A, B = R.recipe[1], R.recipe[2]
        pa, pb = A.presentation, B.presentation
        k = 1 + pa.nvars + pb.nvars
        names = ["E"] + ["A" + s for s in pa.names] + ["B" + s for s in pb.names]
        E = IntPoly.var(k, 0)
        rels = [E * E - E]
        for P in pa.relations:
            rels.append(E * _embed(P, k, 1))
        for P in pb.relations:
            rels.append((1 - E) * _embed(P, k, 1 + pa.nvars))
        for i in range(pa.nvars):
            rels.append(IntPoly.var(k, 1 + i) * (1 - E))
        for i in range(pb.nvars):
            rels.append(IntPoly.var(k, 1 + pa.nvars + i) * E)
        n, m = A.rank, B.rank
        images = [list(A.unit) + [0] * m]
        images += [list(x) + [0] * m for x in pa.images]
        images += [[0] * n + list(y) for y in pb.images]
        return RingPresentation(names, rels, R, images)
    raise RingError(f"unknown recipe {kind!r}")
