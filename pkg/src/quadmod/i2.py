"""The ideal ``I_2`` generated by all ``r^2 - r`` and the universal quadratic
derivation ``D(r) = r^2 - r``.

``I_2`` is presented on the labels ``{2} + {b^2 - b}`` (``b`` running over the
ring's Z-basis, zero values dropped).  Every label is ``D`` of a witness:
``D(2) = 2`` and ``D(b) = b^2 - b``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .modules import FPModule, ModuleError, ModuleMap, act, add, is_isomorphism, lift
from .poly import IntPoly
from .ring import Coords, FiniteZAlgebra, RingPresentation
from .lattice import Lattice, preimage_lattice

STAR = "*"


@dataclass
class IdealI2:
    ring: FiniteZAlgebra
    module: FPModule
    inclusion: ModuleMap  # into R as a free module of rank 1
    witnesses: list[Coords]  # r_s with D(r_s) = t_s

    @property
    def labels(self) -> list[str]:
        return self.module.labels

    def values(self) -> list[Coords]:
        return [c[:self.ring.rank] for c in self.inclusion.columns]

    def lattice(self) -> Lattice:
        """Additive lattice of ``I_2`` inside ``R`` (contains the ring relations)."""
        return self.inclusion.image_lattice()


def span_submodule(N: FPModule, gens: Sequence[Sequence[int]], labels: Sequence[str]) -> tuple[FPModule, ModuleMap]:
    """Submodule of ``N`` presented on exactly the given generators."""
    from .modules import minimal_r_generators, slot_relations
    R = N.ring
    s = len(gens)
    cover = [act(R, R.basis_element(l), g) for g in gens for l in range(R.rank)]
    syz = preimage_lattice(cover, N.dim, N.lattice)
    base = Lattice(s * R.rank, slot_relations(R, s))
    rels = minimal_r_generators(R, s, syz, base)
    K = FPModule(R, s, rels, labels, lattice=syz)
    return K, ModuleMap(K, N, [list(g) for g in gens], check=False)


_i2_cache: dict[int, tuple[FiniteZAlgebra, IdealI2]] = {}


def i2_ideal(R: FiniteZAlgebra) -> IdealI2:
    hit = _i2_cache.get(id(R))
    if hit is not None and hit[0] is R:
        return hit[1]
    values, labels, witnesses = [], [], []
    two = R.from_int(2)
    if not R.is_zero(two):
        values.append(two)
        labels.append("D(2)")
        witnesses.append(two)
    for l in range(R.rank):
        b = R.basis_element(l)
        v = R.sub(R.square(b), b)
        if not R.is_zero(v):
            values.append(v)
            labels.append(f"D(b{l})")
            witnesses.append(b)
    free = FPModule.free(R, 1, ["1"])
    module, incl = span_submodule(free, values, labels)
    ideal = IdealI2(R, module, incl, witnesses)
    _i2_cache[id(R)] = (R, ideal)
    return ideal


# -- D-expansions ------------------------------------------------------------------------------


def monomial_expansion(mono: Sequence[int]) -> dict[int, IntPoly]:
    """Coefficients ``c_k`` with ``M^2 - M = sum c_k (X_k^2 - X_k)`` for ``M = prod X_k^m_k``."""
    k = len(mono)
    out: dict[int, IntPoly] = {}
    for idx, m in enumerate(mono):
        if m == 0:
            continue
        left = [2 * e for e in mono[:idx]]
        right = list(mono[idx + 1:])
        terms = {}
        for j in range(m - 1, 2 * m - 1):
            terms[tuple(left + [j] + right)] = 1
        out[idx] = IntPoly(k, terms)
    return out


def d_expansion(P: IntPoly) -> dict[int | str, IntPoly]:
    """``P^2 - P`` as ``sum_i lam_i (X_i^2 - X_i) + lam_* * 2`` with polynomial coefficients."""
    k = P.nvars
    out: dict[int | str, IntPoly] = {}

    def bump(key, poly):
        out[key] = out.get(key, IntPoly(k)) + poly

    terms = P.sorted_terms()
    for mono, a in terms:
        for idx, c in monomial_expansion(mono).items():
            bump(idx, a * c)
        sq = IntPoly(k, {tuple(2 * e for e in mono): 1})
        if comb_signed(a):
            bump(STAR, comb_signed(a) * sq)
    for x in range(len(terms)):
        for y in range(x + 1, len(terms)):
            (m1, a1), (m2, a2) = terms[x], terms[y]
            bump(STAR, IntPoly(k, {tuple(p + q for p, q in zip(m1, m2)): a1 * a2}))
    return {key: v for key, v in out.items() if not v.is_zero()}


def comb_signed(a: int) -> int:
    """``a (a - 1) / 2`` for any integer ``a``."""
    return a * (a - 1) // 2


def expansion_identity_holds(P: IntPoly, lam: dict[int | str, IntPoly]) -> bool:
    """Polynomial identity ``sum lam_i pi_i == P^2 - P`` in ``Z[X]``."""
    k = P.nvars
    total = IntPoly(k)
    for key, c in lam.items():
        if key == STAR:
            total = total + 2 * c
        else:
            X = IntPoly.var(k, key)
            total = total + c * (X * X - X)
    return total == P * P - P


def pi_values(pres: RingPresentation) -> list[Coords]:
    """``x_i^2 - x_i`` for each variable, then ``2`` for ``*``."""
    R = pres.target
    vals = [R.sub(R.square(x), x) for x in pres.images]
    return vals + [R.from_int(2)]


def evaluate_expansion(pres: RingPresentation, lam: dict[int | str, IntPoly]) -> Coords:
    R = pres.target
    pis = pi_values(pres)
    total = R.zero()
    for key, c in lam.items():
        idx = pres.nvars if key == STAR else key
        total = R.add(total, R.mul(pres.evaluate(c), pis[idx]))
    return total


def _pi_coordinates(ideal: IdealI2, pres: RingPresentation) -> list[list[int]]:
    """Each ``pi_i`` written in the label coordinates of ``I_2``."""
    out = []
    for v in pi_values(pres):
        x = lift(ideal.inclusion, v)
        if x is None:
            raise ModuleError("x^2 - x is not in I_2; presentation is inconsistent")
        out.append(x)
    return out


_pi_cache: dict[int, tuple[RingPresentation, list[list[int]]]] = {}


def _pi_coords_cached(ideal: IdealI2, pres: RingPresentation) -> list[list[int]]:
    hit = _pi_cache.get(id(pres))
    if hit is not None and hit[0] is pres:
        return hit[1]
    coords = _pi_coordinates(ideal, pres)
    _pi_cache[id(pres)] = (pres, coords)
    return coords


def universal_derivation(R: FiniteZAlgebra, r: Sequence[int], pres: RingPresentation | None = None) -> list[int]:
    """``D(r)`` in the label coordinates of ``I_2``, via the D-expansion of a preimage polynomial."""
    pres = pres or R.presentation
    ideal = i2_ideal(R)
    P = pres.preimage(r)
    lam = d_expansion(P)
    coords = _pi_coords_cached(ideal, pres)
    out = ideal.module.zero_vector()
    for key, c in lam.items():
        idx = pres.nvars if key == STAR else key
        out = add(out, act(R, pres.evaluate(c), coords[idx]))
    target = R.sub(R.square(r), r)
    if not R.eq(ideal.inclusion.apply(out)[:R.rank], target):
        raise ModuleError("D-expansion failed to certify r^2 - r")
    return out


class Derivation:
    """Cached evaluator ``r -> D(r)`` in ``I_2`` label coordinates."""

    def __init__(self, R: FiniteZAlgebra):
        self.ring = R
        self.ideal = i2_ideal(R)
        self._cache: dict[tuple[int, ...], list[int]] = {}

    def __call__(self, r: Sequence[int]) -> list[int]:
        key = tuple(self.ring.reduce(r))
        hit = self._cache.get(key)
        if hit is None:
            hit = universal_derivation(self.ring, list(key))
            self._cache[key] = hit
        return hit


_derivations: dict[int, tuple[FiniteZAlgebra, Derivation]] = {}


def derivation(R: FiniteZAlgebra) -> Derivation:
    hit = _derivations.get(id(R))
    if hit is None or hit[0] is not R:
        hit = (R, Derivation(R))
        _derivations[id(R)] = hit
    return hit[1]


def direct_lift(R: FiniteZAlgebra, r: Sequence[int]) -> list[int] | None:
    """``r^2 - r`` lifted into ``I_2`` by a lattice solve (independent of presentations)."""
    ideal = i2_ideal(R)
    return lift(ideal.inclusion, R.sub(R.square(r), r))


# -- reduced presentation ------------------------------------------------------------------------


@dataclass
class PresentedI2:
    module: FPModule
    comparison: ModuleMap
    certified: bool


def i2_presented(pres: RingPresentation) -> PresentedI2:
    """``I_2`` on generators ``pi_i`` (variables, then ``*``) with the reduced relations."""
    R = pres.target
    n = R.rank
    k = pres.nvars + 1
    pis = pi_values(pres)
    rels = []
    for i in range(k):
        for j in range(i + 1, k):
            v = [0] * (k * n)
            v[j * n:(j + 1) * n] = pis[i]
            v[i * n:(i + 1) * n] = R.neg(pis[j])
            rels.append(v)
    for P in pres.relations:
        lam = d_expansion(P)
        v = [0] * (k * n)
        for key, c in lam.items():
            idx = pres.nvars if key == STAR else key
            v[idx * n:(idx + 1) * n] = R.add(v[idx * n:(idx + 1) * n], pres.evaluate(c))
        rels.append(v)
    labels = [f"pi_{name}" for name in pres.names] + ["pi_*"]
    M = FPModule(R, k, rels, labels)
    ideal = i2_ideal(R)
    comparison = ModuleMap(M, ideal.module, _pi_coordinates(ideal, pres))
    return PresentedI2(M, comparison, is_isomorphism(comparison))


# -- quadratic derivations -----------------------------------------------------------------------


@dataclass
class QuadraticDerivationSpec:
    """A derivation ``R -> M`` encoded by its values on the ``I_2`` labels."""

    target: FPModule
    values: list[list[int]]

    def linear_map(self) -> ModuleMap:
        return ModuleMap(i2_ideal(self.target.ring).module, self.target, self.values)

    def evaluate(self, r: Sequence[int]) -> list[int]:
        return self.linear_map().apply(derivation(self.target.ring)(r))


Evaluator = Callable[[Sequence[int]], Sequence[int]]


def derivation_check(d: QuadraticDerivationSpec | Evaluator, M: FPModule,
                     samples: Sequence[tuple[Coords, Coords]]) -> bool:
    """Both defining identities of a quadratic derivation on the sample pairs."""
    R = M.ring
    ev = d.evaluate if isinstance(d, QuadraticDerivationSpec) else d
    d2 = list(ev(R.from_int(2)))
    for r, s in samples:
        dr, ds = list(ev(r)), list(ev(s))
        lhs = list(ev(R.add(r, s)))
        rhs = add(add(dr, ds), act(R, R.mul(r, s), d2))
        if not M.eq(lhs, rhs):
            return False
        lhs = list(ev(R.mul(r, s)))
        rhs = add(act(R, r, ds), act(R, R.square(s), dr))
        if not M.eq(lhs, rhs):
            return False
    return True


@dataclass
class DerivationFactorization:
    map: ModuleMap
    unique: bool


def factor_derivation(d: QuadraticDerivationSpec | Evaluator, M: FPModule) -> DerivationFactorization:
    """The linear ``lam: I_2 -> M`` with ``lam(D(r)) = d(r)``.

    ``lam`` is forced on each label ``t_s = D(r_s)``; the construction fails
    (with the offending relation) when those values violate a relation of ``I_2``.
    """
    R = M.ring
    ideal = i2_ideal(R)
    ev = d.evaluate if isinstance(d, QuadraticDerivationSpec) else d
    cols = [list(ev(w)) for w in ideal.witnesses]
    lam = ModuleMap(ideal.module, M, cols)
    # labels are in the image of D, so any factorization agrees with lam on generators
    D = derivation(R)
    unique = all(ideal.module.eq(D(w), ideal.module.gen(s)) for s, w in enumerate(ideal.witnesses))
    return DerivationFactorization(lam, unique)


def random_derivation_spec(M: FPModule, rng: random.Random) -> QuadraticDerivationSpec:
    from .modules import random_map
    lam = random_map(i2_ideal(M.ring).module, M, rng)
    return QuadraticDerivationSpec(M, lam.columns)


# -- rho identities ------------------------------------------------------------------------------


class Formal:
    """Finitely supported R-linear combination of symbols ``[x]`` with ``[0] = [1] = 0``."""

    def __init__(self, R: FiniteZAlgebra, terms: dict[tuple[int, ...], Coords] | None = None):
        self.ring = R
        self.terms = terms or {}

    @classmethod
    def symbol(cls, R: FiniteZAlgebra, x: Sequence[int]) -> Formal:
        key = tuple(R.reduce(x))
        if key == tuple(R.reduce(R.zero())) or key == tuple(R.reduce(R.one())):
            return cls(R)
        return cls(R, {key: R.one()})

    def __add__(self, other: Formal) -> Formal:
        R = self.ring
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = R.add(t.get(k, R.zero()), c)
        return Formal(R, t)

    def __neg__(self) -> Formal:
        return Formal(self.ring, {k: self.ring.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other: Formal) -> Formal:
        return self + (-other)

    def times(self, r: Sequence[int]) -> Formal:
        R = self.ring
        return Formal(R, {k: R.mul(r, c) for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.terms.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Formal) and (self - other).is_zero()


def rho1(R: FiniteZAlgebra, x: Coords, y: Coords) -> Formal:
    S = Formal.symbol
    return S(R, R.add(x, y)) - S(R, x) - S(R, y) - S(R, R.from_int(2)).times(R.mul(x, y))


def rho2(R: FiniteZAlgebra, x: Coords, y: Coords) -> Formal:
    S = Formal.symbol
    return S(R, R.mul(x, y)) - S(R, y).times(x) - S(R, x).times(R.square(y))


def _sum(R: FiniteZAlgebra, xs: Sequence[Coords]) -> Coords:
    out = R.zero()
    for x in xs:
        out = R.add(out, x)
    return out


def _prod(R: FiniteZAlgebra, xs: Sequence[Coords]) -> Coords:
    out = R.one()
    for x in xs:
        out = R.mul(out, x)
    return out


def _total(R: FiniteZAlgebra, parts: Sequence[Formal]) -> Formal:
    out = Formal(R)
    for p in parts:
        out = out + p
    return out


def _relrho1(R, r1, r2, x, y, z):
    return rho1(R, R.add(x, y), z), [r1(R, x, R.add(y, z)), -r1(R, x, y), r1(R, y, z)]


def _relrho1a(R, r1, r2, x, y, z):
    return rho1(R, x, R.add(y, z)), [r1(R, y, R.add(x, z)), r1(R, x, z), -r1(R, y, z)]


def _relrho1s(R, r1, r2, xs, y):
    parts = [r1(R, xs[i], R.add(y, _sum(R, xs[:i]))) for i in range(len(xs))]
    parts += [-r1(R, xs[i], _sum(R, xs[:i])) for i in range(1, len(xs))]
    return rho1(R, _sum(R, xs), y), parts


def _relrho2g(R, r1, r2, x, y, z):
    return rho2(R, R.add(x, y), z), [r2(R, x, z), r2(R, y, z), r1(R, R.mul(x, z), R.mul(y, z)),
                                     -r1(R, x, y).times(R.square(z))]


def _relrho2gs(R, r1, r2, xs, y):
    parts = [r2(R, x, y) for x in xs]
    for i in range(len(xs) - 1):
        head = _sum(R, xs[:i + 1])
        parts.append(r1(R, R.mul(head, y), R.mul(xs[i + 1], y)))
        parts.append(-r1(R, head, xs[i + 1]).times(R.square(y)))
    return rho2(R, _sum(R, xs), y), parts


def _relrho2d(R, r1, r2, x, y, z):
    two = R.from_int(2)
    return rho2(R, x, R.add(y, z)), [r2(R, x, y), r2(R, x, z),
                                     (r2(R, x, two) - r2(R, two, x)).times(R.mul(y, z)),
                                     r1(R, R.mul(x, y), R.mul(x, z)), -r1(R, y, z).times(x)]


def _relrho2ds(R, r1, r2, x, ys):
    two = R.from_int(2)
    parts = [r2(R, x, y) for y in ys]
    pairs = R.zero()
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            pairs = R.add(pairs, R.mul(ys[i], ys[j]))
    parts.append((r2(R, x, two) - r2(R, two, x)).times(pairs))
    for i in range(len(ys) - 1):
        head = _sum(R, ys[:i + 1])
        parts.append(r1(R, R.mul(x, head), R.mul(x, ys[i + 1])))
        parts.append(-r1(R, head, ys[i + 1]).times(x))
    return rho2(R, x, _sum(R, ys)), parts


def _relrho3(R, r1, r2, x, y, z):
    return rho2(R, R.mul(x, y), z), [r2(R, x, R.mul(y, z)), r2(R, y, z).times(x),
                                     -r2(R, x, y).times(R.square(z))]


def _relrho3a(R, r1, r2, x, y, z):
    return rho2(R, x, R.mul(y, z)), [r2(R, y, R.mul(x, z)),
                                     (r2(R, x, y) - r2(R, y, x)).times(R.square(z)),
                                     r2(R, x, z).times(y), -r2(R, y, z).times(x)]


def _relrho3s(R, r1, r2, xs, y):
    n = len(xs)
    parts = [r2(R, xs[i], R.mul(_prod(R, xs[i + 1:]), y)).times(_prod(R, xs[:i])) for i in range(n)]
    parts += [-r2(R, xs[i], _prod(R, xs[i + 1:])).times(R.mul(R.square(y), _prod(R, xs[:i])))
              for i in range(n - 1)]
    return rho2(R, _prod(R, xs), y), parts


def _flipped_rho1(R: FiniteZAlgebra, x: Coords, y: Coords) -> Formal:
    # sign of the xy[2] term flipped
    return rho1(R, x, y) + Formal.symbol(R, R.from_int(2)).times(R.scale(2, R.mul(x, y)))


def _flipped_rho2(R: FiniteZAlgebra, x: Coords, y: Coords) -> Formal:
    # sign of the y^2[x] term flipped
    return rho2(R, x, y) + Formal.symbol(R, x).times(R.scale(2, R.square(y)))


_BUILDERS = {"relrho1": _relrho1, "relrho1a": _relrho1a, "relrho1s": _relrho1s,
             "relrho2g": _relrho2g, "relrho2gs": _relrho2gs, "relrho2d": _relrho2d,
             "relrho2ds": _relrho2ds, "relrho3": _relrho3, "relrho3a": _relrho3a,
             "relrho3s": _relrho3s}
_TRIPLE = ("relrho1", "relrho1a", "relrho2g", "relrho2d", "relrho3", "relrho3a")
_LIST_LEFT = ("relrho1s", "relrho2gs", "relrho3s")
RHO_IDENTITIES = tuple(_BUILDERS)


def rho_sides(R: FiniteZAlgebra, identity: str, sample: tuple,
              corrupt: bool = False) -> tuple[Formal, list[Formal]]:
    """Left side and the list of right-hand summands of a named identity.

    With ``corrupt`` every rho on the right has the sign of its last term
    flipped (a negative control that must fail).
    """
    try:
        build = _BUILDERS[identity]
    except KeyError:
        raise KeyError(f"unknown identity {identity!r}") from None
    if corrupt:
        return build(R, _flipped_rho1, _flipped_rho2, *sample)
    return build(R, rho1, rho2, *sample)


def random_rho_sample(R: FiniteZAlgebra, identity: str, rng: random.Random, bound: int = 2) -> tuple:
    el = lambda: [rng.randint(-bound, bound) for _ in range(R.rank)]
    if identity in _TRIPLE:
        return el(), el(), el()
    n = rng.randint(2, 4)
    if identity in _LIST_LEFT:
        return [el() for _ in range(n)], el()
    return el(), [el() for _ in range(n)]


def rho_identity_check(R: FiniteZAlgebra, identity: str, samples: Sequence[tuple],
                       corrupt: bool = False) -> bool:
    """True iff the identity holds on every sample (``corrupt``: see :func:`rho_sides`)."""
    for sample in samples:
        lhs, parts = rho_sides(R, identity, sample, corrupt)
        if not lhs == _total(R, parts):
            return False
    return True
