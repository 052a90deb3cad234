"""The quadratic functors Sym^2, Lambda^2, Gamma^2 and P^2 on finitely presented
modules, together with their structure maps.

For ``M = R^g / (q_1, ..., q_k)`` each functor is built on the labeled
generators of its value at ``R^g``, modulo the images of the relations:

* Sym^2: ``e_i e_j`` (i <= j), relations ``q e_i``;
* Lambda^2: ``e_i ^ e_j`` (i < j), relations ``q ^ e_i``;
* Gamma^2: ``g2(e_i)``, ``x_ij`` (i < j), relations ``g2(q)`` and ``g1(q) g1(e_i)``;
* P^2: ``u_i``, ``i_i(t)`` (one per I_2 label t), ``c_ij`` (i < j), relations
  ``p(q)``, ``p(r_t q) - r_t p(q)`` and ``d_p(q, e_i)``, plus the relations of
  ``I_2`` in every slot.

Closed forms used throughout (``x = sum x_i e_i``)::

    p(x)      = sum_i [x_i u_i + i_i(D(x_i))] + sum_{i<j} x_i x_j c_ij
    d_p(x, y) = sum_i x_i y_i i_i(D(2)) + sum_{i<j} (x_i y_j + x_j y_i) c_ij
    g2(x)     = sum_i x_i^2 g2(e_i) + sum_{i<j} x_i x_j x_ij
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import modules as mod
from .i2 import derivation, i2_ideal
from .modules import (FPModule, ModuleError, ModuleMap, act, add, blocks, cokernel, compose,
                      pushout, quotient, scale, sub, tensor, tensor_vectors,
                      twisted_tensor)
from .ring import Coords, FiniteZAlgebra

Flat = list[int]


def _pairs(g: int, strict: bool) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g) for j in range(i if not strict else i + 1, g)]


def _put(vec: Flat, idx: int, n: int, value: Sequence[int]) -> None:
    seg = vec[idx * n:(idx + 1) * n]
    vec[idx * n:(idx + 1) * n] = [a + b for a, b in zip(seg, value)]


@dataclass
class FunctorObject:
    """A functor value with labeled generators, remembering the module it was built from."""

    kind: str
    source: FPModule
    module: FPModule
    layout: dict = field(repr=False)

    @property
    def ring(self) -> FiniteZAlgebra:
        return self.source.ring

    @property
    def labels(self) -> list[str]:
        return self.module.labels


# -- generator layouts ---------------------------------------------------------------------------


class SymLayout:
    def __init__(self, g: int):
        self.g = g
        self.pairs = _pairs(g, strict=False)
        self.index = {p: k for k, p in enumerate(self.pairs)}

    def labels(self, names: Sequence[str]) -> list[str]:
        return [f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}" for i, j in self.pairs]

    def product(self, R: FiniteZAlgebra, x: Sequence[int], y: Sequence[int]) -> Flat:
        xb, yb = blocks(R, x), blocks(R, y)
        n = R.rank
        out = [0] * (len(self.pairs) * n)
        for (i, j), k in self.index.items():
            c = R.mul(xb[i], yb[j])
            if i != j:
                c = R.add(c, R.mul(xb[j], yb[i]))
            _put(out, k, n, c)
        return out


class WedgeLayout:
    def __init__(self, g: int):
        self.g = g
        self.pairs = _pairs(g, strict=True)
        self.index = {p: k for k, p in enumerate(self.pairs)}

    def labels(self, names: Sequence[str]) -> list[str]:
        return [f"{names[i]}^{names[j]}" for i, j in self.pairs]

    def wedge(self, R: FiniteZAlgebra, x: Sequence[int], y: Sequence[int]) -> Flat:
        xb, yb = blocks(R, x), blocks(R, y)
        n = R.rank
        out = [0] * (len(self.pairs) * n)
        for (i, j), k in self.index.items():
            _put(out, k, n, R.sub(R.mul(xb[i], yb[j]), R.mul(xb[j], yb[i])))
        return out


class GammaLayout:
    """``g2(e_0..e_{g-1})`` then ``x_ij`` for i < j."""

    def __init__(self, g: int):
        self.g = g
        self.pairs = _pairs(g, strict=True)
        self.cross = {p: g + k for k, p in enumerate(self.pairs)}
        self.size = g + len(self.pairs)

    def labels(self, names: Sequence[str]) -> list[str]:
        return [f"g2({a})" for a in names] + [f"x({names[i]},{names[j]})" for i, j in self.pairs]

    def gamma(self, R: FiniteZAlgebra, x: Sequence[int]) -> Flat:
        xb = blocks(R, x)
        n = R.rank
        out = [0] * (self.size * n)
        for i in range(self.g):
            _put(out, i, n, R.square(xb[i]))
        for (i, j), k in self.cross.items():
            _put(out, k, n, R.mul(xb[i], xb[j]))
        return out

    def cross_product(self, R: FiniteZAlgebra, x: Sequence[int], y: Sequence[int]) -> Flat:
        """``g1(x) g1(y) = g2(x + y) - g2(x) - g2(y)``."""
        xb, yb = blocks(R, x), blocks(R, y)
        n = R.rank
        out = [0] * (self.size * n)
        for i in range(self.g):
            _put(out, i, n, R.scale(2, R.mul(xb[i], yb[i])))
        for (i, j), k in self.cross.items():
            _put(out, k, n, R.add(R.mul(xb[i], yb[j]), R.mul(xb[j], yb[i])))
        return out


class P2Layout:
    """Per slot ``i``: ``u_i`` then ``i_i(t_0..t_{s-1})``; then ``c_ij`` for i < j."""

    def __init__(self, R: FiniteZAlgebra, g: int):
        self.ring = R
        self.g = g
        self.ideal = i2_ideal(R)
        self.s = self.ideal.module.ngens
        self.D = derivation(R)
        self.pairs = _pairs(g, strict=True)
        self.block = 1 + self.s
        self.cross = {p: g * self.block + k for k, p in enumerate(self.pairs)}
        self.size = g * self.block + len(self.pairs)
        self.D2 = self.D(R.from_int(2))

    def u(self, i: int) -> int:
        return i * self.block

    def iota(self, i: int, s: int) -> int:
        return i * self.block + 1 + s

    def labels(self, names: Sequence[str]) -> list[str]:
        out = []
        for i in range(self.g):
            out.append(f"u({names[i]})")
            out.extend(f"i({names[i]},{t})" for t in self.ideal.labels)
        out.extend(f"c({names[i]},{names[j]})" for i, j in self.pairs)
        return out

    def _iota_vector(self, out: Flat, i: int, coords: Sequence[int]) -> None:
        n = self.ring.rank
        for s in range(self.s):
            _put(out, self.iota(i, s), n, coords[s * n:(s + 1) * n])

    def p(self, x: Sequence[int]) -> Flat:
        R = self.ring
        n = R.rank
        xb = blocks(R, x)
        out = [0] * (self.size * n)
        for i in range(self.g):
            _put(out, self.u(i), n, xb[i])
            self._iota_vector(out, i, self.D(xb[i]))
        for (i, j), k in self.cross.items():
            _put(out, k, n, R.mul(xb[i], xb[j]))
        return out

    def dp(self, x: Sequence[int], y: Sequence[int]) -> Flat:
        R = self.ring
        n = R.rank
        xb, yb = blocks(R, x), blocks(R, y)
        out = [0] * (self.size * n)
        for i in range(self.g):
            c = R.mul(xb[i], yb[i])
            self._iota_vector(out, i, act(R, c, self.D2))
        for (i, j), k in self.cross.items():
            _put(out, k, n, R.add(R.mul(xb[i], yb[j]), R.mul(xb[j], yb[i])))
        return out

    def iota_of(self, i: int, t: Sequence[int]) -> Flat:
        """``i_i(t)`` for ``t`` given in I_2 label coordinates."""
        out = [0] * (self.size * self.ring.rank)
        self._iota_vector(out, i, t)
        return out


# -- object construction -------------------------------------------------------------------------


def _gens(M: FPModule) -> list[Flat]:
    return [M.gen(j) for j in range(M.ngens)]


def sym2(M: FPModule) -> FunctorObject:
    R = M.ring
    lay = SymLayout(M.ngens)
    rels = [lay.product(R, q, e) for q in M.relations for e in _gens(M)]
    F = FPModule(R, len(lay.pairs), rels, lay.labels(M.labels))
    return FunctorObject("sym2", M, F, {"layout": lay})


def lambda2(M: FPModule) -> FunctorObject:
    R = M.ring
    lay = WedgeLayout(M.ngens)
    rels = [lay.wedge(R, q, e) for q in M.relations for e in _gens(M)]
    F = FPModule(R, len(lay.pairs), rels, lay.labels(M.labels))
    return FunctorObject("lambda2", M, F, {"layout": lay})


def gamma2(M: FPModule) -> FunctorObject:
    R = M.ring
    lay = GammaLayout(M.ngens)
    rels = [lay.gamma(R, q) for q in M.relations]
    rels += [lay.cross_product(R, q, e) for q in M.relations for e in _gens(M)]
    F = FPModule(R, lay.size, rels, lay.labels(M.labels))
    return FunctorObject("gamma2", M, F, {"layout": lay})


def p2(M: FPModule) -> FunctorObject:
    R = M.ring
    lay = P2Layout(R, M.ngens)
    rels = []
    for q in lay.ideal.module.relations:
        for i in range(M.ngens):
            rels.append(lay.iota_of(i, q))
    witnesses = lay.ideal.witnesses
    for q in M.relations:
        pq = lay.p(q)
        rels.append(pq)
        for r in witnesses:
            rels.append(sub(lay.p(act(R, r, q)), act(R, r, pq)))
        for e in _gens(M):
            rels.append(lay.dp(q, e))
    F = FPModule(R, lay.size, [v for v in rels if any(v)], lay.labels(M.labels))
    return FunctorObject("p2", M, F, {"layout": lay})


_BUILDERS = {"sym2": sym2, "lambda2": lambda2, "gamma2": gamma2, "p2": p2}


def functor_object(kind: str, M: FPModule) -> FunctorObject:
    try:
        return _BUILDERS[kind](M)
    except KeyError:
        raise ModuleError(f"unknown functor {kind!r}") from None


def _layout(F: FunctorObject):
    return F.layout["layout"]


def eval_canonical(F: FunctorObject, *args: Sequence[int]) -> Flat:
    """``x y`` (sym2), ``x ^ y`` (lambda2), ``g2(x)`` (gamma2), ``p(x)`` or ``d_p(x, y)`` (p2)."""
    lay = _layout(F)
    R = F.ring
    if F.kind == "sym2":
        return lay.product(R, *args)
    if F.kind == "lambda2":
        return lay.wedge(R, *args)
    if F.kind == "gamma2":
        if len(args) == 1:
            return lay.gamma(R, args[0])
        return lay.cross_product(R, *args)
    if F.kind == "p2":
        if len(args) == 1:
            return lay.p(args[0])
        return lay.dp(*args)
    raise ModuleError(f"unknown functor {F.kind!r}")


def functor_map(f: ModuleMap, FM: FunctorObject, FN: FunctorObject) -> ModuleMap:
    """``F(f): F(M) -> F(N)`` on labeled generators."""
    if FM.kind != FN.kind:
        raise ModuleError("functor mismatch")
    R = f.ring
    lay, lay2 = _layout(FM), _layout(FN)
    img = f.columns
    cols = []
    if FM.kind == "sym2":
        cols = [lay2.product(R, img[i], img[j]) for i, j in lay.pairs]
    elif FM.kind == "lambda2":
        cols = [lay2.wedge(R, img[i], img[j]) for i, j in lay.pairs]
    elif FM.kind == "gamma2":
        cols = [lay2.gamma(R, img[i]) for i in range(lay.g)]
        cols += [lay2.cross_product(R, img[i], img[j]) for i, j in lay.pairs]
    elif FM.kind == "p2":
        for i in range(lay.g):
            pf = lay2.p(img[i])
            cols.append(pf)
            for r in lay.ideal.witnesses:
                cols.append(sub(lay2.p(act(R, r, img[i])), act(R, r, pf)))
        cols += [lay2.dp(img[i], img[j]) for i, j in lay.pairs]
    return ModuleMap(FM.module, FN.module, cols)


# -- the structure maps --------------------------------------------------------------------------


def _gen_value(ideal, s: int) -> Coords:
    return ideal.values()[s]


class QuadraticStructure:
    """Every functor value and structure map attached to one module ``M``."""

    def __init__(self, M: FPModule):
        self.M = M
        self.R = M.ring
        self.g = M.ngens

    # objects

    @cached_property
    def ideal(self):
        return i2_ideal(self.R)

    @cached_property
    def I(self) -> FPModule:
        return self.ideal.module

    @cached_property
    def D2(self) -> Flat:
        return derivation(self.R)(self.R.from_int(2))

    @cached_property
    def sym(self) -> FunctorObject:
        return sym2(self.M)

    @cached_property
    def lam(self) -> FunctorObject:
        return lambda2(self.M)

    @cached_property
    def gam(self) -> FunctorObject:
        return gamma2(self.M)

    @cached_property
    def P(self) -> FunctorObject:
        return p2(self.M)

    @cached_property
    def I_sym(self) -> FPModule:
        return tensor(self.I, self.sym.module)

    @cached_property
    def I_gam(self) -> FPModule:
        return tensor(self.I, self.gam.module)

    @cached_property
    def I_M(self) -> FPModule:
        return tensor(self.I, self.M)

    @cached_property
    def R_mod_2(self) -> FPModule:
        return FPModule.cyclic(self.R, [self.R.from_int(2)])

    @cached_property
    def two_torsion_R(self) -> tuple[FPModule, ModuleMap]:
        return mod.two_torsion(FPModule.free(self.R, 1, ["1"]))

    @cached_property
    def I_mod_2R(self) -> FPModule:
        return quotient(self.I, [self.D2])[0]

    @cached_property
    def I_mod_2I(self) -> FPModule:
        return quotient(self.I, [scale(2, self.I.gen(s)) for s in range(self.I.ngens)])[0]

    @cached_property
    def R_mod_I(self) -> FPModule:
        return mod.cyclic_quotient(self.R, self.ideal.lattice())

    @cached_property
    def twisted_R2_M(self) -> FPModule:
        return twisted_tensor(self.R_mod_2, self.M)

    @cached_property
    def twisted_2R_M(self) -> FPModule:
        return twisted_tensor(self.two_torsion_R[0], self.M)

    @cached_property
    def twisted_I2R_M(self) -> FPModule:
        return twisted_tensor(self.I_mod_2R, self.M)

    @cached_property
    def twisted_I2I_M(self) -> FPModule:
        return twisted_tensor(self.I_mod_2I, self.M)

    # maps

    def _values(self) -> list[Coords]:
        return self.ideal.values()

    @cached_property
    def epsilon(self) -> ModuleMap:
        lay = _layout(self.P)
        cols = [self.M.zero_vector() for _ in range(lay.size)]
        for i in range(self.g):
            cols[lay.u(i)] = self.M.gen(i)
        return ModuleMap(self.P.module, self.M, cols)

    @cached_property
    def phi1(self) -> ModuleMap:
        lay = _layout(self.P)
        cols = [lay.dp(self.M.gen(i), self.M.gen(j)) for i, j in _layout(self.sym).pairs]
        return ModuleMap(self.sym.module, self.P.module, cols)

    @cached_property
    def phi2(self) -> ModuleMap:
        lay = _layout(self.P)
        glay = _layout(self.gam)
        R = self.R
        cols = []
        for s, val in enumerate(self._values()):
            for i in range(self.g):
                cols.append(lay.iota_of(i, self.I.gen(s)))
            for i, j in glay.pairs:
                v = [0] * self.P.module.dim
                _put(v, lay.cross[(i, j)], R.rank, val)
                cols.append(v)
        return ModuleMap(self.I_gam, self.P.module, cols)

    @cached_property
    def w(self) -> ModuleMap:
        glay = _layout(self.gam)
        cols = [glay.cross_product(self.R, self.M.gen(i), self.M.gen(j)) for i, j in _layout(self.sym).pairs]
        return ModuleMap(self.sym.module, self.gam.module, cols)

    def _times_D2(self, X: FPModule, IX: FPModule) -> ModuleMap:
        cols = [tensor_vectors(self.R, self.D2, X.gen(a)) for a in range(X.ngens)]
        return ModuleMap(X, IX, cols)

    @cached_property
    def v(self) -> ModuleMap:
        return self._times_D2(self.sym.module, self.I_sym)

    @cached_property
    def j22(self) -> ModuleMap:
        return self._times_D2(self.gam.module, self.I_gam)

    @cached_property
    def j11(self) -> ModuleMap:
        S = self.sym.module
        cols = [act(self.R, val, S.gen(a)) for val in self._values() for a in range(S.ngens)]
        return ModuleMap(self.I_sym, S, cols)

    @cached_property
    def j12(self) -> ModuleMap:
        slay = _layout(self.sym)
        glay = _layout(self.gam)
        e = self.M.gen
        cols = [slay.product(self.R, e(i), e(i)) for i in range(self.g)]
        cols += [scale(2, slay.product(self.R, e(i), e(j))) for i, j in glay.pairs]
        return ModuleMap(self.gam.module, self.sym.module, cols)

    @cached_property
    def j21(self) -> ModuleMap:
        S = self.sym.module
        cols = [tensor_vectors(self.R, self.I.gen(s), self.w.columns[a])
                for s in range(self.I.ngens) for a in range(S.ngens)]
        return ModuleMap(self.I_sym, self.I_gam, cols)

    @cached_property
    def d(self) -> ModuleMap:
        T, incl = self.two_torsion_R
        slay = _layout(self.sym)
        R = self.R
        cols = []
        for k in range(T.ngens):
            a = incl.columns[k][:R.rank]
            for j in range(self.g):
                cols.append(act(R, a, slay.product(R, self.M.gen(j), self.M.gen(j))))
        return ModuleMap(self.twisted_2R_M, self.sym.module, cols)

    @cached_property
    def sym_mod_d(self) -> tuple[FPModule, ModuleMap]:
        return cokernel(self.d)

    @cached_property
    def w_bar(self) -> ModuleMap:
        return ModuleMap(self.sym_mod_d[0], self.gam.module, self.w.columns)

    @cached_property
    def rho(self) -> ModuleMap:
        T = self.twisted_R2_M
        glay = _layout(self.gam)
        cols = [T.gen(i) for i in range(self.g)] + [T.zero_vector() for _ in glay.pairs]
        return ModuleMap(self.gam.module, T, cols)

    @cached_property
    def g2(self) -> ModuleMap:
        lay = _layout(self.P)
        glay = _layout(self.gam)
        G = self.gam.module
        cols = []
        for i in range(self.g):
            cols.append(G.gen(i))
            for val in self._values():
                cols.append(G.gen(i, val))
        cols += [G.gen(glay.cross[p]) for p in lay.pairs]
        return ModuleMap(self.P.module, G, cols)

    @cached_property
    def chi(self) -> ModuleMap:
        lay = _layout(self.P)
        P = self.P.module
        cols = []
        for s, val in enumerate(self._values()):
            for i in range(self.g):
                cols.append(sub(lay.iota_of(i, self.I.gen(s)), P.gen(lay.u(i), val)))
        return ModuleMap(self.I_M, P, cols)

    @cached_property
    def kprime(self) -> tuple[FPModule, ModuleMap, ModuleMap]:
        """``K'(M)`` with ``eta1: I_2 (x) Sym^2 -> K'`` and ``eta2: Gamma^2 -> K'``."""
        return pushout(self.v, self.w)

    @cached_property
    def eta1(self) -> ModuleMap:
        return self.kprime[1]

    @cached_property
    def eta2(self) -> ModuleMap:
        return self.kprime[2]

    @cached_property
    def j1(self) -> ModuleMap:
        return ModuleMap(self.kprime[0], self.sym.module, self.j11.columns + self.j12.columns)

    @cached_property
    def j2(self) -> ModuleMap:
        return ModuleMap(self.kprime[0], self.I_gam, self.j21.columns + self.j22.columns)

    @cached_property
    def k(self) -> tuple[FPModule, ModuleMap, ModuleMap]:
        """``K(M)`` with ``theta1: Sym^2 -> K`` and ``theta2: I_2 (x) Gamma^2 -> K``."""
        dom = mod.direct_sum(self.I_sym, self.gam.module)
        left = ModuleMap(dom.module, self.sym.module, self.j11.columns + self.j12.columns)
        right = ModuleMap(dom.module, self.I_gam, self.j21.columns + self.j22.columns)
        return pushout(left, right)

    @cached_property
    def theta1(self) -> ModuleMap:
        return self.k[1]

    @cached_property
    def theta2(self) -> ModuleMap:
        return self.k[2]

    @cached_property
    def phi(self) -> ModuleMap:
        return ModuleMap(self.k[0], self.P.module, self.phi1.columns + self.phi2.columns)

    @cached_property
    def coker_phi1(self) -> tuple[FPModule, ModuleMap]:
        return cokernel(self.phi1)

    @cached_property
    def coker_phi2(self) -> tuple[FPModule, ModuleMap]:
        return cokernel(self.phi2)

    @cached_property
    def phi1_bar(self) -> ModuleMap:
        return ModuleMap(self.sym_mod_d[0], self.P.module, self.phi1.columns)

    @cached_property
    def psi1(self) -> ModuleMap:
        lay = _layout(self.P)
        C = self.coker_phi1[0]
        cols = [lay.iota_of(i, self.I.gen(s)) for s in range(self.I.ngens) for i in range(self.g)]
        return ModuleMap(self.twisted_I2R_M, C, cols)

    @cached_property
    def epsilon1(self) -> ModuleMap:
        return ModuleMap(self.coker_phi1[0], self.M, self.epsilon.columns)

    @cached_property
    def R_I_lambda(self) -> FPModule:
        return tensor(self.R_mod_I, self.lam.module)

    @cached_property
    def psi2(self) -> ModuleMap:
        lay = _layout(self.P)
        C = self.coker_phi2[0]
        cols = [C.gen(lay.cross[p]) for p in _layout(self.lam).pairs]
        return ModuleMap(self.R_I_lambda, C, cols)

    @cached_property
    def epsilon2(self) -> ModuleMap:
        return ModuleMap(self.coker_phi2[0], self.M, self.epsilon.columns)

    @cached_property
    def square_map(self) -> ModuleMap:
        """``e_i -> e_i^2``; linear (hence meaningful) only when ``I_2 = 0``."""
        slay = _layout(self.sym)
        e = self.M.gen
        return ModuleMap(self.M, self.sym.module, [slay.product(self.R, e(i), e(i)) for i in range(self.g)])

    def structure_map(self, name: str) -> ModuleMap:
        if name not in STRUCTURE_MAPS:
            raise ModuleError(f"unknown structure map {name!r}")
        return getattr(self, name)

    # tau

    @cached_property
    def tor_R2(self):
        return mod.tor1(self.R_mod_2, self.M, twisted=True)

    @cached_property
    def tau(self) -> ModuleMap:
        return tau_explicit(self)

    @cached_property
    def tor_I2R(self):
        return mod.tor1(self.I_mod_2R, self.M, twisted=True)

    @cached_property
    def iota_I2R(self) -> ModuleMap:
        """``I_2/2R -> R/2R`` induced by the inclusion."""
        R = self.R
        cols = [c[:R.rank] for c in self.ideal.inclusion.columns]
        return ModuleMap(self.I_mod_2R, self.R_mod_2, cols)

    @cached_property
    def tau1(self) -> ModuleMap:
        induced = mod.tor1_induced(self.iota_I2R, self.tor_I2R, self.tor_R2)
        return compose(self.tau, induced)

    @cached_property
    def tor_connecting(self) -> tuple[FPModule, ModuleMap]:
        """``Tor_1(R/I_2, Sym^2(M))`` as ``ker(I_2 (x) Sym^2 -> Sym^2)`` with its inclusion."""
        conn = mod.connecting_tor(self.ideal.inclusion, self.sym.module)
        return conn.module, conn.incl

    @cached_property
    def tau2(self) -> ModuleMap:
        return compose(self.j21, self.tor_connecting[1])

    # cocycle model

    @cached_property
    def model(self) -> CocycleModel:
        return CocycleModel(self)


STRUCTURE_MAPS = ("epsilon", "phi1", "phi2", "w", "v", "d", "j11", "j12", "j21", "j22", "eta1",
                  "eta2", "theta1", "theta2", "j1", "j2", "chi", "g2", "psi1", "psi2", "rho", "phi")


def structure_map(name: str, M: FPModule | QuadraticStructure) -> ModuleMap:
    Q = M if isinstance(M, QuadraticStructure) else QuadraticStructure(M)
    return Q.structure_map(name)


def k_modules(M: FPModule | QuadraticStructure):
    """``(K', eta1, eta2, K, theta1, theta2, phi)``."""
    Q = M if isinstance(M, QuadraticStructure) else QuadraticStructure(M)
    Kp, e1, e2 = Q.kprime
    K, t1, t2 = Q.k
    return Kp, e1, e2, K, t1, t2, Q.phi


# -- tau -------------------------------------------------------------------------------------------


def tau_explicit(Q: QuadraticStructure) -> ModuleMap:
    """The connecting map ``Tor_1((R/2R)^[1], M) -> Sym^2(M)/Im d`` by the closed formula."""
    R, M = Q.R, Q.M
    n = R.rank
    tor = Q.tor_R2
    target = Q.sym_mod_d[0]
    slay = _layout(Q.sym)
    rels = [blocks(R, q) for q in M.relations]
    cols = []
    for x in tor.homology.cycle_incl.columns:
        r = blocks(R, x)  # one r_j per relation column
        out = [0] * target.dim
        for i in range(M.ngens):
            total = R.zero()
            for j, a in enumerate(rels):
                total = R.add(total, R.mul(r[j], R.square(a[i])))
            s = R.divide(total, R.from_int(2))
            if s is None:
                raise ModuleError("Tor class does not admit the division by 2")
            _put(out, slay.index[(i, i)], n, s)
        for j, a in enumerate(rels):
            for i1 in range(M.ngens):
                for i2 in range(i1 + 1, M.ngens):
                    _put(out, slay.index[(i1, i2)], n, R.mul(r[j], R.mul(a[i1], a[i2])))
        cols.append(out)
    return ModuleMap(tor.module, target, cols)


def tau_oracle(Q: QuadraticStructure) -> ModuleMap:
    """The same map by chasing the diagram through the free module ``R^g``.

    A cycle ``sum r_j (x) f_j`` lifts to ``sum r_j g2(f_j)``, is pushed to
    ``sum r_j g2(q_j)`` in ``Gamma^2(R^g)``, which is ``w(z)`` for some ``z`` in
    ``Sym^2(R^g)``; ``z`` is then projected to ``Sym^2(M)/Im d``.
    """
    R, M = Q.R, Q.M
    F0 = FPModule.free(R, M.ngens, M.labels)
    free = QuadraticStructure(F0)
    glay = _layout(free.gam)
    tor = Q.tor_R2
    target = Q.sym_mod_d[0]
    cols = []
    for x in tor.homology.cycle_incl.columns:
        r = blocks(R, x)
        y = [0] * free.gam.module.dim
        for j, q in enumerate(M.relations):
            y = add(y, act(R, r[j], glay.gamma(R, q)))
        z = mod.lift(free.w, y)
        if z is None:
            raise ModuleError("diagram chase failed: element is not in the image of w")
        cols.append(z)
    return ModuleMap(tor.module, target, cols)


# -- cocycle model ---------------------------------------------------------------------------------


class CocycleModel:
    """``K(M) x M`` with the twisted operations, and its comparison with P^2(M)."""

    def __init__(self, Q: QuadraticStructure):
        self.Q = Q
        self.K = Q.k[0]
        self.R = Q.R

    def zero(self) -> tuple[Flat, Flat]:
        return self.K.zero_vector(), self.Q.M.zero_vector()

    def add(self, a: tuple[Flat, Flat], b: tuple[Flat, Flat]) -> tuple[Flat, Flat]:
        (k, x), (k2, y) = a, b
        xy = eval_canonical(self.Q.sym, x, y)
        return sub(add(k, k2), self.Q.theta1.apply(xy)), add(x, y)

    def smul(self, r: Sequence[int], a: tuple[Flat, Flat]) -> tuple[Flat, Flat]:
        k, x = a
        R = self.R
        Dr = derivation(R)(r)
        gx = eval_canonical(self.Q.gam, x)
        corr = self.Q.theta2.apply(tensor_vectors(R, Dr, gx))
        return sub(act(R, r, k), corr), act(R, r, x)

    def neg(self, a: tuple[Flat, Flat]) -> tuple[Flat, Flat]:
        return self.smul(self.R.from_int(-1), a)

    def eq(self, a: tuple[Flat, Flat], b: tuple[Flat, Flat]) -> bool:
        return self.K.eq(a[0], b[0]) and self.Q.M.eq(a[1], b[1])

    def to_p2(self, a: tuple[Flat, Flat]) -> Flat:
        """``(k, x) -> phi(k) + p(x)``."""
        k, x = a
        return add(self.Q.phi.apply(k), eval_canonical(self.Q.P, x))

    def p_image(self, x: Sequence[int]) -> tuple[Flat, Flat]:
        return self.K.zero_vector(), list(x)

    @cached_property
    def generator_images(self) -> list[tuple[Flat, Flat]]:
        """Images of the labeled P^2 generators under the inverse comparison."""
        Q = self.Q
        lay = _layout(Q.P)
        e = Q.M.gen
        out: list = [None] * lay.size
        for i in range(Q.g):
            out[lay.u(i)] = self.p_image(e(i))
            for s, r in enumerate(lay.ideal.witnesses):
                # i_i(t_s) = p(r e_i) - r p(e_i)
                a = self.p_image(act(self.R, r, e(i)))
                b = self.smul(r, self.p_image(e(i)))
                out[lay.iota(i, s)] = self.add(a, self.neg(b))
        for (i, j), k in lay.cross.items():
            a = self.p_image(add(e(i), e(j)))
            b = self.add(self.p_image(e(i)), self.p_image(e(j)))
            out[k] = self.add(a, self.neg(b))
        return out

    def from_p2(self, v: Sequence[int]) -> tuple[Flat, Flat]:
        R = self.R
        n = R.rank
        acc = self.zero()
        for idx, img in enumerate(self.generator_images):
            c = list(v[idx * n:(idx + 1) * n])
            if any(c):
                acc = self.add(acc, self.smul(c, img))
        return acc


# -- splittings and identifications ---------------------------------------------------------------


def splitting_map(Q: QuadraticStructure) -> tuple[ModuleMap, mod.DirectSum]:
    """``(g2; epsilon): P^2(M) -> Gamma^2(M) + M``."""
    S = mod.direct_sum(Q.gam.module, Q.M)
    cols = [add(S.injections[0].apply(a), S.injections[1].apply(b))
            for a, b in zip(Q.g2.columns, Q.epsilon.columns)]
    return ModuleMap(Q.P.module, S.module, cols), S
