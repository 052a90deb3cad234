"""Finitely presented modules over a :class:`FiniteZAlgebra` and their maps.

A module with ``g`` generators over a ring of rank ``n`` is realized as
``Z^(g*n) / L``: coordinate ``j*n + l`` is the coefficient of ``b_l * e_j``.
Elements and relation columns are such flat integer vectors.  ``L`` always
contains the ring's additive relations in every generator slot and is an
R-submodule, so every module question becomes a lattice question.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .lattice import Lattice, preimage_lattice, quotient_invariants, solve_affine
from .ring import Coords, FiniteZAlgebra

Flat = list[int]


class ModuleError(ValueError):
    pass


# -- flat-vector helpers ----------------------------------------------------------------


def block(R: FiniteZAlgebra, v: Sequence[int], j: int) -> Coords:
    n = R.rank
    return list(v[j * n:(j + 1) * n])


def blocks(R: FiniteZAlgebra, v: Sequence[int]) -> list[Coords]:
    n = R.rank
    return [list(v[j:j + n]) for j in range(0, len(v), n)]


def from_blocks(parts: Sequence[Sequence[int]]) -> Flat:
    out: Flat = []
    for p in parts:
        out.extend(p)
    return out


def act(R: FiniteZAlgebra, r: Sequence[int], v: Sequence[int]) -> Flat:
    """Multiply every block of ``v`` by the ring element ``r``."""
    table = R.mul_table(r)
    n = R.rank
    out = [0] * len(v)
    for base in range(0, len(v), n):
        for j in range(n):
            c = v[base + j]
            if c:
                col = table[j]
                for l in range(n):
                    out[base + l] += c * col[l]
    return out


def add(u: Sequence[int], v: Sequence[int]) -> Flat:
    return [a + b for a, b in zip(u, v)]


def sub(u: Sequence[int], v: Sequence[int]) -> Flat:
    return [a - b for a, b in zip(u, v)]


def scale(c: int, v: Sequence[int]) -> Flat:
    return [c * a for a in v]


def unit_vector(R: FiniteZAlgebra, ngens: int, j: int, r: Sequence[int] | None = None) -> Flat:
    """``r * e_j`` (``r`` defaults to 1)."""
    n = R.rank
    v = [0] * (ngens * n)
    v[j * n:(j + 1) * n] = R.one() if r is None else list(r)
    return v


def r_span(R: FiniteZAlgebra, vectors: Sequence[Sequence[int]]) -> list[Flat]:
    """Z-spanning set of the R-span of ``vectors``."""
    out = []
    for v in vectors:
        for i in range(R.rank):
            out.append(act(R, R.basis_element(i), v))
    return out


def slot_relations(R: FiniteZAlgebra, ngens: int) -> list[Flat]:
    n = R.rank
    out = []
    for j in range(ngens):
        for b in R.lattice.basis:
            v = [0] * (ngens * n)
            v[j * n:(j + 1) * n] = b
            out.append(v)
    return out


def minimal_r_generators(R: FiniteZAlgebra, ngens: int, lattice: Lattice, base: Lattice) -> list[Flat]:
    """Greedy R-generating set of ``lattice`` modulo the R-submodule ``base``."""
    cur = base
    gens = []
    for v in lattice.basis:
        if v not in cur:
            gens.append(list(v))
            cur = cur.extend(r_span(R, [v]))
    return gens


# -- modules -----------------------------------------------------------------------------


class FPModule:
    """``R^g / (relation columns)``, with optional generator labels."""

    def __init__(self, ring: FiniteZAlgebra, ngens: int, relations: Sequence[Sequence[int]] = (),
                 labels: Sequence[str] | None = None, lattice: Lattice | None = None):
        self.ring = ring
        self.ngens = ngens
        self.dim = ngens * ring.rank
        self.relations = [list(q) for q in relations]
        for q in self.relations:
            if len(q) != self.dim:
                raise ModuleError(f"relation of length {len(q)}, expected {self.dim}")
        self.labels = list(labels) if labels is not None else [f"e{j + 1}" for j in range(ngens)]
        if len(self.labels) != ngens:
            raise ModuleError("one label per generator required")
        if lattice is None:
            lattice = Lattice(self.dim, slot_relations(ring, ngens) + r_span(ring, self.relations))
        self.lattice = lattice

    @classmethod
    def free(cls, R: FiniteZAlgebra, rank: int, labels: Sequence[str] | None = None) -> FPModule:
        return cls(R, rank, [], labels)

    @classmethod
    def zero(cls, R: FiniteZAlgebra) -> FPModule:
        return cls(R, 0, [])

    @classmethod
    def from_matrix(cls, R: FiniteZAlgebra, ngens: int, columns: Sequence[Sequence[Sequence[int]]],
                    labels: Sequence[str] | None = None) -> FPModule:
        """Relations given as columns of ring elements (one ring element per generator)."""
        rels = []
        for col in columns:
            if len(col) != ngens:
                raise ModuleError(f"relation column has {len(col)} entries, expected {ngens}")
            rels.append(from_blocks(col))
        return cls(R, ngens, rels, labels)

    @classmethod
    def cyclic(cls, R: FiniteZAlgebra, ideal_generators: Sequence[Sequence[int]]) -> FPModule:
        """``R / (a_1, ..., a_k)``."""
        return cls.from_matrix(R, 1, [[a] for a in ideal_generators])

    def z_realization(self) -> tuple[int, Lattice]:
        return self.dim, self.lattice

    def is_free_presentation(self) -> bool:
        return self.lattice == Lattice(self.dim, slot_relations(self.ring, self.ngens))

    def invariants(self) -> list[int]:
        return quotient_invariants(self.lattice)

    def is_zero(self) -> bool:
        return self.lattice.is_full()

    def order(self) -> int | None:
        inv = self.invariants()
        if 0 in inv:
            return None
        out = 1
        for d in inv:
            out *= d
        return out

    def zero_vector(self) -> Flat:
        return [0] * self.dim

    def gen(self, j: int, r: Sequence[int] | None = None) -> Flat:
        return unit_vector(self.ring, self.ngens, j, r)

    def contains_zero(self, v: Sequence[int]) -> bool:
        return list(v) in self.lattice

    def eq(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return sub(u, v) in self.lattice

    def reduce(self, v: Sequence[int]) -> Flat:
        return self.lattice.reduce(v)

    def element(self, coords: Sequence[Sequence[int]]) -> ModuleElement:
        """Element from one ring coordinate vector per generator."""
        if len(coords) != self.ngens:
            raise ModuleError(f"need {self.ngens} ring elements")
        return ModuleElement(self, tuple(from_blocks(coords)))

    def random_vector(self, rng: random.Random, bound: int = 2) -> Flat:
        return [rng.randint(-bound, bound) for _ in range(self.dim)]

    def elements(self):
        """All elements of a finite module (canonical representatives)."""
        import itertools
        L = self.lattice
        if L.rank != L.dim:
            raise ModuleError("module is infinite")
        ranges = [range(L.basis[k][p]) for k, p in enumerate(L.pivots)]
        for combo in itertools.product(*ranges):
            yield list(combo)

    def format(self, v: Sequence[int]) -> str:
        v = self.reduce(v)
        R = self.ring
        parts = []
        for j, lab in enumerate(self.labels):
            c = block(R, v, j)
            if any(c):
                coef = str(c[0]) if R.rank == 1 else "(" + ",".join(map(str, c)) + ")"
                parts.append(f"{coef}*{lab}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<module over {self.ring.name}: {self.ngens} gens, invariants {self.invariants()}>"


@dataclass(frozen=True)
class ModuleElement:
    module: FPModule = field(repr=False, compare=False)
    vec: tuple[int, ...]

    def __add__(self, other: ModuleElement) -> ModuleElement:
        return ModuleElement(self.module, tuple(add(self.vec, other.vec)))

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return ModuleElement(self.module, tuple(sub(self.vec, other.vec)))

    def __neg__(self) -> ModuleElement:
        return ModuleElement(self.module, tuple(-x for x in self.vec))

    def __rmul__(self, r) -> ModuleElement:
        R = self.module.ring
        coords = R.from_int(r) if isinstance(r, int) else list(getattr(r, "coords", r))
        return ModuleElement(self.module, tuple(act(R, coords, self.vec)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module.eq(self.vec, other.vec)

    def __hash__(self) -> int:
        return hash(tuple(self.module.reduce(self.vec)))

    def __repr__(self) -> str:
        return self.module.format(self.vec)


def element_eq(M: FPModule, x: Sequence[int], y: Sequence[int]) -> bool:
    return M.eq(x, y)


def z_realization(M: FPModule) -> tuple[int, Lattice]:
    return M.z_realization()


def invariants(M: FPModule) -> list[int]:
    return M.invariants()


# -- maps ----------------------------------------------------------------------------------


class ModuleMap:
    """R-linear map given by the images (flat codomain vectors) of the domain generators."""

    def __init__(self, domain: FPModule, codomain: FPModule, columns: Sequence[Sequence[int]],
                 check: bool = True):
        if len(columns) != domain.ngens:
            raise ModuleError(f"map needs {domain.ngens} columns, got {len(columns)}")
        for c in columns:
            if len(c) != codomain.dim:
                raise ModuleError(f"column of length {len(c)}, expected {codomain.dim}")
        if domain.ring is not codomain.ring:
            raise ModuleError("ring mismatch")
        self.domain = domain
        self.codomain = codomain
        self.ring = domain.ring
        self.columns = [list(c) for c in columns]
        self._z: list[Flat] | None = None
        if check:
            bad = self.first_violation()
            if bad is not None:
                raise ModuleError(f"map is not well defined: relation {bad} is not sent to 0")

    @property
    def zcolumns(self) -> list[Flat]:
        """Image of every Z-generator ``b_l e_j`` of the domain."""
        if self._z is None:
            R = self.ring
            self._z = [act(R, R.basis_element(l), c) for c in self.columns for l in range(R.rank)]
        return self._z

    def apply(self, v: Sequence[int]) -> Flat:
        out = [0] * self.codomain.dim
        for x, col in zip(v, self.zcolumns):
            if x:
                for k, y in enumerate(col):
                    if y:
                        out[k] += x * y
        return out

    __call__ = apply

    def first_violation(self) -> Flat | None:
        for q in self.domain.lattice.basis:
            if self.apply(q) not in self.codomain.lattice:
                return q
        return None

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        return compose(self, other)

    def __add__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.domain, self.codomain,
                         [add(a, b) for a, b in zip(self.columns, other.columns)], check=False)

    def __sub__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(self.domain, self.codomain,
                         [sub(a, b) for a, b in zip(self.columns, other.columns)], check=False)

    def scaled(self, r: Sequence[int]) -> ModuleMap:
        return ModuleMap(self.domain, self.codomain, [act(self.ring, r, c) for c in self.columns],
                         check=False)

    def equals(self, other: ModuleMap) -> bool:
        return all(self.codomain.eq(a, b) for a, b in zip(self.columns, other.columns))

    def is_zero(self) -> bool:
        return all(self.codomain.contains_zero(c) for c in self.columns)

    def image_lattice(self) -> Lattice:
        return self.codomain.lattice.extend(self.zcolumns)

    def kernel_lattice(self) -> Lattice:
        return preimage_lattice(self.zcolumns, self.codomain.dim, self.codomain.lattice)

    def restrict(self, domain: FPModule, codomain: FPModule) -> ModuleMap:
        """Same matrix between other presentations on the same generators."""
        return ModuleMap(domain, codomain, self.columns)

    def __repr__(self) -> str:
        return f"<map {self.domain.ngens} gens -> {self.codomain.ngens} gens>"


def make_map(domain: FPModule, codomain: FPModule, matrix: Sequence[Sequence[Sequence[int]]]) -> ModuleMap:
    """Map from a codomain-generator x domain-generator matrix of ring elements."""
    if len(matrix) != codomain.ngens or any(len(row) != domain.ngens for row in matrix):
        raise ModuleError("matrix shape does not match generator counts")
    cols = [from_blocks([matrix[i][j] for i in range(codomain.ngens)]) for j in range(domain.ngens)]
    return ModuleMap(domain, codomain, cols)


def identity(M: FPModule) -> ModuleMap:
    return ModuleMap(M, M, [M.gen(j) for j in range(M.ngens)], check=False)


def zero_map(M: FPModule, N: FPModule) -> ModuleMap:
    return ModuleMap(M, N, [N.zero_vector() for _ in range(M.ngens)], check=False)


def scalar_map(M: FPModule, r: Sequence[int]) -> ModuleMap:
    return ModuleMap(M, M, [act(M.ring, r, M.gen(j)) for j in range(M.ngens)], check=False)


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g after f``."""
    if f.codomain.ngens != g.domain.ngens or f.codomain.ring is not g.domain.ring:
        raise ModuleError("maps are not composable")
    return ModuleMap(f.domain, g.codomain, [g.apply(c) for c in f.columns], check=False)


def free_cover(M: FPModule) -> ModuleMap:
    F = FPModule.free(M.ring, M.ngens, M.labels)
    return ModuleMap(F, M, [M.gen(j) for j in range(M.ngens)], check=False)


# -- submodules, kernels, cokernels ---------------------------------------------------------


def submodule(N: FPModule, lattice: Lattice, labels: Sequence[str] | None = None) -> tuple[FPModule, ModuleMap]:
    """Presentation of the R-submodule ``lattice / L_N`` of ``N`` with its inclusion.

    ``lattice`` must contain ``L_N`` and be closed under the ring action.
    """
    R = N.ring
    gens = minimal_r_generators(R, N.ngens, lattice, N.lattice)
    s = len(gens)
    cover = [act(R, R.basis_element(l), g) for g in gens for l in range(R.rank)]
    syz = preimage_lattice(cover, N.dim, N.lattice)
    base = Lattice(s * R.rank, slot_relations(R, s))
    rels = minimal_r_generators(R, s, syz, base)
    K = FPModule(R, s, rels, labels, lattice=syz)
    return K, ModuleMap(K, N, gens, check=False)


def kernel(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    return submodule(f.domain, f.kernel_lattice())


def image(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    return submodule(f.codomain, f.image_lattice())


def cokernel(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    N = f.codomain
    C = FPModule(N.ring, N.ngens, N.relations + [c for c in f.columns if c not in N.lattice],
                 N.labels, lattice=f.image_lattice())
    return C, ModuleMap(N, C, [C.gen(j) for j in range(N.ngens)], check=False)


def quotient(N: FPModule, vectors: Sequence[Sequence[int]]) -> tuple[FPModule, ModuleMap]:
    """``N / (R-span of vectors)`` on the same generators."""
    R = N.ring
    lat = N.lattice.extend(r_span(R, vectors))
    C = FPModule(R, N.ngens, N.relations + [list(v) for v in vectors if list(v) not in N.lattice],
                 N.labels, lattice=lat)
    return C, ModuleMap(N, C, [C.gen(j) for j in range(N.ngens)], check=False)


def induced_on_quotients(f: ModuleMap, domain: FPModule, codomain: FPModule) -> ModuleMap:
    """The map with ``f``'s matrix between quotients of its domain and codomain."""
    return ModuleMap(domain, codomain, f.columns)


def lift(f: ModuleMap, v: Sequence[int]) -> Flat | None:
    """Some domain vector ``x`` with ``f(x) == v`` in the codomain, or None."""
    return solve_affine(f.zcolumns, v, f.codomain.lattice)


def factor_through(incl: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g`` with ``incl @ g == f``, for ``f`` landing in the image of ``incl``."""
    cols = []
    for c in f.columns:
        x = lift(incl, c)
        if x is None:
            raise ModuleError("map does not factor through the given map")
        cols.append(x)
    return ModuleMap(f.domain, incl.domain, cols, check=False)


def descend(proj: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g`` with ``g @ proj == f`` for a surjection ``proj`` whose kernel ``f`` kills."""
    cols = []
    for j in range(proj.codomain.ngens):
        x = lift(proj, proj.codomain.gen(j))
        if x is None:
            raise ModuleError("projection is not surjective")
        cols.append(f.apply(x))
    return ModuleMap(proj.codomain, f.codomain, cols)


# -- exactness ---------------------------------------------------------------------------------


def is_injective(f: ModuleMap) -> bool:
    return f.kernel_lattice() == f.domain.lattice


def is_surjective(f: ModuleMap) -> bool:
    return f.image_lattice().is_full()


def is_isomorphism(f: ModuleMap) -> bool:
    return is_injective(f) and is_surjective(f)


@dataclass
class Exactness:
    ok: bool
    witness: Flat | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_exact_at(f: ModuleMap, g: ModuleMap) -> Exactness:
    """``ker g == im f`` (and ``g f == 0``) in the middle module."""
    if f.codomain.ngens != g.domain.ngens:
        raise ModuleError("maps are not composable")
    B = g.domain
    for c in f.columns:
        if g.apply(c) not in g.codomain.lattice:
            return Exactness(False, B.reduce(c), "composite is nonzero")
    im = f.image_lattice()
    for v in g.kernel_lattice().basis:
        if v not in im:
            return Exactness(False, B.reduce(v), "kernel not contained in image")
    return Exactness(True)


def injective_witness(f: ModuleMap) -> Exactness:
    for v in f.kernel_lattice().basis:
        if v not in f.domain.lattice:
            return Exactness(False, f.domain.reduce(v), "map is not injective")
    return Exactness(True)


def surjective_witness(f: ModuleMap) -> Exactness:
    im = f.image_lattice()
    N = f.codomain
    for j in range(N.dim):
        e = [int(k == j) for k in range(N.dim)]
        if e not in im:
            return Exactness(False, e, "map is not surjective")
    return Exactness(True)


def same_submodule(f: ModuleMap, g: ModuleMap) -> bool:
    """Do two maps into the same module have the same image?"""
    return f.image_lattice() == g.image_lattice()


# -- constructions -------------------------------------------------------------------------------


@dataclass
class DirectSum:
    module: FPModule
    injections: list[ModuleMap]
    projections: list[ModuleMap]


def direct_sum(*modules: FPModule) -> DirectSum:
    if not modules:
        raise ModuleError("direct sum of nothing")
    R = modules[0].ring
    total = sum(M.ngens for M in modules)
    rels, labels, offsets = [], [], []
    off = 0
    n = R.rank
    for M in modules:
        offsets.append(off)
        for q in M.relations:
            v = [0] * (total * n)
            v[off * n:off * n + M.dim] = q
            rels.append(v)
        labels.extend(M.labels)
        off += M.ngens
    S = FPModule(R, total, rels, labels)
    incs, projs = [], []
    for M, o in zip(modules, offsets):
        incs.append(ModuleMap(M, S, [S.gen(o + j) for j in range(M.ngens)], check=False))
        cols = []
        for k in range(total):
            if o <= k < o + M.ngens:
                cols.append(M.gen(k - o))
            else:
                cols.append(M.zero_vector())
        projs.append(ModuleMap(S, M, cols, check=False))
    return DirectSum(S, incs, projs)


def block_map(rows: Sequence[Sequence[ModuleMap]], domain: DirectSum | FPModule,
              codomain: DirectSum | FPModule) -> ModuleMap:
    """Map between direct sums from a block matrix ``rows[i][j]: dom_j -> cod_i``."""
    dom_parts = domain.injections if isinstance(domain, DirectSum) else None
    cod_mod = codomain.module if isinstance(codomain, DirectSum) else codomain
    dom_mod = domain.module if isinstance(domain, DirectSum) else domain
    cod_inj = codomain.injections if isinstance(codomain, DirectSum) else [identity(codomain)]
    ndom = len(dom_parts) if dom_parts is not None else 1
    cols = []
    for j in range(ndom):
        Dj = dom_parts[j].domain if dom_parts is not None else dom_mod
        for k in range(Dj.ngens):
            v = cod_mod.zero_vector()
            for i, inj in enumerate(cod_inj):
                m = rows[i][j]
                v = add(v, inj.apply(m.columns[k]))
            cols.append(v)
    return ModuleMap(dom_mod, cod_mod, cols)


def hstack(maps: Sequence[ModuleMap], domain: DirectSum) -> ModuleMap:
    """``(f_1, ..., f_k): A_1 + ... + A_k -> N``."""
    return block_map([list(maps)], domain, maps[0].codomain)


def vstack(maps: Sequence[ModuleMap], codomain: DirectSum) -> ModuleMap:
    """``(f_1; ...; f_k): A -> N_1 + ... + N_k``."""
    return block_map([[m] for m in maps], maps[0].domain, codomain)


def tensor(M: FPModule, N: FPModule) -> FPModule:
    """``M (x) N`` on generators ``e_i (x) f_j`` (index ``i * N.ngens + j``)."""
    R = M.ring
    if N.ring is not R:
        raise ModuleError("ring mismatch")
    n, gm, gn = R.rank, M.ngens, N.ngens
    total = gm * gn
    rels = []
    for q in M.relations:
        qb = blocks(R, q)
        for j in range(gn):
            v = [0] * (total * n)
            for i in range(gm):
                v[(i * gn + j) * n:(i * gn + j + 1) * n] = qb[i]
            rels.append(v)
    for q in N.relations:
        qb = blocks(R, q)
        for i in range(gm):
            v = [0] * (total * n)
            for j in range(gn):
                v[(i * gn + j) * n:(i * gn + j + 1) * n] = qb[j]
            rels.append(v)
    labels = [f"{a}(x){b}" for a in M.labels for b in N.labels]
    return FPModule(R, total, rels, labels)


def tensor_vectors(R: FiniteZAlgebra, x: Sequence[int], y: Sequence[int]) -> Flat:
    """``x (x) y`` in the tensor generator order, from flat vectors."""
    xb, yb = blocks(R, x), blocks(R, y)
    out = []
    for a in xb:
        for b in yb:
            out.extend(R.mul(a, b))
    return out


def tensor_map(f: ModuleMap, g: ModuleMap, domain: FPModule | None = None,
               codomain: FPModule | None = None) -> ModuleMap:
    R = f.ring
    dom = domain or tensor(f.domain, g.domain)
    cod = codomain or tensor(f.codomain, g.codomain)
    cols = [tensor_vectors(R, fc, gc) for fc in f.columns for gc in g.columns]
    return ModuleMap(dom, cod, cols)


def two_torsion(M: FPModule) -> tuple[FPModule, ModuleMap]:
    return kernel(scalar_map(M, M.ring.from_int(2)))


def annihilated_by_two(A: FPModule) -> bool:
    R = A.ring
    return all(act(R, R.from_int(2), A.gen(j)) in A.lattice for j in range(A.ngens))


def twisted_tensor(A: FPModule, M: FPModule) -> FPModule:
    """``A^[1] (x) M`` for ``2A = 0``: the right action on ``A`` is ``a.r = r^2 a``.

    Generators ``a_k (x) e_j``; an ``M``-relation ``sum q_i e_i`` contributes
    ``sum q_i^2 a_k (x) e_i``.
    """
    if not annihilated_by_two(A):
        raise ModuleError("Frobenius twist needs a module annihilated by 2")
    R = A.ring
    n, ga, gm = R.rank, A.ngens, M.ngens
    total = ga * gm
    rels = []
    for q in A.relations:
        qb = blocks(R, q)
        for j in range(gm):
            v = [0] * (total * n)
            for k in range(ga):
                v[(k * gm + j) * n:(k * gm + j + 1) * n] = qb[k]
            rels.append(v)
    for q in M.relations:
        qb = [R.square(c) for c in blocks(R, q)]
        for k in range(ga):
            v = [0] * (total * n)
            for i in range(gm):
                v[(k * gm + i) * n:(k * gm + i + 1) * n] = qb[i]
            rels.append(v)
    labels = [f"{a}(x){b}" for a in A.labels for b in M.labels]
    return FPModule(R, total, rels, labels)


def twisted_vectors(R: FiniteZAlgebra, a: Sequence[int], m: Sequence[int]) -> Flat:
    """``a (x) m`` in ``A^[1] (x) M`` coordinates."""
    ab, mb = blocks(R, a), blocks(R, m)
    out = []
    for x in ab:
        for y in mb:
            out.extend(R.mul(R.square(y), x))
    return out


def twisted_tensor_map(alpha: ModuleMap, f: ModuleMap, domain: FPModule, codomain: FPModule) -> ModuleMap:
    R = alpha.ring
    cols = [twisted_vectors(R, ac, fc) for ac in alpha.columns for fc in f.columns]
    return ModuleMap(domain, codomain, cols)


def pushout(f: ModuleMap, g: ModuleMap) -> tuple[FPModule, ModuleMap, ModuleMap]:
    """``coker((f, -g): A -> B + C)`` with its two canonical maps."""
    if f.domain is not g.domain and f.domain.ngens != g.domain.ngens:
        raise ModuleError("pushout needs a common domain")
    S = direct_sum(f.codomain, g.codomain)
    cols = [add(S.injections[0].apply(a), scale(-1, S.injections[1].apply(b)))
            for a, b in zip(f.columns, g.columns)]
    P, q = quotient(S.module, cols)
    return P, compose(q, S.injections[0]), compose(q, S.injections[1])


def hom_lattice(M: FPModule, N: FPModule) -> Lattice:
    """All well-defined column tuples ``M -> N`` as a lattice in ``Z^(gM * dim N)``."""
    R = M.ring
    n = R.rank
    gm = M.ngens
    rels = M.lattice.basis
    nrel = len(rels)
    big = N.dim * nrel
    cols = []
    for j in range(gm):
        for p in range(N.dim):
            unit = [0] * N.dim
            unit[p] = 1
            v = []
            for q in rels:
                # coordinate (j, l) of q contributes q_{j,l} * b_l * unit
                qj = q[j * n:(j + 1) * n]
                v.extend(act(R, qj, unit))
            cols.append(v)
    modulo = Lattice(big, [[0] * (k * N.dim) + list(b) + [0] * ((nrel - k - 1) * N.dim)
                           for k in range(nrel) for b in N.lattice.basis])
    return preimage_lattice(cols, big, modulo)


def random_map(M: FPModule, N: FPModule, rng: random.Random, bound: int = 2) -> ModuleMap:
    lat = hom_lattice(M, N)
    v = [0] * (M.ngens * N.dim)
    for b in lat.basis:
        c = rng.randint(-bound, bound)
        if c:
            v = add(v, scale(c, b))
    cols = [N.reduce(v[j * N.dim:(j + 1) * N.dim]) for j in range(M.ngens)]
    return ModuleMap(M, N, cols)


# -- homology and Tor_1 --------------------------------------------------------------------------


@dataclass
class Homology:
    """``ker g / im f`` presented on the generators of ``ker g``."""

    module: FPModule
    cycles: FPModule
    cycle_incl: ModuleMap
    boundary: ModuleMap  # lifted f into the cycles

    def representative(self, v: Sequence[int]) -> Flat:
        return self.cycle_incl.apply(v)

    def class_of(self, chain: Sequence[int]) -> Flat:
        x = lift(self.cycle_incl, chain)
        if x is None:
            raise ModuleError("chain is not a cycle")
        return x


def homology(f: ModuleMap, g: ModuleMap) -> Homology:
    K, incl = kernel(g)
    bnd = factor_through(incl, f)
    H, _ = cokernel(bnd)
    return Homology(H, K, incl, bnd)


def induced_on_homology(h: ModuleMap, src: Homology, dst: Homology) -> ModuleMap:
    """Map ``src -> dst`` induced by a chain map ``h`` on the middle terms."""
    cols = []
    for c in src.cycle_incl.columns:
        x = lift(dst.cycle_incl, h.apply(c))
        if x is None:
            raise ModuleError("chain map does not preserve cycles")
        cols.append(x)
    return ModuleMap(src.module, dst.module, cols)


@dataclass
class Resolution:
    """``F2 -> F1 -> F0 -> M`` with ``F0 = R^g`` and ``F1`` one summand per relation column."""

    module: FPModule
    d1: list[Flat]  # relation columns of M, as vectors in R^g
    d2: list[Flat]  # syzygies among them, as vectors in R^k


_resolution_cache: dict[int, tuple[FPModule, Resolution]] = {}


def resolution(M: FPModule) -> Resolution:
    hit = _resolution_cache.get(id(M))
    if hit is not None and hit[0] is M:
        return hit[1]
    R = M.ring
    k = len(M.relations)
    F1 = FPModule.free(R, k)
    F0 = FPModule.free(R, M.ngens)
    d1 = ModuleMap(F1, F0, M.relations, check=False)
    K, incl = kernel(d1)
    res = Resolution(M, list(M.relations), incl.columns)
    _resolution_cache[id(M)] = (M, res)
    return res


def _complex_map(A: FPModule, matrix_cols: Sequence[Flat], src: int, dst: int, twisted: bool,
                 domain: FPModule, codomain: FPModule) -> ModuleMap:
    """``A (x) (R^src -> R^dst)`` on generators ``a_l (x) f_j`` (index ``l * src + j``)."""
    R = A.ring
    n = R.rank
    cols = []
    for l in range(A.ngens):
        for j in range(src):
            col = matrix_cols[j]
            v = [0] * (A.ngens * dst * n)
            for i in range(dst):
                c = col[i * n:(i + 1) * n]
                if twisted:
                    c = R.square(c)
                v[(l * dst + i) * n:(l * dst + i + 1) * n] = c
            cols.append(v)
    return ModuleMap(domain, codomain, cols, check=False)


@dataclass
class Tor1:
    A: FPModule
    M: FPModule
    twisted: bool
    homology: Homology
    chains: FPModule  # A (x) F1

    @property
    def module(self) -> FPModule:
        return self.homology.module


def tor1(A: FPModule, M: FPModule, twisted: bool = False) -> Tor1:
    """``Tor_1(A, M)`` (or ``Tor_1(A^[1], M)``) as ``H_1(A (x) F)`` for a resolution ``F`` of ``M``."""
    if twisted and not annihilated_by_two(A):
        raise ModuleError("Frobenius twist needs a module annihilated by 2")
    res = resolution(M)
    k, g, s = len(res.d1), M.ngens, len(res.d2)
    C2 = tensor(A, FPModule.free(A.ring, s))
    C1 = tensor(A, FPModule.free(A.ring, k))
    C0 = tensor(A, FPModule.free(A.ring, g))
    d2 = _complex_map(A, res.d2, s, k, twisted, C2, C1)
    d1 = _complex_map(A, res.d1, k, g, twisted, C1, C0)
    return Tor1(A, M, twisted, homology(d2, d1), C1)


def tor1_induced(alpha: ModuleMap, src: Tor1, dst: Tor1) -> ModuleMap:
    """``Tor_1(alpha, M)`` for ``alpha: A -> A'`` (both Tor groups over the same ``M``)."""
    if src.M is not dst.M:
        raise ModuleError("Tor groups must share the second argument")
    k = len(resolution(src.M).d1)
    R = alpha.ring
    n = R.rank
    cols = []
    for l in range(alpha.domain.ngens):
        a = alpha.columns[l]
        for j in range(k):
            v = [0] * dst.chains.dim
            for m in range(alpha.codomain.ngens):
                v[(m * k + j) * n:(m * k + j + 1) * n] = a[m * n:(m + 1) * n]
            cols.append(v)
    chain = ModuleMap(src.chains, dst.chains, cols, check=False)
    return induced_on_homology(chain, src.homology, dst.homology)


@dataclass
class Connecting:
    """``Tor_1(R/I, M)`` realized as ``ker(I (x) M -> M)`` with its inclusion."""

    module: FPModule
    incl: ModuleMap
    multiplication: ModuleMap


def connecting_tor(I_incl: ModuleMap, M: FPModule) -> Connecting:
    I = I_incl.domain
    R = I.ring
    IM = tensor(I, M)
    cols = []
    for i in range(I.ngens):
        a = I_incl.columns[i][:R.rank]
        for j in range(M.ngens):
            cols.append(act(R, a, M.gen(j)))
    mult = ModuleMap(IM, M, cols, check=False)
    K, incl = kernel(mult)
    return Connecting(K, incl, mult)


def cyclic_quotient(R: FiniteZAlgebra, lattice: Lattice, label: str = "1") -> FPModule:
    """``R / J`` for an ideal given by its additive lattice."""
    gens = minimal_r_generators(R, 1, lattice, R.lattice)
    return FPModule(R, 1, gens, [label], lattice=lattice)
