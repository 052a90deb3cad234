"""Exact integer lattice algebra.

Everything downstream (rings, modules, functors) is reduced to computations
with sublattices of Z^n.  Vectors are plain Python lists of ints, so
arithmetic is arbitrary precision throughout.

Conventions
-----------
A lattice is stored by a basis in Hermite normal form.  Internally the basis
vectors are *rows*: pivots (first nonzero entry) strictly increase, pivots
are positive, and the entries above each pivot lie in ``[0, pivot)``.  Read
as the columns of a matrix this is the column HNF of the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Vector = list[int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = x*a + y*b = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Dense integer matrix; empty shapes (0 rows or 0 columns) are legal."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.rows = [list(map(int, r)) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    def columns(self) -> list[Vector]:
        return [[r[j] for r in self.rows] for j in range(self.ncols)]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, v: Sequence[int]) -> Vector:
        return [sum(a * b for a, b in zip(r, v)) for r in self.rows]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.columns(), self.nrows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows!r}, ncols={self.ncols})"


def _first_nonzero(v: Sequence[int], stop: int) -> int:
    for j in range(stop):
        if v[j]:
            return j
    return -1


class _Echelon:
    """Incremental row echelon form over Z.

    Pivots are only searched in the first ``head`` coordinates; the remaining
    coordinates are carried along (used to record transforms).  Vectors whose
    head becomes zero are collected in ``tails``.
    """

    __slots__ = ("head", "rows", "piv", "tails")

    def __init__(self, head: int):
        self.head = head
        self.rows: list[Vector] = []
        self.piv: dict[int, int] = {}  # pivot column -> row
        self.tails: list[Vector] = []

    def insert(self, vec: Sequence[int]) -> None:
        v = list(vec)
        head = self.head
        rows, piv = self.rows, self.piv
        j = _first_nonzero(v, head)
        while j >= 0:
            k = piv.get(j)
            if k is None:
                if v[j] < 0:
                    v = [-x for x in v]
                piv[j] = len(rows)
                rows.append(v)
                return
            r = rows[k]
            a, b = r[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, r)]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                rows[k] = [x * p + y * s for p, s in zip(r, v)]
                v = [ag * s - bg * p for p, s in zip(r, v)]
            j = _first_nonzero(v, head)
        if any(v):
            self.tails.append(v)

    def reduced_rows(self) -> list[Vector]:
        """Rows in HNF order: pivots increasing, entries above pivots reduced."""
        order = sorted(self.piv)
        rows = [list(self.rows[self.piv[j]]) for j in order]
        for k in range(len(rows)):
            if rows[k][order[k]] < 0:
                rows[k] = [-x for x in rows[k]]
        # left to right: subtracting row k only disturbs columns at or after its pivot
        for k in range(len(rows)):
            p = order[k]
            a = rows[k][p]
            rk = rows[k]
            for i in range(k):
                q = rows[i][p] // a
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rk)]
        return rows


def _hnf_rows(vectors: Iterable[Sequence[int]], dim: int) -> list[Vector]:
    ech = _Echelon(dim)
    for v in vectors:
        if any(v):
            ech.insert(v)
    return ech.reduced_rows()


class Lattice:
    """A sublattice of Z^dim, stored by its canonical HNF basis."""

    __slots__ = ("dim", "basis", "pivots", "_pos")

    def __init__(self, dim: int, vectors: Iterable[Sequence[int]] = ()):
        self.dim = dim
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in Z^{dim}")
        self._set(_hnf_rows(vecs, dim))

    def _set(self, rows: list[Vector]) -> None:
        self.basis = rows
        self.pivots = [_first_nonzero(r, self.dim) for r in rows]
        self._pos = {p: k for k, p in enumerate(self.pivots)}

    @classmethod
    def _from_hnf(cls, dim: int, rows: list[Vector]) -> Lattice:
        lat = cls.__new__(cls)
        lat.dim = dim
        lat._set(rows)
        return lat

    @classmethod
    def full(cls, dim: int) -> Lattice:
        return cls._from_hnf(dim, [[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMatrix:
        """Basis as the columns of a ``dim x rank`` matrix (column HNF)."""
        return IntMatrix.from_columns(self.basis, self.dim)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo the lattice."""
        v = list(v)
        for p, r in zip(self.pivots, self.basis):
            q = v[p] // r[p]
            if q:
                v = [x - q * y for x, y in zip(v, r)]
        return v

    def coefficients(self, v: Sequence[int]) -> Vector | None:
        """Coefficients ``c`` with ``sum c_k basis_k == v``, or None."""
        v = list(v)
        coeffs = []
        for p, r in zip(self.pivots, self.basis):
            q, rem = divmod(v[p], r[p])
            if rem:
                return None
            coeffs.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, r)]
        if any(v):
            return None
        return coeffs

    def __contains__(self, v: Sequence[int]) -> bool:
        v = list(v)
        for p, r in zip(self.pivots, self.basis):
            q, rem = divmod(v[p], r[p])
            if rem:
                return False
            if q:
                v = [x - q * y for x, y in zip(v, r)]
        return not any(v)

    def contains_lattice(self, other: Lattice) -> bool:
        return all(b in self for b in other.basis)

    def extend(self, vectors: Iterable[Sequence[int]]) -> Lattice:
        vecs = [list(v) for v in vectors]
        if all(v in self for v in vecs):
            return self
        return Lattice(self.dim, self.basis + vecs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.dim, tuple(map(tuple, self.basis))))

    def is_full(self) -> bool:
        return self.rank == self.dim and all(self.basis[k][p] == 1 for k, p in enumerate(self.pivots))

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, basis={self.basis})"


def hermite_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: returns ``(H, T)`` with ``A @ T == H``.

    ``T`` is unimodular.  The nonzero columns of ``H`` come first, with
    strictly increasing pivot rows, positive pivots and entries to the left
    of each pivot reduced into ``[0, pivot)``.
    """
    m, n = A.nrows, A.ncols
    ech = _Echelon(m)
    for j, col in enumerate(A.columns()):
        ech.insert(col + [int(i == j) for i in range(n)])
    rows = ech.reduced_rows()
    tails = _hnf_rows([t[m:] for t in ech.tails], n) if ech.tails else []
    # _hnf_rows on tails can only recombine them unimodularly, so T stays unimodular
    h_cols = [r[:m] for r in rows] + [[0] * m for _ in tails]
    t_cols = [r[m:] for r in rows] + tails
    return IntMatrix.from_columns(h_cols, m), IntMatrix.from_columns(t_cols, n)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of ``{x : A x = 0}`` (in HNF)."""
    m, n = A.nrows, A.ncols
    ech = _Echelon(m)
    for j, col in enumerate(A.columns()):
        ech.insert(col + [int(i == j) for i in range(n)])
    kern = _hnf_rows([t[m:] for t in ech.tails], n)
    return IntMatrix.from_columns(kern, n)


def solve_affine(columns: Sequence[Sequence[int]], target: Sequence[int],
                 modulo: Lattice | None = None) -> Vector | None:
    """Find integers ``x`` with ``sum x_j columns_j - target`` in ``modulo``.

    Returns None when no solution exists.  ``modulo`` defaults to the zero
    lattice.
    """
    dim = len(target)
    n = len(columns)
    extra = modulo.basis if modulo is not None else []
    width = dim + n
    ech = _Echelon(dim)
    for j, c in enumerate(columns):
        v = list(c) + [0] * n
        v[dim + j] = 1
        ech.insert(v)
    for b in extra:
        ech.insert(list(b) + [0] * n)
    rows = ech.reduced_rows()
    v = list(target) + [0] * n
    for r in rows:
        p = _first_nonzero(r, dim)
        q, rem = divmod(v[p], r[p])
        if rem:
            return None
        if q:
            v = [x - q * y for x, y in zip(v, r)]
    if any(v[:dim]):
        return None
    assert len(v) == width
    return [-x for x in v[dim:]]


def preimage_lattice(columns: Sequence[Sequence[int]], dim: int,
                     modulo: Lattice | None = None) -> Lattice:
    """``{x in Z^n : sum x_j columns_j in modulo}`` for ``n = len(columns)``."""
    n = len(columns)
    ech = _Echelon(dim)
    for j, c in enumerate(columns):
        v = list(c) + [0] * n
        v[dim + j] = 1
        ech.insert(v)
    if modulo is not None:
        for b in modulo.basis:
            ech.insert(list(b) + [0] * n)
    return Lattice(n, [t[dim:] for t in ech.tails])


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == diag(d)`` with ``d[k] | d[k+1]`` (zeros last)."""

    d: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix


def _snf_core(rows: list[Vector], nrows: int, ncols: int, track: bool):
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if track else None
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None

    def row_comb(i, k, a, b, c, d):
        # rows (i, k) <- (a*row_i + b*row_k, c*row_i + d*row_k)
        for M in (A, U) if track else (A,):
            ri, rk = M[i], M[k]
            M[i] = [a * x + b * y for x, y in zip(ri, rk)]
            M[k] = [c * x + d * y for x, y in zip(ri, rk)]

    def col_comb(j, k, a, b, c, d):
        for M in (A, V) if track else (A,):
            for r in M:
                x, y = r[j], r[k]
                r[j] = a * x + b * y
                r[k] = c * x + d * y

    t = 0
    diag = []
    size = min(nrows, ncols)
    while t < size:
        # choose the nonzero entry of least absolute value in the submatrix
        best = None
        for i in range(t, nrows):
            ri = A[i]
            for j in range(t, ncols):
                x = ri[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_comb(t, i, 0, 1, 1, 0)
        if j != t:
            col_comb(t, j, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(t + 1, nrows):
                b = A[i][t]
                if b:
                    a = A[t][t]
                    if b % a == 0:
                        q = b // a
                        row_comb(t, i, 1, 0, -q, 1)
                    else:
                        g, x, y = xgcd(a, b)
                        row_comb(t, i, x, y, -(b // g), a // g)
                        done = False
            for j in range(t + 1, ncols):
                b = A[t][j]
                if b:
                    a = A[t][t]
                    if b % a == 0:
                        q = b // a
                        col_comb(t, j, 1, 0, -q, 1)
                    else:
                        g, x, y = xgcd(a, b)
                        col_comb(t, j, x, y, -(b // g), a // g)
                        done = False
            if not done:
                continue
            a = A[t][t]
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if A[i][j] % a:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_comb(t, bad, 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms ``U``, ``V``."""
    m, n = A.nrows, A.ncols
    diag, U, V = _snf_core(A.rows, m, n, track=True)
    d = tuple(diag) + (0,) * (min(m, n) - len(diag))
    return SmithDecomposition(d, IntMatrix(U, m), IntMatrix(V, n))


def quotient_invariants(L: Lattice) -> list[int]:
    """Invariant factors of ``Z^dim / L``: torsion ascending, then a 0 per free summand."""
    free = L.dim - L.rank
    if L.rank == 0:
        return [0] * free
    # rows of the HNF basis, restricted to pivot-bearing structure, are all we need
    diag, _, _ = _snf_core(L.basis, L.rank, L.dim, track=False)
    torsion = sorted(d for d in diag if d != 1)
    return torsion + [0] * free


def lattice_membership(L: Lattice, v: Sequence[int]) -> Vector | None:
    """Coefficients of ``v`` over the HNF basis of ``L``, or None if ``v`` is not in ``L``."""
    if len(v) != L.dim:
        raise ValueError("vector length does not match ambient rank")
    return L.coefficients(v)
