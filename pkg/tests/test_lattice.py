from hypothesis import given, settings
from hypothesis import strategies as st

from quadmod.lattice import (IntMatrix, Lattice, hermite_normal_form, kernel_basis,
                             lattice_membership, quotient_invariants, smith_normal_form, solve_affine)


def det(M):
    rows = [list(r) for r in M.rows]
    n = len(rows)
    if n == 0:
        return 1
    # fraction-free Bareiss elimination
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return sign * rows[-1][-1]


def diag_matrix(d, m, n):
    return IntMatrix([[d[i] if i == j and i < len(d) else 0 for j in range(n)] for i in range(m)], n)


def is_column_hnf(H):
    row = -1
    for col in H.columns():
        nz = [i for i, x in enumerate(col) if x]
        if not nz:
            row = H.nrows
            continue
        p = nz[0]
        if p <= row or col[p] <= 0:
            return False
        row = p
    return True


def matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(0, max_rows).flatmap(lambda m: st.integers(0, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda rows: IntMatrix(rows, n))))


# -- examples ---------------------------------------------------------------------------------------


def test_hnf_of_rank_one_matrix_spans_2z():
    H, T = hermite_normal_form(IntMatrix([[2, 4], [0, 0]]))
    assert IntMatrix([[2, 4], [0, 0]]) @ T == H
    assert H.columns()[0] == [2, 0]
    assert H.columns()[1] == [0, 0]


def test_hnf_of_zero_matrix_is_itself():
    H, T = hermite_normal_form(IntMatrix.zeros(2, 3))
    assert H == IntMatrix.zeros(2, 3)
    assert abs(det(T)) == 1


def test_hnf_of_identity():
    H, T = hermite_normal_form(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3)
    assert T == IntMatrix.identity(3)


def test_smith_examples():
    assert smith_normal_form(IntMatrix([[2, 0], [0, 3]])).d == (1, 6)
    assert smith_normal_form(IntMatrix.zeros(2, 2)).d == (0, 0)
    assert smith_normal_form(IntMatrix([[2]])).d == (2,)


def test_kernel_examples():
    assert kernel_basis(IntMatrix([[2]])).ncols == 0
    k = kernel_basis(IntMatrix([[1, 1]]))
    assert k.columns() in ([[1, -1]], [[-1, 1]])
    assert Lattice(2, kernel_basis(IntMatrix.zeros(1, 2)).columns()).is_full()


def test_membership_examples():
    two_z = Lattice(1, [[2]])
    assert lattice_membership(two_z, [4]) == [2]
    assert lattice_membership(two_z, [3]) is None
    L = Lattice(2, [[2, 1], [0, 2]])
    c = lattice_membership(L, [2, 3])
    assert c == [1, 1]


def test_quotient_invariant_examples():
    assert quotient_invariants(Lattice(2, [[2, 1], [0, 2]])) == [4]
    assert quotient_invariants(Lattice(2)) == [0, 0]
    assert quotient_invariants(Lattice.full(2)) == []


def test_empty_matrices_are_legal():
    assert kernel_basis(IntMatrix.zeros(0, 3)).ncols == 3
    assert smith_normal_form(IntMatrix.zeros(0, 2)).d == ()
    H, T = hermite_normal_form(IntMatrix.zeros(3, 0))
    assert H.ncols == 0 and T.ncols == 0


def test_large_entries_stay_exact():
    big = 2 ** 80 + 1
    assert quotient_invariants(Lattice(1, [[big * 3]])) == [big * 3]
    assert solve_affine([[big]], [big * 7]) == [7]


# -- properties -------------------------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_smith_recomposes(A):
    s = smith_normal_form(A)
    assert s.U @ A @ s.V == diag_matrix(s.d, A.nrows, A.ncols)
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    for a, b in zip(s.d, s.d[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_hnf_is_column_hnf_with_unimodular_transform(A):
    H, T = hermite_normal_form(A)
    assert A @ T == H
    assert abs(det(T)) == 1
    assert is_column_hnf(H)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), max_size=6))
def test_hnf_canonical_under_basis_change(A, ops):
    cols = A.columns()
    other = [list(c) for c in cols]
    for i, j, k in ops:
        if i < len(other) and j < len(other) and i != j:
            other[i] = [x + k * y for x, y in zip(other[i], other[j])]
    other = other[::-1]
    L1, L2 = Lattice(A.nrows, cols), Lattice(A.nrows, other)
    assert L1 == L2
    assert quotient_invariants(L1) == quotient_invariants(L2)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_basis_spans_kernel(A):
    K = kernel_basis(A)
    for col in K.columns():
        assert A.apply(col) == [0] * A.nrows
    rank = A.ncols - len(kernel_basis(A).columns())
    # rank-nullity against the Smith rank
    assert rank == sum(1 for d in smith_normal_form(A).d if d)


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_membership_roundtrip(A, coeffs):
    L = Lattice(A.nrows, A.columns())
    v = [sum(c * x for c, x in zip(coeffs, row)) for row in A.rows]
    c = lattice_membership(L, v)
    assert c is not None
    assert [sum(ck * b[i] for ck, b in zip(c, L.basis)) for i in range(A.nrows)] == v


def assert_reduced(L):
    for k, (p, row) in enumerate(zip(L.pivots, L.basis)):
        assert row[p] > 0
        for above in L.basis[:k]:
            assert 0 <= above[p] < row[p]


def test_hnf_reduces_every_pivot_column():
    rows = [[1, 0, 0, 0, 12, -4], [0, 1, 0, 0, 6, -2], [0, 0, 1, 0, 3, -1],
            [0, 0, 0, 1, 0, -1], [0, 0, 0, 0, 4, -1]]
    L = Lattice(6, rows)
    assert_reduced(L)
    assert L.basis[0] == [1, 0, 0, 0, 0, -1]
    assert L.basis[1] == [0, 1, 0, 0, 2, -1]


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=7, max_cols=7, bound=9))
def test_lattice_basis_fully_reduced(A):
    L = Lattice(A.nrows, A.columns())
    assert_reduced(L)
    assert Lattice(A.nrows, L.basis) == L
