import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors as sympy_invariants

from chowkit.lattice import (
    BasisSolver,
    GradedLattice,
    NotContained,
    cokernel,
    det,
    hnf,
    identity,
    index_of,
    inverse,
    invariant_factors,
    matmul,
    rank,
    rank_mod_p,
    snf,
)


def small_matrices(max_rows=5, max_cols=5, bound=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def _is_unimodular(M):
    return abs(det(M)) == 1


def _oracle_factors(A):
    fs = [abs(int(f)) for f in sympy_invariants(Matrix(A), domain=ZZ)]
    return [f for f in fs if f]


def test_hnf_examples():
    assert hnf(identity(2)) == identity(2)
    assert hnf([[2, 4], [0, 2]]) == [[2, 0], [0, 2]]
    assert hnf([[0]]) == [[0]]


def test_snf_examples():
    assert snf([[2, 0], [0, 3]]).factors == [1, 6]
    S = snf([[0, 0], [0, 0]])
    assert S.factors == [] and S.rank == 0
    assert snf([[2, 0], [0, 2]]).factors == [2, 2]


@given(small_matrices())
def test_snf_reconstruction(A):
    S = snf(A)
    assert matmul(matmul(S.U, A), S.V) == S.diagonal_matrix()
    assert _is_unimodular(S.U) and _is_unimodular(S.V)
    fs = S.factors
    assert all(f > 0 for f in fs)
    assert all(fs[i + 1] % fs[i] == 0 for i in range(len(fs) - 1))
    assert S.rank == rank(A)


@given(small_matrices())
def test_snf_matches_sympy(A):
    assert invariant_factors(A) == _oracle_factors(A)


@given(small_matrices())
def test_hnf_shape_and_span(A):
    H = hnf(A)
    rows, cols = len(A), len(A[0])
    # column echelon: pivot rows strictly increase; zero columns last
    last = -1
    seen_zero = False
    for j in range(cols):
        col = [H[i][j] for i in range(rows)]
        if not any(col):
            seen_zero = True
            continue
        assert not seen_zero
        r = next(i for i in range(rows) if col[i])
        assert r > last and col[r] > 0
        for jj in range(j):
            assert 0 <= H[r][jj] < col[r]
        last = r
    assert hnf(H) == H
    # same column lattice: compare with an independent HNF
    if rank(A) > 0:
        assert hermite_normal_form(Matrix(H)) == hermite_normal_form(Matrix(A))


def _lattice_from_rows(rows):
    return GradedLattice({0: rows}, {0: len(rows[0])})


def square_pairs(bound=6):
    def pair(n):
        sq = st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n)
        return st.tuples(sq, sq)

    return st.integers(1, 4).flatmap(pair)


@given(square_pairs())
def test_index_multiplicativity(pair):
    A, B = pair
    assume(det(A) != 0 and det(B) != 0)
    n = len(A)
    # Z^n contains rows(A), which contains rows(B A)
    L0 = _lattice_from_rows(identity(n))
    L1 = _lattice_from_rows(A)
    L2 = _lattice_from_rows(matmul(B, A))
    assert index_of(L2, L0) == index_of(L2, L1) * index_of(L1, L0)
    assert index_of(L1, L0) == abs(det(A))
    assert index_of(L2, L1) == abs(det(B))


def test_index_examples():
    L = _lattice_from_rows(identity(2))
    assert index_of(L, L) == 1
    assert index_of(_lattice_from_rows([[2, 0], [0, 2]]), L) == 4
    with pytest.raises(NotContained):
        index_of(L, _lattice_from_rows([[2, 0], [0, 2]]))


def test_coords_in_examples():
    L = GradedLattice({2: [[1, 0, 0], [0, 1, 1]]}, {2: 3})
    assert L.coords_in([1, 0, 0], 2) == [1, 0]
    assert L.coords_in([0, 2, 2], 2) == [0, 2]
    assert L.coords_in([Fraction(1, 2), 0, 0], 2) is None
    assert L.coords_in([0, 1, 0], 2) is None
    with pytest.raises(ValueError):
        L.coords_in([1, 0, 0], 4)
    with pytest.raises(ValueError):
        L.coords_in([1, 0], 2)


def test_basis_solver_rejects_dependent_vectors():
    with pytest.raises(ValueError):
        BasisSolver([[1, 2], [2, 4]], 2)


def test_cokernel_examples():
    zero = cokernel({0: [[0]]}, {0: 1, 2: 1})
    assert zero.degrees[2] == (1, [])
    two = cokernel({0: [[2]]}, {0: 1, 2: 1})
    assert two.degrees[2] == (0, [2])
    assert two.degrees[0] == (1, [])
    assert two.torsion_order() == 2


def test_cokernel_shape_errors():
    with pytest.raises(ValueError):
        cokernel({0: [[1, 2]]}, {0: 1, 2: 1})
    with pytest.raises(ValueError):
        cokernel({2: [[1]]}, {2: 1})


@given(small_matrices(), st.integers(0, 3).map(lambda i: (2, 3, 5, 7)[i]))
def test_rank_mod_p_bounds(A, p):
    r = rank_mod_p(A, p)
    assert r <= rank(A)
    # rank drops mod p exactly when p divides an invariant factor
    drops = sum(1 for f in snf(A).factors if f % p == 0)
    assert r == rank(A) - drops


def test_inverse():
    A = [[2, 1], [1, 1]]
    assert matmul(A, inverse(A)) == [[1, 0], [0, 1]]


def test_thousand_random_matrices():
    rng = random.Random(20240917)
    for _ in range(1000):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        S = snf(A)
        assert matmul(matmul(S.U, A), S.V) == S.diagonal_matrix()
        H = hnf(A)
        assert hnf(H) == H
