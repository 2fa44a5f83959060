import io
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lieinv.invariants import action_matrix
from lieinv.linalg import (
    CONFIRM_PRIME,
    DEFAULT_PRIME,
    DependentVectorsError,
    SparseIntMatrix,
    hnf,
    hnf_rows,
    integer_nullspace,
    is_hnf,
    is_lll_reduced,
    is_prime,
    lattice_index,
    lll_reduce,
    nullspace_canonical,
    primitive_vector,
    rank_modular,
    rank_rational,
    rcf_modular,
    rcf_rational,
    same_lattice,
    saturate,
    sqnorm,
    vstack,
)

from oracles import fraction_det, textbook_hnf

small_matrix = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 7).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_rcf_identity():
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    r = rcf_rational(eye)
    assert r.rank == 3 and r.dense() == eye
    assert nullspace_canonical(eye) == []


def test_rcf_small_example():
    r = rcf_rational([[2, 4, 6], [1, 2, 4]])
    assert r.pivots == (0, 2)
    assert r.dense() == [[1, 2, 0], [0, 0, 1]]
    assert nullspace_canonical([[2, 4, 6], [1, 2, 4]]) == [[2, -1, 0]]


def test_rcf_rational_entries():
    r = rcf_rational([[Fraction(1, 2), 1], [1, 3]])
    assert r.rank == 2 and r.dense() == [[1, 0], [0, 1]]


@given(small_matrix)
def test_rcf_idempotent_and_reduced(a):
    r = rcf_rational(a)
    again = rcf_rational(r.dense())
    assert again.dense() == r.dense() and again.pivots == r.pivots
    d = r.dense()
    for i, c in enumerate(r.pivots):
        assert d[i][c] == 1
        assert all(d[k][c] == 0 for k in range(len(d)) if k != i)
        assert all(x == 0 for x in d[i][:c])


@given(small_matrix)
def test_canonical_nullspace_contract(a):
    r = rcf_rational(a)
    vecs = nullspace_canonical(a)
    assert len(vecs) == len(a[0]) - r.rank
    m = SparseIntMatrix.from_dense(a)
    for v in vecs:
        assert m.annihilates(v)
        assert primitive_vector(v) == v
        assert next(x for x in v if x) > 0
    assert [sqnorm(v) for v in vecs] == sorted(sqnorm(v) for v in vecs)
    if vecs:
        assert rank_rational(vecs) == len(vecs)


def test_primitive_vector():
    assert primitive_vector([Fraction(-1, 2), Fraction(1, 3), 0]) == [3, -2, 0]
    assert primitive_vector([0, -4, 6]) == [0, 2, -3]
    assert primitive_vector([0, 0]) == [0, 0]


@given(small_matrix, st.sampled_from([101, 32003, CONFIRM_PRIME]))
def test_modular_matches_rational_on_small_entries(a, p):
    r = rcf_rational(a)
    mr = rcf_modular(a, p)
    assert mr.rank == r.rank
    assert mr.pivots == r.pivots
    want = [[int(x.numerator * pow(x.denominator, -1, p)) % p for x in row] for row in r.dense()[: r.rank]]
    assert mr.rows.tolist() == want


def test_modular_blocked_equals_unblocked():
    rng = random.Random(5)
    a = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(90)] for _ in range(70)]
    results = [rcf_modular(a, 101, block=b) for b in (1, 7, 32, 128)]
    for r in results[1:]:
        assert r.pivots == results[0].pivots
        assert np.array_equal(r.rows, results[0].rows)
    assert results[0].rank == rank_rational(a)


def test_modular_nullspace_vectors():
    rng = random.Random(9)
    a = [[rng.randint(-3, 3) for _ in range(12)] for _ in range(7)]
    mr = rcf_modular(a, 101)
    m = SparseIntMatrix.from_dense(a)
    for v in mr.nullspace():
        assert all(x % 101 == 0 for x in m.matvec(v.tolist()))
    assert mr.term_counts() == [int(np.count_nonzero(v)) for v in mr.nullspace()]


def test_modular_rank_drop_at_unlucky_prime():
    a = [[1, 1], [1, 102]]
    assert rank_modular(a, 101) == 1
    assert rank_modular(a, CONFIRM_PRIME) == 2


@pytest.mark.parametrize("p", [1, 4, 100, 65535])
def test_modular_rejects_composite(p):
    with pytest.raises(ValueError, match="not prime"):
        rcf_modular([[1]], p)


def test_is_prime():
    assert [n for n in range(40) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert is_prime(DEFAULT_PRIME) and is_prime(CONFIRM_PRIME) and is_prime(32003)
    assert not is_prime(32003 * 65521)


def test_hnf_identity():
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    res = hnf(eye)
    assert res.H == eye and res.U == eye


def test_hnf_example():
    res = hnf([[2, 4], [1, 1]])
    assert res.H == [[1, 1], [0, 2]]
    assert matmul(res.U, [[2, 4], [1, 1]]) == res.H


def test_hnf_random_property_suite():
    rng = random.Random(20240601)
    for _ in range(500):
        a = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(6)]
        res = hnf(a)
        assert is_hnf(res.H)
        assert matmul(res.U, a) == res.H
        assert abs(fraction_det(res.U)) == 1
        assert res.H == textbook_hnf(a)
        assert res.rank == rank_rational(a)


def test_hnf_rank_deficient():
    a = [[1, 2, 3], [2, 4, 6], [0, 0, 0], [1, 0, 1]]
    res = hnf(a)
    assert res.rank == 2 and is_hnf(res.H)
    assert res.H[2:] == [[0, 0, 0], [0, 0, 0]]
    assert abs(fraction_det(res.U)) == 1


def test_is_hnf_rejects():
    assert not is_hnf([[2, 3], [0, 2]])  # entry above pivot not reduced
    assert not is_hnf([[0, 1], [1, 0]])
    assert not is_hnf([[-1, 0], [0, 1]])
    assert not is_hnf([[0, 0], [0, 1]])
    assert is_hnf([[1, 5, 0], [0, 0, 3]])


def test_integer_nullspace_full_rank():
    assert integer_nullspace([[1, 2], [3, 5]]) == []


@given(small_matrix)
def test_integer_nullspace_is_saturated_kernel(a):
    vecs = integer_nullspace(a)
    m = SparseIntMatrix.from_dense(a)
    assert len(vecs) == len(a[0]) - rank_rational(a)
    for v in vecs:
        assert m.annihilates(v)
    if vecs:
        assert lattice_index(vecs) == 1
        assert same_lattice(vecs, saturate(nullspace_canonical(a)))


def test_integer_nullspace_beats_canonical_lattice():
    # canonical vectors (1,2,0), (1,0,2) miss (1,1,1), half their sum
    a = [[2, -1, -1]]
    can = nullspace_canonical(a)
    lat = integer_nullspace(a)
    assert lattice_index(can) == 2
    assert lattice_index(lat) == 1
    assert same_lattice(saturate(can), lat)
    assert not same_lattice(can, lat)


def test_saturate():
    b = [[2, 0, 0], [0, 3, 3]]
    s = saturate(b)
    assert lattice_index(s) == 1
    assert same_lattice(s, [[1, 0, 0], [0, 1, 1]])
    assert saturate([]) == []
    assert saturate([[1, 1]]) == [[1, 1]]


def test_lattice_index_dependent():
    with pytest.raises(ValueError):
        lattice_index([[1, 2], [2, 4]])


def test_lll_orthogonal_basis_unchanged():
    b = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert lll_reduce(b) == b


def test_lll_classic_example():
    b = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    red = lll_reduce(b)
    assert is_lll_reduced(red)
    assert same_lattice(red, b)
    assert sorted(red) == sorted([[0, 1, 0], [1, 0, 1], [-1, 0, 2]])


def test_lll_rejects_dependent_and_bad_delta():
    with pytest.raises(DependentVectorsError):
        lll_reduce([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        lll_reduce([[1, 0]], delta=Fraction(1, 4))
    with pytest.raises(ValueError):
        lll_reduce([[1, 0]], delta=2)


def test_lll_random_lattices():
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randint(2, 6)
        dim = rng.randint(n, 8)
        b = [[rng.randint(-30, 30) for _ in range(dim)] for _ in range(n)]
        if rank_rational(b) < n:
            continue
        for delta in (Fraction(3, 4), Fraction(99, 100), "1"):
            red = lll_reduce(b, delta)
            assert is_lll_reduced(red, delta)
            assert same_lattice(red, b)
            assert len(red) == n


def test_is_lll_reduced_detects_unreduced():
    assert not is_lll_reduced([[1, 0], [5, 1]])
    assert not is_lll_reduced([[10, 0], [0, 1]])


@pytest.mark.parametrize("name,degree", [("sl2-adjoint", 7), ("sl3-natural", 9), ("sl2-natural", 10)])
def test_nullspaces_on_action_matrices(name, degree):
    from lieinv.reps import builtin_rep

    a = action_matrix(builtin_rep(name), degree).stacked
    can = nullspace_canonical(a)
    lat = integer_nullspace(a)
    assert len(can) == len(lat)
    assert all(a.annihilates(v) for v in can + lat)
    assert same_lattice(lat, saturate(can))
    red = lll_reduce(lat)
    assert same_lattice(red, lat) and is_lll_reduced(red)


def test_sparse_matrix_basics():
    m = SparseIntMatrix.from_dense([[0, 1, 0], [2, 0, -3]])
    assert m.shape == (2, 3) and m.nnz == 3
    assert m.to_dense() == [[0, 1, 0], [2, 0, -3]]
    assert m.transpose().to_dense() == [[0, 2], [1, 0], [0, -3]]
    assert m.matvec([1, 1, 1]) == [1, -1]
    assert m[1, 2] == -3 and m[0, 0] == 0
    assert vstack([m, m]).shape == (4, 3)
    with pytest.raises(ValueError):
        SparseIntMatrix(1, 1, {(0, 0): 0})
    with pytest.raises(IndexError):
        SparseIntMatrix(1, 1, {(1, 0): 2})
    with pytest.raises(ValueError):
        vstack([m, m.transpose()])


def test_triple_format_round_trip(tmp_path):
    m = SparseIntMatrix.from_dense([[0, 1, 0], [2, 0, -3], [0, 0, 0]])
    buf = io.StringIO()
    m.write(buf)
    assert buf.getvalue() == "3 3\n0 1 1\n1 0 2\n1 2 -3\n"
    assert SparseIntMatrix.read(io.StringIO(buf.getvalue())) == m
    path = tmp_path / "m.txt"
    m.write(path)
    assert SparseIntMatrix.read(path) == m
    with pytest.raises(ValueError):
        SparseIntMatrix.read(io.StringIO("2 2\n0 x 1\n"))
    with pytest.raises(ValueError):
        SparseIntMatrix.read(io.StringIO(""))


def test_hnf_rows_canonical():
    assert hnf_rows([[2, 4], [1, 1]]) == hnf_rows([[1, 1], [0, 2]])
    assert hnf_rows([]) == []
