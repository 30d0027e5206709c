import random
from fractions import Fraction

from dualhs.field import QQ, PrimeField
from dualhs.linalg import (Matrix, SpanBasis, kernel, rank, rref, solve,
                           sparse_kernel, sparse_rank)


def M(rows, field=QQ):
    return Matrix.from_int_rows(field, rows)


def test_rref_proportional_rows():
    _, rk, _ = rref(M([[1, 2], [2, 4]]))
    assert rk == 1


def test_rref_identity():
    A = Matrix.identity(QQ, 3)
    R, rk, piv = rref(A)
    assert R == A and rk == 3 and piv == (0, 1, 2)


def test_rref_pivots():
    _, rk, piv = rref(M([[1, 1, 1], [0, 1, 1]]))
    assert rk == 2 and piv == (0, 1)


def test_kernel_one_relation():
    basis = kernel(M([[1, 1]]))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == -v[1] != 0


def test_kernel_injective():
    assert kernel(Matrix.identity(QQ, 2)) == []


def test_kernel_zero_map():
    assert len(kernel(Matrix.zero(QQ, 2, 3))) == 3


def test_solve_identity():
    x = solve(Matrix.identity(QQ, 2), [Fraction(3), Fraction(5)])
    assert x == (Fraction(3), Fraction(5))


def test_solve_underdetermined():
    A = M([[1, 1]])
    x = solve(A, [Fraction(2)])
    assert x is not None and sum(x) == 2


def test_solve_inconsistent():
    assert solve(M([[1], [0]]), [Fraction(0), Fraction(1)]) is None


def _random_matrix(rng, field, m, n, lo=-10, hi=10):
    return Matrix(field, [[field.from_int(rng.randint(lo, hi)) for _ in range(n)]
                          for _ in range(m)])


def test_rank_transpose_invariance():
    rng = random.Random(3)
    for _ in range(40):
        A = _random_matrix(rng, QQ, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(A) == rank(A.transpose())


def test_rank_nullity():
    rng = random.Random(4)
    for _ in range(40):
        A = _random_matrix(rng, QQ, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(A) + len(kernel(A)) == A.ncols


def test_kernel_vectors_annihilate():
    rng = random.Random(5)
    for _ in range(30):
        A = _random_matrix(rng, QQ, rng.randint(1, 4), rng.randint(1, 4))
        for v in kernel(A):
            assert all(c == 0 for c in A.mul_vec(v))


def test_solve_verifies():
    rng = random.Random(6)
    for _ in range(30):
        A = _random_matrix(rng, QQ, rng.randint(1, 4), rng.randint(1, 4))
        x0 = [Fraction(rng.randint(-5, 5)) for _ in range(A.ncols)]
        b = A.mul_vec(x0)
        x = solve(A, list(b))
        assert x is not None
        assert A.mul_vec(x) == b


def test_rank_agrees_with_large_prime():
    # entries are small, so no minor can vanish mod a billion-scale prime
    big = PrimeField(1000000007)
    rng = random.Random(7)
    for _ in range(40):
        rows = [[rng.randint(-10, 10) for _ in range(rng.randint(1, 5))]
                for _ in range(rng.randint(1, 5))]
        rows = [r + [0] * (max(len(x) for x in rows) - len(r)) for r in rows]
        assert rank(Matrix.from_int_rows(QQ, rows)) == \
            rank(Matrix.from_int_rows(big, rows))


def test_span_basis_blocks():
    span = SpanBasis(QQ)
    assert span.add({0: Fraction(1), 1: Fraction(2)})
    assert span.add({5: Fraction(3)})
    assert not span.add({0: Fraction(2), 1: Fraction(4)})
    assert span.dim == 2
    assert span.contains({5: Fraction(7)})
    assert not span.contains({1: Fraction(1)})


def test_span_coords_roundtrip():
    span = SpanBasis(QQ)
    rows = [{0: Fraction(1), 2: Fraction(1)}, {1: Fraction(1)}, {2: Fraction(2)}]
    for r in rows:
        span.add(r)
    v = {0: Fraction(3), 1: Fraction(-1), 2: Fraction(5)}
    coords = span.coords(v)
    assert coords is not None
    rebuilt = {}
    for p, c in coords.items():
        for k, a in span.pivot_rows[p].items():
            rebuilt[k] = rebuilt.get(k, Fraction(0)) + c * a
    assert {k: c for k, c in rebuilt.items() if c} == v


def test_sparse_rank_matches_dense():
    rng = random.Random(8)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = _random_matrix(rng, QQ, m, n)
        cols = [{i: A.rows[i][j] for i in range(m) if A.rows[i][j] != 0}
                for j in range(n)]
        assert sparse_rank(QQ, cols) == rank(A)


def test_sparse_kernel_matches_dense():
    rng = random.Random(9)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = _random_matrix(rng, QQ, m, n)
        cols = [{i: A.rows[i][j] for i in range(m) if A.rows[i][j] != 0}
                for j in range(n)]
        ker = sparse_kernel(QQ, cols)
        assert len(ker) == len(kernel(A))
        for combo in ker:
            acc = {}
            for j, c in combo.items():
                for i, a in cols[j].items():
                    acc[i] = acc.get(i, Fraction(0)) + c * a
            assert all(v == 0 for v in acc.values())
