from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from hochbv.exactfield import GF, Q, Polynomial
from hochbv.linalg import (Matrix, Subspace, dense_inverse, evaluate_polynomial, image, kernel, minimal_polynomial,
                           operator_classification, quotient_representatives, rank, solve)


def dense_matrices(p, max_dim=6):
    entry = st.integers(-3, 3) if p == 0 else st.integers(0, p - 1)
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)))


def mod_p_rank(rows, p):
    # plain dense elimination, the oracle for finite fields
    rows = [[x % p for x in r] for r in rows]
    rk, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], p - 2, p)
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rk])]
        rk += 1
    return rk


@given(rows=dense_matrices(0))
def test_rank_matches_sympy(rows):
    M = Matrix.from_dense(Q, rows)
    assert rank(M) == sympy.Matrix(rows).rank()


@given(rows=dense_matrices(5))
def test_rank_mod_p(rows):
    M = Matrix.from_dense(GF(5), rows)
    assert rank(M) == mod_p_rank(rows, 5)


@given(rows=dense_matrices(0), data=st.data())
def test_rank_permutation_invariant(rows, data):
    rp = data.draw(st.permutations(range(len(rows))))
    cp = data.draw(st.permutations(range(len(rows[0]))))
    perm = [[rows[i][j] for j in cp] for i in rp]
    assert rank(Matrix.from_dense(Q, rows)) == rank(Matrix.from_dense(Q, perm))


@given(rows=dense_matrices(3))
def test_kernel_and_image(rows):
    F = GF(3)
    M = Matrix.from_dense(F, rows)
    K = kernel(M)
    r = rank(M)
    assert K.dim == M.ncols - r
    assert image(M).dim == r
    for v in K.basis:
        assert M.apply(v) == {}


@given(rows=dense_matrices(0), data=st.data())
def test_solve(rows, data):
    M = Matrix.from_dense(Q, rows)
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.ncols, max_size=M.ncols))
    b = M.apply({i: v for i, v in enumerate(x) if v})
    sol = solve(M, b)
    assert sol is not None
    assert M.apply(sol) == b


def test_solve_inconsistent():
    M = Matrix.from_dense(Q, [[1, 1], [1, 1]])
    assert solve(M, {0: 1, 1: 2}) is None


@given(rows=dense_matrices(0, 4))
def test_dense_inverse(rows):
    n = len(rows)
    rows = [(r * n)[:n] for r in rows]
    inv = dense_inverse(Q, rows)
    if sympy.Matrix(rows).det() == 0:
        assert inv is None
    else:
        prod = sympy.Matrix(rows) * sympy.Matrix(inv)
        assert prod == sympy.eye(n)


@given(rows=dense_matrices(0, 5))
def test_minimal_polynomial_annihilates_and_divides_charpoly(rows):
    n = len(rows)
    rows = [(r * n)[:n] for r in rows]
    M = Matrix.from_dense(Q, rows)
    mp = minimal_polynomial(M)
    assert evaluate_polynomial(mp, M).is_zero()
    x = sympy.Symbol("x")
    cp = sympy.Matrix(rows).charpoly(x).as_expr()
    mps = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * x ** i for i, c in enumerate(mp.coeffs))
    assert sympy.rem(cp, mps, x) == 0
    # minimality: deg mp = dim span{I, M, M^2, ...}
    S = sympy.Matrix(rows)
    powers = [list(S ** k) for k in range(n + 1)]
    assert mp.degree == sympy.Matrix(powers).rank()


@given(rows=dense_matrices(7, 4))
def test_diagonalizable_implies_semisimple(rows):
    n = len(rows)
    rows = [(r * n)[:n] for r in rows]
    M = Matrix.from_dense(GF(7), rows)
    c = operator_classification(M)
    if c["diagonalizable_over_field"]:
        assert c["semisimple"]
        assert c["spectrum_in_field"]


def test_jordan_block_is_not_semisimple():
    M = Matrix.from_dense(Q, [[2, 1], [0, 2]])
    c = operator_classification(M)
    assert not c["semisimple"]
    assert c["minimal_polynomial"] == Polynomial(Q, [4, -4, 1])


def test_rotation_semisimple_not_split_over_q():
    M = Matrix.from_dense(Q, [[0, -1], [1, 0]])
    c = operator_classification(M)
    assert c["semisimple"] and not c["diagonalizable_over_field"]


def test_frobenius_char_p_nonsemisimple():
    # x^2 + 1 = (x+1)^2 over GF(2)
    M = Matrix.from_dense(GF(2), [[0, 1], [1, 0]])
    assert not operator_classification(M)["semisimple"]


def test_quotient_representatives():
    F = Q
    total = Subspace.full(F, 3)
    sub = Subspace.span(F, 3, [{0: 1, 1: 1}])
    reps = quotient_representatives(total, sub)
    assert len(reps) == 2
    assert Subspace.span(F, 3, list(reps) + list(sub.basis)).dim == 3
