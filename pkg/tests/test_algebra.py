import itertools

import pytest
from hypothesis import given, strategies as st

from hochbv.algebra import (AlgebraError, AssociativityError, QuiverPresentation, UnitError, base_change, center,
                            change_basis, from_quiver, from_structure_constants, radical, reduced_space)
from hochbv.catalog import a_lambda, qci, truncated_polynomial
from hochbv.exactfield import GF, Q


def test_a_lambda_products():
    A = a_lambda(Q, 2)
    assert A.labels == ["e_1", "X", "Y", "X*Y"]
    X, Y, XY = A.index("X"), A.index("Y"), A.index("X*Y")
    assert A.basis_product(X, X) == {}
    assert A.basis_product(Y, Y) == {}
    assert A.basis_product(X, Y) == {XY: 1}
    assert A.basis_product(Y, X) == {XY: Q.parse("1/2")}


def test_bound_independence():
    # a larger nilpotency bound gives the same algebra
    rel = [[(1, "X*X")], [(1, "Y*Y")], [(1, "X*Y"), (-3, "Y*X")]]
    arrows = [("X", "1", "1"), ("Y", "1", "1")]
    A3 = from_quiver(QuiverPresentation.build(Q, ["1"], arrows, rel, 3))
    A5 = from_quiver(QuiverPresentation.build(Q, ["1"], arrows, rel, 5))
    assert A3.labels == A5.labels
    assert A3.table == A5.table


def test_bound_too_small_rejected():
    with pytest.raises(AlgebraError):
        from_quiver(QuiverPresentation.build(Q, ["1"], [("x", "1", "1")], [[(1, "x*x*x")]], 2))


def test_relation_not_composable():
    with pytest.raises(AlgebraError, match="not composable"):
        QuiverPresentation.build(Q, ["1", "2"], [("a", "1", "2"), ("b", "1", "2")], [[(1, "a*b")]], 3)


def test_relation_not_parallel():
    with pytest.raises(AlgebraError, match="parallel"):
        QuiverPresentation.build(Q, ["1", "2"], [("a", "1", "2"), ("b", "2", "1")], [[(1, "a*b"), (1, "b*a")]], 3)


def test_non_associative_table():
    # e*e = e, x*x = e, but (x*x)*x != x*(x*x) forced by a bad entry
    with pytest.raises(AssociativityError):
        from_structure_constants(Q, ["e", "x", "y"], {
            (0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1},
            (1, 1): {2: 1}, (1, 2): {0: 1}, (2, 1): {1: 1}}, {0: 1})


def test_bad_unit():
    with pytest.raises(UnitError):
        from_structure_constants(Q, ["e", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, {1: 1})


def test_structure_constants_match_quiver():
    A = truncated_polynomial(Q, 2)
    B = from_structure_constants(Q, ["1", "x"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0])
    assert A.table == B.table


def brute_center(A):
    # x central iff x*b_j = b_j*x for all j; solve by enumeration over GF(p) coordinates
    F = A.field
    out = []
    for coeffs in itertools.product(range(F.order), repeat=A.dim):
        v = {i: c for i, c in enumerate(coeffs) if c}
        if all(A.multiply(v, {j: 1}) == A.multiply({j: 1}, v) for j in range(A.dim)):
            out.append(v)
    return out


@pytest.mark.parametrize("A", [a_lambda(GF(3), 2), truncated_polynomial(GF(2), 3), qci(GF(3), 2, (1, 1), {(0, 1): 2})])
def test_center_against_enumeration(A):
    Z = center(A)
    assert A.field.order ** Z.dim == len(brute_center(A))
    assert Z.contains(A.unit)


@given(lam=st.integers(1, 6), a=st.tuples(st.integers(1, 2), st.integers(1, 2)))
def test_qci_center_contains_unit(lam, a):
    A = qci(GF(7), 2, a, {(0, 1): lam})
    assert center(A).contains(A.unit)
    assert A.dim == (a[0] + 1) * (a[1] + 1)


def test_radical_is_nilpotent_ideal():
    A = qci(Q, 2, (2, 1), {(0, 1): 3})
    J = radical(A)
    assert J.dim == A.dim - 1
    # J^4 = 0 for this algebra (top degree 3)
    prods = list(J.basis)
    for _ in range(3):
        prods = [A.multiply(x, y) for x in prods for y in J.basis]
    assert all(not v for v in prods)


def test_radical_by_trace_form_for_structure_constants():
    B = from_structure_constants(Q, ["1", "x"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0])
    assert radical(B).dim == 1


@pytest.mark.parametrize("A", [a_lambda(Q, 2), truncated_polynomial(GF(2), 2),
                               from_structure_constants(GF(2), ["a", "b"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, {0: 1, 1: 1})])
def test_reduced_space(A):
    R = reduced_space(A)
    assert R.dim == A.dim - 1
    assert R.project(A.unit) == {}
    for i in range(R.dim):
        assert R.project({R.lift(i): 1}) == {i: 1}


def test_change_basis_is_isomorphism():
    A = a_lambda(Q, 2)
    cols = [{0: 1}, {1: 1, 2: 1}, {1: 1, 2: -1}, {3: 1}]
    B = change_basis(A, cols)
    # b_i b_j in B equals the product of the column vectors read back in B's basis
    for i in range(4):
        for j in range(4):
            lhs = B.basis_product(i, j)
            old = {}
            for k, x in lhs.items():
                for r, y in cols[k].items():
                    old[r] = Q.add(old.get(r, 0), Q.mul(x, y))
            assert {k: v for k, v in old.items() if v} == A.multiply(cols[i], cols[j])


def test_base_change_keeps_table():
    A = a_lambda(GF(3), 2)
    B = base_change(A, GF(3, 2))
    assert B.field == GF(3, 2)
    assert B.table == A.table and B.is_quiver_born
