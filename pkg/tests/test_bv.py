import pytest

from hochbv.bv import DELTA_SIGN, DualityData, SingularPairing, delta_via_plain_B, verify_bv
from hochbv.calculus import Cochain
from hochbv.catalog import a_lambda, a_lambda_descent, omega, qci, truncated_polynomial
from hochbv.exactfield import GF, Q
from hochbv.frobenius import frobenius_data, split_nakayama


def duality(A, bound):
    return DualityData(split_nakayama(A).data, bound)


@pytest.fixture(scope="module")
def tp2():
    return duality(truncated_polynomial(Q, 2), 5)


@pytest.fixture(scope="module")
def a2():
    return duality(a_lambda(Q, 2), 4)


def test_delta_sign_frozen():
    assert DELTA_SIGN == -1


def test_pairing_perfect(tp2, a2):
    for D in (tp2, a2):
        for n in range(D.max_degree + 1):
            assert D.is_perfect(n)
            assert len(D.pairing_matrix(n)) == len(D.calc.cohomology_generators(n))


def test_fundamental_class_nonzero(tp2, a2):
    for D in (tp2, a2):
        assert any(x != 0 for x in D.fundamental_class())


@pytest.mark.parametrize("p", range(3))
def test_adjointness_sign(a2, p):
    assert a2.adjointness_sign(p) == (1 if p % 2 == 0 else -1)


def test_betti_numbers_agree(a2):
    K = a2.calc
    for n in range(a2.max_degree + 1):
        assert K.homology(n).dim == K.cohomology(n).dim == K.chains.betti(n)


def test_delta_unit_and_square(tp2, a2):
    for D in (tp2, a2):
        K = D.calc
        assert D.is_zero_class(D.delta(K.unit_cochain()))
        for n in range(2, D.max_degree + 1):
            for a in K.cohomology_generators(n):
                assert D.is_zero_class(D.delta(D.delta(a)))


def test_tp2_delta_on_degree_one(tp2):
    # locked regression: Delta: HH^1 -> HH^0 of k[x]/(x^2) over Q
    assert tp2.delta_matrix(1) == [[-1, 0]]


@pytest.mark.parametrize("make,bound", [(lambda: truncated_polynomial(Q, 2), 5), (lambda: a_lambda(Q, 2), 4),
                                        (lambda: qci(Q, 2, (1, 1), {(0, 1): 3}), 3),
                                        (lambda: truncated_polynomial(Q, 3), 4)])
def test_bv_identity(make, bound):
    rep = verify_bv(duality(make(), bound), bound - 1)
    assert rep.ok
    assert "pass" in rep.defects.values()


def test_bv_descent_over_gf9():
    S = split_nakayama(a_lambda_descent(GF(3)))
    assert S.status == "extended" and S.data.field == GF(3, 2)
    assert verify_bv(DualityData(S.data, 3), 2).ok


def test_not_checked_beyond_range(a2):
    rep = verify_bv(a2, a2.max_degree + 1)
    over = [k for k in rep.defects if k[0] + k[2] > a2.max_degree]
    assert over and all(rep.defects[k] == "not checked" for k in over)
    g = a2.calc.cohomology_generators(2)[0]
    with pytest.raises(ValueError):
        a2.bv_defect(g, g)


def test_ginzburg(tp2, a2):
    for D in (tp2, a2):
        res = D.ginzburg_check()
        assert res["checked"] > 0 and res["failed"] == 0


def test_symmetric_delta_matches_plain_B():
    A = truncated_polynomial(Q, 3)
    F = frobenius_data(A)
    D = DualityData(F, 4)
    for n in range(1, 4):
        assert delta_via_plain_B(F, 4, n) == D.delta_matrix(n)


def test_plain_B_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        delta_via_plain_B(frobenius_data(a_lambda(Q, 2)), 3, 1)


def test_projected_representatives_give_same_delta(a2):
    K = a2.calc
    for n in range(1, a2.max_degree + 1):
        reps = a2.projected_representatives(n - 1)
        H = K.cohomology(n - 1)
        for a in K.cohomology_generators(n):
            x = a2.delta_with_representatives(a, reps)
            y = a2.delta(a)
            assert H.is_zero(K.sub(x, y).coeffs)


def test_requires_diagonalizable():
    S = split_nakayama(omega(GF(3), 1))
    assert S.status == "not-semisimple"
    with pytest.raises(ValueError):
        DualityData(S.data, 3)


def test_singular_pairing_reported(a2):
    K = a2.calc
    a = K.cohomology_generators(1)[0]
    with pytest.raises(SingularPairing):
        a2.delta_with_representatives(a, [])
