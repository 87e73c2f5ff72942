import pytest

from hochbv.catalog import CATALOG, a_lambda, a_lambda_descent, builtin, omega, qci, truncated_polynomial
from hochbv.exactfield import GF, Q
from hochbv.frobenius import frobenius_data


@pytest.mark.parametrize("lam", [2, 3, -1])
def test_qci_equals_a_lambda(lam):
    assert qci(Q, 2, (1, 1), {(0, 1): lam}).table == a_lambda(Q, lam).table


def test_a_lambda_zero_rejected():
    with pytest.raises(ValueError):
        a_lambda(Q, 0)


def test_a_lambda_one_symmetric():
    assert frobenius_data(a_lambda(Q, 1)).is_symmetric


def test_qci_constraints():
    with pytest.raises(ValueError):
        qci(Q, 2, (0, 1), {(0, 1): 2})
    with pytest.raises(ValueError):
        qci(Q, 2, (1, 1), [[1, 2], [2, 1]])


def test_dimensions():
    assert a_lambda(Q, 5).dim == 4
    assert qci(Q, 2, (2, 1), {(0, 1): 3}).dim == 6
    assert omega(Q, 1).dim == 4
    assert omega(Q, 2).dim == 10
    assert truncated_polynomial(Q, 4).dim == 4
    assert a_lambda_descent(GF(3)).dim == 4


def test_omega_range():
    with pytest.raises(ValueError):
        omega(Q, 3)


def test_descent_needs_odd_characteristic():
    with pytest.raises(ValueError):
        a_lambda_descent(GF(2))


def test_builtin_lookup():
    assert builtin("a_lambda", Q, lam=3).table == a_lambda(Q, 3).table
    with pytest.raises(KeyError):
        builtin("nope")


def test_every_expectation_is_tagged():
    for desc in CATALOG.values():
        for value, tag in desc.expected.values():
            assert tag in ("STATED", "COMPUTED", "TRIVIAL")


def test_descriptor_dimensions_rederived():
    for name, desc in CATALOG.items():
        exp = desc.expected.get("dim")
        if exp and isinstance(exp[0], int):
            F = GF(3) if name == "a_lambda_descent" else Q
            assert desc.construct(F).dim == exp[0], name


def test_truncated_polynomial_symmetric():
    for n in (2, 3, 4):
        assert frobenius_data(truncated_polynomial(Q, n)).is_symmetric
