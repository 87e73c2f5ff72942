"""Built-in example algebras and the properties expected of them."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .algebra import FiniteDimAlgebra, QuiverPresentation, from_quiver, _raw
from .exactfield import FieldDescriptor, Q


def _nonzero(F: FieldDescriptor, x, what: str):
    r = _raw(F, x)
    if r == 0:
        raise ValueError(f"{what} must be nonzero in {F}")
    return r


def a_lambda(field: FieldDescriptor, lam) -> FiniteDimAlgebra:
    """k<X,Y>/(X^2, Y^2, XY - lam*YX), basis {e, X, Y, XY}."""
    lam = _nonzero(field, lam, "lambda")
    P = QuiverPresentation.build(
        field, ["1"], [("X", "1", "1"), ("Y", "1", "1")],
        [[(1, "X*X")], [(1, "Y*Y")], [(1, "X*Y"), (field.neg(lam), "Y*X")]], 3)
    return from_quiver(P)


def qci(field: FieldDescriptor, n: int, a: Sequence[int], q) -> FiniteDimAlgebra:
    """Quantum complete intersection k<X_1..X_n>/(X_i^{a_i+1}, X_i X_j - q_ij X_j X_i).

    ``q`` is an n x n matrix, or a dict {(i, j): q_ij} for i < j (0-based)."""
    if len(a) != n or any(ai < 1 for ai in a):
        raise ValueError("exponents must be n integers >= 1")
    if isinstance(q, dict):
        Qm = [[1] * n for _ in range(n)]
        for (i, j), x in q.items():
            r = _nonzero(field, x, "q_ij")
            Qm[i][j] = r
            Qm[j][i] = field.inv(r)
    else:
        Qm = [[_raw(field, x) for x in row] for row in q]
    for i in range(n):
        if Qm[i][i] != 1:
            raise ValueError("q_ii must be 1")
        for j in range(n):
            if Qm[i][j] == 0 or field.mul(Qm[i][j], Qm[j][i]) != 1:
                raise ValueError("q_ij q_ji must be 1")
    names = [f"X{i + 1}" for i in range(n)]
    rels = [[(1, "*".join([names[i]] * (a[i] + 1)))] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append([(1, f"{names[i]}*{names[j]}"), (field.neg(Qm[i][j]), f"{names[j]}*{names[i]}")])
    bound = max(sum(a) + 1, max(ai + 1 for ai in a), 2)
    P = QuiverPresentation.build(field, ["1"], [(x, "1", "1") for x in names], rels, bound)
    return from_quiver(P)


def qci_nakayama_scalars(field: FieldDescriptor, n: int, a: Sequence[int], q) -> list:
    """The expected diagonal action on generators: N(X_i) = (prod_j q_ij^{a_j}) X_i."""
    if isinstance(q, dict):
        Qm = [[1] * n for _ in range(n)]
        for (i, j), x in q.items():
            r = _raw(field, x)
            Qm[i][j] = r
            Qm[j][i] = field.inv(r)
    else:
        Qm = [[_raw(field, x) for x in row] for row in q]
    out = []
    for i in range(n):
        s = 1
        for j in range(n):
            s = field.mul(s, field.pow(Qm[i][j], a[j]))
        out.append(s)
    return out


def nakayama_cycle_algebra(field: FieldDescriptor) -> FiniteDimAlgebra:
    """Two vertices, alpha: 1->2, beta: 2->1, with alpha beta alpha beta = beta alpha beta alpha = 0."""
    P = QuiverPresentation.build(
        field, ["1", "2"], [("alpha", "1", "2"), ("beta", "2", "1")],
        [[(1, "alpha*beta*alpha*beta")], [(1, "beta*alpha*beta*alpha")]], 4)
    return from_quiver(P)


def omega(field: FieldDescriptor, n: int) -> FiniteDimAlgebra:
    """The self-injective algebra with a loop alpha and an n-cycle beta_1..beta_n, n in {1, 2}."""
    if n not in (1, 2):
        raise ValueError("omega is only provided for n = 1, 2")
    verts = [str(v) for v in range(n)]
    betas = [f"beta{i + 1}" for i in range(n)]
    arrows = [("alpha", "0", "0")] + [(betas[i], verts[i], verts[(i + 1) % n]) for i in range(n)]
    cycle = "*".join(betas)
    rels = [
        [(1, "alpha*alpha"), (-1, f"alpha*{cycle}")],
        [(1, f"alpha*{cycle}"), (1, f"{cycle}*alpha")],
        [(1, f"{betas[-1]}*{betas[0]}")],
    ]
    # at the other vertices the path beta_j..beta_n alpha beta_1..beta_j vanishes
    for j in range(2, n + 1):
        word = betas[j - 1:] + ["alpha"] + betas[:j]
        rels.append([(1, "*".join(word))])
    P = QuiverPresentation.build(field, verts, arrows, rels, n + 2)
    return from_quiver(P)


def truncated_polynomial(field: FieldDescriptor, n: int) -> FiniteDimAlgebra:
    """k[x]/(x^n) as a one-loop quiver."""
    if n < 2:
        raise ValueError("n must be at least 2")
    P = QuiverPresentation.build(field, ["1"], [("x", "1", "1")], [[(1, "*".join(["x"] * n))]], n)
    return from_quiver(P)


def a_lambda_descent(field: FieldDescriptor) -> FiniteDimAlgebra:
    """A form of A(i), i^2 = -1, defined over any field of odd characteristic.

    With U = X + Y and V = i(X - Y) the relations of A(i) become
    U^2 = V^2, UV = -VU, UV = U^2; the Nakayama automorphism swaps U and V
    up to sign, so its eigenvalues i, -i need not lie in the base field."""
    if field.characteristic == 2:
        raise ValueError("needs odd characteristic")
    P = QuiverPresentation.build(
        field, ["1"], [("U", "1", "1"), ("V", "1", "1")],
        [[(1, "U*U"), (-1, "V*V")], [(1, "U*V"), (1, "V*U")], [(1, "U*V"), (-1, "U*U")]], 3)
    return from_quiver(P)


# -- descriptors --

@dataclass
class ExampleDescriptor:
    name: str
    build: Callable[..., FiniteDimAlgebra]
    params: dict
    field_constraint: str
    expected: dict = dc_field(default_factory=dict)  # property -> (value, STATED | COMPUTED | TRIVIAL)

    def construct(self, field: FieldDescriptor, **overrides) -> FiniteDimAlgebra:
        kw = dict(self.params)
        kw.update(overrides)
        return self.build(field, **kw)


CATALOG: dict[str, ExampleDescriptor] = {
    "a_lambda": ExampleDescriptor(
        "a_lambda", a_lambda, {"lam": 2}, "lambda nonzero",
        {"dim": (4, "STATED"), "frobenius": (True, "STATED"),
         "nakayama_multiset": (("1", "1", "lam", "1/lam"), "STATED"), "criterion": (True, "COMPUTED")}),
    "qci": ExampleDescriptor(
        "qci", qci, {"n": 2, "a": (2, 1), "q": {(0, 1): 3}}, "q_ij nonzero",
        {"dim": ("prod(a_i + 1)", "STATED"), "frobenius": (True, "STATED"),
         "nakayama": ("N(X_i) = prod_j q_ij^a_j X_i", "STATED")}),
    "nakayama_cycle_algebra": ExampleDescriptor(
        "nakayama_cycle_algebra", nakayama_cycle_algebra, {}, "any",
        {"dim": (8, "COMPUTED"), "semisimple_char2": (False, "STATED"), "semisimple_odd": (True, "COMPUTED")}),
    "omega": ExampleDescriptor(
        "omega", omega, {"n": 1}, "n in {1, 2}",
        {"nakayama_alpha": ("-alpha + 2 beta_1..beta_n", "STATED"), "char2_identity": (True, "STATED")}),
    "truncated_polynomial": ExampleDescriptor(
        "truncated_polynomial", truncated_polynomial, {"n": 2}, "n >= 2",
        {"symmetric": (True, "TRIVIAL")}),
    "a_lambda_descent": ExampleDescriptor(
        "a_lambda_descent", a_lambda_descent, {}, "odd characteristic",
        {"dim": (4, "COMPUTED"), "needs_extension": ("p = 3 mod 4", "COMPUTED")}),
}


def builtin(name: str, field: FieldDescriptor = Q, **params) -> FiniteDimAlgebra:
    if name not in CATALOG:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(CATALOG)}")
    return CATALOG[name].construct(field, **params)
