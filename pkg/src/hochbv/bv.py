"""Duality between twisted Hochschild homology and cohomology, and the BV operator.

Delta is defined on cohomology classes by the linear relation
    pairing(z, Delta(a)) = DELTA_SIGN * (-1)^{|a|} * pairing(beta(z), a)
for every weight-1 homology class z, solved against the (invertible)
pairing matrix one degree down.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .calculus import Calculus, Chain, Cochain
from .frobenius import FrobeniusData
from .exactfield import Polynomial
from .hochschild import twist_operator
from .linalg import Matrix, dense_inverse, evaluate_polynomial, minimal_polynomial

DELTA_SIGN = -1


class SingularPairing(ArithmeticError):
    pass


class DualityData:
    """Pairing matrices, the fundamental class and Delta up to a degree bound."""

    def __init__(self, frobenius: FrobeniusData, bound: int, delta_sign: int = DELTA_SIGN):
        if not frobenius.diagonalizable:
            raise ValueError("Nakayama automorphism must be diagonalizable over the field")
        self.frobenius = frobenius
        self.field = frobenius.field
        self.bound = bound
        self.delta_sign = delta_sign
        self.calc = Calculus(frobenius.algebra, bound, frobenius, twisted=True)
        self._P: dict = {}
        self._Pinv: dict = {}

    @property
    def max_degree(self) -> int:
        """Largest degree with both homology and cohomology available."""
        return self.bound - 1

    # -- pairing --

    def pairing_matrix(self, n: int) -> list:
        if n in self._P:
            return self._P[n]
        K = self.calc
        zs = K.homology_generators(n)
        als = K.cohomology_generators(n)
        P = [[K.pairing(z, a) for a in als] for z in zs]
        self._P[n] = P
        return P

    def is_perfect(self, n: int) -> bool:
        P = self.pairing_matrix(n)
        if not P:
            return len(self.calc.cohomology_generators(n)) == 0
        return len(P) == len(P[0]) and dense_inverse(self.field, P) is not None

    def _inverse(self, n: int) -> list:
        if n not in self._Pinv:
            P = self.pairing_matrix(n)
            if not P:
                if self.calc.cohomology_generators(n):
                    raise SingularPairing(f"pairing at degree {n} is not square")
                self._Pinv[n] = []
            else:
                inv = dense_inverse(self.field, P) if len(P) == len(P[0]) else None
                if inv is None:
                    raise SingularPairing(f"pairing matrix at degree {n} is singular")
                self._Pinv[n] = inv
        return self._Pinv[n]

    def chain_pairing_matrix(self, p: int) -> Matrix:
        """The pairing on basis tensors: rows index C_p(A, A_N), columns C^p(A, A)."""
        F = self.field
        G = self.frobenius.gram
        K = self.calc
        np_ = K.n ** p
        d = K.d
        neg = p % 2 == 1
        cols = {}
        for e in range(d):
            for t in range(np_):
                col = {}
                for m in range(d):
                    x = G[m][e]
                    if x != 0:
                        col[m * np_ + t] = F.neg(x) if neg else x
                cols[e * np_ + t] = col
        return Matrix(F, d * np_, d * np_, cols)

    def adjointness_sign(self, p: int):
        """s with pairing(b z, a) = s * pairing(z, d a) for all z in C_{p+1}, a in C^p; None if neither sign works."""
        K = self.calc
        lhs = K.chains.differential(p + 1).T @ self.chain_pairing_matrix(p)
        rhs = self.chain_pairing_matrix(p + 1) @ K.cochains.differential(p)
        if lhs == rhs:
            return 1
        if lhs == -rhs:
            return -1
        return None

    def fundamental_class(self) -> list:
        """Coordinates of the functional <-, 1> on HH_0 in the dual of the homology basis."""
        K = self.calc
        one = K.unit_cochain()
        return [K.pairing(z, one) for z in K.homology_generators(0)]

    # -- Delta --

    def delta(self, alpha: Cochain) -> Cochain:
        F = self.field
        K = self.calc
        n = alpha.degree
        if n == 0:
            return Cochain(-1, {})
        if n > self.max_degree:
            raise ValueError(f"Delta at degree {n} needs degrees up to {n} (bound {self.bound})")
        zs = K.homology_generators(n - 1)
        sgn = _delta_factor(F, self.delta_sign, n)
        rhs = [F.mul(sgn, K.pairing(K.B(z), alpha)) for z in zs]
        inv = self._inverse(n - 1)
        gens = K.cohomology_generators(n - 1)
        out = Cochain(n - 1, {})
        for j, g in enumerate(gens):
            c = 0
            for i, r in enumerate(rhs):
                if r != 0 and inv[j][i] != 0:
                    c = F.add(c, F.mul(inv[j][i], r))
            if c != 0:
                out = K.add(out, g, c)
        return out

    def delta_with_representatives(self, alpha: Cochain, reps: list) -> Cochain:
        """Delta solved against an arbitrary list of homology representatives in degree n-1."""
        F = self.field
        K = self.calc
        n = alpha.degree
        gens = K.cohomology_generators(n - 1)
        P = [[K.pairing(z, g) for g in gens] for z in reps]
        inv = dense_inverse(F, P) if P and len(P) == len(P[0]) else ([] if not P and not gens else None)
        if inv is None:
            raise SingularPairing(f"pairing against the given representatives is singular at {n - 1}")
        sgn = _delta_factor(F, self.delta_sign, n)
        rhs = [F.mul(sgn, K.pairing(K.B(z), alpha)) for z in reps]
        out = Cochain(n - 1, {})
        for j, g in enumerate(gens):
            c = 0
            for i, r in enumerate(rhs):
                c = F.add(c, F.mul(inv[j][i], r))
            if c != 0:
                out = K.add(out, g, c)
        return out

    def projected_representatives(self, r: int) -> list:
        """Representatives of the full twisted homology pushed into weight 1.

        The projector onto the T-eigenvalue 1 is a polynomial in T; since the
        other weights are acyclic it induces the identity on homology."""
        F = self.field
        K = self.calc
        C = K.chains
        T = twist_operator(C, r)
        mp = minimal_polynomial(T)
        x_minus_1 = Polynomial(F, (F.neg(1), 1))
        q, rem = divmod(mp, x_minus_1)
        if not rem.is_zero():
            proj = None  # 1 is not an eigenvalue: homology must vanish
        else:
            at_one = 0
            for c in q.coeffs:
                at_one = F.add(at_one, c)
            proj = evaluate_polynomial(q, T).scaled(F.inv(at_one))
        full = C.homology(r)
        if proj is None:
            if full.dim:
                raise ArithmeticError("homology without a weight-1 part")
            return []
        return [Chain(r, proj.apply(v)) for v in full.representatives]

    def delta_matrix(self, n: int) -> list:
        """Delta: HH^n -> HH^{n-1} in the representative bases (columns = images)."""
        K = self.calc
        H = K.cohomology(n - 1)
        return [H.coordinates(self.delta(a).coeffs) for a in K.cohomology_generators(n)]

    def is_zero_class(self, c: Cochain) -> bool:
        if c.degree < 0:
            return not c.coeffs
        return self.calc.cohomology(c.degree).is_zero(c.coeffs)

    def bv_defect(self, alpha: Cochain, beta: Cochain) -> Cochain:
        """[a,b] - (-1)^{|a|+1} (D(a b) - D(a) b - (-1)^{|a|} a D(b))."""
        F = self.field
        K = self.calc
        p, q = alpha.degree, beta.degree
        if p + q > self.max_degree:
            raise ValueError("degree overflow: the product lies beyond the computed range")
        neg = F.neg(1)
        inner = self.delta(K.cup(alpha, beta))
        t2 = K.cup(self.delta(alpha), beta)
        t3 = K.cup(alpha, self.delta(beta))
        deg = p + q - 1
        inner = _fit(inner, deg)
        inner = K.add(inner, _fit(t2, deg), neg)
        inner = K.add(inner, _fit(t3, deg), neg if p % 2 == 0 else 1)
        outer = 1 if (p + 1) % 2 == 0 else neg
        return K.add(_fit(K.bracket(alpha, beta), deg), inner, F.neg(outer))

    # -- Ginzburg relation --

    def ginzburg_check(self, max_total: Optional[int] = None) -> dict:
        """pairing(t cap a, b) == pairing(t, a cup b) over class bases."""
        K = self.calc
        top = self.max_degree if max_total is None else min(max_total, self.max_degree)
        checked = failed = 0
        for total in range(top + 1):
            ts = K.homology_generators(total)
            for p in range(total + 1):
                q = total - p
                for a in K.cohomology_generators(p):
                    for b in K.cohomology_generators(q):
                        ab = K.cup(a, b)
                        for t in ts:
                            checked += 1
                            if K.pairing(K.cap(t, a), b) != K.pairing(t, ab):
                                failed += 1
        return {"checked": checked, "failed": failed}


def _delta_factor(F, sign: int, n: int):
    """DELTA_SIGN * (-1)^n as a field element."""
    return 1 if (sign == 1) == (n % 2 == 0) else F.neg(1)


def _fit(c: Cochain, deg: int) -> Cochain:
    """Zero cochains from degenerate degrees are re-labelled to the expected degree."""
    if c.degree == deg:
        return c
    if c.coeffs:
        raise ValueError(f"degree mismatch {c.degree} vs {deg}")
    return Cochain(deg, {})


@dataclass
class BVReport:
    delta_unit_zero: bool
    delta_squared_zero: dict = dc_field(default_factory=dict)  # degree -> bool
    defects: dict = dc_field(default_factory=dict)  # (p, i, q, j) -> "pass" | "fail" | "not checked"
    perfect: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.delta_unit_zero and all(self.delta_squared_zero.values()) and all(self.perfect.values())
                and all(v != "fail" for v in self.defects.values()))


def verify_bv(D: DualityData, max_total: int) -> BVReport:
    """Delta(1) = 0, Delta^2 = 0 and zero BV defect on generator pairs with |a|+|b| <= max_total."""
    K = D.calc
    perfect = {n: D.is_perfect(n) for n in range(D.max_degree + 1)}
    rep = BVReport(D.is_zero_class(D.delta(K.unit_cochain())), perfect=perfect)
    for n in range(2, D.max_degree + 1):
        rep.delta_squared_zero[n] = all(D.is_zero_class(D.delta(D.delta(a))) for a in K.cohomology_generators(n))
    top = min(max_total, D.max_degree)
    for p in range(top + 1):
        for q in range(min(max_total - p, top) + 1):
            for i, a in enumerate(K.cohomology_generators(p)):
                for j, b in enumerate(K.cohomology_generators(q)):
                    key = (p, i, q, j)
                    if p + q > D.max_degree:
                        rep.defects[key] = "not checked"
                        continue
                    rep.defects[key] = "pass" if D.is_zero_class(D.bv_defect(a, b)) else "fail"
    return rep


def delta_via_plain_B(frobenius: FrobeniusData, bound: int, n: int) -> list:
    """Delta built from the untwisted chain complex and Connes' B (symmetric algebras only)."""
    if not frobenius.is_symmetric:
        raise ValueError("only meaningful for symmetric algebras")
    K = Calculus(frobenius.algebra, bound, frobenius, twisted=False)
    F = frobenius.field
    zs = K.homology_generators(n - 1)
    P = [[K.pairing(z, a) for a in K.cohomology_generators(n - 1)] for z in zs]
    inv = dense_inverse(F, P)
    if inv is None:
        raise SingularPairing("pairing is singular")
    sgn = _delta_factor(F, DELTA_SIGN, n)
    out = []
    H = K.cohomology(n - 1)
    gens = K.cohomology_generators(n - 1)
    for a in K.cohomology_generators(n):
        rhs = [F.mul(sgn, K.pairing(K.B(z), a)) for z in zs]
        res = Cochain(n - 1, {})
        for j, g in enumerate(gens):
            c = 0
            for i, r in enumerate(rhs):
                c = F.add(c, F.mul(inv[j][i], r))
            res = K.add(res, g, c)
        out.append(H.coordinates(res.coeffs))
    return out
