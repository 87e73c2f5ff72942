"""Chain-level calculus operations on the normalized bar complexes.

Cochains and chains carry their degree and a sparse coordinate vector in
the bases of :mod:`hochbv.hochschild`.  Class-level statements are always
"the difference reduces to zero modulo (co)boundaries".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import FiniteDimAlgebra
from .frobenius import FrobeniusData
from .hochschild import (HomologyBasis, TruncatedComplex, _digits, _undigits, chain_complex, chain_complex_twisted,
                         cochain_complex, twisted_connes_beta, weight_one_homology)
from .linalg import axpy, scale


@dataclass(frozen=True)
class Cochain:
    degree: int
    coeffs: dict  # index e * n^p + t -> raw


@dataclass(frozen=True)
class Chain:
    degree: int
    coeffs: dict


class Calculus:
    """Cup, insertion, bracket, cap, contraction and Lie derivative on one algebra.

    ``twist`` (the Nakayama matrix) selects twisted chain coefficients; the
    cochains are always C*(A, A)."""

    def __init__(self, A: FiniteDimAlgebra, bound: int, frobenius: Optional[FrobeniusData] = None,
                 twisted: bool = False):
        self.algebra = A
        self.field = A.field
        self.bound = bound
        self.frobenius = frobenius
        self.cochains = cochain_complex(A, bound)
        if twisted:
            if frobenius is None:
                raise ValueError("twisted chains need Frobenius data")
            self.chains = chain_complex_twisted(A, frobenius.nakayama, bound)
        else:
            self.chains = chain_complex(A, bound)
        self.slots = self.cochains.slots
        self.n = self.slots.dim
        self.d = A.dim
        self._lift_vec = [{self.slots.lift(s): 1} for s in range(self.n)]
        self._beta: dict = {}

    # -- arithmetic --

    def add(self, x, y, c=1):
        """x + c*y for chains or cochains of equal degree."""
        if x.degree != y.degree:
            raise ValueError("degree mismatch")
        return type(x)(x.degree, axpy(self.field, dict(x.coeffs), c, y.coeffs))

    def sub(self, x, y):
        return self.add(x, y, self.field.neg(1))

    def scaled(self, c, x):
        return type(x)(x.degree, scale(self.field, c, x.coeffs))

    def zero_cochain(self, p) -> Cochain:
        return Cochain(p, {})

    def unit_cochain(self) -> Cochain:
        return Cochain(0, dict(self.algebra.unit))

    # -- cochain tables --

    def _table(self, alpha: Cochain) -> dict:
        """t -> A-vector, the values of the cochain on slot tensors."""
        np_ = self.n ** alpha.degree
        out: dict = {}
        for idx, x in alpha.coeffs.items():
            e, t = divmod(idx, np_)
            out.setdefault(t, {})[e] = x
        return out

    def _from_table(self, p: int, table: dict) -> Cochain:
        np_ = self.n ** p
        out = {}
        for t, v in table.items():
            for e, x in v.items():
                if x != 0:
                    out[e * np_ + t] = x
        return Cochain(p, out)

    def evaluate(self, alpha: Cochain, t: int) -> dict:
        np_ = self.n ** alpha.degree
        return {e: alpha.coeffs[e * np_ + t] for e in range(self.d) if e * np_ + t in alpha.coeffs}

    # -- products --

    def cup(self, alpha: Cochain, beta: Cochain) -> Cochain:
        """(a cup b)(t1, t2) = (-1)^{pq} a(t1) b(t2)."""
        F, A = self.field, self.algebra
        p, q = alpha.degree, beta.degree
        if p < 0 or q < 0:
            return Cochain(p + q, {})
        nq = self.n ** q
        sign = F.neg(1) if (p * q) % 2 else 1
        ta, tb = self._table(alpha), self._table(beta)
        out: dict = {}
        for t1, v1 in ta.items():
            for t2, v2 in tb.items():
                prod = A.multiply(v1, v2)
                if prod:
                    out[t1 * nq + t2] = scale(F, sign, prod)
        return self._from_table(p + q, out)

    def circle_i(self, alpha: Cochain, beta: Cochain, i: int) -> Cochain:
        """Insert the class of beta(...) in slot i of alpha (1-based)."""
        F = self.field
        n_, m = alpha.degree, beta.degree
        if n_ == 0:
            return Cochain(max(m - 1, 0), {})
        if not 1 <= i <= n_:
            raise ValueError("insertion slot out of range")
        n = self.n
        ta, tb = self._table(alpha), self._table(beta)
        proj = self.slots.project
        # index alpha's support by the slot-i letter
        by_letter: dict = {}
        for ta_t, v in ta.items():
            ds = _digits(ta_t, n, n_)
            by_letter.setdefault(ds[i - 1], []).append((ds, v))
        out: dict = {}
        for tb_t, bv in tb.items():
            pv = proj(bv)
            if not pv:
                continue
            bds = _digits(tb_t, n, m)
            for k, c in pv.items():
                for ds, v in by_letter.get(k, ()):
                    key = _undigits(ds[:i - 1] + bds + ds[i:], n)
                    axpy(F, out.setdefault(key, {}), c, v)
        return self._from_table(n_ + m - 1, {t: v for t, v in out.items() if v})

    def circle(self, alpha: Cochain, beta: Cochain) -> Cochain:
        F = self.field
        n_, m = alpha.degree, beta.degree
        res = Cochain(max(n_ + m - 1, 0), {})
        for i in range(1, n_ + 1):
            sign = F.neg(1) if ((m - 1) * (i - 1)) % 2 else 1
            res = self.add(res, self.circle_i(alpha, beta, i), sign)
        return res

    def bracket(self, alpha: Cochain, beta: Cochain) -> Cochain:
        F = self.field
        n_, m = alpha.degree, beta.degree
        deg = n_ + m - 1
        if deg < 0:
            return Cochain(deg, {})
        a = self.circle(alpha, beta) if n_ >= 1 else Cochain(deg, {})
        b = self.circle(beta, alpha) if m >= 1 else Cochain(deg, {})
        sign = F.neg(1) if ((n_ - 1) * (m - 1)) % 2 == 0 else 1
        return self.add(a, b, sign)

    # -- actions on chains --

    def cap(self, z: Chain, alpha: Cochain) -> Chain:
        """z cap a = (-1)^{rp} (m a(s_1..s_p)) (x) s_{p+1}..s_r."""
        F = self.field
        r, p = z.degree, alpha.degree
        if p > r:
            raise ValueError("cap product degree underflow")
        sign = F.neg(1) if (r * p) % 2 else 1
        return self._contract(z, alpha, sign)

    def iota(self, alpha: Cochain, z: Chain) -> Chain:
        """iota_a(z) = (m a(s_1..s_p)) (x) s_{p+1}..s_r, no sign."""
        if alpha.degree > z.degree:
            return Chain(z.degree - alpha.degree, {})
        return self._contract(z, alpha, 1)

    def _contract(self, z: Chain, alpha: Cochain, sign) -> Chain:
        F, A = self.field, self.algebra
        r, p = z.degree, alpha.degree
        n = self.n
        nr, nrest = n ** r, n ** (r - p)
        ta = self._table(alpha)
        out: dict = {}
        for idx, x in z.coeffs.items():
            m, t = divmod(idx, nr)
            head, rest = divmod(t, nrest)
            v = ta.get(head)
            if not v:
                continue
            prod = A.multiply({m: x}, v)
            for m2, y in prod.items():
                axpy(F, out, sign, {m2 * nrest + rest: y})
        return Chain(r - p, out)

    def B(self, z: Chain) -> Chain:
        r = z.degree
        if r < 0:
            return Chain(r + 1, {})
        if r not in self._beta:
            self._beta[r] = twisted_connes_beta(self.chains, r)
        return Chain(r + 1, self._beta[r].apply(z.coeffs))

    def lie_derivative(self, alpha: Cochain, z: Chain) -> Chain:
        """L_a = B iota_a - (-1)^{|a|} iota_a B."""
        F = self.field
        p, r = alpha.degree, z.degree
        first = self.B(self.iota(alpha, z)) if r >= p else Chain(r - p + 1, {})
        second = self.iota(alpha, self.B(z)) if r + 1 >= p else Chain(r - p + 1, {})
        return self.add(first, second, 1 if p % 2 else F.neg(1))

    # -- differentials on vectors --

    def coboundary(self, alpha: Cochain) -> Cochain:
        return Cochain(alpha.degree + 1, self.cochains.differential(alpha.degree).apply(alpha.coeffs))

    def boundary(self, z: Chain) -> Chain:
        if z.degree == 0:
            return Chain(-1, {})
        return Chain(z.degree - 1, self.chains.differential(z.degree).apply(z.coeffs))

    # -- pairing --

    def pairing(self, z: Chain, alpha: Cochain):
        """<m (x) t, a> = (-1)^p f(m a(t))."""
        if self.frobenius is None:
            raise ValueError("pairing needs Frobenius data")
        if z.degree != alpha.degree:
            raise ValueError("degree mismatch")
        F = self.field
        G = self.frobenius.gram
        p = z.degree
        np_ = self.n ** p
        s = 0
        for idx, x in z.coeffs.items():
            m, t = divmod(idx, np_)
            Gm = G[m]
            for e in range(self.d):
                y = alpha.coeffs.get(e * np_ + t)
                if y and Gm[e]:
                    s = F.add(s, F.mul(F.mul(x, y), Gm[e]))
        return F.neg(s) if p % 2 else s

    # -- classes --

    def cohomology(self, p: int) -> HomologyBasis:
        return self.cochains.homology(p)

    def homology(self, r: int) -> HomologyBasis:
        return weight_one_homology(self.chains, r)

    def cohomology_generators(self, p: int) -> list[Cochain]:
        return [Cochain(p, dict(v)) for v in self.cohomology(p).representatives]

    def homology_generators(self, r: int) -> list[Chain]:
        return [Chain(r, dict(v)) for v in self.homology(r).representatives]


def reduce_to_class(v: dict, H: HomologyBasis) -> list:
    """Coordinates of the class of the (co)cycle v in H's representatives."""
    return H.coordinates(v)


@dataclass
class CohomologyClass:
    representative: Cochain
    basis: HomologyBasis

    def __post_init__(self):
        if self.representative.degree != self.basis.degree:
            raise ValueError("degree mismatch")
        if not self.basis.cycles.contains(self.representative.coeffs):
            raise ValueError("representative is not a cocycle")

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def coordinates(self) -> list:
        return self.basis.coordinates(self.representative.coeffs)

    def __eq__(self, other):
        return isinstance(other, CohomologyClass) and self.degree == other.degree and self.coordinates == other.coordinates


@dataclass
class HomologyClass:
    representative: Chain
    basis: HomologyBasis

    def __post_init__(self):
        if self.representative.degree != self.basis.degree:
            raise ValueError("degree mismatch")
        if not self.basis.cycles.contains(self.representative.coeffs):
            raise ValueError("representative is not a cycle")

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def coordinates(self) -> list:
        return self.basis.coordinates(self.representative.coeffs)

    def __eq__(self, other):
        return isinstance(other, HomologyClass) and self.degree == other.degree and self.coordinates == other.coordinates


# -- class-level identities --

def _sign(F, e: int):
    return F.neg(1) if e % 2 else 1


def _zero_cochain_class(K: Calculus, c: Cochain) -> bool:
    if c.degree < 0:
        return not c.coeffs
    return K.cohomology(c.degree).is_zero(c.coeffs)


def _zero_chain_class(K: Calculus, z: Chain) -> bool:
    if z.degree < 0:
        return not z.coeffs
    return K.homology(z.degree).is_zero(z.coeffs)


def commutativity_defect(K: Calculus, a: Cochain, b: Cochain) -> Cochain:
    """a cup b - (-1)^{pq} b cup a."""
    return K.add(K.cup(a, b), K.cup(b, a), K.field.neg(_sign(K.field, a.degree * b.degree)))


def antisymmetry_defect(K: Calculus, a: Cochain, b: Cochain) -> Cochain:
    """[a,b] + (-1)^{(p-1)(q-1)} [b,a]."""
    return K.add(K.bracket(a, b), K.bracket(b, a), _sign(K.field, (a.degree - 1) * (b.degree - 1)))


def leibniz_defect(K: Calculus, a: Cochain, b: Cochain, c: Cochain) -> Cochain:
    """[a, b cup c] - [a,b] cup c - (-1)^{(p-1)q} b cup [a,c]."""
    F = K.field
    p, q = a.degree, b.degree
    lhs = K.bracket(a, K.cup(b, c))
    rhs = K.add(K.cup(K.bracket(a, b), c), K.cup(b, K.bracket(a, c)), _sign(F, (p - 1) * q))
    return K.sub(lhs, _regrade(rhs, lhs.degree))


def jacobi_defect(K: Calculus, a: Cochain, b: Cochain, c: Cochain) -> Cochain:
    """Graded cyclic sum (-1)^{(p-1)(r-1)}[a,[b,c]] + cyclic."""
    F = K.field
    p, q, r = a.degree, b.degree, c.degree
    t1 = K.scaled(_sign(F, (p - 1) * (r - 1)), K.bracket(a, K.bracket(b, c)))
    t2 = K.scaled(_sign(F, (q - 1) * (p - 1)), K.bracket(b, K.bracket(c, a)))
    t3 = K.scaled(_sign(F, (r - 1) * (q - 1)), K.bracket(c, K.bracket(a, b)))
    deg = p + q + r - 2
    return K.add(K.add(_regrade(t1, deg), _regrade(t2, deg)), _regrade(t3, deg))


def iota_cup_defect(K: Calculus, a: Cochain, b: Cochain, z: Chain) -> Chain:
    """iota_{a cup b} z - iota_a iota_b z."""
    return K.sub(K.iota(K.cup(a, b), z), K.iota(a, K.iota(b, z)))


def tamarkin_tsygan_defect(K: Calculus, a: Cochain, b: Cochain, z: Chain) -> Chain:
    """iota_{[a,b]} z - ((-1)^{(p-1)q} L_a iota_b z - iota_b L_a z).

    With cup, bracket, iota and L_a = B iota_a - (-1)^p iota_a B as defined
    here the relation holds in this form, i.e. iota_{[a,b]} = -[iota_b, L_a]."""
    F = K.field
    p, q = a.degree, b.degree
    rhs = K.add(K.scaled(_sign(F, (p - 1) * q), K.lie_derivative(a, K.iota(b, z))),
                K.iota(b, K.lie_derivative(a, z)), F.neg(1))
    lhs = K.iota(K.bracket(a, b), z)
    return K.sub(_regrade(lhs, rhs.degree), rhs)


def _regrade(x, deg):
    """Zero elements built in degenerate degrees are relabelled to ``deg``."""
    if x.degree == deg:
        return x
    if x.coeffs:
        raise ValueError(f"degree mismatch {x.degree} vs {deg}")
    return type(x)(deg, {})


def verify_calculus(K: Calculus, max_total: int) -> dict:
    """Check every calculus identity on class generators; name -> {"checked", "failed"}.

    Cochain identities use total degree <= max_total; chain identities use
    homology degrees <= max_total that still leave room for B."""
    out = {k: {"checked": 0, "failed": 0} for k in
           ("commutativity", "antisymmetry", "leibniz", "jacobi", "iota_cup", "tamarkin_tsygan")}

    def tally(name, ok):
        out[name]["checked"] += 1
        if not ok:
            out[name]["failed"] += 1

    gens = [g for p in range(max_total + 1) for g in K.cohomology_generators(p)]
    for a in gens:
        for b in gens:
            p, q = a.degree, b.degree
            if p + q <= max_total:
                tally("commutativity", _zero_cochain_class(K, commutativity_defect(K, a, b)))
            if 1 <= p + q <= max_total + 1:
                tally("antisymmetry", _zero_cochain_class(K, antisymmetry_defect(K, a, b)))
            for c in gens:
                r = c.degree
                if 0 <= p + q + r - 1 <= max_total:
                    tally("leibniz", _zero_cochain_class(K, leibniz_defect(K, a, b, c)))
                if min(p, q, r) >= 1 and p + q + r - 2 <= max_total:
                    tally("jacobi", _zero_cochain_class(K, jacobi_defect(K, a, b, c)))
    top = min(max_total, K.bound - 2)
    chains = {r: K.homology_generators(r) for r in range(top + 1)}
    for a in gens:
        for b in gens:
            p, q = a.degree, b.degree
            for r, zs in chains.items():
                for z in zs:
                    if p + q <= r:
                        tally("iota_cup", _zero_chain_class(K, iota_cup_defect(K, a, b, z)))
                    if p + q >= 1 and r - p - q + 1 >= 0:
                        tally("tamarkin_tsygan", _zero_chain_class(K, tamarkin_tsygan_defect(K, a, b, z)))
    return out
