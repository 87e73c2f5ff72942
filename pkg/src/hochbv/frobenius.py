"""Frobenius forms, the Nakayama automorphism and the path-basis criterion.

Convention: ``f(a*y) = f(y*N(a))`` for all a, y.  With ``G[i][j] = f(b_i b_j)``
this forces ``G N = G^T``, so ``N = G^{-1} G^T`` (columns are images).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import FiniteDimAlgebra, base_change, socle_right
from .exactfield import FieldDescriptor, FieldElement, embed, splitting_extension
from .linalg import Matrix, Subspace, dense_inverse, eigenspace, kernel, operator_classification, rank


class NotFrobenius(ValueError):
    def __init__(self, radical: Subspace):
        self.radical = radical
        super().__init__(f"not Frobenius: the form has a {radical.dim}-dimensional radical")


class NakayamaVerificationError(RuntimeError):
    pass


class ExtensionRequired(ValueError):
    """Nakayama eigenvalues lie outside the base field and no finite extension is available."""


class CriterionFailure(ValueError):
    pass


@dataclass
class FrobeniusData:
    algebra: FiniteDimAlgebra
    functional: dict  # basis index -> raw scalar
    gram: list  # raw dense matrix
    nakayama: Matrix
    classification: dict
    eigenspaces: dict = dc_field(default_factory=dict)  # raw eigenvalue -> Subspace

    @property
    def field(self) -> FieldDescriptor:
        return self.algebra.field

    @property
    def semisimple(self) -> bool:
        return self.classification["semisimple"]

    @property
    def diagonalizable(self) -> bool:
        return self.classification["diagonalizable_over_field"]

    @property
    def spectrum(self) -> list[FieldElement]:
        return self.classification["spectrum_in_field"]

    @property
    def eigenvalues(self) -> list:
        """Distinct eigenvalues in the field (raw), in order of first appearance."""
        out = []
        for x in self.spectrum:
            if x.raw not in out:
                out.append(x.raw)
        return out

    @property
    def is_symmetric(self) -> bool:
        return self.nakayama == Matrix.identity(self.field, self.algebra.dim)

    def form(self, x: dict, y: dict):
        """<x, y> = f(xy)."""
        return self.apply_functional(self.algebra.multiply(x, y))

    def apply_functional(self, v: dict):
        F = self.field
        s = 0
        for k, x in v.items():
            c = self.functional.get(k)
            if c:
                s = F.add(s, F.mul(c, x))
        return s

    def apply_nakayama(self, v: dict) -> dict:
        return self.nakayama.apply(v)


def socle_trace_functional(A: FiniteDimAlgebra) -> dict:
    """f(p) = 1 for basis paths lying in the right socle, 0 elsewhere."""
    if not A.is_quiver_born:
        raise ValueError("socle trace needs a path basis")
    soc = socle_right(A)
    return {i: 1 for i in range(A.dim) if soc.contains({i: 1})}


def gram_matrix(A: FiniteDimAlgebra, f: dict) -> list:
    F, d = A.field, A.dim
    G = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            s = 0
            for k, x in A.basis_product(i, j).items():
                c = f.get(k)
                if c:
                    s = F.add(s, F.mul(c, x))
            G[i][j] = s
    return G


def frobenius_from_functional(A: FiniteDimAlgebra, f: dict) -> FrobeniusData:
    F, d = A.field, A.dim
    f = {k: x for k, x in f.items() if x != 0}
    G = gram_matrix(A, f)
    Ginv = dense_inverse(F, G)
    if Ginv is None:
        Gm = Matrix.from_rows(F, d, [{j: x for j, x in enumerate(r) if x != 0} for r in G])
        raise NotFrobenius(kernel(Gm))
    cols = {}
    for j in range(d):
        col = {}
        for i in range(d):
            s = 0
            for k in range(d):
                if Ginv[i][k] != 0 and G[j][k] != 0:
                    s = F.add(s, F.mul(Ginv[i][k], G[j][k]))
            if s != 0:
                col[i] = s
        cols[j] = col
    N = Matrix(F, d, d, cols)
    _verify_nakayama(A, G, N)
    cls = operator_classification(N)
    data = FrobeniusData(A, f, G, N, cls)
    seen = set()
    for lam in cls["spectrum_in_field"]:
        if lam.raw not in seen:
            seen.add(lam.raw)
            data.eigenspaces[lam.raw] = eigenspace(N, lam)
    return data


def _verify_nakayama(A: FiniteDimAlgebra, G, N: Matrix):
    F, d = A.field, A.dim
    if N.apply(A.unit) != A.unit:
        raise NakayamaVerificationError("N(1) != 1")
    for a in range(d):
        Na = N.column(a)
        for y in range(d):
            rhs = 0
            for k, x in Na.items():
                rhs = F.add(rhs, F.mul(x, G[y][k]))
            if G[a][y] != rhs:
                raise NakayamaVerificationError(f"defining identity fails at ({a}, {y})")
    for i in range(d):
        for j in range(d):
            if N.apply(A.basis_product(i, j)) != A.multiply(N.column(i), N.column(j)):
                raise NakayamaVerificationError(f"N is not multiplicative at ({i}, {j})")


def frobenius_data(A: FiniteDimAlgebra, f: dict | None = None) -> FrobeniusData:
    return frobenius_from_functional(A, socle_trace_functional(A) if f is None else f)


@dataclass
class SplitResult:
    """Outcome of making N diagonalizable: status is one of
    ``diagonalizable``, ``extended``, ``not-semisimple``, ``extension-required``."""
    status: str
    data: FrobeniusData
    base: FrobeniusData
    note: str = ""

    @property
    def ready(self) -> bool:
        return self.status in ("diagonalizable", "extended")


def split_nakayama(A: FiniteDimAlgebra, f: dict | None = None) -> SplitResult:
    """Frobenius data over a field where N is diagonalizable, extending a finite field if needed."""
    base = frobenius_data(A, f)
    if base.diagonalizable:
        return SplitResult("diagonalizable", base, base)
    if not base.semisimple:
        return SplitResult("not-semisimple", base, base, "Nakayama automorphism is not semisimple")
    F = A.field
    mp = base.classification["minimal_polynomial"]
    if not F.is_finite:
        return SplitResult("extension-required", base, base,
                           f"eigenvalues outside {F}: minimal polynomial {mp} does not split")
    if F.m != 1:
        return SplitResult("extension-required", base, base,
                           f"splitting fields are only computed over prime fields, not {F}")
    K = splitting_extension(mp)
    AK = base_change(A, K)
    fK = {k: embed(x, F, K) for k, x in base.functional.items()}
    data = frobenius_from_functional(AK, fK)
    if not data.diagonalizable:
        raise NakayamaVerificationError("base change did not split the Nakayama automorphism")
    return SplitResult("extended", data, base, f"extended scalars from {F} to {K}")


def spectrum_inverse_closed(D: FrobeniusData) -> tuple[bool, dict]:
    """Check that eigenvalues come in inverse pairs with perfectly paired eigenspaces."""
    if not D.diagonalizable:
        raise ValueError("Nakayama automorphism is not diagonalizable over the field")
    F = D.field
    witness = {}
    ok = True
    for lam in D.eigenvalues:
        inv = F.inv(lam)
        key = F.format(F.canonical(lam))
        if inv not in D.eigenspaces:
            witness[key] = "inverse missing"
            ok = False
            continue
        Al, Ai = D.eigenspaces[lam], D.eigenspaces[inv]
        if Al.dim != Ai.dim:
            witness[key] = f"dimension mismatch {Al.dim} vs {Ai.dim}"
            ok = False
            continue
        rows = []
        for x in Al.basis:
            rows.append({j: v for j, y in enumerate(Ai.basis) if (v := D.form(x, y)) != 0})
        r = rank(Matrix.from_rows(F, Ai.dim, rows))
        witness[key] = {"dim": Al.dim, "pairing_rank": r}
        if r != Al.dim:
            ok = False
    return ok, witness


# -- path-basis criterion --

@dataclass
class CriterionReport:
    condition1: bool
    condition2: bool
    characteristic: bool
    witness1: Optional[tuple] = None
    witness2: Optional[tuple] = None
    partners: dict = dc_field(default_factory=dict)  # basis index -> partner index

    @property
    def verdict(self) -> bool:
        return self.condition1 and self.condition2 and self.characteristic


def criterion_check(A: FiniteDimAlgebra) -> CriterionReport:
    if not A.is_quiver_born:
        raise ValueError("criterion needs a path basis")
    d = A.dim
    F = A.field
    c1, w1 = True, None
    for i in range(d):
        for j in range(d):
            if len(A.basis_product(i, j)) > 1:
                c1, w1 = False, (A.labels[i], A.labels[j])
                break
        if not c1:
            break
    soc = socle_right(A)
    c2, w2 = True, None
    partners = {}
    for i in range(d):
        hits = [j for j in range(d) if (v := A.basis_product(i, j)) and soc.contains(v)]
        if len(hits) != 1:
            c2 = False
            if w2 is None:
                w2 = (A.labels[i], [A.labels[j] for j in hits])
        else:
            partners[i] = hits[0]
    narrows = len(A.quiver.arrows) if A.quiver is not None else 0
    ch = F.characteristic == 0 or F.characteristic > narrows
    return CriterionReport(c1, c2, ch, w1, w2, partners)


def nakayama_on_basis(D: FrobeniusData, report: CriterionReport | None = None) -> dict:
    """p -> (scalar, p**) with N(p) = scalar * p**, scalar = f(p p*) / f(p* p**)."""
    A = D.algebra
    F = A.field
    report = report or criterion_check(A)
    if not (report.condition1 and report.condition2):
        raise CriterionFailure("criterion conditions (1) and (2) do not hold")
    pr = report.partners
    table = {}
    for p in range(A.dim):
        ps = pr[p]
        pss = pr[ps]
        lp = D.apply_functional(A.basis_product(p, ps))
        lps = D.apply_functional(A.basis_product(ps, pss))
        table[p] = (F.div(lp, lps), pss)
    return table


def table_matches_matrix(D: FrobeniusData, table: dict) -> bool:
    return all(D.nakayama.column(p) == ({q: c} if c != 0 else {}) for p, (c, q) in table.items())
