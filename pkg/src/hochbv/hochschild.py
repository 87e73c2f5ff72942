"""Truncated bar complexes of a finite-dimensional algebra.

Basis conventions (n = dimension of the slot space, Abar or A):
  chain      m (x) s_1 (x) ... (x) s_r      index m * n^r + t
  cochain    phi(s_1..s_r) = b_e            index e * n^r + t
where t is the row-major tensor index with s_1 most significant.

The twisted chain complex uses coefficients A_sigma with
  b(m (x) a_1..a_r) = m a_1 (x) a_2.. + sum_i (-1)^i m (x) ..a_i a_{i+1}.. + (-1)^r sigma(a_r) m (x) a_1..a_{r-1}
and sigma = N^{-1}, the inverse of the Nakayama automorphism in the convention
f(a y) = f(y N(a)).  With this choice the pairing with cochains is adjoint to
the differentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .algebra import FiniteDimAlgebra, ReducedSpace, change_basis, reduced_space
from .exactfield import FieldDescriptor
from .linalg import Matrix, QuotientBasis, Subspace, _Echelon, axpy, dense_inverse, image, kernel, quotient_representatives, rank


class DegreeOutOfRange(ValueError):
    pass


class FullSlots:
    """The unnormalized slot space: A itself."""

    def __init__(self, A: FiniteDimAlgebra):
        self.field = A.field
        self.indices = list(range(A.dim))

    @property
    def dim(self):
        return len(self.indices)

    def project(self, v: dict) -> dict:
        return dict(v)

    def project_basis(self, k: int) -> dict:
        return {k: 1}

    def lift(self, i: int) -> int:
        return i


def _digits(t: int, n: int, r: int) -> list[int]:
    out = [0] * r
    for i in range(r - 1, -1, -1):
        t, out[i] = divmod(t, n)
    return out


def _undigits(ds, n: int) -> int:
    t = 0
    for s in ds:
        t = t * n + s
    return t


class _Acc:
    """Column accumulator for building sparse matrices."""

    __slots__ = ("cols", "add")

    def __init__(self, F: FieldDescriptor):
        self.cols: dict = {}
        self.add = F.add

    def put(self, c, row, x):
        col = self.cols.get(c)
        if col is None:
            self.cols[c] = {row: x}
            return
        v = col.get(row)
        if v is None:
            col[row] = x
        else:
            v = self.add(v, x)
            if v:
                col[row] = v
            else:
                del col[row]


def matrix_inverse(M: Matrix) -> Matrix:
    F, d = M.field, M.nrows
    dense = [[M.entry(i, j) for j in range(d)] for i in range(d)]
    inv = dense_inverse(F, dense)
    if inv is None:
        raise ValueError("matrix is singular")
    return Matrix.from_columns(F, d, [{i: inv[i][j] for i in range(d) if inv[i][j] != 0} for j in range(d)])


@dataclass
class HomologyBasis:
    degree: int
    representatives: list
    cycles: Subspace
    boundaries: Subspace

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @cached_property
    def reducer(self) -> QuotientBasis:
        return QuotientBasis(self.boundaries, self.representatives)

    def coordinates(self, v: dict) -> list:
        if not self.cycles.contains(v):
            raise ValueError("vector is not a cycle")
        return self.reducer.coordinates(v)

    def is_zero(self, v: dict) -> bool:
        return all(c == 0 for c in self.coordinates(v))


class TruncatedComplex:
    """Spaces in degrees 0..bound with differentials built on demand and cached."""

    def __init__(self, algebra: FiniteDimAlgebra, direction: str, bound: int, twist: Matrix | None = None,
                 normalized: bool = True):
        if direction not in ("chain", "cochain"):
            raise ValueError("direction must be chain or cochain")
        if bound < 1:
            raise ValueError("degree bound must be at least 1")
        if direction == "cochain" and twist is not None:
            raise ValueError("cochains take untwisted coefficients")
        self.algebra = algebra
        self.field = algebra.field
        self.direction = direction
        self.bound = bound
        self.twist = twist  # sigma acting on the coefficient of the last face (chains only)
        self.normalized = normalized
        self.slots = reduced_space(algebra) if normalized else FullSlots(algebra)
        self._diff: dict[int, Matrix] = {}
        self._homology: dict[int, HomologyBasis] = {}
        self._prep()

    def _prep(self):
        A, S, F = self.algebra, self.slots, self.field
        d, n = A.dim, S.dim
        lift = [S.lift(s) for s in range(n)]
        self.lift = lift
        self.mubar = {}
        self.mubar_inv: dict[int, list] = {}
        for x in range(n):
            for y in range(n):
                v = S.project(A.basis_product(lift[x], lift[y]))
                if v:
                    self.mubar[(x, y)] = v
                    for k, c in v.items():
                        self.mubar_inv.setdefault(k, []).append((x, y, c))
        self.left_by_slot = {(s, m): A.basis_product(lift[s], m) for s in range(n) for m in range(d)}
        self.right_by_slot = {(m, s): A.basis_product(m, lift[s]) for s in range(n) for m in range(d)}
        if self.twist is not None:
            self.twisted_left = {(s, m): A.multiply(self.twist.column(lift[s]), {m: 1}) for s in range(n)
                                 for m in range(d)}
        else:
            self.twisted_left = self.left_by_slot

    # -- shape --

    @property
    def d(self) -> int:
        return self.algebra.dim

    @property
    def n(self) -> int:
        return self.slots.dim

    def dim(self, r: int) -> int:
        return self.d * self.n ** r

    def label(self, r: int, idx: int) -> str:
        m, t = divmod(idx, self.n ** r)
        A = self.algebra
        slots = [A.labels[self.lift[s]] for s in _digits(t, self.n, r)]
        if self.direction == "chain":
            return " (x) ".join([A.labels[m]] + slots)
        return f"[{', '.join(slots)}] -> {A.labels[m]}"

    # -- differentials --

    def differential(self, r: int) -> Matrix:
        """Chains: C_r -> C_{r-1} (r >= 1).  Cochains: C^r -> C^{r+1} (r >= 0)."""
        if r in self._diff:
            return self._diff[r]
        if self.direction == "chain":
            if not 1 <= r <= self.bound:
                raise DegreeOutOfRange(f"chain differential at {r} outside 1..{self.bound}")
            M = self._chain_differential(r)
        else:
            if not 0 <= r <= self.bound - 1:
                raise DegreeOutOfRange(f"cochain differential at {r} outside 0..{self.bound - 1}")
            M = self._cochain_differential(r)
        self._diff[r] = M
        return M

    def _chain_differential(self, r: int) -> Matrix:
        F, d, n = self.field, self.d, self.n
        neg = F.neg
        acc = _Acc(F)
        put = acc.put
        nr, nr1 = n ** r, n ** (r - 1)
        # first face: m (x) s (x) rest -> m*s (x) rest
        for m in range(d):
            for s in range(n):
                v = self.right_by_slot[(m, s)]
                if not v:
                    continue
                base = m * nr + s * nr1
                for rest in range(nr1):
                    c = base + rest
                    for m2, x in v.items():
                        put(c, m2 * nr1 + rest, x)
        # inner faces
        for i in range(1, r):
            sign = 1 if i % 2 == 0 else F.neg(1)
            hi_n = n ** (i - 1)
            lo_n = n ** (r - i - 1)
            for (x, y), v in self.mubar.items():
                vs = {k: F.mul(sign, c) for k, c in v.items()}
                for m in range(d):
                    for hi in range(hi_n):
                        cbase = m * nr + ((hi * n + x) * n + y) * lo_n
                        rbase = m * nr1 + hi * n * lo_n
                        for lo in range(lo_n):
                            for k, c in vs.items():
                                put(cbase + lo, rbase + k * lo_n + lo, c)
        # last face: (-1)^r sigma(s) m (x) mid
        sign_last = r % 2 == 1
        for m in range(d):
            for s in range(n):
                v = self.twisted_left[(s, m)]
                if not v:
                    continue
                if sign_last:
                    v = {k: neg(x) for k, x in v.items()}
                for mid in range(nr1):
                    c = m * nr + mid * n + s
                    for m2, x in v.items():
                        put(c, m2 * nr1 + mid, x)
        return Matrix(F, self.dim(r - 1), self.dim(r), acc.cols)

    def _cochain_differential(self, r: int) -> Matrix:
        F, d, n = self.field, self.d, self.n
        acc = _Acc(F)
        put = acc.put
        nr, nr1 = n ** r, n ** (r + 1)
        left_sign = F.neg(1) if (r + 1) % 2 else 1
        for e in range(d):
            # left term: (-1)^{r+1} a_s phi(t) at u = (s, t)
            for s in range(n):
                v = self.left_by_slot[(s, e)]
                if v:
                    v = {k: F.mul(left_sign, x) for k, x in v.items()}
                    for t in range(nr):
                        c = e * nr + t
                        u = s * nr + t
                        for e2, x in v.items():
                            put(c, e2 * nr1 + u, x)
            # right term: phi(t) a_s at u = (t, s)
            for s in range(n):
                v = self.right_by_slot[(e, s)]
                if v:
                    for t in range(nr):
                        c = e * nr + t
                        u = t * n + s
                        for e2, x in v.items():
                            put(c, e2 * nr1 + u, x)
            # inner terms: (-1)^{r+1-i} phi(.. u_i u_{i+1} ..)
            for i in range(1, r + 1):
                sign = 1 if (r + 1 - i) % 2 == 0 else F.neg(1)
                hi_n = n ** (i - 1)
                lo_n = n ** (r - i)
                for k, triples in self.mubar_inv.items():
                    for x, y, cf in triples:
                        val = F.mul(sign, cf)
                        for hi in range(hi_n):
                            cbase = e * nr + (hi * n + k) * lo_n
                            rbase = e * nr1 + ((hi * n + x) * n + y) * lo_n
                            for lo in range(lo_n):
                                put(cbase + lo, rbase + lo, val)
        return Matrix(F, self.dim(r + 1), self.dim(r), acc.cols)

    def check_square_zero(self) -> dict:
        """Exact d o d = 0 for every composable pair inside the bound."""
        out = {}
        if self.direction == "chain":
            for r in range(2, self.bound + 1):
                out[r] = _composes_to_zero(self.differential(r - 1), self.differential(r))
        else:
            for r in range(0, self.bound - 1):
                out[r] = _composes_to_zero(self.differential(r + 1), self.differential(r))
        return out

    # -- homology --

    def _outgoing(self, k: int) -> Optional[Matrix]:
        if self.direction == "chain":
            return self.differential(k) if k >= 1 else None
        return self.differential(k)

    def _incoming(self, k: int) -> Optional[Matrix]:
        if self.direction == "chain":
            return self.differential(k + 1)
        return self.differential(k - 1) if k >= 1 else None

    def homology(self, k: int, restrict: Optional[Subspace] = None, restrict_next: Optional[Subspace] = None) -> HomologyBasis:
        """(Co)homology at degree k, for 0 <= k <= bound - 1.

        ``restrict``/``restrict_next`` are optional subcomplexes (at k and at the
        incoming degree) from which cycles and boundaries are taken."""
        if not 0 <= k <= self.bound - 1:
            raise DegreeOutOfRange(f"homology at {k} needs degrees up to {k + 1} (bound {self.bound})")
        key = k if restrict is None else None
        if key is not None and key in self._homology:
            return self._homology[key]
        out = self._outgoing(k)
        inc = self._incoming(k)
        dimk = self.dim(k)
        if restrict is None:
            Z = kernel(out) if out is not None else Subspace.full(self.field, dimk)
            Bd = image(inc) if inc is not None else Subspace.zero(self.field, dimk)
        else:
            if out is None:
                Z = restrict
            else:
                imgs = [out.apply(v) for v in restrict.basis]
                K = kernel(Matrix.from_columns(self.field, out.nrows, imgs))
                Z = Subspace.span(self.field, dimk, (_combine(self.field, restrict.basis, c) for c in K.basis))
            if inc is None:
                Bd = Subspace.zero(self.field, dimk)
            else:
                Bd = Subspace.span(self.field, dimk, (inc.apply(v) for v in restrict_next.basis))
        reps = quotient_representatives(Z, Bd)
        H = HomologyBasis(k, reps, Z, Bd)
        if key is not None:
            self._homology[key] = H
        return H

    def betti(self, k: int) -> int:
        return self.homology(k).dim


def _combine(F, basis, coeffs: dict) -> dict:
    out: dict = {}
    for i, c in coeffs.items():
        axpy(F, out, c, basis[i])
    return out


def _composes_to_zero(outer: Matrix, inner: Matrix) -> bool:
    for c in inner.cols.values():
        if outer.apply(c):
            return False
    return True


# -- constructors --

def cochain_complex(A: FiniteDimAlgebra, D: int) -> TruncatedComplex:
    return TruncatedComplex(A, "cochain", D)


def chain_complex(A: FiniteDimAlgebra, D: int) -> TruncatedComplex:
    return TruncatedComplex(A, "chain", D)


def chain_complex_twisted(A: FiniteDimAlgebra, N: Matrix, D: int) -> TruncatedComplex:
    """Chains with coefficients twisted by sigma = N^{-1}."""
    return TruncatedComplex(A, "chain", D, twist=matrix_inverse(N))


def unnormalized_complexes(A: FiniteDimAlgebra, N: Matrix | None, D: int) -> tuple[TruncatedComplex, TruncatedComplex]:
    """(cochain, twisted chain) complexes with full A slots, as an independent oracle."""
    tw = matrix_inverse(N) if N is not None else None
    return (TruncatedComplex(A, "cochain", D, normalized=False),
            TruncatedComplex(A, "chain", D, twist=tw, normalized=False))


# -- cyclic operators --

def _sigma_bar(C: TruncatedComplex) -> list[dict]:
    """sigma on the slot space, as images of slot basis vectors."""
    S = C.slots
    if C.twist is None:
        return [{s: 1} for s in range(C.n)]
    return [S.project(C.twist.column(C.lift[s])) for s in range(C.n)]


def _tensor_expand(F, factors: list[dict]) -> dict:
    """Expand a pure tensor of slot vectors into {tuple: coefficient}."""
    out = {(): 1}
    for f in factors:
        nxt = {}
        for key, c in out.items():
            for s, x in f.items():
                nk = key + (s,)
                v = F.mul(c, x)
                nxt[nk] = F.add(nxt.get(nk, 0), v)
        out = {k: v for k, v in nxt.items() if v != 0}
    return out


def twisted_connes_beta(C: TruncatedComplex, r: int) -> Matrix:
    """beta(a_0 (x)..(x) a_r) = sum_i (-1)^{ir} 1 (x) s(a_i)..s(a_r) (x) a_0 (x) a_1..a_{i-1}, s = the twist.

    The factors that wrap around the front pick up the twist; this is the
    placement for which b beta + beta b = 1 - T.  With no twist it is Connes' B.
    Maps C_r -> C_{r+1}."""
    if C.direction != "chain":
        raise ValueError("beta acts on chains")
    if not 0 <= r <= C.bound - 1:
        raise DegreeOutOfRange(f"beta at {r} needs degree {r + 1} <= bound {C.bound}")
    F, d, n = C.field, C.d, C.n
    S = C.slots
    A = C.algebra
    sig = _sigma_bar(C)
    nr, nr1 = n ** r, n ** (r + 1)
    unit = A.unit
    acc = _Acc(F)
    for m in range(d):
        a0 = S.project_basis(m) if C.normalized else {m: 1}
        if not a0:
            continue
        for t in range(nr):
            c = m * nr + t
            ds = _digits(t, n, r)
            for i in range(r + 1):
                sign = 1 if (i * r) % 2 == 0 else F.neg(1)
                if i == 0:
                    factors = [a0] + [{s: 1} for s in ds]
                else:
                    factors = [sig[s] for s in ds[i - 1:]] + [a0] + [{s: 1} for s in ds[:i - 1]]
                for key, x in _tensor_expand(F, factors).items():
                    tt = _undigits(key, n)
                    for u, ux in unit.items():
                        acc.put(c, u * nr1 + tt, F.mul(sign, F.mul(ux, x)))
    return Matrix(F, C.dim(r + 1), C.dim(r), acc.cols)


def connes_B(C: TruncatedComplex, r: int) -> Matrix:
    if C.twist is not None:
        raise ValueError("Connes B is defined on the untwisted chain complex")
    return twisted_connes_beta(C, r)


def twist_operator(C: TruncatedComplex, r: int) -> Matrix:
    """T = sigma on every tensor factor of C_r."""
    F, d, n = C.field, C.d, C.n
    if C.twist is None:
        return Matrix.identity(F, C.dim(r))
    sig = _sigma_bar(C) if C.normalized else [C.twist.column(s) for s in range(n)]
    nr = n ** r
    cols = {}
    for m in range(d):
        sm = C.twist.column(m)
        for t in range(nr):
            ds = _digits(t, n, r)
            col = {}
            for key, x in _tensor_expand(F, [sig[s] for s in ds]).items():
                tt = _undigits(key, n)
                for m2, y in sm.items():
                    col[m2 * nr + tt] = F.mul(x, y)
            cols[m * nr + t] = {k: v for k, v in col.items() if v != 0}
    return Matrix(F, C.dim(r), C.dim(r), cols)


def homotopy_defect(C: TruncatedComplex, r: int) -> Matrix:
    """b beta + beta b - (1 - T) on C_r; zero when the homotopy identity holds."""
    F = C.field
    beta_r = twisted_connes_beta(C, r)
    lhs = C.differential(r + 1) @ beta_r
    if r >= 1:
        lhs = lhs + twisted_connes_beta(C, r - 1) @ C.differential(r)
    rhs = Matrix.identity(F, C.dim(r)) - twist_operator(C, r)
    return lhs - rhs


def fixed_subspace(C: TruncatedComplex, r: int) -> Subspace:
    """Chains of degree r fixed by T (the weight-1 part)."""
    T = twist_operator(C, r)
    return kernel(T - Matrix.identity(C.field, C.dim(r)))


def weight_one_homology(C: TruncatedComplex, r: int) -> HomologyBasis:
    """Homology at r whose representatives are T-fixed cycles; boundaries are the full ones."""
    full = C.homology(r)
    if C.twist is None:
        return full
    cache = C.__dict__.setdefault("_weight_one", {})
    if r in cache:
        return cache[r]
    fixed = C.homology(r, restrict=fixed_subspace(C, r), restrict_next=fixed_subspace(C, r + 1))
    if fixed.dim != full.dim:
        raise ArithmeticError(f"weight-1 homology at {r} has dimension {fixed.dim}, full homology {full.dim}")
    cache[r] = HomologyBasis(r, fixed.representatives, full.cycles, full.boundaries)
    return cache[r]


# -- weights --

@dataclass
class WeightGrading:
    """Complexes rebuilt on an eigenbasis of A (unit first) and per-index weights."""
    algebra: FiniteDimAlgebra  # the algebra in the eigenbasis
    basis_change: list  # old coordinates of the new basis vectors
    eigenvalues: list  # Nakayama eigenvalue of each new basis vector
    chain: TruncatedComplex
    cochain: TruncatedComplex

    def chain_weight(self, r: int, idx: int):
        """Eigenvalue of T on the chain basis vector: product of twist eigenvalues."""
        F = self.algebra.field
        n = self.chain.n
        m, t = divmod(idx, n ** r)
        w = F.inv(self.eigenvalues[m])
        for s in _digits(t, n, r):
            w = F.mul(w, F.inv(self.eigenvalues[self.chain.lift[s]]))
        return w

    def cochain_weight(self, r: int, idx: int):
        """nu_e / prod nu_{t_i}: the weight under phi -> N phi N^{-1}."""
        F = self.algebra.field
        n = self.cochain.n
        e, t = divmod(idx, n ** r)
        w = self.eigenvalues[e]
        for s in _digits(t, n, r):
            w = F.div(w, self.eigenvalues[self.cochain.lift[s]])
        return w

    def _all_weights(self, direction: str, r: int) -> list:
        cache = self.__dict__.setdefault("_weight_cache", {})
        if (direction, r) not in cache:
            C = self.chain if direction == "chain" else self.cochain
            wf = self.chain_weight if direction == "chain" else self.cochain_weight
            cache[(direction, r)] = [wf(r, i) for i in range(C.dim(r))]
        return cache[(direction, r)]

    def indices(self, direction: str, r: int, lam) -> list[int]:
        return [i for i, w in enumerate(self._all_weights(direction, r)) if w == lam]

    def weights(self, direction: str, r: int) -> list:
        out = []
        for w in self._all_weights(direction, r):
            if w not in out:
                out.append(w)
        return out

    def preserves_weights(self, direction: str, r: int) -> bool:
        C = self.chain if direction == "chain" else self.cochain
        M = C.differential(r)
        rdeg = r - 1 if direction == "chain" else r + 1
        src, dst = self._all_weights(direction, r), self._all_weights(direction, rdeg)
        return all(dst[i] == src[j] for j, col in M.cols.items() for i in col)

    def scalar_homotopy_holds(self, r: int) -> bool:
        """On each weight-lam block, b beta + beta b acts as (1 - lam) * id."""
        C = self.chain
        F = self.algebra.field
        H = C.differential(r + 1) @ twisted_connes_beta(C, r)
        if r >= 1:
            H = H + twisted_connes_beta(C, r - 1) @ C.differential(r)
        for idx in range(C.dim(r)):
            x = F.sub(1, self.chain_weight(r, idx))
            if H.column(idx) != ({idx: x} if x != 0 else {}):
                return False
        return True

    def subcomplex_homology(self, r: int, lam) -> int:
        """Dimension of the weight-lam chain homology at degree r."""
        C = self.chain
        cur = self.indices("chain", r, lam)
        nxt = self.indices("chain", r + 1, lam)
        Z = len(cur) if r == 0 else len(cur) - _rank_restricted(C.differential(r), self.indices("chain", r - 1, lam), cur)
        Bd = _rank_restricted(C.differential(r + 1), cur, nxt)
        return Z - Bd


def _rank_restricted(M: Matrix, rows, cols) -> int:
    return rank(M.restrict(rows, cols))


def weight_decomposition(A: FiniteDimAlgebra, N: Matrix, D: int, eigenspaces: dict) -> WeightGrading:
    """Rebuild the complexes on an eigenbasis of N whose first vector is the unit."""
    F = A.field
    total = sum(S.dim for S in eigenspaces.values())
    if total != A.dim:
        raise ValueError("Nakayama automorphism is not diagonalizable over the field")
    cols = [dict(A.unit)]
    eig = [1]
    E = _Echelon(F)
    E.insert(A.unit)
    for lam, S in eigenspaces.items():
        for v in S.basis:
            if E.insert(v):
                cols.append(dict(v))
                eig.append(lam)
    A2 = change_basis(A, cols, labels=[f"w{i}" for i in range(len(cols))])
    N2 = Matrix.diagonal(F, eig)
    chain = chain_complex_twisted(A2, N2, D)
    cochain = cochain_complex(A2, D)
    return WeightGrading(A2, cols, eig, chain, cochain)
