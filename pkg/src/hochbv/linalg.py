"""Exact sparse linear algebra over a :class:`FieldDescriptor`.

Vectors are ``dict[int, raw]`` with no stored zeros.  Over Q the elimination
is fraction-free: rows are kept as primitive integer vectors, combined with
integer multipliers and divided by their content (an exact division); only
the final reduced echelon rows are turned back into fractions.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exactfield import FieldDescriptor, FieldElement, FieldMismatchError, Polynomial, poly_gcd, \
    roots_in_field, squarefree

Vector = dict


# -- vector helpers --

def axpy(F: FieldDescriptor, y: Vector, a, x: Vector) -> Vector:
    """y += a * x, in place."""
    if a == 0:
        return y
    if F.p == 0:
        for k, xv in x.items():
            nv = y.get(k, 0) + a * xv
            if nv:
                y[k] = nv
            else:
                y.pop(k, None)
        return y
    add, mul = F.add, F.mul
    for k, xv in x.items():
        nv = add(y.get(k, 0), mul(a, xv))
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)
    return y


def scale(F: FieldDescriptor, a, x: Vector) -> Vector:
    if a == 0:
        return {}
    mul = F.mul
    return {k: mul(a, v) for k, v in x.items()}


def vec_sub(F: FieldDescriptor, x: Vector, y: Vector) -> Vector:
    return axpy(F, dict(x), F.neg(1), y)


def canonical_vector(F: FieldDescriptor, v: Vector) -> Vector:
    c = F.canonical
    return {k: c(x) for k, x in sorted(v.items()) if x != 0}


def _primitive_int_row(v: Vector) -> dict[int, int]:
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    if not v:
        return {}
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = math.lcm(den, x.denominator)
    row = {k: int(x * den) for k, x in v.items()}
    return _normalize_int_row(row)


def _normalize_int_row(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = math.gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: x // g for k, x in row.items()}
    return row


# -- matrices --

class Matrix:
    """Sparse column-major matrix with exact entries."""

    __slots__ = ("field", "nrows", "ncols", "cols", "_t")

    def __init__(self, field: FieldDescriptor, nrows: int, ncols: int, cols: dict | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {j: c for j, c in (cols or {}).items() if c}
        self._t = None

    # -- constructors --

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {j: {j: 1} for j in range(n)})

    @classmethod
    def from_dense(cls, field: FieldDescriptor, rows: Sequence[Sequence], ncols: int | None = None):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (ncols or 0)
        cols: dict = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(r):
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise FieldMismatchError(f"{x.field} vs {field}")
                    x = x.raw
                else:
                    x = field.parse(x) if isinstance(x, str) else field.from_fraction(x) if not (
                        field.is_finite and isinstance(x, int)) else field.from_int(x)
                if x != 0:
                    cols.setdefault(j, {})[i] = x
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_columns(cls, field, nrows, columns: Sequence[Vector]):
        return cls(field, nrows, len(columns), {j: dict(c) for j, c in enumerate(columns)})

    @classmethod
    def from_rows(cls, field, ncols, rows: Sequence[Vector]):
        cols: dict = {}
        for i, r in enumerate(rows):
            for j, x in r.items():
                cols.setdefault(j, {})[i] = x
        return cls(field, len(rows), ncols, cols)

    @classmethod
    def diagonal(cls, field, entries):
        """Diagonal matrix from raw scalars."""
        return cls(field, len(entries), len(entries), {i: {i: x} for i, x in enumerate(entries) if x != 0})

    # -- access --

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def column(self, j) -> Vector:
        return self.cols.get(j, {})

    def entry(self, i, j):
        return self.cols.get(j, {}).get(i, 0)

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.field.canonical(self.entry(i, j)))

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def rows(self) -> dict[int, Vector]:
        return self.transpose().cols

    def row(self, i) -> Vector:
        return self.transpose().cols.get(i, {})

    def to_dense(self) -> list[list]:
        F = self.field
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, c in self.cols.items():
            for i, x in c.items():
                out[i][j] = F.canonical(x)
        return out

    def transpose(self) -> "Matrix":
        if self._t is None:
            cols: dict = {}
            for j, c in self.cols.items():
                for i, x in c.items():
                    cols.setdefault(i, {})[j] = x
            t = Matrix(self.field, self.ncols, self.nrows)
            t.cols = cols
            t._t = self
            self._t = t
        return self._t

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    # -- arithmetic --

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def apply(self, v: Vector) -> Vector:
        F = self.field
        out: dict = {}
        cols = self.cols
        for j, x in v.items():
            c = cols.get(j)
            if c:
                axpy(F, out, x, c)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {j: self.apply(c) for j, c in other.cols.items()}
        return Matrix(self.field, self.nrows, other.ncols, cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, c in other.cols.items():
            axpy(F, cols.setdefault(j, {}), 1, c)
        return Matrix(F, self.nrows, self.ncols, cols)

    def __neg__(self) -> "Matrix":
        return self.scaled(self.field.neg(1))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scaled(self, a) -> "Matrix":
        a = a.raw if isinstance(a, FieldElement) else a
        return Matrix(self.field, self.nrows, self.ncols, {j: scale(self.field, a, c) for j, c in self.cols.items()})

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.cols == other.cols

    __hash__ = None

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """Submatrix on the given (ordered) row and column indices."""
        rpos = {r: i for i, r in enumerate(rows)}
        out = {}
        for jj, j in enumerate(cols):
            c = self.cols.get(j)
            if c:
                sub = {rpos[i]: x for i, x in c.items() if i in rpos}
                if sub:
                    out[jj] = sub
        return Matrix(self.field, len(rows), len(cols), out)

    def __repr__(self):
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# -- echelon machinery --

class _Echelon:
    """Incremental echelon form; the pivot of a row is its smallest column."""

    def __init__(self, field: FieldDescriptor):
        self.F = field
        self.rational = field.p == 0
        self.rows: dict[int, dict] = {}
        self.heap_cache = None

    def _prep(self, v: Vector) -> dict:
        if self.rational:
            return _primitive_int_row(v)
        return dict(v)

    def _reduce_internal(self, v: dict) -> dict:
        rows = self.rows
        heap = [k for k in v if k in rows]
        if not heap:
            return v
        heapq.heapify(heap)
        seen = set()
        if self.rational:
            while heap:
                c = heapq.heappop(heap)
                if c in seen:
                    continue
                seen.add(c)
                b = v.get(c)
                if not b:
                    continue
                r = rows[c]
                a = r[c]
                g = math.gcd(a, b)
                a //= g
                b //= g
                if a != 1:
                    for k in v:
                        v[k] *= a
                for k, x in r.items():
                    nv = v.get(k, 0) - b * x
                    if nv:
                        if k not in v and k in rows and k not in seen:
                            heapq.heappush(heap, k)
                        v[k] = nv
                    else:
                        v.pop(k, None)
            if v:
                v = _normalize_int_row(v)
            return v
        F = self.F
        add, mul, neg = F.add, F.mul, F.neg
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            b = v.get(c)
            if not b:
                continue
            nb = neg(b)
            for k, x in rows[c].items():
                nv = add(v.get(k, 0), mul(nb, x))
                if nv:
                    if k not in v and k in rows and k not in seen:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, v: Vector) -> bool:
        """Add v to the row space; True if it was independent."""
        if not v:
            return False
        r = self._reduce_internal(self._prep(v))
        if not r:
            return False
        c = min(r)
        if not self.rational:
            inv = self.F.inv(r[c])
            if inv != 1:
                r = scale(self.F, inv, r)
        self.rows[c] = r
        return True

    def contains(self, v: Vector) -> bool:
        return not v or not self._reduce_internal(self._prep(v))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def rref(self) -> tuple[list[int], list[Vector]]:
        """Reduced echelon rows (pivot entry 1), ordered by pivot."""
        pivots = sorted(self.rows)
        rows = {c: dict(self.rows[c]) for c in pivots}
        pivset = set(pivots)
        F = self.F
        # back substitution, last pivot first
        for c in reversed(pivots):
            rc = rows[c]
            for c2 in pivots:
                if c2 >= c:
                    break
                r2 = rows[c2]
                b = r2.get(c)
                if not b:
                    continue
                if self.rational:
                    a = rc[c]
                    g = math.gcd(a, b)
                    a //= g
                    b //= g
                    if a != 1:
                        for k in r2:
                            r2[k] *= a
                    for k, x in rc.items():
                        nv = r2.get(k, 0) - b * x
                        if nv:
                            r2[k] = nv
                        else:
                            r2.pop(k, None)
                    rows[c2] = _normalize_int_row(r2)
                else:
                    axpy(F, r2, F.neg(b), rc)
        out = []
        for c in pivots:
            r = rows[c]
            if self.rational:
                p = r[c]
                out.append({k: (x // p if x % p == 0 else Fraction(x, p)) for k, x in sorted(r.items())})
            else:
                out.append(dict(sorted(r.items())))
        del pivset
        return pivots, out


class Subspace:
    """Subspace of F^n stored as its reduced row echelon basis."""

    __slots__ = ("field", "ambient", "pivots", "basis", "_pivpos")

    def __init__(self, field: FieldDescriptor, ambient: int, pivots: list[int], basis: list[Vector]):
        self.field = field
        self.ambient = ambient
        self.pivots = pivots
        self.basis = basis
        self._pivpos = {c: i for i, c in enumerate(pivots)}

    @classmethod
    def span(cls, field: FieldDescriptor, ambient: int, vectors: Iterable[Vector]) -> "Subspace":
        E = _Echelon(field)
        for v in vectors:
            if any(k >= ambient or k < 0 for k in v):
                raise ValueError("vector outside ambient space")
            E.insert(v)
        piv, rows = E.rref()
        return cls(field, ambient, piv, rows)

    @classmethod
    def full(cls, field, n):
        return cls(field, n, list(range(n)), [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [], [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vector) -> Vector:
        """Remainder of v modulo this subspace (zero at every pivot column)."""
        F = self.field
        out = dict(v)
        pp = self._pivpos
        hits = sorted(k for k in v if k in pp)
        for c in hits:
            b = out.get(c)
            if b:
                axpy(F, out, F.neg(b), self.basis[pp[c]])
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vector) -> list:
        """Coordinates of v in the echelon basis; raises if v is not in the span."""
        if self.reduce(v):
            raise ValueError("vector not in subspace")
        return [v.get(c, 0) for c in self.pivots]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient and self.pivots == other.pivots
                and [canonical_vector(self.field, v) for v in self.basis]
                == [canonical_vector(other.field, v) for v in other.basis])

    __hash__ = None

    def __repr__(self):
        return f"Subspace[{self.field}](dim {self.dim} in {self.ambient})"


# -- core operations --

def rank(M: Matrix) -> int:
    E = _Echelon(M.field)
    for j in sorted(M.cols):
        E.insert(M.cols[j])
    return E.rank


def image(M: Matrix) -> Subspace:
    return Subspace.span(M.field, M.nrows, (M.cols[j] for j in sorted(M.cols)))


def kernel(M: Matrix) -> Subspace:
    F = M.field
    rows = M.transpose().cols
    E = _Echelon(F)
    for i in sorted(rows):
        E.insert(rows[i])
    pivots, R = E.rref()
    pivset = set(pivots)
    free = [c for c in range(M.ncols) if c not in pivset]
    # column f of the rref -> entries R[p][f]
    by_col: dict[int, list] = {}
    for p, r in zip(pivots, R):
        for k, x in r.items():
            if k != p:
                by_col.setdefault(k, []).append((p, x))
    vecs = []
    for f in free:
        v = {f: 1}
        for p, x in by_col.get(f, ()):
            v[p] = F.neg(x)
        vecs.append(v)
    # the vectors above are in echelon form w.r.t. their *largest* index; canonicalize
    return Subspace.span(F, M.ncols, vecs)


def rank_kernel_image(M: Matrix) -> tuple[int, Subspace, Subspace]:
    img = image(M)
    ker = kernel(M)
    assert img.dim + ker.dim == M.ncols
    return img.dim, ker, img


def solve(M: Matrix, v: Vector | Sequence):
    """One solution x of M x = v with every free variable set to zero, or None."""
    F = M.field
    if not isinstance(v, dict):
        v = {i: (x.raw if isinstance(x, FieldElement) else F.from_fraction(x)) for i, x in enumerate(v)}
        v = {i: x for i, x in v.items() if x != 0}
    n = M.ncols
    rows = M.transpose().cols
    E = _Echelon(F)
    for i in range(M.nrows):
        r = dict(rows.get(i, {}))
        if v.get(i):
            r[n] = v[i]
        E.insert(r)
    pivots, R = E.rref()
    if n in pivots:
        return None
    x = {}
    for p, r in zip(pivots, R):
        if r.get(n):
            x[p] = r[n]
    return x


def quotient_representatives(total: Subspace, sub: Subspace) -> list[Vector]:
    """Vectors of ``total`` whose classes form a basis of total/sub (greedy, in echelon order)."""
    if not total.contains_subspace(sub):
        raise ValueError("sub is not contained in total")
    E = _Echelon(total.field)
    for v in sub.basis:
        E.insert(v)
    reps = []
    for v in total.basis:
        if E.insert(v):
            reps.append(dict(v))
    return reps


class QuotientBasis:
    """Coordinates of vectors of span(sub + reps) in the classes of ``reps`` modulo ``sub``."""

    def __init__(self, sub: Subspace, reps: Sequence[Vector]):
        F = sub.field
        self.field = F
        self.sub = sub
        self.reps = [dict(r) for r in reps]
        k = len(reps)
        # eliminate reduced reps to rref while tracking combinations
        work = []
        for i, r in enumerate(reps):
            work.append((sub.reduce(r), {i: 1}))
        rows: dict[int, tuple[Vector, Vector]] = {}
        for vec, comb in work:
            vec, comb = dict(vec), dict(comb)
            for c in sorted(rows):
                b = vec.get(c)
                if b:
                    nb = F.neg(b)
                    axpy(F, vec, nb, rows[c][0])
                    axpy(F, comb, nb, rows[c][1])
            if not vec:
                raise ValueError("representatives are dependent modulo the subspace")
            c = min(vec)
            inv = F.inv(vec[c])
            vec, comb = scale(F, inv, vec), scale(F, inv, comb)
            for c2, (v2, m2) in list(rows.items()):
                b = v2.get(c)
                if b:
                    nb = F.neg(b)
                    axpy(F, v2, nb, vec)
                    axpy(F, m2, nb, comb)
            rows[c] = (vec, comb)
        self._rows = rows
        self.dim = k

    def coordinates(self, v: Vector) -> list:
        F = self.field
        rem = self.sub.reduce(v)
        coords: dict = {}
        for c, (vec, comb) in self._rows.items():
            b = rem.get(c)
            if b:
                nb = F.neg(b)
                axpy(F, rem, nb, vec)
                axpy(F, coords, b, comb)
        if rem:
            raise ValueError("vector is not in span(subspace + representatives)")
        return [F.canonical(coords.get(i, 0)) for i in range(self.dim)]

    def is_zero_class(self, v: Vector) -> bool:
        return all(c == 0 for c in self.coordinates(v))


# -- small dense helpers --

def dense_inverse(F: FieldDescriptor, A: Sequence[Sequence]) -> list[list] | None:
    """Inverse of a small square matrix (raw entries), or None if singular."""
    n = len(A)
    M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        M[col] = [F.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                b = M[r][col]
                M[r] = [F.sub(x, F.mul(b, y)) for x, y in zip(M[r], M[col])]
    return [[F.canonical(x) for x in r[n:]] for r in M]


# -- operators --

def _require_square(M: Matrix):
    if M.nrows != M.ncols:
        raise ValueError(f"operator must be square, got {M.shape}")


def _krylov_relation(M: Matrix, v: Vector) -> Polynomial:
    """Monic polynomial g of least degree with g(M) v = 0."""
    F = M.field
    # rows tracked: (reduced vector, combination as polynomial coefficients)
    basis: dict[int, tuple[Vector, list]] = {}
    cur = dict(v)
    k = 0
    while True:
        vec = dict(cur)
        comb = [0] * k + [1]
        for c in sorted(basis):
            b = vec.get(c)
            if b:
                nb = F.neg(b)
                bv, bc = basis[c]
                axpy(F, vec, nb, bv)
                for i, x in enumerate(bc):
                    comb[i] = F.add(comb[i], F.mul(nb, x))
        if not vec:
            return Polynomial(F, comb)
        c = min(vec)
        inv = F.inv(vec[c])
        vec = scale(F, inv, vec)
        comb = [F.mul(inv, x) for x in comb]
        # keep basis reduced at the new pivot
        for c2, (v2, m2) in list(basis.items()):
            b = v2.get(c)
            if b:
                nb = F.neg(b)
                axpy(F, v2, nb, vec)
                m2.extend([0] * (len(comb) - len(m2)))
                for i, x in enumerate(comb):
                    m2[i] = F.add(m2[i], F.mul(nb, x))
        basis[c] = (vec, comb)
        cur = M.apply(cur)
        k += 1


def minimal_polynomial(M: Matrix) -> Polynomial:
    """Monic minimal polynomial, as the lcm of the Krylov relations of the unit vectors."""
    _require_square(M)
    F = M.field
    mp = Polynomial(F, (1,))
    for i in range(M.ncols):
        g = _krylov_relation(M, {i: 1})
        if g.degree > 0:
            mp = (mp * g) // poly_gcd(mp, g)
    return mp.monic()


def evaluate_polynomial(f: Polynomial, M: Matrix) -> Matrix:
    _require_square(M)
    F = M.field
    out = Matrix.zeros(F, M.nrows, M.ncols)
    for c in reversed(f.coeffs):
        out = (out @ M) + Matrix.identity(F, M.nrows).scaled(c)
    return out


def eigenspace(M: Matrix, lam) -> Subspace:
    _require_square(M)
    lam = lam.raw if isinstance(lam, FieldElement) else M.field.from_fraction(lam) if not isinstance(lam, int) or not M.field.is_finite else M.field.from_int(lam)
    return kernel(M - Matrix.identity(M.field, M.nrows).scaled(lam))


def operator_classification(M: Matrix) -> dict:
    """Semisimplicity, diagonalizability over the field, and the spectrum inside the field."""
    _require_square(M)
    F = M.field
    mp = minimal_polynomial(M)
    ss = squarefree(mp)
    roots = roots_in_field(mp)
    distinct = []
    for r in roots:
        if r not in distinct:
            distinct.append(r)
    spectrum: list[FieldElement] = []
    n = M.nrows
    for r in distinct:
        k = sum(1 for x in roots if x == r)
        shifted = M - Matrix.identity(F, n).scaled(r.raw)
        P = Matrix.identity(F, n)
        for _ in range(k):
            P = P @ shifted
        spectrum.extend([r] * (n - rank(P)))
    return {
        "minimal_polynomial": mp,
        "semisimple": ss,
        "diagonalizable_over_field": ss and len(roots) == mp.degree,
        "spectrum_in_field": spectrum,
    }
