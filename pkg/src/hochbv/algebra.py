"""Finite-dimensional unital associative algebras.

Two constructors: explicit structure constants, or a quiver with relations
truncated at a nilpotency bound.  Paths compose left to right, so ``a*b``
means "a, then b" and needs target(a) == source(b).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from .exactfield import FieldDescriptor, FieldElement, embed
from .linalg import Matrix, Subspace, _Echelon, axpy, dense_inverse, kernel


class AlgebraError(ValueError):
    pass


class AssociativityError(AlgebraError):
    def __init__(self, triple, labels):
        self.triple = triple
        i, j, k = triple
        super().__init__(f"associativity fails at ({labels[i]}*{labels[j]})*{labels[k]}")


class UnitError(AlgebraError):
    pass


class RadicalUnavailable(AlgebraError):
    pass


@dataclass(frozen=True)
class PathInfo:
    source: str
    target: str
    arrows: tuple  # arrow names, empty for a vertex idempotent

    @property
    def length(self) -> int:
        return len(self.arrows)


def _raw(F: FieldDescriptor, x):
    if isinstance(x, FieldElement):
        return x.raw
    if isinstance(x, str):
        return F.parse(x)
    if isinstance(x, int) and F.is_finite:
        return F.from_int(x)
    return F.from_fraction(x)


class FiniteDimAlgebra:
    """Structure constants ``b_i b_j = sum_k c[i,j][k] b_k`` plus a unit vector."""

    def __init__(self, field: FieldDescriptor, labels: Sequence[str], table: dict, unit: dict,
                 paths: Sequence[PathInfo] | None = None, quiver: "QuiverPresentation | None" = None,
                 verify: bool = True):
        self.field = field
        self.labels = list(labels)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.unit = {k: v for k, v in unit.items() if v}
        self.paths = list(paths) if paths is not None else None
        self.quiver = quiver
        if verify:
            self.verify()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"FiniteDimAlgebra[{self.field}](dim {self.dim})"

    # -- products --

    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def multiply(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self.table.get((i, j))
                if c:
                    axpy(F, out, F.mul(a, b), c)
        return out

    def left_matrix(self, x: dict) -> Matrix:
        """Matrix of y -> x*y."""
        return Matrix(self.field, self.dim, self.dim, {j: self.multiply(x, {j: 1}) for j in range(self.dim)})

    def right_matrix(self, x: dict) -> Matrix:
        """Matrix of y -> y*x."""
        return Matrix(self.field, self.dim, self.dim, {j: self.multiply({j: 1}, x) for j in range(self.dim)})

    def verify(self):
        d = self.dim
        for (i, j), c in self.table.items():
            if not (0 <= i < d and 0 <= j < d) or any(not 0 <= k < d for k in c):
                raise AlgebraError("structure constants out of range")
        for i in range(d):
            if self.multiply(self.unit, {i: 1}) != {i: 1} or self.multiply({i: 1}, self.unit) != {i: 1}:
                raise UnitError(f"unit law fails on {self.labels[i]}")
        for i in range(d):
            for j in range(d):
                ij = self.table.get((i, j), {})
                for k in range(d):
                    left = self.multiply(ij, {k: 1})
                    right = self.multiply({i: 1}, self.table.get((j, k), {}))
                    if left != right:
                        raise AssociativityError((i, j, k), self.labels)

    # -- formatting --

    def format_vector(self, v: dict) -> str:
        F = self.field
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = F.canonical(v[k])
            if c == 1:
                parts.append(self.labels[k])
            else:
                parts.append(f"{F.format(c)}*{self.labels[k]}")
        return " + ".join(parts)

    def vector(self, coeffs: dict | Sequence) -> dict:
        """Raw vector from a label->scalar map or a coefficient list."""
        F = self.field
        if isinstance(coeffs, dict):
            pos = {l: i for i, l in enumerate(self.labels)}
            items = ((pos[k] if isinstance(k, str) else k, x) for k, x in coeffs.items())
        else:
            items = enumerate(coeffs)
        out = {}
        for i, x in items:
            r = _raw(F, x)
            if r != 0:
                out[i] = r
        return out

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @property
    def is_quiver_born(self) -> bool:
        return self.paths is not None

    @cached_property
    def structure_tensor(self) -> dict:
        """Canonical (i, j) -> {k: scalar} map; handy for exact equality tests."""
        F = self.field
        return {k: {kk: F.canonical(x) for kk, x in sorted(v.items())} for k, v in sorted(self.table.items())}


def from_structure_constants(field: FieldDescriptor, labels: Sequence[str], tensor, unit) -> FiniteDimAlgebra:
    """``tensor`` is either a dict (i, j) -> vector or a nested list tensor[i][j][k]."""
    d = len(labels)
    table = {}
    if isinstance(tensor, dict):
        for (i, j), v in tensor.items():
            vec = {k: _raw(field, x) for k, x in (v.items() if isinstance(v, dict) else enumerate(v))}
            table[(i, j)] = {k: x for k, x in vec.items() if x != 0}
    else:
        if len(tensor) != d or any(len(r) != d for r in tensor):
            raise AlgebraError("tensor dimensions do not match the label count")
        for i in range(d):
            for j in range(d):
                row = tensor[i][j]
                if len(row) != d:
                    raise AlgebraError("tensor dimensions do not match the label count")
                vec = {k: _raw(field, x) for k, x in enumerate(row)}
                table[(i, j)] = {k: x for k, x in vec.items() if x != 0}
    if isinstance(unit, dict):
        u = {k: _raw(field, x) for k, x in unit.items()}
    else:
        if len(unit) != d:
            raise AlgebraError("unit has the wrong length")
        u = {k: _raw(field, x) for k, x in enumerate(unit)}
    return FiniteDimAlgebra(field, labels, table, {k: x for k, x in u.items() if x != 0})


# -- quivers --

@dataclass(frozen=True)
class QuiverPresentation:
    field: FieldDescriptor
    vertices: tuple
    arrows: tuple  # (name, source, target)
    relations: tuple  # each a tuple of (raw scalar, tuple of arrow names)
    bound: int

    def __post_init__(self):
        verts = set(self.vertices)
        if len(verts) != len(self.vertices):
            raise AlgebraError("duplicate vertex")
        if not self.vertices:
            raise AlgebraError("empty quiver")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow name")
        for name, s, t in self.arrows:
            if s not in verts or t not in verts:
                raise AlgebraError(f"arrow {name} has an unknown endpoint")
        if self.bound < 1:
            raise AlgebraError("nilpotency bound must be at least 1")
        ends = {a[0]: (a[1], a[2]) for a in self.arrows}
        for n, rel in enumerate(self.relations):
            st = None
            for _, word in rel:
                if len(word) < 2:
                    raise AlgebraError(f"relation {n}: paths must have length >= 2")
                for a in word:
                    if a not in ends:
                        raise AlgebraError(f"relation {n}: unknown arrow {a}")
                for a, b in zip(word, word[1:]):
                    if ends[a][1] != ends[b][0]:
                        raise AlgebraError(f"relation {n}: {a}*{b} is not composable")
                if len(word) > self.bound:
                    raise AlgebraError(f"relation {n}: longer than the nilpotency bound")
                se = (ends[word[0]][0], ends[word[-1]][1])
                if st is None:
                    st = se
                elif st != se:
                    raise AlgebraError(f"relation {n}: paths are not parallel")

    @classmethod
    def build(cls, field, vertices, arrows, relations, bound):
        """Relations as lists of (scalar, "a*b*c") or (scalar, ("a","b","c"))."""
        rels = []
        for rel in relations:
            terms = []
            for c, w in rel:
                word = tuple(w.split("*")) if isinstance(w, str) else tuple(w)
                terms.append((_raw(field, c), word))
            rels.append(tuple(terms))
        return cls(field, tuple(vertices), tuple(tuple(a) for a in arrows), tuple(rels), bound)


def _enumerate_paths(P: QuiverPresentation) -> list[PathInfo]:
    """All paths of length <= bound in deglex order (length, then arrow names)."""
    out = [PathInfo(v, v, ()) for v in P.vertices]
    arrows = sorted(P.arrows, key=lambda a: a[0])
    layer = [PathInfo(s, t, (n,)) for n, s, t in arrows]
    for _ in range(P.bound):
        out.extend(layer)
        nxt = []
        for p in layer:
            for n, s, t in arrows:
                if s == p.target:
                    nxt.append(PathInfo(p.source, t, p.arrows + (n,)))
        layer = nxt
    return out


def _path_label(p: PathInfo) -> str:
    return f"e_{p.source}" if not p.arrows else "*".join(p.arrows)


def from_quiver(P: QuiverPresentation) -> FiniteDimAlgebra:
    F = P.field
    paths = _enumerate_paths(P)
    # column index: descending deglex, so the echelon pivot of a combination is its leading path
    n = len(paths)
    col = {p: n - 1 - i for i, p in enumerate(paths)}
    by_word = {(p.source, p.arrows) if not p.arrows else p.arrows: p for p in paths}

    def lookup(src, word):
        return by_word.get(word if word else (src, ()))

    ends = {a[0]: (a[1], a[2]) for a in P.arrows}
    E = _Echelon(F)
    for rel in P.relations:
        s = ends[rel[0][1][0]][0]
        t = ends[rel[0][1][-1]][1]
        rmin = min(len(w) for _, w in rel)
        for pre in paths:
            if pre.target != s or pre.length + rmin > P.bound:
                continue
            for post in paths:
                if post.source != t or pre.length + rmin + post.length > P.bound:
                    continue
                v: dict = {}
                for c, w in rel:
                    word = pre.arrows + w + post.arrows
                    if len(word) > P.bound:
                        continue
                    axpy(F, v, c, {col[lookup(s, word)]: 1})
                E.insert(v)
    pivots, rows = E.rref()
    ideal = Subspace(F, n, pivots, rows)
    pivset = set(pivots)
    for p in paths:
        if p.length == P.bound and col[p] not in pivset:
            raise AlgebraError(f"nilpotency bound too small: path {_path_label(p)} survives")
    normal = [p for p in paths if col[p] not in pivset]
    index = {p: i for i, p in enumerate(normal)}

    def reduce(word, src):
        if len(word) > P.bound:
            return {}
        r = ideal.reduce({col[lookup(src, word)]: 1})
        return {index[paths[n - 1 - c]]: x for c, x in r.items()}

    table = {}
    for i, p in enumerate(normal):
        for j, q in enumerate(normal):
            if p.target != q.source:
                continue
            v = reduce(p.arrows + q.arrows, p.source)
            if v:
                table[(i, j)] = v
    unit = {index[p]: 1 for p in normal if not p.arrows}
    return FiniteDimAlgebra(F, [_path_label(p) for p in normal], table, unit, paths=normal, quiver=P)


# -- substructures --

def center(A: FiniteDimAlgebra) -> Subspace:
    F, d = A.field, A.dim
    cols = {}
    for k in range(d):
        col: dict = {}
        for i in range(d):
            diff = dict(A.basis_product(k, i))
            axpy(F, diff, F.neg(1), A.basis_product(i, k))
            for c, x in diff.items():
                col[i * d + c] = x
        cols[k] = col
    return kernel(Matrix(F, d * d, d, cols))


def radical(A: FiniteDimAlgebra) -> Subspace:
    F, d = A.field, A.dim
    if A.is_quiver_born:
        return Subspace.span(F, d, ({i: 1} for i, p in enumerate(A.paths) if p.length > 0))
    if F.p != 0:
        raise RadicalUnavailable("radical unavailable: positive characteristic algebra without path basis")
    # x in rad  <=>  tr(L_{x b_y}) = 0 for every y
    tr = {}
    for x in range(d):
        for y in range(d):
            prod = A.basis_product(x, y)
            t = 0
            for k, c in prod.items():
                for m in range(d):
                    t += c * A.basis_product(k, m).get(m, 0)
            if t:
                tr.setdefault(x, {})[y] = t
    return kernel(Matrix(F, d, d, tr))


def socle_right(A: FiniteDimAlgebra) -> Subspace:
    """{x : x*J = 0}."""
    F, d = A.field, A.dim
    J = radical(A)
    cols = {}
    for k in range(d):
        col: dict = {}
        for r, jv in enumerate(J.basis):
            for c, x in A.multiply({k: 1}, jv).items():
                col[r * d + c] = x
        cols[k] = col
    return kernel(Matrix(F, max(1, J.dim) * d, d, cols))


@dataclass
class ReducedSpace:
    """A/(k*1): basis = the algebra basis minus one index where the unit is nonzero."""
    field: FieldDescriptor
    dropped: int
    indices: list  # algebra basis indices spanning the complement, in order
    correction: dict = dc_field(default_factory=dict)  # image of b_dropped in complement coordinates

    @property
    def dim(self) -> int:
        return len(self.indices)

    @cached_property
    def position(self) -> dict:
        return {a: i for i, a in enumerate(self.indices)}

    def project(self, v: dict) -> dict:
        """Coordinates in the complement of the class of an algebra vector."""
        F = self.field
        pos = self.position
        out: dict = {}
        for k, x in v.items():
            if k == self.dropped:
                axpy(F, out, x, self.correction)
            else:
                nv = F.add(out.get(pos[k], 0), x)
                if nv:
                    out[pos[k]] = nv
                else:
                    out.pop(pos[k], None)
        return out

    def project_basis(self, k: int) -> dict:
        if k == self.dropped:
            return self.correction
        return {self.position[k]: 1}

    def lift(self, i: int) -> int:
        return self.indices[i]


def reduced_space(A: FiniteDimAlgebra) -> ReducedSpace:
    F = A.field
    if not A.unit:
        raise AlgebraError("algebra has no unit")
    u0 = min(A.unit)
    inv = F.inv(A.unit[u0])
    indices = [i for i in range(A.dim) if i != u0]
    pos = {a: i for i, a in enumerate(indices)}
    corr = {pos[k]: F.neg(F.mul(inv, x)) for k, x in A.unit.items() if k != u0}
    return ReducedSpace(F, u0, indices, corr)


# -- basis and field changes --

def change_basis(A: FiniteDimAlgebra, columns: Sequence[dict], labels: Sequence[str] | None = None) -> FiniteDimAlgebra:
    """The same algebra written in the basis whose old-basis coordinates are ``columns``."""
    F, d = A.field, A.dim
    P = Matrix.from_columns(F, d, list(columns))
    Pinv = dense_inverse(F, _dense_raw(P))
    if Pinv is None:
        raise AlgebraError("change of basis is singular")
    Pi = Matrix.from_columns(F, d, [{i: Pinv[i][j] for i in range(d) if Pinv[i][j] != 0} for j in range(d)])
    table = {}
    for i in range(d):
        for j in range(d):
            v = Pi.apply(A.multiply(columns[i], columns[j]))
            if v:
                table[(i, j)] = v
    unit = Pi.apply(A.unit)
    labels = list(labels) if labels is not None else [f"v{i}" for i in range(d)]
    return FiniteDimAlgebra(F, labels, table, unit)


def _dense_raw(M: Matrix) -> list[list]:
    out = [[0] * M.ncols for _ in range(M.nrows)]
    for j, c in M.cols.items():
        for i, x in c.items():
            out[i][j] = x
    return out


def base_change(A: FiniteDimAlgebra, target: FieldDescriptor) -> FiniteDimAlgebra:
    """Extend scalars along the canonical embedding of prime-subfield data."""
    src = A.field
    if target == src:
        return A
    e = lambda x: embed(x, src, target)
    table = {k: {kk: e(x) for kk, x in v.items()} for k, v in A.table.items()}
    unit = {k: e(x) for k, x in A.unit.items()}
    quiver = None
    if A.quiver is not None:
        P = A.quiver
        rels = tuple(tuple((e(c), w) for c, w in rel) for rel in P.relations)
        quiver = QuiverPresentation(target, P.vertices, P.arrows, rels, P.bound)
    return FiniteDimAlgebra(target, A.labels, table, unit, paths=A.paths, quiver=quiver, verify=False)
