"""Independent reference computations: dense unnormalized Hochschild complexes.

Nothing here imports the package's linear algebra or complexes; algebras are
read only through their structure constants."""

import itertools
from fractions import Fraction

BIG_PRIME = 1_000_003


def to_mod(x, p):
    x = Fraction(x)
    return x.numerator % p * pow(x.denominator % p, p - 2, p) % p


def dense_rank(rows, p):
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    rk = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], p - 2, p)
        pr = [x * inv % p for x in rows[rk]]
        rows[rk] = pr
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
        rk += 1
        if rk == len(rows):
            break
    return rk


class Structure:
    """Structure constants as dense integer arrays modulo p."""

    def __init__(self, A, p=None):
        F = A.field
        self.p = p if p is not None else (F.p if F.is_finite and F.m == 1 else BIG_PRIME)
        if F.is_finite and F.m > 1:
            raise ValueError("oracle handles prime fields and Q only")
        self.d = A.dim
        conv = (lambda x: x % self.p) if F.is_finite else (lambda x: to_mod(x, self.p))
        self.c = [[[0] * self.d for _ in range(self.d)] for _ in range(self.d)]
        for (i, j), v in A.table.items():
            for k, x in v.items():
                self.c[i][j][k] = conv(x)
        self.conv = conv

    def mul(self, x, y):
        p, d = self.p, self.d
        out = [0] * d
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        for k, cc in enumerate(self.c[i][j]):
                            if cc:
                                out[k] = (out[k] + ab * cc) % p
        return out

    def e(self, i):
        v = [0] * self.d
        v[i] = 1
        return v


def _tensors(d, n):
    return list(itertools.product(range(d), repeat=n))


def cochain_differential(S, n):
    """Rows index C^{n+1} coordinates (value e at tensor t), columns C^n basis (value e at tensor t)."""
    d, p = S.d, S.p
    src = _tensors(d, n)
    tgt = _tensors(d, n + 1)
    sidx = {t: i for i, t in enumerate(src)}
    tidx = {t: i for i, t in enumerate(tgt)}
    rows = [[0] * (d * len(src)) for _ in range(d * len(tgt))]
    for col_e in range(d):
        for t in src:
            col = col_e * len(src) + sidx[t]
            # phi = e_{col_e} on tensor t, zero elsewhere
            for u in tgt:
                val = [0] * d
                # a_1 phi(a_2..)
                if u[1:] == t:
                    val = [(a + b) % p for a, b in zip(val, S.mul(S.e(u[0]), S.e(col_e)))]
                for i in range(1, n + 1):
                    prod = S.c[u[i - 1]][u[i]]
                    for k, x in enumerate(prod):
                        if x and u[:i - 1] + (k,) + u[i + 1:] == t:
                            sgn = 1 if i % 2 == 0 else -1
                            val[col_e] = (val[col_e] + sgn * x) % p
                if u[:-1] == t:
                    sgn = 1 if (n + 1) % 2 == 0 else -1
                    val = [(a + sgn * b) % p for a, b in zip(val, S.mul(S.e(col_e), S.e(u[-1])))]
                for e, x in enumerate(val):
                    if x:
                        rows[e * len(tgt) + tidx[u]][col] = x
    return rows


def twisted_chain_differential(S, n, sigma):
    """b: C_n -> C_{n-1} on A (x) A^{(x)n}; the last face is sigma(a_n) m. sigma[i] = image vector of e_i."""
    d, p = S.d, S.p
    src = _tensors(d, n)
    tgt = _tensors(d, n - 1)
    tidx = {t: i for i, t in enumerate(tgt)}
    ncols = d * len(src)
    rows = [[0] * ncols for _ in range(d * len(tgt))]
    for m in range(d):
        for si, t in enumerate(src):
            col = m * len(src) + si
            acc = {}

            def put(mv, tt, sgn):
                for k, x in enumerate(mv):
                    if x:
                        key = k * len(tgt) + tidx[tt]
                        acc[key] = (acc.get(key, 0) + sgn * x) % p

            put(S.mul(S.e(m), S.e(t[0])), t[1:], 1)
            for i in range(1, n):
                prod = S.c[t[i - 1]][t[i]]
                for k, x in enumerate(prod):
                    if x:
                        tt = t[:i - 1] + (k,) + t[i + 1:]
                        put([x if j == m else 0 for j in range(d)], tt, 1 if i % 2 == 0 else -1)
            put(S.mul(sigma[t[-1]], S.e(m)), t[:-1], 1 if n % 2 == 0 else -1)
            for key, x in acc.items():
                rows[key][col] = x
    return rows


def cohomology_dims(A, top):
    S = Structure(A)
    d = S.d
    ranks = [dense_rank(cochain_differential(S, n), S.p) for n in range(top + 1)]
    dims = [d * d ** n for n in range(top + 1)]
    return [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(top + 1)]


def twisted_homology_dims(A, sigma_matrix_cols, top):
    """sigma_matrix_cols: list of column vectors (dict index -> scalar) of the twist."""
    S = Structure(A)
    d = S.d
    sigma = [[0] * d for _ in range(d)]
    for i, col in enumerate(sigma_matrix_cols):
        for k, x in col.items():
            sigma[i][k] = S.conv(x)
    ranks = {n: dense_rank(twisted_chain_differential(S, n, sigma), S.p) for n in range(1, top + 2)}
    out = []
    for n in range(top + 1):
        dim = d * d ** n
        out.append(dim - ranks.get(n, 0) - ranks[n + 1])
    return out
