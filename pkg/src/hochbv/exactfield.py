"""Exact scalars over Q and GF(p^m), and univariate polynomials over them.

Matrices elsewhere in the package store *raw* scalars for speed:

* over Q a raw scalar is an ``int`` or a ``fractions.Fraction``;
* over GF(p^m) it is an ``int`` in ``range(p**m)`` whose base-p digits are the
  coefficients of the residue polynomial in ``t`` (lowest degree first).

:class:`FieldElement` wraps a raw scalar together with its field for the
public, operator-overloaded API.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence


class FieldMismatchError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over GF(p) on plain coefficient lists (low -> high) --

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = c
        for i, bi in enumerate(b):
            a[s + i] = (a[s + i] - c * bi) % p
        _trim(a)
    return _trim(q), a


def _pmod_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _pmod_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pmod_divmod(_pmod_mul(result, base, p), mod, p)[1]
        base = _pmod_divmod(_pmod_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Rabin's test for a monic f over GF(p)."""
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    x = [0, 1]
    for d in range(1, m // 2 + 1):
        h = _pmod_powmod(x, p ** d, f, p)
        h = _trim([(a - b) % p for a, b in zip(h + [0] * 2, x + [0] * len(h))])
        if len(_pmod_gcd(f, h, p)) > 1:
            return False
    h = _pmod_powmod(x, p ** m, f, p)
    h = _trim([(a - b) % p for a, b in zip(h + [0] * 2, x + [0] * len(h))])
    return not h


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over GF(p) with the smallest coefficient code.

    Candidates t^m + sum c_i t^i are enumerated by the integer sum c_i p^i.
    """
    for code in range(p ** m):
        coeffs = [(code // p ** i) % p for i in range(m)] + [1]
        if coeffs[0] == 0 and m > 1:
            continue
        if _is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- field descriptors --

@dataclass(frozen=True)
class FieldDescriptor:
    """Q (``p == 0``) or GF(p^m) with a fixed defining polynomial."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if self.p == 0:
            if self.m != 1 or self.modulus:
                raise ValueError("Q takes no extension data")
            return
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.m > 1:
            mod = tuple(self.modulus) or least_irreducible(self.p, self.m)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise ValueError("defining polynomial must be monic of degree m")
            if not _is_irreducible_mod_p(list(mod), self.p):
                raise ValueError("defining polynomial is reducible")
            object.__setattr__(self, "modulus", mod)

    # -- identity --

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "finite"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def order(self) -> int:
        return self.p ** self.m if self.p else 0

    def __str__(self) -> str:
        if self.p == 0:
            return "Q"
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    __repr__ = __str__

    # -- raw scalar arithmetic --

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n: int):
        if self.p == 0:
            return n
        return n % self.p

    def from_fraction(self, x: Fraction):
        x = Fraction(x)
        if self.p == 0:
            return x.numerator if x.denominator == 1 else x
        num = self.from_int(x.numerator)
        den = self.from_int(x.denominator)
        if den == 0:
            raise ZeroDivisionError(f"{x} has no image in {self}")
        return self.div(num, den)

    @cached_property
    def _tables(self):
        # addition/multiplication tables for proper extensions
        q, p, m = self.order, self.p, self.m
        digits = [[(a // p ** i) % p for i in range(m)] for a in range(q)]
        enc = [p ** i for i in range(m)]
        add = [[sum(((da[i] + db[i]) % p) * enc[i] for i in range(m)) for db in digits] for da in digits]
        neg = [sum(((-d) % p) * enc[i] for i, d in enumerate(da)) for da in digits]
        mod = list(self.modulus)
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                r = _pmod_divmod(_pmod_mul(_trim(list(digits[a])), _trim(list(digits[b])), p), mod, p)[1]
                v = sum(c * enc[i] for i, c in enumerate(r))
                mul[a][b] = mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return add, neg, mul, inv

    def add(self, a, b):
        if self.p == 0:
            return a + b
        if self.m == 1:
            return (a + b) % self.p
        return self._tables[0][a][b]

    def sub(self, a, b):
        if self.p == 0:
            return a - b
        if self.m == 1:
            return (a - b) % self.p
        t = self._tables
        return t[0][a][t[1][b]]

    def neg(self, a):
        if self.p == 0:
            return -a
        if self.m == 1:
            return -a % self.p
        return self._tables[1][a]

    def mul(self, a, b):
        if self.p == 0:
            return a * b
        if self.m == 1:
            return a * b % self.p
        return self._tables[2][a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.p == 0:
            return Fraction(1, a) if isinstance(a, int) else 1 / a
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._tables[3][a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> Iterator:
        if self.p == 0:
            raise ValueError("Q is infinite")
        return iter(range(self.order))

    def canonical(self, a):
        """Canonical raw form (Q: int when integral)."""
        if self.p == 0 and isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    # -- text --

    def format(self, a) -> str:
        if self.p == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.m == 1:
            return str(a)
        digits = [(a // self.p ** i) % self.p for i in range(self.m)]
        terms = []
        for i in reversed(range(self.m)):
            c = digits[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text) -> object:
        """Parse ``"a/b"`` over Q or a polynomial expression in ``t`` over GF(p^m)."""
        if isinstance(text, bool):
            raise ValueError("booleans are not scalars")
        if isinstance(text, int):
            return self.from_int(text)
        if isinstance(text, Fraction):
            return self.from_fraction(text)
        s = str(text).replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if self.p == 0 or self.m == 1:
            try:
                return self.from_fraction(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad scalar {text!r} for {self}") from exc
        # polynomial in t
        acc = 0
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            mt = re.fullmatch(r"(?:(\d+)\*?)?(t(?:\^(\d+))?)?", term)
            if not mt or (mt.group(1) is None and mt.group(2) is None):
                raise ValueError(f"bad scalar {text!r} for {self}")
            c = int(mt.group(1)) if mt.group(1) else 1
            e = 0 if mt.group(2) is None else int(mt.group(3) or 1)
            val = self.mul(self.from_int(c), self.pow(self.generator, e))
            acc = self.sub(acc, val) if sign == "-" else self.add(acc, val)
        return acc

    @property
    def generator(self):
        """Raw encoding of ``t`` (the class of the polynomial variable)."""
        if self.p == 0 or self.m == 1:
            raise ValueError(f"{self} has no adjoined generator")
        return self.p

    def element(self, value) -> "FieldElement":
        """Wrap an int, Fraction or string spelling as a :class:`FieldElement`."""
        return FieldElement(self, self.canonical(self.parse(value)))


Q = FieldDescriptor(0)


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1) -> FieldDescriptor:
    return FieldDescriptor(p, m)


def parse_field(text: str) -> FieldDescriptor:
    """``"Q"``, ``"GF(p)"`` or ``"GF(p^m)"``."""
    s = text.replace(" ", "")
    if s in ("Q", "QQ"):
        return Q
    mt = re.fullmatch(r"GF\((\d+)(?:\^(\d+))?\)", s)
    if not mt:
        raise ValueError(f"unknown field spelling {text!r}")
    p, m = int(mt.group(1)), int(mt.group(2) or 1)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return GF(p, m)


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    raw: object

    def _other(self, other) -> object:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return NotImplemented

    def _wrap(self, raw) -> "FieldElement":
        return FieldElement(self.field, self.field.canonical(raw))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.raw))

    def __neg__(self):
        return self._wrap(self.field.neg(self.raw))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            try:
                return self.raw == self.field.from_fraction(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return self.raw != 0

    def __str__(self):
        return self.field.format(self.raw)

    def __repr__(self):
        return f"{self.field}({self})"


# -- polynomials --

class Polynomial:
    """Univariate polynomial with raw coefficients, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: Sequence = ()):
        c = [field.canonical(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: FieldDescriptor) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field: FieldDescriptor, roots) -> "Polynomial":
        f = cls(field, (1,))
        for r in roots:
            r = r.raw if isinstance(r, FieldElement) else r
            f = f * cls(field, (field.neg(r), 1))
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _check(self, other: "Polynomial"):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [self.field.neg(x) for x in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        F = self.field
        if not isinstance(other, Polynomial):
            other = Polynomial(F, (other.raw if isinstance(other, FieldElement) else other,))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, out)

    def __pow__(self, e: int) -> "Polynomial":
        r = Polynomial(self.field, (1,))
        for _ in range(e):
            r = r * self
        return r

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        a = list(self.coeffs)
        b = other.coeffs
        inv = F.inv(b[-1])
        q = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and a:
            c = F.mul(a[-1], inv)
            s = len(a) - len(b)
            q[s] = c
            for i, bi in enumerate(b):
                a[s + i] = F.sub(a[s + i], F.mul(c, bi))
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        return Polynomial(F, q), Polynomial(F, a)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.field.inv(self.coeffs[-1])
        return Polynomial(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        F = self.field
        raw = x.raw if isinstance(x, FieldElement) else x
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, raw), c)
        return FieldElement(F, F.canonical(acc)) if isinstance(x, FieldElement) else acc

    def __str__(self):
        if self.is_zero():
            return "0"
        F = self.field
        parts = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = F.format(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial[{self.field}]({self})"


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree(f: Polynomial) -> bool:
    if f.is_zero():
        raise ValueError("the zero polynomial has no squarefree status")
    d = f.derivative()
    if d.is_zero():
        # constant, or a p-th power in characteristic p (perfect field)
        return f.degree == 0
    return poly_gcd(f, d).degree == 0


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def roots_in_field(f: Polynomial) -> list[FieldElement]:
    """All roots of f lying in its coefficient field, repeated by multiplicity."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    F = f.field
    roots: list = []
    g = f
    if F.is_finite:
        candidates = list(F.elements())
    else:
        # rational root search on the primitive integer form
        while g.coeffs and g.coeffs[0] == 0:
            roots.append(0)
            g = g // Polynomial.x(F)
        if g.degree <= 0:
            return [FieldElement(F, r) for r in roots]
        den = math.lcm(*(Fraction(c).denominator for c in g.coeffs))
        ints = [int(Fraction(c) * den) for c in g.coeffs]
        candidates = sorted({s * Fraction(a, b)
                             for a in _integer_divisors(ints[0])
                             for b in _integer_divisors(ints[-1])
                             for s in (1, -1)})
        candidates = [F.canonical(c) for c in candidates]
    for r in candidates:
        lin = Polynomial(F, (F.neg(r), 1))
        while g.degree >= 1:
            q, rem = divmod(g, lin)
            if not rem.is_zero():
                break
            roots.append(r)
            g = q
    return [FieldElement(F, F.canonical(r)) for r in roots]


def splitting_extension(f: Polynomial) -> FieldDescriptor:
    """Smallest GF(p^e) over which f (with GF(p) coefficients) splits."""
    F = f.field
    if not F.is_finite:
        raise ValueError("splitting extensions are only built over finite fields")
    if F.m != 1:
        raise ValueError("splitting extensions are only built over prime fields")
    if f.is_zero():
        raise ValueError("zero polynomial")
    p = F.p
    rest = list(f.monic().coeffs)
    degrees: set[int] = set()
    i = 0
    while len(rest) > 1:
        i += 1
        h = _pmod_powmod([0, 1], p ** i, rest, p)
        h = _trim([(a - b) % p for a, b in zip(h + [0, 0], [0, 1] + [0] * len(h))])
        g = _pmod_gcd(rest, h, p)
        if len(g) > 1:
            degrees.add(i)
            while len(g) > 1:
                rest = _pmod_divmod(rest, g, p)[0]
                g = _pmod_gcd(rest, g, p)
    e = math.lcm(*degrees) if degrees else 1
    return GF(p, e)


def embed(x, source: FieldDescriptor, target: FieldDescriptor):
    """Image of a raw scalar under the prime-field (or identity) embedding."""
    if source == target:
        return x
    if source.p != target.p:
        raise FieldMismatchError(f"cannot embed {source} in {target}")
    if source.m != 1:
        raise ValueError("only prime-field scalars are embedded")
    return target.from_int(x)
