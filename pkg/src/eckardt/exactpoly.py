"""Exact arithmetic over Q: sparse multivariate polynomials, binary forms,
rational matrices, resultants and gcds.

Coefficients are :class:`fractions.Fraction`; nothing in this module touches
floating point except :meth:`BinForm.roots`, which is explicitly numeric.
Monomials are exponent tuples ordered graded-lexicographically with
``x0 > x1 > ...``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Exp = tuple[int, ...]
FracMat = list[list[Fraction]]

# Large prime for modular rank certificates; p**2 fits in int64.
MODULUS = 2_147_483_647


class PolyError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"refusing to coerce {type(x).__name__} to an exact rational")


def frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def order_key(e: Exp) -> tuple:
    """Sort key for grlex; use with ``reverse=True`` for canonical order."""
    return (sum(e), e)


@lru_cache(maxsize=None)
def graded_basis(nvars: int, d: int) -> tuple[Exp, ...]:
    """All degree-``d`` monomials in ``nvars`` variables, canonical order."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in graded_basis(nvars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict[Exp, int]:
    return {e: i for i, e in enumerate(graded_basis(nvars, d))}


class Poly:
    """Sparse polynomial with rational coefficients in ``nvars`` variables.

    Instances are treated as immutable. Arithmetic operators accept ints and
    Fractions as scalars.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | Iterable[tuple[Exp, object]] = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exp, Fraction] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise PolyError(f"bad exponent {e} for {nvars} variables")
            c = as_fraction(c)
            if c:
                s = clean.get(e, 0) + c
                if s:
                    clean[e] = s
                else:
                    clean.pop(e, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exp, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        if not 0 <= i < nvars:
            raise PolyError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Exp, c=1) -> "Poly":
        return cls(len(e), {e: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # basic queries
    def items(self) -> Iterator[tuple[Exp, Fraction]]:
        return iter(self._terms.items())

    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def coeff(self, e: Exp) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    # arithmetic
    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise PolyError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(as_fraction(other), self.nvars)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return self.exact_div(other)
        return self.scale(1 / as_fraction(other))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PolyError("negative power")
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
            )
            if mono:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                parts.append(f"{coef}{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    # calculus and substitution
    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise PolyError(f"derivative index {i} out of range")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Poly._raw(self.nvars, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise PolyError("point has wrong length")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        if isinstance(total, Fraction) or isinstance(total, int):
            return Fraction(total)
        return total

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute ``subs[i]`` for ``x_i``; result lives in subs' ring."""
        if len(subs) != self.nvars:
            raise PolyError("need one substitution per variable")
        if not subs:
            return self
        m = subs[0].nvars
        for s in subs:
            if s.nvars != m:
                raise PolyError("substitutions must share a ring")
        powers: list[list[Poly]] = [[Poly.const(1, m)] for _ in subs]

        def pw(i: int, k: int) -> Poly:
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * subs[i])
            return cache[k]

        out: dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            term = Poly.const(c, m)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for e2, c2 in term._terms.items():
                out[e2] = out.get(e2, 0) + c2
        return Poly._raw(m, {e: c for e, c in out.items() if c})

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Rename variable ``i`` to ``positions[i]`` in a ring of ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise PolyError("positions must match nvars")
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * nvars
            for i, k in zip(positions, e):
                e2[i] += k
            out[tuple(e2)] = c
        return Poly._raw(nvars, out)

    def split_by(self, idx: Sequence[int]) -> dict[Exp, "Poly"]:
        """Group terms by the exponents of the variables in ``idx``.

        Values are polynomials in the remaining variables, in index order.
        """
        idx = list(idx)
        rest = [i for i in range(self.nvars) if i not in idx]
        groups: dict[Exp, dict[Exp, Fraction]] = {}
        for e, c in self._terms.items():
            key = tuple(e[i] for i in idx)
            groups.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: Poly._raw(len(rest), v) for k, v in groups.items()}

    def set_zero(self, i: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self._terms.items() if not e[i]})

    def drop_var(self, i: int) -> "Poly":
        """Remove variable ``i`` (which must not occur)."""
        if any(e[i] for e in self._terms):
            raise PolyError(f"x{i} occurs in polynomial")
        return Poly._raw(self.nvars - 1, {e[:i] + e[i + 1:]: c for e, c in self._terms.items()})

    # normalisation
    def integer_primitive(self) -> tuple[Fraction, "Poly"]:
        """Return ``(s, P)`` with ``self == s * P``, P integral and primitive."""
        if not self._terms:
            return Fraction(1), self
        den = lcm(*(c.denominator for c in self._terms.values()))
        nums = [int(c * den) for c in self._terms.values()]
        g = gcd(*nums)
        s = Fraction(g, den)
        return s, self.scale(1 / s)

    def leading_term(self) -> tuple[Exp, Fraction]:
        return max(self._terms.items(), key=lambda t: order_key(t[0]))

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact division; raises :class:`PolyError` on nonzero remainder."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading_term()
        rem = dict(self._terms)
        quot: dict[Exp, Fraction] = {}
        while rem:
            e, c = max(rem.items(), key=lambda t: order_key(t[0]))
            diff = tuple(a - b for a, b in zip(e, le))
            if min(diff) < 0:
                raise PolyError("not divisible")
            q = c / lc
            quot[diff] = quot.get(diff, 0) + q
            for e2, c2 in divisor._terms.items():
                e3 = tuple(a + b for a, b in zip(diff, e2))
                v = rem.get(e3, 0) - q * c2
                if v:
                    rem[e3] = v
                else:
                    rem.pop(e3, None)
        return Poly._raw(self.nvars, {e: c for e, c in quot.items() if c})

    # serialisation
    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [[frac_str(c), list(e)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly":
        try:
            n = int(obj["nvars"])
            terms = [(tuple(e), Fraction(str(c))) for c, e in obj["terms"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise PolyError(f"malformed polynomial object: {exc}") from exc
        return cls(n, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> "Poly":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolyError(f"malformed polynomial text: {exc}") from exc
        return cls.from_json(obj)


def variables(n: int) -> list[Poly]:
    return [Poly.var(i, n) for i in range(n)]


# ----------------------------------------------------------------------------
# binary forms
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BinForm:
    """Binary form ``sum_i coeffs[i] * u^(d-i) * v^i``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise PolyError("binary form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> "BinForm":
        if p.nvars != 2:
            raise PolyError("binary form needs a polynomial in 2 variables")
        if not p.is_homogeneous():
            raise PolyError("binary form must be homogeneous")
        d = p.degree if degree is None else degree
        if d < 0:
            raise PolyError("cannot infer degree of the zero form")
        if p and p.degree != d:
            raise PolyError("degree mismatch")
        return cls(tuple(p.coeff((d - i, i)) for i in range(d + 1)))

    def to_poly(self) -> Poly:
        d = self.degree
        return Poly(2, {(d - i, i): c for i, c in enumerate(self.coeffs)})

    def __mul__(self, other: "BinForm") -> "BinForm":
        return BinForm.from_poly(self.to_poly() * other.to_poly(), self.degree + other.degree)

    def scale(self, c) -> "BinForm":
        c = as_fraction(c)
        return BinForm(tuple(c * a for a in self.coeffs))

    def evaluate(self, u, v):
        d = self.degree
        return sum(c * u ** (d - i) * v**i for i, c in enumerate(self.coeffs))

    def leading(self) -> Fraction:
        return next((c for c in self.coeffs if c), Fraction(0))

    def normalized(self) -> "BinForm":
        """Integral, content 1, first nonzero coefficient positive."""
        if self.is_zero():
            return self
        s, p = self.to_poly().integer_primitive()
        out = BinForm.from_poly(p, self.degree)
        return out.scale(-1) if out.leading() < 0 else out

    def infinity_multiplicity(self) -> int:
        """Multiplicity of the root ``[1:0]`` (number of leading zeros)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.degree

    def affine(self) -> list[Fraction]:
        """``self(u, 1)`` as ascending coefficient list in ``u``."""
        return list(reversed(self.coeffs))

    def roots(self) -> list[tuple[complex, complex]]:
        """Numeric roots on P^1 with multiplicity, as normalised pairs."""
        if self.is_zero():
            raise PolyError("zero form has no finite root set")
        m = self.infinity_multiplicity()
        out = [(1 + 0j, 0j)] * m
        desc = [float(c) for c in self.coeffs[m:]]
        if len(desc) > 1:
            out += [(complex(z), 1 + 0j) for z in np.roots(desc)]
        return out

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [frac_str(c) for c in self.coeffs]}


# ----------------------------------------------------------------------------
# univariate helpers (ascending Fraction lists)
# ----------------------------------------------------------------------------

def _trim(a: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _udeg(a) -> int:
    return len(a) - 1


def _uderiv(a):
    return _trim([i * c for i, c in enumerate(a)][1:])


def _usub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _udivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] -= c * bc
        r = _trim(r)
    return _trim(q), r


def _uprem(a, b):
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b``."""
    delta = _udeg(a) - _udeg(b)
    _, r = _udivmod([c * b[-1] ** (delta + 1) for c in a], b)
    return r


def _umonic(a):
    a = _trim(a)
    return [c / a[-1] for c in a] if a else a


def subresultant_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd of univariate polynomials via the subresultant PRS."""
    a = _trim([as_fraction(c) for c in a])
    b = _trim([as_fraction(c) for c in b])
    if not a:
        return _umonic(b)
    if not b:
        return _umonic(a)
    if _udeg(a) < _udeg(b):
        a, b = b, a
    g = h = Fraction(1)
    while True:
        delta = _udeg(a) - _udeg(b)
        r = _uprem(a, b)
        if not r:
            return _umonic(b)
        if _udeg(r) == 0:
            return [Fraction(1)]
        a, b = b, [c / (g * h**delta) for c in r]
        g = a[-1]
        h = h ** (1 - delta) * g**delta


def squarefree_decomposition(a: Sequence) -> tuple[Fraction, list[list[Fraction]]]:
    """Yun's algorithm: ``a = lc * prod(f_i ** (i+1))`` with monic squarefree f_i."""
    a = _trim([as_fraction(c) for c in a])
    if not a:
        raise PolyError("zero polynomial")
    lc = a[-1]
    a = _umonic(a)
    if _udeg(a) == 0:
        return lc, []
    da = _uderiv(a)
    g = subresultant_gcd(a, da)
    b, _ = _udivmod(a, g)
    c, _ = _udivmod(da, g)
    d = _usub(c, _uderiv(b))
    out = []
    while _udeg(b) > 0:
        f = subresultant_gcd(b, d)
        out.append(f)
        b, _ = _udivmod(b, f)
        c, _ = _udivmod(d, f)
        d = _usub(c, _uderiv(b))
    while out and _udeg(out[-1]) == 0:
        out.pop()
    return lc, out


def _umul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _homogenize(a: list[Fraction], degree: int) -> BinForm:
    """Binary form of given degree whose dehomogenisation ``v=1`` is ``a``."""
    a = list(a) + [Fraction(0)] * (degree + 1 - len(a))
    return BinForm(tuple(reversed(a)))


def binary_gcd(a: BinForm, b: BinForm) -> BinForm:
    """Greatest common divisor of two nonzero binary forms (normalised)."""
    if a.is_zero() or b.is_zero():
        raise PolyError("gcd of zero form")
    m = min(a.infinity_multiplicity(), b.infinity_multiplicity())
    g = subresultant_gcd(a.affine(), b.affine())
    return _homogenize(g, _udeg(g) + m).normalized()


def is_squarefree(b: BinForm) -> bool:
    if b.is_zero():
        return False
    if b.infinity_multiplicity() > 1:
        return False
    aff = _trim(b.affine())
    return _udeg(subresultant_gcd(aff, _uderiv(aff))) <= 0


def distinct_root_count(b: BinForm) -> int:
    if b.is_zero():
        raise PolyError("zero form")
    _, parts = squarefree_decomposition(b.affine())
    return sum(_udeg(f) for f in parts) + (1 if b.infinity_multiplicity() else 0)


def square_decomposition(b: BinForm) -> tuple[Fraction, BinForm] | None:
    """Write ``b = s * r**2`` with ``r`` normalised; ``None`` if impossible."""
    if b.degree % 2:
        raise PolyError("odd degree form cannot be a square")
    if b.is_zero():
        raise PolyError("zero form")
    m = b.infinity_multiplicity()
    if m % 2:
        return None
    lc, parts = squarefree_decomposition(b.affine())
    root = [Fraction(1)]
    for i, f in enumerate(parts):
        mult = i + 1
        if _udeg(f) > 0 and mult % 2:
            return None
        for _ in range(mult // 2):
            root = _umul(root, f)
    r = _homogenize(root, b.degree // 2).normalized()
    rr = r * r
    k = next(i for i, c in enumerate(rr.coeffs) if c)
    s = b.coeffs[k] / rr.coeffs[k]
    if rr.scale(s) != b:
        raise AssertionError("square decomposition failed to reassemble")
    return s, r


def binary_square_root(b: BinForm) -> BinForm | None:
    """Normalised ``r`` with ``b`` a rational multiple of ``r**2``, or ``None``."""
    out = square_decomposition(b)
    return None if out is None else out[1]


def resultant_binary(a: BinForm, b: BinForm) -> Fraction:
    """Sylvester resultant of binary forms with their formal degrees."""
    if a.is_zero() or b.is_zero():
        raise PolyError("resultant of zero form")
    m, n = a.degree, b.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(a.coeffs) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(b.coeffs) + [Fraction(0)] * (size - n - 1 - i))
    return determinant(rows)


def discriminant_binary(b: BinForm) -> Fraction:
    """Resultant of the two partial derivatives (zero iff a repeated root)."""
    p = b.to_poly()
    return resultant_binary(
        BinForm.from_poly(p.diff(0), b.degree - 1), BinForm.from_poly(p.diff(1), b.degree - 1)
    )


# ----------------------------------------------------------------------------
# exact linear algebra
# ----------------------------------------------------------------------------

def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in M:
        row = [as_fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss(A: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """In-place fraction-free elimination; returns (echelon, pivot cols, sign)."""
    m = len(A)
    n = len(A[0]) if m else 0
    prev = 1
    r = 0
    sign = 1
    pivots = []
    for c in range(n):
        if r == m:
            break
        i = next((i for i in range(r, m) if A[i][c]), None)
        if i is None:
            continue
        if i != r:
            A[r], A[i] = A[i], A[r]
            sign = -sign
        pr = A[r]
        p = pr[c]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (p * row[j] - a * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return A, pivots, sign


def determinant(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if any(len(r) != n for r in M):
        raise PolyError("determinant of non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [[as_fraction(x) for x in r] for r in M]
    den = 1
    ints = []
    for row in rows:
        d = lcm(*(x.denominator for x in row))
        den *= d
        ints.append([int(x * d) for x in row])
    A, pivots, sign = _bareiss(ints)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * A[n - 1][n - 1], den)


def kernel_and_rank(M: Sequence[Sequence], ncols: int | None = None) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and a kernel basis of ``M`` by Bareiss elimination.

    Kernel vectors have a 1 in one free column and 0 in the other free columns.
    """
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    if any(len(r) != n for r in M):
        raise PolyError("ragged matrix")
    if not M:
        return 0, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    A, pivots, _ = _bareiss(_integer_rows(M))
    rank = len(pivots)
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            c = pivots[r]
            s = sum((A[r][j] * x[j] for j in range(c + 1, n) if A[r][j]), Fraction(0))
            x[c] = -s / A[r][c]
        kernel.append(tuple(x))
    return rank, kernel


def rank_mod_p(rows: Sequence[dict[int, int]], ncols: int, p: int = MODULUS) -> int:
    """Rank modulo ``p`` of sparse integer rows (a lower bound for the rank over Q)."""
    if not rows or not ncols:
        return 0
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in row.items():
            A[i, j] = v % p
    rank = 0
    m = A.shape[0]
    for c in range(ncols):
        if rank == m:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if not len(nz):
            continue
        i = rank + nz[0]
        if i != rank:
            A[[rank, i]] = A[[i, rank]]
        inv = pow(int(A[rank, c]), p - 2, p)
        A[rank] = (A[rank] * inv) % p
        below = A[rank + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + rank + 1
            A[idx] = (A[idx] - np.outer(below[mask], A[rank]) % p) % p
        rank += 1
    return rank


class SparseEchelon:
    """Incremental fraction-free echelon form of sparse integer row vectors.

    Each stored row is primitive with a positive entry at its pivot, which is
    its smallest column. Used for rank and normal forms of graded pieces.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict[int, int]) -> tuple[dict[int, int], int]:
        scale = 1
        v = {k: x for k, x in v.items() if x}
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v, scale
            c = min(hits)
            r = self.rows[c]
            a, p = v[c], r[c]
            g = gcd(a, p)
            mv, mr = p // g, a // g
            out = {k: mv * x for k, x in v.items()}
            for k, x in r.items():
                y = out.get(k, 0) - mr * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            scale *= mv
            cont = gcd(*out.values()) if out else 1
            if cont > 1:
                out = {k: x // cont for k, x in out.items()}
                scale = Fraction(scale, cont)
            v = out

    def add(self, v: Mapping[int, int]) -> bool:
        """Insert a row; return True if it increased the rank."""
        w, _ = self._reduce(dict(v))
        if not w:
            return False
        c = min(w)
        g = gcd(*w.values())
        if w[c] < 0:
            g = -g
        self.rows[c] = {k: x // g for k, x in w.items()}
        return True

    def normal_form(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Unique representative of ``v`` modulo the row span (no pivot columns)."""
        v = {k: as_fraction(x) for k, x in v.items() if x}
        if not v:
            return {}
        den = lcm(*(x.denominator for x in v.values()))
        w, scale = self._reduce({k: int(x * den) for k, x in v.items()})
        factor = Fraction(1) / (Fraction(scale) * den)
        return {k: x * factor for k, x in w.items()}

    def pivots(self) -> list[int]:
        return sorted(self.rows)


# ----------------------------------------------------------------------------
# linear changes of coordinates
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearChange:
    """Invertible matrix acting by ``p -> p(T x)``, i.e. ``x_i -> sum_j T[i][j] x_j``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(as_fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(r) != n for r in m):
            raise PolyError("linear change must be square")
        if determinant(m) == 0:
            raise PolyError("singular linear change")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "LinearChange":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "LinearChange":
        n = len(cols)
        return cls(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "LinearChange":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.matrix)

    def det(self) -> Fraction:
        return determinant(self.matrix)

    def is_identity(self) -> bool:
        return self == LinearChange.identity(self.n)

    def is_diagonal(self) -> bool:
        return all(not x for i, r in enumerate(self.matrix) for j, x in enumerate(r) if i != j)

    def __matmul__(self, other: "LinearChange") -> "LinearChange":
        n = self.n
        a, b = self.matrix, other.matrix
        return LinearChange(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        )

    def apply_point(self, x: Sequence):
        return tuple(sum(r[j] * x[j] for j in range(self.n)) for r in self.matrix)

    def inverse(self) -> "LinearChange":
        n = self.n
        A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.matrix)]
        for c in range(n):
            p = next(i for i in range(c, n) if A[i][c])
            A[c], A[p] = A[p], A[c]
            piv = A[c][c]
            A[c] = [x / piv for x in A[c]]
            for i in range(n):
                if i != c and A[i][c]:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        return LinearChange(tuple(tuple(r[n:]) for r in A))

    def extend(self, total: int) -> "LinearChange":
        """Block-diagonal extension fixing the trailing coordinates."""
        n = self.n
        return LinearChange(
            tuple(
                tuple(self.matrix[i][j] if i < n and j < n else int(i == j) for j in range(total))
                for i in range(total)
            )
        )

    def to_json(self) -> list[list[str]]:
        return [[frac_str(x) for x in r] for r in self.matrix]


def apply_linear_change(p: Poly, T: LinearChange) -> Poly:
    """The polynomial ``x -> p(T x)``."""
    if T.n != p.nvars:
        raise PolyError("dimension mismatch between polynomial and linear change")
    if T.is_diagonal():
        d = [T.matrix[i][i] for i in range(T.n)]
        out = {}
        for e, c in p.items():
            for x, k in zip(d, e):
                c = c * x**k
            out[e] = c
        return Poly(p.nvars, out)
    forms = [Poly.linear(row) for row in T.matrix]
    return p.compose(forms)


def complete_basis(
    vectors: Sequence[Sequence],
    n: int,
    candidates: Sequence[Sequence] | None = None,
    target: int | None = None,
) -> list[tuple[Fraction, ...]]:
    """Extend independent ``vectors`` greedily from ``candidates`` (default: standard basis)
    to ``target`` vectors (default ``n``)."""
    target = n if target is None else target
    basis = [tuple(as_fraction(x) for x in v) for v in vectors]
    if kernel_and_rank(basis, n)[0] != len(basis):
        raise PolyError("vectors are dependent")
    if candidates is None:
        candidates = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    extra = []
    for c in candidates:
        if len(basis) + len(extra) == target:
            break
        trial = basis + extra + [tuple(as_fraction(x) for x in c)]
        if kernel_and_rank(trial, n)[0] == len(trial):
            extra.append(trial[-1])
    if len(basis) + len(extra) != target:
        raise PolyError("candidates do not complete a basis")
    return extra


def parse_vector(items: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(str(x)) for x in items)
