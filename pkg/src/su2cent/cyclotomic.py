"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as integer coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(N)-1) together with a common positive denominator,
reduced modulo the N-th cyclotomic polynomial.  Equality of reduced vectors
is exact equality of field elements, so no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divexact(a, b):
    # exact division of integer polynomials, quotient returned
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % b[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c // b[-1]
        if q[i] == 0:
            continue
        for j, y in enumerate(b):
            a[i + j] -= q[i] * y
    if any(a):
        raise ArithmeticError("non-exact polynomial division")
    return _poly_trim(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficient list (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    p = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, cyclotomic_polynomial(d))
    return tuple(p)


class _Context:
    """Cached reduction data for one conductor."""

    def __init__(self, n):
        self.n = n
        phi_poly = cyclotomic_polynomial(n)
        self.degree = len(phi_poly) - 1
        self.poly = phi_poly
        # power_table[j] = coefficients of zeta^j in the power basis, for
        # all exponents that can appear before reduction
        limit = max(n, 2 * self.degree - 1)
        table = []
        for j in range(self.degree):
            row = [0] * self.degree
            row[j] = 1
            table.append(tuple(row))
        for j in range(self.degree, limit):
            prev = table[j - 1]
            shifted = [0] + list(prev)
            top = shifted.pop()
            if top:
                # zeta^degree = -phi[0..degree-1] (phi is monic)
                shifted = [c - top * phi_poly[i] for i, c in enumerate(shifted)]
            table.append(tuple(shifted))
        self.power_table = table

    def reduce(self, coeffs):
        """Reduce a raw coefficient list (indexed by zeta powers) to the basis."""
        d = self.degree
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for j in range(d, len(coeffs)):
            c = coeffs[j]
            if c == 0:
                continue
            row = self.power_table[j]
            for i in range(d):
                out[i] += c * row[i]
        return out


@lru_cache(maxsize=None)
def _context(n):
    return _Context(n)


def _normalize(num, den):
    if den < 0:
        num = tuple(-x for x in num)
        den = -den
    if den != 1:
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
    if den != 1 and all(x == 0 for x in num):
        den = 1
    return num, den


class CycloNum:
    """An element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1, reduce=False):
        ctx = _context(n)
        if reduce or len(num) != ctx.degree:
            num = ctx.reduce(list(num))
        num, den = _normalize(tuple(num), den)
        self.n = n
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value, n=1):
        value = Fraction(value)
        ctx = _context(n)
        num = [0] * ctx.degree
        num[0] = value.numerator
        return CycloNum(n, num, value.denominator)

    @staticmethod
    def zero(n=1):
        return CycloNum.from_rational(0, n)

    @staticmethod
    def one(n=1):
        return CycloNum.from_rational(1, n)

    # -- queries -------------------------------------------------------

    def is_zero(self):
        return all(x == 0 for x in self.num)

    def is_rational(self):
        return all(x == 0 for x in self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational number: %r" % (self,))
        return Fraction(self.num[0], self.den)

    # -- coercion ------------------------------------------------------

    def _coerce(self, other):
        """Bring self and other to a common conductor; None if impossible."""
        if isinstance(other, CycloNum):
            if other.n == self.n:
                return self, other
            m = self.n * other.n // gcd(self.n, other.n)
            return self.embed_into(m), other.embed_into(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloNum.from_rational(other, self.n)
        return None

    # -- field operations ------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        da, db = a.den, b.den
        num = [x * db + y * da for x, y in zip(a.num, b.num)]
        return CycloNum(a.n, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.n, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum(self.n, tuple(x * other for x in self.num), self.den)
        if isinstance(other, Fraction):
            return CycloNum(
                self.n,
                tuple(x * other.numerator for x in self.num),
                self.den * other.denominator,
            )
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        # rational factors only rescale the coefficient vector
        if all(x == 0 for x in b.num[1:]):
            return CycloNum(
                a.n, tuple(x * b.num[0] for x in a.num), a.den * b.den
            )
        if all(x == 0 for x in a.num[1:]):
            return CycloNum(
                b.n, tuple(y * a.num[0] for y in b.num), a.den * b.den
            )
        d = _context(a.n).degree
        raw = [0] * (2 * d - 1)
        for i, x in enumerate(a.num):
            if x == 0:
                continue
            for j, y in enumerate(b.num):
                if y:
                    raw[i + j] += x * y
        return CycloNum(a.n, raw, a.den * b.den, reduce=True)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        ctx = _context(self.n)
        # extended euclid over Q[x] against the cyclotomic polynomial
        a = [Fraction(x, self.den) for x in self.num]
        b = [Fraction(c) for c in ctx.poly]
        sa, sb = [Fraction(1)], [Fraction(0)]
        while True:
            deg_a = len(a) - 1
            while deg_a >= 0 and a[deg_a] == 0:
                deg_a -= 1
            if deg_a <= 0:
                break
            deg_b = len(b) - 1
            while b[deg_b] == 0:
                deg_b -= 1
            if deg_b < deg_a:
                a, b, sa, sb = b, a, sb, sa
                continue
            factor = b[deg_b] / a[deg_a]
            shift = deg_b - deg_a
            for i in range(deg_a + 1):
                b[i + shift] -= factor * a[i]
            for i in range(len(sa)):
                while len(sb) < i + shift + 1:
                    sb.append(Fraction(0))
                sb[i + shift] -= factor * sa[i]
        const = a[0]
        inv = [c / const for c in sa]
        den = 1
        for c in inv:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycloNum(self.n, [int(c * den) for c in inv], den, reduce=True)

    def __truediv__(self, other):
        if isinstance(other, int):
            return CycloNum(self.n, self.num, self.den * other)
        if isinstance(other, Fraction):
            return self * Fraction(other.denominator, other.numerator)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        """Complex conjugation, zeta -> zeta^(n-1)."""
        return self.galois(-1)

    def galois(self, a):
        """Field automorphism zeta -> zeta^a (a must be coprime to n)."""
        n = self.n
        a %= n
        if gcd(a, n) != 1:
            raise ValueError("automorphism exponent not coprime to conductor")
        raw = [0] * n if n > 1 else [0]
        for j, c in enumerate(self.num):
            raw[(a * j) % n] += c
        return CycloNum(n, raw, self.den, reduce=True)

    def embed_into(self, m):
        """Value-preserving embedding into Q(zeta_m); m must be a multiple of n."""
        if m % self.n != 0:
            raise ValueError("conductor %d does not divide %d" % (self.n, m))
        if m == self.n:
            return self
        step = m // self.n
        raw = [0] * ((len(self.num) - 1) * step + 1)
        for j, c in enumerate(self.num):
            raw[j * step] = c
        return CycloNum(m, raw, self.den, reduce=True)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.from_rational(other, self.n)
        if not isinstance(other, CycloNum):
            return NotImplemented
        if other.n != self.n:
            pair = self._coerce(other)
            a, b = pair
            return a.num == b.num and a.den == b.den
        return self.num == other.num and self.den == other.den

    __hash__ = None

    # -- serialization ---------------------------------------------------

    def key(self):
        """Hashable canonical key (conductor kept as given)."""
        return (self.n, self.num, self.den)

    def to_json(self):
        terms = [
            [j, str(Fraction(c, self.den))]
            for j, c in enumerate(self.num)
            if c != 0
        ]
        return {"conductor": self.n, "terms": terms}

    @staticmethod
    def from_json(data):
        n = data["conductor"]
        ctx = _context(n)
        num = [Fraction(0)] * ctx.degree
        for j, text in data["terms"]:
            num[j] = Fraction(text)
        den = 1
        for c in num:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycloNum(n, [int(c * den) for c in num], den)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.num):
            if c == 0:
                continue
            coeff = Fraction(c, self.den)
            if j == 0:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("z%d^%d" % (self.n, j))
            else:
                parts.append("%s*z%d^%d" % (coeff, self.n, j))
        return " + ".join(parts)


def root_of_unity(n, j=1):
    """zeta_n^j as a CycloNum of conductor n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    j %= n
    raw = [0] * (j + 1)
    raw[j] = 1
    return CycloNum(n, raw, 1, reduce=True)


def imaginary_unit(n=4):
    """i = zeta_4 embedded into conductor n (n must be divisible by 4)."""
    return root_of_unity(4).embed_into(n)
