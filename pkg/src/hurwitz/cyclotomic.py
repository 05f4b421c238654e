"""Exact arithmetic in cyclotomic fields Q(zeta_N) with rational coefficients.

Values are polynomials in zeta_N reduced modulo the N-th cyclotomic
polynomial, so two equal values with the same conductor have identical
coefficient vectors.  Mixed-conductor arithmetic lifts both operands to the
lcm conductor.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rat = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# -- dense polynomial helpers over Fraction (lowest degree first) --

def _poly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / Fraction(b[-1])
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] -= coef * y
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_xgcd(a: list, b: list) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [_ONE], []
    t0, t1 = [], [_ONE]
    while _poly_trim(list(r1)):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n, lowest degree first."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    poly = [_ZERO] * n + [_ONE]
    poly[0] = Fraction(-1)  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


def _reduce_mod_phi(coeffs: list, n: int) -> tuple:
    phi = list(cyclotomic_polynomial(n))
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    # first fold exponents mod n (zeta_n^n = 1), then reduce mod Phi_n
    folded = [_ZERO] * n
    for i, x in enumerate(c):
        if x:
            folded[i % n] += x
    _, rem = _poly_divmod(folded, phi)
    rem = rem + [_ZERO] * (deg - len(rem))
    return tuple(rem[:deg])


class Cyclotomic:
    """An element of Q(zeta_N), canonically reduced mod Phi_N."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Rat]):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.coeffs = _reduce_mod_phi(list(coeffs), n)

    # -- constructors --

    @staticmethod
    def from_rational(q: Rat) -> "Cyclotomic":
        return Cyclotomic(1, [Fraction(q)])

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclotomic":
        c = [_ZERO] * n
        c[k % n] = _ONE
        return Cyclotomic(n, c)

    # -- coercion --

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x)
        return NotImplemented

    def lift(self, m: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_m), where n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("can only lift to a multiple of the conductor")
        step = m // self.n
        c = [_ZERO] * m
        for i, x in enumerate(self.coeffs):
            if x:
                c[i * step] += x
        return Cyclotomic(m, c)

    def _pair(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- ring operations --

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return Cyclotomic(a.n, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        phi = list(cyclotomic_polynomial(self.n))
        g, s, _ = _poly_xgcd(list(self.coeffs), phi)
        # g is a nonzero constant
        assert len(g) == 1
        return Cyclotomic(self.n, [x / g[0] for x in s])

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- Galois action --

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("galois exponent not coprime to conductor")
        c = [_ZERO] * self.n
        for i, x in enumerate(self.coeffs):
            if x:
                c[(i * k) % self.n] += x
        return Cyclotomic(self.n, c)

    def conj(self) -> "Cyclotomic":
        return self.galois(self.n - 1) if self.n > 2 else self

    # -- predicates --

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else _ZERO

    def descend(self) -> "Cyclotomic":
        """Rewrite with the smallest conductor d | n containing the value."""
        if self.is_rational():
            return self if self.n == 1 else Cyclotomic(1, [self.to_fraction()])
        for d in sorted(x for x in range(2, self.n) if self.n % x == 0):
            fixed = all(
                self.galois(k) == self
                for k in range(2, self.n)
                if math.gcd(k, self.n) == 1 and k % d == 1
            )
            if not fixed:
                continue
            down = self._express_in(d)
            if down is not None:
                return down
        return self

    def _express_in(self, d: int):
        """Solve for coefficients over the basis zeta_d^j, or None."""
        n, step = self.n, self.n // d
        deg_n, deg_d = euler_phi(n), euler_phi(d)
        # columns: reduced coordinates (in Q(zeta_n)) of zeta_d^j
        cols = [Cyclotomic.zeta(n, j * step).coeffs for j in range(deg_d)]
        target = list(self.coeffs)
        # Gaussian elimination on the deg_n x deg_d system
        rows = [[cols[j][i] for j in range(deg_d)] + [target[i]]
                for i in range(deg_n)]
        pivots = []
        r = 0
        for c in range(deg_d):
            pr = next((i for i in range(r, deg_n) if rows[i][c] != 0), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(deg_n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        sol = [_ZERO] * deg_d
        for i, c in enumerate(pivots):
            sol[c] = rows[i][-1]
        for i in range(r, deg_n):
            if rows[i][-1] != 0:
                return None
        cand = Cyclotomic(d, sol)
        return cand if cand.lift(n) == self else None

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        c = self.descend()
        return hash((c.n, c.coeffs))

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for i, x in enumerate(self.coeffs):
            if x:
                if i == 0:
                    terms.append(str(x))
                elif i == 1:
                    terms.append(f"{x}*z{self.n}")
                else:
                    terms.append(f"{x}*z{self.n}^{i}")
        return " + ".join(terms) if terms else "0"
