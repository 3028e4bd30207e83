"""Exact arithmetic in Z[zeta_p] and the pi-adic valuation, pi = 1 - zeta_p.

Elements are stored in the power basis zeta^0..zeta^{p-2}, canonical modulo
the p-th cyclotomic polynomial via zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
The valuation works by repeated exact division by pi:

    x is divisible by pi  iff  x(1) = 0 mod p       (zeta = 1 mod pi)
    when it is, z(T) = x(T) - (x(1)/p) Phi_p(T) has z(1) = 0, so z is
    exactly divisible by (1 - T); the quotient represents x / pi.

ord_p is the pi-valuation divided by p - 1, since p factors as
unit * pi^{p-1} (the extension Q_p(zeta_p)/Q_p is totally ramified).
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import gcd


class CycInt:
    """Element of Z[zeta_p]; immutable; coefficients are arbitrary ints."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} coefficients for p={p}, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CycInt is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_int(cls, p: int, value: int) -> "CycInt":
        return cls(p, (value,) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, v: int) -> "CycInt":
        v %= p
        if v == p - 1:
            return cls(p, (-1,) * (p - 1))
        c = [0] * (p - 1)
        c[v] = 1
        return cls(p, c)

    @classmethod
    def from_exponent_histogram(cls, p: int, hist) -> "CycInt":
        """sum_v hist[v] * zeta^v for a length-p histogram."""
        if len(hist) != p:
            raise ValueError(f"need {p} buckets, got {len(hist)}")
        last = hist[p - 1]
        return cls(p, [int(h) - int(last) for h in hist[:p - 1]])

    # ---- ring ops ----

    def _same(self, other: "CycInt") -> None:
        if not isinstance(other, CycInt) or other.p != self.p:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._same(other)
        return CycInt(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._same(other)
        return CycInt(self.p, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, (a * other for a in self.coeffs))
        self._same(other)
        p = self.p
        folded = [0] * p  # exponents mod p first
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        folded[(i + j) % p] += a * b
        return CycInt.from_exponent_histogram(p, folded)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CycInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt(p={self.p}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def eval_at_one(self) -> int:
        return sum(self.coeffs)

    def divide_int_exact(self, k: int) -> "CycInt":
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"coefficients not divisible by {k}")
        return CycInt(self.p, (c // k for c in self.coeffs))

    def conjugate(self, j: int) -> "CycInt":
        """Galois map zeta -> zeta^j, 1 <= j <= p-1."""
        if math.gcd(j, self.p) != 1:
            raise ValueError(f"conjugation index {j} not coprime to {self.p}")
        folded = [0] * self.p
        for i, a in enumerate(self.coeffs):
            folded[(i * j) % self.p] += a
        return CycInt.from_exponent_histogram(self.p, folded)

    def divide_exact(self, other: "CycInt") -> "CycInt":
        """Exact quotient self/other in Z[zeta_p]; raises if not exact.

        Multiplies by the product of the nontrivial conjugates of `other`
        (so the denominator becomes the rational integer N(other)), divides
        coefficientwise, then verifies by remultiplication.
        """
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Z[zeta_p]")
        p = self.p
        cofactor = CycInt.from_int(p, 1)
        for j in range(2, p):
            cofactor = cofactor * other.conjugate(j)
        norm_elem = other * cofactor
        if any(norm_elem.coeffs[1:]):
            raise AssertionError("norm is not a rational integer")
        norm = norm_elem.coeffs[0]
        quotient = (self * cofactor).divide_int_exact(norm)
        if quotient * other != self:
            raise ArithmeticError("division not exact in Z[zeta_p]")
        return quotient

    def complex_value(self) -> complex:
        """Floating image under zeta -> exp(2*pi*i/p); for approximate checks."""
        out = 0j
        for i, c in enumerate(self.coeffs):
            out += c * complex(math.cos(2 * math.pi * i / self.p),
                               math.sin(2 * math.pi * i / self.p))
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, p: int, data) -> "CycInt":
        return cls(p, (int(s) for s in data))


def pi_valuation(x: CycInt):
    """Largest v with pi^v | x (pi = 1 - zeta); math.inf for x = 0."""
    if x.is_zero():
        return math.inf
    p = x.p
    c = list(x.coeffs)
    v = 0
    while True:
        s = sum(c)
        if s % p:
            return v
        u = s // p
        # z = x - u*Phi_p has z(1) = 0; divide by (1 - T): prefix sums
        z = [ci - u for ci in c]
        w = []
        acc = 0
        for zi in z:
            acc += zi
            w.append(acc)
        # the top coefficient of the full z is -u; consistency: acc = u
        if acc != u:
            raise AssertionError("synthetic division out of balance")
        c = w
        v += 1


def ord_p(x: CycInt) -> Fraction:
    """pi_valuation / (p - 1) as an exact rational; rejects zero."""
    if x.is_zero():
        raise ValueError("ord_p of zero is infinite")
    return Fraction(pi_valuation(x), x.p - 1)


class CycRat:
    """Quotient num/den with num in Z[zeta_p], den a positive integer."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycInt, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = 0
        for c in num.coeffs:
            g = gcd(g, c)
        g = gcd(g, den)
        if g > 1:
            num = num.divide_int_exact(g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("CycRat is immutable")

    def __add__(self, other: "CycRat") -> "CycRat":
        return CycRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "CycRat") -> "CycRat":
        return CycRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> "CycRat":
        if isinstance(other, CycRat):
            return CycRat(self.num * other.num, self.den * other.den)
        if isinstance(other, CycInt):
            return CycRat(self.num * other, self.den)
        return CycRat(self.num * other, self.den)

    def divide_by_int(self, k: int) -> "CycRat":
        return CycRat(self.num, self.den * k)

    def is_integral(self) -> bool:
        return self.den == 1

    def as_integer(self) -> CycInt:
        if self.den != 1:
            raise ArithmeticError(f"value has denominator {self.den}, expected 1")
        return self.num

    def __eq__(self, other) -> bool:
        return (isinstance(other, CycRat) and self.num == other.num
                and self.den == other.den)

    def __repr__(self):
        return f"CycRat({self.num!r}/{self.den})"
