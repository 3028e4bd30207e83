"""Exact arithmetic in F_{p^d} with a fixed multiplicative generator.

Elements live in the polynomial basis modulo a deterministically chosen
irreducible: the construction scans monic polynomials with the constant
term varying fastest and keeps the first irreducible, then picks the
smallest field element (in the same enumeration order) of full
multiplicative order.  Reproducible runs, and traces do not depend on the
modulus choice anyway.

The sum engines never touch individual elements: they consume whole trace
tables along the generator walk, produced here in vectorized blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from sympy import factorint

SIZE_LIMIT = 2 ** 53  # keep p^d - 1 cheap to factor


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists (ascending), reduced mod `mod` and p."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    d = len(mod) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(d):
                out[i - d + j] = (out[i - d + j] - c * mod[j]) % p
    out = out[:d]
    while len(out) < d:
        out.append(0)
    return out


def _poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    d = len(mod) - 1
    result = [1] + [0] * (d - 1)
    base = a[:]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while any(b):
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    while len(b) > 1 and b[-1] == 0:
        b = b[:-1]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return a[:db] if db > 0 else [0]


def _is_irreducible(f: list[int], p: int) -> bool:
    """Monic f of degree d: irreducible iff x^{p^d} = x mod f and
    gcd(x^{p^{d/r}} - x, f) = 1 for every prime r | d."""
    d = len(f) - 1
    if d == 1:
        return True
    x = [0, 1] + [0] * (d - 2)
    xq = _poly_powmod(x, p ** d, f, p)
    if xq != x:
        return False
    for r in factorint(d):
        e = d // r
        xe = _poly_powmod(x, p ** e, f, p)
        diff = [(u - v) % p for u, v in zip(xe, x)]
        g = _poly_gcd(f, diff + [0], p)
        g = [c for c in g]
        while len(g) > 1 and g[-1] == 0:
            g.pop()
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldElem:
    field: "FiniteField"
    coeffs: tuple[int, ...]

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        F = self.field
        return FieldElem(F, tuple(_poly_mulmod(list(self.coeffs), list(other.coeffs), F.modulus, F.p)))

    def __pow__(self, e: int) -> "FieldElem":
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(F, tuple(_poly_powmod(list(self.coeffs), e, F.modulus, F.p)))

    def inverse(self) -> "FieldElem":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero field element")
        inv = self ** (self.field.order - 2)
        if not (inv * self).is_one():
            raise ArithmeticError("inversion failed (modulus not irreducible?)")
        return inv

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def _check(self, other: "FieldElem") -> None:
        if self.field is not other.field:
            raise ValueError("elements from different fields")


class FiniteField:
    """F_{p^d}: immutable after construction; shareable across threads."""

    def __init__(self, p: int, d: int, modulus: list[int], generator: tuple[int, ...],
                 trace_form: tuple[int, ...], n_factors: dict[int, int]):
        self.p = p
        self.d = d
        self.modulus = modulus          # ascending coeffs, monic, length d+1
        self.order = p ** d
        self.units = self.order - 1
        self.trace_form = trace_form    # trace of basis monomials x^0..x^{d-1}
        self.unit_factors = n_factors   # prime factorization of p^d - 1
        self.generator = FieldElem(self, generator)

    def elem(self, coeffs) -> FieldElem:
        cs = [c % self.p for c in coeffs]
        cs += [0] * (self.d - len(cs))
        return FieldElem(self, tuple(cs[:self.d]))

    def scalar(self, c: int) -> FieldElem:
        return self.elem([c])

    def one(self) -> FieldElem:
        return self.scalar(1)

    def trace(self, x: FieldElem) -> int:
        """Trace to F_p via the precomputed linear form."""
        return sum(c * t for c, t in zip(x.coeffs, self.trace_form)) % self.p

    def trace_by_frobenius(self, x: FieldElem) -> int:
        """Reference implementation: sum of x^{p^i}; used for cross-checks."""
        acc = self.elem([0])
        for i in range(self.d):
            acc = acc + x ** (self.p ** i)
        if any(acc.coeffs[1:]):
            raise AssertionError("trace fell outside the prime field")
        return acc.coeffs[0]

    def unit_walk(self) -> Iterator[tuple[int, FieldElem, int]]:
        """Yields (i, g^i, trace(g^i)) for i = 0..p^d-2, incrementally."""
        x = self.one()
        for i in range(self.units):
            yield i, x, self.trace(x)
            x = x * self.generator

    # ---- bulk tables for the sum engines ----

    def _mul_matrix(self, a: FieldElem) -> np.ndarray:
        """d x d matrix of multiplication by `a` on the polynomial basis."""
        cols = [(a * self.elem([0] * i + [1])).coeffs for i in range(self.d)]
        return np.array(cols, dtype=np.int64).T

    def trace_table(self, block: int = 4096) -> np.ndarray:
        """tr(g^i) for i = 0..p^d-2 as a uint8/int64 array, blockwise.

        Column i of a block holds g^{i0+i}; the next block is the previous
        one multiplied by g^block (a single matrix product mod p).
        """
        N, p, d = self.units, self.p, self.d
        block = min(block, N)
        tf = np.array(self.trace_form, dtype=np.int64)
        out = np.empty(N, dtype=np.int64)
        V = np.zeros((d, block), dtype=np.int64)
        x = self.one()
        for i in range(block):
            V[:, i] = x.coeffs
            x = x * self.generator
        Mb = self._mul_matrix(self.generator ** block)
        done = 0
        while done < N:
            width = min(block, N - done)
            out[done:done + width] = (tf @ V[:, :width]) % p
            done += width
            if done < N:
                V = (Mb @ V) % p
        return out

    def scalar_log_table(self) -> dict[int, int]:
        """Discrete log (base g) of every prime-field scalar unit."""
        logs: dict[int, int] = {}
        stride = self.units // (self.p - 1)
        x = self.generator ** stride
        # scalars form the unique subgroup of order p-1: multiples of stride
        acc = self.one()
        for j in range(self.p - 1):
            if any(acc.coeffs[1:]):
                raise AssertionError("subgroup walk left the prime field")
            logs[acc.coeffs[0]] = j * stride % self.units
            acc = acc * x
        if len(logs) != self.p - 1:
            raise AssertionError("scalar subgroup walk incomplete")
        return logs


def build_field(p: int, d: int) -> FiniteField:
    """Deterministic field constructor (see module docstring)."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if p ** d > SIZE_LIMIT:
        raise ValueError(f"field size p^d = {p ** d} exceeds the {SIZE_LIMIT} limit")
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"bad characteristic {p}")

    modulus = None
    for code in range(p ** d):
        cs, x = [], code
        for _ in range(d):
            cs.append(x % p)
            x //= p
        f = cs + [1]  # ascending, monic
        if _is_irreducible(f, p):
            modulus = f
            break
    if modulus is None:
        raise RuntimeError(f"no irreducible of degree {d} over F_{p}")

    # trace form: tr(x^i) = sum_j (x^i)^{p^j}
    trace_form = []
    for i in range(d):
        acc = [0] * d
        e = [0] * i + [1] + [0] * (d - i - 1)
        for j in range(d):
            conj = _poly_powmod(e, p ** j, modulus, p)
            acc = [(u + v) % p for u, v in zip(acc, conj)]
        if any(acc[1:]):
            raise AssertionError("trace of basis monomial not in prime field")
        trace_form.append(acc[0])

    n_units = p ** d - 1
    factors = dict(factorint(n_units))

    generator = None
    for code in range(2, p ** d):
        cs, x = [], code
        for _ in range(d):
            cs.append(x % p)
            x //= p
        cand = cs
        ok = True
        for r in factors:
            powed = _poly_powmod(cand, n_units // r, modulus, p)
            if powed == [1] + [0] * (d - 1):
                ok = False
                break
        if ok:
            generator = tuple(cand)
            break
    if generator is None:
        raise RuntimeError("no generator found (impossible for a field)")

    return FiniteField(p, d, modulus, generator, tuple(trace_form), factors)
