"""Newton polytope geometry for the family f_t(x, y) = x^n + y + t/(xy).

The Newton polytope of f_t is the triangle Delta with vertices (-1, -1),
(n, 0) and (0, 1).  Everything in this module is a function of n alone:
the weight of a lattice point (the smallest dilation c >= 0 with the point
in c*Delta), the lattice points collected by weight level, the resulting
Hodge numbers, and the Hodge polygon they span.

All arithmetic is exact; weights and slopes are `fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple


class LatticePoint(NamedTuple):
    a: int
    b: int


def weight(n: int, pt: LatticePoint | tuple[int, int]) -> Fraction:
    """Smallest c >= 0 with pt inside the c-fold dilation of the triangle.

    Closed form: a/n + b + ((2n+1)/n) * max(0, -a, -b).
    """
    if n < 2:
        raise ValueError(f"family degree n must be >= 2, got {n}")
    a, b = pt
    return Fraction(a, n) + b + Fraction(2 * n + 1, n) * max(0, -a, -b)


@dataclass(frozen=True)
class WeightLevel:
    n: int
    k: int
    points: tuple[LatticePoint, ...]
    count: int


def enumerate_weight_level(n: int, k: int) -> WeightLevel:
    """All lattice points of weight exactly k/n.

    Points of weight k/n lie in (k/n)*Delta, which the box
    -ceil(k/n)-1 <= a <= k, -ceil(k/n)-1 <= b <= ceil(k/n)+1 contains;
    scan it and keep exact matches.
    """
    if n < 2 or k < 0:
        raise ValueError(f"need n >= 2 and k >= 0, got n={n}, k={k}")
    target = Fraction(k, n)
    ceil_kn = -(-k // n)
    lo = -ceil_kn - 1
    pts = [
        LatticePoint(a, b)
        for a in range(lo, k + 1)
        for b in range(lo, ceil_kn + 2)
        if weight(n, (a, b)) == target
    ]
    pts.sort()
    return WeightLevel(n=n, k=k, points=tuple(pts), count=len(pts))


@dataclass(frozen=True)
class PolygonData:
    """A lower-convex polygon anchored at (0, 0).

    `slopes` is the canonical form: one entry per unit of horizontal
    length, nondecreasing for a convex chain.  `vertices` is the hull
    with collinear interior points removed.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[Fraction, ...]

    @classmethod
    def from_slopes(cls, slopes: Iterable[Fraction]) -> "PolygonData":
        slopes = tuple(Fraction(s) for s in slopes)
        verts: list[tuple[int, Fraction]] = [(0, Fraction(0))]
        y = Fraction(0)
        for i, s in enumerate(slopes):
            y += s
            if i + 1 < len(slopes) and slopes[i + 1] == s:
                continue
            verts.append((i + 1, y))
        return cls(vertices=tuple(verts), slopes=slopes)

    @classmethod
    def lower_hull(cls, points: Iterable[tuple[int, Fraction]]) -> "PolygonData":
        """Lower convex hull of exact points with integer x; expands slopes."""
        pts = sorted(points)
        if not pts or pts[0] != (0, Fraction(0)):
            raise ValueError("polygon must be anchored at (0, 0)")
        hull: list[tuple[int, Fraction]] = []
        for pt in pts:
            hull.append(pt)
            while len(hull) >= 3:
                (x1, y1), (x2, y2), (x3, y3) = hull[-3:]
                # middle point on or above the chord: drop it
                if (y2 - y1) * (x3 - x2) >= (y3 - y2) * (x2 - x1):
                    del hull[-2]
                else:
                    break
        slopes: list[Fraction] = []
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            slopes.extend([Fraction(y2 - y1, x2 - x1)] * (x2 - x1))
        return cls(vertices=tuple(hull), slopes=tuple(slopes))

    @property
    def endpoint(self) -> tuple[int, Fraction]:
        return self.vertices[-1]

    def y_at(self, x: int) -> Fraction:
        if not 0 <= x <= len(self.slopes):
            raise ValueError(f"x={x} outside polygon range")
        return sum(self.slopes[:x], Fraction(0))

    def dominates(self, other: "PolygonData") -> bool:
        """True when self lies on or above `other` at every integer x."""
        if len(self.slopes) != len(other.slopes):
            return False
        return all(self.y_at(x) >= other.y_at(x) for x in range(len(self.slopes) + 1))

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[x, [y.numerator, y.denominator]] for x, y in self.vertices],
            "slopes": [[s.numerator, s.denominator] for s in self.slopes],
        }


@dataclass(frozen=True)
class HodgeData:
    n: int
    W: tuple[int, ...]
    H: tuple[int, ...]
    polygon: PolygonData

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "W": list(self.W),
            "H": list(self.H),
            "polygon": self.polygon.to_json_dict(),
        }


def hodge_numbers(n: int) -> HodgeData:
    """Weight-level counts W(k) and Hodge numbers H(k) for k = 0..2n.

    H(k) = sum_{i>=0} (-1)^i C(2, i) W(k - i*n); their total must equal
    2n+1, the lattice volume of the triangle.
    """
    W = tuple(enumerate_weight_level(n, k).count for k in range(2 * n + 1))
    H = []
    for k in range(2 * n + 1):
        h = sum((-1) ** i * comb(2, i) * W[k - i * n] for i in range(3) if k - i * n >= 0)
        H.append(h)
    if any(h < 0 for h in H) or sum(H) != 2 * n + 1:
        raise AssertionError(f"inconsistent Hodge numbers for n={n}: {H}")
    return HodgeData(n=n, W=W, H=tuple(H), polygon=PolygonData(vertices=(), slopes=()))


def hodge_polygon(n: int) -> PolygonData:
    """Hodge polygon: slope k/n with multiplicity H(k), joined left to right."""
    data = hodge_numbers(n)
    slopes: list[Fraction] = []
    for k, h in enumerate(data.H):
        slopes.extend([Fraction(k, n)] * h)
    return PolygonData.from_slopes(slopes)


def hodge_data(n: int) -> HodgeData:
    """`hodge_numbers` with the polygon filled in."""
    base = hodge_numbers(n)
    return HodgeData(n=base.n, W=base.W, H=base.H, polygon=hodge_polygon(n))
