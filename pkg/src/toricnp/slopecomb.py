"""Slope combinatorics: the residue matrix alpha, the permutation g, minimal
assignment costs, determinant and factorial-congruence checks, and the
predicted Newton polygon they produce.

For p coprime to n, alpha(n, p, i, j) = (i - p*j) mod n is the cost matrix
whose minimal assignment values N_m (over permutations of {0..m-1}) drive
how far the Newton slopes of the family x^n + y + t/(xy) can drift from the
Hodge slopes i/n.  The drift of slope i is (2n+1)*B_i / (n(p-1)) with
B_m = N_{m+1} - N_m, and the second half of the polygon is pinned to the
first by the symmetry s_i + s_{2n-i} = 2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment
from sympy import isprime

from .geometry import PolygonData

EXHAUSTIVE_LIMIT = 9  # full permutation scan up to this m; solver beyond


@dataclass(frozen=True)
class FamilyParams:
    n: int
    p: int
    a: int = 1
    t_residue: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.p % self.n == 0:
            raise ValueError(f"p={self.p} divides n={self.n}: family is degenerate")
        if self.a < 1:
            raise ValueError("extension degree a must be >= 1")
        if not 1 <= self.t_residue <= self.p - 1:
            raise ValueError(f"t must be a nonzero residue mod {self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.a

    def to_json_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "a": self.a, "t": self.t_residue}


def alpha(n: int, p: int, i: int, j: int) -> int:
    """Cost-matrix entry i - p*j + n*ceil((p*j - i)/n), always in [0, n-1]."""
    if n < 2 or not isprime(p):
        raise ValueError(f"need n >= 2 and p prime, got n={n}, p={p}")
    val = i - p * j + n * (-((i - p * j) // n))
    assert val == (i - p * j) % n
    return val


def g_map(n: int, p: int) -> list[int]:
    """The permutation of {0..2n} sending i to (w*i mod n), shifted by n on
    the upper block, where w is the inverse of p mod n.  Fixes 0, n, 2n;
    is the identity exactly when p = 1 mod n.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    try:
        w = pow(p, -1, n)
    except ValueError:
        raise ValueError(f"gcd(p, n) must be 1, got p={p}, n={n}") from None
    out = []
    for i in range(2 * n + 1):
        if i in (0, n, 2 * n):
            out.append(i)
        elif i < n:
            out.append(w * i % n)
        else:
            out.append(n + w * i % n)
    return out


@dataclass(frozen=True)
class AssignmentResult:
    m: int
    N_m: int
    minimizer_count: Optional[int]
    witness: tuple[int, ...]


def minimal_assignment(n: int, p: int, m: int) -> AssignmentResult:
    """Minimum of sum_i alpha(n, p, i, perm(i)) over permutations of {0..m-1}.

    Always solved with a min-cost assignment solver; for m <= 9 an
    exhaustive permutation scan runs as well, must agree, and supplies the
    number of minimizers (the solver alone only certifies one witness).
    """
    if not 1 <= m <= n + 1:
        raise ValueError(f"m must be in 1..n+1, got m={m} with n={n}")
    cost = np.array([[alpha(n, p, i, j) for j in range(m)] for i in range(m)])
    rows, cols = linear_sum_assignment(cost)
    solver_min = int(cost[rows, cols].sum())
    solver_witness = tuple(int(c) for c in cols)

    if m > EXHAUSTIVE_LIMIT:
        return AssignmentResult(m=m, N_m=solver_min, minimizer_count=None,
                                witness=solver_witness)

    best, count, witness = None, 0, None
    rows_list = cost.tolist()
    for perm in itertools.permutations(range(m)):
        s = sum(rows_list[i][perm[i]] for i in range(m))
        if best is None or s < best:
            best, count, witness = s, 1, perm
        elif s == best:
            count += 1
    if best != solver_min:
        raise AssertionError(
            f"assignment solvers disagree at (n={n}, p={p}, m={m}): "
            f"exhaustive {best} vs solver {solver_min}")
    return AssignmentResult(m=m, N_m=int(best), minimizer_count=count, witness=witness)


def b_sequence(n: int, p: int) -> list[int]:
    """First differences B_m = N_{m+1} - N_m for m = 0..n, with N_0 = 0."""
    if p <= n:
        raise ValueError(f"need p > n, got p={p}, n={n}")
    N = [0] + [minimal_assignment(n, p, m).N_m for m in range(1, n + 2)]
    return [N[m + 1] - N[m] for m in range(n + 1)]


@dataclass(frozen=True)
class Assumption14Report:
    n: int
    per_m: dict[int, dict]
    overall: bool

    def max_dets(self) -> list[int]:
        return [self.per_m[m]["M_n_m"] for m in sorted(self.per_m)]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "per_m": {str(m): dict(v) for m, v in sorted(self.per_m.items())},
            "overall": self.overall,
        }


def _det_bareiss(mat: list[list[int]]) -> int:
    """Fraction-free exact integer determinant."""
    m = [row[:] for row in mat]
    sz = len(m)
    sign, prev = 1, 1
    for k in range(sz - 1):
        if m[k][k] == 0:
            for r in range(k + 1, sz):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, sz):
            for j in range(k + 1, sz):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def vandermonde_report(n: int) -> Assumption14Report:
    """Determinant scan of the matrices V(x_0..x_{m-1}) with entry
    (r, c) = prod_{j<c} (x_r - j)^2, over all x_0 < ... < x_{m-1} in [0, n-1],
    for each m in 0..n-1.  Records whether every determinant is nonzero and
    the largest |det| per m (row order only flips the sign, so increasing
    subsets suffice).  Conventions: det = 1 for m in {0, 1}.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    per_m: dict[int, dict] = {}
    for m in range(n):
        if m <= 1:
            per_m[m] = {"all_nonzero": True, "M_n_m": 1}
            continue
        all_nonzero, maxdet = True, 0

        def vrow(x: int) -> list[int]:
            row, prod = [], 1
            for c in range(m):
                row.append(prod)
                prod *= (x - c) ** 2
            return row

        for xs in itertools.combinations(range(n), m):
            det = _det_bareiss([vrow(x) for x in xs])
            if det == 0:
                all_nonzero = False
            maxdet = max(maxdet, abs(det))
        per_m[m] = {"all_nonzero": all_nonzero, "M_n_m": maxdet}
    return Assumption14Report(n=n, per_m=per_m,
                              overall=all(v["all_nonzero"] for v in per_m.values()))


def assumption16(n: int, p: int) -> dict:
    """Sharpness of the factorial congruence (k-1)!(p-k)! = (-1)^k mod p.

    For k in 1..n-1 computes v_k = ord_p((k-1)!(p-k)! - (-1)^k), which is
    >= 1 by Wilson's theorem; ok means every v_k is exactly 1.  Fails at
    k = 1 precisely for Wilson primes (5, 13, 563, ...).
    """
    if p <= n:
        raise ValueError(f"need p > n, got p={p}, n={n}")
    per_k = []
    fact = [1] * (p + 1)
    for i in range(2, p + 1):
        fact[i] = fact[i - 1] * i
    for k in range(1, n):
        val = fact[k - 1] * fact[p - k] - (-1) ** k
        v = 0
        while val % p == 0:
            val //= p
            v += 1
        per_k.append(v)
    return {"ok": all(v == 1 for v in per_k), "per_k": per_k}


def prime_bounds(n: int) -> dict:
    """Prime thresholds above which the slope formula is certified.

    thm15 = max(M_n(0..n-1), 2n^3 - n^2 - n + 1); thm17 = 4n^4 + 4n^3 + 3n^2 + n + 1.
    """
    report = vandermonde_report(n)
    if not report.overall:
        raise ArithmeticError(f"determinant scan found a zero for n={n}; "
                              "slope bounds are undefined")
    thm15 = max(report.max_dets() + [2 * n ** 3 - n ** 2 - n + 1])
    thm17 = 4 * n ** 4 + 4 * n ** 3 + 3 * n ** 2 + n + 1
    return {"thm15": thm15, "thm17": thm17}


@dataclass(frozen=True)
class PredictionReport:
    params: FamilyParams
    B: tuple[int, ...]
    polygon: PolygonData
    ordinary: bool
    p_bound_thm15: int
    p_bound_thm17: int
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "B": list(self.B),
            "polygon": self.polygon.to_json_dict(),
            "ordinary": self.ordinary,
            "p_bound_thm15": self.p_bound_thm15,
            "p_bound_thm17": self.p_bound_thm17,
            "warnings": list(self.warnings),
        }


def predicted_slopes(n: int, p: int) -> list[Fraction]:
    """Slope list of length 2n+1: i/n + (2n+1)B_i/(n(p-1)) on the first half,
    i/n - (2n+1)B_{2n-i}/(n(p-1)) on the second."""
    B = b_sequence(n, p)
    scale = Fraction(2 * n + 1, n * (p - 1))
    out = []
    for i in range(2 * n + 1):
        if i <= n:
            out.append(Fraction(i, n) + scale * B[i])
        else:
            out.append(Fraction(i, n) - scale * B[2 * n - i])
    return out


def predicted_np(n: int, p: int) -> PredictionReport:
    """Predicted Newton polygon, exact, with bound warnings.

    Below the certified prime bound the formula is still evaluated and
    returned, flagged as informational (useful for small-p comparisons and
    the large-p limit scan).
    """
    params = FamilyParams(n=n, p=p)
    if p <= n:
        raise ValueError(f"slope prediction needs p > n, got p={p}, n={n}")
    B = tuple(b_sequence(n, p))
    slopes = predicted_slopes(n, p)
    bounds = prime_bounds(n)
    warnings = []
    if p <= bounds["thm15"]:
        warnings.append(
            f"p={p} is not above the certified bound {bounds['thm15']}; "
            "the predicted polygon is informational only")
    if any(s2 < s1 for s1, s2 in zip(slopes, slopes[1:])):
        warnings.append("predicted slope list is not nondecreasing")
    for i in range(2 * n + 1):
        assert slopes[i] + slopes[2 * n - i] == 2, "slope symmetry violated"
    return PredictionReport(
        params=params,
        B=B,
        polygon=PolygonData.from_slopes(slopes),
        ordinary=(p % n == 1),
        p_bound_thm15=bounds["thm15"],
        p_bound_thm17=bounds["thm17"],
        warnings=tuple(warnings),
    )
