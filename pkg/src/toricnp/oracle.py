"""Ground-truth engine: exact toric sums S*_k, L-polynomial recovery,
functional-equation completion, and the true Newton polygon.

Pipeline for the family c1*x^n + c2*y + c3*t/(xy) over F_p:

  1. S*_k = sum over (x,y) in (F*_{p^k})^2 of zeta^{tr(f)}, computed as an
     exact histogram of trace values (convolve module) and folded into a
     single cyclotomic integer.
  2. Newton's identities turn S*_1..S*_K into elementary symmetric
     coefficients e_0..e_K of the reciprocal roots; every division must
     land back in Z[zeta_p].
  3. The reciprocal roots of the degree-(2n+1) L-polynomial pair up with
     those of a companion sum (t -> -t for odd n, x^n -> -x^n for even n)
     under beta -> p^2/beta.  That functional equation converts the
     companion's low coefficients into our high ones, so only k <= n+1
     sums are ever needed on each side.
  4. The q-adic valuations of the coefficients give the Newton polygon by
     lower convex hull.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime

from .convolve import SumEngine
from .cyclo import CycInt, CycRat, ord_p, pi_valuation
from .geometry import PolygonData, hodge_polygon
from .slopecomb import FamilyParams, predicted_np


class DegenerateCompletionError(ArithmeticError):
    """The companion coefficient that anchors the functional equation is 0."""


@dataclass(frozen=True)
class SumSpec:
    """One exponential sum: c1*x^n + c2*y + (c3*t)/(x*y) over (F*_{p^k})^2."""

    n: int
    p: int
    k: int
    c1: int
    c2: int
    c3: int
    t_residue: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n % self.p == 0:
            raise ValueError(f"p={self.p} divides n={self.n}")
        if self.k < 1:
            raise ValueError(f"need k >= 1, got {self.k}")
        for name in ("c1", "c2", "c3", "t_residue"):
            v = getattr(self, name)
            if not 1 <= v <= self.p - 1:
                raise ValueError(f"{name}={v} outside 1..{self.p - 1}")

    @property
    def c3t(self) -> int:
        return self.c3 * self.t_residue % self.p


# engines are expensive to build (full generator walk); keep small ones
_ENGINE_CACHE: dict[tuple[int, int], SumEngine] = {}
_ENGINE_CACHE_MAX_UNITS = 10 ** 6


def _get_engine(p: int, k: int, threads: int = 1,
                mem_budget_bytes: int | None = None) -> SumEngine:
    eng = _ENGINE_CACHE.get((p, k))
    if eng is None:
        eng = SumEngine(p, k, threads=threads, mem_budget_bytes=mem_budget_bytes)
        if eng.N <= _ENGINE_CACHE_MAX_UNITS:
            _ENGINE_CACHE[(p, k)] = eng
    else:
        eng.threads = max(1, threads)
    return eng


def toric_sum(spec: SumSpec, algorithm: str = "auto", threads: int = 1,
              mem_budget_bytes: int | None = None) -> CycInt:
    """Exact value of the sum described by `spec`, as a CycInt.

    algorithm: "naive" (all p^{2k} pairs, capped at 1e9), "convolution"
    (p^k capped at 1e8), or "auto".  Both paths are exact and must agree.
    """
    engine = _get_engine(spec.p, spec.k, threads, mem_budget_bytes)
    hist = engine.histogram(spec.n, spec.c1, spec.c2, spec.c3t, algorithm)
    return CycInt.from_exponent_histogram(spec.p, hist)


def lpoly_from_power_sums(p: int, S: list[CycInt]) -> list[CycInt]:
    """Newton's identities: power sums S_1..S_K -> e_0..e_K.

    k*e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} S_i, carried in CycRat;
    raises ArithmeticError if any e_k fails to be a cyclotomic integer
    (which would mean the sums are corrupted).
    """
    if not S:
        raise ValueError("need at least one power sum")
    e: list[CycRat] = [CycRat(CycInt.from_int(p, 1))]
    for k in range(1, len(S) + 1):
        acc = CycRat(CycInt.zero(p))
        for i in range(1, k + 1):
            term = e[k - i] * S[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc.divide_by_int(k))
    return [ek.as_integer() for ek in e]


def companion_coefficients(n: int, p: int, t_residue: int) -> tuple[int, int, int, int]:
    """(c1, c2, c3, t) of the sum whose roots pair with ours under
    beta -> p^2/beta: t -> -t for odd n, x^n -> -x^n for even n."""
    if n % 2 == 1:
        return 1, 1, 1, p - t_residue
    return p - 1, 1, 1, t_residue


def complete_by_functional_equation(n: int, p: int, e_f: list[CycInt],
                                    e_c: list[CycInt]) -> list[CycInt]:
    """Extend e_0..e_{n+1} of the main sum to the full e_0..e_{2n+1}.

    Uses e_c[j] * e_{2n+1} = p^{2j} * e_{2n+1-j} (the root pairing between
    the two sums): j = n pins e_{2n+1}, j = n-1..1 fill e_{n+2}..e_{2n}.
    Every division must be exact in Z[zeta_p] and every index pair is
    re-checked at the end.
    """
    if len(e_f) != n + 2 or len(e_c) != n + 1:
        raise ValueError(f"need e_f[0..{n + 1}] and e_c[0..{n}], "
                         f"got lengths {len(e_f)}, {len(e_c)}")
    one = CycInt.from_int(p, 1)
    if e_f[0] != one or e_c[0] != one:
        raise ValueError("e_0 must equal 1 on both sides")
    if e_c[n].is_zero():
        raise DegenerateCompletionError(
            f"companion e_{n} is zero; the functional equation cannot pin "
            "the top coefficient")
    e_top = (e_f[n + 1] * p ** (2 * n)).divide_exact(e_c[n])
    if e_top.is_zero():
        raise ArithmeticError("completion gives a zero top coefficient; "
                              "the polynomial would drop degree")
    full = list(e_f) + [CycInt.zero(p)] * (n - 1) + [e_top]
    for j in range(1, n):
        full[2 * n + 1 - j] = (e_c[j] * e_top).divide_int_exact(p ** (2 * j))
    for j in range(n + 1):
        if e_c[j] * e_top != full[2 * n + 1 - j] * p ** (2 * j):
            raise ArithmeticError(f"functional-equation cross-check failed at j={j}")
    return full


@dataclass(frozen=True)
class LPolynomial:
    """Reciprocal L-polynomial: L^{-1}(T) = sum (-1)^j e_j T^j over Z[zeta_p]."""

    p: int
    a: int                          # base field is F_{p^a}; the oracle emits a = 1
    coeffs: tuple[CycInt, ...]      # e_0 .. e_degree

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        if self.coeffs[0] != CycInt.from_int(self.p, 1):
            raise ValueError("e_0 must be 1")
        if self.coeffs[-1].is_zero():
            raise ValueError("leading coefficient is zero; trim to true degree")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json_dict(self) -> dict:
        return {"p": self.p, "a": self.a,
                "coeffs": [c.to_json() for c in self.coeffs]}


def newton_polygon_of(lpoly: LPolynomial) -> PolygonData:
    """Lower convex hull of (k, ord_q e_k); zero coefficients contribute
    no point (their valuation is infinite)."""
    pts = []
    for k, e in enumerate(lpoly.coeffs):
        if e.is_zero():
            continue
        pts.append((k, Fraction(pi_valuation(e), (lpoly.p - 1) * lpoly.a)))
    return PolygonData.lower_hull(pts)


def reciprocal_root_moduli(lpoly: LPolynomial) -> np.ndarray:
    """|beta| for every reciprocal root, under zeta -> exp(2*pi*i/p).

    Floating-point companion to the exact pipeline; purity says every
    modulus is p^a on the nose.
    """
    cs = [(-1) ** j * e.complex_value() for j, e in enumerate(lpoly.coeffs)]
    return np.abs(1.0 / np.roots(cs[::-1]))


@dataclass(frozen=True)
class OracleReport:
    params: FamilyParams
    lpoly: LPolynomial
    coefficient_ords: tuple[Fraction | None, ...]  # None marks a zero coefficient
    polygon: PolygonData
    hodge_ok: bool
    prediction_match: bool | None   # None when no prediction exists (p <= n)
    warnings: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "lpoly": self.lpoly.to_json_dict(),
            "coefficient_ords": [
                None if o is None else [o.numerator, o.denominator]
                for o in self.coefficient_ords],
            "polygon": self.polygon.to_json_dict(),
            "hodge_ok": self.hodge_ok,
            "prediction_match": self.prediction_match,
            "warnings": list(self.warnings),
        }


def oracle_np(n: int, p: int, t_residue: int, algorithm: str = "auto",
              threads: int = 1, mem_budget_bytes: int | None = None,
              max_k_budget: int | None = None) -> OracleReport:
    """Full exact pipeline for one t; see oracle_np_batch."""
    return oracle_np_batch(n, p, [t_residue], algorithm=algorithm,
                           threads=threads, mem_budget_bytes=mem_budget_bytes,
                           max_k_budget=max_k_budget)[0]


def oracle_np_batch(n: int, p: int, ts: list[int], *, algorithm: str = "auto",
                    threads: int = 1, mem_budget_bytes: int | None = None,
                    max_k_budget: int | None = None) -> list[OracleReport]:
    """Exact Newton polygons for several t values of the same (n, p).

    Batching matters: the field walk and (on the convolution path) the
    per-root convolutions depend only on (p, k) and the x^n coefficient,
    so every t and both sides of the functional equation share them.
    """
    if n < 2:
        raise ValueError(f"the family needs n >= 2, got {n}")
    if not isprime(p):
        raise ValueError(f"p={p} is not prime")
    if n % p == 0:
        raise ValueError(f"p={p} divides n={n}")
    if not ts:
        raise ValueError("no t values given")
    for t in ts:
        if not 1 <= t <= p - 1:
            raise ValueError(f"t={t} outside 1..{p - 1}")

    kf, kc = n + 1, n
    budget = kf if max_k_budget is None else max_k_budget
    if budget < kf:
        raise ValueError(f"max_k_budget={budget} is below the k <= {kf} sums "
                         "the completion needs")
    comp_c1 = companion_coefficients(n, p, 1)[0]

    S_f: dict[int, dict[int, CycInt]] = {t: {} for t in ts}
    S_c: dict[int, dict[int, CycInt]] = {t: {} for t in ts}
    for k in range(1, kf + 1):
        engine = _get_engine(p, k, threads, mem_budget_bytes)
        algo = algorithm
        if algo == "auto":
            algo = "naive" if engine.N * engine.N <= 10 ** 7 else "convolution"
        # group the needed (c1, shift) pairs so convolutions are shared
        groups: dict[int, list[tuple[int, str, int]]] = {}
        for t in ts:
            groups.setdefault(1, []).append((t, "f", t))
            if k <= kc:
                cc1 = comp_c1
                cshift = companion_coefficients(n, p, t)[3]
                groups.setdefault(cc1, []).append((cshift, "c", t))
        for c1, entries in groups.items():
            shifts = []
            for shift, _, _ in entries:
                if shift not in shifts:
                    shifts.append(shift)
            if algo == "convolution":
                hists = engine.histograms_convolution(n, c1, 1, shifts)
            else:
                hists = [engine.histogram_naive(n, c1, 1, s) for s in shifts]
            by_shift = dict(zip(shifts, hists))
            for shift, side, t in entries:
                val = CycInt.from_exponent_histogram(p, by_shift[shift])
                (S_f if side == "f" else S_c)[t][k] = val

    hp = hodge_polygon(n)
    reports = []
    for t in ts:
        warnings: list[str] = []
        e_f = lpoly_from_power_sums(p, [S_f[t][k] for k in range(1, kf + 1)])
        e_c = lpoly_from_power_sums(p, [S_c[t][k] for k in range(1, kc + 1)])
        try:
            coeffs = complete_by_functional_equation(n, p, e_f, e_c)
        except DegenerateCompletionError:
            if budget < 2 * n + 1:
                raise
            warnings.append("functional equation degenerate; fell back to "
                            "direct power sums up to k = 2n+1")
            S_all = [S_f[t][k] for k in range(1, kf + 1)]
            for k in range(kf + 1, 2 * n + 2):
                S_all.append(toric_sum(SumSpec(n, p, k, 1, 1, 1, t),
                                       algorithm, threads, mem_budget_bytes))
            coeffs = lpoly_from_power_sums(p, S_all)
        lp = LPolynomial(p=p, a=1, coeffs=tuple(coeffs))
        poly = newton_polygon_of(lp)
        if poly.endpoint[0] != 2 * n + 1:
            raise AssertionError("Newton polygon endpoint is not at x = 2n+1")
        ords = tuple(None if e.is_zero() else ord_p(e) for e in coeffs)
        hodge_ok = poly.dominates(hp) and poly.endpoint == hp.endpoint

        prediction_match: bool | None = None
        if p > n:
            pred = predicted_np(n, p)
            prediction_match = poly.slopes == pred.polygon.slopes
            if p <= pred.p_bound_thm15:
                warnings.append(
                    f"prediction not certified for p={p} <= {pred.p_bound_thm15}; "
                    "the comparison is informational")
        else:
            warnings.append(f"no slope prediction exists for p={p} <= n={n}")

        reports.append(OracleReport(
            params=FamilyParams(n=n, p=p, a=1, t_residue=t),
            lpoly=lp,
            coefficient_ords=ords,
            polygon=poly,
            hodge_ok=hodge_ok,
            prediction_match=prediction_match,
            warnings=tuple(warnings),
        ))
    return reports
