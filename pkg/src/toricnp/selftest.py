"""Built-in verification suites behind the `selftest` CLI verb.

Each suite checks a structural property of the library on a small fixed
parameter matrix — no flags, no network, deterministic.  The point is a
one-command reproduction for a reviewer: if this passes, the exact
arithmetic, both counting algorithms, and the polygon pipeline agree
with each other.
"""
from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from .cyclo import CycInt, pi_valuation
from .geometry import enumerate_weight_level, hodge_numbers, weight
from .oracle import (SumSpec, complete_by_functional_equation, companion_coefficients,
                     lpoly_from_power_sums, newton_polygon_of, oracle_np_batch,
                     reciprocal_root_moduli, toric_sum, LPolynomial)
from .slopecomb import alpha, g_map, minimal_assignment, predicted_slopes


def _weight_axioms() -> None:
    for n in (2, 3, 5):
        levels = [enumerate_weight_level(n, k) for k in range(2 * n + 1)]
        for a in range(-7, 8):
            for b in range(-7, 8):
                w = weight(n, (a, b))
                assert w >= 0, f"negative weight at n={n}, ({a},{b})"
                assert (w == 0) == (a == b == 0), f"zero locus wrong at ({a},{b})"
                assert (w * n).denominator == 1, "weight not in (1/n)Z"
                for k, lvl in enumerate(levels):
                    inside = (a, b) in lvl.points
                    assert inside == (w == Fraction(k, n)), \
                        f"level-set membership wrong at n={n}, k={k}, ({a},{b})"
        data = hodge_numbers(n)
        assert sum(data.H) == 2 * n + 1


def _alpha_and_g() -> None:
    for n in (2, 3, 4, 5, 7):
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            if p % n == 0 or n % p == 0:
                continue
            for i in range(n + 2):
                for j in range(n + 2):
                    a = alpha(n, p, i, j)
                    assert 0 <= a < n
                    assert (a == 0) == ((i - p * j) % n == 0)
            g = g_map(n, p)
            assert sorted(g) == list(range(2 * n + 1)), "g is not a permutation"
            assert g[0] == 0 and g[n] == n and g[2 * n] == 2 * n
            assert (g == list(range(2 * n + 1))) == (p % n == 1), \
                f"identity criterion wrong at n={n}, p={p}"


def _minimizer_sets() -> None:
    # the minimizing permutations are exactly those with every cost entry
    # chosen from the "tail" of the last row: m-1-i <= alpha(m-1, delta(i))
    for n in (5, 7):
        for p in (11, 13, 17, 19, 29, 31):
            if p % n == 0:
                continue
            for m in range(2, n):
                res = minimal_assignment(n, p, m)
                crit = set()
                for perm in itertools.permutations(range(m)):
                    if all(m - 1 - i <= alpha(n, p, m - 1, perm[i]) for i in range(m)):
                        crit.add(perm)
                assert len(crit) == res.minimizer_count, \
                    f"criterion count {len(crit)} != minimizer count " \
                    f"{res.minimizer_count} at (n={n}, p={p}, m={m})"
                assert res.witness in crit
                for perm in crit:
                    cost = sum(alpha(n, p, i, perm[i]) for i in range(m))
                    assert cost == res.N_m


def _slope_symmetry() -> None:
    for n in range(2, 9):
        for p in (3, 5, 7, 11, 13, 31, 127, 1009):
            if p <= n or p % n == 0:
                continue
            s = predicted_slopes(n, p)
            assert len(s) == 2 * n + 1
            for i in range(2 * n + 1):
                assert s[i] + s[2 * n - i] == 2, f"symmetry broken at n={n}, p={p}"


def _valuation_algebra() -> None:
    rng = random.Random(20260819)
    for p in (3, 5, 7, 11):
        for _ in range(40):
            x = CycInt(p, [rng.randrange(-9, 10) for _ in range(p - 1)])
            y = CycInt(p, [rng.randrange(-9, 10) for _ in range(p - 1)])
            if x.is_zero() or y.is_zero():
                continue
            vx, vy = pi_valuation(x), pi_valuation(y)
            assert pi_valuation(x * y) == vx + vy, "multiplicativity failed"
            if not (x + y).is_zero():
                v_sum = pi_valuation(x + y)
                assert v_sum >= min(vx, vy), "ultrametric inequality failed"
                if vx != vy:
                    assert v_sum == min(vx, vy), "ultrametric equality failed"
            for j in range(2, p):
                assert pi_valuation(x.conjugate(j)) == vx, "Galois shift changed v"


def _algorithm_equivalence() -> None:
    for n in (2, 3):
        for p in (3, 5, 7, 11, 13, 17):
            if n % p == 0:
                continue
            k = 1
            while p ** k <= 2500:
                for t in (1, p - 1):
                    for c1 in (1, p - 1):
                        spec = SumSpec(n=n, p=p, k=k, c1=c1, c2=1, c3=1, t_residue=t)
                        assert toric_sum(spec, "naive") == toric_sum(spec, "convolution"), \
                            f"algorithms disagree at {spec}"
                k += 1


def _purity() -> None:
    cases = [(2, 3, [1, 2]), (2, 5, [1, 2]), (3, 7, [1])]
    for n, p, ts in cases:
        for rep in oracle_np_batch(n, p, ts):
            moduli = reciprocal_root_moduli(rep.lpoly)
            assert len(moduli) == 2 * n + 1
            for mod in moduli:
                assert abs(mod - p) <= 1e-6 * p, \
                    f"|beta| = {mod} off p = {p} at (n={n}, t={rep.params.t_residue})"


def _twist_covariance() -> None:
    # conjugating every power sum by zeta -> zeta^j permutes the roots,
    # so the valuations -- and hence the polygon -- cannot move
    n, p, t = 2, 5, 1
    S_f = [toric_sum(SumSpec(n=n, p=p, k=k, c1=1, c2=1, c3=1, t_residue=t))
           for k in range(1, n + 2)]
    cc1, _, _, ct = companion_coefficients(n, p, t)
    S_c = [toric_sum(SumSpec(n=n, p=p, k=k, c1=cc1, c2=1, c3=1, t_residue=ct))
           for k in range(1, n + 1)]
    base = None
    for j in (1, 2, 3):
        e_f = lpoly_from_power_sums(p, [s.conjugate(j) for s in S_f])
        e_c = lpoly_from_power_sums(p, [s.conjugate(j) for s in S_c])
        coeffs = complete_by_functional_equation(n, p, e_f, e_c)
        poly = newton_polygon_of(LPolynomial(p=p, a=1, coeffs=tuple(coeffs)))
        if base is None:
            base = poly
        assert poly == base, f"polygon moved under zeta -> zeta^{j}"


def _completion_vs_direct() -> None:
    for n, p in ((2, 5), (2, 7), (3, 5)):
        for t in range(1, p):
            e_direct = lpoly_from_power_sums(
                p, [toric_sum(SumSpec(n=n, p=p, k=k, c1=1, c2=1, c3=1, t_residue=t))
                    for k in range(1, 2 * n + 2)])
            e_f = e_direct[:n + 2]
            cc1, _, _, ct = companion_coefficients(n, p, t)
            e_c = lpoly_from_power_sums(
                p, [toric_sum(SumSpec(n=n, p=p, k=k, c1=cc1, c2=1, c3=1, t_residue=ct))
                    for k in range(1, n + 1)])
            completed = complete_by_functional_equation(n, p, e_f, e_c)
            assert completed == e_direct, f"completion != direct at (n={n}, p={p}, t={t})"


SUITES = [
    ("weight-axioms", _weight_axioms),
    ("alpha-and-g", _alpha_and_g),
    ("minimizer-sets", _minimizer_sets),
    ("slope-symmetry", _slope_symmetry),
    ("valuation-algebra", _valuation_algebra),
    ("algorithm-equivalence", _algorithm_equivalence),
    ("purity", _purity),
    ("twist-covariance", _twist_covariance),
    ("completion-vs-direct", _completion_vs_direct),
]


def run_selftest(out=print) -> bool:
    ok = True
    for name, fn in SUITES:
        t0 = time.perf_counter()
        try:
            fn()
        except AssertionError as exc:
            ok = False
            out(f"FAIL {name}: {exc}")
        else:
            out(f"ok   {name} ({time.perf_counter() - t0:.2f}s)")
    out(f"selftest: {'all suites passed' if ok else 'FAILURES above'}")
    return ok
