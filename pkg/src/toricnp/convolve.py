"""Exact pair-counting engine for toric character sums.

Problem: given trace tables A, B, C along the generator walk of F_{p^k}
(N = p^k - 1 units), count

    M_v = #{(i, j) : A[i] + B[j] + C[(i+j) mod N] = v (mod p)},  v = 0..p-1.

Two independent algorithms, both exact:

* naive     -- blockwise enumeration of all N^2 pairs into a histogram.
* convolution -- per-root evaluation: for each prime Q = 1 (mod p) and each
  power eta^r of an order-p element of F_Q, the value
      X_r = sum_v M_v eta^{rv} = sum_l (s1 (*) s2)[l] * s3[l]   (mod Q)
  needs one cyclic convolution of eta-weighted sequences.  The convolution
  is done exactly by packing the sequences into 64-bit limbs of huge
  integers and letting GMP multiply them (Kronecker substitution); the
  evaluation primes are capped so no limb can overflow.  Inverting the
  p-point evaluation mod each Q and CRT-lifting recovers every M_v exactly,
  because the product of the Q's exceeds N^2.

No floating point anywhere: rounding arguments at N ~ 5e6 are exactly the
kind of thing this engine exists to avoid.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import gmpy2
import numpy as np
from sympy import isprime

from .gf import FiniteField, build_field

NAIVE_PAIR_LIMIT = 10 ** 9   # p^{2k} cap for the naive path
CONV_SIZE_LIMIT = 10 ** 8    # p^k cap for the convolution path
_SLOT_BUDGET = 2 ** 62       # max linear-convolution coefficient: N*(Q-1)^2


class DomainError(ValueError):
    """Requested sum is outside the engine's size envelope."""


def evaluation_primes(p: int, N: int) -> list[int]:
    """Primes Q = 1 (mod p), largest first, with N*(Q-1)^2 < 2^62 and
    product exceeding N^2 with margin."""
    cap = min(int((_SLOT_BUDGET // max(N, 1)) ** 0.5), 2 ** 20)
    if cap <= p + 1:
        raise DomainError(f"no evaluation primes available for p={p}, N={N}")
    need = (N * N + 1) * p * 4
    qs: list[int] = []
    prod = 1
    Q = (cap - 1) // p * p + 1
    while prod <= need:
        while Q > p and not isprime(Q):
            Q -= p
        if Q <= p:
            raise DomainError(f"ran out of evaluation primes for p={p}, N={N}")
        qs.append(Q)
        prod *= Q
        Q -= p
    return qs


def order_p_root(Q: int, p: int) -> int:
    """Deterministic element of multiplicative order p in F_Q."""
    if (Q - 1) % p:
        raise ValueError(f"Q={Q} is not 1 mod p={p}")
    for h in range(2, Q):
        eta = pow(h, (Q - 1) // p, Q)
        if eta != 1:
            return eta
    raise AssertionError("unreachable: F_Q* is cyclic")


def _kronecker_cyclic(s1: np.ndarray, s2: np.ndarray, N: int, Q: int) -> np.ndarray:
    """Exact cyclic convolution of two length-N uint64 sequences, mod Q."""
    a = int.from_bytes(np.ascontiguousarray(s1, dtype=np.uint64).tobytes(), "little")
    b = int.from_bytes(np.ascontiguousarray(s2, dtype=np.uint64).tobytes(), "little")
    prod = int(gmpy2.mpz(a) * gmpy2.mpz(b))
    lin = np.frombuffer(prod.to_bytes(16 * N, "little"), dtype=np.uint64)
    return (lin[:N] + lin[N:]) % Q


class SumEngine:
    """Trace tables for one field F_{p^k}, plus both counting algorithms.

    Reusable across coefficient choices and t values; building one is the
    expensive part (a full generator walk), so callers share it.
    """

    def __init__(self, p: int, k: int, threads: int = 1, mem_budget_bytes: int | None = None):
        self.p = p
        self.k = k
        self.threads = max(1, threads)
        if p ** k > CONV_SIZE_LIMIT:
            raise DomainError(
                f"field size p^k = {p ** k} exceeds the engine limit {CONV_SIZE_LIMIT}")
        self.field: FiniteField = build_field(p, k)
        self.N = self.field.units
        if mem_budget_bytes is not None:
            est = self._estimate_bytes()
            if est > mem_budget_bytes:
                raise MemoryError(
                    f"sum over F_{p}^{k} needs ~{est / 2**30:.1f} GiB, "
                    f"budget is {mem_budget_bytes / 2**30:.1f} GiB")
        self.W = self.field.trace_table()            # tr(g^l), int64
        self.logs = self.field.scalar_log_table()     # dlog of scalar units
        self._idx = np.arange(self.N, dtype=np.int64)

    def _estimate_bytes(self) -> int:
        # walk tables + per-thread convolution scratch (pack/product/unpack)
        return (4 * 8 * self.N) + self.threads * 64 * self.N

    def _trace_tables(self, n: int, c1: int, c2: int, c3t: int):
        p, N = self.p, self.N
        e1, e2, e3 = self.logs[c1 % p], self.logs[c2 % p], self.logs[c3t % p]
        A = self.W[(n * self._idx + e1) % N]
        B = self.W[(self._idx + e2) % N]
        C = self.W[(e3 - self._idx) % N]
        return A, B, C

    # ---- naive path ----

    def histogram_naive(self, n: int, c1: int, c2: int, c3t: int) -> list[int]:
        p, N = self.p, self.N
        if N * N > NAIVE_PAIR_LIMIT:
            raise DomainError(f"{N}^2 pairs exceed the naive limit {NAIVE_PAIR_LIMIT}")
        A, B, C = self._trace_tables(n, c1, c2, c3t)
        bins = np.zeros(3 * p, dtype=np.int64)
        block = max(1, (1 << 22) // max(N, 1))
        for i0 in range(0, N, block):
            rows = self._idx[i0:i0 + block]
            cidx = rows[:, None] + self._idx[None, :]
            cidx[cidx >= N] -= N
            vals = A[rows][:, None] + B[None, :] + C[cidx]
            bins += np.bincount(vals.ravel(), minlength=3 * p)[:3 * p]
        M = [int(bins[v] + bins[v + p] + bins[v + 2 * p]) for v in range(p)]
        assert sum(M) == N * N
        return M

    # ---- convolution path ----

    def histograms_convolution(self, n: int, c1: int, c2: int,
                               c3ts: list[int]) -> list[list[int]]:
        """M_v histograms for several c3*t values sharing one (c1, c2).

        The heavy work (one exact convolution per root power and per
        evaluation prime) does not depend on c3*t, so all shifts ride on
        the same convolutions and only pay a dot product each.
        """
        p, N = self.p, self.N
        if self.field.order > CONV_SIZE_LIMIT:
            raise DomainError(f"field size {self.field.order} exceeds the "
                              f"convolution limit {CONV_SIZE_LIMIT}")
        A, B, _ = self._trace_tables(n, c1, c2, 1)
        Crev = self.W[(-self._idx) % N]
        Cs = [np.roll(Crev, self.logs[c3t % p]) for c3t in c3ts]

        qs = evaluation_primes(p, N)
        # X[s][qi][r] = sum_v M_v(shift s) eta^{rv} mod Q_qi
        X = [[[0] * p for _ in qs] for _ in c3ts]
        for qi, Q in enumerate(qs):
            eta = order_p_root(Q, p)
            for s in range(len(c3ts)):
                X[s][qi][0] = (N % Q) * (N % Q) % Q

            def run_r(r: int, Q=Q, eta=eta, qi=qi) -> None:
                eta_r = pow(eta, r, Q)
                pw = np.array([pow(eta_r, a, Q) for a in range(p)], dtype=np.uint64)
                folded = _kronecker_cyclic(pw[A], pw[B], N, Q).astype(np.int64)
                for s, C in enumerate(Cs):
                    X[s][qi][r] = int(np.dot(folded, pw[C].astype(np.int64)) % Q)

            if self.threads > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    list(pool.map(run_r, range(1, p)))
            else:
                for r in range(1, p):
                    run_r(r)

        residues = [[None] * len(qs) for _ in c3ts]  # type: list[list[list[int]]]
        for qi, Q in enumerate(qs):
            eta = order_p_root(Q, p)
            inv_p = pow(p, -1, Q)
            eta_inv = pow(eta, -1, Q)
            inv_pw = [pow(eta_inv, a, Q) for a in range(p)]
            for s in range(len(c3ts)):
                Xs = X[s][qi]
                Mq = []
                for v in range(p):
                    acc = 0
                    for r in range(p):
                        acc += Xs[r] * inv_pw[r * v % p]
                    Mq.append(acc % Q * inv_p % Q)
                residues[s][qi] = Mq
        return [_crt_counts(qs, residues[s], N) for s in range(len(c3ts))]

    def histogram(self, n: int, c1: int, c2: int, c3t: int,
                  algorithm: str = "auto") -> list[int]:
        if algorithm == "auto":
            algorithm = "naive" if self.N * self.N <= 10 ** 7 else "convolution"
        if algorithm == "naive":
            return self.histogram_naive(n, c1, c2, c3t)
        if algorithm == "convolution":
            return self.histograms_convolution(n, c1, c2, [c3t])[0]
        raise ValueError(f"unknown algorithm {algorithm!r}")


def _crt_counts(qs: list[int], residues: list[list[int]], N: int) -> list[int]:
    prod = 1
    for Q in qs:
        prod *= Q
    M = []
    p = len(residues[0])
    for v in range(p):
        x = 0
        for Q, Mq in zip(qs, residues):
            ni = prod // Q
            x += Mq[v] * ni * pow(ni, -1, Q)
        M.append(x % prod)
    if sum(M) != N * N:
        raise AssertionError("CRT-reconstructed counts fail the total check")
    return M
