import numpy as np
import pytest
from sympy import isprime

from toricnp.convolve import (CONV_SIZE_LIMIT, DomainError, SumEngine,
                              _kronecker_cyclic, evaluation_primes,
                              order_p_root)


class TestEvaluationPrimes:
    def test_structure(self):
        for p, N in ((3, 100), (5, 3124), (47, 4879680)):
            qs = evaluation_primes(p, N)
            assert qs == sorted(qs, reverse=True)
            need = (N * N + 1) * p * 4
            prod = 1
            for Q in qs:
                assert isprime(Q)
                assert Q % p == 1
                assert N * (Q - 1) ** 2 < 2 ** 62  # no limb overflow
                prod *= Q
            assert prod > need

    def test_large_N_still_has_primes(self):
        qs = evaluation_primes(5, 5 ** 8 - 1)
        assert len(qs) >= 2

    def test_exhausted_budget_raises(self):
        with pytest.raises(DomainError):
            evaluation_primes(3, 10 ** 18)


class TestOrderPRoot:
    def test_exact_order(self):
        for p in (3, 5, 7, 11):
            for Q in evaluation_primes(p, 1000)[:3]:
                eta = order_p_root(Q, p)
                assert eta != 1
                assert pow(eta, p, Q) == 1

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            order_p_root(11, 7)


def test_kronecker_cyclic_small():
    s1 = np.array([1, 2, 3], dtype=np.uint64)
    s2 = np.array([4, 5, 6], dtype=np.uint64)
    # linear conv [4, 13, 28, 27, 18] wrapped: [31, 31, 28]
    out = _kronecker_cyclic(s1, s2, 3, 101)
    assert out.tolist() == [31, 31, 28]
    out = _kronecker_cyclic(s1, s2, 3, 13)
    assert out.tolist() == [31 % 13, 31 % 13, 28 % 13]


def test_smallest_engine_histogram():
    eng = SumEngine(3, 1)
    assert eng.N == 2
    # x^2 + y + 1/(xy) over F_3*: four pairs, trace histogram (1, 2, 1)
    assert eng.histogram_naive(2, 1, 1, 1) == [1, 2, 1]
    assert eng.histograms_convolution(2, 1, 1, [1]) == [[1, 2, 1]]
    assert eng.histogram(2, 1, 1, 1) == [1, 2, 1]


@pytest.mark.parametrize("p,kmax", [(3, 4), (5, 3), (7, 2), (11, 2), (13, 2)])
def test_algorithms_agree(p, kmax):
    for k in range(1, kmax + 1):
        eng = SumEngine(p, k)
        for n in (2, 3):
            if n % p == 0:
                continue
            for c3t in (1, p - 1):
                naive = eng.histogram_naive(n, 1, 1, c3t)
                conv = eng.histograms_convolution(n, 1, 1, [c3t])[0]
                assert naive == conv, (p, k, n, c3t)


def test_batched_shifts_match_single_calls():
    eng = SumEngine(7, 2)
    shifts = [1, 2, 3, 6]
    batched = eng.histograms_convolution(3, 1, 1, shifts)
    singles = [eng.histograms_convolution(3, 1, 1, [s])[0] for s in shifts]
    assert batched == singles


def test_threads_do_not_change_results():
    one = SumEngine(5, 3, threads=1)
    two = SumEngine(5, 3, threads=3)
    h1 = one.histograms_convolution(2, 1, 1, [1, 4])
    h2 = two.histograms_convolution(2, 1, 1, [1, 4])
    assert h1 == h2


def test_histogram_totals():
    eng = SumEngine(5, 2)
    hist = eng.histogram(3, 2, 1, 3)
    assert sum(hist) == eng.N ** 2
    assert all(h >= 0 for h in hist)


def test_engine_rejects_oversized_field():
    with pytest.raises(DomainError):
        SumEngine(11, 8)  # 11^8 > 10^8, over every algorithm's limit


def test_naive_rejects_oversized_pair_count():
    eng = SumEngine(47, 3)  # N^2 ~ 1.1e10 pairs: conv-only territory
    with pytest.raises(DomainError):
        eng.histogram_naive(3, 1, 1, 1)


def test_memory_budget_enforced():
    with pytest.raises(MemoryError):
        SumEngine(5, 6, mem_budget_bytes=1000)


def test_unknown_algorithm():
    eng = SumEngine(3, 1)
    with pytest.raises(ValueError):
        eng.histogram(2, 1, 1, 1, algorithm="fft")


def test_conv_size_limit_is_the_init_gate():
    # just under the gate must construct fine at modest sizes
    eng = SumEngine(2, 10)
    assert eng.field.order <= CONV_SIZE_LIMIT
