import math

import pytest
from hypothesis import given, settings, strategies as st

from lcmlab.lcm_engine import (
    PrimePowerMap,
    ResourceError,
    factor_window_sieve,
    lcm_fold,
    log_lcm,
    small_prime_exponents,
    squarefull_split,
    window,
    window_terms,
)
from lcmlab.ntk import normalize, reduced
from lcmlab.verify import check_oracle, oracle_specs


def brute_valuation(x, p):
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def brute_factor_lcm(terms):
    """Prime powers of lcm(terms) by trial-dividing every term."""
    out = {}
    for t in terms:
        x, p = t, 2
        while p * p <= x:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            if e:
                out[p] = max(out.get(p, 0), e)
            p += 1
        if x > 1:
            out[x] = max(out.get(x, 0), 1)
    return dict(sorted(out.items()))


@pytest.mark.parametrize(
    "spec, n, want",
    [
        ((1, 0, 1, 0), 10, list(range(1, 11))),
        ((2, 1, 1, 0), 4, [3, 5, 7, 9]),
        ((1, 1, 3, 2), 4, [10, 11, 12, 13]),
    ],
)
def test_window_terms_examples(spec, n, want):
    s = normalize(*spec)
    terms = window_terms(s, n)
    assert terms == want
    assert len(terms) == (s.l - s.m) * n
    assert window(s, n).term_hi == terms[-1]


def test_window_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        window_terms(normalize(1, 0, 1, 0), 0)
    with pytest.raises(ValueError):
        factor_window_sieve(normalize(1, 0, 1, 0), -1)


@pytest.mark.parametrize("terms, want", [([3], 3), (list(range(1, 11)), 2520), ([3, 5, 7, 9], 315)])
def test_lcm_fold_examples(terms, want):
    assert lcm_fold(terms) == want
    assert want == math.lcm(*terms)


@pytest.mark.parametrize("bad", [[], [3, 0], [-2]])
def test_lcm_fold_rejects(bad):
    with pytest.raises(ValueError):
        lcm_fold(bad)


@pytest.mark.parametrize(
    "spec, n, want",
    [
        ((2, 1, 1, 0), 4, {3: 2, 5: 1, 7: 1}),
        ((1, 0, 1, 0), 10, {2: 3, 3: 2, 5: 1, 7: 1}),
        ((1, 1, 3, 2), 4, {2: 2, 3: 1, 5: 1, 11: 1, 13: 1}),
    ],
)
def test_factor_window_sieve_examples(spec, n, want):
    s = normalize(*spec)
    assert brute_factor_lcm(window_terms(s, n)) == want
    pmap = factor_window_sieve(s, n)
    assert pmap == want


@pytest.mark.parametrize(
    "entries, want",
    [({}, 0.0), ({3: 2, 5: 1, 7: 1}, 5.7525727), ({2: 3, 3: 2, 5: 1, 7: 1}, 7.8320142)],
)
def test_log_lcm_examples(entries, want):
    pmap = PrimePowerMap(entries)
    assert log_lcm(pmap) == pytest.approx(want, abs=1e-7)
    assert log_lcm(pmap) == pytest.approx(math.log(pmap.reconstruct()), abs=1e-12)


def test_squarefull_split_examples():
    first, corr = squarefull_split(PrimePowerMap({3: 2, 5: 1, 7: 1}), 9)
    assert first == pytest.approx(math.log(105), abs=1e-12)
    assert corr == pytest.approx(math.log(3), abs=1e-12)
    _, corr = squarefull_split(PrimePowerMap({2: 1, 3: 1, 11: 1}), 100)
    assert corr == 0
    _, corr = squarefull_split(PrimePowerMap({2: 3, 3: 2, 5: 1, 7: 1}), 10)
    assert corr == pytest.approx(2 * math.log(2) + math.log(3), abs=1e-12)


def test_squarefull_split_rejects_impossible_exponent():
    with pytest.raises(ValueError):
        squarefull_split(PrimePowerMap({5: 2}), 24)


def test_oracle_equivalence_small_grid():
    res = check_oracle(oracle_specs(4, -3, 4), 20)
    assert res.checks > 0 and res.ok, res.failures[:3]


@settings(max_examples=60, deadline=None)
@given(
    a=st.integers(1, 40),
    b=st.integers(-39, 200),
    m=st.integers(0, 30),
    gap=st.integers(1, 4),
    n=st.integers(1, 40),
)
def test_sieve_matches_brute_factorization(a, b, m, gap, n):
    if a + b < 1:
        return
    s = normalize(a, b, m + gap, m)
    terms = window_terms(s, n)
    pmap = factor_window_sieve(s, n, segment_size=7)
    assert pmap == brute_factor_lcm(terms)
    for p, e in pmap.items():
        assert e == max(brute_valuation(t, p) for t in terms)
        assert p**e <= window(s, n).term_hi


def test_squarefull_bound_and_envelope():
    for spec in oracle_specs():
        for n in (1, 7, 23, 50):
            bound = window(spec, n).term_hi
            pmap = factor_window_sieve(spec, n)
            for p, e in pmap.items():
                if e >= 2:
                    assert p * p <= bound
            _, corr = squarefull_split(pmap, bound)
            assert corr <= 2 * math.sqrt(bound) * math.log(bound) + 1e-12


def test_gcd_reduction_is_exact():
    for spec in oracle_specs():
        if spec.d == 1:
            continue
        red = reduced(spec)
        for n in (1, 5, 19, 40):
            big = factor_window_sieve(spec, n).reconstruct()
            small = lcm_fold(window_terms(red, n))
            assert big == spec.d * small
            assert math.log(big) == pytest.approx(math.log(small) + math.log(spec.d), abs=1e-9)


def test_prime_support_coprime_to_step():
    for spec in oracle_specs():
        if spec.d != 1:
            continue
        for n in (3, 30):
            assert all(p % spec.a1 for p in factor_window_sieve(spec, n).entries) or spec.a1 == 1


@pytest.mark.parametrize("threads", [1, 2, 4])
@pytest.mark.parametrize("segment", [1, 13, 1000, 1 << 20])
def test_segmentation_and_threads_do_not_change_result(threads, segment):
    s = normalize(6, -1, 4, 1)
    ref = factor_window_sieve(s, 500)
    got = factor_window_sieve(s, 500, segment_size=segment, threads=threads)
    assert got == ref
    assert list(got.entries) == sorted(got.entries)


def test_small_prime_exponents_match_sieve():
    for spec in oracle_specs(6, -5, 6):
        red = reduced(spec)
        for n in (1, 9, 50):
            bound = window(red, n).term_hi
            full = factor_window_sieve(red, n)
            want = {p: e for p, e in full.items() if p * p <= bound}
            assert small_prime_exponents(red, n) == want


def test_budget_is_enforced():
    s = normalize(1, 0, 1, 0)
    with pytest.raises(ResourceError):
        factor_window_sieve(s, 1001, max_bound=1000)
    with pytest.raises(ResourceError):
        factor_window_sieve(normalize(1, 1 << 62, 1, 0), 3)


def test_chebyshev_psi_at_million():
    # frozen value; the prime-table route never factors the window
    s = normalize(1, 0, 1, 0)
    value = log_lcm(factor_window_sieve(s, 10**6))
    from lcmlab.residue_decomp import assemble_log_lcm

    other = assemble_log_lcm(s, 10**6, "theta-intervals").total
    assert value == pytest.approx(other, abs=1e-6)
    assert value == pytest.approx(999586.5974956, abs=1e-4)
