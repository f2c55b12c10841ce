import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest

from cdlplab.constructions import (
    BkSet,
    CertificateReport,
    bose_chowla_set,
    check_bk_sums,
    check_det2x2,
    check_twelve,
    check_weak_sidon,
    counterexample_is_violation,
    embed_bk_mod_p,
    greedy_weak_sidon,
    hamming_weight_set,
    random_subset,
    sample_snk,
    small_squares_set,
    snk_event_bounds,
)
from cdlplab.errors import EmptySetError, TooLargeError
from cdlplab.lines import ConstrainedSet


def test_random_subset():
    S = random_subset(101, 10, seed=7)
    assert len(S) == 10 and S == random_subset(101, 10, seed=7)
    assert len(random_subset(11, 11, seed=0)) == 11
    with pytest.raises(TooLargeError):
        random_subset(11, 12)
    with pytest.raises(EmptySetError):
        random_subset(11, 0)


def test_sample_snk_key_shapes():
    S = sample_snk(101, 4, 2, key=(0, 0))
    assert S.elements == (0,)
    assert S.provenance["params"]["full_size"] is False
    S = sample_snk(101, 4, 2, key=(0, 1))
    assert S.elements == (1, 2, 3, 4)
    assert S.provenance["params"]["full_size"] is True


def test_snk_joint_distribution_uniform():
    # over all 25 keys at p=5, k=2 the pair (f(1), f(2)) hits each value of
    # Z_5 x Z_5 exactly once
    seen = {}
    for a0 in range(5):
        for a1 in range(5):
            S = sample_snk(5, 2, 2, key=(a0, a1))
            x1 = (a1 * 1 + a0) % 5
            x2 = (a1 * 2 + a0) % 5
            seen[(x1, x2)] = seen.get((x1, x2), 0) + 1
            assert set(S.elements) == {x1, x2}
    assert all(v == 1 for v in seen.values()) and len(seen) == 25


def test_snk_duplicate_fraction_bound():
    # full key enumeration at p=101, N=4, k=2
    p, n = 101, 4
    dupes = 0
    for a0 in range(p):
        for a1 in range(p):
            values = {(a1 * i + a0) % p for i in range(1, n + 1)}
            if len(values) != n:
                dupes += 1
    assert Fraction(dupes, p * p) < Fraction(n * n, p)


def test_snk_event_bounds():
    assert snk_event_bounds(101, 4, 2, 1) == (Fraction(16, 101), Fraction(16, 101))
    assert snk_event_bounds(101, 3, 2, 6)[1] == Fraction(54, 101)
    assert snk_event_bounds(101, 1, 2, 1)[0] == Fraction(1, 101)


def brute_sums_distinct(elements, modulus, k, with_repeats=False):
    gen = combinations_with_replacement if with_repeats else combinations
    sums = [sum(c) % modulus for c in gen(elements, k)]
    return len(sums) == len(set(sums))


@pytest.mark.parametrize("q,k", [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)])
def test_bose_chowla_sets(q, k):
    bk = bose_chowla_set(q, k)
    assert isinstance(bk, BkSet)
    assert len(bk.elements) == q
    assert bk.modulus == q**k - 1
    assert brute_sums_distinct(bk.elements, bk.modulus, k)
    # the classical construction is strong: multiset sums distinct too
    assert brute_sums_distinct(bk.elements, bk.modulus, k, with_repeats=True)


def test_bose_chowla_3_2_exact():
    bk = bose_chowla_set(3, 2)
    assert bk.elements == (1, 6, 7)
    pair_sums = [sum(c) % 8 for c in combinations_with_replacement(bk.elements, 2)]
    assert len(pair_sums) == len(set(pair_sums)) == 6


def test_embed_bk_mod_p():
    S = embed_bk_mod_p(101, 2)
    assert S.provenance["params"]["q"] == 7
    assert check_bk_sums(S, 2).verified
    assert check_weak_sidon(S).verified
    S3 = embed_bk_mod_p(10007, 3)
    assert check_bk_sums(S3, 3).verified
    assert len(S3) >= math.ceil(S3.provenance["params"]["q"] / 3)
    with pytest.raises(ValueError):
        embed_bk_mod_p(101, 1)


def test_small_squares():
    assert small_squares_set(11).elements == (1, 4, 9)
    S = small_squares_set(101)
    assert S.elements == (1, 4, 9, 16, 25, 36, 49, 64, 81, 100)
    assert len(S) == 10


def test_hamming_weight_set():
    assert hamming_weight_set(4, 2, 101).elements == (3, 5, 6, 9, 10, 12)
    assert hamming_weight_set(4, 0, 101).elements == (0,)
    assert hamming_weight_set(4, 4, 101).elements == (15,)
    with pytest.raises(ValueError):
        hamming_weight_set(4, 2, 13)  # p must exceed 2^bits


def test_greedy_weak_sidon():
    S = greedy_weak_sidon(101, 4)
    assert S.elements == (0, 1, 3, 7)
    assert S.provenance["params"]["target_reached"]
    assert check_weak_sidon(S).verified
    # p=11 scans only 0..5, which holds just {0,1,3}
    S = greedy_weak_sidon(11, 4)
    assert S.elements == (0, 1, 3)
    assert not S.provenance["params"]["target_reached"]


def test_check_weak_sidon():
    assert check_weak_sidon(ConstrainedSet(11, (1, 2, 3))).verified
    report = check_weak_sidon(ConstrainedSet(101, (1, 2, 3, 4)))
    assert not report.verified
    assert counterexample_is_violation(report, 101)
    (a, b), (c, d) = report.counterexample
    assert (a + b) % 101 == (c + d) % 101


def test_check_bk_sums():
    # k=2 agrees with the weak Sidon checker on many random sets
    rng_sets = [random_subset(101, size, seed=i) for i in range(10) for size in (3, 5)]
    for S in rng_sets:
        assert check_bk_sums(S, 2).verified == check_weak_sidon(S).verified
    assert check_bk_sums(ConstrainedSet(101, (0, 1, 2, 4)), 3).verified
    report = check_bk_sums(ConstrainedSet(101, (0, 1, 4, 5)), 2)
    assert not report.verified and counterexample_is_violation(report, 101)
    # {0,1,2,3}: 3-subset sums 3,4,5,6 distinct
    assert check_bk_sums(ConstrainedSet(101, (0, 1, 2, 3)), 3).verified


def test_check_det2x2():
    report = check_det2x2(ConstrainedSet(101, (0, 1, 2, 3, 4, 5)), mode="exhaustive")
    assert not report.verified
    assert counterexample_is_violation(report, 101)
    # the specific arithmetic-progression witness: x=(0,1) y=(2,3) z=(4,5)
    from cdlplab.constructions import det2x2_value

    assert det2x2_value((0, 1, 2, 3, 4, 5), 101) == 0
    small = ConstrainedSet(101, (1, 2, 3))
    assert check_det2x2(small, mode="exhaustive").verified  # vacuous below 6
    with pytest.raises(TooLargeError):
        check_det2x2(random_subset(101, 13, seed=1), mode="exhaustive")


def test_check_det2x2_randomized():
    S = random_subset(10007, 40, seed=3)
    report = check_det2x2(S, mode="randomized", trials=500, seed=1)
    assert report.mode == "randomized"
    if not report.verified:
        assert counterexample_is_violation(report, 10007)


def test_check_twelve_small_sets_vacuous():
    S = random_subset(101, 10, seed=2)
    report = check_twelve(S, mode="exhaustive")
    assert report.verified and report.trials == 0


def test_check_twelve_exhaustive_finds_grid_points():
    # twelve values arranged as a grid's projection admit a vanishing
    # determinant, and the planted assignment sits first in scan order
    S = ConstrainedSet(1009, (1, 2, 3, 4, 6, 8, 9, 12, 15, 17, 18, 19))
    report = check_twelve(S, mode="exhaustive")
    assert not report.verified
    assert report.counterexample == ((1, 4, 9, 17), (2, 6, 12, 18), (3, 8, 15, 19))
    assert counterexample_is_violation(report, 1009)


def test_check_twelve_randomized_statistics():
    # a random 12-tuple is violating with probability at most 6/p
    violations = 0
    n_sets, trials = 20, 50
    for i in range(n_sets):
        S = random_subset(10007, 15, seed=("tw", i))
        report = check_twelve(S, mode="randomized", trials=trials, seed=i)
        if not report.verified:
            violations += 1
            assert counterexample_is_violation(report, 10007)
    expected = n_sets * trials * 6 / 10007
    assert violations <= max(3, 10 * expected)


def test_certificate_report_json():
    report = CertificateReport("weak-sidon", True, "exhaustive")
    record = report.to_json()
    assert record["kind"] == "weak-sidon" and record["verified"] is True
