"""Frobenius quantities against independent brute-force oracles."""

import random
from itertools import count
from math import gcd

import pytest

from parafrob import frobenius as fr
from parafrob.errors import GcdNotOneError, InputError, ResourceLimitError
from parafrob.frobenius import Coins, FrobeniusInstance


def brute_h(a, k):
    """Independent denumerant: recursion over coordinates, no DP."""
    if k < 0:
        return 0
    if len(a) == 1:
        return 1 if k % a[0] == 0 else 0
    return sum(brute_h(a[1:], k - b * a[0]) for b in range(k // a[0] + 1))


def brute_qualifying(a, m, bound):
    """All k in [0, bound] with h(k) < m, descending."""
    return [k for k in range(bound, -1, -1) if brute_h(a, k) < m]


def test_coins_validation():
    with pytest.raises(InputError):
        Coins([5])
    with pytest.raises(InputError):
        Coins([3, 0])
    assert Coins([6, 10, 15]).g == 1
    assert Coins([6, 10]).reduced().a == (3, 5)


def test_rep_count_table_examples():
    assert fr.rep_count_table(Coins([2, 3]), 6, 10).counts[6] == 2
    assert fr.rep_count_table(Coins([3, 5]), 7, 10).counts[7] == 0
    for a in ([2, 3], [3, 5], [1, 1]):
        assert fr.rep_count_table(Coins(a), 0, 5).counts[0] == 1


def test_rep_count_table_gcd_and_cap_invariants():
    coins = Coins([6, 10])
    table = fr.rep_count_table(coins, 40, 3)
    for k in range(41):
        assert table.counts[k] <= 3
        if k % 2 == 1:
            assert table.counts[k] == 0


def test_rep_count_table_budget():
    with pytest.raises(ResourceLimitError):
        fr.rep_count_table(Coins([2, 3]), 100, 1, cell_budget=50)


def test_rep_count_exact_examples():
    assert fr.rep_count_exact(Coins([1, 1]), 4) == 5
    assert fr.rep_count_exact(Coins([3, 5]), 8) == 1
    assert fr.rep_count_exact(Coins([6, 10, 15]), 29) == 0
    with pytest.raises(ResourceLimitError):
        fr.rep_count_exact(Coins([2, 3]), 100, bound=50)


def test_dp_agrees_with_brute_force_oracle():
    rng = random.Random(0)
    for _ in range(40):
        n = rng.randint(2, 3)
        a = [rng.randint(1, 30) for _ in range(n)]
        cap = rng.choice([1, 2, 4])
        bound = rng.randint(0, 60)
        table = fr.rep_count_table(Coins(a), bound, cap)
        for k in range(bound + 1):
            assert table.counts[k] == min(brute_h(tuple(a), k), cap)


def test_erdos_graham_examples():
    assert fr.erdos_graham_bound(Coins([3, 5])) == 7
    assert fr.erdos_graham_bound(Coins([6, 10, 15])) == 85
    assert fr.erdos_graham_bound(Coins([2, 3])) == 1
    with pytest.raises(GcdNotOneError):
        fr.erdos_graham_bound(Coins([6, 10]))


def test_erdos_graham_sound_where_swapped_variant_fails():
    # F(5, 6, 11) = 19; the index-swapped formula would give 17.
    assert fr.frobenius_number(Coins([5, 6, 11])) == 19
    assert fr.erdos_graham_bound(Coins([5, 6, 11])) == 25
    # F(2, 17, 23, 34) = 15; the swapped formula would give -2.
    assert fr.frobenius_number(Coins([2, 17, 23, 34])) == 15
    assert fr.erdos_graham_bound(Coins([2, 17, 23, 34])) >= 15


def test_erdos_graham_collapses_duplicates():
    assert fr.erdos_graham_bound(Coins([3, 3, 5])) == fr.erdos_graham_bound(
        Coins([3, 5])
    )


def test_frobenius_number_examples():
    assert fr.frobenius_number(Coins([3, 5])) == 7
    assert fr.frobenius_number(Coins([6, 10])) == 14
    assert fr.frobenius_number(Coins([6, 10, 15])) == 29
    assert fr.frobenius_number(Coins([1, 7])) == -1
    assert fr.frobenius_number(Coins([2, 2])) == -2


def test_genus_examples():
    assert fr.genus(Coins([3, 5])) == 4
    assert fr.genus(Coins([6, 10])) == 4
    assert fr.genus(Coins([2, 3])) == 1


def test_generalized_frobenius_examples():
    assert fr.generalized_frobenius(FrobeniusInstance(Coins([3, 5]), 1, 1)) == 7
    assert fr.generalized_frobenius(FrobeniusInstance(Coins([1, 1]), 1, 1)) == -1
    # largest k with h(k) <= 1 for (3, 5), checked against the oracle
    want = next(k for k in count(100, -1) if brute_h((3, 5), k) <= 1)
    assert fr.generalized_frobenius(FrobeniusInstance(Coins([3, 5]), 2, 1)) == want


def test_generalized_genus_examples():
    assert fr.generalized_genus(Coins([3, 5]), 1) == 4
    assert fr.generalized_genus(Coins([6, 10]), 2) == fr.generalized_genus(
        Coins([3, 5]), 2
    )
    assert fr.generalized_genus(Coins([2, 3]), 1) == 1


def test_generalized_values_match_brute_force():
    rng = random.Random(1)
    for _ in range(25):
        a = tuple(rng.randint(1, 20) for _ in range(rng.randint(2, 3)))
        m = rng.randint(1, 3)
        l = rng.randint(1, 3)
        coins = Coins(a)
        g = coins.g
        reduced = tuple(sorted(e // g for e in a))
        bound = fr.qualifying_bound(coins, m) // g
        qualifying = brute_qualifying(reduced, m, bound)
        if l <= len(qualifying):
            want = g * qualifying[l - 1]
        else:
            want = -g * (l - len(qualifying))
        inst = FrobeniusInstance(coins, m, l)
        assert fr.generalized_frobenius(inst) == want
        want_count = sum(1 for k in qualifying if k > 0)
        assert fr.generalized_genus(coins, m) == want_count


def test_bitmask_route_agrees_with_capped_dp_route():
    # frobenius_number/genus use reachability bits; the (m=1, l=1) DP path
    # must land on the same answers.
    rng = random.Random(8)
    for _ in range(40):
        a = [rng.randint(1, 35) for _ in range(rng.randint(2, 4))]
        coins = Coins(a)
        assert fr.frobenius_number(coins) == fr.generalized_frobenius(
            FrobeniusInstance(coins, 1, 1)
        )
        assert fr.genus(coins) == fr.generalized_genus(coins, 1)


def test_sylvester_random_pairs():
    rng = random.Random(2)
    done = 0
    while done < 60:
        a, b = rng.randint(2, 60), rng.randint(2, 60)
        if a == b or gcd(a, b) != 1:
            continue
        assert fr.frobenius_number(Coins([a, b])) == a * b - a - b
        assert fr.genus(Coins([a, b])) == (a - 1) * (b - 1) // 2
        done += 1


def test_scaling_identities():
    rng = random.Random(3)
    for _ in range(60):
        a = [rng.randint(1, 40) for _ in range(rng.randint(2, 4))]
        c = rng.randint(1, 5)
        m = rng.randint(1, 3)
        l = rng.randint(1, 3)
        coins, scaled = Coins(a), Coins(a).scaled(c)
        assert fr.frobenius_number(scaled) == c * fr.frobenius_number(coins)
        assert fr.genus(scaled) == fr.genus(coins)
        assert fr.generalized_frobenius(
            FrobeniusInstance(scaled, m, l)
        ) == c * fr.generalized_frobenius(FrobeniusInstance(coins, m, l))
        assert fr.generalized_genus(scaled, m) == fr.generalized_genus(coins, m)


def test_qualifying_bound_soundness():
    rng = random.Random(4)
    for _ in range(30):
        a = [rng.randint(1, 25) for _ in range(rng.randint(2, 3))]
        m = rng.randint(1, 3)
        coins = Coins(a)
        bound = fr.qualifying_bound(coins, m)
        table = fr.rep_count_table(
            coins.reduced(), bound // coins.g + 50, cap=m
        )
        for k in range(bound // coins.g + 1, bound // coins.g + 51):
            assert table.counts[k] >= m


def test_qualifying_bound_scales():
    assert fr.qualifying_bound(Coins([3, 5]), 1) >= 7  # F(3, 5) = 7 qualifies
    for c in (1, 2, 5):
        assert fr.qualifying_bound(Coins([3 * c, 5 * c]), 1) == \
            c * fr.qualifying_bound(Coins([3, 5]), 1)


def test_frobenius_below_erdos_graham():
    rng = random.Random(5)
    done = 0
    while done < 40:
        a = [rng.randint(1, 40) for _ in range(rng.randint(2, 4))]
        coins = Coins(a)
        if coins.g != 1:
            continue
        assert fr.frobenius_number(coins) <= fr.erdos_graham_bound(coins)
        done += 1


def test_monotonicity_and_definition_consistency():
    rng = random.Random(6)
    for _ in range(25):
        a = [rng.randint(1, 20) for _ in range(rng.randint(2, 3))]
        coins = Coins(a)
        m = rng.randint(1, 3)
        values = [
            fr.generalized_frobenius(FrobeniusInstance(coins, m, l))
            for l in range(1, 6)
        ]
        # strictly decreasing in l, by at least the gcd per step
        for prev, nxt in zip(values, values[1:]):
            assert nxt <= prev - coins.g
        # non-decreasing in m (for fixed l), and same for the counts
        for l in (1, 2):
            series = [
                fr.generalized_frobenius(FrobeniusInstance(coins, mm, l))
                for mm in range(1, 4)
            ]
            assert series == sorted(series)
        counts = [fr.generalized_genus(coins, mm) for mm in range(1, 4)]
        assert counts == sorted(counts)
        # exactly l-1 qualifying multiples above the answer; answer qualifies
        g = coins.g
        reduced = tuple(sorted(e // g for e in a))
        for l in (1, 2, 3):
            val = fr.generalized_frobenius(FrobeniusInstance(coins, m, l))
            assert val % g == 0
            k = val // g
            assert brute_h(reduced, k) < m
            above = sum(
                1
                for j in range(max(k + 1, 0), fr.qualifying_bound(coins, m) // g + 1)
                if brute_h(reduced, j) < m
            )
            above += max(0, -k - 1) if k < 0 else 0  # negatives above val
            assert above == l - 1
