"""Exact Frobenius-type quantities for concrete positive integer tuples.

h(k) counts the nonnegative integer tuples (b_1, ..., b_n) with
sum b_i * a_i = k (ordered tuples: duplicate denominations count
separately). Everything is computed by a capped coin DP over a window that
provably contains all k with h(k) below the cap, so the answers are exact.
"""

from dataclasses import dataclass
from math import gcd

from .errors import GcdNotOneError, InputError, ResourceLimitError

# A DP table larger than this many cells aborts instead of thrashing.
DEFAULT_CELL_BUDGET = 10**8


class Coins:
    """An ordered tuple of n >= 2 positive integers with cached gcd."""

    __slots__ = ("a", "g")

    def __init__(self, entries):
        a = tuple(int(e) for e in entries)
        if len(a) < 2:
            raise InputError("need at least two entries")
        if any(e <= 0 for e in a):
            raise InputError("entries must be strictly positive")
        self.a = a
        self.g = gcd(*a)

    def reduced(self) -> "Coins":
        """The tuple divided through by its gcd."""
        if self.g == 1:
            return self
        return Coins(e // self.g for e in self.a)

    def scaled(self, c: int) -> "Coins":
        return Coins(e * c for e in self.a)

    def __eq__(self, other):
        return isinstance(other, Coins) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return f"Coins({list(self.a)!r})"


@dataclass(frozen=True)
class FrobeniusInstance:
    """A tuple together with the multiplicity bound m and rank l."""

    coins: Coins
    m: int
    l: int

    def __post_init__(self):
        if self.m < 1 or self.l < 1:
            raise InputError("m and l must be >= 1")


@dataclass(frozen=True)
class RepCountTable:
    """counts[k] = min(h(k), cap) for k = 0..bound."""

    coins: Coins
    cap: int
    counts: tuple
    bound: int


def rep_count_table(coins: Coins, bound: int, cap: int,
                    cell_budget: int = DEFAULT_CELL_BUDGET) -> RepCountTable:
    """Capped representation counts by coin DP, one pass per denomination.

    Addition saturates at ``cap``, which keeps every cell small no matter
    how large the true counts grow.
    """
    if bound < 0:
        raise InputError("bound must be >= 0")
    if cap < 1:
        raise InputError("cap must be >= 1")
    if bound + 1 > cell_budget:
        raise ResourceLimitError(
            f"table of {bound + 1} cells exceeds the budget of {cell_budget}"
        )
    counts = [0] * (bound + 1)
    counts[0] = 1
    for a in coins.a:
        for k in range(a, bound + 1):
            prev = counts[k - a]
            if prev:
                s = counts[k] + prev
                counts[k] = s if s < cap else cap
    return RepCountTable(coins, cap, tuple(counts), bound)


def rep_count_exact(coins: Coins, k: int, bound: int = 10**4) -> int:
    """Uncapped h(k) by recursive enumeration; the brute-force oracle.

    Only intended for small k: raises ResourceLimitError beyond ``bound``.
    """
    if k > bound:
        raise ResourceLimitError(f"exact enumeration capped at k <= {bound}")
    if k < 0:
        return 0

    a = coins.a

    def count(i: int, rem: int) -> int:
        if i == len(a) - 1:
            return 1 if rem % a[i] == 0 else 0
        total = 0
        b = 0
        while b * a[i] <= rem:
            total += count(i + 1, rem - b * a[i])
            b += 1
        return total

    return count(0, k)


def erdos_graham_bound(coins: Coins) -> int:
    """2 * x_{n-1} * floor(x_n / n) - x_n over the sorted distinct entries.

    Requires gcd 1; an upper bound for the largest non-representable
    integer. (Beware the index-swapped variant 2*x_n*floor(x_1/n) - x_1
    that circulates: it is not an upper bound, e.g. it gives 17 for
    (5, 6, 11) whose largest non-representable integer is 19.)
    """
    if coins.g != 1:
        raise GcdNotOneError("bound applies to tuples with gcd 1")
    xs = sorted(set(coins.a))
    n = len(xs)
    second = xs[-2] if n >= 2 else xs[-1]
    return 2 * second * (xs[-1] // n) - xs[-1]


def _frobenius_upper(reduced: Coins) -> int:
    """A cheap upper bound for the largest non-representable integer.

    The Erdos-Graham bound, improved by the two-denomination formula over
    every coprime pair (dropping denominations never shrinks the
    non-representable set, so any pair bounds the whole tuple).
    """
    best = erdos_graham_bound(reduced)
    xs = sorted(set(reduced.a))
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if gcd(xs[i], xs[j]) == 1:
                best = min(best, xs[i] * xs[j] - xs[i] - xs[j])
    return best


def _window(reduced: Coins, m: int) -> int:
    """Window end B: every k > B (on the reduced tuple) has h(k) >= m.

    B = (m-1)*s1*s2 + an upper bound for F, with s1 <= s2 the two smallest
    entries: for k > B, k - (m-1)*s1*s2 is representable, and exchanging
    s1-coins for s2-coins m-1 times yields m distinct representations of k.
    """
    s1, s2 = sorted(reduced.a)[:2]
    return (m - 1) * s1 * s2 + _frobenius_upper(reduced)


def qualifying_bound(coins: Coins, m: int) -> int:
    """B such that every multiple k of the gcd with k > B has h(k) >= m."""
    if m < 1:
        raise InputError("m must be >= 1")
    return coins.g * _window(coins.reduced(), m)


def _reduced_table(coins: Coins, m: int, cell_budget: int) -> RepCountTable:
    reduced = coins.reduced()
    bound = max(_window(reduced, m), 0)
    return rep_count_table(reduced, bound, cap=m, cell_budget=cell_budget)


def _missing_bits(coins: Coins, cell_budget: int) -> tuple:
    """(bitmask of non-representable values in 0..bound, gcd, bound).

    Reachability as a big-int set: closing under +a via doubled shifts
    costs O(n log bound) word-level operations, which keeps whole-range
    sweeps (every coprime pair up to 60, say) cheap.
    """
    reduced = coins.reduced()
    bound = max(_frobenius_upper(reduced), 0)
    if bound + 1 > cell_budget:
        raise ResourceLimitError(
            f"window of {bound + 1} cells exceeds the budget of {cell_budget}"
        )
    mask = (1 << (bound + 1)) - 1
    bits = 1
    for a in reduced.a:
        step = a
        while step <= bound:
            bits |= (bits << step) & mask
            step <<= 1
    return ~bits & mask, coins.g, bound


def frobenius_number(coins: Coins, cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Largest multiple of the gcd that is not a nonnegative combination.

    Returns -gcd when every nonnegative multiple of the gcd is
    representable.
    """
    missing, g, _ = _missing_bits(coins, cell_budget)
    if missing == 0:
        return -g
    return g * (missing.bit_length() - 1)


def genus(coins: Coins, cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Number of positive multiples of the gcd that are not representable."""
    missing, _, _ = _missing_bits(coins, cell_budget)
    return missing.bit_count()


def generalized_frobenius(inst: FrobeniusInstance,
                          cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """The l-th largest multiple k of the gcd with h(k) < m.

    The qualifying set contains every negative multiple of the gcd (h = 0
    there) and contains 0 exactly when m >= 2, so the answer may be
    negative, but never below -l * gcd.
    """
    coins, m, l = inst.coins, inst.m, inst.l
    table = _reduced_table(coins, m, cell_budget)
    found = 0
    for k in range(table.bound, -1, -1):
        if table.counts[k] < m:
            found += 1
            if found == l:
                return coins.g * k
    # Not enough nonnegative qualifiers: continue into the negatives.
    return -coins.g * (l - found)


def generalized_genus(coins: Coins, m: int,
                      cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Number of positive multiples of the gcd with h(k) < m."""
    if m < 1:
        raise InputError("m must be >= 1")
    table = _reduced_table(coins, m, cell_budget)
    return sum(1 for k in range(1, table.bound + 1) if table.counts[k] < m)
