"""From polynomial families to Frobenius series and exclusion problems.

A family is a tuple of integer-valued, eventually-positive polynomials
together with the multiplicity bound m and rank l. This module reduces a
family by its gcd along residue classes, derives the exponent of the
bounding box that provably contains all answers, constructs the equivalent
projection-exclusion problem, and cross-validates the two computation paths
against each other.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import ceil, gcd

from . import frobenius, pilp
from .eqpfit import SampleSeries
from .errors import InputError, NonIntegerQuotientError, ResourceLimitError
from .frobenius import Coins, FrobeniusInstance
from .qpoly import BOTTOM, Poly, QuasiPolynomial, eventual_cmp, eventually_positive


@dataclass(frozen=True)
class PolyFamily:
    """n >= 2 integer-valued polynomials with positive leading coefficients,
    plus the multiplicity bound m and rank l."""

    polys: tuple
    m: int
    l: int

    def __post_init__(self):
        if len(self.polys) < 2:
            raise InputError("a family needs at least two polynomials")
        if self.m < 1 or self.l < 1:
            raise InputError("m and l must be >= 1")
        for p in self.polys:
            if not isinstance(p, Poly) or p.is_zero():
                raise InputError("family entries must be nonzero polynomials")
            if not p.is_integer_valued():
                raise InputError("family entries must be integer-valued")
            if not eventually_positive(p):
                raise InputError("family entries must be eventually positive")

    def values(self, t: int) -> tuple:
        return tuple(p(t) for p in self.polys)


def _root_ceiling(p: Poly) -> int:
    """An integer beyond which p has no real root (Cauchy bound)."""
    if p.degree <= 0:
        return 0
    lead = abs(p.leading_coefficient)
    cauchy = 1 + max(abs(c) for c in p.coeffs[:-1]) / lead
    return ceil(cauchy)


def positivity_start(fam: PolyFamily) -> int:
    """Smallest t0 >= 1 with every family entry positive for all t >= t0.

    Exact: beyond each entry's root bound the positive leading coefficient
    keeps it positive, and the finitely many t up to the bound are checked
    directly.
    """
    start = 1
    for p in fam.polys:
        limit = _root_ceiling(p)
        for t in range(1, limit + 1):
            if p(t) <= 0:
                start = max(start, t + 1)
    return start


def _check_range(fam: PolyFamily, t_min: int, t_max: int):
    if t_min > t_max:
        raise InputError("empty t range")
    t0 = positivity_start(fam)
    if t_min < t0:
        raise InputError(
            f"t range must start at or above the positivity start {t0}"
        )


def gcd_series(fam: PolyFamily, t_min: int, t_max: int) -> SampleSeries:
    """gcd(P_1(t), ..., P_n(t)) sampled on [t_min, t_max]."""
    _check_range(fam, t_min, t_max)
    return SampleSeries(
        t_min, tuple(gcd(*fam.values(t)) for t in range(t_min, t_max + 1))
    )


def reduce_by_gcd(fam: PolyFamily, gcd_fit: QuasiPolynomial,
                  residue: int) -> PolyFamily:
    """The family along t = residue + s*d, divided by the fitted gcd.

    d is the fitted period; the result is a family in the variable s whose
    entry gcd is eventually 1 along the class. Exact polynomial division
    with an integer-valued quotient is required; anything else means the
    fit was not the true gcd and raises NonIntegerQuotientError.
    """
    d = gcd_fit.period
    if not 0 <= residue < d:
        raise InputError("residue must lie in [0, period)")
    divisor = gcd_fit.components[residue]
    if divisor is BOTTOM:
        raise InputError("gcd fit has a -inf component; not a gcd")
    substitution = Poly((residue, d))  # t = residue + d*s
    divisor_s = divisor.compose(substitution)
    reduced = []
    for p in fam.polys:
        quo, rem = divmod(p.compose(substitution), divisor_s)
        if not rem.is_zero():
            raise NonIntegerQuotientError(
                "fitted gcd does not divide the family symbolically"
            )
        if not quo.is_integer_valued():
            raise NonIntegerQuotientError(
                "quotient is not integer-valued; fitted gcd too small"
            )
        reduced.append(quo)
    return PolyFamily(tuple(reduced), fam.m, fam.l)


def _eventually_sorted(polys) -> list:
    return sorted(polys, key=cmp_to_key(eventual_cmp))


def window_bound_poly(fam: PolyFamily) -> Poly:
    """Upper bound (as a polynomial in t) for l plus the largest answer.

    l + (m-1)*s1*s2 + EG where s1, s2 are the two eventually-smallest
    entries and EG = 2*x_max*(x_min/n) - x_min over the distinct entries is
    the polynomial relaxation of the coprime Frobenius bound. Valid
    wherever the entries are positive with gcd 1.
    """
    ordered = _eventually_sorted(fam.polys)
    s1, s2 = ordered[0], ordered[1]
    distinct = _eventually_sorted(set(fam.polys))
    n = len(distinct)
    x_min, x_max = distinct[0], distinct[-1]
    eg = x_max * x_min * Fraction(2, n) - x_min
    return Poly.constant(fam.l) + (fam.m - 1) * s1 * s2 + eg


def box_exponent(fam: PolyFamily) -> int:
    """Smallest r with the window bound eventually below t^r.

    Ties at equal degree resolve upward: t^r must strictly dominate the
    bound for large t. Intended for families whose entry gcd is eventually
    1 (reduce first).
    """
    bound = window_bound_poly(fam)
    r = 1
    while not eventually_positive(Poly.variable() ** r - bound):
        r += 1
    return r


def frobenius_to_exclusion(fam: PolyFamily, r: int) -> pilp.ExclusionProblem:
    """The exclusion problem whose answers shift the family's by +l.

    Variables are (k, b_1, ..., b_n), all in [0, t^r - 1]; the kept
    coordinate k satisfies k - sum b_i P_i(t) = l, so k runs over l plus
    the integers representable in each multiplicity. Fibers of size below
    m survive, hence the l-th largest surviving k is l plus the family's
    l-th answer, valid wherever the window bound stays below t^r.
    """
    n = len(fam.polys)
    box_edge = Poly.variable() ** r - Poly.constant(1)
    zero = Poly()
    one = Poly.constant(1)

    rows = [pilp.Row((one,) + tuple(-p for p in fam.polys), pilp.EQ,
                     Poly.constant(fam.l))]
    for i in range(n + 1):
        coeffs = [zero] * (n + 1)
        coeffs[i] = one
        rows.append(pilp.Row(tuple(coeffs), pilp.LE, box_edge))
    sys1 = pilp.ParametricConstraintSystem(n + 1, tuple(rows), (True,) * (n + 1))

    sys2 = pilp.ParametricConstraintSystem(
        1, (pilp.Row((one,), pilp.LE, box_edge),), (True,)
    )
    return pilp.ExclusionProblem(fam.m, n, 1, sys1, sys2, (one,))


def direct_series(fam: PolyFamily, t_min: int, t_max: int,
                  cell_budget: int = frobenius.DEFAULT_CELL_BUDGET):
    """(series of the l-th answers, series of the counts) by direct DP.

    This is the oracle path: each t is handled independently by the capped
    representation-count table, never via the exclusion construction.
    """
    _check_range(fam, t_min, t_max)
    f_vals = []
    g_vals = []
    for t in range(t_min, t_max + 1):
        coins = Coins(fam.values(t))
        inst = FrobeniusInstance(coins, fam.m, fam.l)
        f_vals.append(frobenius.generalized_frobenius(inst, cell_budget))
        g_vals.append(frobenius.generalized_genus(coins, fam.m, cell_budget))
    return SampleSeries(t_min, tuple(f_vals)), SampleSeries(t_min, tuple(g_vals))


EQUAL = "EQUAL"
G_OFFSET = "G_OFFSET"  # f equal, g columns differ (reported, not adjusted)
DIFF = "DIFF"  # the l-th answers differ: hard failure
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CrosscheckRow:
    """One t of the exclusion-path versus direct-path comparison.

    f columns both show the family's l-th answer (the exclusion value is
    shifted back by -l). g columns show the raw feasible-set size next to
    the direct count plus l, the quantity claimed equal to it; any gap
    between them is reported as-is, never adjusted away. (For m >= 2 the
    feasible set also contains the value 0, which the direct count does
    not, so a constant gap of 1 is the expected outcome there.)
    """

    t: int
    status: str
    f_exclusion: object  # l-th answer via exclusion, shifted by -l
    f_direct: int | None
    g_exclusion: int | None  # raw feasible-set size
    g_direct: int | None  # direct count plus l
    note: str = ""


@dataclass(frozen=True)
class CrosscheckReport:
    rows: tuple
    checked: int
    f_all_equal: bool
    g_offsets: tuple  # sorted distinct g_exclusion - g_direct deltas

    @property
    def g_offset_constant(self) -> bool:
        return len(self.g_offsets) <= 1

    @property
    def ok(self) -> bool:
        return self.checked > 0 and self.f_all_equal and self.g_offset_constant


def crosscheck(fam: PolyFamily, t_min: int, t_max: int,
               point_cap: int = pilp.DEFAULT_POINT_CAP) -> CrosscheckReport:
    """Compare exclusion-path and direct-path answers on a t window.

    Rows are SKIPPED (with the reason) where the construction is not yet
    valid: an entry nonpositive, entry gcd not 1, the window bound not
    below t^r, or the box too large for the point cap.
    """
    if t_min > t_max:
        raise InputError("empty t range")
    r = box_exponent(fam)
    bound = window_bound_poly(fam)
    ex = frobenius_to_exclusion(fam, r)

    rows = []
    f_all_equal = True
    deltas = set()
    checked = 0
    for t in range(t_min, t_max + 1):
        values = fam.values(t)
        skip = None
        if any(v <= 0 for v in values):
            skip = "entry not positive"
        elif gcd(*values) != 1:
            skip = "entry gcd is not 1"
        elif bound(t) >= t**r:
            skip = f"window bound {bound(t)} not below t^{r}"
        elif t**r > point_cap:
            skip = f"box size t^{r} exceeds the point cap"
        if skip is not None:
            rows.append(CrosscheckRow(t, SKIPPED, None, None, None, None, skip))
            continue

        try:
            f_vals, g_val = pilp.exclusion_values(ex, fam.l, t, point_cap)
        except ResourceLimitError:
            rows.append(CrosscheckRow(
                t, SKIPPED, None, None, None, None,
                "enumeration exceeded the point cap",
            ))
            continue

        coins = Coins(values)
        f_direct = frobenius.generalized_frobenius(
            FrobeniusInstance(coins, fam.m, fam.l)
        )
        g_direct = frobenius.generalized_genus(coins, fam.m)

        f_val = f_vals[fam.l - 1]
        f_shifted = f_val - fam.l if f_val is not BOTTOM else BOTTOM
        f_equal = f_shifted == f_direct and f_val is not BOTTOM
        checked += 1
        f_all_equal = f_all_equal and f_equal
        deltas.add(g_val - (g_direct + fam.l))
        if not f_equal:
            status = DIFF
        elif g_val != g_direct + fam.l:
            status = G_OFFSET
        else:
            status = EQUAL
        rows.append(CrosscheckRow(
            t, status, f_shifted, f_direct, g_val, g_direct + fam.l,
        ))

    return CrosscheckReport(tuple(rows), checked, f_all_equal,
                            tuple(sorted(deltas)))
