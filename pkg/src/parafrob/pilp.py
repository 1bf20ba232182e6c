"""Desk-scale semantics for parametric integer linear constraint systems.

A system is instantiated at a concrete integer parameter t, its integer
points are enumerated exactly (interval bound propagation followed by
depth-first search), and counting / ranking / projection-exclusion
questions are answered from the enumeration. Also home to the base-t digit
bijections and the disjoint-disjunction expansion of DNF formulas.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DigitRangeError,
    InputError,
    OutOfRangeError,
    ResourceLimitError,
    UnboundedRegionError,
)
from .qpoly import BOTTOM, ExtendedValue, Poly

LE = "<="
EQ = "=="

# Propagation sweeps before giving up on deriving finite bounds.
MAX_SWEEPS = 100

DEFAULT_POINT_CAP = 1_000_000
DEFAULT_CLAUSE_CAP = 100_000


@dataclass(frozen=True)
class Row:
    """One constraint: coeffs . x  (<= or ==)  rhs, entries in Z[u]."""

    coeffs: tuple
    sense: str
    rhs: Poly

    def __post_init__(self):
        if self.sense not in (LE, EQ):
            raise InputError(f"sense must be {LE!r} or {EQ!r}")
        for p in self.coeffs + (self.rhs,):
            if not isinstance(p, Poly):
                raise InputError("row entries must be Poly")
            if not p.is_integer_valued():
                raise InputError("row entries must be integer-valued polynomials")


@dataclass(frozen=True)
class ParametricConstraintSystem:
    """Constraint rows over n integer variables with per-variable >=0 flags."""

    n: int
    rows: tuple
    nonneg: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InputError("need at least one variable")
        if len(self.nonneg) != self.n:
            raise InputError("one nonneg flag per variable required")
        for row in self.rows:
            if len(row.coeffs) != self.n:
                raise InputError("row width must match variable count")


@dataclass(frozen=True)
class LatticeSet:
    """Distinct integer points of an instantiated system, lexicographic."""

    points: tuple
    t: int

    def __len__(self):
        return len(self.points)


def _int_value(p: Poly, t: int) -> int:
    v = p(t)
    if isinstance(v, Fraction):
        raise InputError("non-integer instantiation; t must be an integer")
    return v


def _instantiate(sys: ParametricConstraintSystem, t: int):
    return [
        (tuple(_int_value(c, t) for c in row.coeffs), row.sense, _int_value(row.rhs, t))
        for row in sys.rows
    ]


def _propagate(rows, nonneg, n):
    """Iterated single-row interval tightening to a fixpoint.

    Returns (lo, hi) integer bound lists, or None when a contradiction
    proves the region empty. Raises UnboundedRegionError when some
    coordinate still has no finite bound after MAX_SWEEPS sweeps.
    """
    lo = [0 if nonneg[i] else None for i in range(n)]
    hi = [None] * n

    les = []
    for coeffs, sense, rhs in rows:
        if all(c == 0 for c in coeffs):
            if rhs < 0 or (sense == EQ and rhs != 0):
                return None
            continue
        les.append((coeffs, rhs))
        if sense == EQ:
            les.append((tuple(-c for c in coeffs), -rhs))

    for _ in range(MAX_SWEEPS):
        changed = False
        for coeffs, rhs in les:
            # Minimum possible value of each term, None when unbounded below.
            mins = []
            total = 0
            infinite = 0
            for k, c in enumerate(coeffs):
                if c == 0:
                    mins.append(0)
                    continue
                bound = lo[k] if c > 0 else hi[k]
                if bound is None:
                    mins.append(None)
                    infinite += 1
                else:
                    mins.append(c * bound)
                    total += c * bound
            for j, c in enumerate(coeffs):
                if c == 0:
                    continue
                others_infinite = infinite - (1 if mins[j] is None else 0)
                if others_infinite:
                    continue
                rest = total - (mins[j] if mins[j] is not None else 0)
                slack = rhs - rest
                if c > 0:
                    new_hi = slack // c
                    if hi[j] is None or new_hi < hi[j]:
                        hi[j] = new_hi
                        changed = True
                else:
                    new_lo = -(slack // (-c))
                    if lo[j] is None or new_lo > lo[j]:
                        lo[j] = new_lo
                        changed = True
                if lo[j] is not None and hi[j] is not None and lo[j] > hi[j]:
                    return None
        if not changed:
            break

    missing = [i for i in range(n) if lo[i] is None or hi[i] is None]
    if missing:
        raise UnboundedRegionError(
            f"no finite bounds derivable for coordinate(s) {missing}"
        )
    return lo, hi


def propagated_box(sys: ParametricConstraintSystem, t: int):
    """The (lo, hi) box the propagation derives at t; None if proven empty."""
    return _propagate(_instantiate(sys, t), sys.nonneg, sys.n)


def _search_order(lo, hi):
    """Static variable order for the search: smallest range first.

    Output order does not depend on this (points are re-sorted); it only
    controls how early equality rows pin their last free variable.
    """
    n = len(lo)
    return sorted(range(n), key=lambda i: (hi[i] - lo[i], i))


def _iter_points(rows, lo, hi, visit, point_cap):
    """Depth-first enumeration over the propagated box; calls visit(point)
    for every lattice point satisfying all rows."""
    n = len(lo)
    order = _search_order(lo, hi)

    # Per-row data in search order: coefficients, suffix min/max of the
    # still-unassigned terms, running partial sums.
    coeffs = [[row[0][v] for v in order] for row in rows]
    senses = [row[1] for row in rows]
    rhss = [row[2] for row in rows]
    nrows = len(rows)
    sufmin = []
    sufmax = []
    for r in range(nrows):
        mins = [0] * (n + 1)
        maxs = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            c = coeffs[r][i]
            v = order[i]
            cmin = c * lo[v] if c >= 0 else c * hi[v]
            cmax = c * hi[v] if c >= 0 else c * lo[v]
            mins[i] = mins[i + 1] + cmin
            maxs[i] = maxs[i + 1] + cmax
        sufmin.append(mins)
        sufmax.append(maxs)

    psum = [0] * nrows
    point = [0] * n
    seen = 0

    def rec(i):
        nonlocal seen
        if i == n:
            for r in range(nrows):
                if psum[r] > rhss[r] or (senses[r] == EQ and psum[r] != rhss[r]):
                    return
            seen += 1
            if seen > point_cap:
                raise ResourceLimitError(
                    f"more than {point_cap} lattice points"
                )
            visit(tuple(point))
            return
        v = order[i]
        lo_i, hi_i = lo[v], hi[v]
        for r in range(nrows):
            c = coeffs[r][i]
            slack = rhss[r] - psum[r]
            if c == 0:
                if sufmin[r][i + 1] > slack:
                    return
                if senses[r] == EQ and sufmax[r][i + 1] < slack:
                    return
                continue
            if c > 0:
                b = (slack - sufmin[r][i + 1]) // c
                if b < hi_i:
                    hi_i = b
                if senses[r] == EQ:
                    b = -((sufmax[r][i + 1] - slack) // c)
                    if b > lo_i:
                        lo_i = b
            else:
                b = -((slack - sufmin[r][i + 1]) // (-c))
                if b > lo_i:
                    lo_i = b
                if senses[r] == EQ:
                    b = (sufmax[r][i + 1] - slack) // (-c)
                    if b < hi_i:
                        hi_i = b
        if lo_i > hi_i:
            return
        touched = [r for r in range(nrows) if coeffs[r][i] != 0]
        point[v] = lo_i
        for r in touched:
            psum[r] += coeffs[r][i] * lo_i
        for value in range(lo_i, hi_i + 1):
            if value != lo_i:
                point[v] = value
                for r in touched:
                    psum[r] += coeffs[r][i]
            rec(i + 1)
        for r in touched:
            psum[r] -= coeffs[r][i] * hi_i

    rec(0)


def _stream(sys: ParametricConstraintSystem, t: int, visit, point_cap):
    rows = _instantiate(sys, t)
    box = _propagate(rows, sys.nonneg, sys.n)
    if box is None:
        return
    lo, hi = box
    _iter_points(rows, lo, hi, visit, point_cap)


def enumerate_lattice(sys: ParametricConstraintSystem, t: int,
                      point_cap: int = DEFAULT_POINT_CAP) -> LatticeSet:
    """All integer points of the instantiated system, lexicographic.

    Raises UnboundedRegionError when propagation cannot bound every
    coordinate and ResourceLimitError past point_cap points.
    """
    points = []
    _stream(sys, t, points.append, point_cap)
    points.sort()
    return LatticeSet(tuple(points), t)


def size_function(sys: ParametricConstraintSystem, t: int,
                  point_cap: int = DEFAULT_POINT_CAP) -> int:
    """Number of lattice points of the instantiated system."""
    count = 0

    def visit(_):
        nonlocal count
        count += 1

    _stream(sys, t, visit, point_cap)
    return count


def _objective_values(c, points, t):
    ct = [_int_value(p, t) for p in c]
    return [sum(ci * xi for ci, xi in zip(ct, pt)) for pt in points]


def lth_largest_objective(sys: ParametricConstraintSystem, c, l: int, t: int,
                          point_cap: int = DEFAULT_POINT_CAP) -> ExtendedValue:
    """The l-th largest objective value with multiplicity, BOTTOM when
    fewer than l points exist."""
    if l < 1:
        raise InputError("l must be >= 1")
    if len(c) != sys.n:
        raise InputError("objective width must match variable count")
    values = []

    def visit(pt):
        values.append(pt)

    _stream(sys, t, visit, point_cap)
    vals = sorted(_objective_values(c, values, t), reverse=True)
    if len(vals) < l:
        return BOTTOM
    return vals[l - 1]


@dataclass(frozen=True)
class ExclusionProblem:
    """Exclude from one lattice set the heavily-covered fibers of another.

    Variables of sys1 are ordered kept-block first: coordinates 1..n2 are
    the projection target, coordinates n2+1..n1+n2 are projected out. The
    feasible set at t consists of the sys2 points whose fiber in the sys1
    points has fewer than m elements.
    """

    m: int
    n1: int
    n2: int
    sys1: ParametricConstraintSystem
    sys2: ParametricConstraintSystem
    c: tuple

    def __post_init__(self):
        if self.m < 1 or self.n1 < 1 or self.n2 < 1:
            raise InputError("m, n1, n2 must be >= 1")
        if self.sys1.n != self.n1 + self.n2:
            raise InputError("sys1 must have n1 + n2 variables")
        if self.sys2.n != self.n2:
            raise InputError("sys2 must have n2 variables")
        if len(self.c) != self.n2:
            raise InputError("objective must have n2 entries")


def exclusion_feasible(ex: ExclusionProblem, t: int,
                       point_cap: int = DEFAULT_POINT_CAP) -> LatticeSet:
    """The feasible set: sys2 points covered by fewer than m sys1 fibers.

    Fiber counts saturate at m; only "< m versus >= m" matters.
    """
    n2 = ex.n2
    m = ex.m
    fibers = {}

    def visit(pt):
        key = pt[:n2]
        cnt = fibers.get(key, 0)
        if cnt < m:
            fibers[key] = cnt + 1

    _stream(ex.sys1, t, visit, point_cap)
    outer = enumerate_lattice(ex.sys2, t, point_cap)
    kept = tuple(p for p in outer.points if fibers.get(p, 0) < m)
    return LatticeSet(kept, t)


def exclusion_values(ex: ExclusionProblem, l_max: int, t: int,
                     point_cap: int = DEFAULT_POINT_CAP):
    """(the l_max largest objective values over the feasible set, its size).

    The value list is BOTTOM-padded once the feasible set is exhausted.
    """
    if l_max < 1:
        raise InputError("l_max must be >= 1")
    feasible = exclusion_feasible(ex, t, point_cap)
    vals = sorted(_objective_values(ex.c, feasible.points, t), reverse=True)
    out = tuple(vals[i] if i < len(vals) else BOTTOM for i in range(l_max))
    return out, len(feasible.points)


# ---------------------------------------------------------------------------
# Base-t digit bijections.


def _check_digit_args(t: int, r: int):
    if t < 2:
        raise InputError("base t must be >= 2")
    if r < 1:
        raise InputError("digit count r must be >= 1")


def digit_decode(y, t: int, r: int) -> tuple:
    """Per-coordinate base-t value of a digit vector of length r*n.

    Digit j of coordinate i sits at position i*r + j (least significant
    digit first).
    """
    _check_digit_args(t, r)
    if len(y) % r != 0:
        raise InputError("digit vector length must be a multiple of r")
    if any(d < 0 or d >= t for d in y):
        raise DigitRangeError(f"digits must lie in [0, {t - 1}]")
    out = []
    for i in range(len(y) // r):
        block = y[i * r:(i + 1) * r]
        out.append(sum(d * t**j for j, d in enumerate(block)))
    return tuple(out)


def digit_encode(x, t: int, r: int) -> tuple:
    """The unique digit vector with digit_decode(result) == x."""
    _check_digit_args(t, r)
    out = []
    for v in x:
        if v < 0 or v >= t**r:
            raise OutOfRangeError(f"value {v} outside [0, {t}^{r})")
        for _ in range(r):
            v, d = divmod(v, t)
            out.append(d)
    return tuple(out)


def digit_transform(sys: ParametricConstraintSystem, r: int) -> ParametricConstraintSystem:
    """Rewrite each variable as r base-t digits.

    Variable i becomes digits (i*r .. i*r + r - 1), each constrained to
    [0, t-1]; the coefficient of digit j is the original coefficient times
    u^j. Valid for systems whose variables are all nonnegative (the digit
    image covers exactly [0, t^r)^n).
    """
    if r < 1:
        raise InputError("digit count r must be >= 1")
    if not all(sys.nonneg):
        raise InputError("digit transform requires all-nonnegative variables")
    rows = []
    for row in sys.rows:
        coeffs = []
        for p in row.coeffs:
            for j in range(r):
                coeffs.append(p.shift(j))
        rows.append(Row(tuple(coeffs), row.sense, row.rhs))
    cap = Poly((-1, 1))  # u - 1
    for pos in range(sys.n * r):
        coeffs = [Poly()] * (sys.n * r)
        coeffs[pos] = Poly.constant(1)
        rows.append(Row(tuple(coeffs), LE, cap))
    return ParametricConstraintSystem(sys.n * r, tuple(rows), (True,) * (sys.n * r))


def digit_transform_exclusion(ex: ExclusionProblem, r: int) -> ExclusionProblem:
    """Digit-rewrite both systems and the objective of an exclusion problem."""
    c = []
    for p in ex.c:
        for j in range(r):
            c.append(p.shift(j))
    return ExclusionProblem(
        ex.m,
        ex.n1 * r,
        ex.n2 * r,
        digit_transform(ex.sys1, r),
        digit_transform(ex.sys2, r),
        tuple(c),
    )


# ---------------------------------------------------------------------------
# DNF formulas over parametric inequalities, and disjoint expansion.


@dataclass(frozen=True)
class Atom:
    """A parametric inequality coeffs . z <= rhs over named integer
    variables; negation stays inside the atom language."""

    coeffs: tuple
    rhs: Poly

    def negated(self) -> "Atom":
        return Atom(tuple(-c for c in self.coeffs), -self.rhs - Poly.constant(1))

    def holds(self, z, t) -> bool:
        lhs = sum(c(t) * zi for c, zi in zip(self.coeffs, z))
        return lhs <= self.rhs(t)

    def _key(self):
        return tuple(p.coeffs for p in self.coeffs), self.rhs.coeffs

    def base_literal(self):
        """(canonical base atom key, polarity): an atom and its negation
        share the base and differ in polarity."""
        mine = self._key()
        other = self.negated()._key()
        if mine <= other:
            return mine, True
        return other, False


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctions of atoms; clause and atom order matter
    (the expansion below is defined in terms of them)."""

    variables: tuple
    clauses: tuple

    def __post_init__(self):
        for clause in self.clauses:
            for atom in clause:
                if len(atom.coeffs) != len(self.variables):
                    raise InputError("atom width must match variable count")

    def holds(self, z, t) -> bool:
        return any(all(a.holds(z, t) for a in clause) for clause in self.clauses)


def disjoint_expand(f: DnfFormula,
                    clause_cap: int = DEFAULT_CLAUSE_CAP) -> DnfFormula:
    """Equivalent DNF whose clauses are pairwise unsatisfiable together.

    Each output clause extends an input clause S with, for every earlier
    clause R, a chosen "first failing atom" of R: the atoms of R before the
    choice hold and the chosen atom is negated. Distinct choices conflict
    on the chosen atom, so the output clauses are disjoint by construction
    while their union is unchanged.
    """
    out = []
    for idx, clause in enumerate(f.clauses):
        earlier = f.clauses[:idx]
        for choice in itertools.product(
            *(range(len(R) - 1, -1, -1) for R in earlier)
        ):
            prefix = []
            for R, w in zip(earlier, choice):
                prefix.extend(R[:w])
                prefix.append(R[w].negated())
            out.append(tuple(prefix) + clause)
            if len(out) > clause_cap:
                raise ResourceLimitError(
                    f"expansion exceeds {clause_cap} clauses"
                )
    return DnfFormula(f.variables, tuple(out))
