"""Exact rational arithmetic substrate: one-variable polynomials with
rational coefficients, the BOTTOM value, and quasi-polynomials.

Everything here is exact (python ints and fractions.Fraction); no floating
point is used anywhere in the package. All types are immutable after
construction and safe to share between threads.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import BelowThresholdError, InputError


class _Bottom:
    """The minimum element: compares strictly below every finite value.

    There is a single instance, ``BOTTOM``. It stands in for the value a
    ranking function takes when fewer elements exist than were asked for.
    """

    __slots__ = ()

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return not isinstance(other, _Bottom)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _Bottom)


BOTTOM = _Bottom()

# An extended value is BOTTOM or an exact number.
ExtendedValue = int | Fraction | _Bottom


def _normalize(value):
    """Collapse integral Fractions to int."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class Poly:
    """One-variable polynomial with exact rational coefficients.

    Coefficients are stored in ascending degree; the zero polynomial has an
    empty coefficient tuple. A polynomial may map the integers to the
    integers without having integer coefficients (u*(u-1)/2 does); use
    :meth:`is_integer_valued` for that test.
    """

    __slots__ = ("coeffs", "_integer_valued")

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._integer_valued = None

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def variable(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree of the leading term; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        """Exact value at t (int when the result is integral)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return _normalize(acc)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative polynomial power")
        result = Poly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by u^k."""
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def compose(self, inner: "Poly") -> "Poly":
        """Substitute ``inner`` for the variable."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c)
        return acc

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quo = Poly()
        rem = self
        while not rem.is_zero() and rem.degree >= other.degree:
            c = rem.leading_coefficient / other.leading_coefficient
            term = Poly.constant(c).shift(rem.degree - other.degree)
            quo = quo + term
            rem = rem - term * other
        return quo, rem

    @staticmethod
    def _coerce(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return Poly.constant(value)

    def binomial_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients in the binomial basis (iterated forward differences
        at 0). The polynomial maps Z to Z iff all of these are integers."""
        values = [Fraction(self(k)) for k in range(self.degree + 1)] or [Fraction(0)]
        out = []
        while values:
            out.append(values[0])
            values = [b - a for a, b in zip(values, values[1:])]
        return tuple(out)

    def is_integer_valued(self) -> bool:
        """True iff p(k) is an integer for every integer k."""
        if self._integer_valued is None:
            self._integer_valued = all(
                c.denominator == 1 for c in self.binomial_coefficients()
            )
        return self._integer_valued

    def __repr__(self):
        from .formats import format_poly_expr

        return f"Poly({format_poly_expr(self)!r})"


def eventually_positive(p: Poly) -> bool:
    """True iff p(t) > 0 for all sufficiently large t."""
    return not p.is_zero() and p.leading_coefficient > 0


def eventual_cmp(p: Poly, q: Poly) -> int:
    """Sign of p(t) - q(t) for large t: -1, 0, or 1."""
    diff = p - q
    if diff.is_zero():
        return 0
    return 1 if diff.leading_coefficient > 0 else -1


@dataclass(frozen=True)
class QuasiPolynomial:
    """Periodic family of polynomial components valid beyond a threshold.

    ``components[t % period]`` gives the value at t for every t >
    ``threshold``; a component may be BOTTOM, meaning the function is
    constantly BOTTOM along that residue class.
    """

    period: int
    components: tuple
    threshold: int

    def __post_init__(self):
        if self.period < 1:
            raise InputError("period must be >= 1")
        if len(self.components) != self.period:
            raise InputError("component count must equal the period")
        for comp in self.components:
            if not (comp is BOTTOM or isinstance(comp, Poly)):
                raise InputError("components must be Poly or BOTTOM")

    def eval(self, t: int) -> ExtendedValue:
        """Exact value at t; raises BelowThresholdError for t <= threshold."""
        if t <= self.threshold:
            raise BelowThresholdError(
                f"t={t} is not above the threshold {self.threshold}"
            )
        comp = self.components[t % self.period]
        if comp is BOTTOM:
            return BOTTOM
        return comp(t)

    def lifted(self, factor: int) -> "QuasiPolynomial":
        """The same function presented with period multiplied by ``factor``."""
        if factor < 1:
            raise InputError("lift factor must be >= 1")
        comps = tuple(
            self.components[r % self.period] for r in range(self.period * factor)
        )
        return QuasiPolynomial(self.period * factor, comps, self.threshold)


def eventually_equal(q1: QuasiPolynomial, q2: QuasiPolynomial) -> bool:
    """True iff the two quasi-polynomials agree for all sufficiently large t.

    Decided symbolically: lift both to the lcm of the periods and compare
    components; thresholds are irrelevant.
    """
    d = lcm(q1.period, q2.period)
    a = q1.lifted(d // q1.period)
    b = q2.lifted(d // q2.period)
    for c1, c2 in zip(a.components, b.components):
        if (c1 is BOTTOM) != (c2 is BOTTOM):
            return False
        if c1 is not BOTTOM and c1 != c2:
            return False
    return True
