"""Detect and fit eventual quasi-polynomial structure in exact sample series.

A fit is exact or it is no fit: a returned quasi-polynomial reproduces every
training and holdout sample above its threshold with zero tolerance. A
NO_FIT verdict only means no fit exists within the searched period/degree
bounds; it is not a proof that the sampled function has no such structure.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InsufficientDataError
from .qpoly import BOTTOM, ExtendedValue, Poly, QuasiPolynomial


@dataclass(frozen=True)
class SampleSeries:
    """Exact values on a contiguous integer range [t_min, t_min + len - 1]."""

    t_min: int
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise InputError("series must be nonempty")

    @classmethod
    def from_pairs(cls, pairs) -> "SampleSeries":
        items = sorted(pairs)
        ts = [t for t, _ in items]
        if not items:
            raise InputError("series must be nonempty")
        if ts != list(range(ts[0], ts[0] + len(ts))):
            raise InputError("sample keys must be contiguous integers")
        return cls(ts[0], tuple(v for _, v in items))

    @property
    def t_max(self) -> int:
        return self.t_min + len(self.values) - 1

    def value_at(self, t: int) -> ExtendedValue:
        if not self.t_min <= t <= self.t_max:
            raise InputError(f"t={t} outside sampled range")
        return self.values[t - self.t_min]

    def items(self):
        return [(self.t_min + i, v) for i, v in enumerate(self.values)]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class FitConfig:
    """Search bounds for the fitter.

    ``holdout`` trailing samples are excluded from fitting and must be
    reproduced exactly afterwards (at most half the series is reserved, so
    short series still leave something to train on); each residue class
    needs at least ``min_support`` training points confirming its
    component.
    """

    d_max: int = 24
    deg_max: int = 6
    holdout: int | None = None
    min_support: int | None = None

    def __post_init__(self):
        if self.d_max < 1 or self.deg_max < 0:
            raise InputError("d_max must be >= 1 and deg_max >= 0")
        if self.holdout is None:
            object.__setattr__(self, "holdout", 2 * self.d_max)
        if self.min_support is None:
            object.__setattr__(self, "min_support", self.deg_max + 3)
        if self.holdout < 0:
            raise InputError("holdout must be >= 0")
        if self.min_support < self.deg_max + 2:
            raise InputError("min_support must be >= deg_max + 2")


@dataclass(frozen=True)
class Fit:
    """Successful fit: qp reproduces all post-threshold samples exactly."""

    qp: QuasiPolynomial
    training_checked: int
    holdout_checked: int


@dataclass(frozen=True)
class NoFit:
    """Bounded-search failure verdict with per-(period, residue) reasons."""

    diagnostics: tuple  # of (d, residue-or-None, reason)
    note: str = (
        "bounded-search verdict: no fit within the configured period and "
        "degree bounds; this does not prove the series has no eventual "
        "quasi-polynomial structure"
    )


@dataclass(frozen=True)
class ValidationReport:
    agree_count: int
    compared_count: int
    first_disagreement: tuple | None  # (t, sample value, qp value)


def interpolate_component(points, deg_max: int) -> Poly | None:
    """The unique polynomial of degree <= deg_max through the first
    deg_max+1 points, provided it also matches every remaining point
    exactly; None otherwise.

    Requires at least deg_max + 2 points with distinct, finite values.
    """
    if len(points) < deg_max + 2:
        raise InputError(f"need at least {deg_max + 2} points")
    ts = [t for t, _ in points]
    if len(set(ts)) != len(ts):
        raise InputError("interpolation points must have distinct t")
    head = points[: deg_max + 1]
    poly = _newton_interpolate(head)
    for t, v in points[deg_max + 1:]:
        if poly(t) != v:
            return None
    return poly


def _newton_interpolate(points) -> Poly:
    """Exact Newton-form interpolation through all given points."""
    ts = [Fraction(t) for t, _ in points]
    coeffs = [Fraction(v) for _, v in points]
    # Divided differences in place.
    for j in range(1, len(points)):
        for i in range(len(points) - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (ts[i] - ts[i - j])
    poly = Poly()
    basis = Poly.constant(1)
    for i, c in enumerate(coeffs):
        poly = poly + basis * c
        basis = basis * (Poly.variable() - Poly.constant(ts[i]))
    return poly


def _fit_class(points, cfg: FitConfig, first_t: int):
    """Fit one residue class: (component, threshold) or (None, reason).

    The component is BOTTOM when the trailing ``min_support`` values are all
    BOTTOM; otherwise the finite samples after the last BOTTOM must be
    interpolated exactly by the polynomial through their earliest
    ``deg_max + 1`` points (no tail-window shopping: anchoring anywhere
    later would let any series with a long polynomial stretch "fit"). The
    threshold is the largest sampled t disagreeing with the component,
    which here can only be a leading BOTTOM (first_t - 1 when none).
    """
    trailing = points[-cfg.min_support:]
    if all(v is BOTTOM for _, v in trailing):
        finite_ts = [t for t, v in points if v is not BOTTOM]
        return BOTTOM, (max(finite_ts) if finite_ts else first_t - 1)
    if any(v is BOTTOM for _, v in trailing):
        return None, "trailing values mix -inf and finite samples"

    last_bottom = -1
    for i, (_, v) in enumerate(points):
        if v is BOTTOM:
            last_bottom = i
    finite = points[last_bottom + 1:]
    if len(finite) < cfg.min_support:
        return None, (
            f"only {len(finite)} finite points after the last -inf "
            f"(min_support={cfg.min_support})"
        )
    poly = interpolate_component(finite, cfg.deg_max)
    if poly is None:
        return None, (
            f"the polynomial of degree <= {cfg.deg_max} through the "
            f"earliest points does not match the rest of the class"
        )
    threshold = points[last_bottom][0] if last_bottom >= 0 else first_t - 1
    return poly, threshold


def fit_quasipolynomial(series: SampleSeries, cfg: FitConfig | None = None):
    """Search periods 1..d_max for an exact eventual fit; minimal period wins.

    For each candidate period the training samples (all but the trailing
    holdout) are split by residue class and fitted independently; a
    candidate succeeds when every class fits and the assembled
    quasi-polynomial also reproduces every holdout sample. Periods whose
    classes retain fewer than ``min_support`` training points are skipped
    with a diagnostic rather than attempted.
    """
    cfg = cfg or FitConfig()
    reserved = min(cfg.holdout, len(series) // 2)
    items = series.items()
    training = items[: len(items) - reserved]
    holdout = items[len(items) - reserved:]
    if len(training) < cfg.min_support:
        raise InsufficientDataError(
            f"{len(training)} training samples cannot support any fit "
            f"(min_support={cfg.min_support})"
        )

    diagnostics = []
    for d in range(1, cfg.d_max + 1):
        classes = {r: [] for r in range(d)}
        for t, v in training:
            classes[t % d].append((t, v))
        short = [r for r in range(d) if len(classes[r]) < cfg.min_support]
        if short:
            diagnostics.append(
                (d, short[0],
                 f"only {len(classes[short[0]])} training points in class "
                 f"(min_support={cfg.min_support})")
            )
            continue

        components = [None] * d
        threshold = series.t_min - 1
        failed = False
        for r in range(d):
            comp, info = _fit_class(classes[r], cfg, series.t_min)
            if comp is None:
                diagnostics.append((d, r, info))
                failed = True
                break
            components[r] = comp
            threshold = max(threshold, info)
        if failed:
            continue

        qp = QuasiPolynomial(d, tuple(components), threshold)
        bad = _first_mismatch(qp, holdout)
        if bad is not None:
            diagnostics.append((d, None, f"holdout mismatch at t={bad}"))
            continue
        confirmed = sum(1 for t, _ in training if t > threshold)
        return Fit(qp, training_checked=confirmed, holdout_checked=len(holdout))

    return NoFit(tuple(diagnostics))


def _first_mismatch(qp: QuasiPolynomial, items) -> int | None:
    for t, v in items:
        if t <= qp.threshold:
            continue
        got = qp.eval(t)
        if (got is BOTTOM) != (v is BOTTOM):
            return t
        if got is not BOTTOM and got != v:
            return t
    return None


def validate(qp: QuasiPolynomial, series: SampleSeries) -> ValidationReport:
    """Compare qp against every sample above its threshold."""
    agree = 0
    compared = 0
    first = None
    for t, v in series.items():
        if t <= qp.threshold:
            continue
        compared += 1
        got = qp.eval(t)
        same = (got is BOTTOM and v is BOTTOM) or (
            got is not BOTTOM and v is not BOTTOM and got == v
        )
        if same:
            agree += 1
        elif first is None:
            first = (t, v, got)
    return ValidationReport(agree, compared, first)
