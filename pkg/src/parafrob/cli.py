"""Batch command-line front end.

Commands: compute, series, fit, crosscheck, pilp. All numeric output is
exact (integer or rational strings); the machine format is line-oriented
key/value text so runs can be diffed byte for byte. Exit codes: 0 success,
2 input error, 3 resource limit, 4 crosscheck mismatch.
"""

import sys
from pathlib import Path

import click

from . import eqpfit, formats, frobenius, pilp, reduction
from .errors import (
    InputError,
    InsufficientDataError,
    ParafrobError,
    ResourceLimitError,
    UnboundedRegionError,
)
from .frobenius import FrobeniusInstance
from .qpoly import BOTTOM

EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_MISMATCH = 4


def _emit(lines, out: str | None):
    text = "\n".join(lines) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(body):
    try:
        body()
    except (InputError, UnboundedRegionError, InsufficientDataError) as exc:
        _fail(EXIT_INPUT, str(exc))
    except ResourceLimitError as exc:
        _fail(EXIT_RESOURCE, str(exc))
    except ParafrobError as exc:
        _fail(EXIT_INPUT, str(exc))


format_option = click.option(
    "--format", "fmt", type=click.Choice(["table", "machine"]),
    default="table", show_default=True, help="Output style.",
)
out_option = click.option(
    "--out", default=None, help="Write output to this file instead of stdout.",
)


@click.group()
def main():
    """Exact Frobenius quantities, lattice enumeration, and series fitting."""


@main.command()
@click.option("--a", "tuple_text", required=True,
              help="Denomination tuple, e.g. '3,5' or '[6, 10, 15]'.")
@click.option("--m", default=1, show_default=True, help="Multiplicity bound.")
@click.option("--l", default=1, show_default=True, help="Rank of the answer.")
@click.option("--h-excerpt", default=16, show_default=True,
              help="Print min(h(k), m) for k up to this bound.")
@format_option
@out_option
def compute(tuple_text, m, l, h_excerpt, fmt, out):
    """Frobenius number, genus, and their (m, l) generalizations."""

    def body():
        coins = formats.parse_coins(tuple_text)
        inst = FrobeniusInstance(coins, m, l)
        f = frobenius.frobenius_number(coins)
        g = frobenius.genus(coins)
        fml = frobenius.generalized_frobenius(inst)
        gm = frobenius.generalized_genus(coins, m)
        excerpt = frobenius.rep_count_table(coins, h_excerpt, cap=max(m, 2))
        if fmt == "machine":
            lines = [f"F {f}", f"G {g}", f"F_m_l {fml}", f"G_m {gm}"]
            lines += [f"h {k} {c}" for k, c in enumerate(excerpt.counts)]
        else:
            lines = [
                f"tuple          {formats.format_coins(coins)}",
                f"F              {f}",
                f"G              {g}",
                f"F_m_l (m={m}, l={l})  {fml}",
                f"G_m   (m={m})        {gm}",
                f"h(k) capped at {excerpt.cap}, k = 0..{excerpt.bound}:",
                "  " + " ".join(str(c) for c in excerpt.counts),
            ]
        _emit(lines, out)

    _guard(body)


@main.command()
@click.option("--family", "family_path", required=True,
              type=click.Path(exists=True), help="Family file (poly/m/l).")
@click.option("--t-min", required=True, type=int)
@click.option("--t-max", required=True, type=int)
@click.option("--out", "out_prefix", required=True,
              help="Series are written to <out>.fml.series and <out>.gm.series.")
def series(family_path, t_min, t_max, out_prefix):
    """Sample the family's l-th answer and count over a t range.

    Re-running with an existing output only computes the missing t values
    and rewrites the merged, sorted series.
    """

    def body():
        fam = formats.parse_family(Path(family_path).read_text())
        targets = {
            "fml": Path(f"{out_prefix}.fml.series"),
            "gm": Path(f"{out_prefix}.gm.series"),
        }
        existing = {}
        for key, path in targets.items():
            existing[key] = (
                dict(formats.parse_series(path.read_text()).items())
                if path.exists() else {}
            )
        have = set(existing["fml"]) & set(existing["gm"])
        missing = [t for t in range(t_min, t_max + 1) if t not in have]
        if missing:
            lo, hi = min(missing), max(missing)
            f_new, g_new = reduction.direct_series(fam, lo, hi)
            for t in missing:
                existing["fml"][t] = f_new.value_at(t)
                existing["gm"][t] = g_new.value_at(t)
        for key, path in targets.items():
            merged = eqpfit.SampleSeries.from_pairs(existing[key].items())
            path.write_text(formats.format_series(merged))
            click.echo(f"wrote {path} ({len(merged)} samples)")

    _guard(body)


def _fit_config(d_max, deg_max, holdout, min_support):
    return eqpfit.FitConfig(
        d_max=d_max, deg_max=deg_max, holdout=holdout, min_support=min_support
    )


fit_options = [
    click.option("--d-max", default=24, show_default=True),
    click.option("--deg-max", default=6, show_default=True),
    click.option("--holdout", default=None, type=int,
                 help="Trailing samples reserved for validation [default: 2*d_max]."),
    click.option("--min-support", default=None, type=int,
                 help="Training points required per residue class [default: deg_max+3]."),
]


def _apply(options):
    def wrap(f):
        for option in reversed(options):
            f = option(f)
        return f
    return wrap


@main.command()
@click.argument("series_path", type=click.Path(exists=True))
@_apply(fit_options)
@format_option
@out_option
def fit(series_path, d_max, deg_max, holdout, min_support, fmt, out):
    """Fit an eventual quasi-polynomial to a series file."""

    def body():
        data = formats.parse_series(Path(series_path).read_text())
        cfg = _fit_config(d_max, deg_max, holdout, min_support)
        result = eqpfit.fit_quasipolynomial(data, cfg)
        lines = fit_report_lines(result, fmt)
        _emit(lines, out)

    _guard(body)


def fit_report_lines(result, fmt: str) -> list:
    if isinstance(result, eqpfit.Fit):
        qp = result.qp
        if fmt == "machine":
            lines = [
                "fit FIT",
                f"period {qp.period}",
                f"threshold {qp.threshold}",
            ]
            for i, comp in enumerate(qp.components):
                body = "-inf" if comp is BOTTOM else formats.format_poly_list(comp)
                lines.append(f"component {i} {body}")
            lines.append(f"training_checked {result.training_checked}")
            lines.append(f"holdout_checked {result.holdout_checked}")
            return lines
        lines = [
            "FIT",
            f"  period    {qp.period}",
            f"  threshold {qp.threshold} (valid for t > threshold)",
        ]
        for i, comp in enumerate(qp.components):
            body = "-inf" if comp is BOTTOM else formats.format_poly_expr(comp)
            lines.append(f"  component t = {i} (mod {qp.period}):  {body}")
        lines.append(
            f"  checked   {result.training_checked} training + "
            f"{result.holdout_checked} holdout samples, all exact"
        )
        return lines
    if fmt == "machine":
        lines = ["fit NO_FIT"]
        for d, residue, reason in result.diagnostics:
            where = "-" if residue is None else str(residue)
            lines.append(f"diagnostic {d} {where} {reason}")
        lines.append(f"note {result.note}")
        return lines
    lines = ["NO_FIT"]
    for d, residue, reason in result.diagnostics:
        where = "" if residue is None else f", class {residue}"
        lines.append(f"  period {d}{where}: {reason}")
    lines.append(f"  note: {result.note}")
    return lines


@main.command()
@click.option("--family", "family_path", required=True,
              type=click.Path(exists=True))
@click.option("--t-min", required=True, type=int)
@click.option("--t-max", required=True, type=int)
@click.option("--point-cap", default=pilp.DEFAULT_POINT_CAP, show_default=True)
@click.option("--inject-mismatch", is_flag=True, hidden=True,
              help="Corrupt one checked row (test mode).")
@click.option("--seed", default=0, show_default=True,
              help="Selects the corrupted row in --inject-mismatch mode.")
@format_option
@out_option
def crosscheck(family_path, t_min, t_max, point_cap, inject_mismatch, seed,
               fmt, out):
    """Compare the exclusion path against the direct path per t."""

    def body():
        fam = formats.parse_family(Path(family_path).read_text())
        report = reduction.crosscheck(fam, t_min, t_max, point_cap)
        if inject_mismatch:
            report = _corrupt(report, seed)
        lines = []
        header = "t | f_l(t)-l | F_direct | g(t) | G_direct+l | status"
        if fmt == "table":
            lines.append(header)
        for row in report.rows:
            if row.status == reduction.SKIPPED:
                lines.append(f"{row.t} | - | - | - | - | SKIPPED ({row.note})")
                continue
            lines.append(
                f"{row.t} | {formats.format_extended(row.f_exclusion)} | "
                f"{row.f_direct} | {row.g_exclusion} | {row.g_direct} | "
                f"{row.status}"
            )
        offsets = ",".join(str(d) for d in report.g_offsets) or "-"
        lines.append(f"checked {report.checked}")
        lines.append(f"f_all_equal {report.f_all_equal}")
        lines.append(f"g_offsets {offsets}")
        lines.append(f"verdict {'OK' if report.ok else 'MISMATCH'}")
        _emit(lines, out)
        if not report.ok:
            sys.exit(EXIT_MISMATCH)

    _guard(body)


def _corrupt(report, seed: int):
    """Shift one checked row's direct value; for exercising exit code 4."""
    checked = [i for i, row in enumerate(report.rows)
               if row.status != reduction.SKIPPED]
    if not checked:
        return report
    target = checked[seed % len(checked)]
    rows = list(report.rows)
    row = rows[target]
    rows[target] = reduction.CrosscheckRow(
        row.t, reduction.DIFF, row.f_exclusion, row.f_direct + 1,
        row.g_exclusion, row.g_direct, "injected mismatch",
    )
    return reduction.CrosscheckReport(
        tuple(rows), report.checked, False, report.g_offsets
    )


@main.command(name="pilp")
@click.argument("system_path", type=click.Path(exists=True))
@click.option("--t", "t_value", required=True, type=int)
@click.option("--count", "mode", flag_value="count", default=True,
              help="Print the lattice point count [default].")
@click.option("--objective", "mode", flag_value="objective",
              help="Print the l largest objective values (plain systems need c:).")
@click.option("--exclusion", "mode", flag_value="exclusion",
              help="Print the feasible set of an exclusion file.")
@click.option("--l", "l_value", default=1, show_default=True,
              help="How many ranked objective values to print.")
@click.option("--point-cap", default=pilp.DEFAULT_POINT_CAP, show_default=True)
@format_option
@out_option
def pilp_cmd(system_path, t_value, mode, l_value, point_cap, fmt, out):
    """Lattice count, ranked objective values, or exclusion feasible set."""

    def body():
        parsed = formats.parse_system_file(Path(system_path).read_text())
        lines = []
        if parsed[0] == "exclusion":
            ex = parsed[1]
            if mode == "count":
                feasible = pilp.exclusion_feasible(ex, t_value, point_cap)
                lines.append(f"size {len(feasible)}")
            else:
                values, size = pilp.exclusion_values(ex, l_value, t_value,
                                                     point_cap)
                lines.append(f"size {size}")
                for i, v in enumerate(values, start=1):
                    lines.append(f"objective {i} {formats.format_extended(v)}")
                if mode == "exclusion":
                    feasible = pilp.exclusion_feasible(ex, t_value, point_cap)
                    for pt in feasible.points:
                        lines.append("point " + " ".join(str(x) for x in pt))
        else:
            _, system, objective = parsed
            if mode == "exclusion":
                raise InputError("--exclusion needs an exclusion file")
            if mode == "count":
                lines.append(f"count {pilp.size_function(system, t_value, point_cap)}")
            else:
                if objective is None:
                    raise InputError("--objective needs a c: line in the file")
                for i in range(1, l_value + 1):
                    v = pilp.lth_largest_objective(system, objective, i,
                                                   t_value, point_cap)
                    lines.append(f"objective {i} {formats.format_extended(v)}")
        _emit(lines, out)

    _guard(body)


if __name__ == "__main__":
    main()
