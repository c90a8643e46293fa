"""Command-line interface.

Subcommands: classify, invert, decompose, qdensity, ingest, verify.
Reports are JSON with all exact quantities as 'p/q' strings and contain no
timestamps, so identical inputs give byte-identical output; --stamp wraps
the body in an envelope that carries the timestamp outside of it.

Exit codes:
  0  success (classify: the distribution is unimodal)
  1  unreadable / unparseable input, unknown law id
  2  invalid specification (overlapping pieces, nonpositive mass, zero
     measure, bad anchor, too few samples)
  3  classify: not unimodal
  4  qdensity: no quantile density exists (inverse not absolutely continuous)
  5  verify: at least one law failed
"""

from __future__ import annotations

import datetime
import json
import os
import sys

import click

from monoinv.errors import (
    AnchorOutsideCarrier,
    CarrierMismatch,
    ConstantFunction,
    MonoinvError,
    QfNotAbsolutelyContinuous,
    UnknownLaw,
    ZeroMeasure,
)
from monoinv.exactnum import fmt_ratio, parse_ratio, rat
from monoinv.intervals import Interval, REAL_LINE, fin
from monoinv.laws import GenConfig, LAW_IDS, run_law
from monoinv.measure import (
    PiecewiseMeasure,
    density,
    distribution_function,
    lebesgue_decompose,
)
from monoinv.monotone import (
    LEFT,
    RIGHT,
    PiecewiseMonotone,
    evaluate,
    generalized_inverse,
    inverse_domain,
    inverse_mass_interval,
    mass_interval,
    regular_domain,
    structural_xs,
    supporting_interval,
)
from monoinv.serialize import (
    interval_to_json,
    measure_to_spec_json,
    modal_to_json,
    monotone_to_json,
    step_to_json,
)
from monoinv.unimodal import classify, quantile_density


class _ParseError(Exception):
    """Exit 1: the input could not be read as a spec or sample file."""


class _SpecError(Exception):
    """Exit 2: the input parses but does not describe a valid measure."""


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


# ---------------------------------------------------------------------------
# input handling


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise _ParseError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise _ParseError(f"{path} is not valid JSON: {e}") from e


def _number(raw, what):
    if not isinstance(raw, str):
        raise _ParseError(f"{what} must be a string ('p/q' or decimal), got {raw!r}")
    try:
        return parse_ratio(raw)
    except ValueError as e:
        raise _ParseError(f"bad {what}: {e}") from e


def _endpoint(raw, what):
    if not isinstance(raw, str):
        raise _ParseError(f"{what} must be a string, got {raw!r}")
    t = raw.strip().lower()
    if t in ("-inf", "-infinity"):
        return REAL_LINE.lo
    if t in ("inf", "+inf", "infinity"):
        return REAL_LINE.hi
    return fin(_number(raw, what))


def spec_to_measure(doc) -> PiecewiseMeasure:
    """Build the measure described by a DistributionSpec document."""
    if not isinstance(doc, dict):
        raise _ParseError("spec must be a JSON object")
    carrier = REAL_LINE
    if doc.get("carrier") is not None:
        c = doc["carrier"]
        if not isinstance(c, dict):
            raise _ParseError("carrier must be an object with lo/hi")
        try:
            carrier = Interval(_endpoint(c.get("lo", "-inf"), "carrier.lo"),
                               _endpoint(c.get("hi", "inf"), "carrier.hi"))
        except ValueError as e:
            raise _SpecError(f"bad carrier: {e}") from e
        if carrier.is_empty:
            raise _SpecError("carrier is empty")

    atoms = []
    for i, a in enumerate(doc.get("atoms", [])):
        if not isinstance(a, dict) or "x" not in a or "mass" not in a:
            raise _ParseError(f"atom #{i} needs fields x and mass")
        x = _number(a["x"], f"atom #{i} x")
        mass = _number(a["mass"], f"atom #{i} mass")
        if mass <= 0:
            raise _SpecError(f"atom #{i} has nonpositive mass")
        atoms.append((x, mass))

    pieces = []
    for i, p in enumerate(doc.get("uniform_pieces", [])):
        if not isinstance(p, dict) or "a" not in p or "b" not in p:
            raise _ParseError(f"piece #{i} needs fields a and b")
        has_mass = "mass" in p
        has_density = "density" in p
        if has_mass == has_density:
            raise _SpecError(f"piece #{i} needs exactly one of mass or density")
        lo = _endpoint(p["a"], f"piece #{i} a")
        hi = _endpoint(p["b"], f"piece #{i} b")
        if not lo < hi:
            raise _SpecError(f"piece #{i} has a >= b")
        iv = Interval(lo, hi)
        if has_density:
            d = _number(p["density"], f"piece #{i} density")
            if d <= 0:
                raise _SpecError(f"piece #{i} has nonpositive density")
        else:
            mass = _number(p["mass"], f"piece #{i} mass")
            if mass <= 0:
                raise _SpecError(f"piece #{i} has nonpositive mass")
            if not (lo.is_finite and hi.is_finite):
                raise _SpecError(f"piece #{i}: mass on an infinite piece; give a density")
            d = mass / (hi.finite - lo.finite)
        pieces.append((iv, d))

    if not atoms and not pieces:
        raise _SpecError("the spec describes the zero measure")
    try:
        return PiecewiseMeasure(carrier, tuple(atoms), tuple(pieces))
    except (ValueError, CarrierMismatch) as e:
        raise _SpecError(str(e)) from e


def read_samples(path, header: bool):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise _ParseError(f"cannot read {path}: {e}") from e
    if header and lines:
        lines = lines[1:]
    values = []
    for lineno, line in enumerate(lines, start=2 if header else 1):
        s = line.strip()
        if not s:
            continue
        try:
            values.append(parse_ratio(s))
        except ValueError as e:
            raise _ParseError(f"line {lineno}: {e}") from e
    if not values:
        raise _SpecError("no samples")
    return values


def samples_to_spec(values, allow_degenerate: bool) -> dict:
    """Linear-interpolation empirical spec: each adjacent order-statistic
    pair carries mass 1/(n-1); tied pairs collapse to atoms."""
    values = sorted(values)
    n = len(values)
    distinct = sorted(set(values))
    if len(distinct) < 2:
        if not allow_degenerate:
            raise _SpecError(
                "fewer than 2 distinct samples; pass --allow-degenerate for a pure atom")
        return {
            "carrier": {"lo": "-inf", "hi": "inf"},
            "atoms": [{"x": fmt_ratio(distinct[0]), "mass": "1"}],
            "uniform_pieces": [],
        }
    unit = rat(1, n - 1)
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    atoms = []
    for v in distinct:
        if counts[v] > 1:
            atoms.append({"x": fmt_ratio(v), "mass": fmt_ratio(unit * (counts[v] - 1))})
    pieces = [
        {"a": fmt_ratio(a), "b": fmt_ratio(b), "mass": fmt_ratio(unit)}
        for a, b in zip(distinct, distinct[1:])
    ]
    return {"carrier": {"lo": "-inf", "hi": "inf"}, "atoms": atoms, "uniform_pieces": pieces}


def _default_anchor(carrier: Interval):
    if carrier.contains(rat(0)):
        return rat(0)
    lo, hi = carrier.lo, carrier.hi
    if lo.is_finite and hi.is_finite:
        return (lo.finite + hi.finite) / 2
    if lo.is_finite:
        return lo.finite + 1
    return hi.finite - 1


def _load_measure(spec_path, samples_path, header, allow_degenerate):
    if (spec_path is None) == (samples_path is None):
        _fail(1, "give exactly one of --spec FILE or --samples FILE")
    if spec_path is not None:
        doc = _load_json(spec_path)
    else:
        doc = samples_to_spec(read_samples(samples_path, header), allow_degenerate)
    return spec_to_measure(doc)


def _emit(body, out, stamp):
    if stamp:
        body = {"body": body, "stamp": datetime.datetime.now(datetime.timezone.utc).isoformat()}
    text = json.dumps(body, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _plot_window(g: PiecewiseMonotone) -> tuple:
    lo, hi = g.domain.lo, g.domain.hi
    pts = structural_xs(g)
    if not lo.is_finite:
        lo = fin((pts[0] if pts else rat(0)) - 1)
    if not hi.is_finite:
        hi = fin((pts[-1] if pts else rat(0)) + 1)
    return lo.finite, hi.finite


def _csv_value(v):
    if v.is_finite:
        return repr(float(v.finite))
    return "inf" if v > fin(rat(0)) else "-inf"


def _plot_rows(g: PiecewiseMonotone, npoints: int):
    lo, hi = _plot_window(g)
    rows = ["x,left,right"]
    for i in range(npoints + 1):
        x = lo + (hi - lo) * i / npoints
        l = evaluate(g, x, LEFT)
        r = evaluate(g, x, RIGHT)
        rows.append(f"{float(x)!r},{_csv_value(l)},{_csv_value(r)}")
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# report assembly


def _interval_block(g: PiecewiseMonotone, inverse_side: bool) -> dict:
    if not inverse_side:
        return {
            "I": interval_to_json(regular_domain(g)),
            "M": interval_to_json(mass_interval(g)),
            "S": interval_to_json(supporting_interval(g)),
        }
    try:
        q = generalized_inverse(g)
    except ConstantFunction:
        return {
            "I": interval_to_json(inverse_domain(g)),
            "M": interval_to_json(inverse_mass_interval(g)),
            "S": {"empty": True},
        }
    return {
        "I": interval_to_json(regular_domain(q)),
        "M": interval_to_json(mass_interval(q)),
        "S": interval_to_json(supporting_interval(q)),
    }


def _classification_block(c) -> dict:
    return {
        "cdf_unimodal": c.cdf_unimodal,
        "modes": modal_to_json(c.modes),
        "dens_unimodal_abs_part": c.dens_unimodal_abs_part,
        "quantile_unimodal": c.quantile_unimodal,
        "quantile_modes": modal_to_json(c.quantile_modes),
        "atom_at_mode": None if c.atom_at_mode is None else {
            "x": fmt_ratio(c.atom_at_mode[0]),
            "mass": fmt_ratio(c.atom_at_mode[1]),
        },
        "qf_absolutely_continuous": c.qf_absolutely_continuous,
    }


def _build_report(m: PiecewiseMeasure, anchor) -> tuple[dict, bool]:
    f = distribution_function(m, anchor)
    c = classify(f)
    warnings = []
    if m.carrier != REAL_LINE:
        warnings.append("classification applies to the measure extended by zero to the whole line")
    abs_part, _sing = lebesgue_decompose(m)
    try:
        qdens = step_to_json(quantile_density(f))
    except QfNotAbsolutelyContinuous:
        qdens = None
        warnings.append("the generalized inverse has an interior jump; no quantile density exists")
    report = {
        "echo": measure_to_spec_json(m),
        "anchor": fmt_ratio(anchor),
        "classification": _classification_block(c),
        "intervals": {
            "F": _interval_block(f, inverse_side=False),
            "Q": _interval_block(f, inverse_side=True),
        },
        "decomposition": {
            "atoms": [{"x": fmt_ratio(a.x), "mass": fmt_ratio(a.mass)} for a in m.atoms],
            "abs_density": step_to_json(density(abs_part)),
        },
        "quantile_density": qdens,
        "warnings": warnings,
    }
    return report, c.cdf_unimodal


# ---------------------------------------------------------------------------
# commands


def _input_options(fn):
    fn = click.option("--spec", "spec_path", type=click.Path(), default=None,
                      help="DistributionSpec JSON file")(fn)
    fn = click.option("--samples", "samples_path", type=click.Path(), default=None,
                      help="sample file, one decimal per line")(fn)
    fn = click.option("--header", is_flag=True, help="skip the first sample line")(fn)
    fn = click.option("--allow-degenerate", is_flag=True,
                      help="accept single-valued samples as a pure atom")(fn)
    fn = click.option("--anchor", "anchor_str", default=None,
                      help="anchor point for the distribution function, as p/q")(fn)
    fn = click.option("--out", type=click.Path(), default=None, help="write the report here")(fn)
    fn = click.option("--stamp", is_flag=True,
                      help="wrap the report with a timestamp envelope")(fn)
    return fn


def _prepared(spec_path, samples_path, header, allow_degenerate, anchor_str):
    try:
        m = _load_measure(spec_path, samples_path, header, allow_degenerate)
        anchor = parse_ratio(anchor_str) if anchor_str else _default_anchor(m.carrier)
        if not m.carrier.contains(anchor):
            raise _SpecError(f"anchor {fmt_ratio(anchor)} outside carrier")
    except _ParseError as e:
        _fail(1, str(e))
    except ValueError as e:
        _fail(1, str(e))
    except _SpecError as e:
        _fail(2, str(e))
    return m, anchor


@click.group()
def main():
    """Exact classification of piecewise-affine distributions and replay of
    the monotone-inverse calculus."""


@main.command("classify")
@_input_options
def cmd_classify(spec_path, samples_path, header, allow_degenerate, anchor_str, out, stamp):
    """Classify unimodality; exit 0 when unimodal, 3 when not."""
    m, anchor = _prepared(spec_path, samples_path, header, allow_degenerate, anchor_str)
    try:
        report, unimodal = _build_report(m, anchor)
    except (ZeroMeasure, AnchorOutsideCarrier, MonoinvError) as e:
        _fail(2, str(e))
    _emit(report, out, stamp)
    sys.exit(0 if unimodal else 3)


@main.command("invert")
@_input_options
@click.option("--plot-points", type=int, default=None,
              help="emit N+1 CSV evaluation rows of the inverse instead of the JSON report")
def cmd_invert(spec_path, samples_path, header, allow_degenerate, anchor_str, out, stamp,
               plot_points):
    """Compute the generalized inverse of the distribution function."""
    m, anchor = _prepared(spec_path, samples_path, header, allow_degenerate, anchor_str)
    try:
        f = distribution_function(m, anchor)
        q = generalized_inverse(f)
    except (ZeroMeasure, AnchorOutsideCarrier, ConstantFunction, MonoinvError) as e:
        _fail(2, str(e))
    report = {
        "echo": measure_to_spec_json(m),
        "anchor": fmt_ratio(anchor),
        "inverse": monotone_to_json(q),
        "intervals": {
            "F": _interval_block(f, inverse_side=False),
            "Q": _interval_block(f, inverse_side=True),
        },
    }
    if plot_points is not None:
        if plot_points < 1:
            _fail(1, "--plot-points must be at least 1")
        if out:
            _emit(report, out, stamp)
        click.echo(_plot_rows(q, plot_points), nl=False)
        sys.exit(0)
    _emit(report, out, stamp)
    sys.exit(0)


@main.command("decompose")
@_input_options
def cmd_decompose(spec_path, samples_path, header, allow_degenerate, anchor_str, out, stamp):
    """Split the measure into its absolutely continuous and atomic parts."""
    m, anchor = _prepared(spec_path, samples_path, header, allow_degenerate, anchor_str)
    abs_part, sing = lebesgue_decompose(m)
    report = {
        "echo": measure_to_spec_json(m),
        "anchor": fmt_ratio(anchor),
        "decomposition": {
            "atoms": [{"x": fmt_ratio(a.x), "mass": fmt_ratio(a.mass)} for a in sing.atoms],
            "abs_density": step_to_json(density(abs_part)),
        },
    }
    _emit(report, out, stamp)
    sys.exit(0)


@main.command("qdensity")
@_input_options
@click.option("--plot-points", type=int, default=None,
              help="emit N+1 CSV evaluation rows of the distribution function")
def cmd_qdensity(spec_path, samples_path, header, allow_degenerate, anchor_str, out, stamp,
                 plot_points):
    """Emit the quantile density; exit 4 when it does not exist."""
    m, anchor = _prepared(spec_path, samples_path, header, allow_degenerate, anchor_str)
    try:
        f = distribution_function(m, anchor)
        q = quantile_density(f)
    except QfNotAbsolutelyContinuous as e:
        _fail(4, str(e))
    except (ZeroMeasure, AnchorOutsideCarrier, MonoinvError) as e:
        _fail(2, str(e))
    report = {
        "echo": measure_to_spec_json(m),
        "anchor": fmt_ratio(anchor),
        "quantile_density": step_to_json(q),
    }
    if plot_points is not None:
        if plot_points < 1:
            _fail(1, "--plot-points must be at least 1")
        if out:
            _emit(report, out, stamp)
        click.echo(_plot_rows(f, plot_points), nl=False)
        sys.exit(0)
    _emit(report, out, stamp)
    sys.exit(0)


@main.command("ingest")
@click.option("--samples", "samples_path", type=click.Path(), required=True,
              help="sample file, one decimal per line")
@click.option("--header", is_flag=True, help="skip the first sample line")
@click.option("--allow-degenerate", is_flag=True,
              help="accept single-valued samples as a pure atom")
@click.option("--out", type=click.Path(), default=None)
@click.option("--stamp", is_flag=True)
def cmd_ingest(samples_path, header, allow_degenerate, out, stamp):
    """Turn samples into the linear-interpolation empirical spec."""
    try:
        spec = samples_to_spec(read_samples(samples_path, header), allow_degenerate)
        spec_to_measure(spec)  # sanity: the emitted spec must itself be valid
    except _ParseError as e:
        _fail(1, str(e))
    except _SpecError as e:
        _fail(2, str(e))
    _emit(spec, out, stamp)
    sys.exit(0)


@main.command("verify")
@click.option("--law", "law_id", default="all", help="law id or 'all'")
@click.option("--n", "n", type=int, default=1000, help="instances per law")
@click.option("--seed", type=int, default=None,
              help="generator seed (default: MONOINV_SEED or 0)")
@click.option("--max-knots", type=int, default=12)
@click.option("--out", type=click.Path(), default=None)
@click.option("--stamp", is_flag=True)
def cmd_verify(law_id, n, seed, max_knots, out, stamp):
    """Replay the exact identities on generated instances; exit 5 on failure."""
    if seed is None:
        seed = int(os.environ.get("MONOINV_SEED", "0"))
    cfg = GenConfig(seed=seed, max_knots=max_knots)
    law_list = list(LAW_IDS) if law_id == "all" else [law_id]
    reports = []
    for law in law_list:
        try:
            reports.append(run_law(law, n, cfg))
        except UnknownLaw as e:
            _fail(1, str(e))
    body = {
        "seed": seed,
        "max_knots": max_knots,
        "n": n,
        "laws": [r.to_json() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    _emit(body, out, stamp)
    sys.exit(0 if body["passed"] else 5)


if __name__ == "__main__":
    main()
