"""Command-line interface.

Commands read a curve file (delimited or structured JSON, see
:mod:`curvekit.io`), run one analysis and emit a CSV table to stdout or
``--out``.  Rates on flags are in basis points and converted to decimals
at this boundary; everything below works in decimals.  Numeric output is
formatted to 12 significant digits so values round-trip at 1e-12.

Exit codes: 0 success, 1 domain or validation failure, 2 input parse
failure.  Every command is deterministic given its inputs and flags;
randomized verification trials derive their generators from the --seed
value plus the trial index, never from ambient randomness.
"""

from __future__ import annotations

import sys
from random import Random

import click

from . import io as curve_io
from .bootstrap import (
    ShiftScenario,
    apply_shift,
    bootstrap,
    check_annuity_bound,
    check_annuity_ratio_decreasing,
    check_parallel_brackets,
    check_parallel_discount_drop,
    shifted_bootstrap,
)
from .butterfly import (
    SWAP,
    ZERO_BOND,
    NonParallelMove,
    nonparallel_safe,
    nonparallel_weights,
    scan_arbitrage,
    swap_butterfly,
    swap_butterfly_pnl,
    zero_butterfly,
    zero_butterfly_pnl,
)
from .curves import (
    CheckResult,
    DiscountCurve,
    SwapCurve,
    ZeroCurve,
    discounts_from_zeros,
    forward_rates,
    par_rates,
    validate,
)
from .sampling import perturb_swap_curve
from .shape import ALL_TRIPLES, CONSECUTIVE, annuity_point_classification, ratio_monotonicity

BP = 1e-4


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # collapse -0.0
    return format(x, ".12g")


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read(path: str, default_type: str | None):
    try:
        return curve_io.read_curve_file(path, default_type)
    except curve_io.CurveFileError as exc:
        _fail(str(exc), 2)


def _as_discounts(curve_file: curve_io.CurveFile) -> DiscountCurve:
    """Discount curve of any file type (swap files are bootstrapped)."""
    if curve_file.curve_type == curve_io.DISCOUNT:
        return curve_file.to_discount_curve()
    if curve_file.curve_type == curve_io.SWAP:
        return bootstrap(curve_file.to_swap_curve())
    return discounts_from_zeros(curve_file.to_zero_curve())


def _parse_triple(text: str, what: str, as_int: bool = False) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        _fail(f"{what} needs exactly three comma-separated values, got {text!r}", 1)
    try:
        values = tuple(float(p) for p in parts)
    except ValueError:
        _fail(f"could not parse {what} from {text!r}", 1)
    if as_int:
        if any(v != int(v) for v in values):
            _fail(f"{what} must be whole grid years, got {text!r}", 1)
        return tuple(int(v) for v in values)
    return values


def _parse_shift_range(text: str) -> list[float]:
    """Parse 'lo:hi:step' in basis points into an inclusive list."""
    parts = text.split(":")
    if len(parts) != 3:
        _fail(f"--shift-bp must look like lo:hi:step, got {text!r}", 1)
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        _fail(f"could not parse --shift-bp from {text!r}", 1)
    if step <= 0 or hi < lo:
        _fail("--shift-bp needs step > 0 and hi >= lo", 1)
    count = int(round((hi - lo) / step)) + 1
    return [lo + i * step for i in range(count)]


def _yield_at(curve: ZeroCurve, t: float) -> float:
    """Zero yield at tenor t: exact pillar or linear interpolation."""
    tenors, yields = curve.tenors, curve.yields
    if t < tenors[0] or t > tenors[-1]:
        raise ValueError(
            f"leg {t} outside the curve's tenor range "
            f"[{tenors[0]}, {tenors[-1]}]"
        )
    for i, tt in enumerate(tenors):
        if tt == t:
            return yields[i]
        if tt > t:
            t0, t1 = tenors[i - 1], tt
            y0, y1 = yields[i - 1], yields[i]
            return y0 + (y1 - y0) * (t - t0) / (t1 - t0)
    return yields[-1]


@click.group()
def main() -> None:
    """Yield-curve analytics: bootstrap, conversions, shape and butterflies."""


@main.command("bootstrap")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--strict", is_flag=True, help="Exit 1 on an invalid discount factor.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_bootstrap(path: str, strict: bool, out: str | None) -> None:
    """Swap rates to discount factors and annuities."""
    curve_file = _read(path, curve_io.SWAP)
    try:
        swaps = curve_file.to_swap_curve()
        curve = bootstrap(swaps, strict=strict)
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["n,swap_rate,discount_factor,annuity"]
    for n, (x, p, a) in enumerate(
        zip(swaps.rates, curve.factors, curve.annuities), start=1
    ):
        lines.append(f"{n},{_fmt(x)},{_fmt(p)},{_fmt(a)}")
    _emit(lines, out)


@main.command("par")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--curve-type",
    type=click.Choice(curve_io.CURVE_TYPES),
    default=curve_io.SWAP,
    show_default=True,
    help="How to interpret a delimited file.",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_par(path: str, curve_type: str, out: str | None) -> None:
    """Par rates of a curve."""
    curve_file = _read(path, curve_type)
    try:
        rates = par_rates(_as_discounts(curve_file))
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["n,par_rate"]
    for n, s in enumerate(rates.rates, start=1):
        lines.append(f"{n},{_fmt(s)}")
    _emit(lines, out)


@main.command("forwards")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--curve-type",
    type=click.Choice(curve_io.CURVE_TYPES),
    default=curve_io.SWAP,
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_forwards(path: str, curve_type: str, out: str | None) -> None:
    """One-year forward rates; interval i covers years (i, i+1)."""
    curve_file = _read(path, curve_type)
    try:
        fwd = forward_rates(_as_discounts(curve_file))
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["interval_start,forward_rate"]
    for i, f in enumerate(fwd.forwards):
        lines.append(f"{i},{_fmt(f)}")
    _emit(lines, out)


@main.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--curve-type",
    type=click.Choice(curve_io.CURVE_TYPES),
    default=curve_io.SWAP,
    show_default=True,
)
@click.option("--tol", type=float, default=1e-12, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_validate(path: str, curve_type: str, tol: float, out: str | None) -> None:
    """No-arbitrage violations of a curve's discount factors; exit 1 if any."""
    curve_file = _read(path, curve_type)
    try:
        report = validate(_as_discounts(curve_file), tol=tol)
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["index,kind,value"]
    for v in report.violations:
        lines.append(f"{v.index},{v.kind},{_fmt(v.value)}")
    _emit(lines, out)
    if not report.ok:
        sys.exit(1)


@main.command("scan")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--kind",
    type=click.Choice(["zero", "swap"]),
    default="zero",
    show_default=True,
    help="Scan zero yields against tenor, or swap rates against annuity.",
)
@click.option(
    "--mode",
    type=click.Choice(["consecutive", "all"]),
    default="consecutive",
    show_default=True,
)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_scan(path: str, kind: str, mode: str, tol: float, out: str | None) -> None:
    """Convex triples of a curve, largest margin first."""
    file_type = curve_io.ZERO if kind == "zero" else curve_io.SWAP
    curve_file = _read(path, file_type)
    scan_mode = CONSECUTIVE if mode == "consecutive" else ALL_TRIPLES
    try:
        if kind == "zero":
            curve = curve_file.to_zero_curve()
            candidates = scan_arbitrage(curve, ZERO_BOND, scan_mode, tol=tol)
        else:
            curve = curve_file.to_swap_curve()
            candidates = scan_arbitrage(curve, SWAP, scan_mode, tol=tol)
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["leg1,leg2,leg3,margin,w1,w2,w3"]
    for cand in candidates:
        l1, l2, l3 = cand.legs
        w1, w2, w3 = cand.butterfly.weights
        lines.append(
            f"{_fmt(float(l1))},{_fmt(float(l2))},{_fmt(float(l3))},"
            f"{_fmt(cand.margin)},{_fmt(w1)},{_fmt(w2)},{_fmt(w3)}"
        )
    _emit(lines, out)


@main.command("butterfly")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["zero", "swap"]), default="zero", show_default=True)
@click.option("--legs", required=True, help="Three maturities (zero) or grid years (swap).")
@click.option("--moves", default=None, help="Per-leg moves in bp for the non-parallel weights.")
@click.option("--horizon", type=float, default=0.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_butterfly(
    path: str, kind: str, legs: str, moves: str | None, horizon: float, out: str | None
) -> None:
    """Weights of the zero-cost butterfly at three legs."""
    file_type = curve_io.ZERO if kind == "zero" else curve_io.SWAP
    curve_file = _read(path, file_type)
    try:
        if kind == "swap":
            if moves is not None:
                raise ValueError("--moves applies to zero-bond butterflies only")
            idx = _parse_triple(legs, "--legs", as_int=True)
            fly = swap_butterfly(curve_file.to_swap_curve(), idx)
            header = "kind,leg1,leg2,leg3,w1,w2,w3,annuity1,annuity2,annuity3"
            w1, w2, w3 = fly.weights
            a1, a2, a3 = fly.base_annuities
            row = (
                f"swap,{idx[0]},{idx[1]},{idx[2]},"
                f"{_fmt(w1)},{_fmt(w2)},{_fmt(w3)},{_fmt(a1)},{_fmt(a2)},{_fmt(a3)}"
            )
            _emit([header, row], out)
            return
        t1, t2, t3 = _parse_triple(legs, "--legs")
        fly = zero_butterfly(t1, t2, t3)
        w1, w2, w3 = fly.weights
        if moves is None:
            header = "kind,leg1,leg2,leg3,w1,w2,w3"
            row = (
                f"zero_bond,{_fmt(t1)},{_fmt(t2)},{_fmt(t3)},"
                f"{_fmt(w1)},{_fmt(w2)},{_fmt(w3)}"
            )
            _emit([header, row], out)
            return
        zero = curve_file.to_zero_curve()
        yields = tuple(_yield_at(zero, t) for t in (t1, t2, t3))
        move = NonParallelMove(
            tuple(m * BP for m in _parse_triple(moves, "--moves")), horizon
        )
        npw = nonparallel_weights(move.movements, (t1, t2, t3))
        safety = nonparallel_safe(
            npw, (t1, t2, t3), yields, move.movements, move.horizon
        )
        header = (
            "kind,leg1,leg2,leg3,w1,w2,w3,npw1,npw2,npw3,"
            "shifted_yield_margin,instantaneous_margin,safe"
        )
        row = (
            f"zero_bond,{_fmt(t1)},{_fmt(t2)},{_fmt(t3)},"
            f"{_fmt(w1)},{_fmt(w2)},{_fmt(w3)},"
            f"{_fmt(npw[0])},{_fmt(npw[1])},{_fmt(npw[2])},"
            f"{_fmt(safety.shifted_yield_margin)},{_fmt(safety.instantaneous_margin)},"
            f"{'true' if safety.passed else 'false'}"
        )
        _emit([header, row], out)
    except ValueError as exc:
        _fail(str(exc), 1)


@main.command("pnl")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(["zero", "swap"]), default="zero", show_default=True)
@click.option("--legs", required=True)
@click.option("--shift-bp", "shift_bp", required=True, help="Parallel shift grid lo:hi:step in bp.")
@click.option("--horizon", type=float, default=0.0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_pnl(
    path: str, kind: str, legs: str, shift_bp: str, horizon: float, out: str | None
) -> None:
    """Butterfly P&L over a grid of parallel shifts."""
    file_type = curve_io.ZERO if kind == "zero" else curve_io.SWAP
    curve_file = _read(path, file_type)
    shifts = _parse_shift_range(shift_bp)
    try:
        if kind == "zero":
            zero = curve_file.to_zero_curve()
            t1, t2, t3 = _parse_triple(legs, "--legs")
            fly = zero_butterfly(t1, t2, t3)
            yields = tuple(_yield_at(zero, t) for t in (t1, t2, t3))
            lines = ["shift_bp,horizon,value"]
            for bp in shifts:
                value = zero_butterfly_pnl(fly, yields, bp * BP, horizon)
                lines.append(f"{_fmt(bp)},{_fmt(horizon)},{_fmt(value)}")
        else:
            swaps = curve_file.to_swap_curve()
            idx = _parse_triple(legs, "--legs", as_int=True)
            fly = swap_butterfly(swaps, idx)
            lines = ["shift_bp,carry,mark_to_market,total"]
            for bp in shifts:
                pnl = swap_butterfly_pnl(fly, swaps, bp * BP, horizon)
                lines.append(
                    f"{_fmt(bp)},{_fmt(pnl.carry)},"
                    f"{_fmt(pnl.mark_to_market)},{_fmt(pnl.total)}"
                )
    except ValueError as exc:
        _fail(str(exc), 1)
    _emit(lines, out)


def _parse_verify_shift(text: str) -> ShiftScenario:
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [float(p) * BP for p in parts]
    except ValueError:
        _fail(f"could not parse --shift-bp from {text!r}", 1)
    if len(values) == 1:
        return ShiftScenario.parallel(values[0])
    return ShiftScenario.per_tenor(values)


def _verify_checks(swaps: SwapCurve, scenario: ShiftScenario) -> list:
    """Run every shift-response check whose hypothesis the scenario meets.

    Returns (name, outcome) pairs where outcome is a CheckResult or None
    for a skipped check.
    """
    amounts = scenario.amounts_for(len(swaps))
    parallel_up = scenario.kind == "parallel" and scenario.amount > 0.0
    uniform_sign = not (any(a > 0 for a in amounts) and any(a < 0 for a in amounts))
    # A uniformly non-positive shift drifts factors the other way, so the
    # ratio and triple checks flip direction.
    falling = all(a <= 0 for a in amounts) and any(a < 0 for a in amounts)

    results = []
    results.append(
        ("annuity_bound", check_annuity_bound(swaps, scenario) if uniform_sign else None)
    )
    results.append(
        (
            "bracket_identity",
            check_parallel_brackets(swaps, scenario.amount) if parallel_up else None,
        )
    )
    results.append(
        (
            "discount_drop",
            check_parallel_discount_drop(swaps, scenario.amount) if parallel_up else None,
        )
    )
    results.append(
        (
            "annuity_ratio_decreasing",
            check_annuity_ratio_decreasing(swaps, scenario.amount)
            if parallel_up
            else None,
        )
    )
    base = bootstrap(swaps)
    shifted = shifted_bootstrap(swaps, scenario)
    direction = "non_decreasing" if falling else "non_increasing"
    results.append(
        ("discount_ratio_monotone", ratio_monotonicity(base, shifted, direction=direction))
    )

    # Annuity-point triples must avoid the kink direction implied by the
    # shift: convex triples are the failure for a rise, concave for a fall.
    bad_verdict = "concave" if falling else "convex"
    n = len(swaps)
    if n >= 3:
        triples = (
            [(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(j + 1, n + 1)]
            if n <= 20
            else [(i, i + 1, i + 2) for i in range(1, n - 1)]
        )
        failure = None
        for idx in triples:
            cls = annuity_point_classification(base, shifted, idx)
            if cls.verdict == bad_verdict:
                failure = (idx, cls)
                break
        if failure is None:
            results.append(("annuity_triples", CheckResult("annuity_triples", True)))
        else:
            idx, cls = failure
            results.append(
                (
                    "annuity_triples",
                    CheckResult(
                        "annuity_triples",
                        False,
                        idx[0],
                        f"triple {idx} classifies {cls.verdict} (margin {cls.margin:.3e})",
                    ),
                )
            )
    else:
        results.append(("annuity_triples", None))
    return results


@main.command("verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--shift-bp",
    "shift_bp",
    default="100",
    show_default=True,
    help="Shift in bp: one value (parallel) or one per tenor, comma-separated.",
)
@click.option("--trials", type=int, default=0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_verify(path: str, shift_bp: str, trials: int, seed: int, out: str | None) -> None:
    """Shift-response checks on the file's curve and seeded perturbations."""
    curve_file = _read(path, curve_io.SWAP)
    scenario = _parse_verify_shift(shift_bp)
    try:
        swaps = curve_file.to_swap_curve()
        base_report = validate(bootstrap(swaps))
        if not base_report.ok:
            first = base_report.violations[0]
            raise ValueError(
                f"input curve fails validation: {first.kind} at index {first.index}"
            )
        # The checks presuppose a functioning shifted market, so a scenario
        # that breaks the shifted curve is an input error, not a finding.
        shifted_report = validate(bootstrap(apply_shift(swaps, scenario)))
        if not shifted_report.ok:
            first = shifted_report.violations[0]
            raise ValueError(
                f"shifted curve fails validation: {first.kind} at index {first.index}"
            )
        rows: dict[str, tuple] = {}
        for name, outcome in _verify_checks(swaps, scenario):
            rows[name] = ("base", outcome)
        for trial in range(trials):
            rng = Random(f"{seed}:{trial}")
            perturbed = perturb_swap_curve(rng, swaps)
            if not validate(bootstrap(apply_shift(perturbed, scenario))).ok:
                continue  # scenario breaks this perturbation; not a finding
            for name, outcome in _verify_checks(perturbed, scenario):
                _, prev = rows[name]
                if prev is not None and not prev.passed:
                    continue  # keep the first failure
                if outcome is not None and not outcome.passed:
                    rows[name] = (f"trial {trial}", outcome)
    except ValueError as exc:
        _fail(str(exc), 1)
    lines = ["check,status,first_violation,detail"]
    failed = False
    for name, (label, outcome) in rows.items():
        if outcome is None:
            lines.append(f"{name},SKIP,,shift scenario outside this check's hypothesis")
            continue
        if outcome.passed:
            lines.append(f"{name},PASS,,")
        else:
            failed = True
            idx = "" if outcome.first_violation is None else str(outcome.first_violation)
            lines.append(f"{name},FAIL,{idx},{label}: {outcome.detail}")
    _emit(lines, out)
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
