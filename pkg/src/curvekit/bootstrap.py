"""Swap-curve bootstrap, curve shifting and shift-response checks.

The bootstrap converts par swap rates on the annual grid into discount
factors by the standard recursion

    p_1 = 1 / (1 + x_1)
    p_n = (1 - x_n * (p_1 + ... + p_{n-1})) / (1 + x_n)

and :func:`swap_rates_from_discounts` inverts it exactly via
``x_n = (1 - p_n) / (p_1 + ... + p_n)``.

The ``check_*`` functions verify how bootstrapped discounts and annuities
respond to rate shifts.  They evaluate the *conclusions* only; callers are
responsible for supplying scenarios that meet each check's hypothesis
(noted per function).  Results come back as structured
:class:`~curvekit.curves.CheckResult` records so the first violating grid
index is reportable, not just a boolean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import (
    MONOTONE_TOL,
    NON_DECREASING_DISCOUNT,
    NON_POSITIVE_DISCOUNT,
    CheckResult,
    DiscountCurve,
    SwapCurve,
)

PARALLEL = "parallel"
PER_TENOR = "per_tenor"


class BootstrapError(ValueError):
    """Strict-mode bootstrap failure at a specific grid position."""

    def __init__(self, index: int, kind: str, value: float):
        self.index = index
        self.kind = kind
        self.value = value
        super().__init__(
            f"bootstrap produced an invalid discount factor at year {index}: "
            f"{kind} (p = {value})"
        )


@dataclass(frozen=True)
class ShiftScenario:
    """Additive shift of a swap curve: one amount, or one per tenor."""

    kind: str
    amount: float | None = None
    amounts: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == PARALLEL:
            if self.amount is None or self.amounts is not None:
                raise ValueError("parallel shift takes a single amount")
            if not math.isfinite(self.amount):
                raise ValueError("shift amount must be finite")
        elif self.kind == PER_TENOR:
            if self.amounts is None or self.amount is not None:
                raise ValueError("per-tenor shift takes a vector of amounts")
            amounts = tuple(float(a) for a in self.amounts)
            for a in amounts:
                if not math.isfinite(a):
                    raise ValueError("shift amounts must be finite")
            object.__setattr__(self, "amounts", amounts)
        else:
            raise ValueError(f"unknown shift kind {self.kind!r}")

    @classmethod
    def parallel(cls, amount: float) -> "ShiftScenario":
        return cls(PARALLEL, amount=float(amount))

    @classmethod
    def per_tenor(cls, amounts) -> "ShiftScenario":
        return cls(PER_TENOR, amounts=tuple(float(a) for a in amounts))

    def amounts_for(self, n: int) -> tuple[float, ...]:
        """The per-tenor amounts for a curve of length n."""
        if self.kind == PARALLEL:
            return (self.amount,) * n
        if len(self.amounts) != n:
            raise ValueError(
                f"per-tenor shift has {len(self.amounts)} amounts for a "
                f"curve of length {n}"
            )
        return self.amounts


@dataclass(frozen=True)
class LimitReport:
    """Long-tenor behaviour of a swap curve, observed on a finite grid.

    ``x_inf_estimate`` is the last-tenor swap rate; ``converged`` says the
    final rate increment is below tolerance; ``p_tail`` is the last
    bootstrapped discount factor and ``p_tail_vanishing`` whether the tail
    looks consistent with discount factors running off to zero (small and
    strictly decreasing over the last quartile of the grid).
    """

    x_inf_estimate: float
    converged: bool
    p_tail: float
    p_tail_vanishing: bool


def bootstrap(
    swaps: SwapCurve, *, strict: bool = False, tol: float = MONOTONE_TOL
) -> DiscountCurve:
    """Discount factors implied by par swap rates.

    In strict mode the recursion raises :class:`BootstrapError` at the
    first year whose factor is non-positive or fails to decrease.  The
    default is lenient: the factors are returned as computed and
    :func:`curvekit.curves.validate` yields the violation report, since
    shifted curves can transiently break monotonicity and callers usually
    want to observe that.
    """
    factors: list[float] = []
    annuity = 0.0
    prev = 1.0
    for n, x in enumerate(swaps.rates, start=1):
        p = (1.0 - x * annuity) / (1.0 + x)
        if strict:
            if p <= tol:
                raise BootstrapError(n, NON_POSITIVE_DISCOUNT, p)
            if p >= prev - tol:
                raise BootstrapError(n, NON_DECREASING_DISCOUNT, p)
        factors.append(p)
        annuity += p
        prev = p
    return DiscountCurve(tuple(factors))


def swap_rates_from_discounts(curve: DiscountCurve) -> SwapCurve:
    """Par swap rates implied by discount factors; exact inverse of bootstrap."""
    rates = []
    for n, (p, acc) in enumerate(zip(curve.factors, curve.annuities), start=1):
        if acc == 0.0:
            raise ValueError(f"annuity through year {n} is zero")
        rates.append((1.0 - p) / acc)
    return SwapCurve(tuple(rates))


def apply_shift(swaps: SwapCurve, shift: ShiftScenario) -> SwapCurve:
    """Swap curve with the scenario's amounts added to each rate."""
    amounts = shift.amounts_for(len(swaps))
    return SwapCurve(tuple(x + a for x, a in zip(swaps.rates, amounts)))


def shifted_bootstrap(
    swaps: SwapCurve, shift: ShiftScenario, *, strict: bool = False
) -> DiscountCurve:
    """Bootstrap of the shifted swap curve."""
    return bootstrap(apply_shift(swaps, shift), strict=strict)


def tail_diagnostics(
    swaps: SwapCurve,
    tolerance: float = 1e-6,
    vanish_threshold: float = 0.05,
) -> LimitReport:
    """Finite-grid diagnostics of the curve's long-tenor limit behaviour.

    A desk-scale grid cannot observe a true limit, so this reports
    checkable proxies: the final swap rate as the limit estimate,
    convergence of the last rate increment against ``tolerance``, and
    whether the discount tail is both below ``vanish_threshold`` and
    strictly decreasing over the last quartile of the grid.
    """
    if len(swaps) < 2:
        raise ValueError("tail diagnostics need at least two tenors")
    rates = swaps.rates
    curve = bootstrap(swaps)
    converged = abs(rates[-1] - rates[-2]) <= tolerance
    span = max(2, math.ceil(len(swaps) / 4))
    tail = curve.factors[-span:]
    decreasing = all(a > b for a, b in zip(tail, tail[1:]))
    p_tail = curve.factors[-1]
    return LimitReport(
        x_inf_estimate=rates[-1],
        converged=converged,
        p_tail=p_tail,
        p_tail_vanishing=(p_tail < vanish_threshold) and decreasing,
    )


def check_annuity_bound(
    swaps: SwapCurve, shift: ShiftScenario, tol: float = MONOTONE_TOL
) -> CheckResult:
    """Shifting all rates one way bounds every annuity the opposite way.

    For a uniformly non-negative shift, each shifted annuity must not
    exceed its base value; mirrored for uniformly non-positive shifts.
    Raises ValueError for mixed-sign shifts, where no bound applies.
    """
    amounts = shift.amounts_for(len(swaps))
    has_pos = any(a > 0.0 for a in amounts)
    has_neg = any(a < 0.0 for a in amounts)
    if has_pos and has_neg:
        raise ValueError("annuity bound needs a uniformly signed shift")
    base = bootstrap(swaps)
    shifted = shifted_bootstrap(swaps, shift)
    upward = has_pos or not has_neg
    for n, (a_base, a_shift) in enumerate(
        zip(base.annuities, shifted.annuities), start=1
    ):
        diff = a_base - a_shift if upward else a_shift - a_base
        if diff < -tol:
            side = "above" if upward else "below"
            return CheckResult(
                "annuity_bound",
                False,
                n,
                f"shifted annuity at year {n} is {side} the base by {-diff:.3e}",
            )
    return CheckResult("annuity_bound", True)


def check_parallel_brackets(
    swaps: SwapCurve, y: float, tol: float = MONOTONE_TOL
) -> CheckResult:
    """Decomposition of a parallel rise y into two non-negative brackets.

    With b1 = p_n/P_n - p_n(y)/P_n(y) and b2 = 1/P_n(y) - 1/P_n, each year
    must satisfy b1, b2 in [0, y] and b1 + b2 = y.  At year 1 the
    decomposition is degenerate by construction: b1 = 0 and b2 = y
    exactly; both inequalities are strict from year 2 on.
    """
    if y <= 0.0:
        raise ValueError("bracket decomposition is defined for a rise y > 0")
    base = bootstrap(swaps)
    shifted = shifted_bootstrap(swaps, ShiftScenario.parallel(y))
    for n in range(1, len(swaps) + 1):
        p_base, a_base = base.factors[n - 1], base.annuities[n - 1]
        p_shift, a_shift = shifted.factors[n - 1], shifted.annuities[n - 1]
        b1 = p_base / a_base - p_shift / a_shift
        b2 = 1.0 / a_shift - 1.0 / a_base
        if b1 < -tol or b1 > y + tol:
            return CheckResult(
                "bracket_identity", False, n, f"share bracket {b1:.3e} outside [0, {y}]"
            )
        if b2 < -tol or b2 > y + tol:
            return CheckResult(
                "bracket_identity",
                False,
                n,
                f"annuity bracket {b2:.3e} outside [0, {y}]",
            )
        if abs(b1 + b2 - y) > tol:
            return CheckResult(
                "bracket_identity",
                False,
                n,
                f"brackets sum to {b1 + b2:.3e}, expected {y}",
            )
    return CheckResult("bracket_identity", True)


def check_parallel_discount_drop(swaps: SwapCurve, y: float) -> CheckResult:
    """A parallel rise y > 0 strictly lowers every discount factor."""
    if y <= 0.0:
        raise ValueError("discount drop is defined for a rise y > 0")
    base = bootstrap(swaps)
    shifted = shifted_bootstrap(swaps, ShiftScenario.parallel(y))
    for n, (pb, ps) in enumerate(zip(base.factors, shifted.factors), start=1):
        if not ps < pb:
            return CheckResult(
                "discount_drop", False, n, f"p({n}) moved {pb:.12g} -> {ps:.12g}"
            )
    return CheckResult("discount_drop", True)


def check_annuity_ratio_decreasing(swaps: SwapCurve, y: float) -> CheckResult:
    """Under a parallel rise y > 0 the shifted/base annuity ratio falls with n.

    The reported index is the first position n whose ratio fails to
    exceed the ratio at n+1.
    """
    if y <= 0.0:
        raise ValueError("annuity ratio monotonicity is defined for a rise y > 0")
    base = bootstrap(swaps)
    shifted = shifted_bootstrap(swaps, ShiftScenario.parallel(y))
    ratios = [s / b for s, b in zip(shifted.annuities, base.annuities)]
    for n, (r, r_next) in enumerate(zip(ratios, ratios[1:]), start=1):
        if not r_next < r:
            return CheckResult(
                "annuity_ratio_decreasing",
                False,
                n,
                f"ratio {r:.12g} -> {r_next:.12g} is not a decrease",
            )
    return CheckResult("annuity_ratio_decreasing", True)
