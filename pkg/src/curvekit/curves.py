"""Curve types and conversions between zero yields, discount factors,
forward rates and par rates.

Conventions used throughout the package:

- Times are in *years*. Swap and discount curves live on the integer-year
  grid 1..N; position ``n`` in any report means year ``n`` (1-based).
- Rates are decimal fractions per annum (0.05 = 5%) with annual
  compounding, so the discount factor for a yield ``y`` at year ``t`` is
  ``1 / (1 + y)**t``.
- The year-0 discount factor is implicitly 1 and is never stored.
- One-year forward rates are indexed by the interval start: ``f[i]``
  covers (i, i+1), so ``f[0]`` is the spot one-year rate.

All types are immutable after construction and all functions are pure, so
everything here is safe to share across threads.  Construction checks are
structural only (lengths, finiteness, rate ranges); economic validity of a
discount curve (positive, strictly decreasing factors) is deliberately not
enforced at construction -- shifted or stressed curves may violate it
transiently and callers need to observe that, not crash.  Use
:func:`validate` to obtain the violation report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Decimal per-annum rates accepted anywhere in the package.
RATE_LO = -0.5
RATE_HI = 1.0

# Absolute tolerance for strict-monotonicity comparisons: values within
# this of equality count as violations of strictness.
MONOTONE_TOL = 1e-12

NON_DECREASING_DISCOUNT = "non_decreasing_discount"
NON_POSITIVE_DISCOUNT = "non_positive_discount"
NON_POSITIVE_FORWARD = "non_positive_forward"


def _as_floats(values, what: str) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not out:
        raise ValueError(f"{what} must contain at least one entry")
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"{what} must be finite, got {v!r}")
    return out


def _check_rate_range(rates: tuple[float, ...], what: str) -> None:
    for i, r in enumerate(rates):
        if not RATE_LO < r < RATE_HI:
            raise ValueError(
                f"{what}[{i}] = {r} outside the supported range "
                f"({RATE_LO}, {RATE_HI})"
            )


@dataclass(frozen=True)
class ZeroCurve:
    """Zero-coupon yields at strictly increasing positive tenors (years).

    Tenors are real-valued; they need not sit on the integer grid.
    """

    tenors: tuple[float, ...]
    yields: tuple[float, ...]

    def __post_init__(self) -> None:
        tenors = _as_floats(self.tenors, "tenors")
        yields = _as_floats(self.yields, "yields")
        if len(tenors) != len(yields):
            raise ValueError("tenors and yields must have the same length")
        if tenors[0] <= 0.0:
            raise ValueError("tenors must be positive")
        for a, b in zip(tenors, tenors[1:]):
            if b <= a:
                raise ValueError("tenors must be strictly increasing")
        _check_rate_range(yields, "yields")
        object.__setattr__(self, "tenors", tenors)
        object.__setattr__(self, "yields", yields)

    def __len__(self) -> int:
        return len(self.tenors)


@dataclass(frozen=True)
class SwapCurve:
    """Par swap rates on the integer-year grid 1..N.

    The same type also carries par rates derived from a discount curve --
    they are the same quantity: the fixed rate that prices the n-year
    annual swap (equivalently the n-year par bond) at par.
    """

    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        rates = _as_floats(self.rates, "rates")
        _check_rate_range(rates, "rates")
        object.__setattr__(self, "rates", rates)

    def __len__(self) -> int:
        return len(self.rates)


@dataclass(frozen=True)
class DiscountCurve:
    """Discount factors on the integer-year grid plus derived annuities.

    ``annuities[n-1]`` is the running prefix sum ``factors[0] + ... +
    factors[n-1]``, i.e. the present value of a unit annual coupon paid
    at years 1..n.  The sums are accumulated in a single fixed
    left-to-right pass so results are deterministic.
    """

    factors: tuple[float, ...]
    annuities: tuple[float, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        factors = _as_floats(self.factors, "factors")
        acc = 0.0
        annuities = []
        for p in factors:
            acc += p
            annuities.append(acc)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "annuities", tuple(annuities))

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ForwardCurve:
    """One-year forward rates; ``forwards[i]`` covers the interval (i, i+1).

    Entry 0 is the spot one-year rate.  Forwards implied by a curve with
    all-positive discount factors always exceed -1; the constructor does
    not enforce that because forwards of a broken curve are still useful
    diagnostics.
    """

    forwards: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "forwards", _as_floats(self.forwards, "forwards"))

    def __len__(self) -> int:
        return len(self.forwards)


@dataclass(frozen=True)
class Violation:
    """One validation finding: a 1-based index, a kind tag and the value."""

    index: int
    kind: str
    value: float


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __post_init__(self) -> None:
        if self.ok != (len(self.violations) == 0):
            raise ValueError("ok must mirror the absence of violations")

    @classmethod
    def from_violations(cls, violations) -> "ValidationReport":
        violations = tuple(violations)
        return cls(ok=not violations, violations=violations)


@dataclass(frozen=True)
class CheckResult:
    """Pass/fail outcome of a curve property check.

    ``first_violation`` is the 1-based grid index of the first failing
    position, or None on pass.  ``detail`` is a short human-readable note.
    """

    name: str
    passed: bool
    first_violation: int | None = None
    detail: str = ""


def zero_price(y: float, t: int) -> float:
    """Discount factor of a zero-coupon bond: 1 / (1 + y)**t.

    ``t`` is a whole number of years >= 1; ``y`` must exceed -1.
    """
    if t < 1:
        raise ValueError(f"maturity must be at least one year, got {t}")
    if y <= -1.0:
        raise ValueError(f"yield must exceed -1, got {y}")
    return (1.0 + y) ** (-t)


def zero_yield_from_price(p: float, t: int) -> float:
    """Annually compounded yield implied by a discount factor: p**(-1/t) - 1."""
    if t < 1:
        raise ValueError(f"maturity must be at least one year, got {t}")
    if p <= 0.0:
        raise ValueError(f"discount factor must be positive, got {p}")
    return p ** (-1.0 / t) - 1.0


def discounts_from_zeros(curve: ZeroCurve) -> DiscountCurve:
    """Discount curve of a zero curve on the consecutive grid 1..N."""
    _require_integer_grid(curve.tenors)
    return DiscountCurve(
        tuple(zero_price(y, n) for n, y in enumerate(curve.yields, start=1))
    )


def zeros_from_discounts(curve: DiscountCurve) -> ZeroCurve:
    """Zero curve implied by integer-grid discount factors."""
    yields = tuple(
        zero_yield_from_price(p, n) for n, p in enumerate(curve.factors, start=1)
    )
    return ZeroCurve(tuple(float(n) for n in range(1, len(curve) + 1)), yields)


def forward_rates(curve: DiscountCurve) -> ForwardCurve:
    """One-year forwards implied by a discount curve.

    ``f[i] = p[i] / p[i+1] - 1`` with the implicit year-0 price of 1
    supplying the spot rate ``f[0] = 1 / p[1] - 1``.  The output has the
    same length as the input.
    """
    prev = 1.0
    out = []
    for n, p in enumerate(curve.factors, start=1):
        if p == 0.0:
            raise ValueError(f"discount factor at year {n} is zero")
        out.append(prev / p - 1.0)
        prev = p
    return ForwardCurve(tuple(out))


def par_rates(curve: DiscountCurve) -> SwapCurve:
    """Par rates of a discount curve: (1 - p_n) / (p_1 + ... + p_n)."""
    for n, p in enumerate(curve.factors, start=1):
        if p <= 0.0:
            raise ValueError(f"discount factor at year {n} must be positive")
    return SwapCurve(
        tuple(
            (1.0 - p) / acc for p, acc in zip(curve.factors, curve.annuities)
        )
    )


def validate(curve: DiscountCurve, tol: float = MONOTONE_TOL) -> ValidationReport:
    """Report every no-arbitrage violation of a discount curve.

    Checked per year n (against the implicit year-0 price of 1):

    - positivity: ``p_n > tol``;
    - strict decrease: ``p_n < p_{n-1} - tol``;
    - implied forward positivity: each computable one-year forward must
      exceed ``tol`` (intervals whose end-year price is exactly zero are
      skipped here -- the positivity finding already covers them).

    Violations are data, not errors: this never raises.  Discount
    findings carry the 1-based year; forward findings carry the interval
    start index (0 = spot year).
    """
    violations: list[Violation] = []
    prev = 1.0
    for n, p in enumerate(curve.factors, start=1):
        if p <= tol:
            violations.append(Violation(n, NON_POSITIVE_DISCOUNT, p))
        if p >= prev - tol:
            violations.append(Violation(n, NON_DECREASING_DISCOUNT, p))
        prev = p
    prev = 1.0
    for i, p in enumerate(curve.factors):
        if p != 0.0:
            f = prev / p - 1.0
            if f <= tol:
                violations.append(Violation(i, NON_POSITIVE_FORWARD, f))
        prev = p
    return ValidationReport.from_violations(violations)


def _require_integer_grid(tenors: tuple[float, ...], tol: float = 1e-9) -> None:
    for n, t in enumerate(tenors, start=1):
        if abs(t - n) > tol:
            raise ValueError(
                f"tenors must be the consecutive integers 1..N, got {t} at position {n}"
            )
