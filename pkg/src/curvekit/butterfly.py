"""Zero-cost butterfly portfolios and their profit under curve shifts.

A butterfly is long two outer legs and short the middle one.  Weights are
stored in their natural scale -- differences of maturities for zero-bond
butterflies, differences of base annuities for swap butterflies -- with
the middle weight built as the exact sum of the outer two, so the
zero-cost identity w1 + w3 = w2 holds bit-for-bit and an unmoved
portfolio values to exactly zero.  Any positive rescaling describes the
same trade; ``Butterfly.normalized_weights`` returns the scale with a
unit middle leg for comparing across triples.

Sign conventions: a positive shift moves all rates up; values and P&L are
per unit of the stored weight scale.  Zero-bond P&L uses continuous
compounding in the revaluation exponentials, while the swap machinery
stays annually compounded end to end -- a deliberate mismatch documented
in the README formula map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bootstrap import ShiftScenario, bootstrap, shifted_bootstrap
from .curves import RATE_HI, RATE_LO, SwapCurve, ZeroCurve, validate
from .shape import CLASSIFY_TOL, CONSECUTIVE, CONVEX, scan_curve_shape

ZERO_BOND = "zero_bond"
SWAP = "swap"


@dataclass(frozen=True)
class Butterfly:
    """Three-leg, zero-cost portfolio: long the wings, short the body.

    ``legs`` holds maturities in years (zero-bond kind) or 1-based grid
    years n < m < k (swap kind).  For the swap kind the base annuities
    that produced the weights are kept alongside.
    """

    kind: str
    legs: tuple
    weights: tuple[float, float, float]
    base_annuities: tuple[float, float, float] | None = None

    def normalized_weights(self) -> tuple[float, float, float]:
        """The weight triple rescaled to a unit middle (short) leg."""
        w1, w2, w3 = self.weights
        return (w1 / w2, 1.0, w3 / w2)


@dataclass(frozen=True)
class PnlBreakdown:
    """Swap-butterfly P&L split into accrual carry and revaluation.

    ``remaining_annuities`` are the shifted annuities of the three legs
    net of the elapsed share of the first payment, in leg order.
    """

    carry: float
    mark_to_market: float
    total: float
    remaining_annuities: tuple[float, float, float]


@dataclass(frozen=True)
class NonParallelMove:
    """Per-leg rate moves (a1, a2, a3) together with a horizon in years."""

    movements: tuple[float, float, float]
    horizon: float = 0.0

    def __post_init__(self) -> None:
        movements = tuple(float(a) for a in self.movements)
        if len(movements) != 3:
            raise ValueError("exactly three per-leg movements are required")
        for a in movements:
            if not math.isfinite(a):
                raise ValueError("movements must be finite")
        if not (math.isfinite(self.horizon) and self.horizon >= 0.0):
            raise ValueError("horizon must be a non-negative number of years")
        object.__setattr__(self, "movements", movements)


@dataclass(frozen=True)
class SafetyCheck:
    """Outcome of the non-parallel safety conditions.

    ``shifted_yield_margin`` is the slack of the shifted-yield convexity
    requirement, ``instantaneous_margin`` the slack of the weighted
    move-times-maturity requirement; both are in the raw weight scale.
    The check passes only when both are non-negative (to tolerance) and
    ``binding_margin`` is the smaller of the two.
    """

    passed: bool
    shifted_yield_margin: float
    instantaneous_margin: float
    binding_margin: float


@dataclass(frozen=True)
class ArbitrageCandidate:
    """One convex triple found by a scan, with its ready-made butterfly.

    ``indices`` are 1-based positions in the scanned curve; ``legs``
    repeats the butterfly's legs (maturities or grid years); ``margin``
    is the convexity margin the ranking sorts on, largest first.
    """

    indices: tuple[int, int, int]
    legs: tuple
    margin: float
    butterfly: Butterfly


def zero_butterfly(t1: float, t2: float, t3: float) -> Butterfly:
    """Zero-coupon butterfly over maturities 0 < t1 < t2 < t3.

    The weights (t3 - t2, t3 - t1, t2 - t1) are the unique solution, up
    to scale, of zero cost (w1 + w3 = w2) combined with zero weighted
    maturity exposure (w1*t1 + w3*t3 = w2*t2).
    """
    t1, t2, t3 = float(t1), float(t2), float(t3)
    if not 0.0 < t1 < t2 < t3:
        raise ValueError(f"maturities must satisfy 0 < t1 < t2 < t3, got {(t1, t2, t3)}")
    w1 = t3 - t2
    w3 = t2 - t1
    return Butterfly(ZERO_BOND, (t1, t2, t3), (w1, w1 + w3, w3))


def zero_butterfly_pnl(
    fly: Butterfly, yields: tuple[float, float, float], shift: float, horizon: float
) -> float:
    """Value of a zero-bond butterfly after all yields move by ``shift``.

    Each leg of initial yield y and maturity T revalues, ``horizon``
    years on, to exp(-shift * (T - horizon) + y * horizon) per unit
    invested (continuous compounding).  At shift 0 and horizon 0 the
    value is exactly zero.
    """
    if fly.kind != ZERO_BOND:
        raise ValueError(f"expected a zero_bond butterfly, got kind {fly.kind!r}")
    t1, t2, t3 = fly.legs
    if not 0.0 <= horizon <= t1:
        raise ValueError(
            f"horizon must lie in [0, first maturity {t1}], got {horizon}"
        )
    y1, y2, y3 = yields
    w1, w2, w3 = fly.weights
    a, t = shift, horizon
    return (
        w1 * math.exp(-a * (t1 - t) + y1 * t)
        + w3 * math.exp(-a * (t3 - t) + y3 * t)
        - w2 * math.exp(-a * (t2 - t) + y2 * t)
    )


def nonparallel_weights(
    moves: tuple[float, float, float], maturities: tuple[float, float, float]
) -> tuple[float, float, float]:
    """Butterfly weights that keep zero cost under per-leg moves.

    With products m_i = a_i * T_i the weights are (m3 - m2, m3 - m1,
    m2 - m1); all three must come out positive, which requires
    a1*T1 < a2*T2 < a3*T3.  Equal moves reduce to the zero-butterfly
    weights scaled by the common move.
    """
    a1, a2, a3 = moves
    t1, t2, t3 = maturities
    w1 = a3 * t3 - a2 * t2
    w3 = a2 * t2 - a1 * t1
    if w1 <= 0.0 or w3 <= 0.0:
        raise ValueError(
            "moves must satisfy a1*T1 < a2*T2 < a3*T3 for positive weights, "
            f"got products ({a1 * t1}, {a2 * t2}, {a3 * t3})"
        )
    return (w1, w1 + w3, w3)


def nonparallel_safe(
    weights: tuple[float, float, float],
    maturities: tuple[float, float, float],
    yields: tuple[float, float, float],
    moves: tuple[float, float, float],
    horizon: float = 0.0,
    tol: float = 1e-12,
) -> SafetyCheck:
    """Evaluate both safety conditions for per-leg moves.

    Passing needs (in the raw weight scale, w2-normalizable by the
    caller):

    - shifted-yield condition: w1*(y1+a1) + w3*(y3+a3) >= w2*(y2+a2);
    - instantaneous condition: w1*a1*T1 + w3*a3*T3 <= w2*a2*T2.
    """
    w1, w2, w3 = weights
    if w1 <= 0.0 or w2 <= 0.0 or w3 <= 0.0:
        raise ValueError("weights must all be positive")
    if abs((w1 + w3) - w2) > 1e-9 * max(w1, w2, w3):
        raise ValueError("weights must satisfy w1 + w3 = w2")
    t1, t2, t3 = maturities
    y1, y2, y3 = yields
    a1, a2, a3 = moves
    for y, a in zip(yields, moves):
        if not RATE_LO < y + a < RATE_HI:
            raise ValueError(
                f"shifted yield {y + a} outside the supported range "
                f"({RATE_LO}, {RATE_HI})"
            )
    if horizon < 0.0:
        raise ValueError("horizon must be non-negative")
    yield_margin = w1 * ((y1 + a1) - (y2 + a2)) + w3 * ((y3 + a3) - (y2 + a2))
    instant_margin = w2 * a2 * t2 - w1 * a1 * t1 - w3 * a3 * t3
    binding = min(yield_margin, instant_margin)
    return SafetyCheck(
        passed=(yield_margin >= -tol and instant_margin >= -tol),
        shifted_yield_margin=yield_margin,
        instantaneous_margin=instant_margin,
        binding_margin=binding,
    )


def swap_butterfly(swaps: SwapCurve, indices: tuple[int, int, int]) -> Butterfly:
    """Swap butterfly at grid years n < m < k, weighted by base annuities.

    Notionals (P_k - P_m, P_k - P_n, P_m - P_n) come from the
    bootstrapped base annuities; long the fixed legs at n and k, short
    the fixed leg at m.  Each swap being at-market makes the package
    costless at inception.  The bootstrap runs strict, so an invalid
    discount curve raises rather than producing meaningless weights.
    """
    n, m, k = indices
    if not (1 <= n < m < k <= len(swaps)):
        raise ValueError(f"need 1 <= n < m < k <= {len(swaps)}, got {indices}")
    curve = bootstrap(swaps, strict=True)
    a_n, a_m, a_k = (curve.annuities[i - 1] for i in (n, m, k))
    w1 = a_k - a_m
    w3 = a_m - a_n
    return Butterfly(
        SWAP,
        (int(n), int(m), int(k)),
        (w1, w1 + w3, w3),
        base_annuities=(a_n, a_m, a_k),
    )


def swap_butterfly_pnl(
    fly: Butterfly, swaps: SwapCurve, shift: float, horizon: float
) -> PnlBreakdown:
    """Carry and mark-to-market of a swap butterfly after a parallel shift.

    Carry accrues linearly over ``horizon`` (a fraction of the annual
    coupon period, capped at 1): horizon * (w1*x_n + w3*x_k - w2*x_m).
    Mark-to-market revalues each received-fixed leg against the shifted
    par rate: a leg of weight w changes by -shift * w * A where A is the
    leg's remaining annuity on the shifted curve, taken as the shifted
    annuity minus the elapsed share of the shifted first-year factor.
    An instantaneous view is horizon = 0, where A is the shifted annuity
    itself.
    """
    if fly.kind != SWAP:
        raise ValueError(f"expected a swap butterfly, got kind {fly.kind!r}")
    if not 0.0 <= horizon <= 1.0:
        raise ValueError(f"horizon must lie in [0, 1] years, got {horizon}")
    n, m, k = fly.legs
    if len(swaps) < k:
        raise ValueError("curve is shorter than the butterfly's last leg")
    w1, w2, w3 = fly.weights
    x = swaps.rates
    # Difference form of w1*x_n + w3*x_k - w2*x_m (w2 = w1 + w3): exactly
    # zero on a flat curve and bit-identical to the classification margin
    # of the (annuity, rate) triple.
    carry = horizon * (w1 * (x[n - 1] - x[m - 1]) + w3 * (x[k - 1] - x[m - 1]))
    shifted = shifted_bootstrap(swaps, ShiftScenario.parallel(shift), strict=True)
    elapsed = horizon * shifted.factors[0]
    remaining = tuple(shifted.annuities[i - 1] - elapsed for i in (n, m, k))
    mark = (
        -shift * w1 * remaining[0]
        - shift * w3 * remaining[2]
        + shift * w2 * remaining[1]
    )
    return PnlBreakdown(carry, mark, carry + mark, remaining)


def scan_arbitrage(
    curve: ZeroCurve | SwapCurve,
    kind: str = ZERO_BOND,
    mode: str = CONSECUTIVE,
    tol: float = CLASSIFY_TOL,
    allow_large: bool = False,
) -> tuple[ArbitrageCandidate, ...]:
    """List the convex triples of a curve, ranked by margin.

    Zero-bond kind scans (tenor, yield) points of a zero curve; swap kind
    scans (annuity, swap rate) points of a swap curve.  Either way a
    convex triple is the entry condition for a profitable butterfly under
    common moves, so each hit is returned with its weights.  The curve
    must be arbitrage-clean at the individual-instrument level first
    (positive, decreasing discount factors); otherwise this raises.
    Candidates are sorted by margin descending, ties by indices, so
    results are deterministic.
    """
    if kind == ZERO_BOND:
        if not isinstance(curve, ZeroCurve):
            raise ValueError("zero_bond scan expects a ZeroCurve")
        prices = [(1.0 + y) ** (-t) for t, y in zip(curve.tenors, curve.yields)]
        prev = 1.0
        for pos, p in enumerate(prices, start=1):
            if p >= prev:
                raise ValueError(
                    f"curve fails validation: zero price does not decrease at "
                    f"point {pos}"
                )
            prev = p
        points = list(zip(curve.tenors, curve.yields))
    elif kind == SWAP:
        if not isinstance(curve, SwapCurve):
            raise ValueError("swap scan expects a SwapCurve")
        disc = bootstrap(curve)
        report = validate(disc)
        if not report.ok:
            first = report.violations[0]
            raise ValueError(
                f"curve fails validation: {first.kind} at index {first.index}"
            )
        points = list(zip(disc.annuities, curve.rates))
    else:
        raise ValueError(f"unknown butterfly kind {kind!r}")

    report = scan_curve_shape(points, mode=mode, tol=tol, allow_large=allow_large)
    candidates = []
    for i, j, k_, cls in report.triples:
        if cls.verdict != CONVEX:
            continue
        if kind == ZERO_BOND:
            fly = zero_butterfly(curve.tenors[i], curve.tenors[j], curve.tenors[k_])
        else:
            fly = swap_butterfly(curve, (i + 1, j + 1, k_ + 1))
        candidates.append(
            ArbitrageCandidate((i + 1, j + 1, k_ + 1), fly.legs, cls.margin, fly)
        )
    candidates.sort(key=lambda c: (-c.margin, c.indices))
    return tuple(candidates)
