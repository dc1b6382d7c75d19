"""Discrete convexity/concavity classification of curve points.

A triple of points (x1, v1), (x2, v2), (x3, v3) with x1 < x2 < x3 is
classified through the signed margin

    margin = (x3 - x2) * v1 + (x2 - x1) * v3 - (x3 - x1) * v2

which is positive when the middle point sits below the chord (convex),
negative when above (concave) and within tolerance of zero when the
points are collinear (affine).  The margin depends only on second
differences of the values, so adding any affine function of the abscissa
leaves it unchanged.

The same test applied to (base annuity, shifted annuity) pairs of a
bootstrapped curve pins down how shifted discount factors drift against
base ones: the chord slope between the annuity points at consecutive
years (n, n+1) is the shifted/base factor ratio at n+1, so every triple
is concave-or-affine exactly when those ratios are non-increasing from
year 2 onward.  The year-1 ratio positions a point without entering any
slope; :func:`ratio_monotonicity` nevertheless checks the full range,
because a rise anywhere breaks the one-sided drift that a parallel move
of a sane curve produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .curves import CheckResult, DiscountCurve

CONVEX = "convex"
CONCAVE = "concave"
AFFINE = "affine"

CONSECUTIVE = "consecutive"
ALL_TRIPLES = "all_triples"

CONCAVE_EVERYWHERE = "concave_everywhere"
CONVEX_SOMEWHERE = "convex_somewhere"

# Margins are O(basis points x years); below this they are treated as
# collinear rather than a real kink.
CLASSIFY_TOL = 1e-9

# all-triples scans are O(N^3); beyond this require an explicit opt-in.
ALL_TRIPLES_CAP = 200


@dataclass(frozen=True)
class TripleClassification:
    verdict: str
    margin: float


@dataclass(frozen=True)
class ShapeReport:
    """Classification of every scanned triple plus the overall verdict.

    ``triples`` holds (i, j, k, classification) with 0-based positions
    into the scanned points, in lexicographic (i, j, k) order.  The
    overall verdict is ``concave_everywhere`` exactly when no triple
    classified convex, and ``convex_somewhere`` otherwise.
    """

    triples: tuple[tuple[int, int, int, TripleClassification], ...]
    overall: str


def classify_triple(points, tol: float = CLASSIFY_TOL) -> TripleClassification:
    """Classify three (abscissa, value) points as convex, concave or affine."""
    (x1, v1), (x2, v2), (x3, v3) = points
    if not (x1 < x2 < x3):
        raise ValueError("abscissas must be strictly increasing")
    # The difference form of w1*v1 + w3*v3 - (w1 + w3)*v2: identical
    # algebraically, exactly zero for equal values, and bit-identical to
    # the weight-based carry expressions elsewhere in the package.
    w1 = x3 - x2
    w3 = x2 - x1
    margin = w1 * (v1 - v2) + w3 * (v3 - v2)
    if margin > tol:
        verdict = CONVEX
    elif margin < -tol:
        verdict = CONCAVE
    else:
        verdict = AFFINE
    return TripleClassification(verdict, margin)


def scan_curve_shape(
    points,
    mode: str = CONSECUTIVE,
    tol: float = CLASSIFY_TOL,
    allow_large: bool = False,
) -> ShapeReport:
    """Classify the requested triples of a point sequence.

    ``consecutive`` scans the N-2 windows (i, i+1, i+2); ``all_triples``
    scans every i < j < k and refuses more than ``ALL_TRIPLES_CAP`` points
    unless ``allow_large`` is set.
    """
    pts = [(float(x), float(v)) for x, v in points]
    if len(pts) < 3:
        raise ValueError("shape scan needs at least 3 points")
    for (a, _), (b, _) in zip(pts, pts[1:]):
        if b <= a:
            raise ValueError("abscissas must be strictly increasing")
    if mode == CONSECUTIVE:
        index_triples = [(i, i + 1, i + 2) for i in range(len(pts) - 2)]
    elif mode == ALL_TRIPLES:
        if len(pts) > ALL_TRIPLES_CAP and not allow_large:
            raise ValueError(
                f"all-triples scan over {len(pts)} points exceeds the cap of "
                f"{ALL_TRIPLES_CAP}; pass allow_large=True to override"
            )
        index_triples = list(combinations(range(len(pts)), 3))
    else:
        raise ValueError(f"unknown scan mode {mode!r}")
    triples = tuple(
        (i, j, k, classify_triple((pts[i], pts[j], pts[k]), tol))
        for i, j, k in index_triples
    )
    any_convex = any(c.verdict == CONVEX for _, _, _, c in triples)
    overall = CONVEX_SOMEWHERE if any_convex else CONCAVE_EVERYWHERE
    return ShapeReport(triples, overall)


def annuity_point_classification(
    base: DiscountCurve,
    shifted: DiscountCurve,
    indices: tuple[int, int, int],
    tol: float = CLASSIFY_TOL,
) -> TripleClassification:
    """Classify the (base annuity, shifted annuity) points at three years.

    ``indices`` are 1-based years n < m < k on the common grid of both
    curves.  A zero shift puts the points on the diagonal, hence affine.
    """
    n, m, k = indices
    if not (1 <= n < m < k <= len(base)):
        raise ValueError(f"need 1 <= n < m < k <= {len(base)}, got {indices}")
    if len(base) != len(shifted):
        raise ValueError("curves must share one grid")
    pts = tuple(
        (base.annuities[i - 1], shifted.annuities[i - 1]) for i in (n, m, k)
    )
    return classify_triple(pts, tol)


def ratio_monotonicity(
    base: DiscountCurve,
    shifted: DiscountCurve,
    tol: float = 1e-12,
    direction: str = "non_increasing",
) -> CheckResult:
    """Check the per-year ratio shifted/base of discount factors is monotone.

    Default direction is non-increasing, the response of a bootstrapped
    curve to a parallel rise when the underlying swap rates do not
    decrease; pass ``direction="non_decreasing"`` for the mirrored check.
    On failure the result carries the 1-based year n at which the ratio
    moves the wrong way towards n+1.
    """
    if len(base) != len(shifted):
        raise ValueError("curves must share one grid")
    for n, p in enumerate(base.factors, start=1):
        if p == 0.0:
            raise ValueError(f"base discount factor at year {n} is zero")
    if direction not in ("non_increasing", "non_decreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    ratios = [s / b for s, b in zip(shifted.factors, base.factors)]
    for n, (r, r_next) in enumerate(zip(ratios, ratios[1:]), start=1):
        bad = r_next > r + tol if direction == "non_increasing" else r_next < r - tol
        if bad:
            return CheckResult(
                "discount_ratio_monotone",
                False,
                n,
                f"ratio rises {r:.12g} -> {r_next:.12g} after year {n}"
                if direction == "non_increasing"
                else f"ratio falls {r:.12g} -> {r_next:.12g} after year {n}",
            )
    return CheckResult("discount_ratio_monotone", True)
