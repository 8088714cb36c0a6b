"""Comparison measures between two items' state changes.

The headline measure is the percentage difference of two nonnegative
lengths, 100 * |a - b| / max(a, b). On linear encodings (slopes, bar height
differences) it equals the percentage difference of the raw |delta| values;
on intercepted segment lengths it grows as the inner radius shrinks, which
is what makes close changes easier to tell apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArgumentError, TargetNotFoundError, UndefinedMeasureError
from .geometry import intercepted_length
from .layout import Layout
from .model import StateChangeItem

_GRID_SAMPLES = 4096


def percentage_difference(a: float, b: float) -> float:
    """100 * |a - b| / max(a, b), for nonnegative a, b not both zero."""
    if a < 0 or b < 0:
        raise ArgumentError(f"lengths must be nonnegative, got {a} and {b}")
    m = max(a, b)
    if m == 0:
        raise UndefinedMeasureError("percentage difference of two zero lengths")
    # divide first: |a - b| / m <= 1 exactly, so the result never exceeds 100
    return 100.0 * (abs(a - b) / m)


def format_percent(pct: float) -> str:
    """One-decimal display form, round-half-even."""
    return f"{round(pct, 1):.1f}%"


def baseline_encodings(
    item_a: StateChangeItem, item_b: StateChangeItem
) -> tuple[float, float]:
    """Percentage differences under the two linear baseline encodings.

    A slope over a fixed horizontal gap and a bar-height difference both
    encode |delta| linearly, so both equal the raw percentage difference.
    """
    pct = percentage_difference(abs(item_a.delta), abs(item_b.delta))
    return pct, pct


@dataclass(frozen=True)
class ComparisonReport:
    item_a: str
    item_b: str
    raw_pct: float
    slope_pct: float
    bar_diff_pct: float
    intercepted_pct: float
    radius: float

    def to_dict(self) -> dict:
        def sig9(x: float) -> float:
            return 0.0 if x == 0.0 else float(format(x, ".9g"))

        return {
            "itemA": self.item_a,
            "itemB": self.item_b,
            "rawPct": sig9(self.raw_pct),
            "slopePct": sig9(self.slope_pct),
            "barDiffPct": sig9(self.bar_diff_pct),
            "interceptedPct": sig9(self.intercepted_pct),
            "radius": sig9(self.radius),
        }


def report_from_layout(layout: Layout, id_a: str, id_b: str) -> ComparisonReport:
    """Compare two laid-out items at the radii the layout was built with.

    Each item's intercepted length reflects its own side's inner radius;
    the reported radius is item A's side radius (for a same-side pair,
    simply the pair's shared radius).
    """
    if id_a == id_b:
        raise ArgumentError(f"cannot compare item {id_a!r} with itself")
    a = layout.item(id_a)
    b = layout.item(id_b)
    raw = percentage_difference(abs(a.delta), abs(b.delta))
    intercepted = percentage_difference(a.intercepted, b.intercepted)
    return ComparisonReport(
        item_a=a.id,
        item_b=b.id,
        raw_pct=raw,
        slope_pct=raw,
        bar_diff_pct=raw,
        intercepted_pct=intercepted,
        radius=layout.config.inner_radius(a.side),
    )


def _intercepted_pct(theta_small: float, theta_large: float, R: float, r: float) -> float | None:
    """Percentage difference of the two intercepted lengths, or None where
    the measure is undefined (both lengths zero)."""
    ell_s, _ = intercepted_length(r, R, theta_small)
    ell_l, _ = intercepted_length(r, R, theta_large)
    if max(ell_s, ell_l) == 0.0:
        return None
    return percentage_difference(ell_s, ell_l)


def magnification_solve(
    theta_small: float, theta_large: float, R: float, target_pct: float
) -> float:
    """Largest inner radius at which the two items' intercepted lengths
    differ by at least target_pct percent, with both items residue.

    The percentage difference grows monotonically as r shrinks (the
    smaller angle's intercepted portion vanishes first), so bisection
    finds the threshold; a descending grid scan over 4096 radii backs it
    up in case the bracket cannot be established.
    """
    if not (0.0 < theta_small < theta_large <= math.pi):
        raise ArgumentError(
            f"need 0 < thetaSmall < thetaLarge <= pi, got {theta_small} and {theta_large}"
        )
    if not (0.0 < target_pct < 100.0):
        raise ArgumentError(f"target must be in (0, 100), got {target_pct}")
    if not R > 0:
        raise ArgumentError(f"outer radius must be positive, got {R}")

    def feasible(r: float) -> bool:
        pct = _intercepted_pct(theta_small, theta_large, R, r)
        return pct is not None and pct >= target_pct

    if feasible(R):
        return R

    # both items are residue from the smaller angle's tangency inward
    lo = max(0.0, R * math.cos(theta_small))
    lo_probe = lo if lo > 0.0 else R * 1e-12
    if feasible(lo_probe):
        good, bad = lo_probe, R
        while bad - good > R * 1e-12:
            mid = 0.5 * (good + bad)
            if feasible(mid):
                good = mid
            else:
                bad = mid
        return good

    for i in range(_GRID_SAMPLES - 1, 0, -1):
        r = R * i / _GRID_SAMPLES
        if feasible(r):
            return r
    raise TargetNotFoundError(
        f"no inner radius in [0, {R}] reaches a {target_pct}% difference "
        f"for angles {theta_small} and {theta_large}"
    )
