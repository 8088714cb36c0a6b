"""Numerical kernel for the radial state-change layout.

Each data item becomes a straight segment from a point on the inner circle
(initial state) to a point on the outer circle (final state). The central
angle between the two radii is proportional to the state change, the chord
joining them follows the law of cosines, and the portion of the chord that
falls inside the inner circle is what the filter and magnification
interactions operate on.

Scalar reference implementations live here; the vectorized batch versions
used by layout assembly are in :mod:`interceptgraph._kernels`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .model import StateChangeItem

Point = tuple[float, float]


class Side(enum.Enum):
    """Which semicircle an item is drawn in; rise is the right half-plane."""

    RISE = "rise"
    DROP = "drop"


@dataclass(frozen=True)
class AxisScale:
    """Shared linear value-to-angle mapping for the inner and outer axes."""

    vmin: float
    vmax: float
    span: float = math.pi

    def __post_init__(self) -> None:
        if not (self.vmax > self.vmin):
            raise ArgumentError(f"degenerate axis range [{self.vmin}, {self.vmax}]")
        if not (0.0 < self.span <= math.pi):
            raise ArgumentError(f"span must be in (0, pi], got {self.span}")

    @property
    def width(self) -> float:
        return self.vmax - self.vmin

    def value_to_angle(self, v: float) -> float:
        """Angle in [0, span] for a value; strictly increasing and linear."""
        if not (self.vmin <= v <= self.vmax):
            raise ArgumentError(
                f"value {v} outside axis range [{self.vmin}, {self.vmax}]"
            )
        return self.span * (v - self.vmin) / self.width


@dataclass(frozen=True)
class CircleConfig:
    """Outer radius and one side's inner radius, in canvas units."""

    R: float
    r: float

    def __post_init__(self) -> None:
        if not self.R > 0:
            raise ArgumentError(f"outer radius must be positive, got {self.R}")
        if not (0.0 <= self.r <= self.R):
            raise ArgumentError(f"inner radius must be in [0, R], got {self.r}")


@dataclass(frozen=True)
class ItemGeometry:
    """Resolved per-item geometry on one side.

    ``intercept_param`` is the fraction of the segment A->B at which it
    exits the inner circle; the intercepted length is the part before it.
    """

    theta: float
    phi_initial: float
    phi_final: float
    chord: float
    intercepted: float
    intercept_param: float
    residue: bool


def value_to_angle(v: float, scale: AxisScale) -> float:
    return scale.value_to_angle(v)


def central_angle(item: StateChangeItem, scale: AxisScale) -> float:
    """Central angle between the radii of an item's two states.

    Computed directly as span * |delta| / width so the proportionality
    theta_i / theta_j == |delta_i| / |delta_j| holds to a few ulp.
    """
    if not (scale.vmin <= item.initial <= scale.vmax):
        raise ArgumentError(
            f"item {item.id!r}: initial value {item.initial} outside axis range"
        )
    if not (scale.vmin <= item.final <= scale.vmax):
        raise ArgumentError(
            f"item {item.id!r}: final value {item.final} outside axis range"
        )
    return scale.span * abs(item.delta) / scale.width


def _check_domain(r: float, R: float, theta: float) -> None:
    if not R > 0:
        raise ArgumentError(f"outer radius must be positive, got {R}")
    if not (0.0 <= r <= R):
        raise ArgumentError(f"inner radius must be in [0, R], got {r}")
    if not (0.0 <= theta <= math.pi):
        raise ArgumentError(f"central angle must be in [0, pi], got {theta}")


def chord_length(r: float, R: float, theta: float) -> float:
    """Distance between a point at radius r and a point at radius R whose
    radii enclose the angle theta (law of cosines)."""
    _check_domain(r, R, theta)
    return math.sqrt(r * r + R * R - 2.0 * r * R * math.cos(theta))


def is_residue(r: float, R: float, theta: float) -> bool:
    """Whether the segment re-enters (or is tangent to) the inner circle.

    The segment leaves the inner circle at A; it dips back inside exactly
    when r >= R*cos(theta). Tangency counts as residue, so the item whose
    angle defines a top-k radius is itself included.
    """
    _check_domain(r, R, theta)
    return r >= R * math.cos(theta)


def intercepted_length(r: float, R: float, theta: float) -> tuple[float, float]:
    """Length of the chord portion inside the inner circle, and the exit
    fraction t along A->B.

    For a residue item the segment from A (on the circle) exits again at
    t = 2*r*(r - R*cos(theta)) / c**2, giving length 2*r*(r - R*cos(theta)) / c.
    """
    _check_domain(r, R, theta)
    c = chord_length(r, R, theta)
    if c == 0.0 or not is_residue(r, R, theta):
        return 0.0, 0.0
    if r == R:
        # whole segment is a chord of the circle; avoid c**2/c rounding
        return c, 1.0
    ell = 2.0 * r * (r - R * math.cos(theta)) / c
    ell = min(max(ell, 0.0), c)
    return ell, ell / c


def topk_radius(thetas, k: int, R: float) -> tuple[float, bool]:
    """Inner radius whose residue set keeps the k largest central angles.

    Returns (r, exact). With theta_k the k-th largest angle, the radius
    R*cos(theta_k) makes the k-th segment tangent and every larger angle a
    residue item. Beyond a right angle no positive radius can exclude a
    segment, so the radius clamps to 0 and exact is False.
    """
    arr = np.asarray(list(thetas), dtype=float)
    n = arr.size
    if n == 0:
        raise ArgumentError("no angles given")
    if not (1 <= k <= n):
        raise ArgumentError(f"k must be in [1, {n}], got {k}")
    if arr.min() < 0.0 or arr.max() > math.pi:
        raise ArgumentError("all angles must be in [0, pi]")
    if not R > 0:
        raise ArgumentError(f"outer radius must be positive, got {R}")
    theta_k = float(np.partition(arr, n - k)[n - k])
    if theta_k > math.pi / 2.0:
        return 0.0, False
    return R * math.cos(theta_k), True


def _unit(angle: float, side: Side) -> Point:
    # angle measured from the separator's lower ray N; rise sweeps the
    # right half-plane counterclockwise, drop mirrors it on the left
    x = math.sin(angle)
    y = -math.cos(angle)
    if side is Side.DROP:
        x = -x
    return x, y


def polar_point(radius: float, angle: float, side: Side) -> Point:
    ux, uy = _unit(angle, side)
    return radius * ux, radius * uy


def endpoints(
    geom: ItemGeometry, side: Side, config: CircleConfig
) -> tuple[Point, Point, Point]:
    """Cartesian endpoints (A on the inner axis, B on the outer axis) and
    the exit point P of the intercepted portion; P == A for non-residue.

    Coordinates are centered on the axis midpoint with the separator
    vertical: N (vmin) points down, M (vmax) up, y increasing upward.
    """
    ax, ay = polar_point(config.r, geom.phi_initial, side)
    bx, by = polar_point(config.R, geom.phi_final, side)
    t = geom.intercept_param
    p = (ax + t * (bx - ax), ay + t * (by - ay))
    return (ax, ay), (bx, by), p


def item_geometry(
    item: StateChangeItem, scale: AxisScale, config: CircleConfig
) -> ItemGeometry:
    """Resolve every geometric quantity for one item on one side."""
    theta = central_angle(item, scale)
    phi_i = scale.value_to_angle(item.initial)
    phi_f = scale.value_to_angle(item.final)
    chord = chord_length(config.r, config.R, theta)
    ell, t = intercepted_length(config.r, config.R, theta)
    return ItemGeometry(
        theta=theta,
        phi_initial=phi_i,
        phi_final=phi_f,
        chord=chord,
        intercepted=ell,
        intercept_param=t,
        residue=is_residue(config.r, config.R, theta),
    )
