"""Independent reference computations the tests check the library against.

These deliberately avoid the library's closed forms: distances come from
coordinates, intersections from numeric quadratic roots, and top-k sets
from sorting. Keep them dumb.
"""

from __future__ import annotations

import math

import numpy as np


def place_endpoints(r: float, R: float, theta: float):
    """Inner point at angle 0, outer point at angle theta, around origin."""
    return (r, 0.0), (R * math.cos(theta), R * math.sin(theta))


def endpoint_distance(r: float, R: float, theta: float) -> float:
    (ax, ay), (bx, by) = place_endpoints(r, R, theta)
    return math.hypot(bx - ax, by - ay)


def segment_inside_circle_length(r: float, R: float, theta: float) -> float:
    """Length of the A->B sub-segment inside the radius-r circle, found by
    numerically solving |A + t(B-A)|^2 = r^2 for t and clipping to [0, 1]."""
    (ax, ay), (bx, by) = place_endpoints(r, R, theta)
    dx, dy = bx - ax, by - ay
    a = dx * dx + dy * dy
    b = 2.0 * (ax * dx + ay * dy)
    c = ax * ax + ay * ay - r * r
    if a == 0.0:
        return 0.0
    roots = np.roots([a, b, c])
    if np.iscomplexobj(roots) and np.any(np.abs(roots.imag) > 1e-12):
        return 0.0
    t1, t2 = sorted(np.real(roots))
    lo, hi = max(t1, 0.0), min(t2, 1.0)
    if hi <= lo:
        return 0.0
    return (hi - lo) * math.sqrt(a)


def brute_topk_indices(deltas, k: int) -> set[int]:
    """Indices of the k largest |delta| (assumes tie-free values)."""
    order = sorted(range(len(deltas)), key=lambda i: -abs(deltas[i]))
    return set(order[:k])
