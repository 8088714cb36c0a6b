"""Scene assembly: from a dataset and a config to a serializable layout.

The layout is the single contract consumed by the SVG renderers, the CLI,
the HTTP service, and the browser viewer. Items split into two semicircles
(rising items right, dropping items left), each with its own adjustable
inner radius.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace

import numpy as np

from ._kernels import batch_geometry
from .errors import ArgumentError, LayoutError
from .geometry import AxisScale, Point, Side, topk_radius
from .model import Dataset, StateChangeItem, Transform, Trend, resolve_transform

LABEL_MARGIN = 40.0


class LabelPolicy(enum.Enum):
    NONE = "none"
    RESIDUE_ONLY = "residue_only"
    ALL = "all"


@dataclass(frozen=True)
class LayoutConfig:
    R: float = 360.0
    r_rise: float = 180.0
    r_drop: float = 180.0
    span: float = math.pi
    canvas_width: float = 800.0
    canvas_height: float = 800.0
    tick_count: int = 8
    rise_color: str = "#1f77b4"
    drop_color: str = "#d62728"
    residue_highlight_color: str = ""
    label_policy: LabelPolicy = LabelPolicy.RESIDUE_ONLY
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.R > 0:
            raise ArgumentError(f"outer radius must be positive, got {self.R}")
        for name, r in (("rRise", self.r_rise), ("rDrop", self.r_drop)):
            if not (0.0 <= r <= self.R):
                raise ArgumentError(f"{name} out of range [0,R]")
        if not (0.0 < self.span <= math.pi):
            raise ArgumentError(f"span must be in (0, pi], got {self.span}")
        if self.tick_count < 1:
            raise ArgumentError(f"tick count must be >= 1, got {self.tick_count}")
        half = min(self.canvas_width, self.canvas_height) / 2.0
        if half < self.R + LABEL_MARGIN:
            raise ArgumentError(
                f"canvas {self.canvas_width}x{self.canvas_height} cannot contain "
                f"radius {self.R} plus a {LABEL_MARGIN} label margin"
            )

    def inner_radius(self, side: Side) -> float:
        return self.r_rise if side is Side.RISE else self.r_drop


@dataclass(frozen=True)
class ItemLayout:
    id: str
    label: str
    side: Side
    initial: float
    final: float
    delta: float
    theta: float
    phi_initial: float
    phi_final: float
    a: Point
    b: Point
    p: Point
    chord: float
    intercepted: float
    intercept_param: float
    residue: bool
    improved: bool
    source_initial: float | None = None
    source_final: float | None = None


@dataclass(frozen=True)
class Tick:
    value: float
    label: str
    inner: Point
    outer: Point


@dataclass(frozen=True)
class Layout:
    scale: AxisScale
    config: LayoutConfig
    items: tuple[ItemLayout, ...]
    ticks: tuple[Tick, ...]
    separator: tuple[Point, Point]  # (M at vmax, N at vmin)
    transform: Transform = Transform.IDENTITY
    invert_improvement: bool = False

    def item(self, item_id: str) -> ItemLayout:
        for it in self.items:
            if it.id == item_id:
                return it
        raise KeyError(item_id)

    def residue_count(self, side: Side) -> int:
        return sum(1 for it in self.items if it.side is side and it.residue)


def side_of(item: StateChangeItem) -> Side:
    """Dropping items go left; rising and flat items go right."""
    return Side.DROP if item.trend is Trend.DROP else Side.RISE


def tick_values(scale: AxisScale, count: int) -> tuple[float, ...]:
    """count+1 evenly spaced values from vmin to vmax inclusive."""
    if count < 1:
        raise ArgumentError(f"tick count must be >= 1, got {count}")
    return tuple(float(v) for v in np.linspace(scale.vmin, scale.vmax, count + 1))


def data_scale(dataset: Dataset, span: float = math.pi) -> AxisScale:
    """Axis range from the min and max over both state columns."""
    values = [it.initial for it in dataset.items] + [it.final for it in dataset.items]
    vmin, vmax = min(values), max(values)
    if vmin == vmax:
        raise LayoutError(f"degenerate value range: every state equals {vmin}")
    return AxisScale(vmin=vmin, vmax=vmax, span=span)


def _canonical_order(items: list[StateChangeItem]) -> list[StateChangeItem]:
    def key(it: StateChangeItem):
        side = side_of(it)
        return (0 if side is Side.RISE else 1, -abs(it.delta), it.id)

    return sorted(items, key=key)


def _format_tick(value: float) -> str:
    return format(value, ".6g")


def build_layout(dataset: Dataset, config: LayoutConfig) -> Layout:
    """Assemble the full scene. Deterministic for identical inputs.

    The dataset's declared transform is applied first (a no-op for
    identity), so raw files and pre-ranked data behave the same.
    """
    working = resolve_transform(dataset)
    scale = data_scale(working, config.span)
    ordered = _canonical_order(list(working.items))

    width = scale.width
    item_layouts: list[ItemLayout] = []
    by_side: dict[Side, list[StateChangeItem]] = {Side.RISE: [], Side.DROP: []}
    for it in ordered:
        by_side[side_of(it)].append(it)

    for side, sign in ((Side.RISE, 1.0), (Side.DROP, -1.0)):
        group = by_side[side]
        if not group:
            continue
        phi_i = np.array([scale.span * (it.initial - scale.vmin) / width for it in group])
        phi_f = np.array([scale.span * (it.final - scale.vmin) / width for it in group])
        theta = np.array([scale.span * abs(it.delta) / width for it in group])
        r = config.inner_radius(side)
        geo = batch_geometry(phi_i, phi_f, theta, r, config.R, sign)
        for i, it in enumerate(group):
            item_layouts.append(
                ItemLayout(
                    id=it.id,
                    label=it.label,
                    side=side,
                    initial=it.initial,
                    final=it.final,
                    delta=it.delta,
                    theta=float(geo.theta[i]),
                    phi_initial=float(phi_i[i]),
                    phi_final=float(phi_f[i]),
                    a=(float(geo.ax[i]), float(geo.ay[i])),
                    b=(float(geo.bx[i]), float(geo.by[i])),
                    p=(float(geo.px[i]), float(geo.py[i])),
                    chord=float(geo.chord[i]),
                    intercepted=float(geo.intercepted[i]),
                    intercept_param=float(geo.intercept_param[i]),
                    residue=bool(geo.residue[i]),
                    improved=it.is_improvement(working.invert_improvement),
                    source_initial=it.source_initial,
                    source_final=it.source_final,
                )
            )

    ticks: list[Tick] = []
    for side in (Side.RISE, Side.DROP):
        sign = 1.0 if side is Side.RISE else -1.0
        r = config.inner_radius(side)
        for value in tick_values(scale, config.tick_count):
            angle = scale.value_to_angle(value)
            ux, uy = math.sin(angle) * sign, -math.cos(angle)
            ticks.append(
                Tick(
                    value=value,
                    label=_format_tick(value),
                    inner=(r * ux, r * uy),
                    outer=(config.R * ux, config.R * uy),
                )
            )

    separator = ((0.0, config.R), (0.0, -config.R))
    return Layout(
        scale=scale,
        config=config,
        items=tuple(item_layouts),
        ticks=tuple(ticks),
        separator=separator,
        transform=working.transform,
        invert_improvement=working.invert_improvement,
    )


def resolve_topk(
    dataset: Dataset,
    config: LayoutConfig,
    k_rise: int | None = None,
    k_drop: int | None = None,
) -> LayoutConfig:
    """Set per-side inner radii so each side keeps its top-k changes.

    Sides not given a k keep their configured radius. When a side's k-th
    angle is obtuse no positive radius excludes the rest; the radius clamps
    to 0 and a warning lists the surplus residue items. Ties at the cutoff
    keep every tied item, which can push the residue count past k.
    """
    working = resolve_transform(dataset)
    scale = data_scale(working, config.span)
    sides = {Side.RISE: [], Side.DROP: []}
    for it in working.items:
        sides[side_of(it)].append(it)

    new_radii = {}
    warnings: list[str] = []
    for side, k, name in ((Side.RISE, k_rise, "kRise"), (Side.DROP, k_drop, "kDrop")):
        if k is None:
            continue
        group = sides[side]
        if not 1 <= k <= len(group):
            raise ArgumentError(
                f"{name} must be in [1, {len(group)}] for the {side.value} side, got {k}"
            )
        thetas = np.array([scale.span * abs(it.delta) / scale.width for it in group])
        r, exact = topk_radius(thetas, k, config.R)
        new_radii[side] = r
        theta_k = float(np.partition(thetas, len(group) - k)[len(group) - k])
        kept = int(np.count_nonzero(thetas >= theta_k))
        if not exact:
            surplus = sorted(
                it.id
                for it, th in zip(group, thetas)
                if math.pi / 2.0 <= th < theta_k
            )
            warnings.append(
                f"{name}={k}: cutoff angle {theta_k:.6g} exceeds a right angle; "
                f"inner radius clamped to 0 and {len(surplus)} extra residue "
                "item(s) remain: " + ", ".join(surplus)
            )
        elif kept != k:
            warnings.append(
                f"{name}={k}: {kept} residue items (ties at the cutoff angle)"
            )

    return replace(
        config,
        r_rise=new_radii.get(Side.RISE, config.r_rise),
        r_drop=new_radii.get(Side.DROP, config.r_drop),
        warnings=config.warnings + tuple(warnings),
    )


# --- serialization ----------------------------------------------------------


def _round9(x: float) -> float:
    """Round to 9 significant decimal digits (round-half-even)."""
    if x == 0.0:
        return 0.0
    return float(format(x, ".9g"))


def _point(p: Point) -> list[float]:
    return [_round9(p[0]), _round9(p[1])]


def layout_to_dict(layout: Layout) -> dict:
    cfg = layout.config
    return {
        "scale": {
            "vmin": _round9(layout.scale.vmin),
            "vmax": _round9(layout.scale.vmax),
            "span": _round9(layout.scale.span),
        },
        "config": {
            "R": _round9(cfg.R),
            "rRise": _round9(cfg.r_rise),
            "rDrop": _round9(cfg.r_drop),
            "span": _round9(cfg.span),
            "canvasWidth": _round9(cfg.canvas_width),
            "canvasHeight": _round9(cfg.canvas_height),
            "tickCount": cfg.tick_count,
            "riseColor": cfg.rise_color,
            "dropColor": cfg.drop_color,
            "residueHighlightColor": cfg.residue_highlight_color,
            "labelPolicy": cfg.label_policy.value,
            "transform": layout.transform.value,
            "invertImprovement": layout.invert_improvement,
            "warnings": list(cfg.warnings),
        },
        "separator": {
            "M": _point(layout.separator[0]),
            "N": _point(layout.separator[1]),
        },
        "ticks": [
            {
                "value": _round9(t.value),
                "label": t.label,
                "inner": _point(t.inner),
                "outer": _point(t.outer),
            }
            for t in layout.ticks
        ],
        "items": [
            {
                "id": it.id,
                "label": it.label,
                "side": it.side.value,
                "initial": _round9(it.initial),
                "final": _round9(it.final),
                "delta": _round9(it.delta),
                "theta": _round9(it.theta),
                "phiInitial": _round9(it.phi_initial),
                "phiFinal": _round9(it.phi_final),
                "A": _point(it.a),
                "B": _point(it.b),
                "P": _point(it.p),
                "chord": _round9(it.chord),
                "intercepted": _round9(it.intercepted),
                "residue": it.residue,
            }
            for it in layout.items
        ],
    }


def layout_to_json(layout: Layout) -> bytes:
    return json.dumps(layout_to_dict(layout), separators=(",", ":")).encode("utf-8")
