"""Deterministic SVG output.

One renderer for the radial intercept view plus the three conventional
charts it is usually compared against (slope graph, grouped bars, stacked
bars). All numbers are written with seven fixed decimals: fixed notation
makes identical inputs produce identical bytes on any platform, and seven
places keep coordinate quantization (half an ulp of the grid per endpoint)
below the 1e-6 tolerance at which overlay lengths are checked against the
layout. Documents are self-contained SVG 1.1 with no external resources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import ArgumentError, RenderError
from .layout import Layout, LabelPolicy
from .geometry import Side
from .model import Dataset, Trend, resolve_transform

FLAT_COLOR = "#888888"
AXIS_COLOR = "#666666"
GRID_COLOR = "#cccccc"
INITIAL_BAR_COLOR = "#9aa5b1"
BASE_BAR_COLOR = "#b0b6bd"
TEXT_COLOR = "#333333"

_TICK_LEN = 6.0
_LABEL_GAP = 10.0
_ANNOTATION_GAP = 24.0
_MAX_BAR_LABELS = 24


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float = 1.5
    residue_stroke_width: float = 4.0
    font_family: str = "Helvetica, Arial, sans-serif"
    font_size: float = 12.0
    background: str = "#ffffff"
    highlight_ids: tuple[str, ...] = ()
    color_by_improvement: bool = False

    def __post_init__(self) -> None:
        if self.residue_stroke_width < self.stroke_width:
            raise ArgumentError(
                "residue stroke width must be at least the base stroke width"
            )


def _n(x: float) -> str:
    if not math.isfinite(x):
        raise RenderError(f"non-finite coordinate {x}")
    s = f"{x:.7f}"
    return "0.0000000" if s == "-0.0000000" else s


def _attr(value: str) -> str:
    return escape(value, {'"': "&quot;"})


class _Svg:
    def __init__(self, width: float, height: float, background: str):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_n(width)}" height="{_n(height)}" '
            f'viewBox="0 0 {_n(width)} {_n(height)}">\n',
            f'<rect x="0" y="0" width="{_n(width)}" height="{_n(height)}" '
            f'fill="{_attr(background)}"/>\n',
        ]

    def open_group(self, cls: str, extra: str = "") -> None:
        self.parts.append(f'<g class="{_attr(cls)}"{extra}>\n')

    def close_group(self) -> None:
        self.parts.append("</g>\n")

    def line(self, x1, y1, x2, y2, stroke: str, width: float, cls: str = "",
             data_id: str | None = None) -> None:
        cls_attr = f' class="{_attr(cls)}"' if cls else ""
        id_attr = f' data-id="{_attr(data_id)}"' if data_id is not None else ""
        self.parts.append(
            f'<line{cls_attr}{id_attr} x1="{_n(x1)}" y1="{_n(y1)}" '
            f'x2="{_n(x2)}" y2="{_n(y2)}" stroke="{_attr(stroke)}" '
            f'stroke-width="{_n(width)}" stroke-linecap="round"/>\n'
        )

    def rect(self, x, y, w, h, fill: str, cls: str = "") -> None:
        cls_attr = f' class="{_attr(cls)}"' if cls else ""
        self.parts.append(
            f'<rect{cls_attr} x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" '
            f'height="{_n(h)}" fill="{_attr(fill)}"/>\n'
        )

    def path(self, d: str, stroke: str, width: float, cls: str = "") -> None:
        cls_attr = f' class="{_attr(cls)}"' if cls else ""
        self.parts.append(
            f'<path{cls_attr} d="{d}" fill="none" stroke="{_attr(stroke)}" '
            f'stroke-width="{_n(width)}"/>\n'
        )

    def text(self, x, y, content: str, style: RenderStyle, anchor: str = "start",
             cls: str = "", size: float | None = None) -> None:
        cls_attr = f' class="{_attr(cls)}"' if cls else ""
        self.parts.append(
            f'<text{cls_attr} x="{_n(x)}" y="{_n(y)}" fill="{TEXT_COLOR}" '
            f'font-family="{_attr(style.font_family)}" '
            f'font-size="{_n(size if size is not None else style.font_size)}" '
            f'text-anchor="{anchor}" dominant-baseline="middle">'
            f"{escape(content)}</text>\n"
        )

    def to_bytes(self) -> bytes:
        return ("".join(self.parts) + "</svg>\n").encode("utf-8")


# --- intercept view ----------------------------------------------------------


def _item_color(item, layout: Layout, style: RenderStyle) -> str:
    cfg = layout.config
    if item.delta == 0:
        return FLAT_COLOR
    if style.color_by_improvement:
        return cfg.rise_color if item.improved else cfg.drop_color
    return cfg.rise_color if item.side is Side.RISE else cfg.drop_color


def _text_anchor(x: float) -> str:
    if abs(x) < 1e-9:
        return "middle"
    return "start" if x > 0 else "end"


def render_intercept_svg(layout: Layout, style: RenderStyle | None = None) -> bytes:
    """Radial view: two semicircular axis pairs, the separator, ticks, one
    segment per item, and a bold overlay on each residue item's intercepted
    portion."""
    style = style or RenderStyle()
    cfg = layout.config
    w, h = cfg.canvas_width, cfg.canvas_height
    cx, cy = w / 2.0, h / 2.0

    def sx(x: float) -> float:
        return cx + x

    def sy(y: float) -> float:
        return cy - y

    svg = _Svg(w, h, style.background)

    svg.open_group("axes")
    for side, sign, sweep in ((Side.RISE, 1.0, 0), (Side.DROP, -1.0, 1)):
        for radius in (cfg.R, cfg.inner_radius(side)):
            if radius <= 0.0:
                continue
            x1, y1 = sx(0.0), sy(-radius)
            span = layout.scale.span
            ex = sx(sign * radius * math.sin(span))
            ey = sy(-radius * math.cos(span))
            svg.path(
                f"M {_n(x1)} {_n(y1)} A {_n(radius)} {_n(radius)} 0 0 {sweep} "
                f"{_n(ex)} {_n(ey)}",
                stroke=AXIS_COLOR,
                width=1.0,
                cls="axis",
            )
    m, n_pt = layout.separator
    svg.line(sx(m[0]), sy(m[1]), sx(n_pt[0]), sy(n_pt[1]),
             stroke=AXIS_COLOR, width=1.0, cls="separator")
    svg.close_group()

    svg.open_group("ticks")
    for tick in layout.ticks:
        ox, oy = tick.outer
        norm = math.hypot(ox, oy)
        if norm == 0.0:
            continue
        ux, uy = ox / norm, oy / norm
        svg.line(
            sx(ox), sy(oy),
            sx(ox + _TICK_LEN * ux), sy(oy + _TICK_LEN * uy),
            stroke=AXIS_COLOR, width=1.0, cls="tick",
        )
        ix, iy = tick.inner
        if math.hypot(ix, iy) > _TICK_LEN:
            svg.line(
                sx(ix), sy(iy),
                sx(ix - _TICK_LEN * 0.6 * ux), sy(iy - _TICK_LEN * 0.6 * uy),
                stroke=GRID_COLOR, width=1.0, cls="tick-inner",
            )
        lx, ly = ox + _LABEL_GAP * ux, oy + _LABEL_GAP * uy
        svg.text(sx(lx), sy(ly), tick.label, style,
                 anchor=_text_anchor(lx), cls="tick-label", size=style.font_size * 0.85)
    svg.close_group()

    svg.open_group("items")
    for item in layout.items:
        color = _item_color(item, layout, style)
        svg.line(sx(item.a[0]), sy(item.a[1]), sx(item.b[0]), sy(item.b[1]),
                 stroke=color, width=style.stroke_width, cls="item",
                 data_id=item.id)
        if item.residue:
            bold = cfg.residue_highlight_color or color
            svg.line(sx(item.a[0]), sy(item.a[1]), sx(item.p[0]), sy(item.p[1]),
                     stroke=bold, width=style.residue_stroke_width,
                     cls="intercepted", data_id=item.id)
    svg.close_group()

    if cfg.label_policy is not LabelPolicy.NONE:
        svg.open_group("labels")
        for item in layout.items:
            if cfg.label_policy is LabelPolicy.RESIDUE_ONLY and not item.residue:
                continue
            bx, by = item.b
            ux, uy = bx / cfg.R, by / cfg.R
            lx, ly = bx + _LABEL_GAP * ux, by + _LABEL_GAP * uy
            svg.text(sx(lx), sy(ly), item.label, style,
                     anchor=_text_anchor(lx), cls="item-label",
                     size=style.font_size * 0.85)
        svg.close_group()

    if style.highlight_ids:
        svg.open_group("annotations")
        for item_id in sorted(style.highlight_ids):
            item = layout.item(item_id)
            bx, by = item.b
            ux, uy = bx / cfg.R, by / cfg.R
            ex, ey = bx + _ANNOTATION_GAP * ux, by + _ANNOTATION_GAP * uy
            svg.line(sx(bx), sy(by), sx(ex), sy(ey),
                     stroke=TEXT_COLOR, width=1.0, cls="leader")
            svg.text(sx(ex + 2 * ux), sy(ey + 2 * uy), item.label, style,
                     anchor=_text_anchor(ex), cls="annotation")
        svg.close_group()

    return svg.to_bytes()


# --- baseline charts ---------------------------------------------------------

_MARGIN = 60.0


def _value_range(dataset: Dataset) -> tuple[float, float]:
    values = [it.initial for it in dataset.items] + [it.final for it in dataset.items]
    return min(values), max(values)


def render_slope_svg(
    dataset: Dataset,
    size: tuple[float, float] = (800.0, 500.0),
    style: RenderStyle | None = None,
) -> bytes:
    """Slope graph: both state columns on two vertical axes, one line per
    item; the slope carries the change."""
    style = style or RenderStyle()
    working = resolve_transform(dataset)
    w, h = size
    vmin, vmax = _value_range(working)
    if vmin == vmax:
        raise RenderError(f"degenerate value range: every state equals {vmin}")
    x0, x1 = _MARGIN, w - _MARGIN
    plot_h = h - 2 * _MARGIN

    def y(v: float) -> float:
        return h - _MARGIN - (v - vmin) / (vmax - vmin) * plot_h

    svg = _Svg(w, h, style.background)
    svg.open_group("axes")
    svg.line(x0, _MARGIN, x0, h - _MARGIN, stroke=AXIS_COLOR, width=1.0, cls="axis")
    svg.line(x1, _MARGIN, x1, h - _MARGIN, stroke=AXIS_COLOR, width=1.0, cls="axis")
    svg.text(x0, _MARGIN - 16, "initial", style, anchor="middle", cls="axis-title")
    svg.text(x1, _MARGIN - 16, "final", style, anchor="middle", cls="axis-title")
    for i in range(6):
        v = vmin + (vmax - vmin) * i / 5.0
        ty = y(v)
        svg.line(x0 - _TICK_LEN, ty, x0, ty, stroke=AXIS_COLOR, width=1.0, cls="tick")
        svg.line(x1, ty, x1 + _TICK_LEN, ty, stroke=AXIS_COLOR, width=1.0, cls="tick")
        svg.text(x0 - _LABEL_GAP, ty, format(v, ".6g"), style, anchor="end",
                 cls="tick-label", size=style.font_size * 0.85)
        svg.text(x1 + _LABEL_GAP, ty, format(v, ".6g"), style, anchor="start",
                 cls="tick-label", size=style.font_size * 0.85)
    svg.close_group()

    svg.open_group("items")
    for it in working.items:
        if it.trend is Trend.RISE:
            color = "#1f77b4"
        elif it.trend is Trend.DROP:
            color = "#d62728"
        else:
            color = FLAT_COLOR
        svg.line(x0, y(it.initial), x1, y(it.final), stroke=color,
                 width=style.stroke_width, cls="item", data_id=it.id)
    svg.close_group()
    return svg.to_bytes()


def _bar_chart_frame(
    working: Dataset, size: tuple[float, float], style: RenderStyle
) -> tuple[_Svg, float, float, float]:
    w, h = size
    vmin, vmax = _value_range(working)
    if vmin < 0:
        raise RenderError("bar charts require nonnegative values")
    if vmax <= 0:
        raise RenderError("degenerate value range: no positive value to scale bars")
    plot_h = h - 2 * _MARGIN
    baseline = h - _MARGIN

    def y(v: float) -> float:
        return baseline - v / vmax * plot_h

    svg = _Svg(w, h, style.background)
    svg.open_group("axes")
    svg.line(_MARGIN, baseline, w - _MARGIN, baseline, stroke=AXIS_COLOR,
             width=1.0, cls="axis")
    svg.line(_MARGIN, _MARGIN, _MARGIN, baseline, stroke=AXIS_COLOR,
             width=1.0, cls="axis")
    for i in range(6):
        v = vmax * i / 5.0
        ty = y(v)
        svg.line(_MARGIN - _TICK_LEN, ty, _MARGIN, ty, stroke=AXIS_COLOR,
                 width=1.0, cls="tick")
        svg.text(_MARGIN - _LABEL_GAP, ty, format(v, ".6g"), style, anchor="end",
                 cls="tick-label", size=style.font_size * 0.85)
    svg.close_group()
    return svg, baseline, vmax, plot_h


def render_grouped_bar_svg(
    dataset: Dataset,
    size: tuple[float, float] = (800.0, 500.0),
    style: RenderStyle | None = None,
) -> bytes:
    """Grouped bars: per item two adjacent bars (initial, final) from a
    zero baseline; requires a nonnegative domain."""
    style = style or RenderStyle()
    working = resolve_transform(dataset)
    svg, baseline, vmax, plot_h = _bar_chart_frame(working, size, style)
    w, _ = size
    n = len(working.items)
    group_w = (w - 2 * _MARGIN) / n
    bar_w = group_w * 0.35

    svg.open_group("items")
    for i, it in enumerate(working.items):
        gx = _MARGIN + i * group_w
        for j, (value, color) in enumerate(
            ((it.initial, INITIAL_BAR_COLOR),
             (it.final, "#1f77b4" if it.trend is Trend.RISE
              else "#d62728" if it.trend is Trend.DROP else FLAT_COLOR))
        ):
            bh = value / vmax * plot_h
            bx = gx + group_w * 0.15 + j * bar_w
            svg.rect(bx, baseline - bh, bar_w, bh, fill=color, cls="bar")
        if n <= _MAX_BAR_LABELS:
            svg.text(gx + group_w / 2.0, baseline + 14, it.id, style,
                     anchor="middle", cls="bar-label", size=style.font_size * 0.85)
    svg.close_group()
    return svg.to_bytes()


def render_stacked_bar_svg(
    dataset: Dataset,
    size: tuple[float, float] = (800.0, 500.0),
    style: RenderStyle | None = None,
) -> bytes:
    """Stacked bars: a context sub-bar of height min(initial, final) with
    the |change| stacked on top, colored by trend; flat items show only the
    context bar."""
    style = style or RenderStyle()
    working = resolve_transform(dataset)
    svg, baseline, vmax, plot_h = _bar_chart_frame(working, size, style)
    w, _ = size
    n = len(working.items)
    group_w = (w - 2 * _MARGIN) / n
    bar_w = group_w * 0.6

    svg.open_group("items")
    for i, it in enumerate(working.items):
        bx = _MARGIN + i * group_w + group_w * 0.2
        base = min(it.initial, it.final)
        base_h = base / vmax * plot_h
        svg.rect(bx, baseline - base_h, bar_w, base_h, fill=BASE_BAR_COLOR,
                 cls="bar-base")
        if it.delta != 0:
            delta_h = abs(it.delta) / vmax * plot_h
            color = "#1f77b4" if it.trend is Trend.RISE else "#d62728"
            svg.rect(bx, baseline - base_h - delta_h, bar_w, delta_h,
                     fill=color, cls="bar-delta")
        if n <= _MAX_BAR_LABELS:
            svg.text(bx + bar_w / 2.0, baseline + 14, it.id, style,
                     anchor="middle", cls="bar-label", size=style.font_size * 0.85)
    svg.close_group()
    return svg.to_bytes()
