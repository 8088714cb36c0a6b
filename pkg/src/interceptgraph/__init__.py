"""Radial layout engine for comparing state changes across many items."""

from .errors import (
    ArgumentError,
    InterceptGraphError,
    LayoutError,
    ParseError,
    RenderError,
    SchemaError,
    TargetNotFoundError,
    UndefinedMeasureError,
    ValidationError,
)
from .geometry import (
    AxisScale,
    CircleConfig,
    ItemGeometry,
    Side,
    central_angle,
    chord_length,
    endpoints,
    intercepted_length,
    is_residue,
    item_geometry,
    topk_radius,
    value_to_angle,
)
from .layout import (
    LabelPolicy,
    Layout,
    LayoutConfig,
    build_layout,
    layout_to_dict,
    layout_to_json,
    resolve_topk,
    tick_values,
)
from .metrics import (
    ComparisonReport,
    baseline_encodings,
    format_percent,
    magnification_solve,
    percentage_difference,
    report_from_layout,
)
from .model import (
    Dataset,
    StateChangeItem,
    Transform,
    Trend,
    apply_rank_transform,
    make_item,
    parse_csv,
    parse_json,
    resolve_transform,
    serialize_dataset,
)
from .render import (
    RenderStyle,
    render_grouped_bar_svg,
    render_intercept_svg,
    render_slope_svg,
    render_stacked_bar_svg,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "AxisScale",
    "CircleConfig",
    "ComparisonReport",
    "Dataset",
    "InterceptGraphError",
    "ItemGeometry",
    "LabelPolicy",
    "Layout",
    "LayoutConfig",
    "LayoutError",
    "ParseError",
    "RenderError",
    "RenderStyle",
    "SchemaError",
    "Side",
    "StateChangeItem",
    "TargetNotFoundError",
    "Transform",
    "Trend",
    "UndefinedMeasureError",
    "ValidationError",
    "apply_rank_transform",
    "baseline_encodings",
    "build_layout",
    "central_angle",
    "chord_length",
    "endpoints",
    "format_percent",
    "intercepted_length",
    "is_residue",
    "item_geometry",
    "layout_to_dict",
    "layout_to_json",
    "magnification_solve",
    "make_item",
    "parse_csv",
    "parse_json",
    "percentage_difference",
    "render_grouped_bar_svg",
    "render_intercept_svg",
    "render_slope_svg",
    "render_stacked_bar_svg",
    "report_from_layout",
    "resolve_topk",
    "resolve_transform",
    "serialize_dataset",
    "tick_values",
    "topk_radius",
    "value_to_angle",
]
