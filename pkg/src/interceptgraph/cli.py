"""Command-line interface.

Subcommands: ``layout`` (emit the layout protocol JSON), ``render`` (emit
an SVG chart), ``metrics`` (compare two items), ``topk`` (resolve per-side
inner radii for a top-k filter), ``serve`` (run the local layout service).

Exit codes: 0 success, 2 usage or input errors, 1 internal errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ArgumentError, InterceptGraphError
from .layout import LabelPolicy, LayoutConfig, build_layout, layout_to_json, resolve_topk
from .metrics import report_from_layout
from .model import Dataset, Transform, parse_csv, parse_json
from .render import (
    RenderStyle,
    render_grouped_bar_svg,
    render_intercept_svg,
    render_slope_svg,
    render_stacked_bar_svg,
)
from .service import DEFAULT_BIND, create_server

_TRANSFORM_FLAGS = {
    "identity": Transform.IDENTITY,
    "rank-asc": Transform.RANK_ASC,
    "rank-desc": Transform.RANK_DESC,
}

_LABEL_POLICIES = {p.value.replace("_", "-"): p for p in LabelPolicy}


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", required=True, help="dataset file (.csv or .json)")
    parser.add_argument("--transform", choices=sorted(_TRANSFORM_FLAGS),
                        help="override the dataset's value transform")
    parser.add_argument("--invert-improvement", action="store_true",
                        help="treat a decrease of the (transformed) value as an improvement")
    parser.add_argument("--col-id", default="id", help="CSV column holding item ids")
    parser.add_argument("--col-initial", default="initial",
                        help="CSV column holding initial values")
    parser.add_argument("--col-final", default="final",
                        help="CSV column holding final values")
    parser.add_argument("--col-label", default=None,
                        help="CSV column holding display labels")


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--outer-radius", type=float, default=360.0, metavar="R",
                        help="outer axis radius in canvas units (default 360)")
    parser.add_argument("--width", type=float, default=800.0, help="canvas width")
    parser.add_argument("--height", type=float, default=800.0, help="canvas height")
    parser.add_argument("--span", type=float, default=math.pi,
                        help="angular span of each semicircle in radians (default pi)")
    parser.add_argument("--tick-count", type=int, default=8,
                        help="number of tick intervals per axis")
    parser.add_argument("--label-policy", choices=sorted(_LABEL_POLICIES),
                        default="residue-only")
    parser.add_argument("--rise-color", default="#1f77b4")
    parser.add_argument("--drop-color", default="#d62728")
    parser.add_argument("--residue-color", default="",
                        help="color of the bold intercepted overlay (default: item color)")


def _add_radius_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r-rise", type=float, help="rise-side inner radius, canvas units")
    parser.add_argument("--r-drop", type=float, help="drop-side inner radius, canvas units")
    parser.add_argument("--r-rise-frac", type=float,
                        help="rise-side inner radius as a fraction of R")
    parser.add_argument("--r-drop-frac", type=float,
                        help="drop-side inner radius as a fraction of R")
    parser.add_argument("--top-k", type=int, metavar="K",
                        help="keep the top K changes per side (sets both radii)")
    parser.add_argument("--k-rise", type=int, help="top-k for the rise side only")
    parser.add_argument("--k-drop", type=int, help="top-k for the drop side only")


def _add_output_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default="-",
                        help="output path, or - for stdout (default)")


def load_dataset(args: argparse.Namespace) -> Dataset:
    path = Path(args.input)
    if not path.exists():
        raise InterceptGraphError(f"input file not found: {path}")
    data = path.read_bytes()
    if path.suffix.lower() == ".json" or data.lstrip()[:1] == b"{":
        dataset = parse_json(data)
    else:
        dataset = parse_csv(
            data,
            id_column=args.col_id,
            initial_column=args.col_initial,
            final_column=args.col_final,
            label_column=args.col_label,
        )
    if args.transform is not None:
        dataset = replace(dataset, transform=_TRANSFORM_FLAGS[args.transform])
    if args.invert_improvement:
        dataset = replace(dataset, invert_improvement=True)
    return dataset


def build_config(args: argparse.Namespace, dataset: Dataset) -> LayoutConfig:
    R = args.outer_radius
    radii = {}
    for attr, unit_flag, frac_flag in (
        ("r_rise", "r_rise", "r_rise_frac"),
        ("r_drop", "r_drop", "r_drop_frac"),
    ):
        unit = getattr(args, unit_flag)
        frac = getattr(args, frac_flag)
        if unit is not None and frac is not None:
            raise ArgumentError(f"--{unit_flag.replace('_', '-')} and "
                                f"--{frac_flag.replace('_', '-')} are mutually exclusive")
        if frac is not None:
            if not 0.0 <= frac <= 1.0:
                raise ArgumentError(f"--{frac_flag.replace('_', '-')} must be in [0, 1]")
            radii[attr] = frac * R
        elif unit is not None:
            radii[attr] = unit

    k_rise = args.k_rise if args.k_rise is not None else args.top_k
    k_drop = args.k_drop if args.k_drop is not None else args.top_k
    if k_rise is not None and "r_rise" in radii:
        raise ArgumentError("give a rise-side k or radius, not both")
    if k_drop is not None and "r_drop" in radii:
        raise ArgumentError("give a drop-side k or radius, not both")

    config = LayoutConfig(
        R=R,
        r_rise=radii.get("r_rise", R / 2.0),
        r_drop=radii.get("r_drop", R / 2.0),
        span=args.span,
        canvas_width=args.width,
        canvas_height=args.height,
        tick_count=args.tick_count,
        rise_color=args.rise_color,
        drop_color=args.drop_color,
        residue_highlight_color=args.residue_color,
        label_policy=_LABEL_POLICIES[args.label_policy],
    )
    if k_rise is not None or k_drop is not None:
        config = resolve_topk(dataset, config, k_rise=k_rise, k_drop=k_drop)
    return config


def _write(args: argparse.Namespace, payload: bytes) -> None:
    if args.output == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        Path(args.output).write_bytes(payload)


def _style_from(args: argparse.Namespace) -> RenderStyle:
    return RenderStyle(
        stroke_width=args.stroke_width,
        residue_stroke_width=args.residue_stroke_width,
        highlight_ids=tuple(args.highlight or ()),
        color_by_improvement=args.color_by_improvement,
    )


def cmd_layout(args: argparse.Namespace) -> int:
    dataset = load_dataset(args)
    config = build_config(args, dataset)
    _write(args, layout_to_json(build_layout(dataset, config)))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    dataset = load_dataset(args)
    style = _style_from(args)
    if args.chart == "intercept":
        config = build_config(args, dataset)
        payload = render_intercept_svg(build_layout(dataset, config), style)
    else:
        size = (args.width, args.height)
        renderers = {
            "slope": render_slope_svg,
            "grouped-bar": render_grouped_bar_svg,
            "stacked-bar": render_stacked_bar_svg,
        }
        payload = renderers[args.chart](dataset, size=size, style=style)
    _write(args, payload)
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    if args.item_a == args.item_b:
        raise ArgumentError("item ids must differ")
    dataset = load_dataset(args)
    if args.r is not None or args.r_frac is not None:
        if args.r is not None and args.r_frac is not None:
            raise ArgumentError("--r and --r-frac are mutually exclusive")
        value = args.r if args.r is not None else args.r_frac * args.outer_radius
        for flag in ("r_rise", "r_drop", "r_rise_frac", "r_drop_frac"):
            if getattr(args, flag) is not None:
                raise ArgumentError("--r/--r-frac conflict with per-side radius flags")
        args.r_rise = value
        args.r_drop = value
    config = build_config(args, dataset)
    layout = build_layout(dataset, config)
    try:
        report = report_from_layout(layout, args.item_a, args.item_b)
    except KeyError as exc:
        raise InterceptGraphError(f"unknown item id: {exc.args[0]}") from None
    _write(args, json.dumps(report.to_dict(), separators=(",", ":")).encode() + b"\n")
    return 0


def cmd_topk(args: argparse.Namespace) -> int:
    if args.top_k is None and args.k_rise is None and args.k_drop is None:
        raise ArgumentError("give --top-k, --k-rise, or --k-drop")
    dataset = load_dataset(args)
    config = build_config(args, dataset)
    layout = build_layout(dataset, config)
    payload = {
        "R": config.R,
        "rRise": config.r_rise,
        "rDrop": config.r_drop,
        "residueCounts": {
            "rise": sum(1 for it in layout.items if it.side.value == "rise" and it.residue),
            "drop": sum(1 for it in layout.items if it.side.value == "drop" and it.residue),
        },
        "warnings": list(config.warnings),
    }
    _write(args, json.dumps(payload, separators=(",", ":")).encode() + b"\n")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    dataset = load_dataset(args)
    config = build_config(args, dataset)
    try:
        server = create_server(
            dataset,
            config,
            bind=args.bind,
            static_dir=args.static,
            verbose=args.verbose,
        )
    except OSError as exc:
        print(f"error: cannot bind: {exc}", file=sys.stderr)
        return 1
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (Ctrl-C to stop)", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interceptgraph",
        description="Radial layout and charts for comparing state changes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_layout = sub.add_parser("layout", help="emit layout protocol JSON")
    for add in (_add_input_args, _add_config_args, _add_radius_args, _add_output_arg):
        add(p_layout)
    p_layout.set_defaults(func=cmd_layout)

    p_render = sub.add_parser("render", help="emit an SVG chart")
    for add in (_add_input_args, _add_config_args, _add_radius_args, _add_output_arg):
        add(p_render)
    p_render.add_argument("--chart", default="intercept",
                          choices=["intercept", "slope", "grouped-bar", "stacked-bar"])
    p_render.add_argument("--stroke-width", type=float, default=1.5)
    p_render.add_argument("--residue-stroke-width", type=float, default=4.0)
    p_render.add_argument("--highlight", action="append", metavar="ID",
                          help="annotate this item id (repeatable)")
    p_render.add_argument("--color-by-improvement", action="store_true",
                          help="color items by improvement instead of trend side")
    p_render.set_defaults(func=cmd_render)

    p_metrics = sub.add_parser("metrics", help="compare two items")
    for add in (_add_input_args, _add_config_args, _add_radius_args, _add_output_arg):
        add(p_metrics)
    p_metrics.add_argument("-a", "--item-a", required=True)
    p_metrics.add_argument("-b", "--item-b", required=True)
    p_metrics.add_argument("--r", type=float,
                           help="evaluate both sides at this inner radius")
    p_metrics.add_argument("--r-frac", type=float,
                           help="evaluate both sides at this fraction of R")
    p_metrics.set_defaults(func=cmd_metrics)

    p_topk = sub.add_parser("topk", help="resolve per-side radii for a top-k filter")
    for add in (_add_input_args, _add_config_args, _add_radius_args, _add_output_arg):
        add(p_topk)
    p_topk.set_defaults(func=cmd_topk)

    p_serve = sub.add_parser("serve", help="run the local layout service")
    for add in (_add_input_args, _add_config_args, _add_radius_args):
        add(p_serve)
    p_serve.add_argument("--bind", default=DEFAULT_BIND, metavar="HOST:PORT",
                         help="bind address (INTERCEPT_GRAPH_BIND overrides)")
    p_serve.add_argument("--static", default=None, metavar="DIR",
                         help="directory of static viewer assets to serve at /")
    p_serve.add_argument("--verbose", action="store_true", help="log requests")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InterceptGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failures
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
