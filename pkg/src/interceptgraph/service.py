"""Local HTTP service exposing the layout protocol.

The browser viewer (or any client) steers the per-side inner radii through
query parameters; every response is computed from an immutable dataset
snapshot, so concurrent requests with different radii cannot interfere.
Replacing the dataset swaps the snapshot atomically and bumps its version;
responses carry the version in the ``X-Dataset-Version`` header.
"""

from __future__ import annotations

import json
import mimetypes
import os
import threading
from dataclasses import dataclass, replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .errors import InterceptGraphError
from .layout import LayoutConfig, build_layout, layout_to_json, resolve_topk
from .metrics import report_from_layout
from .model import Dataset, parse_json
from .render import (
    RenderStyle,
    render_grouped_bar_svg,
    render_intercept_svg,
    render_slope_svg,
    render_stacked_bar_svg,
)

DEFAULT_BIND = "127.0.0.1:7181"
BIND_ENV_VAR = "INTERCEPT_GRAPH_BIND"

_CHARTS = ("intercept", "slope", "grouped-bar", "stacked-bar")


@dataclass(frozen=True)
class Snapshot:
    dataset: Dataset
    version: int


class ServiceState:
    """Atomically swappable dataset snapshot plus the base layout config."""

    def __init__(self, dataset: Dataset, base_config: LayoutConfig):
        self.base_config = base_config
        self._lock = threading.Lock()
        self._snapshot = Snapshot(dataset=dataset, version=1)

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    def replace_dataset(self, dataset: Dataset) -> Snapshot:
        with self._lock:
            snap = Snapshot(dataset=dataset, version=self._snapshot.version + 1)
            self._snapshot = snap
            return snap


class _BadRequest(Exception):
    pass


def _float_param(params: dict, name: str) -> float | None:
    if name not in params:
        return None
    raw = params[name][-1]
    try:
        return float(raw)
    except ValueError:
        raise _BadRequest(f"{name} is not a number") from None


def _int_param(params: dict, name: str) -> int | None:
    if name not in params:
        return None
    raw = params[name][-1]
    try:
        return int(raw)
    except ValueError:
        raise _BadRequest(f"{name} is not an integer") from None


def resolve_config(
    base: LayoutConfig, params: dict, dataset: Dataset
) -> LayoutConfig:
    """Apply radius / top-k query parameters to the base config.

    Radii are accepted in canvas units (``rRise``/``rDrop``) or as
    fractions of R (``rRiseFrac``/``rDropFrac``); ``kRise``/``kDrop``
    resolve radii per side. Mixing modes on one side is an error.
    """
    updates = {}
    for side_key, frac_key, attr in (
        ("rRise", "rRiseFrac", "r_rise"),
        ("rDrop", "rDropFrac", "r_drop"),
    ):
        value = _float_param(params, side_key)
        frac = _float_param(params, frac_key)
        if value is not None and frac is not None:
            raise _BadRequest(f"give {side_key} or {frac_key}, not both")
        if value is not None:
            if not (0.0 <= value <= base.R):
                raise _BadRequest(f"{side_key} out of range [0,R]")
            updates[attr] = value
        elif frac is not None:
            if not (0.0 <= frac <= 1.0):
                raise _BadRequest(f"{frac_key} out of range [0,1]")
            updates[attr] = frac * base.R

    k_rise = _int_param(params, "kRise")
    k_drop = _int_param(params, "kDrop")
    if k_rise is not None and "r_rise" in updates:
        raise _BadRequest("give kRise or an rRise radius, not both")
    if k_drop is not None and "r_drop" in updates:
        raise _BadRequest("give kDrop or an rDrop radius, not both")

    config = replace(base, **updates) if updates else base
    if k_rise is not None or k_drop is not None:
        config = resolve_topk(dataset, config, k_rise=k_rise, k_drop=k_drop)
    return config


class LayoutRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "interceptgraph"

    # typed by LayoutServer below
    @property
    def state(self) -> ServiceState:
        return self.server.state  # type: ignore[attr-defined]

    @property
    def static_dir(self) -> Path | None:
        return self.server.static_dir  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # keep test output quiet
        if self.server.verbose:  # type: ignore[attr-defined]
            super().log_message(fmt, *args)

    # --- response helpers ---

    def _send(self, code: int, body: bytes, content_type: str, version: int | None = None) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        if version is not None:
            self.send_header("X-Dataset-Version", str(version))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, payload: dict | bytes, version: int | None = None) -> None:
        body = payload if isinstance(payload, bytes) else json.dumps(
            payload, separators=(",", ":")
        ).encode("utf-8")
        self._send(code, body, "application/json", version)

    def _error(self, code: int, message: str) -> None:
        self._send_json(code, {"error": message})

    # --- routing ---

    def do_GET(self) -> None:  # noqa: N802 (stdlib casing)
        url = urlparse(self.path)
        params = parse_qs(url.query)
        try:
            if url.path == "/healthz":
                self._send(200, b"ok\n", "text/plain; charset=utf-8")
            elif url.path == "/api/dataset":
                self._get_dataset()
            elif url.path == "/api/layout":
                self._get_layout(params)
            elif url.path == "/api/render.svg":
                self._get_render(params)
            elif url.path == "/api/metrics":
                self._get_metrics(params)
            else:
                self._get_static(url.path)
        except _BadRequest as exc:
            self._error(400, str(exc))
        except InterceptGraphError as exc:
            self._error(400, str(exc))
        except BrokenPipeError:
            pass
        except Exception as exc:  # pragma: no cover - defensive
            self._error(500, f"internal error: {exc}")

    def do_POST(self) -> None:  # noqa: N802
        url = urlparse(self.path)
        if url.path != "/api/dataset":
            self._error(404, "not found")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = self.rfile.read(length)
            dataset = parse_json(body)
        except InterceptGraphError as exc:
            self._error(400, str(exc))
            return
        snap = self.state.replace_dataset(dataset)
        self.send_response(204)
        self.send_header("X-Dataset-Version", str(snap.version))
        self.send_header("Content-Length", "0")
        self.end_headers()

    # --- endpoints ---

    def _get_dataset(self) -> None:
        from .model import dataset_to_dict

        snap = self.state.snapshot
        self._send_json(
            200,
            {"version": snap.version, "dataset": dataset_to_dict(snap.dataset)},
            version=snap.version,
        )

    def _layout_for(self, params: dict, snap: Snapshot):
        config = resolve_config(self.state.base_config, params, snap.dataset)
        return build_layout(snap.dataset, config)

    def _get_layout(self, params: dict) -> None:
        snap = self.state.snapshot
        layout = self._layout_for(params, snap)
        self._send_json(200, layout_to_json(layout), version=snap.version)

    def _get_render(self, params: dict) -> None:
        snap = self.state.snapshot
        chart = params.get("chart", ["intercept"])[-1]
        if chart not in _CHARTS:
            raise _BadRequest(
                f"unknown chart {chart!r}; expected one of {', '.join(_CHARTS)}"
            )
        style = RenderStyle()
        if chart == "intercept":
            layout = self._layout_for(params, snap)
            body = render_intercept_svg(layout, style)
        elif chart == "slope":
            body = render_slope_svg(snap.dataset, style=style)
        elif chart == "grouped-bar":
            body = render_grouped_bar_svg(snap.dataset, style=style)
        else:
            body = render_stacked_bar_svg(snap.dataset, style=style)
        self._send(200, body, "image/svg+xml", version=snap.version)

    def _get_metrics(self, params: dict) -> None:
        snap = self.state.snapshot
        ids = {name: params.get(name, [None])[-1] for name in ("a", "b")}
        for name, value in ids.items():
            if not value:
                raise _BadRequest(f"missing query parameter {name!r}")
        if ids["a"] == ids["b"]:
            raise _BadRequest("a and b must name two different items")
        layout = self._layout_for(params, snap)
        known = {it.id for it in layout.items}
        missing = [v for v in (ids["a"], ids["b"]) if v not in known]
        if missing:
            self._send_json(404, {"error": "unknown item id: " + ", ".join(missing)})
            return
        report = report_from_layout(layout, ids["a"], ids["b"])
        self._send_json(200, report.to_dict(), version=snap.version)

    # --- static assets ---

    def _get_static(self, path: str) -> None:
        root = self.static_dir
        if root is None:
            self._error(404, "not found")
            return
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        try:
            target.relative_to(root.resolve())
        except ValueError:
            self._error(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._error(404, "not found")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)


class LayoutServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], state: ServiceState,
                 static_dir: Path | None = None, verbose: bool = False):
        super().__init__(address, LayoutRequestHandler)
        self.state = state
        self.static_dir = static_dir
        self.verbose = verbose


def parse_bind(bind: str | None) -> tuple[str, int]:
    """Bind address from the env var, an explicit value, or the default."""
    value = os.environ.get(BIND_ENV_VAR) or bind or DEFAULT_BIND
    host, _, port = value.rpartition(":")
    if not host or not port.isdigit():
        raise InterceptGraphError(
            f"invalid bind address {value!r}; expected host:port"
        )
    return host, int(port)


def create_server(
    dataset: Dataset,
    base_config: LayoutConfig,
    bind: str | None = None,
    static_dir: str | Path | None = None,
    verbose: bool = False,
) -> LayoutServer:
    address = parse_bind(bind)
    state = ServiceState(dataset, base_config)
    static = Path(static_dir) if static_dir is not None else None
    return LayoutServer(address, state, static_dir=static, verbose=verbose)
