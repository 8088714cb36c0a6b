"""Domain data model and dataset ingestion.

A dataset is an ordered collection of items, each carrying an initial and a
final state value. Items can be loaded from CSV or JSON, and the two state
columns can be replaced by their ranks (average rank for ties) when the raw
values are too aggregated to compare directly.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, SchemaError, ValidationError


class Trend(enum.Enum):
    RISE = "rise"
    DROP = "drop"
    FLAT = "flat"


class Transform(enum.Enum):
    IDENTITY = "identity"
    RANK_ASC = "rank_asc"
    RANK_DESC = "rank_desc"


@dataclass(frozen=True)
class StateChangeItem:
    """One data item with its initial and final state values.

    ``delta`` and ``trend`` are derived in :func:`make_item`. When a rank
    transform has been applied, ``source_initial``/``source_final`` keep the
    pre-transform values for tooltips and labels.
    """

    id: str
    label: str
    initial: float
    final: float
    delta: float
    trend: Trend
    source_initial: float | None = None
    source_final: float | None = None

    def is_improvement(self, invert_improvement: bool = False) -> bool:
        """Whether this item improved, honoring inverted value semantics.

        With ``invert_improvement`` a *decrease* of the (transformed) value
        counts as an improvement, e.g. moving up a descending ranking.
        """
        if invert_improvement:
            return self.trend is Trend.DROP
        return self.trend is Trend.RISE


def make_item(
    id: str,
    initial: float,
    final: float,
    label: str | None = None,
    source_initial: float | None = None,
    source_final: float | None = None,
) -> StateChangeItem:
    """Build an item, deriving ``delta`` and ``trend`` from the state pair."""
    initial = float(initial)
    final = float(final)
    if not (math.isfinite(initial) and math.isfinite(final)):
        raise ValidationError(f"item {id!r}: initial and final must be finite")
    delta = final - initial
    if delta > 0:
        trend = Trend.RISE
    elif delta < 0:
        trend = Trend.DROP
    else:
        trend = Trend.FLAT
    return StateChangeItem(
        id=str(id),
        label=str(label) if label is not None else str(id),
        initial=initial,
        final=final,
        delta=delta,
        trend=trend,
        source_initial=source_initial,
        source_final=source_final,
    )


@dataclass(frozen=True)
class Dataset:
    items: tuple[StateChangeItem, ...]
    transform: Transform = Transform.IDENTITY
    invert_improvement: bool = False

    def __post_init__(self) -> None:
        if not self.items:
            raise ValidationError("empty dataset")
        seen: dict[str, int] = {}
        dupes = []
        for item in self.items:
            if item.id in seen:
                dupes.append(item.id)
            seen[item.id] = 1
        if dupes:
            raise ValidationError(
                "duplicate item ids: " + ", ".join(sorted(set(dupes)))
            )

    def item(self, item_id: str) -> StateChangeItem:
        for it in self.items:
            if it.id == item_id:
                return it
        raise KeyError(item_id)

    def ids(self) -> tuple[str, ...]:
        return tuple(it.id for it in self.items)


# --- parsing ---------------------------------------------------------------

_TRANSFORM_NAMES = {t.value: t for t in Transform}


def parse_csv(
    data: bytes,
    id_column: str = "id",
    initial_column: str = "initial",
    final_column: str = "final",
    label_column: str | None = None,
    transform: Transform = Transform.IDENTITY,
    invert_improvement: bool = False,
) -> Dataset:
    """Parse a UTF-8 CSV with a header row into a dataset.

    Rows keep document order. Row numbers in errors count data rows from
    zero (the row right after the header is row 0).
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise SchemaError("missing header row")
    header = list(reader.fieldnames)
    required = [id_column, initial_column, final_column]
    for col in required:
        if col not in header:
            raise SchemaError(f"missing column {col!r}")
    if label_column is not None and label_column not in header:
        raise SchemaError(f"missing column {label_column!r}")
    use_label = label_column if label_column is not None else (
        "label" if "label" in header else None
    )

    items = []
    for row_index, row in enumerate(reader):
        raw_id = row.get(id_column)
        if raw_id is None or raw_id == "":
            raise ParseError(f"row {row_index}: empty {id_column!r} cell")
        values = {}
        for col in (initial_column, final_column):
            cell = row.get(col)
            try:
                value = float(cell)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                raise ParseError(
                    f"row {row_index}: cannot parse {col!r} cell {cell!r} as a number"
                ) from None
            if not math.isfinite(value):
                raise ParseError(f"row {row_index}: {col!r} cell {cell!r} is not finite")
            values[col] = value
        label = row.get(use_label) if use_label is not None else None
        items.append(
            make_item(raw_id, values[initial_column], values[final_column], label=label)
        )
    return Dataset(tuple(items), transform=transform, invert_improvement=invert_improvement)


_DATASET_KEYS = {"items", "transform", "invertImprovement"}
_ITEM_KEYS = {"id", "label", "initial", "final"}


def _require_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SchemaError(f"{path}: value must be finite")
    return float(value)


def parse_json(data: bytes | str) -> Dataset:
    """Parse a dataset JSON document. Unknown fields are rejected."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected an object")
    unknown = set(doc) - _DATASET_KEYS
    if unknown:
        raise SchemaError("unknown fields: " + ", ".join(sorted(unknown)))
    if "items" not in doc:
        raise SchemaError("items: missing")
    raw_items = doc["items"]
    if not isinstance(raw_items, list):
        raise SchemaError("items: expected a list")
    if not raw_items:
        raise ValidationError("empty dataset")

    transform = Transform.IDENTITY
    if "transform" in doc:
        name = doc["transform"]
        if name not in _TRANSFORM_NAMES:
            raise SchemaError(
                f"transform: expected one of {sorted(_TRANSFORM_NAMES)}, got {name!r}"
            )
        transform = _TRANSFORM_NAMES[name]
    invert = doc.get("invertImprovement", False)
    if not isinstance(invert, bool):
        raise SchemaError("invertImprovement: expected a boolean")

    items = []
    for i, raw in enumerate(raw_items):
        path = f"items[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{path}: expected an object")
        unknown = set(raw) - _ITEM_KEYS
        if unknown:
            raise SchemaError(f"{path}: unknown fields: " + ", ".join(sorted(unknown)))
        for key in ("id", "initial", "final"):
            if key not in raw:
                raise SchemaError(f"{path}.{key}: missing")
        if not isinstance(raw["id"], str):
            raise SchemaError(f"{path}.id: expected a string")
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise SchemaError(f"{path}.label: expected a string")
        initial = _require_number(raw["initial"], f"{path}.initial")
        final = _require_number(raw["final"], f"{path}.final")
        items.append(make_item(raw["id"], initial, final, label=label))
    return Dataset(tuple(items), transform=transform, invert_improvement=invert)


def dataset_to_dict(dataset: Dataset) -> dict:
    """Dataset as a plain dict matching the documented JSON schema."""
    items = []
    for it in dataset.items:
        entry: dict[str, object] = {"id": it.id}
        if it.label != it.id:
            entry["label"] = it.label
        entry["initial"] = it.initial
        entry["final"] = it.final
        items.append(entry)
    return {
        "items": items,
        "transform": dataset.transform.value,
        "invertImprovement": dataset.invert_improvement,
    }


def serialize_dataset(dataset: Dataset) -> bytes:
    """Serialize to JSON bytes; ``parse_json`` round-trips the result."""
    return json.dumps(dataset_to_dict(dataset), separators=(",", ":")).encode("utf-8")


# --- rank transform --------------------------------------------------------


def average_ranks(values: np.ndarray, descending: bool = False) -> np.ndarray:
    """Ranks 1..n with ties sharing the average of their positions."""
    values = np.asarray(values, dtype=float)
    key = -values if descending else values
    _, inverse, counts = np.unique(key, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0.0], np.cumsum(counts)[:-1].astype(float)))
    group_average = starts + (counts + 1) / 2.0
    return group_average[inverse]


def apply_rank_transform(dataset: Dataset, direction: Transform) -> Dataset:
    """Replace both state columns by their ranks, independently per column.

    Pre-transform values are kept on each item (``source_initial`` /
    ``source_final``) so presentation layers can still show them.
    """
    if direction not in (Transform.RANK_ASC, Transform.RANK_DESC):
        raise ValidationError(f"not a rank transform: {direction}")
    descending = direction is Transform.RANK_DESC
    initial = average_ranks(np.array([it.initial for it in dataset.items]), descending)
    final = average_ranks(np.array([it.final for it in dataset.items]), descending)
    items = tuple(
        make_item(
            it.id,
            initial[i],
            final[i],
            label=it.label,
            source_initial=it.initial,
            source_final=it.final,
        )
        for i, it in enumerate(dataset.items)
    )
    return Dataset(items, transform=direction, invert_improvement=dataset.invert_improvement)


def resolve_transform(dataset: Dataset) -> Dataset:
    """Apply the transform a dataset declares for itself."""
    if dataset.transform is Transform.IDENTITY:
        return dataset
    return apply_rank_transform(dataset, dataset.transform)
