#!/usr/bin/env python3
"""Regenerate the bundled 321-item demo dataset.

The dataset imitates a two-season per-player scoring table: 321 items whose
raw values are derived from a hand-built rank permutation, shipped with a
descending rank transform declared (so rank 1 is the best score). The
permutation is engineered, not random:

* the 35 largest displacements on each side are pairwise distinct, so the
  residue count is exact for any top-k filter up to k=35 (the demo and the
  docs use k=10 and k=30);
* it contains improvement displacements of 213 and 234 places and decline
  displacements of 114 and 124 places, the pairs the README walks through;
* every remaining item moves by at most a few dozen places, far below the
  engineered band, so it can never tie with a top-k cutoff.

Output: data/demo_players.json and data/demo_players.csv.
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
from pathlib import Path

N = 321
BULK_WINDOW = 7
SEED = 2024

# Engineered displacement magnitudes, in descending order per side. At the
# default half-turn span a displacement above half the rank range (160)
# subtends an obtuse angle, which no positive inner radius can exclude; only
# the first nine per side may cross that line so every cutoff from k=10 to
# k=35 stays exactly solvable.
DROP_DISPLACEMENTS = [  # improvements: rank decreases by this many places
    253, 247, 240, 234, 228, 221, 213, 207, 199,
    155, 150, 146, 141, 136, 131, 127, 122, 118, 115,
    111, 108, 105, 102, 99, 97, 95, 93, 91, 89,
    87, 85, 83, 81, 79, 77,
]
RISE_DISPLACEMENTS = [  # declines: rank increases by this many places
    249, 243, 236, 231, 224, 217, 211, 204, 197,
    152, 148, 144, 139, 134, 129, 124, 119, 114, 110,
    107, 104, 101, 98, 96, 94, 92, 90, 88, 86,
    84, 82, 80, 78, 76, 74,
]


def build_permutation() -> dict[int, int]:
    """initial rank -> final rank, realizing the engineered displacements."""
    free_initials = set(range(1, N + 1))
    free_finals = set(range(1, N + 1))
    mapping: dict[int, int] = {}

    def place(delta: int) -> None:
        for i in sorted(free_initials):
            f = i + delta
            if 1 <= f <= N and f in free_finals:
                mapping[i] = f
                free_initials.remove(i)
                free_finals.remove(f)
                return
        raise SystemExit(f"could not place displacement {delta}")

    for d in DROP_DISPLACEMENTS:
        place(-d)
    for d in RISE_DISPLACEMENTS:
        place(+d)

    # pair the remaining ranks roughly in order, shuffling finals inside
    # small windows so bulk items wobble a few places in both directions
    # without ever reaching the engineered displacement band
    rng = random.Random(SEED)
    rem_initials = sorted(free_initials)
    rem_finals = sorted(free_finals)
    for start in range(0, len(rem_finals), BULK_WINDOW):
        window = rem_finals[start : start + BULK_WINDOW]
        rng.shuffle(window)
        rem_finals[start : start + BULK_WINDOW] = window
    for i, f in zip(rem_initials, rem_finals):
        mapping[i] = f
    return mapping


def rank_to_value(rank: int) -> float:
    # strictly decreasing, one-decimal, tie-free: rank 1 -> 39.9
    return (400 - rank) / 10.0


def verify(mapping: dict[int, int]) -> None:
    assert sorted(mapping) == list(range(1, N + 1))
    assert sorted(mapping.values()) == list(range(1, N + 1))
    deltas = {i: mapping[i] - i for i in mapping}
    rises = sorted((d for d in deltas.values() if d > 0), reverse=True)
    drops = sorted((-d for d in deltas.values() if d < 0), reverse=True)
    for side, values, band in (
        ("rise", rises, len(RISE_DISPLACEMENTS)),
        ("drop", drops, len(DROP_DISPLACEMENTS)),
    ):
        for k in (10, 30, band):
            if k < len(values):
                assert values[k - 1] > values[k], f"{side} tie at k={k}"
        for k in (10, 30):
            assert values[k - 1] < (N - 1) / 2, f"{side} k={k} cutoff is obtuse"
        assert len(values) > 40, f"{side} side too small: {len(values)}"
        assert max(values[band:]) < min(values[:band]), (
            f"{side} bulk reaches engineered band"
        )
    for needed in (213, 234):
        assert needed in drops, f"missing improvement displacement {needed}"
    for needed in (114, 124):
        assert needed in rises, f"missing decline displacement {needed}"


def main() -> int:
    mapping = build_permutation()
    verify(mapping)
    items = []
    for i in sorted(mapping):
        items.append(
            {
                "id": f"p{i:03d}",
                "label": f"Player {i:03d}",
                "initial": rank_to_value(i),
                "final": rank_to_value(mapping[i]),
            }
        )
    doc = {
        "items": items,
        "transform": "rank_desc",
        "invertImprovement": True,
    }
    out_dir = Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(exist_ok=True)
    (out_dir / "demo_players.json").write_text(
        json.dumps(doc, indent=1) + "\n", encoding="utf-8"
    )

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "label", "initial", "final"])
    for item in items:
        writer.writerow([item["id"], item["label"], item["initial"], item["final"]])
    (out_dir / "demo_players.csv").write_text(buf.getvalue(), encoding="utf-8")

    specials = {
        d: [f"p{i:03d}" for i in mapping if mapping[i] - i == d]
        for d in (-234, -213, 114, 124)
    }
    print("wrote", out_dir / "demo_players.json")
    print("special displacement ids:", specials)
    return 0


if __name__ == "__main__":
    sys.exit(main())
