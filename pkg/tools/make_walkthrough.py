#!/usr/bin/env python3
"""Author assets/walkthrough.json and its golden expectations.

Reads data/cars.csv, picks the concrete demonstration rows (a few
4-cylinder cars for red, a few 8-cylinder for blue, the low-horsepower
Japanese fleet for the drag-out), writes the script, replays it in-process,
and freezes the final spec into assets/walkthrough_expected.json and
assets/walkthrough_golden_spec.json.

Run from the repo root after regenerating the dataset:
  python tools/make_walkthrough.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from duovis.dataset import load_csv  # noqa: E402
from duovis.replay import run_script  # noqa: E402

DATA = ROOT / "data" / "cars.csv"
ASSETS = ROOT / "assets"

RED = "#d62728"
BLUE = "#1f77b4"


def pick_rows(dataset):
    rows = dataset.rows

    def hp(row):
        return row.cells["Horsepower"]

    # red: three 4-cylinder cars spanning two origins (keeps Origin out of
    # the candidate list so the cylinder mapping ranks first)
    four_cyl = [r for r in rows if r.cells["Cylinders"] == 4 and hp(r) is not None]
    japan4 = [r for r in four_cyl if r.cells["Origin"] == "Japan"]
    europe4 = [r for r in four_cyl if r.cells["Origin"] == "Europe"]
    red = [japan4[0].id, japan4[1].id, europe4[0].id]

    eight_cyl = [r for r in rows if r.cells["Cylinders"] == 8 and hp(r) is not None]
    blue = [r.id for r in eight_cyl[:3]]

    japanese_low_hp = sorted(
        r.id
        for r in rows
        if r.cells["Origin"] == "Japan" and hp(r) is not None and hp(r) <= 90
    )
    lasso_lo = min(hp(rows[i]) for i in japanese_low_hp)
    return red, blue, japanese_low_hp, lasso_lo


def main() -> None:
    dataset = load_csv(DATA)
    red, blue, lasso_rows, lasso_lo = pick_rows(dataset)
    japanese = [r for r in dataset.rows if r.cells["Origin"] == "Japan"]
    finalists = [
        r for r in japanese if r.cells["Horsepower"] and r.cells["Horsepower"] > 100
    ]

    script = {
        "steps": [
            {"do": "set_axis", "channel": "x", "attribute": "Cylinders"},
            {"do": "set_axis", "channel": "y", "attribute": "Miles per Gallon"},
            {"do": "switch", "target": "bar_chart"},
            {
                "do": "demonstrate",
                "demonstration": {
                    "kind": "drag_bar",
                    "category": 4,
                    "target": "extreme_right",
                },
                "expect": {
                    "recommendations": {
                        "division": "Recommended Sorts",
                        "attributes_include": ["Miles per Gallon", "Horsepower"],
                        "top_explanation_contains": "Miles per Gallon",
                    }
                },
            },
            {"do": "accept", "rank": 1, "expect": {"bar_order_last": 4}},
            {"do": "switch", "target": "scatterplot"},
            {"do": "set_axis", "channel": "x", "attribute": "Horsepower"},
            {"do": "set_axis", "channel": "y", "attribute": "Acceleration"},
            {"do": "set_mark", "channel": "color", "attribute": "Cylinders"},
            {"do": "remove", "channel": "color"},
            {
                "do": "demonstrate",
                "demonstration": {
                    "kind": "recolor",
                    "groups": [
                        {
                            "color": RED,
                            "selection": {"rows": red, "origin": "click"},
                        },
                        {
                            "color": BLUE,
                            "selection": {"rows": blue, "origin": "click"},
                        },
                    ],
                },
                "expect": {
                    "recommendations": {
                        "division": "Recommended Encodings",
                        "attributes_include": ["Cylinders", "Displacement"],
                        "within_top": 5,
                    }
                },
            },
            {
                "do": "accept",
                "rank": 1,
                "expect": {
                    "binding": {
                        "channel": "color",
                        "attribute": "Cylinders",
                        "customized": True,
                    }
                },
            },
            {
                "do": "add_filter",
                "attribute": "Origin",
                "expect": {
                    "widget": {
                        "attribute": "Origin",
                        "kind": "checkbox",
                        "value_count": 3,
                    }
                },
            },
            {
                "do": "update_filter",
                "attribute": "Origin",
                "checked": ["Japan"],
                "expect": {"visible_rows": len(japanese)},
            },
            {
                "do": "demonstrate",
                "demonstration": {
                    "kind": "drag_out",
                    "selection": {"rows": lasso_rows, "origin": "rubber-band"},
                },
                "expect": {
                    "recommendations": {
                        "division": "Recommended Filters",
                        "includes_range_on": "Horsepower",
                    }
                },
            },
            {
                "do": "accept",
                "rank": 1,
                "expect": {
                    "widget": {"attribute": "Horsepower", "kind": "range"},
                    "visible_rows": len(finalists) + 2,
                },
            },
            {
                "do": "update_filter",
                "attribute": "Horsepower",
                "range": [lasso_lo, 100],
                "expect": {"visible_rows": len(finalists)},
            },
        ]
    }

    outcome = run_script(script, load_csv(DATA))
    ASSETS.mkdir(exist_ok=True)
    (ASSETS / "walkthrough.json").write_text(
        json.dumps(script, indent=2) + "\n", encoding="utf-8"
    )
    (ASSETS / "walkthrough_expected.json").write_text(
        json.dumps({"spec": outcome.spec}, indent=2) + "\n", encoding="utf-8"
    )
    (ASSETS / "walkthrough_golden_spec.json").write_text(
        json.dumps(outcome.spec, indent=2) + "\n", encoding="utf-8"
    )
    print(f"walkthrough: {outcome.steps_run} steps, final revision {outcome.spec['revision']}")
    print(f"final visible rows: {len(finalists)}")


if __name__ == "__main__":
    main()
