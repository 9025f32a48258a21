#!/usr/bin/env python3
"""Author the frontend's recorded gesture fixtures.

Each fixture freezes: the server state the gesture happened against (view
model / widgets / dataset schema), the recorded pointer and tool events in
page coordinates, and the golden request the client must produce. Golden
bodies are written out by hand here, from the known geometry, never by
running the client code.

Layout mirrored from frontend/src/layout.ts at 1200x800:
  view rect x 200..930, y 50..780
  attribute chips: [10, 60+40i .. 170, 88+40i]
  shelves (right column 950..1190): row i at y 60+50i, height 36
  filter panel 950..1190 x 260..500; slider track i: x 960..1180,
  y 300+70i (+-6)
Scene mapping: px = view.x0 + x * view_width; py = view.y0 + (1-y) * view_height.

Run from the repo root: python tools/make_gesture_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from duovis.canonical import view_json, widget_json  # noqa: E402
from duovis.dataset import attribute_stats, load_csv  # noqa: E402
from duovis.mvs import add_attribute_filter, set_axis, switch_vis_type  # noqa: E402
from duovis.session import Session  # noqa: E402
from duovis.viewmodel import render  # noqa: E402

OUT = ROOT / "frontend" / "test" / "fixtures"
MINI8 = ROOT / "tests" / "data" / "mini8.csv"

VIEW = {"x0": 200, "y0": 50, "x1": 930, "y1": 780}
W = VIEW["x1"] - VIEW["x0"]
H = VIEW["y1"] - VIEW["y0"]


def px(mark):
    return VIEW["x0"] + mark["x"] * W


def py(mark):
    return VIEW["y0"] + (1 - mark["y"]) * H


def dataset_summary(ds):
    return {
        "id": ds.id,
        "row_count": ds.row_count,
        "attributes": [
            {
                "name": a.name,
                "kind": a.kind,
                "discrete": a.discrete,
                **attribute_stats(ds, a.name),
            }
            for a in ds.attributes
        ],
    }


def scatter_state():
    ds = load_csv(MINI8, dataset_id="mini8")
    session = Session(ds)
    set_axis(session, "x", "Horsepower")
    set_axis(session, "y", "MPG")
    return ds, session


def bar_state():
    ds = load_csv(MINI8, dataset_id="mini8")
    session = Session(ds)
    set_axis(session, "x", "Cylinders")
    set_axis(session, "y", "MPG")
    switch_vis_type(session, "bar_chart")
    return ds, session


def down(x, y, **kw):
    return {"type": "pointerdown", "x": x, "y": y, **kw}


def move(x, y):
    return {"type": "pointermove", "x": x, "y": y}


def up(x, y):
    return {"type": "pointerup", "x": x, "y": y}


def write(name, fixture):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(fixture, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    ds, session = scatter_state()
    view = view_json(render(session.spec, ds))
    marks = {m["source"]: m for m in view["marks"]}
    state = {
        "vis_type": "scatterplot",
        "dataset": dataset_summary(ds),
        "view": view,
        "widgets": [],
    }

    # 1. rubber-band over r0, r1, r2 then drag the selection onto the
    #    filter panel
    write(
        "lasso_drop",
        {
            "name": "lasso_drop",
            "state": state,
            "events": [
                down(330, 230),
                move(195, 45),
                up(195, 45),
                down(px(marks[0]), py(marks[0])),
                move(1000, 380),
                up(1000, 380),
            ],
            "golden": {
                "demonstration": {
                    "kind": "drag_out",
                    "selection": {"rows": [0, 1, 2], "origin": "rubber-band"},
                }
            },
        },
    )

    # 2. recolor: two 4-cylinder rows red, two 8-cylinder rows blue
    write(
        "recolor",
        {
            "name": "recolor",
            "state": state,
            "events": [
                down(250, 145),
                move(195, 45),
                up(195, 45),  # captures r0, r1
                {"type": "swatch", "color": "#d62728"},
                down(840, 680),
                move(935, 785),
                up(935, 785),  # captures r5, r6
                {"type": "swatch", "color": "#1f77b4"},
                {"type": "submit"},
            ],
            "golden": {
                "demonstration": {
                    "kind": "recolor",
                    "groups": [
                        {
                            "color": "#d62728",
                            "selection": {"rows": [0, 1], "origin": "rubber-band"},
                        },
                        {
                            "color": "#1f77b4",
                            "selection": {"rows": [5, 6], "origin": "rubber-band"},
                        },
                    ],
                }
            },
        },
    )

    # 3. resize: enlarge r5 and r6 by dragging 18px outward (size 18/20 =
    #    0.9); the untouched anchor r0 rides along at the default size
    write(
        "resize",
        {
            "name": "resize",
            "state": state,
            "events": [
                down(840, 680),
                move(935, 785),
                up(935, 785),  # select r5, r6
                {"type": "mode", "mode": "resize"},
                down(px(marks[5]), py(marks[5])),
                move(px(marks[5]) + 18, py(marks[5])),
                up(px(marks[5]) + 18, py(marks[5])),
                {"type": "submit"},
            ],
            "golden": {
                "demonstration": {
                    "kind": "resize",
                    "sizes": [
                        {"row": 0, "size": 0.5},
                        {"row": 5, "size": 0.9},
                        {"row": 6, "size": 0.9},
                    ],
                }
            },
        },
    )

    # 4. bar drag: category 4 (tallest) dragged past the rightmost bar
    bar_ds, bar_sess = bar_state()
    bar_view = view_json(render(bar_sess.spec, bar_ds))
    bar_px = {m["source"]: px(m) for m in bar_view["marks"]}
    write(
        "bar_drag",
        {
            "name": "bar_drag",
            "state": {
                "vis_type": "bar_chart",
                "dataset": dataset_summary(bar_ds),
                "view": bar_view,
                "widgets": [],
            },
            "events": [
                down(bar_px[4], 400),
                move(900, 400),
                up(900, 400),
            ],
            "golden": {
                "demonstration": {
                    "kind": "drag_bar",
                    "category": 4,
                    "target": "extreme_right",
                }
            },
        },
    )

    # 5. shelf drop: Horsepower chip (index 2) onto the x shelf
    write(
        "shelf_drop",
        {
            "name": "shelf_drop",
            "state": state,
            "events": [
                down(90, 154),
                move(1070, 78),
                up(1070, 78),
            ],
            "golden": {
                "request": {
                    "method": "POST",
                    "path": "/ops/set_axis",
                    "body": {"channel": "x", "attribute": "Horsepower"},
                }
            },
        },
    )

    # 5b. illegal shelf drop: Origin (categorical) on the x shelf of a
    #     scatterplot is rejected locally, no request
    write(
        "shelf_drop_illegal",
        {
            "name": "shelf_drop_illegal",
            "state": state,
            "events": [
                down(90, 234),  # Origin chip, index 4
                move(1070, 78),
                up(1070, 78),
            ],
            "golden": {"rejected": True},
        },
    )

    # 6. slider drag: full-extent Horsepower filter, hi handle to 100
    ds2, session2 = scatter_state()
    add_attribute_filter(session2, "Horsepower")
    from duovis.widgets import widgets_for_spec

    widgets = [widget_json(w) for w in widgets_for_spec(session2.spec, ds2)]
    view2 = view_json(render(session2.spec, ds2))
    # track x 960..1180 over domain [65, 160]: value 100 sits at
    # 960 + (35/95)*220
    target_x = 960 + (35 / 95) * 220
    write(
        "slider_drag",
        {
            "name": "slider_drag",
            "state": {
                "vis_type": "scatterplot",
                "dataset": dataset_summary(ds2),
                "view": view2,
                "widgets": widgets,
            },
            "events": [
                down(1180, 300),
                move(target_x, 300),
                up(target_x, 300),
            ],
            "golden": {
                "request": {
                    "method": "POST",
                    "path": "/ops/update_filter",
                    "body": {"rule_id": "f1", "range": [65, 100]},
                }
            },
        },
    )


if __name__ == "__main__":
    main()
