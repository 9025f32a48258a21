"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines as they pass.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time

import pytest
from fastapi.testclient import TestClient

import generators
import oracles
from conftest import ASSETS, CARS_CSV, MINI8_CSV, REPO

from duovis.canonical import canonical_dumps, spec_bytes, spec_json
from duovis.dataset import load_csv, mini_dataset
from duovis.errors import EngineError
from duovis.history import redo, replay_from_initial, undo
from duovis.intent import (
    DragBar,
    DragOutToFilter,
    Recolor,
    Resize,
    Selection,
    infer_color_candidates,
    infer_filter_candidates,
    infer_size_candidates,
    infer_sort_candidates,
)
from duovis.mvs import (
    add_attribute_filter,
    set_axis,
    set_mark_encoding,
    sort_bars,
    switch_vis_type,
    update_filter_widget,
)
from duovis.recommend import accept, generate, preview, rec_set_json
from duovis.replay import load_script, run_script
from duovis.service import create_app
from duovis.session import Session
from duovis.visspec import Channel, SortDirection

RED = "#d62728"
BLUE = "#1f77b4"


def report(number: int, name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} [{name}]: PASS{suffix}")


# 1. walkthrough replay ------------------------------------------------------


def test_criterion_1_walkthrough_replay():
    start = time.perf_counter()
    result = subprocess.run(
        [
            sys.executable,
            "-m",
            "duovis.cli",
            "--data",
            str(CARS_CSV),
            "--script",
            str(ASSETS / "walkthrough.json"),
            "--assert",
            str(ASSETS / "walkthrough_expected.json"),
        ],
        cwd=REPO,
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    assert result.returncode == 0, result.stderr
    assert elapsed < 5.0, f"walkthrough took {elapsed:.2f}s"

    # the final spec matches the checked-in golden spec byte for byte
    outcome = run_script(
        load_script(ASSETS / "walkthrough.json"), load_csv(CARS_CSV)
    )
    golden = json.loads(
        (ASSETS / "walkthrough_golden_spec.json").read_text(encoding="utf-8")
    )
    assert canonical_dumps(outcome.spec) == canonical_dumps(golden)
    report(1, "walkthrough replay", f"{elapsed:.2f}s, all step assertions held")


# 2. intent-oracle equivalence ----------------------------------------------


def _scatter_spec(mini8):
    session = Session(mini8)
    set_axis(session, "x", "Horsepower")
    set_axis(session, "y", "MPG")
    return session.spec


def _bar_spec(mini8):
    session = Session(mini8)
    set_axis(session, "x", "Cylinders")
    set_axis(session, "y", "MPG")
    switch_vis_type(session, "bar_chart")
    return session.spec


def test_criterion_2_intent_oracle_equivalence():
    start = time.perf_counter()
    mini8 = load_csv(MINI8_CSV, dataset_id="mini8")
    scatter = _scatter_spec(mini8)
    bar = _bar_spec(mini8)
    rows = range(8)
    checked = 0

    # recolor: all 2-group demonstrations over <= 4 points
    for size_a in (1, 2, 3):
        for size_b in range(1, 5 - size_a):
            for group_a in itertools.combinations(rows, size_a):
                rest = [r for r in rows if r not in group_a]
                for group_b in itertools.combinations(rest, size_b):
                    demo = Recolor(
                        groups=(
                            (RED, Selection(group_a)),
                            (BLUE, Selection(group_b)),
                        )
                    )
                    got = {
                        c.change.attribute
                        for c in infer_color_candidates(mini8, scatter, demo)
                    }
                    want = oracles.oracle_color(
                        mini8, scatter, [(RED, group_a), (BLUE, group_b)]
                    )
                    assert got == want, (group_a, group_b, got, want)
                    checked += 1
    assert checked == 1372

    # resize: all ordered pairs with two distinct sizes
    for row_a, row_b in itertools.permutations(rows, 2):
        demo = Resize(sizes=((row_a, 0.3), (row_b, 0.9)))
        got = {
            c.change.attribute
            for c in infer_size_candidates(mini8, scatter, demo)
        }
        want = oracles.oracle_size(mini8, scatter, {row_a: 0.3, row_b: 0.9})
        assert got == want, (row_a, row_b, got, want)
        checked += 1

    # drag-out: all selections of size <= 4
    for size in (1, 2, 3, 4):
        for selection in itertools.combinations(rows, size):
            demo = DragOutToFilter(selection=Selection(selection))
            got = {
                oracles.rule_key(c.change.rule)
                for c in infer_filter_candidates(mini8, scatter, demo)
            }
            want = oracles.oracle_filter(mini8, scatter, selection)
            assert got == want, (selection, got, want)
            checked += 1

    # bar drags: every (category, extreme)
    for category in (4.0, 6.0, 8.0):
        for target in ("extreme_left", "extreme_right"):
            demo = DragBar(category=category, target=target)
            got = {
                (c.change.by_attribute, c.change.direction.value)
                for c in infer_sort_candidates(mini8, bar, demo)
            }
            want = oracles.oracle_sort(mini8, bar, category, target)
            assert got == want, (category, target, got, want)
            checked += 1

    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"sweep took {elapsed:.1f}s"
    report(2, "intent-oracle equivalence", f"{checked} demonstrations, {elapsed:.1f}s")


# 3. paradigm equivalence ----------------------------------------------------


def _equiv_form(spec):
    payload = spec_json(spec)
    payload.pop("revision")
    for binding in payload["bindings"]:
        binding.pop("provenance")
    for rule in payload["filters"]:
        rule.pop("provenance")
    return payload


def _color_case(rng, dataset) -> bool:
    session = generators.scatter_session(rng, dataset)
    demo = generators.random_recolor(rng, session)
    if demo is None:
        return False
    try:
        rec_set = generate(session, demo)
    except EngineError:
        return False
    if not rec_set.recommendations:
        return False
    rec = rng.choice(rec_set.recommendations)
    accept(session, rec.rec_id)
    via_vbd = _equiv_form(session.spec)
    undo(session)
    set_mark_encoding(session, "color", rec.candidate.change.attribute)
    assert _equiv_form(session.spec) == via_vbd, "color paradigm mismatch"
    return True


def _size_case(rng, dataset) -> bool:
    session = generators.scatter_session(rng, dataset)
    demo = generators.random_resize(rng, session)
    if demo is None:
        return False
    try:
        rec_set = generate(session, demo)
    except EngineError:
        return False
    if not rec_set.recommendations:
        return False
    rec = rng.choice(rec_set.recommendations)
    accept(session, rec.rec_id)
    via_vbd = _equiv_form(session.spec)
    undo(session)
    set_mark_encoding(session, "size", rec.candidate.change.attribute)
    assert _equiv_form(session.spec) == via_vbd, "size paradigm mismatch"
    return True


def _value_aligned_selection(rng, session):
    """Select every visible row sharing one category value, so a value
    exclusion can hit the selection exactly."""
    dataset = session.dataset
    from duovis.visspec import visible_mark_rows

    visible = visible_mark_rows(session.spec, dataset)
    cats = [a for a in dataset.attributes if a.is_categorical or a.discrete]
    if not cats or not visible:
        return None
    attr = rng.choice(cats)
    value = rng.choice(list(attr.categories or ()))
    rows = [r for r in visible if dataset.value(r, attr.name) == value]
    if not 1 <= len(rows) <= 6 or len(rows) == len(visible):
        return None
    return DragOutToFilter(selection=Selection(tuple(rows)))


def _filter_case(rng, dataset) -> bool:
    session = generators.scatter_session(rng, dataset)
    demo = _value_aligned_selection(rng, session)
    if demo is None:
        demo = generators.random_dragout(rng, session)
    if demo is None:
        return False
    try:
        rec_set = generate(session, demo)
    except EngineError:
        return False
    value_recs = [
        r
        for r in rec_set.recommendations
        if getattr(r.candidate.change, "rule", None) is not None
        and r.candidate.change.rule.form == "values"
    ]
    if not value_recs:
        return False
    rec = rng.choice(value_recs)
    rule = rec.candidate.change.rule
    accept(session, rec.rec_id)
    via_vbd = _equiv_form(session.spec)
    undo(session)
    result = add_attribute_filter(session, rule.attribute)
    update_filter_widget(
        session, result.widget.rule_id, checked=list(rule.included)
    )
    assert _equiv_form(session.spec) == via_vbd, "filter paradigm mismatch"
    return True


def _sort_case(rng, dataset) -> bool:
    session = generators.bar_session_for(rng, dataset)
    if session is None:
        return False
    y_attr = session.spec.bound_attribute(Channel.Y)
    demo = generators.random_dragbar(rng, session)
    if demo is None:
        return False
    try:
        rec_set = generate(session, demo)
    except EngineError:
        return False
    y_recs = [
        r
        for r in rec_set.recommendations
        if r.candidate.change.by_attribute == y_attr
    ]
    if not y_recs:
        return False
    rec = rng.choice(y_recs)
    accept(session, rec.rec_id)
    via_vbd = _equiv_form(session.spec)
    undo(session)
    sort_bars(session, rec.candidate.change.direction)
    assert _equiv_form(session.spec) == via_vbd, "sort paradigm mismatch"
    return True


def test_criterion_3_paradigm_equivalence():
    rng = random.Random(31415)
    mini8 = load_csv(MINI8_CSV, dataset_id="mini8")
    cases = {"color": 0, "size": 0, "filter": 0, "sort": 0}
    builders = {
        "color": _color_case,
        "size": _size_case,
        "filter": _filter_case,
        "sort": _sort_case,
    }
    kinds = itertools.cycle(builders)
    total = 0
    attempts = 0
    while total < 1000:
        kind = next(kinds)
        attempts += 1
        assert attempts < 20000, "case generation stalled"
        dataset = mini8 if rng.random() < 0.7 else generators.random_dataset(rng)
        if builders[kind](rng, dataset):
            cases[kind] += 1
            total += 1
    assert total == 1000
    report(
        3,
        "paradigm equivalence",
        f"1000 cases, 0 mismatches ({', '.join(f'{k}={v}' for k, v in cases.items())})",
    )


# 4. feedforward purity and determinism --------------------------------------


def test_criterion_4_feedforward_purity_and_determinism():
    rng = random.Random(27182)
    mini8 = load_csv(MINI8_CSV, dataset_id="mini8")
    previews = 0
    determinism_checks = 0
    while previews < 1000:
        dataset = mini8 if rng.random() < 0.7 else generators.random_dataset(rng)
        if rng.random() < 0.3:
            session = generators.bar_session_for(rng, dataset)
            if session is None:
                continue
            demo = generators.random_dragbar(rng, session)
        else:
            session = generators.scatter_session(rng, dataset)
            demo = rng.choice(
                [
                    generators.random_recolor,
                    generators.random_resize,
                    generators.random_dragout,
                ]
            )(rng, session)
        if demo is None:
            continue
        try:
            rec_set = generate(session, demo)
        except EngineError:
            continue
        first = rec_set_json(rec_set, full=True)
        again = rec_set_json(generate(session, demo), full=True)
        assert first == again, "generate() is not deterministic"
        determinism_checks += 1
        for rec in session.pending.recommendations:
            before = spec_bytes(session.spec)
            preview(session, rec.rec_id)
            assert spec_bytes(session.spec) == before, "preview mutated the spec"
            previews += 1
            if previews >= 1000:
                break
    report(
        4,
        "feedforward purity and determinism",
        f"{previews} previews bit-identical, {determinism_checks} regenerations identical",
    )


# 5. undo/replay -------------------------------------------------------------


def _minus_revision(spec):
    payload = spec_json(spec)
    payload.pop("revision")
    return payload


def test_criterion_5_undo_replay():
    rng = random.Random(16180)
    mini8 = load_csv(MINI8_CSV, dataset_id="mini8")
    for case in range(500):
        session = Session(mini8)
        guard = 0
        while len(session.log.entries) < 20:
            guard += 1
            assert guard < 2000, f"case {case}: command stream stalled"
            generators.random_commit_action(rng, session)
        final = _minus_revision(session.spec)

        replayed = replay_from_initial(session)
        assert _minus_revision(replayed) == final, f"case {case}: replay mismatch"

        k = rng.randint(1, 20)
        for _ in range(k):
            undo(session)
        for _ in range(k):
            redo(session)
        assert _minus_revision(session.spec) == final, (
            f"case {case}: undo x{k} / redo x{k} did not restore the spec"
        )
    report(5, "undo/replay", "500 sequences x 20 commits, 0 violations")


# 6. engine/API equivalence --------------------------------------------------


def _run_script_http(client, script, create_body):
    sid = client.post("/sessions", json=create_body).json()["session_id"]
    for step in script["steps"]:
        verb = step["do"]
        if verb in ("set_axis", "set_mark"):
            response = client.post(
                f"/sessions/{sid}/ops/{verb}",
                json={"channel": step["channel"], "attribute": step["attribute"]},
            )
        elif verb == "switch":
            response = client.post(
                f"/sessions/{sid}/ops/switch", json={"target": step["target"]}
            )
        elif verb == "add_filter":
            response = client.post(
                f"/sessions/{sid}/ops/filter", json={"attribute": step["attribute"]}
            )
        elif verb == "update_filter":
            widgets = client.get(f"/sessions/{sid}/filters").json()
            rule_id = step.get("rule")
            if rule_id is None:
                rule_id = next(
                    w["rule_id"]
                    for w in widgets
                    if w["attribute"] == step["attribute"]
                )
            body = {"rule_id": rule_id}
            if "range" in step:
                body["range"] = step["range"]
            else:
                body["checked"] = step["checked"]
            response = client.post(f"/sessions/{sid}/ops/update_filter", json=body)
        elif verb == "sort":
            response = client.post(
                f"/sessions/{sid}/ops/sort", json={"direction": step["direction"]}
            )
        elif verb == "remove":
            response = client.post(
                f"/sessions/{sid}/ops/remove", json={"channel": step["channel"]}
            )
        elif verb in ("undo", "redo"):
            response = client.post(f"/sessions/{sid}/ops/{verb}", json={})
        elif verb == "demonstrate":
            response = client.post(
                f"/sessions/{sid}/demonstrations", json=step["demonstration"]
            )
        elif verb == "accept":
            listing = client.get(
                f"/sessions/{sid}/recommendations", params={"full": "true"}
            ).json()
            flat = [
                rec
                for division in listing["divisions"]
                for rec in division["recommendations"]
            ]
            rid = flat[step["rank"] - 1]["rec_id"]
            response = client.post(f"/sessions/{sid}/recommendations/{rid}/accept")
        elif verb == "reject":
            response = client.post(f"/sessions/{sid}/reject_all")
        else:
            raise AssertionError(f"unmapped verb {verb}")
        assert response.status_code == 200, (verb, response.text)
    return (
        client.get(f"/sessions/{sid}/spec").text,
        client.get(f"/sessions/{sid}/view").text,
    )


def test_criterion_6_engine_api_equivalence():
    app = create_app(data_dir=str(REPO / "data"))
    scripts = [
        (ASSETS / "walkthrough.json", CARS_CSV, {"dataset": "cars.csv"}),
        (
            ASSETS / "mini8_tour.json",
            MINI8_CSV,
            {"csv": MINI8_CSV.read_text(encoding="utf-8")},
        ),
    ]
    with TestClient(app) as client:
        for script_path, data_path, create_body in scripts:
            script = load_script(script_path)
            outcome = run_script(script, load_csv(data_path))
            http_spec, http_view = _run_script_http(client, script, create_body)
            assert http_spec == canonical_dumps(outcome.spec), script_path.name
            assert http_view == canonical_dumps(outcome.view), script_path.name
    report(6, "engine/API equivalence", "2 scripts byte-identical over HTTP")


# 7. desk-scale responsiveness ------------------------------------------------


def _bench_dataset():
    rng = random.Random(7)
    n = 10_000
    cols = {}
    for i in range(6):
        cols[f"q{i}"] = [round(rng.uniform(0, 1000), 3) for _ in range(n)]
    for i in range(3):
        cols[f"d{i}"] = [rng.choice([2, 4, 6, 8]) for _ in range(n)]
    for i in range(3):
        cols[f"c{i}"] = [rng.choice("ABCDEFGH") for _ in range(n)]
    return mini_dataset(cols, dataset_id="bench"), cols


def _median_ms(session, demo, runs=5):
    times = []
    for _ in range(runs):
        start = time.perf_counter()
        generate(session, demo)
        times.append((time.perf_counter() - start) * 1000)
    times.sort()
    return times[len(times) // 2]


def test_criterion_7_desk_scale_responsiveness():
    dataset, cols = _bench_dataset()
    assert dataset.row_count == 10_000 and len(dataset.attributes) == 12

    session = Session(dataset)
    set_axis(session, "x", "q0")
    set_axis(session, "y", "q1")
    group_a = [i for i in range(dataset.row_count) if cols["d0"][i] == 2][:5]
    group_b = [i for i in range(dataset.row_count) if cols["d0"][i] == 8][:5]
    demos = {
        "recolor": Recolor(
            groups=(
                (RED, Selection(tuple(group_a))),
                (BLUE, Selection(tuple(group_b))),
            )
        ),
        "drag_out": DragOutToFilter(
            selection=Selection(tuple(range(0, 5000, 100)))
        ),
        "resize": Resize(
            sizes=(
                (group_a[0], 0.2),
                (group_a[1], 0.5),
                (group_b[0], 0.9),
                (group_b[1], 0.9),
            )
        ),
    }
    medians = {}
    for name, demo in demos.items():
        medians[name] = _median_ms(session, demo)

    bars = Session(dataset)
    set_axis(bars, "x", "d0")
    set_axis(bars, "y", "q1")
    switch_vis_type(bars, "bar_chart")
    medians["drag_bar"] = _median_ms(
        bars, DragBar(category=2.0, target="extreme_right")
    )

    for name, median in medians.items():
        assert median < 200.0, f"{name} median {median:.1f} ms exceeds 200 ms"
    detail = ", ".join(f"{k}={v:.1f}ms" for k, v in medians.items())
    report(7, "desk-scale responsiveness", detail)
