import json

import pytest

from duovis.canonical import spec_json
from duovis.errors import NothingToRedo, NothingToUndo
from duovis.history import (
    corollary_state,
    load_snapshot,
    recall_palette,
    redo,
    remember_palette,
    replay_from_initial,
    save_snapshot,
    undo,
)
from duovis.intent import DragOutToFilter, Recolor, Selection
from duovis.mvs import add_attribute_filter, set_axis, set_mark_encoding
from duovis.palettes import ColorPalette, PaletteEntry
from duovis.recommend import accept, generate
from duovis.session import Session
from duovis.visspec import Channel

RED = "#d62728"
BLUE = "#1f77b4"


def core(spec):
    payload = spec_json(spec)
    payload.pop("revision")
    return payload


def test_undo_redo_single_change(scatter_session):
    before = core(scatter_session.spec)
    set_mark_encoding(scatter_session, "color", "Origin")
    after = core(scatter_session.spec)
    assert core(undo(scatter_session)) == before
    assert core(redo(scatter_session)) == after


def test_undo_without_history(mini8):
    session = Session(mini8)
    with pytest.raises(NothingToUndo):
        undo(session)
    with pytest.raises(NothingToRedo):
        redo(session)


def test_revision_stays_monotonic_through_undo(scatter_session):
    revision = scatter_session.spec.revision
    set_mark_encoding(scatter_session, "color", "Origin")
    undo(scatter_session)
    redo(scatter_session)
    assert scatter_session.spec.revision == revision + 3


def test_new_commit_truncates_redo_tail(scatter_session):
    set_mark_encoding(scatter_session, "color", "Origin")
    undo(scatter_session)
    set_mark_encoding(scatter_session, "color", "Cylinders")
    with pytest.raises(NothingToRedo):
        redo(scatter_session)
    assert scatter_session.spec.binding(Channel.COLOR).attribute == "Cylinders"


def test_replay_matches_current(scatter_session):
    set_mark_encoding(scatter_session, "color", "Origin")
    add_attribute_filter(scatter_session, "Horsepower")
    undo(scatter_session)
    assert core(replay_from_initial(scatter_session)) == core(scatter_session.spec)


def test_palette_memory_roundtrip(scatter_session):
    palette = ColorPalette(
        entries=(PaletteEntry(color=RED, value=4.0),),
        customized=True,
    )
    remember_palette(scatter_session, "Cylinders", palette)
    assert recall_palette(scatter_session, "Cylinders") is palette
    assert recall_palette(scatter_session, "MPG") is None


def test_default_palettes_not_remembered(scatter_session):
    set_mark_encoding(scatter_session, "color", "Origin")
    assert recall_palette(scatter_session, "Origin") is None


def test_remember_twice_latest_wins(scatter_session):
    first = ColorPalette(entries=(PaletteEntry(color=RED, value=4.0),), customized=True)
    second = ColorPalette(entries=(PaletteEntry(color=BLUE, value=4.0),), customized=True)
    remember_palette(scatter_session, "Cylinders", first)
    remember_palette(scatter_session, "Cylinders", second)
    assert recall_palette(scatter_session, "Cylinders") is second


def test_customize_unbind_rebind_restores_palette(scatter_session):
    """Knowledge transfer: the demonstrated palette survives rebinding."""
    demo = Recolor(groups=((RED, Selection((0, 1))), (BLUE, Selection((5, 6)))))
    rec_set = generate(scatter_session, demo)
    cylinders = next(
        r for r in rec_set.recommendations if r.candidate.change.attribute == "Cylinders"
    )
    accept(scatter_session, cylinders.rec_id)
    custom = scatter_session.spec.binding(Channel.COLOR).palette

    from duovis.mvs import remove_encoding

    remove_encoding(scatter_session, "color")
    result = set_mark_encoding(scatter_session, "color", "Cylinders")
    assert result.spec.binding(Channel.COLOR).palette == custom


def test_corollary_vbd_filter_creates_widget(scatter_session):
    demo = DragOutToFilter(selection=Selection((0, 1, 2)))
    rec_set = generate(scatter_session, demo)
    target = next(
        r
        for r in rec_set.recommendations
        if r.candidate.change.rule.form == "values"
    )
    accept(scatter_session, target.rec_id)
    updates = corollary_state(scatter_session, target.candidate.change)
    widgets = updates["filter_widgets"]
    assert len(widgets) == 1
    assert widgets[0].kind == "checkbox"
    # excluding Cylinders=4 leaves 6 and 8 checked
    assert widgets[0].values == (4.0, 6.0, 8.0)
    assert widgets[0].checked == (False, True, True)


def test_corollary_pointset_is_chip(scatter_session):
    demo = DragOutToFilter(selection=Selection((0, 1)))
    rec_set = generate(scatter_session, demo)
    points = next(
        r
        for r in rec_set.recommendations
        if r.candidate.change.rule.form == "points"
    )
    accept(scatter_session, points.rec_id)
    updates = corollary_state(scatter_session, points.candidate.change)
    widget = updates["filter_widgets"][0]
    assert widget.kind == "chip"
    assert widget.excluded_count == 2


def test_corollary_vbd_binding_labels_shelf(scatter_session):
    demo = Recolor(groups=((RED, Selection((0, 1))), (BLUE, Selection((5, 6)))))
    rec_set = generate(scatter_session, demo)
    cylinders = next(
        r for r in rec_set.recommendations if r.candidate.change.attribute == "Cylinders"
    )
    accept(scatter_session, cylinders.rec_id)
    updates = corollary_state(scatter_session, cylinders.candidate.change)
    assert updates["encoding_shelves"] == [
        {"channel": "color", "attribute": "Cylinders", "customized": True}
    ]


def test_widgets_pure_function_of_spec(scatter_session, mini8):
    """The same filter rules give the same widgets regardless of the
    paradigm that created them."""
    from duovis.widgets import widgets_for_spec

    demo = DragOutToFilter(selection=Selection((0, 1, 2)))
    rec_set = generate(scatter_session, demo)
    target = next(
        r
        for r in rec_set.recommendations
        if r.candidate.change.rule.form == "values"
    )
    accept(scatter_session, target.rec_id)
    vbd_widgets = widgets_for_spec(scatter_session.spec, mini8)

    other = Session(mini8)
    set_axis(other, "x", "Horsepower")
    set_axis(other, "y", "MPG")
    from duovis.mvs import update_filter_widget

    add_attribute_filter(other, "Cylinders")
    update_filter_widget(other, other.spec.filters[0].id, checked=[6, 8])
    mvs_widgets = widgets_for_spec(other.spec, mini8)
    strip = lambda w: (w.kind, w.attribute, w.values, w.checked, w.excluded_count)
    assert [strip(w) for w in vbd_widgets] == [strip(w) for w in mvs_widgets]


def test_snapshot_roundtrip(tmp_path, scatter_session):
    set_mark_encoding(scatter_session, "color", "Origin")
    add_attribute_filter(scatter_session, "Horsepower")
    undo(scatter_session)
    demo = Recolor(groups=((RED, Selection((0, 1))), (BLUE, Selection((5, 6)))))
    rec_set = generate(scatter_session, demo)
    cylinders = next(
        r for r in rec_set.recommendations if r.candidate.change.attribute == "Cylinders"
    )
    accept(scatter_session, cylinders.rec_id)

    snapshot = save_snapshot(scatter_session)
    path = tmp_path / "session.json"
    path.write_text(json.dumps(snapshot), encoding="utf-8")

    restored = load_snapshot(
        json.loads(path.read_text(encoding="utf-8")),
        dataset=scatter_session.dataset,
    )
    assert spec_json(restored.spec) == spec_json(scatter_session.spec)
    assert restored.log.cursor == scatter_session.log.cursor
    assert len(restored.log.entries) == len(scatter_session.log.entries)
    assert recall_palette(restored, "Cylinders") == recall_palette(
        scatter_session, "Cylinders"
    )


def test_snapshot_reload_from_file_ref(tmp_path):
    from conftest import MINI8_CSV
    from duovis.dataset import load_csv

    session = Session(load_csv(MINI8_CSV))
    set_axis(session, "x", "Horsepower")
    set_axis(session, "y", "MPG")
    snapshot = save_snapshot(session)
    restored = load_snapshot(snapshot)
    assert spec_json(restored.spec) == spec_json(session.spec)
