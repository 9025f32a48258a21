import pytest

from duovis.canonical import spec_json
from duovis.errors import (
    ChannelUnbound,
    IllegalChange,
    OutOfDomain,
    RequiredChannel,
    UnknownAttribute,
    UnknownRule,
    WrongVisType,
)
from duovis.mvs import (
    add_attribute_filter,
    remove_encoding,
    set_axis,
    set_mark_encoding,
    sort_bars,
    switch_vis_type,
    update_filter_widget,
)
from duovis.session import Session
from duovis.viewmodel import render
from duovis.visspec import Channel, VisType, visible_rows
from duovis.widgets import widgets_for_spec


def test_axes_then_bar_chart(mini8):
    session = Session(mini8)
    set_axis(session, "x", "Cylinders")
    set_axis(session, "y", "MPG")
    result = switch_vis_type(session, "bar_chart")
    assert result.spec.vis_type == VisType.BAR_CHART
    assert result.view is not None and len(result.view.marks) == 3


def test_set_axis_idempotent_but_revision_advances(scatter_session):
    before = scatter_session.spec.revision
    result = set_axis(scatter_session, "x", "Horsepower")
    assert result.spec.revision == before + 1
    assert result.spec.bound_attribute(Channel.X) == "Horsepower"


def test_set_axis_categorical_on_scatter_is_illegal(mini8):
    session = Session(mini8)
    with pytest.raises(IllegalChange):
        set_axis(session, "x", "Origin")


def test_set_axis_unknown_attribute(mini8):
    session = Session(mini8)
    with pytest.raises(UnknownAttribute):
        set_axis(session, "x", "Torque")


def test_mvs_ops_commit_synchronously_with_view(scatter_session):
    result = set_mark_encoding(scatter_session, "color", "Cylinders")
    assert result.view is not None
    assert scatter_session.pending is None  # no recommendation generated
    colors = {m.source: m.color for m in result.view.marks}
    assert len(set(colors.values())) == 3


def test_set_mark_constant_size(mini8):
    from duovis.dataset import mini_dataset

    ds = mini_dataset({"x": [1, 2, 3], "y": [4, 5, 6], "k": [7, 7, 7]})
    session = Session(ds)
    set_axis(session, "x", "x")
    set_axis(session, "y", "y")
    result = set_mark_encoding(session, "size", "k")
    assert len({m.size for m in result.view.marks}) == 1


def test_switch_to_same_type_noop_besides_revision(scatter_session):
    before = spec_json(scatter_session.spec)
    result = switch_vis_type(scatter_session, "scatterplot")
    after = spec_json(result.spec)
    before.pop("revision"), after.pop("revision")
    assert before == after
    assert result.dropped == ()


def test_switch_drops_size_and_reports(mini8):
    session = Session(mini8)
    set_axis(session, "x", "Cylinders")
    set_axis(session, "y", "MPG")
    set_mark_encoding(session, "size", "Horsepower")
    result = switch_vis_type(session, "bar_chart")
    assert "size" in result.dropped
    assert result.spec.binding(Channel.SIZE) is None


def test_switch_bar_to_scatter_keeps_discrete_x(bar_session):
    result = switch_vis_type(bar_session, "scatterplot")
    assert result.spec.bound_attribute(Channel.X) == "Cylinders"
    assert result.dropped == ()


def test_add_attribute_filter_checkbox_all_checked(scatter_session):
    result = add_attribute_filter(scatter_session, "Origin")
    widget = result.widget
    assert widget.kind == "checkbox"
    assert widget.values == ("J", "E", "U")
    assert widget.checked == (True, True, True)
    assert widget.excluded_count == 0


def test_add_attribute_filter_range_full_extent(scatter_session):
    result = add_attribute_filter(scatter_session, "Horsepower")
    widget = result.widget
    assert widget.kind == "range"
    assert widget.domain == (65.0, 160.0)
    assert widget.selected == (65.0, 160.0)
    assert widget.mode == "keep"
    assert widget.excluded_count == 0


def test_add_attribute_filter_idempotent(scatter_session):
    first = add_attribute_filter(scatter_session, "Origin")
    revision = scatter_session.spec.revision
    second = add_attribute_filter(scatter_session, "Origin")
    assert second.change is None
    assert scatter_session.spec.revision == revision  # no second commit
    assert second.widget.rule_id == first.widget.rule_id
    assert len(scatter_session.spec.filters) == 1


def test_update_range_widget(scatter_session):
    result = add_attribute_filter(scatter_session, "Horsepower")
    rule_id = result.widget.rule_id
    updated = update_filter_widget(scatter_session, rule_id, selected=(100, 160))
    assert visible_rows(updated.spec, scatter_session.dataset) == [3, 4, 5, 6, 7]
    assert updated.widget.selected == (100.0, 160.0)


def test_update_checkbox_widget(scatter_session):
    result = add_attribute_filter(scatter_session, "Origin")
    updated = update_filter_widget(
        scatter_session, result.widget.rule_id, checked=["J"]
    )
    assert visible_rows(updated.spec, scatter_session.dataset) == [0, 1]
    assert updated.widget.checked == (True, False, False)


def test_update_full_domain_excludes_nothing(scatter_session):
    result = add_attribute_filter(scatter_session, "Horsepower")
    updated = update_filter_widget(
        scatter_session, result.widget.rule_id, selected=(65, 160)
    )
    assert updated.widget.excluded_count == 0


def test_update_out_of_domain(scatter_session):
    result = add_attribute_filter(scatter_session, "Horsepower")
    with pytest.raises(OutOfDomain):
        update_filter_widget(scatter_session, result.widget.rule_id, selected=(0, 500))
    with pytest.raises(UnknownRule):
        update_filter_widget(scatter_session, "f99", selected=(65, 160))


def test_update_checkbox_value_outside_domain(scatter_session):
    result = add_attribute_filter(scatter_session, "Origin")
    with pytest.raises(OutOfDomain):
        update_filter_widget(
            scatter_session, result.widget.rule_id, checked=["J", "Mars"]
        )


def test_sort_bars_ascending(bar_session):
    result = sort_bars(bar_session, "ascending")
    assert result.view.bar_order == (8.0, 6.0, 4.0)


def test_sort_bars_none_restores_category_order(bar_session):
    sort_bars(bar_session, "ascending")
    result = sort_bars(bar_session, "none")
    assert result.view.bar_order == (4.0, 6.0, 8.0)


def test_sort_on_scatter_raises(scatter_session):
    with pytest.raises(WrongVisType):
        sort_bars(scatter_session, "ascending")


def test_remove_color_reverts_view(scatter_session):
    plain = render(scatter_session.spec, scatter_session.dataset)
    set_mark_encoding(scatter_session, "color", "Cylinders")
    result = remove_encoding(scatter_session, "color")
    reverted = render(result.spec, scatter_session.dataset)
    assert [m.color for m in reverted.marks] == [m.color for m in plain.marks]


def test_remove_unbound_channel(scatter_session):
    with pytest.raises(ChannelUnbound):
        remove_encoding(scatter_session, "size")


def test_remove_required_axis(scatter_session):
    with pytest.raises(RequiredChannel):
        remove_encoding(scatter_session, "x")


def test_remove_then_readd_restores_spec(scatter_session):
    set_mark_encoding(scatter_session, "color", "Origin")
    before = spec_json(scatter_session.spec)
    remove_encoding(scatter_session, "color")
    set_mark_encoding(scatter_session, "color", "Origin")
    after = spec_json(scatter_session.spec)
    before.pop("revision"), after.pop("revision")
    assert before == after


def test_widget_rule_bijection(scatter_session):
    add_attribute_filter(scatter_session, "Origin")
    add_attribute_filter(scatter_session, "Horsepower")
    widgets = widgets_for_spec(scatter_session.spec, scatter_session.dataset)
    rule_ids = [r.id for r in scatter_session.spec.filters]
    assert [w.rule_id for w in widgets] == rule_ids


def test_counts_honest_per_rule(scatter_session):
    add_attribute_filter(scatter_session, "Origin")
    rule_id = scatter_session.spec.filters[0].id
    updated = update_filter_widget(scatter_session, rule_id, checked=["U"])
    # rows failing the rule alone: origins J, J, E, E -> 4
    assert updated.widget.excluded_count == 4
    assert updated.widget.visible_count == 4
