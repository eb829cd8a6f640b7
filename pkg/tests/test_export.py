import json
from pathlib import Path

import pytest

from gks import (
    Atom,
    DotOptions,
    build_attribute_value_structure,
    generalize,
    gks_from_json,
    gks_to_dot,
    gks_to_json,
    make_granule,
    make_gks,
    parse_formula,
    table_from_json,
    table_to_json,
)
from gks.errors import InvariantViolation, SchemaError

from dotcheck import check_dot

GOLDEN = Path(__file__).parent / "fixtures" / "golden"


def theory_structure(table1):
    return build_attribute_value_structure(table1, "Theory")


def test_json_round_trip_table1_structure(table1):
    g = theory_structure(table1)
    text = gks_to_json(g)
    assert gks_from_json(text, table1) == g


def test_json_round_trip_preserves_levels_and_relations(fig7, china_rssc):
    from gks import switch_view

    upper = [n for n in fig7.nodes if fig7.levels[n] == 1]
    lower = [n for n in fig7.nodes if fig7.levels[n] == 2]
    switched = switch_view(fig7, upper, lower)
    restored = gks_from_json(gks_to_json(switched), china_rssc)
    assert restored == switched
    assert all(e.relation == "view-of" for e in restored.edges)


def test_json_round_trip_multi_level(corpus):
    theory = build_attribute_value_structure(corpus, "Theory")
    domain = build_attribute_value_structure(corpus, "Application Domain")
    deep = generalize(
        [theory, domain], Atom("Discipline", "=", "Rough Sets"), "Rough Sets"
    )
    assert gks_from_json(gks_to_json(deep), corpus) == deep


def test_from_json_rejects_inverted_edge(table1):
    g = theory_structure(table1)
    doc = json.loads(gks_to_json(g))
    edge = doc["edges"][0]
    edge["child"], edge["parent"] = edge["parent"], edge["child"]
    with pytest.raises(InvariantViolation):
        gks_from_json(json.dumps(doc), table1)


def test_from_json_rejects_unknown_edge_node(table1):
    g = theory_structure(table1)
    doc = json.loads(gks_to_json(g))
    doc["edges"][0]["child"] = "n42"
    with pytest.raises(SchemaError):
        gks_from_json(json.dumps(doc), table1)


def test_from_json_rejects_stale_extension(table1):
    g = theory_structure(table1)
    doc = json.loads(gks_to_json(g))
    doc["nodes"][1]["extension"] = ["No.05", "No.12"]
    with pytest.raises(InvariantViolation):
        gks_from_json(json.dumps(doc), table1)


def test_from_json_rejects_wrong_table(table1, corpus):
    g = theory_structure(table1)
    with pytest.raises(SchemaError):
        gks_from_json(gks_to_json(g), corpus)


def test_from_json_rejects_partial_levels(table1):
    g = theory_structure(table1)
    doc = json.loads(gks_to_json(g))
    del doc["nodes"][0]["level"]
    with pytest.raises(SchemaError):
        gks_from_json(json.dumps(doc), table1)


def test_dot_output_shape_and_determinism(table1):
    g = theory_structure(table1)
    dot = gks_to_dot(g)
    assert dot == gks_to_dot(g)
    check_dot(dot)
    lines = dot.splitlines()
    assert lines[0] == "digraph gks {"
    assert lines[1] == "  rankdir=BT;"
    assert sum(1 for l in lines if "[label=" in l) == 6
    assert sum(1 for l in lines if "->" in l) == 5


def test_dot_matches_golden_file(table1):
    golden = (GOLDEN / "table1_theory.dot").read_text(encoding="utf-8")
    assert gks_to_dot(theory_structure(table1)) == golden


def test_dot_edge_free_structure(table1):
    granule = make_granule(parse_formula("(Theory = LR)"), table1, label="LR")
    g = make_gks(table1, [granule], [], levels=[1])
    dot = gks_to_dot(g)
    check_dot(dot)
    assert "->" not in dot


def test_dot_label_options(table1):
    g = theory_structure(table1)
    with_ext = gks_to_dot(g, DotOptions(show_extensions=True))
    assert "{No.25, No.29}" in with_ext
    check_dot(with_ext)
    with_counts = gks_to_dot(g, DotOptions(show_extension_counts=True))
    assert "LR (2)" in with_counts
    check_dot(with_counts)
    with pytest.raises(ValueError):
        DotOptions(show_extensions=True, show_extension_counts=True)


def test_dot_escapes_labels(table1):
    granule = make_granule(
        parse_formula("(Theory = LR)"), table1, label='weird "label" \\ here'
    )
    g = make_gks(table1, [granule], [], levels=[1])
    dot = gks_to_dot(g)
    check_dot(dot)
    assert '\\"label\\"' in dot


def test_view_of_edges_render_dashed(fig7):
    from gks import switch_view

    upper = [n for n in fig7.nodes if fig7.levels[n] == 1]
    lower = [n for n in fig7.nodes if fig7.levels[n] == 2]
    dot = gks_to_dot(switch_view(fig7, upper, lower))
    assert "[style=dashed]" in dot
    check_dot(dot)


def test_table_json_round_trip(table1, proc2005, china_rssc):
    for table in (table1, proc2005, china_rssc):
        assert table_from_json(table_to_json(table)) == table


def test_table_json_rejects_garbage():
    with pytest.raises(SchemaError):
        table_from_json("{not json")
    with pytest.raises(SchemaError):
        table_from_json('{"name": "t"}')
    with pytest.raises(SchemaError):
        table_from_json(
            '{"name": "t", "universe": ["o"], "attributes": ["a"],'
            ' "cells": {"zzz": {"a": ["v"]}}}'
        )
