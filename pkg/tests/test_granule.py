import random

import pytest

from gks import (
    canonical_text,
    evaluate,
    granule_json_dict,
    leq,
    make_granule,
    parse_formula,
    same_intension,
)
from gks.errors import TableMismatch, UnknownAttribute

from helpers import random_formula, random_table

VALUES = ("x", "y", "z")


def g(text, table, label=None):
    return make_granule(parse_formula(text), table, label)


def test_make_granule_table1(table1):
    fca = g("(Theory = FCA)", table1)
    assert fca.extension == {"No.97"}
    assert fca.label == "(Theory = FCA)"
    assert g("(Theory = FCA) & (Theory = LR)", table1).extension == frozenset()
    assert g('(Discipline = "Rough Sets")', table1).extension == frozenset(table1.universe)


def test_make_granule_unknown_attribute(table1):
    with pytest.raises(UnknownAttribute):
        g("(Bogus = 1)", table1)


def test_leq_example_ordering(table1):
    fca = g("(Theory = FCA)", table1)
    discipline = g('(Discipline = "Rough Sets")', table1)
    assert leq(fca, discipline) is True
    assert leq(discipline, fca) is False
    assert leq(fca, fca) is True


def test_leq_rejects_cross_table_comparison(table1, corpus):
    with pytest.raises(TableMismatch):
        leq(g("(Theory = FCA)", table1), g("(Theory = FCA)", corpus))


def test_same_intension_is_syntactic(table1, corpus):
    assert same_intension(g("(Theory = LR)", table1), g("(Theory = LR)", corpus))
    assert not same_intension(
        g("(A = x) & (B = y)", table1.__class__.create("t", (), ("A", "B"), {})),
        g("(B = y) & (A = x)", table1.__class__.create("t", (), ("A", "B"), {})),
    )
    assert not same_intension(g("(Theory = LR)", table1), g("(Theory = DR)", table1))


def test_leq_is_a_preorder_and_extension_antisymmetric():
    rng = random.Random(11)
    for _ in range(60):
        t = random_table(rng)
        gs = [
            make_granule(random_formula(rng, t.attributes, VALUES), t)
            for _ in range(3)
        ]
        a, b, c = gs
        assert leq(a, a)
        if leq(a, b) and leq(b, c):
            assert leq(a, c)
        if leq(a, b) and leq(b, a):
            assert a.extension == b.extension


def test_rebuilding_from_own_intension_is_idempotent():
    rng = random.Random(23)
    for _ in range(50):
        t = random_table(rng)
        granule = make_granule(random_formula(rng, t.attributes, VALUES), t)
        rebuilt = make_granule(parse_formula(canonical_text(granule.intension)), t)
        assert rebuilt.extension == granule.extension
        assert rebuilt.extension == evaluate(granule.intension, t)


def test_granule_json_shape(table1):
    doc = granule_json_dict(g("(Theory = LR)", table1, label="LR"))
    assert doc == {
        "label": "LR",
        "intension": "(Theory = LR)",
        "extension": ["No.25", "No.29"],
    }
