import io
import random

import pytest

from gks import (
    And,
    Atom,
    IngestConfig,
    Not,
    Or,
    canonical_text,
    evaluate,
    ingest_csv,
    parse_formula,
)
from gks.errors import FormulaSyntaxError, UnknownAttribute

from helpers import oracle_extension, random_formula, random_table, restrict

ATTRS = ("A", "B")
VALUES = ("x", "y", "z")


def test_parse_single_atom():
    assert parse_formula("(Theory = FCA)") == Atom("Theory", "=", "FCA")


def test_parse_precedence_not_over_and_over_or():
    f = parse_formula("!(A = x) & ((B = y) | (B = z))")
    assert f == And(
        Not(Atom("A", "=", "x")),
        Or(Atom("B", "=", "y"), Atom("B", "=", "z")),
    )
    # without parentheses, & binds tighter than |
    g = parse_formula("(A = x) | (A = y) & (A = z)")
    assert g == Or(Atom("A", "=", "x"), And(Atom("A", "=", "y"), Atom("A", "=", "z")))


def test_parse_neq_and_quoted_names():
    f = parse_formula('("Application Domain" != "Rough Sets")')
    assert f == Atom("Application Domain", "!=", "Rough Sets")


def test_truncated_input_reports_byte_offset():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("(Theory =")
    assert err.value.detail["offset"] == 9
    assert "name" in err.value.detail["expected"]


def test_unterminated_quote():
    with pytest.raises(FormulaSyntaxError):
        parse_formula('("Theory = x)')


def test_trailing_garbage_rejected():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("(A = x) (B = y)")


def test_canonical_text_examples():
    assert canonical_text(Atom("Theory", "=", "FCA")) == "(Theory = FCA)"
    assert (
        canonical_text(And(Atom("A", "=", "x"), Atom("B", "=", "y")))
        == "((A = x) & (B = y))"
    )
    assert canonical_text(Not(Not(Atom("A", "=", "x")))) == "!!(A = x)"


def test_canonical_text_quotes_when_needed():
    text = canonical_text(Atom("Application Domain", "=", "a|b"))
    assert text == '("Application Domain" = "a|b")'
    assert parse_formula(text) == Atom("Application Domain", "=", "a|b")


def test_parse_render_round_trip_random_asts():
    rng = random.Random(42)
    values = VALUES + ("Rough Sets", 'we"ird', "back\\slash", "–")
    for _ in range(1000):
        f = random_formula(rng, ATTRS + ("Application Domain",), values)
        text = canonical_text(f)
        assert parse_formula(text) == f
        assert canonical_text(parse_formula(text)) == text


def test_evaluate_table1_examples(table1):
    assert evaluate(parse_formula("(Theory = LR)"), table1) == {"No.25", "No.29"}
    assert evaluate(
        parse_formula('(Theory = LR) & ("Application Domain" = BI)'), table1
    ) == {"No.29"}
    assert evaluate(parse_formula('!(Discipline = "Rough Sets")'), table1) == frozenset()


def test_unknown_attribute(table1):
    with pytest.raises(UnknownAttribute):
        evaluate(parse_formula("(Nope = x)"), table1)


def test_neq_is_false_on_missing_cells():
    t = ingest_csv(
        io.StringIO("id,a\no1,x\no2,–\n"), IngestConfig(table_name="t")
    )
    # o2 has no value: it satisfies neither (a = x) nor (a != x) ...
    assert evaluate(parse_formula("(a != x)"), t) == frozenset()
    assert evaluate(parse_formula("(a = x)"), t) == {"o1"}
    # ... while the negation of (a = x) does include o2
    assert evaluate(parse_formula("!(a = x)"), t) == {"o2"}


def test_evaluate_matches_oracle_and_homomorphism_laws():
    rng = random.Random(2024)
    for _ in range(300):
        t = random_table(rng)
        universe = frozenset(t.universe)
        f = random_formula(rng, t.attributes, VALUES)
        g = random_formula(rng, t.attributes, VALUES)
        mf, mg = evaluate(f, t), evaluate(g, t)
        assert mf == oracle_extension(f, t)
        assert evaluate(And(f, g), t) == mf & mg
        assert evaluate(Or(f, g), t) == mf | mg
        assert evaluate(Not(f), t) == universe - mf
        assert mf <= universe


def test_monotone_under_universe_restriction():
    rng = random.Random(99)
    for _ in range(100):
        t = random_table(rng)
        if not t.universe:
            continue
        keep = rng.sample(t.universe, rng.randint(0, len(t.universe)))
        sub = restrict(t, keep)
        f = random_formula(rng, t.attributes, VALUES)
        assert evaluate(f, sub) == evaluate(f, t) & frozenset(sub.universe)
