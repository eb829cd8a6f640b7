"""Shared test machinery: seeded random models and the independent
row-scan oracle used to cross-check formula evaluation."""

import random

from gks import And, Atom, InformationTable, Not, Or

ATTRS = ("A", "B", "C", "D")
VALUES = ("x", "y", "z")


def random_table(rng: random.Random, max_objects=8, max_attrs=4, max_values=3,
                 name="rand") -> InformationTable:
    n_obj = rng.randint(0, max_objects)
    n_attr = rng.randint(1, max_attrs)
    attrs = ATTRS[:n_attr]
    values = VALUES[:max_values]
    universe = [f"o{i}" for i in range(1, n_obj + 1)]
    cells = {}
    for obj in universe:
        for attr in attrs:
            roll = rng.random()
            if roll < 0.15:
                chosen = ()
            elif roll < 0.85:
                chosen = (rng.choice(values),)
            else:
                chosen = tuple(rng.sample(values, 2))
            cells[(obj, attr)] = chosen
    return InformationTable.create(name, universe, attrs, cells)


def random_formula(rng: random.Random, attrs, values, depth=5):
    if depth <= 0 or rng.random() < 0.35:
        return Atom(rng.choice(attrs), rng.choice(("=", "!=")), rng.choice(values))
    kind = rng.random()
    if kind < 0.4:
        return And(random_formula(rng, attrs, values, depth - 1),
                   random_formula(rng, attrs, values, depth - 1))
    if kind < 0.8:
        return Or(random_formula(rng, attrs, values, depth - 1),
                  random_formula(rng, attrs, values, depth - 1))
    return Not(random_formula(rng, attrs, values, depth - 1))


def row_satisfies(f, table: InformationTable, obj: str) -> bool:
    """Truth of ``f`` on a single row, computed without any set algebra."""
    if isinstance(f, Atom):
        cell = table.cells[(obj, f.attribute)]
        if f.relation == "=":
            return f.value in cell
        return bool(cell) and f.value not in cell
    if isinstance(f, And):
        return row_satisfies(f.left, table, obj) and row_satisfies(f.right, table, obj)
    if isinstance(f, Or):
        return row_satisfies(f.left, table, obj) or row_satisfies(f.right, table, obj)
    if isinstance(f, Not):
        return not row_satisfies(f.operand, table, obj)
    raise TypeError(f)


def oracle_extension(f, table: InformationTable) -> frozenset[str]:
    """Brute-force meaning set: scan every object and test the row."""
    return frozenset(x for x in table.universe if row_satisfies(f, table, x))


def restrict(table: InformationTable, keep) -> InformationTable:
    """Sub-table over a subset of the universe (order preserved)."""
    keep = set(keep)
    universe = [o for o in table.universe if o in keep]
    cells = {
        (o, a): table.cells[(o, a)] for o in universe for a in table.attributes
    }
    return InformationTable.create(
        table.name, universe, table.attributes, cells,
        domains={a: v for a, v in table.domains.items()},
    )
