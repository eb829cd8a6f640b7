"""Information tables: the ground universe formulas are evaluated against.

A table is a finite, ordered universe of object ids, an ordered list of
attributes, and a total cell function mapping every (object, attribute) pair
to a finite set of value tokens.  An empty cell set encodes a missing value
(the "–" marker in CSV sources).  Cell sets keep first-seen token order so
that derived value domains, and everything built from them, are
deterministic.

Object ids are plain strings.  Cross-table operations keep universes disjoint
by prefixing each id with its table's name ("t1:No.05"), so ids from
different source tables never collide even when the raw numbering overlaps.
"""

import csv
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    DuplicateAttribute,
    DuplicateObject,
    InvariantViolation,
    MalformedRow,
    UnknownAttribute,
)

EQ = "="
NEQ = "!="

#: Relation symbols every attribute supports.  Further symbols may be added
#: per attribute but never removed.
MIN_RELATIONS = frozenset({EQ, NEQ})

ObjectId = str
AttributeName = str
ValueSet = tuple[str, ...]


@dataclass(frozen=True)
class InformationTable:
    """Immutable objects-by-attributes grid with set-valued cells.

    ``domains`` optionally pins the value domain of an attribute to a declared
    token list; when absent the domain is derived from the data.  Declared
    domains must cover every observed token.
    """

    name: str
    universe: tuple[ObjectId, ...]
    attributes: tuple[AttributeName, ...]
    cells: Mapping[tuple[ObjectId, AttributeName], ValueSet]
    relations: Mapping[AttributeName, frozenset[str]]
    domains: Mapping[AttributeName, ValueSet]

    @classmethod
    def create(
        cls,
        name: str,
        universe: Iterable[ObjectId],
        attributes: Iterable[AttributeName],
        cells: Mapping[tuple[ObjectId, AttributeName], Iterable[str]],
        domains: Mapping[AttributeName, Iterable[str]] | None = None,
        extra_relations: Mapping[AttributeName, Iterable[str]] | None = None,
    ) -> "InformationTable":
        """Normalize raw inputs into a validated table.

        ``cells`` may omit pairs; missing pairs become empty cells.  Cell
        values are de-duplicated preserving order.
        """
        universe = tuple(universe)
        attributes = tuple(attributes)
        norm_cells = {}
        for obj in universe:
            for attr in attributes:
                norm_cells[(obj, attr)] = _dedup(cells.get((obj, attr), ()))
        stray = set(cells) - set(norm_cells)
        if stray:
            raise InvariantViolation(
                "cells reference pairs outside universe x attributes",
                pairs=sorted(stray)[:5],
            )
        relations = {}
        for attr in attributes:
            extra = frozenset((extra_relations or {}).get(attr, ()))
            relations[attr] = MIN_RELATIONS | extra
        norm_domains = {
            attr: _dedup(vals) for attr, vals in (domains or {}).items()
        }
        table = cls(name, universe, attributes, norm_cells, relations, norm_domains)
        validate_table(table)
        return table

    def cell(self, obj: ObjectId, attr: AttributeName) -> ValueSet:
        try:
            return self.cells[(obj, attr)]
        except KeyError:
            if attr not in self.attributes:
                raise UnknownAttribute(f"unknown attribute {attr!r}", attribute=attr)
            raise

    def __eq__(self, other) -> bool:
        if not isinstance(other, InformationTable):
            return NotImplemented
        return (
            self.name == other.name
            and self.universe == other.universe
            and self.attributes == other.attributes
            and {k: frozenset(v) for k, v in self.cells.items()}
            == {k: frozenset(v) for k, v in other.cells.items()}
            and dict(self.relations) == dict(other.relations)
            and dict(self.domains) == dict(other.domains)
        )

    __hash__ = None  # type: ignore[assignment]  # mutable mappings inside


@dataclass
class IngestConfig:
    """CSV ingestion knobs.

    ``id_column`` selects the object-id column by header name or 0-based
    index.  A cell equal to ``missing`` (after stripping) is an empty cell; a
    cell containing ``separator`` is split into a multi-value cell.
    ``domains`` declares value-domain overrides recorded on the table.
    """

    table_name: str = "table"
    id_column: str | int = 0
    missing: str = "–"
    separator: str = ";"
    domains: dict[str, tuple[str, ...]] = field(default_factory=dict)


def _dedup(values: Iterable[str]) -> ValueSet:
    seen = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return tuple(seen)


def ingest_csv(source: Iterable[str], config: IngestConfig | None = None) -> InformationTable:
    """Read a header-full CSV stream into an information table.

    The universe is the id column in file order.  Raises DuplicateObject,
    DuplicateAttribute or MalformedRow with 1-based row/column positions.
    """
    config = config or IngestConfig()
    reader: Iterator[list[str]] = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow("missing header row", row=1) from None
    header = [h.strip() for h in header]
    for idx, name in enumerate(header):
        if not name:
            raise MalformedRow("empty header name", row=1, column=idx + 1)
        if name in header[:idx]:
            raise DuplicateAttribute(f"duplicate header {name!r}", row=1, column=idx + 1)

    if isinstance(config.id_column, int):
        if not 0 <= config.id_column < len(header):
            raise MalformedRow(
                f"id column index {config.id_column} out of range", row=1
            )
        id_idx = config.id_column
    else:
        if config.id_column not in header:
            raise UnknownAttribute(
                f"id column {config.id_column!r} not in header",
                attribute=config.id_column,
            )
        id_idx = header.index(config.id_column)

    attributes = tuple(h for i, h in enumerate(header) if i != id_idx)
    universe: list[str] = []
    seen_ids: set[str] = set()
    cells: dict[tuple[str, str], ValueSet] = {}
    for row_no, row in enumerate(reader, start=2):
        if len(row) != len(header):
            raise MalformedRow(
                f"expected {len(header)} fields, got {len(row)}", row=row_no
            )
        obj = row[id_idx].strip()
        if not obj or obj == config.missing:
            raise MalformedRow("empty object id", row=row_no, column=id_idx + 1)
        if obj in seen_ids:
            raise DuplicateObject(f"duplicate object id {obj!r}", row=row_no)
        seen_ids.add(obj)
        universe.append(obj)
        col = 0
        for i, raw in enumerate(row):
            if i == id_idx:
                continue
            cells[(obj, attributes[col])] = _parse_cell(raw, config)
            col += 1

    return InformationTable.create(
        config.table_name, universe, attributes, cells, domains=config.domains
    )


def _parse_cell(raw: str, config: IngestConfig) -> ValueSet:
    text = raw.strip()
    if not text or text == config.missing:
        return ()
    parts = [p.strip() for p in text.split(config.separator)]
    return _dedup(p for p in parts if p and p != config.missing)


def value_domain(table: InformationTable, attr: AttributeName) -> ValueSet:
    """Value domain of ``attr``: the declared override when present, else all
    observed tokens in first-occurrence order."""
    if attr not in table.attributes:
        raise UnknownAttribute(f"unknown attribute {attr!r}", attribute=attr)
    declared = table.domains.get(attr)
    if declared:
        return declared
    return observed_domain(table, attr)


def observed_domain(table: InformationTable, attr: AttributeName) -> ValueSet:
    """Tokens actually present in column ``attr``, in first-occurrence order."""
    if attr not in table.attributes:
        raise UnknownAttribute(f"unknown attribute {attr!r}", attribute=attr)
    out: list[str] = []
    for obj in table.universe:
        for v in table.cells[(obj, attr)]:
            if v not in out:
                out.append(v)
    return tuple(out)


def merge_universes(t1: InformationTable, t2: InformationTable) -> InformationTable:
    """Disjoint union of two tables under id namespacing.

    Object ids get a table-name prefix; equal table names are disambiguated
    positionally so self-merges still produce 2|U| distinct objects.
    Attributes are unioned; cells absent from a source table stay empty.
    """
    p1, p2 = t1.name, t2.name
    if p1 == p2:
        p1, p2 = f"{t1.name}#1", f"{t2.name}#2"
    attributes = list(t1.attributes)
    for a in t2.attributes:
        if a not in attributes:
            attributes.append(a)
    universe = [f"{p1}:{o}" for o in t1.universe] + [f"{p2}:{o}" for o in t2.universe]
    cells: dict[tuple[str, str], ValueSet] = {}
    for src, prefix in ((t1, p1), (t2, p2)):
        for obj in src.universe:
            for attr in src.attributes:
                cells[(f"{prefix}:{obj}", attr)] = src.cells[(obj, attr)]
    extra = {}
    for attr in attributes:
        syms = (t1.relations.get(attr, frozenset()) | t2.relations.get(attr, frozenset())) - MIN_RELATIONS
        if syms:
            extra[attr] = syms
    # A declared domain survives a merge only if some side declared one; it is
    # widened with the other side's effective domain so observed values stay
    # covered.
    domains: dict[str, ValueSet] = {}
    for attr in attributes:
        if attr in t1.domains or attr in t2.domains:
            merged: list[str] = []
            for src in (t1, t2):
                if attr in src.attributes:
                    eff = src.domains.get(attr) or observed_domain(src, attr)
                    merged.extend(v for v in eff if v not in merged)
            domains[attr] = tuple(merged)
    return InformationTable.create(
        f"{t1.name}+{t2.name}", universe, attributes, cells,
        domains=domains, extra_relations=extra,
    )


def validate_table(table: InformationTable) -> list[str]:
    """Check table invariants; raise InvariantViolation on hard failures.

    Returns a list of advisory warnings (currently only the empty-universe
    case, which is tolerated for composability).
    """
    warnings: list[str] = []
    if len(set(table.universe)) != len(table.universe):
        raise InvariantViolation("object ids are not pairwise distinct")
    if len(set(table.attributes)) != len(table.attributes):
        raise InvariantViolation("attribute names are not pairwise distinct")
    if any(not o for o in table.universe):
        raise InvariantViolation("empty object id")
    if any(not a for a in table.attributes):
        raise InvariantViolation("empty attribute name")
    expected = {(o, a) for o in table.universe for a in table.attributes}
    if set(table.cells) != expected:
        raise InvariantViolation("cells is not total over universe x attributes")
    for attr, syms in table.relations.items():
        if not syms >= MIN_RELATIONS:
            raise InvariantViolation(
                f"attribute {attr!r} lacks the minimum relation symbols",
                attribute=attr,
            )
    for attr, declared in table.domains.items():
        if attr not in table.attributes:
            raise InvariantViolation(
                f"declared domain for unknown attribute {attr!r}", attribute=attr
            )
        missing = [v for v in observed_domain(table, attr) if v not in declared]
        if missing:
            raise InvariantViolation(
                f"declared domain for {attr!r} misses observed values",
                attribute=attr,
                values=missing,
            )
    if not table.universe:
        warnings.append("empty universe")
    return warnings
