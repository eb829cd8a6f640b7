"""Concept granules: a defining formula (intension) paired with the set of
objects satisfying it (extension), bound to the table it was evaluated on.

Granules are always built through :func:`make_granule`, so the extension is
the formula's meaning set by construction, never a free-floating set.
"""

from dataclasses import dataclass

from .errors import TableMismatch
from .formula import Formula, canonical_text, evaluate
from .table import InformationTable


@dataclass(frozen=True)
class ConceptGranule:
    intension: Formula
    extension: frozenset[str]
    label: str
    table: InformationTable

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConceptGranule):
            return NotImplemented
        return (
            self.intension == other.intension
            and self.extension == other.extension
            and self.label == other.label
            and self.table == other.table
        )

    __hash__ = None  # type: ignore[assignment]


def make_granule(
    f: Formula, table: InformationTable, label: str | None = None
) -> ConceptGranule:
    """Build a granule for ``f`` over ``table``; the label defaults to the
    formula's canonical text."""
    extension = evaluate(f, table)
    return ConceptGranule(f, extension, label or canonical_text(f), table)


def leq(g1: ConceptGranule, g2: ConceptGranule) -> bool:
    """Partial order by extension inclusion: g1 is at least as specific as g2.

    Both granules must be bound to the same table; orderings across unrelated
    universes are meaningless and fail loudly.
    """
    if g1.table != g2.table:
        raise TableMismatch(
            "granules are bound to different tables",
            left=g1.table.name,
            right=g2.table.name,
        )
    return g1.extension <= g2.extension


def same_intension(g1: ConceptGranule, g2: ConceptGranule) -> bool:
    """Syntactic intension equality (canonical text), table-independent."""
    return canonical_text(g1.intension) == canonical_text(g2.intension)


def granule_json_dict(g: ConceptGranule) -> dict:
    """JSON-ready rendering: label, canonical intension, sorted extension."""
    return {
        "label": g.label,
        "intension": canonical_text(g.intension),
        "extension": sorted(g.extension),
    }
