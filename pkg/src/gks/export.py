"""Deterministic serialization: JSON round-trips for tables and structures,
and DOT emission for rendering structures with graphviz.

Output is byte-deterministic for identical inputs: node lists are emitted in
natural id order, edges in canonical order, and all strings as UTF-8.
Structure JSON deliberately stores the table by name only; deserialization
takes the live table and re-validates every granule and edge against it, so
hand-edited files cannot smuggle in broken invariants.
"""

import json
from dataclasses import dataclass, field

from .errors import GksError, InvariantViolation, SchemaError
from .formula import canonical_text, evaluate, parse_formula
from .granule import ConceptGranule
from .structure import Edge, Gks, node_sort_key, validate_gks
from .table import InformationTable


def dumps(obj) -> str:
    """The one JSON writer: 2-space indent, UTF-8, trailing newline."""
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


# --- structures -------------------------------------------------------------


def gks_json_dict(g: Gks) -> dict:
    nodes = []
    for nid in g.node_ids():
        granule = g.nodes[nid]
        entry = {
            "id": nid,
            "label": granule.label,
            "intension": canonical_text(granule.intension),
            "extension": sorted(granule.extension),
        }
        if g.levels is not None:
            entry["level"] = g.levels[nid]
        nodes.append(entry)
    edges = [
        {"child": e.child, "parent": e.parent, "relation": e.relation}
        for e in g.edges
    ]
    return {"table": g.table.name, "nodes": nodes, "edges": edges}


def gks_to_json(g: Gks) -> str:
    return dumps(gks_json_dict(g))


def gks_from_json(text: str, table: InformationTable) -> Gks:
    """Rebuild a structure against ``table``, re-running every invariant.

    Schema problems (shape, unknown references, unparsable intensions) raise
    SchemaError; semantic breakage (stale extensions, inverted edges, cycles,
    level gaps) raises InvariantViolation.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return gks_from_dict(data, table)


def gks_from_dict(data, table: InformationTable) -> Gks:
    if not isinstance(data, dict):
        raise SchemaError("structure document must be an object")
    for key in ("table", "nodes", "edges"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}", field=key)
    if data["table"] != table.name:
        raise SchemaError(
            f"structure references table {data['table']!r}, got {table.name!r}",
            expected=data["table"],
        )
    if not isinstance(data["nodes"], list) or not isinstance(data["edges"], list):
        raise SchemaError("nodes and edges must be arrays")

    nodes: dict[str, ConceptGranule] = {}
    levels: dict[str, int] = {}
    leveled = 0
    for entry in data["nodes"]:
        if not isinstance(entry, dict):
            raise SchemaError("node entries must be objects")
        try:
            nid = entry["id"]
            label = entry["label"]
            intension_text = entry["intension"]
            extension = entry["extension"]
        except KeyError as exc:
            raise SchemaError(f"node missing field {exc.args[0]!r}") from exc
        if not isinstance(nid, str) or not nid:
            raise SchemaError("node id must be a non-empty string")
        if nid in nodes:
            raise SchemaError(f"duplicate node id {nid!r}", node=nid)
        if not isinstance(extension, list):
            raise SchemaError("extension must be an array", node=nid)
        try:
            intension = parse_formula(intension_text)
        except GksError as exc:
            raise SchemaError(
                f"node {nid}: bad intension: {exc.message}", node=nid
            ) from exc
        try:
            computed = evaluate(intension, table)
        except GksError as exc:
            raise SchemaError(
                f"node {nid}: intension cannot be evaluated: {exc.message}",
                node=nid,
            ) from exc
        if computed != frozenset(extension):
            raise InvariantViolation(
                f"node {nid}: stored extension differs from the formula's "
                "meaning set on this table",
                node=nid,
            )
        nodes[nid] = ConceptGranule(intension, computed, str(label), table)
        if "level" in entry:
            if not isinstance(entry["level"], int):
                raise SchemaError("level must be an integer", node=nid)
            levels[nid] = entry["level"]
            leveled += 1

    if leveled and leveled != len(nodes):
        raise SchemaError("either every node or no node may carry a level")

    edges = []
    for entry in data["edges"]:
        if not isinstance(entry, dict):
            raise SchemaError("edge entries must be objects")
        try:
            child, parent = entry["child"], entry["parent"]
        except KeyError as exc:
            raise SchemaError(f"edge missing field {exc.args[0]!r}") from exc
        if child not in nodes or parent not in nodes:
            raise SchemaError(
                "edge references unknown node id", child=child, parent=parent
            )
        edges.append(Edge(child, parent, entry.get("relation", "partial-order")))

    g = Gks(
        table,
        {nid: nodes[nid] for nid in sorted(nodes, key=node_sort_key)},
        tuple(
            sorted(
                set(edges),
                key=lambda e: (node_sort_key(e.child), node_sort_key(e.parent), e.relation),
            )
        ),
        levels or None,
    )
    validate_gks(g)
    return g


# --- DOT --------------------------------------------------------------------


@dataclass
class DotOptions:
    """Rendering knobs for :func:`gks_to_dot`.

    ``rankdir`` is passed straight to graphviz; the default BT plus
    parent-to-child edge tails draws coarse granules at the bottom with finer
    levels stacked upward.  At most one of ``show_extensions`` /
    ``show_extension_counts`` may be set.
    """

    rankdir: str = "BT"
    show_extensions: bool = False
    show_extension_counts: bool = False
    relation_styles: dict[str, str] = field(
        default_factory=lambda: {"partial-order": "solid", "view-of": "dashed"}
    )

    def __post_init__(self):
        if self.show_extensions and self.show_extension_counts:
            raise ValueError(
                "show_extensions and show_extension_counts are mutually exclusive"
            )


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def gks_to_dot(g: Gks, opts: DotOptions | None = None) -> str:
    """Emit a well-formed DOT digraph; same input, same bytes."""
    opts = opts or DotOptions()
    lines = ["digraph gks {", f"  rankdir={opts.rankdir};"]
    for nid in g.node_ids():
        granule = g.nodes[nid]
        parts = [_dot_escape(granule.label)]
        if opts.show_extensions:
            parts.append(_dot_escape("{" + ", ".join(sorted(granule.extension)) + "}"))
        elif opts.show_extension_counts:
            parts[0] = f"{parts[0]} ({len(granule.extension)})"
        label = "\\n".join(parts)
        lines.append(f'  {nid} [label="{label}"];')
    for e in sorted(
        g.edges,
        key=lambda e: (node_sort_key(e.parent), node_sort_key(e.child), e.relation),
    ):
        style = opts.relation_styles.get(e.relation)
        attrs = f" [style={style}]" if style else ""
        lines.append(f"  {e.parent} -> {e.child}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- tables -----------------------------------------------------------------


def table_json_dict(t: InformationTable) -> dict:
    cells: dict[str, dict[str, list[str]]] = {}
    for obj in t.universe:
        row = {}
        for attr in t.attributes:
            values = t.cells[(obj, attr)]
            if values:
                row[attr] = list(values)
        cells[obj] = row
    doc = {
        "name": t.name,
        "universe": list(t.universe),
        "attributes": list(t.attributes),
        "relations": {a: sorted(t.relations[a]) for a in t.attributes},
        "cells": cells,
    }
    if t.domains:
        doc["domains"] = {a: list(v) for a, v in t.domains.items()}
    return doc


def table_to_json(t: InformationTable) -> str:
    return dumps(table_json_dict(t))


def table_from_json(text: str) -> InformationTable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return table_from_dict(data)


def table_from_dict(data) -> InformationTable:
    if not isinstance(data, dict):
        raise SchemaError("table document must be an object")
    for key in ("name", "universe", "attributes", "cells"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}", field=key)
    universe = data["universe"]
    attributes = data["attributes"]
    if not isinstance(universe, list) or not isinstance(attributes, list):
        raise SchemaError("universe and attributes must be arrays")
    raw_cells = data["cells"]
    if not isinstance(raw_cells, dict):
        raise SchemaError("cells must be an object keyed by object id")
    stray_objects = set(raw_cells) - set(universe)
    if stray_objects:
        raise SchemaError(
            "cells reference objects outside the universe",
            objects=sorted(stray_objects)[:5],
        )
    cells = {}
    for obj, row in raw_cells.items():
        if not isinstance(row, dict):
            raise SchemaError("cell rows must be objects", object=obj)
        for attr, values in row.items():
            if attr not in attributes:
                raise SchemaError(
                    f"cell references unknown attribute {attr!r}", attribute=attr
                )
            if not isinstance(values, list):
                raise SchemaError("cell values must be arrays", object=obj)
            cells[(obj, attr)] = tuple(values)
    extra_relations = {
        a: set(syms) - {"=", "!="}
        for a, syms in data.get("relations", {}).items()
        if a in attributes
    }
    return InformationTable.create(
        str(data["name"]),
        universe,
        attributes,
        cells,
        domains=data.get("domains"),
        extra_relations=extra_relations,
    )
