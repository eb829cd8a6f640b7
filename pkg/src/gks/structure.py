"""The granular knowledge structure (GKS): labeled concept granules plus
tagged child-to-parent edges, optionally stratified into granularity levels.

Level 1 is the coarsest; every edge steps exactly one level finer to coarser,
so children sit one level above their parents numerically.  "partial-order"
edges additionally guarantee extension inclusion and acyclicity; "view-of"
edges record a reversed reading produced by a view switch and carry no
inclusion guarantee.

Structures are immutable; every operation returns a new value.
"""

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import AmbiguousLabel, InvariantViolation, UnknownNode
from .granule import ConceptGranule, leq
from .table import InformationTable

PARTIAL_ORDER = "partial-order"
VIEW_OF = "view-of"

NodeId = str

_GEN_ID = re.compile(r"n(\d+)")


def node_sort_key(node_id: NodeId):
    """Natural order for generated ids (n1, n2, ..., n10), stable fallback
    for arbitrary ids."""
    m = _GEN_ID.fullmatch(node_id)
    if m:
        return (0, int(m.group(1)), node_id)
    return (1, 0, node_id)


@dataclass(frozen=True)
class Edge:
    child: NodeId
    parent: NodeId
    relation: str = PARTIAL_ORDER


@dataclass(frozen=True)
class Gks:
    table: InformationTable
    nodes: Mapping[NodeId, ConceptGranule]
    edges: tuple[Edge, ...]
    levels: Mapping[NodeId, int] | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gks):
            return NotImplemented
        return (
            self.table == other.table
            and dict(self.nodes) == dict(other.nodes)
            and self.edges == other.edges
            and (dict(self.levels) if self.levels else None)
            == (dict(other.levels) if other.levels else None)
        )

    __hash__ = None  # type: ignore[assignment]

    def node_ids(self) -> list[NodeId]:
        return sorted(self.nodes, key=node_sort_key)

    def parents_of(self, node_id: NodeId) -> set[NodeId]:
        return {e.parent for e in self.edges if e.child == node_id}

    def children_of(self, node_id: NodeId) -> set[NodeId]:
        return {e.child for e in self.edges if e.parent == node_id}

    def roots(self) -> list[NodeId]:
        """Nodes with no parent, in natural id order."""
        with_parent = {e.child for e in self.edges}
        return [n for n in self.node_ids() if n not in with_parent]

    def level_of(self, node_id: NodeId) -> int:
        if self.levels is None:
            raise InvariantViolation("structure is not leveled")
        return self.levels[node_id]

    def level_nodes(self, level: int) -> frozenset[NodeId]:
        if self.levels is None:
            return frozenset()
        return frozenset(n for n, k in self.levels.items() if k == level)

    def max_level(self) -> int:
        if not self.levels:
            return 0
        return max(self.levels.values())


def _sorted_edges(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    return tuple(
        sorted(
            set(edges),
            key=lambda e: (node_sort_key(e.child), node_sort_key(e.parent), e.relation),
        )
    )


def make_gks(
    table: InformationTable,
    granules: Sequence[ConceptGranule],
    edges: Sequence[tuple[int, int] | tuple[int, int, str]],
    levels: Sequence[int] | None = None,
) -> Gks:
    """Assemble and validate a structure from positional parts.

    Granules receive ids n1..nk in the given order; edges are (child index,
    parent index[, relation]) pairs into that order.
    """
    ids = [f"n{i}" for i in range(1, len(granules) + 1)]
    nodes = dict(zip(ids, granules))
    edge_objs = []
    for spec in edges:
        child, parent = spec[0], spec[1]
        relation = spec[2] if len(spec) > 2 else PARTIAL_ORDER
        edge_objs.append(Edge(ids[child], ids[parent], relation))
    level_map = dict(zip(ids, levels)) if levels is not None else None
    g = Gks(table, nodes, _sorted_edges(edge_objs), level_map)
    validate_gks(g)
    return g


def replace(
    g: Gks,
    edges: Iterable[Edge] | None = None,
    levels: Mapping[NodeId, int] | None = None,
) -> Gks:
    """Copy ``g`` with new edges and/or levels, re-validated."""
    out = Gks(
        g.table,
        dict(g.nodes),
        _sorted_edges(edges) if edges is not None else g.edges,
        dict(levels) if levels is not None else (dict(g.levels) if g.levels else None),
    )
    validate_gks(out)
    return out


def validate_gks(g: Gks) -> None:
    """Re-check every structural invariant; raise InvariantViolation."""
    for nid, granule in g.nodes.items():
        if not nid:
            raise InvariantViolation("empty node id")
        if granule.table != g.table:
            raise InvariantViolation(
                f"node {nid} is bound to a different table", node=nid
            )
    for e in g.edges:
        if e.child not in g.nodes or e.parent not in g.nodes:
            raise InvariantViolation(
                "edge references unknown node", child=e.child, parent=e.parent
            )
        if e.relation == PARTIAL_ORDER and not leq(g.nodes[e.child], g.nodes[e.parent]):
            raise InvariantViolation(
                "partial-order edge violates extension inclusion",
                child=e.child,
                parent=e.parent,
            )
    _check_acyclic(g)
    if g.levels is not None:
        if set(g.levels) != set(g.nodes):
            raise InvariantViolation("levels must cover every node exactly")
        for nid, lvl in g.levels.items():
            if not isinstance(lvl, int) or lvl < 1:
                raise InvariantViolation(
                    f"level of {nid} must be a positive integer", node=nid
                )
        for e in g.edges:
            if g.levels[e.child] != g.levels[e.parent] + 1:
                raise InvariantViolation(
                    "edge must connect adjacent levels (child one finer)",
                    child=e.child,
                    parent=e.parent,
                )


def _check_acyclic(g: Gks) -> None:
    # Cycle detection over partial-order edges only (child -> parent walk).
    adjacency: dict[NodeId, list[NodeId]] = {n: [] for n in g.nodes}
    for e in g.edges:
        if e.relation == PARTIAL_ORDER:
            adjacency[e.child].append(e.parent)
    state: dict[NodeId, int] = {}  # 1 = in progress, 2 = done
    for start in g.nodes:
        if state.get(start):
            continue
        stack = [(start, iter(adjacency[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state.get(nxt) == 1:
                    raise InvariantViolation(
                        "partial-order edges form a cycle", node=nxt
                    )
                if not state.get(nxt):
                    state[nxt] = 1
                    stack.append((nxt, iter(adjacency[nxt])))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()


def resolve_nodes(g: Gks, tokens: Iterable[str]) -> list[NodeId]:
    """Map user-facing node references to ids.

    A token matching a node id is taken as-is; otherwise it must match
    exactly one node label.
    """
    by_label: dict[str, list[NodeId]] = {}
    for nid in g.node_ids():
        by_label.setdefault(g.nodes[nid].label, []).append(nid)
    out = []
    for tok in tokens:
        if tok in g.nodes:
            out.append(tok)
            continue
        hits = by_label.get(tok, [])
        if not hits:
            raise UnknownNode(f"no node with id or label {tok!r}", token=tok)
        if len(hits) > 1:
            raise AmbiguousLabel(
                f"label {tok!r} matches several nodes", token=tok, nodes=hits
            )
        out.append(hits[0])
    return out


@dataclass
class StructureDelta:
    """Audit trail for a two-structure combination.

    ``merged`` pairs left/right node ids unified by intension; ``kept`` and
    ``dropped`` list (side, node id) entries for the remaining inputs.  The
    three groups partition both input node sets.  ``provenance`` maps each
    result node id to the side(s) it came from.
    """

    merged: list[tuple[NodeId, NodeId]] = field(default_factory=list)
    kept: list[tuple[str, NodeId]] = field(default_factory=list)
    dropped: list[tuple[str, NodeId]] = field(default_factory=list)
    provenance: dict[NodeId, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "merged": [list(p) for p in self.merged],
            "kept": [list(p) for p in self.kept],
            "dropped": [list(p) for p in self.dropped],
            "provenance": dict(self.provenance),
        }
