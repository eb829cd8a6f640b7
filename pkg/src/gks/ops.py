"""Construction, combination and navigation operations on granular knowledge
structures.

Construction starts from attribute-value structures: a root granule covering
every object that has a value for an attribute, over one child granule per
observed value.  Structures over a shared root vocabulary can then be
generalized, unioned, intersected, differenced or multiplied, and navigated
level by level.

Combination operations match children by intension (canonical formula text),
not by extension: two children merge exactly when they are defined by the
same formula.
"""

from typing import Iterable, Sequence

from .errors import (
    AtCoarsestLevel,
    AtFinestLevel,
    EmptyDomain,
    MixedLevels,
    NotBipartite,
    NotFiner,
    NotLeveled,
    NotTwoLevel,
    RootMismatch,
    SharedNotSuper,
    TableMismatch,
    UnknownAttribute,
    UnknownNode,
)
from .formula import EQ, And, Atom, Or, canonical_text
from .granule import ConceptGranule, leq, make_granule, same_intension
from .structure import (
    PARTIAL_ORDER,
    VIEW_OF,
    Edge,
    Gks,
    NodeId,
    StructureDelta,
    make_gks,
    replace,
)
from .table import InformationTable, merge_universes, observed_domain, value_domain


def build_attribute_value_structure(table: InformationTable, attr: str) -> Gks:
    """Two-level structure for one attribute.

    The root granule is the disjunction of (attr = v) over the attribute's
    value domain, labeled with the attribute name; below it sits one child
    per value that actually occurs, labeled with the value.  Declared domain
    overrides widen the root formula without introducing empty children,
    which keeps roots comparable across tables sharing a declared vocabulary.
    """
    if attr not in table.attributes:
        raise UnknownAttribute(f"unknown attribute {attr!r}", attribute=attr)
    if not observed_domain(table, attr):
        raise EmptyDomain(f"no values observed for {attr!r}", attribute=attr)
    domain = value_domain(table, attr)
    root_formula = _disjunction(attr, domain)
    granules = [make_granule(root_formula, table, label=attr)]
    edges = []
    levels = [1]
    for v in domain:
        child = make_granule(Atom(attr, EQ, v), table, label=v)
        if not child.extension:
            continue
        granules.append(child)
        edges.append((len(granules) - 1, 0))
        levels.append(2)
    return make_gks(table, granules, edges, levels)


def _disjunction(attr: str, values: Sequence[str]):
    node = Atom(attr, EQ, values[0])
    for v in values[1:]:
        node = Or(node, Atom(attr, EQ, v))
    return node


def generalize(inputs: Sequence[Gks], shared: Atom, label: str) -> Gks:
    """Put one super-granule above the roots of the given structures.

    ``shared`` is the attribute-value pair all inputs have in common; its
    granule must contain every input root's extension.  Former levels shift
    one step finer.
    """
    if not inputs:
        raise ValueError("generalize needs at least one input structure")
    if not isinstance(shared, Atom):
        raise TypeError("shared must be an atomic formula")
    table = inputs[0].table
    for g in inputs[1:]:
        if g.table != table:
            raise TableMismatch(
                "generalize inputs are bound to different tables",
                left=table.name,
                right=g.table.name,
            )
    for g in inputs:
        if g.levels is None:
            raise NotLeveled("generalize requires leveled inputs")
    super_granule = make_granule(shared, table, label=label)
    granules = [super_granule]
    edges: list[tuple[int, int, str]] = []
    levels = [1]
    for g in inputs:
        index_of = {}
        for nid in g.node_ids():
            index_of[nid] = len(granules)
            granules.append(g.nodes[nid])
            levels.append(g.levels[nid] + 1)
        for root in g.roots():
            root_granule = g.nodes[root]
            if not leq(root_granule, super_granule):
                raise SharedNotSuper(
                    f"root {root_granule.label!r} is not contained in the "
                    f"shared granule {label!r}",
                    root=root_granule.label,
                )
            edges.append((index_of[root], 0, PARTIAL_ORDER))
        for e in g.edges:
            edges.append((index_of[e.child], index_of[e.parent], e.relation))
    return make_gks(table, granules, edges, levels)


def _two_level(g: Gks) -> tuple[NodeId, list[NodeId]]:
    """Split a structure into (root, children) or reject it.

    Accepts exactly one parentless node with every other node hanging off it
    by a single partial-order edge; root-only structures have no children.
    """
    roots = g.roots()
    if len(roots) != 1:
        raise NotTwoLevel(
            f"expected exactly one root, found {len(roots)}", roots=roots
        )
    root = roots[0]
    children = [n for n in g.node_ids() if n != root]
    for c in children:
        c_edges = [e for e in g.edges if e.child == c]
        if len(c_edges) != 1 or c_edges[0].parent != root or c_edges[0].relation != PARTIAL_ORDER:
            raise NotTwoLevel(
                "every non-root node must have a single partial-order edge to the root",
                node=c,
            )
    if any(e.child == root for e in g.edges):
        raise NotTwoLevel("root has a parent", node=root)
    return root, children


def _check_matching_roots(g1: Gks, g2: Gks) -> tuple[NodeId, NodeId]:
    r1, _ = _two_level(g1)
    r2, _ = _two_level(g2)
    if not same_intension(g1.nodes[r1], g2.nodes[r2]):
        raise RootMismatch(
            "root intensions differ",
            left=canonical_text(g1.nodes[r1].intension),
            right=canonical_text(g2.nodes[r2].intension),
        )
    return r1, r2


def union_gks(g1: Gks, g2: Gks) -> tuple[Gks, StructureDelta]:
    """Merge the child sets of two structures with the same root intension.

    The source tables are combined into a namespaced disjoint union and every
    granule is re-evaluated on it; children sharing an intension collapse to
    one node whose extension covers both sides.
    """
    r1, r2 = _check_matching_roots(g1, g2)
    merged_table = merge_universes(g1.table, g2.table)
    root = make_granule(g1.nodes[r1].intension, merged_table, label=g1.nodes[r1].label)
    delta = StructureDelta(merged=[(r1, r2)], provenance={"n1": "both"})
    _, children1 = _two_level(g1)
    _, children2 = _two_level(g2)
    right_by_intension = {
        canonical_text(g2.nodes[c].intension): c for c in children2
    }
    granules = [root]
    edges = []
    levels = [1]
    matched_right = set()

    def add_child(granule: ConceptGranule, origin: str):
        granules.append(make_granule(granule.intension, merged_table, label=granule.label))
        edges.append((len(granules) - 1, 0))
        levels.append(2)
        delta.provenance[f"n{len(granules)}"] = origin

    for c in children1:
        key = canonical_text(g1.nodes[c].intension)
        partner = right_by_intension.get(key)
        if partner is not None:
            matched_right.add(partner)
            delta.merged.append((c, partner))
            add_child(g1.nodes[c], "both")
        else:
            delta.kept.append(("left", c))
            add_child(g1.nodes[c], "left")
    for c in children2:
        if c not in matched_right:
            delta.kept.append(("right", c))
            add_child(g2.nodes[c], "right")
    return make_gks(merged_table, granules, edges, levels), delta


def intersect_gks(g1: Gks, g2: Gks) -> tuple[Gks, StructureDelta]:
    """Keep only the children whose intension occurs in both structures.

    Kept children are re-evaluated on the merged table, so their extensions
    cover both sides' matching objects.
    """
    r1, r2 = _check_matching_roots(g1, g2)
    merged_table = merge_universes(g1.table, g2.table)
    root = make_granule(g1.nodes[r1].intension, merged_table, label=g1.nodes[r1].label)
    delta = StructureDelta(merged=[(r1, r2)], provenance={"n1": "both"})
    _, children1 = _two_level(g1)
    _, children2 = _two_level(g2)
    right_by_intension = {
        canonical_text(g2.nodes[c].intension): c for c in children2
    }
    granules = [root]
    edges = []
    levels = [1]
    matched_right = set()
    for c in children1:
        key = canonical_text(g1.nodes[c].intension)
        partner = right_by_intension.get(key)
        if partner is None:
            delta.dropped.append(("left", c))
            continue
        matched_right.add(partner)
        delta.merged.append((c, partner))
        granules.append(
            make_granule(g1.nodes[c].intension, merged_table, label=g1.nodes[c].label)
        )
        edges.append((len(granules) - 1, 0))
        levels.append(2)
        delta.provenance[f"n{len(granules)}"] = "both"
    for c in children2:
        if c not in matched_right:
            delta.dropped.append(("right", c))
    return make_gks(merged_table, granules, edges, levels), delta


def difference_gks(g1: Gks, g2: Gks) -> tuple[Gks, StructureDelta]:
    """Keep the children of the first structure whose intension is absent
    from the second.  Surviving granules keep their original extensions; the
    result stays bound to the first structure's table."""
    r1, r2 = _check_matching_roots(g1, g2)
    _, children1 = _two_level(g1)
    _, children2 = _two_level(g2)
    right_keys = {canonical_text(g2.nodes[c].intension) for c in children2}
    delta = StructureDelta(kept=[("left", r1)], provenance={"n1": "left"})
    granules = [g1.nodes[r1]]
    edges = []
    levels = [1]
    for c in children1:
        if canonical_text(g1.nodes[c].intension) in right_keys:
            delta.dropped.append(("left", c))
            continue
        delta.kept.append(("left", c))
        granules.append(g1.nodes[c])
        edges.append((len(granules) - 1, 0))
        levels.append(2)
        delta.provenance[f"n{len(granules)}"] = "left"
    delta.dropped.append(("right", r2))
    delta.dropped.extend(("right", c) for c in children2)
    return make_gks(g1.table, granules, edges, levels), delta


def product(
    g1: ConceptGranule,
    children1: Sequence[ConceptGranule],
    g2: ConceptGranule,
    children2: Sequence[ConceptGranule],
    shared: tuple[Atom, str] | None = None,
    keep_empty: bool = False,
) -> Gks:
    """Cross two parent granules' child families by formula conjunction.

    Produces one granule per (child1, child2) pair with the conjoined
    intension; pairs with empty extensions are dropped unless ``keep_empty``.
    With ``shared`` = (atomic formula, label), a common super-granule is added
    above the two parents via :func:`generalize`.
    """
    table = g1.table
    for granule in [g2, *children1, *children2]:
        if granule.table != table:
            raise TableMismatch(
                "product inputs are bound to different tables",
                left=table.name,
                right=granule.table.name,
            )
    for parent, kids in ((g1, children1), (g2, children2)):
        for kid in kids:
            if not leq(kid, parent):
                raise NotFiner(
                    f"child {kid.label!r} is not contained in parent {parent.label!r}",
                    child=kid.label,
                    parent=parent.label,
                )
    granules = [g1, g2]
    levels = [1, 1]
    edges: list[tuple[int, int]] = []
    idx1: list[int] = []
    idx2: list[int] = []
    for parent_idx, kids, indexes in ((0, children1, idx1), (1, children2, idx2)):
        for kid in kids:
            indexes.append(len(granules))
            granules.append(kid)
            levels.append(2)
            edges.append((len(granules) - 1, parent_idx))
    for i, c1 in enumerate(children1):
        for j, c2 in enumerate(children2):
            conj = make_granule(
                And(c1.intension, c2.intension),
                table,
                label=f"{c1.label} & {c2.label}",
            )
            if not conj.extension and not keep_empty:
                continue
            granules.append(conj)
            levels.append(3)
            edges.append((len(granules) - 1, idx1[i]))
            edges.append((len(granules) - 1, idx2[j]))
    base = make_gks(table, granules, edges, levels)
    if shared is None:
        return base
    shared_formula, shared_label = shared
    return generalize([base], shared_formula, shared_label)


def _zoom_level(g: Gks, node_ids: Iterable[NodeId]) -> int:
    if g.levels is None:
        raise NotLeveled("structure has no level assignment")
    ids = list(node_ids)
    if not ids:
        raise MixedLevels("empty node set has no level")
    for nid in ids:
        if nid not in g.nodes:
            raise UnknownNode(f"unknown node {nid!r}", node=nid)
    found = {g.levels[nid] for nid in ids}
    if len(found) > 1:
        raise MixedLevels("nodes span several levels", levels=sorted(found))
    return found.pop()


def zoom_in(g: Gks, node_ids: Iterable[NodeId]) -> frozenset[NodeId]:
    """One level finer: the nodes with an edge to any of the given nodes."""
    ids = set(node_ids)
    level = _zoom_level(g, ids)
    if level == g.max_level():
        raise AtFinestLevel(f"level {level} is the finest", level=level)
    return frozenset(e.child for e in g.edges if e.parent in ids)


def zoom_out(g: Gks, node_ids: Iterable[NodeId]) -> frozenset[NodeId]:
    """One level coarser: the nodes reachable by an edge from the given nodes."""
    ids = set(node_ids)
    level = _zoom_level(g, ids)
    if level == 1:
        raise AtCoarsestLevel("level 1 is the coarsest", level=level)
    return frozenset(e.parent for e in g.edges if e.child in ids)


def switch_view(
    g: Gks, upper: Iterable[NodeId], lower: Iterable[NodeId]
) -> Gks:
    """Re-orient a bipartite region so former children act as parents.

    Every edge inside the region is reversed and its relation tag toggled
    between partial-order and view-of (a view-of edge is a reversed
    partial-order edge, so re-switching restores the original structure).
    The two families swap level assignments.  The region must be
    edge-isolated from the rest of the structure; with no edges between the
    families the structure is returned unchanged.
    """
    upper = set(upper)
    lower = set(lower)
    for nid in upper | lower:
        if nid not in g.nodes:
            raise UnknownNode(f"unknown node {nid!r}", node=nid)
    if upper & lower:
        raise NotBipartite(
            "upper and lower sets overlap", nodes=sorted(upper & lower)
        )
    if not upper or not lower:
        return g
    region = upper | lower
    between: list[Edge] = []
    for e in g.edges:
        touches = e.child in region or e.parent in region
        if not touches:
            continue
        if e.child in lower and e.parent in upper:
            between.append(e)
        else:
            raise NotBipartite(
                "edge violates the lower-to-upper orientation of the region",
                child=e.child,
                parent=e.parent,
            )
    if not between:
        return g
    new_levels = None
    if g.levels is not None:
        upper_levels = {g.levels[n] for n in upper}
        lower_levels = {g.levels[n] for n in lower}
        if len(upper_levels) > 1 or len(lower_levels) > 1:
            raise NotBipartite(
                "each family must sit on a single level",
                upper=sorted(upper_levels),
                lower=sorted(lower_levels),
            )
        ku, kl = upper_levels.pop(), lower_levels.pop()
        new_levels = dict(g.levels)
        new_levels.update({n: kl for n in upper})
        new_levels.update({n: ku for n in lower})
    flipped = {
        PARTIAL_ORDER: VIEW_OF,
        VIEW_OF: PARTIAL_ORDER,
    }
    new_edges = []
    between_set = set(between)
    for e in g.edges:
        if e in between_set:
            new_edges.append(
                Edge(e.parent, e.child, flipped.get(e.relation, e.relation))
            )
        else:
            new_edges.append(e)
    return replace(g, edges=new_edges, levels=new_levels)
