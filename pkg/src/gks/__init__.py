"""Granular knowledge structures over information tables.

The toolkit evaluates decision-logic formulas against tabular data to form
concept granules (a formula plus the objects satisfying it), organizes
granules into partially ordered, leveled structures, and provides the
operations to construct, combine (generalize / union / intersect /
difference / product) and navigate (zoom, view switch) those structures.
Surfaces: a Python API, a CLI (``gks``), an HTTP/JSON service, and
deterministic JSON/DOT serialization.
"""

from . import errors
from .errors import GksError
from .export import (
    DotOptions,
    gks_from_json,
    gks_to_dot,
    gks_to_json,
    table_from_json,
    table_to_json,
)
from .formula import (
    And,
    Atom,
    Formula,
    Not,
    Or,
    attributes_of,
    canonical_text,
    evaluate,
    parse_formula,
)
from .granule import (
    ConceptGranule,
    granule_json_dict,
    leq,
    make_granule,
    same_intension,
)
from .ops import (
    build_attribute_value_structure,
    difference_gks,
    generalize,
    intersect_gks,
    product,
    switch_view,
    union_gks,
    zoom_in,
    zoom_out,
)
from .structure import (
    PARTIAL_ORDER,
    VIEW_OF,
    Edge,
    Gks,
    StructureDelta,
    make_gks,
    resolve_nodes,
    validate_gks,
)
from .table import (
    EQ,
    NEQ,
    InformationTable,
    IngestConfig,
    ingest_csv,
    merge_universes,
    observed_domain,
    validate_table,
    value_domain,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "ConceptGranule",
    "DotOptions",
    "EQ",
    "Edge",
    "Formula",
    "Gks",
    "GksError",
    "InformationTable",
    "IngestConfig",
    "NEQ",
    "Not",
    "Or",
    "PARTIAL_ORDER",
    "StructureDelta",
    "VIEW_OF",
    "attributes_of",
    "build_attribute_value_structure",
    "canonical_text",
    "difference_gks",
    "errors",
    "evaluate",
    "generalize",
    "gks_from_json",
    "gks_to_dot",
    "gks_to_json",
    "granule_json_dict",
    "ingest_csv",
    "intersect_gks",
    "leq",
    "make_granule",
    "make_gks",
    "merge_universes",
    "observed_domain",
    "parse_formula",
    "product",
    "resolve_nodes",
    "same_intension",
    "switch_view",
    "table_from_json",
    "table_to_json",
    "union_gks",
    "validate_gks",
    "validate_table",
    "value_domain",
    "zoom_in",
    "zoom_out",
]
