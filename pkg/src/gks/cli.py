"""Command-line front end: ingest tables, evaluate formulas, build and
combine structures, export DOT/JSON, and launch the HTTP service.

Structures travel between invocations as JSON files.  A structure file names
its table rather than embedding it, so commands that read structures take
``--tables`` with the table files (CSV or JSON) needed to re-validate them.
All outputs are byte-deterministic for identical inputs.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import export
from .errors import GksError, NotAtomic, SchemaError
from .formula import Atom, evaluate, parse_formula
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
from .structure import Gks, node_sort_key, resolve_nodes
from .table import InformationTable, IngestConfig, ingest_csv


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8-sig")


def _write_out(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ingest_config(args, name: str) -> IngestConfig:
    domains = {}
    if getattr(args, "domains", None):
        raw = json.loads(_read_text(args.domains))
        if not isinstance(raw, dict):
            raise SchemaError("domains file must map attributes to value arrays")
        domains = {a: tuple(v) for a, v in raw.items()}
    id_column: str | int = getattr(args, "id_col", 0)
    if isinstance(id_column, str) and id_column.isdigit():
        id_column = int(id_column)
    return IngestConfig(
        table_name=name,
        id_column=id_column,
        missing=args.missing,
        separator=args.sep,
        domains=domains,
    )


def _load_table(path: str, args) -> InformationTable:
    text = _read_text(path)
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return export.table_from_json(text)
    default = Path(path).stem if path != "-" else "table"
    name = getattr(args, "name", None) or default
    return ingest_csv(text.splitlines(), _ingest_config(args, name))


def _load_table_registry(paths, args) -> dict[str, InformationTable]:
    registry = {}
    for p in paths or []:
        table = _load_table(p, args)
        registry[table.name] = table
    return registry


def _load_structure(path: str, registry: dict[str, InformationTable]) -> Gks:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    table_name = doc.get("table") if isinstance(doc, dict) else None
    table = registry.get(table_name)
    if table is None:
        raise SchemaError(
            f"{path} references table {table_name!r}; pass its file via --tables",
            table=table_name,
        )
    return export.gks_from_dict(doc, table)


def _dot_options(args) -> export.DotOptions:
    return export.DotOptions(
        rankdir=args.rankdir,
        show_extensions=args.extensions,
        show_extension_counts=args.counts,
    )


def _emit_structure(g: Gks, args) -> None:
    if args.format == "dot":
        _write_out(export.gks_to_dot(g, _dot_options(args)), args.output)
    else:
        _write_out(export.gks_to_json(g), args.output)


def _split_tokens(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _parse_atom(text: str) -> Atom:
    node = parse_formula(text)
    if not isinstance(node, Atom):
        raise NotAtomic("a single attribute-value atom is required", formula=text)
    return node


def _add_ingest_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--name", help="table name (default: file stem)")
    p.add_argument("--id-col", default=0, help="id column name or 0-based index")
    p.add_argument("--missing", default="–", help="missing-value token")
    p.add_argument("--sep", default=";", help="intra-cell value separator")
    p.add_argument("--domains", help="JSON file declaring value-domain overrides")


def _add_dot_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rankdir", default="BT")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--extensions", action="store_true",
                       help="node labels include the full extension")
    group.add_argument("--counts", action="store_true",
                       help="node labels include the extension size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gks", description="granular knowledge structure toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read a CSV file into table JSON")
    p.add_argument("table", help="CSV path, or - for stdin")
    _add_ingest_flags(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("eval", help="evaluate a formula against a table")
    p.add_argument("--table", required=True)
    p.add_argument("--formula", required=True)
    _add_ingest_flags(p)

    p = sub.add_parser("build", help="build an attribute-value structure")
    p.add_argument("--table", required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    _add_ingest_flags(p)
    _add_dot_flags(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("op", help="combine structures")
    p.add_argument("opname", choices=["union", "intersect", "diff", "product", "generalize"])
    p.add_argument("inputs", nargs="+", help="structure JSON files")
    p.add_argument("--tables", nargs="+", default=[],
                   help="table files (CSV or JSON) the structures reference")
    p.add_argument("--shared", help="atomic formula for generalize/product")
    p.add_argument("--label", help="label of the shared super-granule")
    p.add_argument("--left-children", help="comma-separated ids/labels (product)")
    p.add_argument("--right-children", help="comma-separated ids/labels (product)")
    p.add_argument("--keep-empty", action="store_true",
                   help="keep empty conjunction granules (product)")
    p.add_argument("--delta", help="write the merge/keep/drop report here")
    _add_ingest_flags(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("zoom", help="move a node set one level finer or coarser")
    p.add_argument("--gks", required=True)
    p.add_argument("--tables", nargs="+", default=[])
    p.add_argument("--direction", choices=["in", "out"], required=True)
    p.add_argument("--nodes", required=True, help="comma-separated ids or labels")
    _add_ingest_flags(p)

    p = sub.add_parser("switch-view", help="re-orient a bipartite region")
    p.add_argument("--gks", required=True)
    p.add_argument("--tables", nargs="+", default=[])
    p.add_argument("--upper", required=True, help="comma-separated ids or labels")
    p.add_argument("--lower", required=True, help="comma-separated ids or labels")
    _add_ingest_flags(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("export", help="re-emit a structure as JSON or DOT")
    p.add_argument("--gks", required=True)
    p.add_argument("--tables", nargs="+", default=[])
    p.add_argument("--format", choices=["json", "dot"], default="dot")
    _add_ingest_flags(p)
    _add_dot_flags(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8077", help="host:port")
    p.add_argument("--assets", help="static directory for the explorer UI")
    p.add_argument("--snapshot", help="registry snapshot file (loaded on start, "
                                      "written on shutdown)")

    return parser


def _cmd_ingest(args) -> int:
    table = _load_table(args.table, args)
    _write_out(export.table_to_json(table), args.output)
    return 0


def _cmd_eval(args) -> int:
    table = _load_table(args.table, args)
    extension = evaluate(parse_formula(args.formula), table)
    for obj in sorted(extension):
        sys.stdout.write(obj + "\n")
    return 0


def _cmd_build(args) -> int:
    table = _load_table(args.table, args)
    g = build_attribute_value_structure(table, args.attr)
    _emit_structure(g, args)
    return 0


def _cmd_op(args) -> int:
    registry = _load_table_registry(args.tables, args)
    structures = [_load_structure(p, registry) for p in args.inputs]
    delta = None
    if args.opname in ("union", "intersect", "diff"):
        if len(structures) != 2:
            raise SchemaError(f"{args.opname} takes exactly two structures")
        op = {"union": union_gks, "intersect": intersect_gks, "diff": difference_gks}
        result, delta = op[args.opname](structures[0], structures[1])
    elif args.opname == "generalize":
        if not args.shared or not args.label:
            raise SchemaError("generalize requires --shared and --label")
        result = generalize(structures, _parse_atom(args.shared), args.label)
    else:  # product
        if len(structures) != 2:
            raise SchemaError("product takes exactly two structures")
        left, right = structures
        from .ops import _two_level

        r1, c1 = _two_level(left)
        r2, c2 = _two_level(right)
        children1 = [left.nodes[n] for n in c1]
        children2 = [right.nodes[n] for n in c2]
        if args.left_children:
            children1 = [left.nodes[n]
                         for n in resolve_nodes(left, _split_tokens(args.left_children))]
        if args.right_children:
            children2 = [right.nodes[n]
                         for n in resolve_nodes(right, _split_tokens(args.right_children))]
        shared = None
        if args.shared:
            shared = (_parse_atom(args.shared), args.label or args.shared)
        result = product(
            left.nodes[r1], children1, right.nodes[r2], children2,
            shared=shared, keep_empty=args.keep_empty,
        )
    if args.delta and delta is not None:
        Path(args.delta).write_text(export.dumps(delta.to_dict()), encoding="utf-8")
    _write_out(export.gks_to_json(result), args.output)
    return 0


def _cmd_zoom(args) -> int:
    registry = _load_table_registry(args.tables, args)
    g = _load_structure(args.gks, registry)
    ids = resolve_nodes(g, _split_tokens(args.nodes))
    op = zoom_in if args.direction == "in" else zoom_out
    for nid in sorted(op(g, ids), key=node_sort_key):
        sys.stdout.write(f"{nid}\t{g.nodes[nid].label}\n")
    return 0


def _cmd_switch_view(args) -> int:
    registry = _load_table_registry(args.tables, args)
    g = _load_structure(args.gks, registry)
    upper = resolve_nodes(g, _split_tokens(args.upper))
    lower = resolve_nodes(g, _split_tokens(args.lower))
    result = switch_view(g, upper, lower)
    _write_out(export.gks_to_json(result), args.output)
    return 0


def _cmd_export(args) -> int:
    registry = _load_table_registry(args.tables, args)
    g = _load_structure(args.gks, registry)
    _emit_structure(g, args)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import SessionState, create_app, load_snapshot, save_snapshot

    host, _, port = args.bind.rpartition(":")
    state = SessionState()
    if args.snapshot and os.path.exists(args.snapshot):
        load_snapshot(state, args.snapshot)
    app = create_app(state, assets=args.assets)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    if args.snapshot:
        save_snapshot(state, args.snapshot)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "eval": _cmd_eval,
    "build": _cmd_build,
    "op": _cmd_op,
    "zoom": _cmd_zoom,
    "switch-view": _cmd_switch_view,
    "export": _cmd_export,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except GksError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
