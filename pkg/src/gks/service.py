"""HTTP/JSON facade over the library for the explorer UI and scripts.

The service is a thin adapter: registries of named tables and structures in
memory, a monotone revision counter bumped on every mutation, and endpoints
that call straight into the library.  Structure and table GET bodies are the
library serializers' exact bytes.  Mutations are serialized behind a lock and
swap whole registry dicts, so concurrent readers always observe a complete
old or new state.
"""

import io
import json
import threading
from typing import Literal

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, RedirectResponse
from pydantic import BaseModel

from . import export
from .errors import GksError, NotAtomic
from .formula import Atom, parse_formula
from .granule import make_granule
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


class UnknownName(GksError):
    code = "UnknownName"


class NameCollision(GksError):
    code = "NameCollision"


_STATUS = {"UnknownName": 404, "NameCollision": 409}


class SessionState:
    """Named tables and structures plus a strictly increasing revision.

    Readers take a plain reference to the current registry dict; writers copy,
    update and swap under the lock.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.tables: dict[str, InformationTable] = {}
        self.gks: dict[str, Gks] = {}
        self.revision = 0

    def get_table(self, name: str) -> InformationTable:
        try:
            return self.tables[name]
        except KeyError:
            raise UnknownName(f"no table named {name!r}", name=name) from None

    def get_gks(self, name: str) -> Gks:
        try:
            return self.gks[name]
        except KeyError:
            raise UnknownName(f"no structure named {name!r}", name=name) from None

    def put_table(self, name: str, table: InformationTable, replace=False) -> int:
        with self._lock:
            if not replace and name in self.tables:
                raise NameCollision(f"table {name!r} already exists", name=name)
            self.tables = {**self.tables, name: table}
            self.revision += 1
            return self.revision

    def ensure_table(self, table: InformationTable) -> None:
        """Register a derived table (e.g. a merge) if its name is free."""
        with self._lock:
            if table.name not in self.tables:
                self.tables = {**self.tables, table.name: table}
                self.revision += 1

    def put_gks(self, name: str, g: Gks, replace=False) -> int:
        with self._lock:
            if not replace and name in self.gks:
                raise NameCollision(f"structure {name!r} already exists", name=name)
            self.gks = {**self.gks, name: g}
            self.revision += 1
            return self.revision

    def to_snapshot(self) -> dict:
        return {
            "revision": self.revision,
            "tables": {n: export.table_json_dict(t) for n, t in self.tables.items()},
            "gks": {n: export.gks_json_dict(g) for n, g in self.gks.items()},
        }

    def load_snapshot(self, data: dict) -> None:
        tables = {
            name: export.table_from_dict(doc)
            for name, doc in data.get("tables", {}).items()
        }
        gks = {}
        for name, doc in data.get("gks", {}).items():
            table = tables.get(doc.get("table"))
            if table is None:
                raise UnknownName(
                    f"snapshot structure {name!r} references a missing table",
                    name=doc.get("table"),
                )
            gks[name] = export.gks_from_dict(doc, table)
        with self._lock:
            self.tables = tables
            self.gks = gks
            self.revision = int(data.get("revision", 0))


class TableUpload(BaseModel):
    name: str
    csv: str
    id_column: str | int = 0
    missing: str = "–"
    sep: str = ";"
    domains: dict[str, list[str]] = {}


class EvalRequest(BaseModel):
    table: str
    formula: str


class BuildRequest(BaseModel):
    table: str
    attribute: str
    name: str | None = None


class CombineRequest(BaseModel):
    left: str
    right: str
    name: str | None = None


class GeneralizeRequest(BaseModel):
    inputs: list[str]
    shared: str
    label: str
    name: str | None = None


class ProductRequest(BaseModel):
    left: str
    right: str
    left_children: list[str] | None = None
    right_children: list[str] | None = None
    shared: str | None = None
    shared_label: str | None = None
    keep_empty: bool = False
    name: str | None = None


class ZoomRequest(BaseModel):
    direction: Literal["in", "out"]
    nodes: list[str]


class SwitchViewRequest(BaseModel):
    upper: list[str]
    lower: list[str]


def _parse_atom(text: str) -> Atom:
    node = parse_formula(text)
    if not isinstance(node, Atom):
        raise NotAtomic("a single attribute-value atom is required", formula=text)
    return node


def _gks_summary(name: str, g: Gks, revision: int) -> dict:
    return {
        "name": name,
        "revision": revision,
        "table": g.table.name,
        "nodes": len(g.nodes),
        "edges": len(g.edges),
    }


def _split_two_level(g: Gks):
    """Root granule and child granules of a two-level structure (reuses the
    combination ops' shape check)."""
    from .ops import _two_level

    root, children = _two_level(g)
    return g.nodes[root], [g.nodes[c] for c in children]


def create_app(state: SessionState | None = None, assets: str | None = None) -> FastAPI:
    state = state or SessionState()
    app = FastAPI(title="gks", docs_url=None, redoc_url=None)
    app.state.session = state

    @app.exception_handler(GksError)
    async def _domain_error(_req: Request, exc: GksError):
        status = _STATUS.get(exc.code, 400)
        detail = {
            k: sorted(v) if isinstance(v, (set, frozenset)) else v
            for k, v in exc.detail.items()
        }
        return JSONResponse(
            status_code=status,
            content={"code": exc.code, "message": exc.message, "detail": detail},
        )

    def _json_bytes(text: str, revision: int) -> Response:
        return Response(
            content=text,
            media_type="application/json",
            headers={"X-Revision": str(revision)},
        )

    @app.get("/tables")
    def list_tables():
        tables = state.tables
        return {
            "revision": state.revision,
            "tables": [
                {
                    "name": n,
                    "objects": len(t.universe),
                    "attributes": list(t.attributes),
                }
                for n, t in sorted(tables.items())
            ],
        }

    @app.post("/tables")
    def upload_table(body: TableUpload):
        config = IngestConfig(
            table_name=body.name,
            id_column=body.id_column,
            missing=body.missing,
            separator=body.sep,
            domains={a: tuple(v) for a, v in body.domains.items()},
        )
        table = ingest_csv(io.StringIO(body.csv), config)
        revision = state.put_table(body.name, table)
        return {
            "name": body.name,
            "revision": revision,
            "objects": len(table.universe),
            "attributes": list(table.attributes),
        }

    @app.get("/tables/{name}")
    def get_table(name: str):
        table = state.get_table(name)
        return _json_bytes(export.table_to_json(table), state.revision)

    @app.post("/eval")
    def eval_formula(body: EvalRequest):
        table = state.get_table(body.table)
        from .formula import evaluate

        extension = evaluate(parse_formula(body.formula), table)
        return _json_bytes(
            export.dumps({"extension": sorted(extension)}), state.revision
        )

    @app.get("/gks")
    def list_gks():
        registry = state.gks
        return {
            "revision": state.revision,
            "gks": [
                _gks_summary(n, g, state.revision) for n, g in sorted(registry.items())
            ],
        }

    @app.post("/gks/build")
    def build(body: BuildRequest):
        table = state.get_table(body.table)
        g = build_attribute_value_structure(table, body.attribute)
        name = body.name or f"{body.table}:{body.attribute}"
        revision = state.put_gks(name, g)
        return _gks_summary(name, g, revision)

    def _combine(op, opname: str, body: CombineRequest):
        left = state.get_gks(body.left)
        right = state.get_gks(body.right)
        result, delta = op(left, right)
        state.ensure_table(result.table)
        name = body.name or f"{opname}({body.left},{body.right})"
        revision = state.put_gks(name, result)
        summary = _gks_summary(name, result, revision)
        summary["delta"] = delta.to_dict()
        return summary

    @app.post("/gks/union")
    def union(body: CombineRequest):
        return _combine(union_gks, "union", body)

    @app.post("/gks/intersect")
    def intersect(body: CombineRequest):
        return _combine(intersect_gks, "intersect", body)

    @app.post("/gks/difference")
    def difference(body: CombineRequest):
        return _combine(difference_gks, "difference", body)

    @app.post("/gks/generalize")
    def generalize_op(body: GeneralizeRequest):
        inputs = [state.get_gks(n) for n in body.inputs]
        shared = _parse_atom(body.shared)
        result = generalize(inputs, shared, body.label)
        name = body.name or f"generalize({','.join(body.inputs)})"
        revision = state.put_gks(name, result)
        return _gks_summary(name, result, revision)

    @app.post("/gks/product")
    def product_op(body: ProductRequest):
        left = state.get_gks(body.left)
        right = state.get_gks(body.right)
        root1, children1 = _split_two_level(left)
        root2, children2 = _split_two_level(right)
        if body.left_children is not None:
            picked = resolve_nodes(left, body.left_children)
            children1 = [left.nodes[n] for n in picked]
        if body.right_children is not None:
            picked = resolve_nodes(right, body.right_children)
            children2 = [right.nodes[n] for n in picked]
        shared = None
        if body.shared is not None:
            shared = (_parse_atom(body.shared), body.shared_label or body.shared)
        result = product(
            root1, children1, root2, children2, shared=shared, keep_empty=body.keep_empty
        )
        name = body.name or f"product({body.left},{body.right})"
        revision = state.put_gks(name, result)
        return _gks_summary(name, result, revision)

    @app.post("/gks/{name}/zoom")
    def zoom(name: str, body: ZoomRequest):
        g = state.get_gks(name)
        ids = resolve_nodes(g, body.nodes)
        op = zoom_in if body.direction == "in" else zoom_out
        result = op(g, ids)
        return {
            "revision": state.revision,
            "nodes": sorted(result, key=node_sort_key),
        }

    @app.post("/gks/{name}/switch-view")
    def switch(name: str, body: SwitchViewRequest):
        g = state.get_gks(name)
        upper = resolve_nodes(g, body.upper)
        lower = resolve_nodes(g, body.lower)
        result = switch_view(g, upper, lower)
        revision = state.put_gks(name, result, replace=True)
        return _gks_summary(name, result, revision)

    @app.get("/gks/{name}")
    def get_gks(name: str):
        g = state.get_gks(name)
        return _json_bytes(export.gks_to_json(g), state.revision)

    @app.get("/gks/{name}/dot")
    def get_dot(
        name: str,
        labels: Literal["plain", "extensions", "counts"] = "plain",
        rankdir: str = "BT",
    ):
        g = state.get_gks(name)
        opts = export.DotOptions(
            rankdir=rankdir,
            show_extensions=labels == "extensions",
            show_extension_counts=labels == "counts",
        )
        return Response(
            content=export.gks_to_dot(g, opts),
            media_type="text/vnd.graphviz",
            headers={"X-Revision": str(state.revision)},
        )

    if assets:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=assets, html=True), name="ui")

        @app.get("/")
        def index():
            return RedirectResponse("/ui/")

    return app


def save_snapshot(state: SessionState, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export.dumps(state.to_snapshot()))


def load_snapshot(state: SessionState, path: str) -> None:
    with open(path, encoding="utf-8") as fh:
        state.load_snapshot(json.load(fh))
