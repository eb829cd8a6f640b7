from pathlib import Path

import pytest

from gks import (
    Atom,
    IngestConfig,
    build_attribute_value_structure,
    ingest_csv,
    make_granule,
    make_gks,
)

FIXTURES = Path(__file__).parent / "fixtures"

THEORY_DOMAIN = ("DT", "RPA", "R-A", "LR", "RFH", "GC", "RA", "FCA", "DR")
APP_DOMAIN = ("IR", "MS", "IS", "BI", "IP")


def load_csv(filename, name=None, domains=None):
    path = FIXTURES / filename
    config = IngestConfig(table_name=name or path.stem, domains=dict(domains or {}))
    with open(path, encoding="utf-8") as fh:
        return ingest_csv(fh, config)


@pytest.fixture(scope="session")
def table1():
    return load_csv("table1.csv")


@pytest.fixture(scope="session")
def corpus():
    return load_csv("corpus.csv")


@pytest.fixture(scope="session")
def proc2005():
    return load_csv("rsfdgrc2005.csv", domains={"Theory": THEORY_DOMAIN})


@pytest.fixture(scope="session")
def proc2006():
    return load_csv("rskt2006.csv", domains={"Theory": THEORY_DOMAIN})


@pytest.fixture(scope="session")
def china_rssc():
    return load_csv("china_rssc.csv")


def build_fig7(table):
    """Two fields over four shared topics: the bipartite view-switch fixture."""
    rs = make_granule(Atom("Field", "=", "RS"), table, label="RS")
    fs = make_granule(Atom("Field", "=", "FS"), table, label="FS")
    topics = [
        make_granule(Atom("Topic", "=", v), table, label=v)
        for v in ("ML", "DR", "RFS", "FRS")
    ]
    #        RS(0)  FS(1)
    #   ML(2) DR(3) RFS(4) FRS(5)
    edges = [(2, 0), (2, 1), (3, 0), (3, 1), (4, 0), (5, 1)]
    return make_gks(table, [rs, fs, *topics], edges, levels=[1, 1, 2, 2, 2, 2])


@pytest.fixture(scope="session")
def fig7(china_rssc):
    return build_fig7(china_rssc)


@pytest.fixture(scope="session")
def theory_2005(proc2005):
    return build_attribute_value_structure(proc2005, "Theory")


@pytest.fixture(scope="session")
def theory_2006(proc2006):
    return build_attribute_value_structure(proc2006, "Theory")
