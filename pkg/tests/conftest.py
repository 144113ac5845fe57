from __future__ import annotations

from pathlib import Path

import pytest

from app import create_app
from config import TestConfig
from services.coxeter import CoxeterGraph, GraphKind, canonical_form

GOLDEN = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="inclui as varreduras de aceitação (lentas)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def app():
    return create_app(TestConfig)


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN / name).read_text(encoding="utf-8")
    return read


def caffine(n: int) -> CoxeterGraph:
    return CoxeterGraph(GraphKind.CAFFINE, n)


def fc(graph: CoxeterGraph, *word: int):
    return canonical_form(graph, word)
