import os
import sys

import pytest
from hypothesis import settings

from codo_kg.graph import Graph
from codo_kg.reasoner import materialize
from codo_kg.schema import build_codo_vocabulary
from codo_kg.serialization import parse_turtle
from codo_kg.workspace import data_path

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture
def vocab():
    return build_codo_vocabulary()


@pytest.fixture
def fixture_graph():
    graph, axioms = build_codo_vocabulary()
    parse_turtle(data_path("contacts_fixture.ttl").read_text(encoding="utf-8"), graph)
    return graph, axioms


@pytest.fixture
def closed_fixture(fixture_graph):
    graph, axioms = fixture_graph
    materialize(graph, axioms)
    return graph, axioms


@pytest.fixture
def empty_graph():
    return Graph()


# criterion number -> (title, passed); filled in by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
