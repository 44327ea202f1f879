from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trisparse import Graph, complete_graph, cycle_graph, petersen_graph, star_graph


@pytest.fixture(scope="session")
def k2() -> Graph:
    return Graph(2, [(0, 1)])


@pytest.fixture(scope="session")
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture(scope="session")
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return petersen_graph()


@pytest.fixture(scope="session")
def star3() -> Graph:
    return star_graph(3)


@pytest.fixture(scope="session")
def atlas_connected():
    """All connected graphs on 1..7 vertices, one per isomorphism class."""
    nx = pytest.importorskip("networkx")
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for ng in graph_atlas_g():
        if ng.number_of_nodes() == 0:
            continue
        if nx.is_connected(ng):
            out.append(Graph(ng.number_of_nodes(), sorted(tuple(sorted(e)) for e in ng.edges())))
    return out


@pytest.fixture(scope="session")
def atlas_all():
    """All graphs on 0..7 vertices, one per isomorphism class."""
    pytest.importorskip("networkx")
    from networkx.generators.atlas import graph_atlas_g

    return [
        Graph(ng.number_of_nodes(), sorted(tuple(sorted(e)) for e in ng.edges()))
        for ng in graph_atlas_g()
    ]
