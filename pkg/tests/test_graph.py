from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisparse import (
    Graph,
    GraphFormatError,
    audit,
    induced_subgraph,
    load_graph,
)
from trisparse.graph import to_edge_list, to_json_obj

import oracles


# -- parsing -----------------------------------------------------------------

def test_load_path_on_three_vertices():
    g = load_graph("3 2\n0 1\n1 2")
    assert g.n == 3
    assert g.degrees() == (1, 2, 1)


def test_load_single_isolated_vertex():
    g = load_graph("1 0")
    assert g.n == 1
    assert g.m == 0


def test_load_triangle():
    g = load_graph("3 3\n0 1\n1 2\n0 2")
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_load_crlf_and_trailing_newlines():
    g = load_graph(b"3 2\r\n0 1\r\n1 2\r\n\r\n")
    assert g.degrees() == (1, 2, 1)


def test_load_json_format():
    g = load_graph(json.dumps({"n": 5, "edges": [[0, 1], [1, 2]]}))
    assert g.n == 5
    assert g.m == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n0 1\nx y", 3),
        ("3 2\n0 1\n1 3", 3),          # index >= n
        ("3 2\n1 1\n0 2", 2),          # self-loop
        ("3 2\n0 1\n0 1", 3),          # duplicate
        ("3 2\n1 0\n0 2", 2),          # endpoints out of order
        ("3 2\n0 1", 3),               # missing edge line
        ("3 1\n0 1\n1 2", 3),          # extra content
        ("bad header", 1),
    ],
)
def test_load_rejects_malformed_with_line_number(text, line):
    with pytest.raises(GraphFormatError) as err:
        load_graph(text)
    assert err.value.line == line


def test_load_json_rejects_semantic_errors():
    for payload in (
        {"n": 2, "edges": [[0, 0]]},
        {"n": 2, "edges": [[0, 5]]},
        {"n": 2, "edges": [[0, 1], [0, 1]]},
        {"n": 2},
    ):
        with pytest.raises(GraphFormatError):
            load_graph(json.dumps(payload))


def test_round_trip_serialization(c5):
    assert load_graph(to_edge_list(c5)) == c5
    assert load_graph(json.dumps(to_json_obj(c5))) == c5


def test_graph_constructor_validates():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])


# -- audit -------------------------------------------------------------------

def test_audit_k4(k4):
    aud = audit(k4)
    assert aud.max_degree == 3
    assert aud.nbhd_edges == (3, 3, 3, 3)
    assert aud.triangle_total == 4
    assert aud.implied_f == Fraction(9, 3) == 3


def test_audit_petersen(petersen):
    aud = audit(petersen)
    assert aud.max_degree == 3
    assert set(aud.nbhd_edges) == {0}
    assert aud.triangle_total == 0
    assert aud.implied_f == 10


def test_audit_c5(c5):
    aud = audit(c5)
    assert aud.max_degree == 2
    assert aud.triangle_total == 0
    assert aud.implied_f == 5


def test_audit_empty_and_edgeless():
    assert audit(Graph(0)).implied_f == 1
    aud = audit(Graph(4))
    assert aud.max_degree == 0
    assert aud.implied_f == 1


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picks = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, picks)


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_degree_sum_is_twice_edges(g):
    assert sum(g.degrees()) == 2 * g.m


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_nbhd_edges_sum_is_three_times_triangles(g):
    aud = audit(g)
    assert sum(aud.nbhd_edges) == 3 * aud.triangle_total


@given(graphs())
@settings(max_examples=60, deadline=None)
def test_implied_f_monotone_under_edge_addition(g):
    non_edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.has_edge(u, v)
    ]
    before = audit(g)
    for u, v in non_edges:
        bigger = Graph(g.n, list(g.edges) + [(u, v)])
        if bigger.max_degree != g.max_degree:
            continue
        assert audit(bigger).implied_f <= before.implied_f


def test_implied_f_within_range_and_triangle_free_cap():
    rng = random.Random(7)
    for _ in range(30):
        g = oracles.random_graph(rng, rng.randint(2, 9), rng.random())
        aud = audit(g)
        if aud.max_degree >= 1:
            assert 1 <= aud.implied_f <= aud.max_degree ** 2 + 1
            if aud.triangle_total == 0:
                assert aud.implied_f == aud.max_degree ** 2 + 1


# -- induced subgraphs --------------------------------------------------------

def test_induced_k4_triangle(k4):
    h, labels = induced_subgraph(k4, {0, 1, 2})
    assert h.n == 3 and h.m == 3
    assert labels == (0, 1, 2)


def test_induced_empty(c5):
    h, labels = induced_subgraph(c5, set())
    assert h.n == 0 and labels == ()


def test_induced_c5_edge_plus_isolated(c5):
    h, labels = induced_subgraph(c5, {0, 1, 3})
    assert labels == (0, 1, 3)
    assert h.edges == ((0, 1),)


def test_induced_identity(c5):
    h, labels = induced_subgraph(c5, range(5))
    assert h == c5
    assert labels == (0, 1, 2, 3, 4)


def test_induced_rejects_out_of_range(c5):
    with pytest.raises(ValueError):
        induced_subgraph(c5, {0, 7})


def test_graph_value_semantics(c5):
    again = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert again == c5
    assert hash(again) == hash(c5)
    assert again != Graph(5, [(0, 1)])
