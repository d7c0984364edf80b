from __future__ import annotations

import random

import pytest

from collabgraph import CollaborationGraph, build_coauthor_graph, path_selection, shortest_path
from collabgraph.errors import UnknownAuthor
from gen import enumerate_simple_paths, random_collab_graph


def _grid(edges: list[tuple[str, str]]) -> CollaborationGraph:
    return CollaborationGraph.from_edge_weights({pair: 1 for pair in edges})


def test_shortest_path_on_fixture(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    assert shortest_path(graph, "erdos", "bowen") == ("erdos", "wilson", "bowen")
    assert shortest_path(graph, "erdos", "erdos") == ("erdos",)
    assert shortest_path(graph, "erdos", "kleene") is None


def test_shortest_path_prefers_lexicographically_smallest_route() -> None:
    # Two equal-length routes s-a-t and s-b-t; the a route must win.
    graph = _grid([("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")])
    assert shortest_path(graph, "s", "t") == ("s", "a", "t")
    assert shortest_path(graph, "t", "s") == ("t", "a", "s")


def test_shortest_path_rejects_unknown_endpoints(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    with pytest.raises(UnknownAuthor):
        shortest_path(graph, "erdos", "nobody")
    with pytest.raises(UnknownAuthor):
        shortest_path(graph, "nobody", "erdos")


def test_path_selection_on_fixture(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    result = path_selection(graph, "erdos", "bowen")
    assert result.endpoints == ("erdos", "bowen")
    assert result.paths == (("erdos", "wilson", "bowen"),)
    assert result.distance == 2
    assert result.lengths == (2,)


def test_path_selection_orders_by_length_then_lexicographic() -> None:
    graph = _grid(
        [("s", "m"), ("m", "t"), ("s", "a"), ("a", "t"), ("s", "z"), ("z", "t"), ("s", "t")]
    )
    result = path_selection(graph, "s", "t", max_paths=10, slack=1)
    assert result.paths == (
        ("s", "t"),
        ("s", "a", "t"),
        ("s", "m", "t"),
        ("s", "z", "t"),
    )


def test_path_selection_honours_max_paths_and_slack() -> None:
    graph = _grid(
        [("s", "m"), ("m", "t"), ("s", "a"), ("a", "t"), ("s", "z"), ("z", "t"), ("s", "t")]
    )
    truncated = path_selection(graph, "s", "t", max_paths=2, slack=1)
    assert truncated.paths == (("s", "t"), ("s", "a", "t"))
    tight = path_selection(graph, "s", "t", max_paths=10, slack=0)
    assert tight.paths == (("s", "t"),)


def test_path_selection_handles_disconnection_and_same_endpoints(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    empty = path_selection(graph, "erdos", "kleene")
    assert empty.paths == ()
    assert empty.distance is None
    with pytest.raises(ValueError):
        path_selection(graph, "erdos", "erdos")
    with pytest.raises(UnknownAuthor):
        path_selection(graph, "erdos", "nobody")


def test_paths_are_simple_and_within_slack_window() -> None:
    rng = random.Random(99)
    for _ in range(30):
        graph = random_collab_graph(rng, max_vertices=15)
        vertices = sorted(graph.vertices)
        a, b = rng.sample(vertices, 2)
        slack = rng.choice([0, 1, 2])
        result = path_selection(graph, a, b, max_paths=8, slack=slack)
        if not result.paths:
            continue
        shortest = result.lengths[0]
        for path in result.paths:
            assert len(set(path)) == len(path)
            assert path[0] == a and path[-1] == b
            assert len(path) - 1 <= shortest + slack
            for u, v in zip(path, path[1:]):
                assert graph.weight(u, v) > 0


def test_path_selection_matches_exhaustive_enumeration() -> None:
    rng = random.Random(1234)
    for _ in range(30):
        graph = random_collab_graph(rng, max_vertices=12, density=1.8)
        vertices = sorted(graph.vertices)
        a, b = rng.sample(vertices, 2)
        max_paths = rng.choice([1, 3, 6])
        slack = rng.choice([0, 1, 2])
        expected = enumerate_simple_paths(graph, a, b, max_paths, slack)
        got = list(path_selection(graph, a, b, max_paths, slack).paths)
        assert got == expected
