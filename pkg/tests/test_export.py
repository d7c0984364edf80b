from __future__ import annotations

import json
import re

import pytest

from collabgraph import (
    CollaborationGraph,
    build_citation_graph,
    build_coauthor_graph,
    ego_layout,
    ego_subgraph,
    force_layout,
)
from collabgraph.errors import UnsupportedFormat
from collabgraph.interface import EXPORT_FORMATS, export_graph, import_graphml

_DOT_EDGE = re.compile(r'"([^"]+)" (--|->) "([^"]+)" \[weight=(\d+)\]')


def test_format_list_is_stable() -> None:
    assert EXPORT_FORMATS == ("dot", "graphml", "json")


def test_dot_empty_graph() -> None:
    text = export_graph(CollaborationGraph.from_edge_weights({}), "dot").decode()
    assert text == "graph g {\n}\n"


def test_dot_undirected_edges_parse_back(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    text = export_graph(graph, "dot").decode()
    assert text.startswith("graph g {\n")
    parsed = {
        (m.group(1), m.group(3)): int(m.group(4)) for m in _DOT_EDGE.finditer(text)
    }
    assert all(arrow == "--" for _, arrow, _, _ in (m.groups() for m in _DOT_EDGE.finditer(text)))
    assert parsed == {(a, b): w for a, b, w in graph.edges()}
    assert ("erdos", "wilson") in parsed


def test_dot_directed_uses_arrows(corpus) -> None:
    graph = build_citation_graph(corpus)
    text = export_graph(graph, "dot").decode()
    assert text.startswith("digraph g {\n")
    assert " -> " in text
    assert " -- " not in text


def test_dot_quotes_special_characters() -> None:
    graph = CollaborationGraph.from_edge_weights({('he said "hi"', "a\\b"): 1})
    text = export_graph(graph, "dot").decode()
    assert '"he said \\"hi\\""' in text
    assert '"a\\\\b"' in text


def test_dot_layout_carries_positions(corpus) -> None:
    layout = ego_layout(ego_subgraph(build_coauthor_graph(corpus), "bowen", k=30))
    text = export_graph(layout, "dot").decode()
    assert text.startswith("graph g {\n")
    centre = next(line for line in text.splitlines() if line.startswith('  "bowen"'))
    assert 'pos="0.0,0.0"' in centre
    assert "width=" in centre and "color=" in centre


def test_graphml_round_trip_identity(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    data = export_graph(graph, "graphml")
    back = import_graphml(data)
    assert sorted(back.vertices) == sorted(graph.vertices)
    assert list(back.edges()) == list(graph.edges())
    assert export_graph(back, "graphml") == data


def test_graphml_round_trip_keeps_isolated_vertices() -> None:
    graph = CollaborationGraph.from_edge_weights({("a", "b"): 3}, vertices=("a", "b", "lonely"))
    back = import_graphml(export_graph(graph, "graphml"))
    assert sorted(back.vertices) == ["a", "b", "lonely"]
    assert back.weight("a", "b") == 3


def test_graphml_escapes_markup() -> None:
    graph = CollaborationGraph.from_edge_weights({("<x>", 'q"t'): 2})
    data = export_graph(graph, "graphml")
    assert b"&lt;x&gt;" in data
    back = import_graphml(data)
    assert sorted(back.vertices) == sorted(("<x>", 'q"t'))
    assert back.weight("<x>", 'q"t') == 2


def test_graphml_rejects_directed_reimport(corpus) -> None:
    data = export_graph(build_citation_graph(corpus), "graphml")
    assert b'edgedefault="directed"' in data
    with pytest.raises(ValueError):
        import_graphml(data)


def test_graphml_rejects_document_without_graph() -> None:
    with pytest.raises(ValueError):
        import_graphml(b'<?xml version="1.0"?><graphml xmlns="http://graphml.graphdrawing.org/xmlns"/>')


def test_graphml_missing_weight_defaults_to_one() -> None:
    data = (
        '<?xml version="1.0"?>'
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">'
        '<graph id="g" edgedefault="undirected">'
        '<node id="a"/><node id="b"/>'
        '<edge source="a" target="b"/>'
        "</graph></graphml>"
    ).encode()
    back = import_graphml(data)
    assert back.weight("a", "b") == 1


def test_json_undirected_shape(corpus) -> None:
    graph = build_coauthor_graph(corpus, kind="publication")
    doc = json.loads(export_graph(graph, "json"))
    assert doc["directed"] is False
    assert doc["kind"] == "publication"
    assert doc["nodes"] == sorted(doc["nodes"])
    assert {"a": "erdos", "b": "wilson", "w": 1} in doc["edges"]


def test_json_directed_shape(corpus) -> None:
    doc = json.loads(export_graph(build_citation_graph(corpus), "json"))
    assert doc["directed"] is True
    assert doc["self_citers"] == ["bowen", "wilson"]
    assert {"a": "bowen", "b": "church", "w": 2} in doc["edges"]


def test_json_layout_matches_result_dict() -> None:
    graph = CollaborationGraph.from_edge_weights({("a", "b"): 1})
    layout = force_layout(graph, seed=3, iterations=20)
    doc = json.loads(export_graph(layout, "json"))
    assert doc == layout.to_json_dict()


def test_exports_are_byte_stable(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    for fmt in EXPORT_FORMATS:
        assert export_graph(graph, fmt) == export_graph(graph, fmt)


def test_unknown_format_rejected(corpus) -> None:
    graph = build_coauthor_graph(corpus)
    with pytest.raises(UnsupportedFormat):
        export_graph(graph, "gexf")
