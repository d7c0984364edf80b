"""Graph and layout exporters: DOT, GraphML, JSON.

Output is byte-stable for identical inputs: nodes and edges are emitted in
sorted order and floating-point values use repr formatting. GraphML can be
read back with :func:`import_graphml`, which is the round-trip counterpart
used by the test suite and by external tool pipelines.
"""

from __future__ import annotations

import io
import json
import xml.etree.ElementTree as ET
from typing import Union

from ..collab_graph import CitationGraph, CollaborationGraph
from ..errors import UnsupportedFormat
from ..layout import LayoutResult

EXPORT_FORMATS = ("dot", "graphml", "json")

Exportable = Union[CollaborationGraph, CitationGraph, LayoutResult]

_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(item: Exportable) -> bytes:
    out = io.StringIO()
    if isinstance(item, CitationGraph):
        out.write("digraph g {\n")
        arrow = "->"
        nodes = sorted(item.vertices)
        edges = sorted(item.edges())
        attrs = {}
    else:
        out.write("graph g {\n")
        arrow = "--"
        if isinstance(item, LayoutResult):
            nodes = [p.id for p in sorted(item.placements, key=lambda p: p.id)]
            attrs = {
                p.id: f' [pos="{p.x!r},{p.y!r}", width={p.radius!r}, colorscheme=set312, color={p.color + 1}]'
                for p in item.placements
            }
            edges = sorted(item.edges)
        else:
            nodes = sorted(item.vertices)
            edges = sorted(item.edges())
            attrs = {}
    for node in nodes:
        out.write(f"  {_dot_quote(node)}{attrs.get(node, '')};\n")
    for a, b, w in edges:
        out.write(f"  {_dot_quote(a)} {arrow} {_dot_quote(b)} [weight={w}];\n")
    out.write("}\n")
    return out.getvalue().encode("utf-8")


def _xml_escape(value: str) -> str:
    return (
        value.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _to_graphml(item: Exportable) -> bytes:
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(f'<graphml xmlns="{_GRAPHML_NS}">\n')
    out.write('  <key id="w" for="edge" attr.name="weight" attr.type="int"/>\n')
    has_layout = isinstance(item, LayoutResult)
    if has_layout:
        out.write('  <key id="x" for="node" attr.name="x" attr.type="double"/>\n')
        out.write('  <key id="y" for="node" attr.name="y" attr.type="double"/>\n')
        out.write('  <key id="r" for="node" attr.name="r" attr.type="double"/>\n')
        out.write('  <key id="c" for="node" attr.name="color" attr.type="int"/>\n')
    directed = isinstance(item, CitationGraph)
    out.write(f'  <graph id="g" edgedefault="{"directed" if directed else "undirected"}">\n')
    if has_layout:
        for p in sorted(item.placements, key=lambda p: p.id):
            out.write(f'    <node id="{_xml_escape(p.id)}">')
            out.write(f'<data key="x">{p.x!r}</data>')
            out.write(f'<data key="y">{p.y!r}</data>')
            out.write(f'<data key="r">{p.radius!r}</data>')
            out.write(f'<data key="c">{p.color}</data>')
            out.write("</node>\n")
        edges = sorted(item.edges)
    else:
        for node in sorted(item.vertices):
            out.write(f'    <node id="{_xml_escape(node)}"/>\n')
        edges = sorted(item.edges())
    for a, b, w in edges:
        out.write(
            f'    <edge source="{_xml_escape(a)}" target="{_xml_escape(b)}">'
            f'<data key="w">{w}</data></edge>\n'
        )
    out.write("  </graph>\n")
    out.write("</graphml>\n")
    return out.getvalue().encode("utf-8")


def _to_json(item: Exportable) -> bytes:
    if isinstance(item, LayoutResult):
        doc = item.to_json_dict()
    elif isinstance(item, CitationGraph):
        doc = {
            "directed": True,
            "nodes": sorted(item.vertices),
            "edges": [{"a": a, "b": b, "w": w} for a, b, w in sorted(item.edges())],
            "self_citers": sorted(item.self_citers),
        }
    else:
        doc = {
            "directed": False,
            "kind": item.kind,
            "nodes": sorted(item.vertices),
            "edges": [{"a": a, "b": b, "w": w} for a, b, w in sorted(item.edges())],
        }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8") + b"\n"


def export_graph(item: Exportable, format: str) -> bytes:
    """Serialise a graph or layout to the named format."""
    if format == "dot":
        return _to_dot(item)
    if format == "graphml":
        return _to_graphml(item)
    if format == "json":
        return _to_json(item)
    raise UnsupportedFormat(f"format must be one of {EXPORT_FORMATS}, got {format!r}")


def import_graphml(data: bytes) -> CollaborationGraph:
    """Read an undirected GraphML document back into a CollaborationGraph."""
    root = ET.fromstring(data)
    graph = root.find(f"{{{_GRAPHML_NS}}}graph")
    if graph is None:
        raise ValueError("no <graph> element found")
    if graph.get("edgedefault") != "undirected":
        raise ValueError("only undirected GraphML graphs can be re-imported")
    weight_keys = {
        key.get("id")
        for key in root.findall(f"{{{_GRAPHML_NS}}}key")
        if key.get("attr.name") == "weight"
    }
    vertices = tuple(
        node.get("id") for node in graph.findall(f"{{{_GRAPHML_NS}}}node")
    )
    edges: dict[tuple[str, str], int] = {}
    for edge in graph.findall(f"{{{_GRAPHML_NS}}}edge"):
        a, b = edge.get("source"), edge.get("target")
        w = 1
        for data_el in edge.findall(f"{{{_GRAPHML_NS}}}data"):
            if data_el.get("key") in weight_keys:
                w = int(data_el.text)
        edges[(a, b)] = w
    return CollaborationGraph.from_edge_weights(edges, vertices=vertices)
