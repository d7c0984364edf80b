"""Transport-free request router and shared engine state.

``handle_request`` maps (state, request) to a response with no socket in
sight; the HTTP server is a thin adapter over it and tests drive it
directly. Read routes never mutate state. ``POST /corpus`` swaps in a
complete new corpus view under a writer lock, so a request observes exactly
one corpus version end to end, and every response body names the version it
was computed from.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Mapping

from ..collab_graph import (
    CitationGraph,
    CollaborationGraph,
    GenealogyForest,
    build_citation_graph,
    build_coauthor_graph,
    build_genealogy,
    ego_subgraph,
)
from ..community import detect_communities, modularity
from ..corpus import Corpus, parse_corpus
from ..errors import AdvisorCycle, CollabGraphError, EmptyGraph
from ..layout import (
    DEFAULT_FORCE_ITERATIONS,
    DEFAULT_GROUP_THRESHOLD,
    INSTITUTION_PREFIX,
    LayoutParams,
    LayoutResult,
    NodePlacement,
    PERSON_COLOR,
    citation_layout,
    ego_layout,
    force_layout,
    genealogy_layout,
)
from ..metrics import (
    author_indices,
    author_record_ids,
    collaborative_distance,
    yearly_series,
)
from ..pathfinder import DEFAULT_MAX_PATHS, DEFAULT_SLACK, path_selection

DEFAULT_EGO_K = 30


@dataclass(frozen=True)
class ApiRequest:
    """One decoded request: method, path, query parameters, raw body."""

    method: str
    path: str
    query: Mapping[str, str] = field(default_factory=dict)
    body: bytes = b""


@dataclass(frozen=True)
class ApiResponse:
    status: int
    body: dict

    def to_bytes(self) -> bytes:
        """Compact JSON; key order is meaningful (BFS order in /distance)."""
        return json.dumps(self.body, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


class _CorpusView:
    """One immutable corpus version plus its lazily built derived graphs.

    Derived graphs are published only after construction completes, so a
    reader never sees a partially built one; the lock just stops concurrent
    requests from duplicating the build work.
    """

    __slots__ = ("corpus", "version", "_lock", "_coauthor", "_citation", "_genealogy")

    def __init__(self, corpus: Corpus, version: int):
        self.corpus = corpus
        self.version = version
        self._lock = threading.Lock()
        self._coauthor: dict[str, CollaborationGraph] = {}
        self._citation: CitationGraph | None = None
        self._genealogy: GenealogyForest | None = None

    def coauthor_graph(self, kind: str = "all") -> CollaborationGraph:
        graph = self._coauthor.get(kind)
        if graph is None:
            with self._lock:
                graph = self._coauthor.get(kind)
                if graph is None:
                    graph = build_coauthor_graph(self.corpus, kind)
                    self._coauthor[kind] = graph
        return graph

    def citation_graph(self) -> CitationGraph:
        graph = self._citation
        if graph is None:
            with self._lock:
                graph = self._citation
                if graph is None:
                    graph = build_citation_graph(self.corpus)
                    self._citation = graph
        return graph

    def genealogy(self) -> GenealogyForest:
        forest = self._genealogy
        if forest is None:
            with self._lock:
                forest = self._genealogy
                if forest is None:
                    forest = build_genealogy(self.corpus)
                    self._genealogy = forest
        return forest


class EngineState:
    """The active corpus view; replacement is atomic and bumps the version."""

    def __init__(self, corpus: Corpus | None = None, *, version: int = 0):
        self._write_lock = threading.Lock()
        self._view = _CorpusView(corpus if corpus is not None else Corpus(), version)

    @property
    def view(self) -> _CorpusView:
        return self._view

    @property
    def version(self) -> int:
        return self._view.version

    def replace_corpus(self, corpus: Corpus) -> _CorpusView:
        """Publish a new corpus; in-flight readers keep the view they hold."""
        with self._write_lock:
            view = _CorpusView(corpus, self._view.version + 1)
            self._view = view
        return view


class _HttpError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _require(query: Mapping[str, str], name: str) -> str:
    value = query.get(name)
    if not value:
        raise _HttpError(400, "bad_parameter", f"missing query parameter {name!r}")
    return value


def _int_param(query: Mapping[str, str], name: str, default: int, minimum: int | None = None) -> int:
    raw = query.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _HttpError(400, "bad_parameter", f"query parameter {name!r} must be an integer")
    if minimum is not None and value < minimum:
        raise _HttpError(400, "bad_parameter", f"query parameter {name!r} must be >= {minimum}")
    return value


def _known_author(view: _CorpusView, author_id: str) -> str:
    if author_id not in view.corpus.authors:
        raise _HttpError(404, "unknown_author", f"no author with id {author_id!r}")
    return author_id


def _display_labels(view: _CorpusView, ids) -> dict[str, str]:
    authors = view.corpus.authors
    return {i: authors[i].display_name if i in authors else i for i in sorted(set(ids))}


def _edge_dicts(edges) -> list[dict]:
    return [{"a": a, "b": b, "w": w} for a, b, w in edges]


def handle_request(state: EngineState, request: ApiRequest) -> ApiResponse:
    """Route one request against the state's current corpus view."""
    view = state.view
    try:
        return ApiResponse(200, _dispatch(state, view, request))
    except _HttpError as exc:
        return ApiResponse(
            exc.status,
            {"version": view.version, "code": exc.code, "message": exc.message},
        )


def _dispatch(state: EngineState, view: _CorpusView, request: ApiRequest) -> dict:
    method = request.method.upper()
    segments = tuple(s for s in request.path.split("/") if s)

    if method == "POST" and segments == ("corpus",):
        return _upload(state, request)
    if method != "GET":
        raise _HttpError(404, "not_found", f"no route for {method} {request.path}")

    if segments == ("authors",):
        return _search(view, request)
    if len(segments) == 2 and segments[0] == "authors":
        return _author_card(view, segments[1])
    if len(segments) == 3 and segments[0] == "authors" and segments[2] == "metrics":
        return _metrics(view, segments[1], request)
    if segments == ("distance",):
        return _distance(view, request)
    if segments == ("paths",):
        return _paths(view, request)
    if segments == ("ego",):
        return _ego(view, request)
    if segments == ("citers",):
        return _citers(view, request)
    if segments == ("genealogy",):
        return _genealogy(view, request)
    if segments == ("communities",):
        return _communities(view, request)
    if segments == ("layout", "force"):
        return _force(view, request)
    raise _HttpError(404, "not_found", f"no route for {method} {request.path}")


def _upload(state: EngineState, request: ApiRequest) -> dict:
    try:
        corpus = parse_corpus(request.body)
    except CollabGraphError as exc:
        raise _HttpError(422, "invalid_corpus", str(exc))
    view = state.replace_corpus(corpus)
    return {
        "version": view.version,
        "authors": len(corpus.authors),
        "records": len(corpus.records),
    }


def _search(view: _CorpusView, request: ApiRequest) -> dict:
    query = request.query.get("q", "")
    needle = query.lower()
    matches = []
    if needle:
        for author in view.corpus.authors.values():
            names = (author.display_name, *author.aliases)
            if any(needle in name.lower() for name in names):
                matches.append({"id": author.id, "display_name": author.display_name})
    return {"version": view.version, "query": query, "matches": matches}


def _author_card(view: _CorpusView, author_id: str) -> dict:
    _known_author(view, author_id)
    author = view.corpus.authors[author_id]
    return {
        "version": view.version,
        "author": {
            "id": author.id,
            "display_name": author.display_name,
            "aliases": sorted(author.aliases),
            "institution": author.institution,
            "advisor_id": author.advisor_id,
            "records": len(author_record_ids(view.corpus, author_id)),
        },
    }


def _metrics(view: _CorpusView, author_id: str, request: ApiRequest) -> dict:
    _known_author(view, author_id)
    mode = request.query.get("mode", "cumulative")
    if mode not in ("annual", "cumulative"):
        raise _HttpError(400, "bad_parameter", "mode must be 'annual' or 'cumulative'")
    indices = author_indices(view.corpus, author_id)
    series = yearly_series(view.corpus, author_id, mode)
    return {
        "version": view.version,
        "author": author_id,
        "h": indices.h,
        "g": indices.g,
        "i10": indices.i10,
        "citation_source": indices.citation_source,
        "series": {
            "mode": series.mode,
            "years": list(series.years),
            "papers": list(series.papers),
            "citations": list(series.citations),
            "undated_records": series.undated_records,
            "undated_citations": series.undated_citations,
        },
    }


def _distance(view: _CorpusView, request: ApiRequest) -> dict:
    root = _known_author(view, _require(request.query, "root"))
    dmap = collaborative_distance(view.coauthor_graph(), root)
    # Insertion order is BFS discovery order; serialisation preserves it.
    return {"version": view.version, "root": root, "distances": dict(dmap.distances)}


def _paths(view: _CorpusView, request: ApiRequest) -> dict:
    a = _known_author(view, _require(request.query, "from"))
    b = _known_author(view, _require(request.query, "to"))
    if a == b:
        raise _HttpError(400, "bad_parameter", "'from' and 'to' must differ")
    max_paths = _int_param(request.query, "max", DEFAULT_MAX_PATHS, minimum=1)
    slack = _int_param(request.query, "slack", DEFAULT_SLACK, minimum=0)
    result = path_selection(view.coauthor_graph(), a, b, max_paths, slack)
    return {
        "version": view.version,
        "from": a,
        "to": b,
        "distance": result.distance,
        "paths": [list(p) for p in result.paths],
        "labels": _display_labels(view, (i for p in result.paths for i in p)),
    }


def _ego(view: _CorpusView, request: ApiRequest) -> dict:
    author = _known_author(view, _require(request.query, "author"))
    k = _int_param(request.query, "k", DEFAULT_EGO_K, minimum=1)
    ego = ego_subgraph(view.coauthor_graph(), author, k)
    layout = ego_layout(ego)
    ids = [author, *(i for i, _ in ego.neighbours)]
    return {
        "version": view.version,
        "ego": {
            "center": ego.center,
            "neighbours": [{"id": i, "count": c} for i, c in ego.neighbours],
            "edges": _edge_dicts(ego.edges),
        },
        "layout": layout.to_json_dict(),
        "labels": _display_labels(view, ids),
    }


def _citers(view: _CorpusView, request: ApiRequest) -> dict:
    author = _known_author(view, _require(request.query, "author"))
    citers = view.citation_graph().citers_of(author)
    layout = citation_layout(citers, author)
    return {
        "version": view.version,
        "author": author,
        "citers": [{"id": i, "count": c} for i, c in citers],
        "layout": layout.to_json_dict(),
        "labels": _display_labels(view, [author, *(i for i, _ in citers)]),
    }


def _genealogy(view: _CorpusView, request: ApiRequest) -> dict:
    root = _known_author(view, _require(request.query, "root"))
    threshold = _int_param(request.query, "threshold", DEFAULT_GROUP_THRESHOLD, minimum=1)
    try:
        forest = view.genealogy()
    except AdvisorCycle as exc:
        raise _HttpError(422, "advisor_cycle", str(exc))
    if root in forest:
        layout = genealogy_layout(forest, root, threshold)
    else:
        # An author with no advisor links is their own one-node tree.
        lone = NodePlacement(root, 0.0, 0.0, LayoutParams().base_size, PERSON_COLOR)
        layout = LayoutResult(idiom="genealogy", placements=(lone,))
    labels = _genealogy_labels(view, forest if root in forest else None, layout)
    return {
        "version": view.version,
        "root": root,
        "threshold": threshold,
        "layout": layout.to_json_dict(),
        "labels": labels,
    }


def _genealogy_labels(
    view: _CorpusView, forest: GenealogyForest | None, layout: LayoutResult
) -> dict[str, str]:
    # Institution nodes carry synthetic ids; recover the readable name from
    # any member hanging beneath them rather than parsing the id.
    member_of: dict[str, str] = {}
    for a, b, _ in layout.edges:
        if a.startswith(INSTITUTION_PREFIX) and not b.startswith(INSTITUTION_PREFIX):
            member_of.setdefault(a, b)
    labels: dict[str, str] = {}
    authors = view.corpus.authors
    for placement in layout.placements:
        node = placement.id
        if node.startswith(INSTITUTION_PREFIX) and forest is not None:
            member = member_of.get(node)
            name = forest.institution.get(member) if member else None
            labels[node] = name or node
        else:
            labels[node] = authors[node].display_name if node in authors else node
    return labels


def _communities(view: _CorpusView, request: ApiRequest) -> dict:
    seed = _int_param(request.query, "seed", 0)
    graph = view.coauthor_graph()
    assignment = detect_communities(graph, seed)
    try:
        quality = modularity(graph, assignment)
    except EmptyGraph:
        quality = None
    ordered = sorted(assignment.labels)
    return {
        "version": view.version,
        "seed": seed,
        "converged": assignment.converged,
        "n_clusters": assignment.n_clusters,
        "modularity": quality,
        "labels": {v: assignment.labels[v] for v in ordered},
        "colors": {v: assignment.color(v) for v in ordered},
    }


def _parse_pins(raw: str, graph: CollaborationGraph) -> dict[str, tuple[float, float]]:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError:
        raise _HttpError(400, "bad_parameter", "pins must be a JSON object")
    if not isinstance(obj, dict):
        raise _HttpError(400, "bad_parameter", "pins must be a JSON object")
    pins: dict[str, tuple[float, float]] = {}
    for node, point in obj.items():
        if node not in graph:
            raise _HttpError(400, "bad_parameter", f"pin for unknown author {node!r}")
        if (
            not isinstance(point, list)
            or len(point) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in point)
        ):
            raise _HttpError(400, "bad_parameter", f"pin for {node!r} must be [x, y]")
        pins[node] = (float(point[0]), float(point[1]))
    return pins


def _force(view: _CorpusView, request: ApiRequest) -> dict:
    seed = _int_param(request.query, "seed", 0)
    iterations = _int_param(request.query, "iterations", DEFAULT_FORCE_ITERATIONS, minimum=0)
    graph = view.coauthor_graph()
    pins_raw = request.query.get("pins")
    pins = _parse_pins(pins_raw, graph) if pins_raw else None
    assignment = detect_communities(graph, seed)
    layout = force_layout(graph, assignment, seed=seed, iterations=iterations, pinned=pins)
    return {
        "version": view.version,
        "seed": seed,
        "iterations": iterations,
        "layout": layout.to_json_dict(),
        "labels": _display_labels(view, graph.vertices),
    }
