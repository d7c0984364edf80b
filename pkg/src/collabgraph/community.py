"""Community detection and partition scoring.

Weighted label propagation: every vertex starts in its own community and
repeatedly adopts the label carrying the most incident edge weight, ties
going to the smallest label. Each round visits vertices in ascending
weighted-degree order, seeded shuffle breaking the ties, so low-degree
peripheries settle before hubs and bridge endpoints vote. That keeps a
single bridge edge from dragging one dense group's label into another
while staying deterministic for a given (graph, seed, max_rounds) triple.
Singletons keep their own label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .collab_graph import CollaborationGraph
from .errors import EmptyGraph

PALETTE_SIZE = 12  # distinguishable display colours; labels wrap around it

DEFAULT_MAX_ROUNDS = 100


@dataclass(frozen=True)
class ClusterAssignment:
    """Vertex -> community label, labels contiguous from 0."""

    labels: Mapping[str, int]
    converged: bool

    @property
    def n_clusters(self) -> int:
        return len(set(self.labels.values()))

    def color(self, author_id: str) -> int:
        return self.labels[author_id] % PALETTE_SIZE

    def members(self) -> dict[int, tuple[str, ...]]:
        grouped: dict[int, list[str]] = {}
        for author_id in sorted(self.labels):
            grouped.setdefault(self.labels[author_id], []).append(author_id)
        return {label: tuple(ids) for label, ids in sorted(grouped.items())}


def _best_label(labels: dict[str, int], neighbors: Mapping[str, int]) -> int | None:
    weight_per_label: dict[int, int] = {}
    for neighbor, weight in neighbors.items():
        label = labels[neighbor]
        weight_per_label[label] = weight_per_label.get(label, 0) + weight
    if not weight_per_label:
        return None
    top = max(weight_per_label.values())
    return min(label for label, total in weight_per_label.items() if total == top)


def detect_communities(
    graph: CollaborationGraph,
    seed: int = 0,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> ClusterAssignment:
    """Seeded weighted label propagation over the graph.

    Stops when a full round changes no label (a fixed point: re-running any
    further round would change nothing) or after max_rounds. Final labels
    are renumbered contiguously by first appearance in ascending vertex-id
    order.
    """
    if max_rounds < 1:
        raise ValueError(f"max_rounds must be positive, got {max_rounds}")
    vertices = sorted(graph.vertices)
    labels = {v: i for i, v in enumerate(vertices)}
    weighted_degree = {v: graph.degree(v) for v in vertices}
    rng = random.Random(seed)
    converged = not vertices
    for _ in range(max_rounds):
        order = list(vertices)
        rng.shuffle(order)
        # Stable sort: the seeded shuffle decides order within a degree class.
        order.sort(key=weighted_degree.__getitem__)
        changed = False
        for vertex in order:
            best = _best_label(labels, graph.neighbors(vertex))
            if best is not None and best != labels[vertex]:
                labels[vertex] = best
                changed = True
        if not changed:
            converged = True
            break

    renumber: dict[int, int] = {}
    final: dict[str, int] = {}
    for vertex in vertices:
        old = labels[vertex]
        if old not in renumber:
            renumber[old] = len(renumber)
        final[vertex] = renumber[old]
    return ClusterAssignment(labels=final, converged=converged)


def modularity(graph: CollaborationGraph, assignment: ClusterAssignment) -> float:
    """Newman modularity of the partition, weighted.

    Q sums, per community, the intra-community weight fraction minus the
    squared fraction of total degree the community holds. Undefined on a
    graph with no edges.
    """
    m = graph.total_weight
    if m == 0:
        raise EmptyGraph("modularity is undefined without edges")
    missing = [v for v in graph.vertices if v not in assignment.labels]
    if missing:
        raise ValueError(f"assignment does not cover {missing[:3]}")
    intra: dict[int, int] = {}
    degree: dict[int, int] = {}
    for a, b, w in graph.edges():
        la, lb = assignment.labels[a], assignment.labels[b]
        if la == lb:
            intra[la] = intra.get(la, 0) + w
    for v in graph.vertices:
        label = assignment.labels[v]
        degree[label] = degree.get(label, 0) + graph.degree(v)
    q = 0.0
    for label in degree:
        q += intra.get(label, 0) / m - (degree[label] / (2 * m)) ** 2
    return q
