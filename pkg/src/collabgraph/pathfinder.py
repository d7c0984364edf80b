"""Shortest and near-shortest transitive co-author paths.

Path length is the hop count; edge weights never stretch a path, they only
feed display thickness downstream. All tie-breaking is lexicographic on the
sequence of author ids, so results are fully deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .collab_graph import CollaborationGraph
from .errors import UnknownAuthor

DEFAULT_MAX_PATHS = 6
DEFAULT_SLACK = 1


@dataclass(frozen=True)
class PathResult:
    """Simple paths between two endpoints in (length, lexicographic) order."""

    endpoints: tuple[str, str]
    paths: tuple[tuple[str, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(p) - 1 for p in self.paths)

    @property
    def distance(self) -> int | None:
        """Hop count of the most direct path, None when disconnected."""
        return len(self.paths[0]) - 1 if self.paths else None


def _hop_distances(graph: CollaborationGraph, source: str) -> dict[str, int]:
    adj = graph._adj
    dist = {source: 0}
    frontier = deque((source,))
    while frontier:
        current = frontier.popleft()
        next_hop = dist[current] + 1
        for neighbor in adj[current]:
            if neighbor not in dist:
                dist[neighbor] = next_hop
                frontier.append(neighbor)
    return dist


def shortest_path(graph: CollaborationGraph, a: str, b: str) -> tuple[str, ...] | None:
    """One minimum-hop path from a to b, or None when disconnected.

    Among all shortest paths the lexicographically smallest id sequence is
    returned: walking from a, always step to the smallest-id neighbour that
    still lies on some shortest path.
    """
    for endpoint in (a, b):
        if endpoint not in graph:
            raise UnknownAuthor(endpoint)
    if a == b:
        return (a,)
    dist_to_b = _hop_distances(graph, b)
    if a not in dist_to_b:
        return None
    path = [a]
    current = a
    while current != b:
        remaining = dist_to_b[current]
        # Adjacency is id-sorted, so the first qualifying neighbour is the
        # smallest one on a shortest continuation.
        for neighbor in graph.neighbors(current):
            if dist_to_b.get(neighbor) == remaining - 1:
                path.append(neighbor)
                current = neighbor
                break
    return tuple(path)


def path_selection(
    graph: CollaborationGraph,
    a: str,
    b: str,
    max_paths: int = DEFAULT_MAX_PATHS,
    slack: int = DEFAULT_SLACK,
) -> PathResult:
    """Up to max_paths simple paths of length <= shortest + slack.

    Paths are emitted in (length, lexicographic) order via best-first search
    over partial paths, using exact hop distances to the target as the
    bound: a partial path whose length plus its endpoint's distance to b
    exceeds the budget can never complete within it and is pruned.
    """
    if max_paths < 1:
        raise ValueError(f"max_paths must be positive, got {max_paths}")
    if slack < 0:
        raise ValueError(f"slack must be non-negative, got {slack}")
    for endpoint in (a, b):
        if endpoint not in graph:
            raise UnknownAuthor(endpoint)
    if a == b:
        raise ValueError("path selection requires two distinct endpoints")

    dist_to_b = _hop_distances(graph, b)
    if a not in dist_to_b:
        return PathResult(endpoints=(a, b), paths=())
    budget = dist_to_b[a] + slack

    found: list[tuple[str, ...]] = []
    # Heap entries: (lower bound on completed length, path so far). Tuples of
    # ids compare lexicographically, which is exactly the required tie-break.
    heap: list[tuple[int, tuple[str, ...]]] = [(dist_to_b[a], (a,))]
    while heap and len(found) < max_paths:
        bound, path = heapq.heappop(heap)
        tail = path[-1]
        if tail == b:
            found.append(path)
            continue
        hops = len(path) - 1
        on_path = set(path)
        for neighbor in graph.neighbors(tail):
            if neighbor in on_path:
                continue
            remaining = dist_to_b.get(neighbor)
            if remaining is None:
                continue
            new_bound = hops + 1 + remaining
            if new_bound <= budget:
                heapq.heappush(heap, (new_bound, path + (neighbor,)))
    return PathResult(endpoints=(a, b), paths=tuple(found))
