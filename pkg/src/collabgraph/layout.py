"""Deterministic 2-D placements for the four view idioms.

* ego: the main author at the centre, co-authors spread a full turn around
  it, heavier collaborators closer and drawn larger.
* citation: the cited author at the origin, citers spread across one
  quadrant (angles 0..90 degrees), heavier citers closer and larger.
* genealogy: layered advisor tree, parent centred over its children, large
  same-institution sibling groups collected under an institution node.
* force: seeded spring embedder over any weighted subgraph.

Coordinates are abstract units in a screen-style frame: x grows rightward,
y grows downward, angles are measured from east towards +y. Positions,
ordering, and colours are pure functions of the inputs, so identical inputs
always serialise to identical bytes.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .collab_graph import CollaborationGraph, EgoSubgraph, GenealogyForest
from .community import ClusterAssignment
from .errors import UnknownAuthor

INSTITUTION_PREFIX = "inst:"
DEFAULT_GROUP_THRESHOLD = 3
DEFAULT_FORCE_ITERATIONS = 300

PERSON_COLOR = 0
INSTITUTION_COLOR = 1


@dataclass(frozen=True)
class LayoutParams:
    """Scaling knobs; only monotone relations are contractual."""

    base_radius: float = 120.0  # ring distance for the lightest collaborators
    min_radius: float = 40.0    # ring distance for the heaviest
    base_size: float = 10.0     # display radius of an unweighted node

    def __post_init__(self):
        if self.min_radius <= 0 or self.base_radius <= self.min_radius:
            raise ValueError("need 0 < min_radius < base_radius")
        if self.base_size <= 0:
            raise ValueError("base_size must be positive")


@dataclass(frozen=True)
class NodePlacement:
    id: str
    x: float
    y: float
    radius: float
    color: int


@dataclass(frozen=True)
class LayoutResult:
    idiom: str
    placements: tuple[NodePlacement, ...]
    edges: tuple[tuple[str, str, int], ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "idiom": self.idiom,
            "nodes": [
                {"id": p.id, "x": p.x, "y": p.y, "r": p.radius, "color": p.color}
                for p in self.placements
            ],
            "edges": [{"a": a, "b": b, "w": w} for a, b, w in self.edges],
        }

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_json_dict(), ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def _ring_radius(count: int, lo: int, hi: int, params: LayoutParams) -> float:
    # Highest joint count sits closest; equal counts share the outer ring.
    if hi == lo:
        return params.base_radius
    return params.min_radius + (params.base_radius - params.min_radius) * (hi - count) / (hi - lo)


def _node_size(count: int, lo: int, hi: int, params: LayoutParams) -> float:
    if hi == lo:
        return params.base_size
    return params.base_size * (1.0 + (count - lo) / (hi - lo))


def _center_size(params: LayoutParams) -> float:
    # Strictly above the 2x base_size a maximal neighbour can reach.
    return params.base_size * 2.5


def ego_layout(ego: EgoSubgraph, params: LayoutParams = LayoutParams()) -> LayoutResult:
    """Centre-and-ring placement of an ego subgraph.

    Neighbour i of n sits at angle 2*pi*i/n (count-descending order, ties by
    ascending id, angle 0 pointing east). Ring distance decreases and node
    size increases with the joint count.
    """
    placements = [NodePlacement(ego.center, 0.0, 0.0, _center_size(params), PERSON_COLOR)]
    edges = [(min(ego.center, nid), max(ego.center, nid), count) for nid, count in ego.neighbours]
    edges.extend(ego.edges)
    n = len(ego.neighbours)
    if n:
        counts = [count for _, count in ego.neighbours]
        lo, hi = min(counts), max(counts)
        for i, (neighbor_id, count) in enumerate(ego.neighbours):
            angle = 2.0 * math.pi * i / n
            r = _ring_radius(count, lo, hi, params)
            placements.append(
                NodePlacement(
                    neighbor_id,
                    r * math.cos(angle),
                    r * math.sin(angle),
                    _node_size(count, lo, hi, params),
                    PERSON_COLOR,
                )
            )
    return LayoutResult(idiom="ego", placements=tuple(placements), edges=tuple(sorted(edges)))


def citation_layout(
    citers: Sequence[tuple[str, int]],
    main: str,
    params: LayoutParams = LayoutParams(),
) -> LayoutResult:
    """Quadrant placement of citing authors around the cited one.

    The main author sits at the origin (the viewport's top-left corner);
    citers spread evenly over angles 0..90 degrees towards +x/+y in
    count-descending order, the heaviest citers closest and largest.
    """
    for citer_id, count in citers:
        if count < 1:
            raise ValueError(f"citer {citer_id!r} has count {count} < 1")
    ranked = sorted(citers, key=lambda item: (-item[1], item[0]))
    placements = [NodePlacement(main, 0.0, 0.0, _center_size(params), PERSON_COLOR)]
    edges = []
    n = len(ranked)
    if n:
        counts = [count for _, count in ranked]
        lo, hi = min(counts), max(counts)
        for i, (citer_id, count) in enumerate(ranked):
            angle = 0.0 if n == 1 else (math.pi / 2.0) * i / (n - 1)
            r = _ring_radius(count, lo, hi, params)
            placements.append(
                NodePlacement(
                    citer_id,
                    r * math.cos(angle),
                    r * math.sin(angle),
                    _node_size(count, lo, hi, params),
                    PERSON_COLOR,
                )
            )
            edges.append((min(main, citer_id), max(main, citer_id), count))
    return LayoutResult(idiom="citation", placements=tuple(placements), edges=tuple(sorted(edges)))


def institution_node_id(parent: str, institution: str) -> str:
    return f"{INSTITUTION_PREFIX}{parent}:{institution}"


def genealogy_layout(
    forest: GenealogyForest,
    root: str,
    group_threshold: int = DEFAULT_GROUP_THRESHOLD,
    params: LayoutParams = LayoutParams(),
    x_gap: float = 60.0,
    y_gap: float = 80.0,
) -> LayoutResult:
    """Layered tidy tree below the root, advisors above their students.

    When at least group_threshold of a node's students share an institution,
    an intermediate institution node is inserted and those students hang
    beneath it. Siblings order ascending by id (institution nodes by their
    synthetic id). Leaves take successive x slots; every parent is centred
    over its children; y grows with depth.
    """
    if group_threshold < 1:
        raise ValueError(f"group_threshold must be positive, got {group_threshold}")
    if root not in forest:
        raise UnknownAuthor(root)

    def display_children(person: str) -> list[tuple[str, list[str]]]:
        students = forest.children.get(person, ())
        by_institution: dict[str, list[str]] = {}
        for student in students:
            inst = forest.institution.get(student)
            if inst is not None:
                by_institution.setdefault(inst, []).append(student)
        grouped = {
            inst: members
            for inst, members in by_institution.items()
            if len(members) >= group_threshold
        }
        absorbed = {s for members in grouped.values() for s in members}
        nodes: list[tuple[str, list[str]]] = [
            (s, []) for s in students if s not in absorbed
        ]
        nodes.extend(
            (institution_node_id(person, inst), members) for inst, members in grouped.items()
        )
        nodes.sort(key=lambda item: item[0])
        return nodes

    placements: list[NodePlacement] = []
    edges: list[tuple[str, str, int]] = []
    slot = 0

    def place(node: str, members: list[str], depth: int) -> float:
        nonlocal slot
        is_institution = node.startswith(INSTITUTION_PREFIX)
        child_nodes = [(m, []) for m in members] if is_institution else display_children(node)
        if child_nodes:
            xs = []
            for child, child_members in child_nodes:
                xs.append(place(child, child_members, depth + 1))
                edges.append((node, child, 1))
            x = sum(xs) / len(xs)
        else:
            x = slot * x_gap
            slot += 1
        placements.append(
            NodePlacement(
                node,
                x,
                depth * y_gap,
                params.base_size,
                INSTITUTION_COLOR if is_institution else PERSON_COLOR,
            )
        )
        return x

    place(root, [], 0)
    placements.sort(key=lambda p: p.id)
    return LayoutResult(idiom="genealogy", placements=tuple(placements), edges=tuple(sorted(edges)))


def force_layout(
    graph: CollaborationGraph,
    assignment: ClusterAssignment | None = None,
    seed: int = 0,
    iterations: int = DEFAULT_FORCE_ITERATIONS,
    pinned: Mapping[str, tuple[float, float]] | None = None,
) -> LayoutResult:
    """Seeded spring embedder: weighted attraction along edges, pairwise
    repulsion, linear cooling.

    Pinned nodes keep their given positions and the rest settle around
    them. Without pins the finished drawing is recentred on its centroid,
    so a lone vertex lands exactly at the origin. Colours come from the
    cluster assignment when one is supplied.
    """
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    vertices = sorted(graph.vertices)
    n = len(vertices)
    pins = dict(pinned or {})
    if not n:
        return LayoutResult(idiom="force", placements=())

    rng = random.Random(seed)
    k = 40.0  # ideal spring length
    span = k * max(1.0, math.sqrt(n))
    pos = {
        v: pins.get(v, (rng.uniform(-span / 2, span / 2), rng.uniform(-span / 2, span / 2)))
        for v in vertices
    }

    if n > 1:
        temp = span / 10.0
        dt = temp / (iterations + 1)
        for _ in range(iterations):
            disp = {v: (0.0, 0.0) for v in vertices}
            for i, a in enumerate(vertices):
                ax, ay = pos[a]
                dax, day = disp[a]
                for b in vertices[i + 1:]:
                    bx, by = pos[b]
                    dx, dy = ax - bx, ay - by
                    dist_sq = dx * dx + dy * dy
                    if dist_sq == 0.0:
                        continue
                    # repulsion k^2/d, applied along the unit vector: k^2/d^2 per axis
                    f = k * k / dist_sq
                    dax += dx * f
                    day += dy * f
                    dbx, dby = disp[b]
                    disp[b] = (dbx - dx * f, dby - dy * f)
                disp[a] = (dax, day)
            for a, b, w in graph.edges():
                ax, ay = pos[a]
                bx, by = pos[b]
                dx, dy = ax - bx, ay - by
                dist = math.hypot(dx, dy)
                if dist == 0.0:
                    continue
                # attraction w*d^2/k along the unit vector: dx * w*d/k per axis
                f = w * dist / k
                dax, day = disp[a]
                disp[a] = (dax - dx * f, day - dy * f)
                dbx, dby = disp[b]
                disp[b] = (dbx + dx * f, dby + dy * f)
            for v in vertices:
                if v in pins:
                    continue
                dx, dy = disp[v]
                length = math.hypot(dx, dy)
                if length > 0.0:
                    step = min(length, temp) / length
                    x, y = pos[v]
                    pos[v] = (x + dx * step, y + dy * step)
            temp = max(temp - dt, 0.0)

    if not pins:
        cx = sum(p[0] for p in pos.values()) / n
        cy = sum(p[1] for p in pos.values()) / n
        pos = {v: (x - cx, y - cy) for v, (x, y) in pos.items()}

    placements = tuple(
        NodePlacement(
            v,
            pos[v][0],
            pos[v][1],
            LayoutParams().base_size,
            assignment.color(v) if assignment is not None and v in assignment.labels else PERSON_COLOR,
        )
        for v in vertices
    )
    return LayoutResult(idiom="force", placements=placements, edges=tuple(sorted(graph.edges())))
