"""Graph views over a corpus.

Three structures are derived from collaboration records: the weighted
undirected co-authorship graph, the directed author-level citation graph,
and the advisor genealogy forest. Truncated ego subgraphs are extracted
from the co-authorship graph. All of them are immutable once built, and
every ordering (vertices, adjacency, edge lists) is ascending by author id
so downstream output is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, KeysView, Mapping

from .corpus import Corpus
from .errors import AdvisorCycle, UnknownAuthor

KIND_FILTERS = ("publication", "credit", "all")


class CollaborationGraph:
    """Undirected graph: authors as vertices, edge weight = joint records."""

    __slots__ = ("kind", "_adj")

    def __init__(self, adj: dict[str, dict[str, int]], kind: str = "all"):
        self.kind = kind
        self._adj = adj

    @classmethod
    def from_edge_weights(
        cls,
        edges: Mapping[tuple[str, str], int] | Iterator[tuple[str, str, int]],
        vertices: tuple[str, ...] = (),
        kind: str = "all",
    ) -> "CollaborationGraph":
        """Build directly from (a, b) -> weight data; weights must be >= 1."""
        items: Iterator[tuple[str, str, int]]
        if isinstance(edges, Mapping):
            items = ((a, b, w) for (a, b), w in edges.items())
        else:
            items = iter(edges)
        adj: dict[str, dict[str, int]] = {v: {} for v in vertices}
        for a, b, w in items:
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if w < 1:
                raise ValueError(f"edge ({a!r}, {b!r}) has weight {w} < 1")
            adj.setdefault(a, {})[b] = w
            adj.setdefault(b, {})[a] = w
        return cls(_sorted_adj(adj), kind=kind)

    @property
    def vertices(self) -> KeysView[str]:
        return self._adj.keys()

    def __contains__(self, author_id: str) -> bool:
        return author_id in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def weight(self, a: str, b: str) -> int:
        """Joint-record count for the pair, 0 when they never collaborated."""
        return self._adj.get(a, {}).get(b, 0)

    def neighbors(self, author_id: str) -> Mapping[str, int]:
        if author_id not in self._adj:
            raise UnknownAuthor(author_id)
        return self._adj[author_id]

    def degree(self, author_id: str) -> int:
        return sum(self._adj[author_id].values())

    def edges(self) -> Iterator[tuple[str, str, int]]:
        """Each undirected edge once, as (a, b, weight) with a < b."""
        for a, nbrs in self._adj.items():
            for b, w in nbrs.items():
                if a < b:
                    yield a, b, w

    @property
    def num_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    @property
    def total_weight(self) -> int:
        return sum(sum(n.values()) for n in self._adj.values()) // 2


@dataclass(frozen=True)
class CitationGraph:
    """Directed author-to-author citation counts.

    ``out[a][b]`` counts citing-record/cited-record pairs that connect an
    author of the citing record to an author of the cited one. Self-citation
    edges are kept but their authors are flagged in ``self_citers``.
    """

    out: Mapping[str, Mapping[str, int]]
    self_citers: frozenset[str]

    @property
    def vertices(self) -> KeysView[str]:
        return self.out.keys()

    def edges(self) -> Iterator[tuple[str, str, int]]:
        for a, targets in self.out.items():
            for b, w in targets.items():
                yield a, b, w

    def citers_of(self, author_id: str) -> list[tuple[str, int]]:
        """Incoming citation weight per citing author, heaviest first.

        Self-citations are excluded: the quadrant view shows who else cites
        the main author. Ties order by ascending citer id.
        """
        if author_id not in self.out:
            raise UnknownAuthor(author_id)
        incoming = [
            (citer, targets[author_id])
            for citer, targets in self.out.items()
            if author_id in targets and citer != author_id
        ]
        incoming.sort(key=lambda item: (-item[1], item[0]))
        return incoming


@dataclass(frozen=True)
class GenealogyForest:
    """Advisor relationships as a forest: parent link points student -> advisor."""

    parent: Mapping[str, str]
    children: Mapping[str, tuple[str, ...]]
    institution: Mapping[str, str | None]
    roots: tuple[str, ...]

    @property
    def nodes(self) -> KeysView[str]:
        return self.institution.keys()

    def __contains__(self, author_id: str) -> bool:
        return author_id in self.institution


@dataclass(frozen=True)
class EgoSubgraph:
    """A center author, its top-K co-authors, and the edges among them."""

    center: str
    neighbours: tuple[tuple[str, int], ...]  # (author id, joint count), count desc
    edges: tuple[tuple[str, str, int], ...]  # between retained neighbours only


def _sorted_adj(adj: dict[str, dict[str, int]]) -> dict[str, dict[str, int]]:
    return {v: dict(sorted(adj[v].items())) for v in sorted(adj)}


def build_coauthor_graph(corpus: Corpus, kind: str = "all") -> CollaborationGraph:
    """Count joint records per author pair under the kind filter.

    A record with n authors contributes weight 1 to each of its C(n, 2)
    pairs. Every corpus author is a vertex, isolated ones included, so
    distance queries can report them unreachable.
    """
    if kind not in KIND_FILTERS:
        raise ValueError(f"kind filter must be one of {KIND_FILTERS}, got {kind!r}")
    adj: dict[str, dict[str, int]] = {author_id: {} for author_id in corpus.authors}
    for record in corpus.records.values():
        if kind != "all" and record.kind != kind:
            continue
        for a, b in combinations(sorted(record.author_ids), 2):
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1
    return CollaborationGraph(_sorted_adj(adj), kind=kind)


def build_citation_graph(corpus: Corpus) -> CitationGraph:
    """Author-level citation edges from per-record cites links.

    Dangling cites (to records absent from the corpus) are ignored. External
    citation_count values never contribute edges; they have no source author.
    """
    out: dict[str, dict[str, int]] = {author_id: {} for author_id in corpus.authors}
    self_citers: set[str] = set()
    for record in corpus.records.values():
        for cited_id in record.cites:
            cited = corpus.records.get(cited_id)
            if cited is None:
                continue
            for citing_author in record.author_ids:
                targets = out[citing_author]
                for cited_author in cited.author_ids:
                    targets[cited_author] = targets.get(cited_author, 0) + 1
                    if citing_author == cited_author:
                        self_citers.add(citing_author)
    ordered = {v: dict(sorted(out[v].items())) for v in sorted(out)}
    return CitationGraph(out=ordered, self_citers=frozenset(self_citers))


def build_genealogy(corpus: Corpus) -> GenealogyForest:
    """Forest over authors that advise or are advised.

    Raises AdvisorCycle when the advisor links loop; an advisor tree cannot
    contain one.
    """
    parent = {
        author.id: author.advisor_id
        for author in corpus.authors.values()
        if author.advisor_id is not None
    }
    state: dict[str, int] = {}
    for start in sorted(parent):
        path: list[str] = []
        node: str | None = start
        while node is not None and node not in state:
            state[node] = 0
            path.append(node)
            node = parent.get(node)
        if node is not None and state[node] == 0:
            cycle = path[path.index(node):]
            pivot = cycle.index(min(cycle))
            raise AdvisorCycle(tuple(cycle[pivot:] + cycle[:pivot]))
        for seen in path:
            state[seen] = 1

    members = sorted(set(parent) | set(parent.values()))
    children: dict[str, list[str]] = {m: [] for m in members}
    for student in sorted(parent):
        children[parent[student]].append(student)
    return GenealogyForest(
        parent=dict(parent),
        children={m: tuple(children[m]) for m in members},
        institution={m: corpus.authors[m].institution for m in members},
        roots=tuple(m for m in members if m not in parent),
    )


def ego_subgraph(graph: CollaborationGraph, center: str, k: int = 30) -> EgoSubgraph:
    """The center's top-k co-authors by joint count plus the edges among them.

    Ties break by ascending author id. Every retained neighbour's count is
    >= every excluded one's.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if center not in graph:
        raise UnknownAuthor(center)
    ranked = sorted(graph.neighbors(center).items(), key=lambda item: (-item[1], item[0]))
    retained = ranked[:k]
    kept = sorted(author_id for author_id, _ in retained)
    # Pairwise weight lookups keep this O(k^2) even on huge graphs.
    edges = []
    for a, b in combinations(kept, 2):
        w = graph.weight(a, b)
        if w:
            edges.append((a, b, w))
    return EgoSubgraph(center=center, neighbours=tuple(retained), edges=tuple(edges))
