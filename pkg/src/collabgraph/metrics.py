"""Bibliometric indices, yearly series, and collaborative distance.

The three indices follow their textbook definitions exactly:

* h-index: the largest h such that at least h entries are >= h.
* g-index: the largest g (at most the number of entries) such that the g
  largest entries sum to at least g squared.
* i10-index: the number of entries with at least ten citations.

Collaborative distance is the plain hop count over co-authorship edges
(edge weights are multiplicities, not lengths): the root is at 0, its
co-authors at 1, and so on. Unreachable authors are absent from the map,
never a sentinel value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .collab_graph import CollaborationGraph
from .corpus import Corpus
from .errors import UnknownAuthor

CITATIONS_IN_CORPUS = "in_corpus"
CITATIONS_EXTERNAL = "external"


@dataclass(frozen=True)
class BibliometricIndices:
    h: int
    g: int
    i10: int
    citation_source: str  # which citation data backed the counts


@dataclass(frozen=True)
class YearlySeries:
    """Per-year paper and citation counts for one author.

    ``years`` is a contiguous range; the two count sequences align with it.
    Records and citing records of unknown year cannot be bucketed and are
    excluded; their counts are reported so callers can surface the gap.
    """

    author: str
    mode: str  # "annual" | "cumulative"
    years: tuple[int, ...]
    papers: tuple[int, ...]
    citations: tuple[int, ...]
    undated_records: int
    undated_citations: int


@dataclass(frozen=True)
class DistanceMap:
    """Hop distances from a root author, in breadth-first discovery order."""

    root: str
    distances: Mapping[str, int]

    def __contains__(self, author_id: str) -> bool:
        return author_id in self.distances

    def get(self, author_id: str) -> int | None:
        return self.distances.get(author_id)


def h_index(citation_counts: Sequence[int]) -> int:
    """Largest h such that at least h entries are >= h."""
    ranked = sorted(citation_counts, reverse=True)
    h = 0
    for position, count in enumerate(ranked, start=1):
        if count >= position:
            h = position
        else:
            break
    return h


def g_index(citation_counts: Sequence[int]) -> int:
    """Largest g <= len such that the g largest entries total >= g squared."""
    ranked = sorted(citation_counts, reverse=True)
    total = 0
    g = 0
    for position, count in enumerate(ranked, start=1):
        total += count
        if total >= position * position:
            g = position
    return g


def i10_index(citation_counts: Sequence[int]) -> int:
    """Number of entries with at least ten citations."""
    return sum(1 for count in citation_counts if count >= 10)


def record_citation_counts(corpus: Corpus) -> tuple[dict[str, int], str]:
    """Citation count per record id, plus which source produced the counts.

    When any record in the corpus carries per-record cites links, counts are
    in-corpus tallies (number of records citing each record) for the whole
    corpus. Otherwise each record's external citation_count is used. The two
    sources are never mixed; they are not reconcilable.
    """
    if any(record.cites for record in corpus.records.values()):
        tallies = {record_id: 0 for record_id in corpus.records}
        for record in corpus.records.values():
            for cited in record.cites:
                if cited in tallies:
                    tallies[cited] += 1
        return tallies, CITATIONS_IN_CORPUS
    external = {
        record_id: record.citation_count or 0
        for record_id, record in corpus.records.items()
    }
    return external, CITATIONS_EXTERNAL


def author_record_ids(corpus: Corpus, author: str) -> list[str]:
    if author not in corpus.authors:
        raise UnknownAuthor(author)
    return [rid for rid in corpus.records if author in corpus.records[rid].author_ids]


def author_indices(corpus: Corpus, author: str) -> BibliometricIndices:
    """h/g/i10 for one author over their records' citation counts."""
    counts, source = record_citation_counts(corpus)
    own = [counts[rid] for rid in author_record_ids(corpus, author)]
    return BibliometricIndices(
        h=h_index(own),
        g=g_index(own),
        i10=i10_index(own),
        citation_source=source,
    )


def yearly_series(corpus: Corpus, author: str, mode: str = "cumulative") -> YearlySeries:
    """Papers and citations per year for one author.

    Papers count the author's records by their own year. Citations count
    per-record cites of the author's records, dated by the citing record's
    year. Cumulative mode carries prefix sums over the same year range.
    """
    if mode not in ("annual", "cumulative"):
        raise ValueError(f"mode must be 'annual' or 'cumulative', got {mode!r}")
    own_ids = set(author_record_ids(corpus, author))

    papers_by_year: dict[int, int] = {}
    undated_records = 0
    for rid in own_ids:
        year = corpus.records[rid].year
        if year is None:
            undated_records += 1
        else:
            papers_by_year[year] = papers_by_year.get(year, 0) + 1

    citations_by_year: dict[int, int] = {}
    undated_citations = 0
    for record in corpus.records.values():
        hits = sum(1 for cited in record.cites if cited in own_ids)
        if not hits:
            continue
        if record.year is None:
            undated_citations += hits
        else:
            citations_by_year[record.year] = citations_by_year.get(record.year, 0) + hits

    dated_years = sorted(papers_by_year.keys() | citations_by_year.keys())
    if not dated_years:
        return YearlySeries(author, mode, (), (), (), undated_records, undated_citations)

    years = tuple(range(dated_years[0], dated_years[-1] + 1))
    papers = [papers_by_year.get(y, 0) for y in years]
    citations = [citations_by_year.get(y, 0) for y in years]
    if mode == "cumulative":
        for i in range(1, len(years)):
            papers[i] += papers[i - 1]
            citations[i] += citations[i - 1]
    return YearlySeries(
        author, mode, years, tuple(papers), tuple(citations), undated_records, undated_citations
    )


def collaborative_distance(graph: CollaborationGraph, root: str) -> DistanceMap:
    """Breadth-first hop distances from the root over co-authorship edges.

    The root is at distance 0 and unreachable authors are omitted. Adjacency
    is stored in ascending-id order, so the discovery order (and therefore
    any serialisation of the map) is reproducible.
    """
    if root not in graph:
        raise UnknownAuthor(root)
    adj = graph._adj
    distances = {root: 0}
    frontier = deque((root,))
    while frontier:
        current = frontier.popleft()
        next_hop = distances[current] + 1
        for neighbor in adj[current]:
            if neighbor not in distances:
                distances[neighbor] = next_hop
                frontier.append(neighbor)
    return DistanceMap(root=root, distances=distances)


def combined_number(map1: DistanceMap, map2: DistanceMap, person: str) -> int | None:
    """Sum of the person's distances in both maps, or None when either is absent."""
    d1 = map1.get(person)
    d2 = map2.get(person)
    if d1 is None or d2 is None:
        return None
    return d1 + d2
