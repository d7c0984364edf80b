"""Collaboration-graph analytics engine.

Ingests collaboration records (publications, film credits), derives
co-authorship, citation, and genealogy graphs, and computes bibliometric
indices, collaborative distances, transitive co-author paths, communities,
and deterministic 2-D layouts. The operational shell (HTTP service, CLI,
exporters, snapshots) lives in :mod:`collabgraph.interface`.
"""

from .collab_graph import (
    CitationGraph,
    CollaborationGraph,
    EgoSubgraph,
    GenealogyForest,
    build_citation_graph,
    build_coauthor_graph,
    build_genealogy,
    ego_subgraph,
)
from .community import ClusterAssignment, detect_communities, modularity
from .corpus import (
    AuthorRecord,
    CollaborationRecord,
    Corpus,
    ValidationReport,
    merge_authors,
    parse_corpus,
    serialize_corpus,
    snapshot_by_year,
    validate,
)
from .layout import (
    LayoutParams,
    LayoutResult,
    NodePlacement,
    citation_layout,
    ego_layout,
    force_layout,
    genealogy_layout,
)
from .metrics import (
    BibliometricIndices,
    DistanceMap,
    YearlySeries,
    author_indices,
    collaborative_distance,
    combined_number,
    g_index,
    h_index,
    i10_index,
    yearly_series,
)
from .pathfinder import PathResult, path_selection, shortest_path

__version__ = "0.1.0"

__all__ = [
    "AuthorRecord",
    "BibliometricIndices",
    "CitationGraph",
    "ClusterAssignment",
    "CollaborationGraph",
    "CollaborationRecord",
    "Corpus",
    "DistanceMap",
    "EgoSubgraph",
    "GenealogyForest",
    "LayoutParams",
    "LayoutResult",
    "NodePlacement",
    "PathResult",
    "ValidationReport",
    "YearlySeries",
    "author_indices",
    "build_citation_graph",
    "build_coauthor_graph",
    "build_genealogy",
    "citation_layout",
    "collaborative_distance",
    "combined_number",
    "detect_communities",
    "ego_layout",
    "ego_subgraph",
    "force_layout",
    "g_index",
    "genealogy_layout",
    "h_index",
    "i10_index",
    "merge_authors",
    "modularity",
    "parse_corpus",
    "path_selection",
    "serialize_corpus",
    "shortest_path",
    "snapshot_by_year",
    "validate",
    "yearly_series",
]
