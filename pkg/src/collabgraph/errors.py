"""Exception types shared across the engine."""

from __future__ import annotations


class CollabGraphError(Exception):
    """Base class for all engine errors."""


class MalformedRecord(CollabGraphError):
    """An interchange line could not be decoded or violates a record invariant."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateId(CollabGraphError):
    """The same author or record id was defined twice."""


class DanglingAuthor(CollabGraphError):
    """A record or advisor link names an author id that does not exist."""


class UnknownAuthor(CollabGraphError):
    """An operation was asked about an author id the corpus/graph does not contain."""

    def __init__(self, author_id: str):
        super().__init__(f"unknown author {author_id!r}")
        self.author_id = author_id


class AdvisorCycle(CollabGraphError):
    """Advisor links form a cycle where a forest was required."""

    def __init__(self, cycle: tuple[str, ...]):
        super().__init__("advisor cycle: " + " -> ".join(cycle))
        self.cycle = cycle


class EmptyGraph(CollabGraphError):
    """The operation is undefined on a graph with no edges."""


class UnsupportedFormat(CollabGraphError):
    """An exporter was asked for a format it does not produce."""


class CorruptSnapshot(CollabGraphError):
    """A state snapshot failed its checksum or structural checks."""


class VersionMismatch(CollabGraphError):
    """A state snapshot was written with an incompatible schema version."""
