"""Canonical data model and ingestion.

A corpus is a set of authors plus the collaboration records (publications or
film credits) that connect them, with optional citation links between records
and optional advisor links between authors. Corpus values are immutable;
every operation that changes one returns a new value.

Interchange format: UTF-8 text, one JSON object per line. Author lines look
like ``{"type": "author", "id": ..., "name": ..., "aliases": [...],
"institution": ..., "advisor": ...}`` and record lines like ``{"type":
"record", "id": ..., "kind": "publication"|"credit", "title": ..., "year":
..., "authors": [...], "venue": ..., "cites": [...], "citation_count": ...}``.
Unknown keys are ignored; lines may appear in any order.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import DanglingAuthor, DuplicateId, MalformedRecord, UnknownAuthor

RECORD_KINDS = ("publication", "credit")

CorpusInput = Union[bytes, str, IO[bytes], IO[str], Iterable[str]]


@dataclass(frozen=True)
class AuthorRecord:
    """One person. Identity is the opaque ``id``, never the display name."""

    id: str
    display_name: str
    aliases: frozenset[str] = frozenset()
    institution: str | None = None
    advisor_id: str | None = None


@dataclass(frozen=True)
class CollaborationRecord:
    """One joint work: a publication or a film credit.

    ``cites`` carries in-corpus citation links (publication kind only);
    ``citation_count`` is an externally supplied total used when per-record
    cites data is absent.
    """

    id: str
    kind: str
    title: str
    year: int | None
    author_ids: tuple[str, ...]
    venue: str | None = None
    cites: frozenset[str] = frozenset()
    citation_count: int | None = None


@dataclass(frozen=True)
class Corpus:
    """Immutable author + record store, keyed by id in ascending-id order."""

    authors: Mapping[str, AuthorRecord] = field(default_factory=dict)
    records: Mapping[str, CollaborationRecord] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class ValidationReport:
    """Findings from :func:`validate`; reporting only, never a rejection."""

    dangling_citations: tuple[tuple[str, str], ...]  # (record id, missing cited id)
    authors_without_records: tuple[str, ...]
    advisor_cycles: tuple[tuple[str, ...], ...]

    @property
    def is_clean(self) -> bool:
        return not (self.dangling_citations or self.authors_without_records or self.advisor_cycles)

    def counts(self) -> dict[str, int]:
        return {
            "dangling_citations": len(self.dangling_citations),
            "authors_without_records": len(self.authors_without_records),
            "advisor_cycles": len(self.advisor_cycles),
        }


def _iter_lines(data: CorpusInput) -> Iterator[str]:
    if isinstance(data, bytes):
        yield from io.StringIO(data.decode("utf-8"))
    elif isinstance(data, str):
        yield from io.StringIO(data)
    elif hasattr(data, "read"):
        for line in data:
            yield line.decode("utf-8") if isinstance(line, bytes) else line
    else:
        yield from data


def _require_str(obj: dict, key: str, line_no: int, *, optional: bool = False) -> str | None:
    value = obj.get(key)
    if value is None:
        if optional:
            return None
        raise MalformedRecord(line_no, f"missing required field {key!r}")
    if not isinstance(value, str):
        raise MalformedRecord(line_no, f"field {key!r} must be a string")
    if not value and not optional:
        raise MalformedRecord(line_no, f"field {key!r} must be non-empty")
    return value


def _str_list(obj: dict, key: str, line_no: int) -> list[str]:
    value = obj.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise MalformedRecord(line_no, f"field {key!r} must be a list of strings")
    return value


def _parse_author(obj: dict, line_no: int) -> AuthorRecord:
    author_id = _require_str(obj, "id", line_no)
    name = _require_str(obj, "name", line_no)
    advisor = _require_str(obj, "advisor", line_no, optional=True)
    if advisor == author_id:
        raise MalformedRecord(line_no, "author cannot be their own advisor")
    return AuthorRecord(
        id=author_id,
        display_name=name,
        aliases=frozenset(_str_list(obj, "aliases", line_no)),
        institution=_require_str(obj, "institution", line_no, optional=True),
        advisor_id=advisor,
    )


def _parse_record(obj: dict, line_no: int) -> CollaborationRecord:
    record_id = _require_str(obj, "id", line_no)
    kind = _require_str(obj, "kind", line_no)
    if kind not in RECORD_KINDS:
        raise MalformedRecord(line_no, f"unknown record kind {kind!r}")
    title = _require_str(obj, "title", line_no)
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise MalformedRecord(line_no, "field 'year' must be an integer or null")
    authors = _str_list(obj, "authors", line_no)
    if not authors:
        raise MalformedRecord(line_no, "record must name at least one author")
    if len(set(authors)) != len(authors):
        raise MalformedRecord(line_no, "record author list contains duplicates")
    cites = frozenset(_str_list(obj, "cites", line_no))
    if record_id in cites:
        raise MalformedRecord(line_no, "record cannot cite itself")
    if kind == "credit" and cites:
        raise MalformedRecord(line_no, "credit records carry no citation links")
    citation_count = obj.get("citation_count")
    if citation_count is not None:
        if isinstance(citation_count, bool) or not isinstance(citation_count, int) or citation_count < 0:
            raise MalformedRecord(line_no, "field 'citation_count' must be a non-negative integer")
    return CollaborationRecord(
        id=record_id,
        kind=kind,
        title=title,
        year=year,
        author_ids=tuple(authors),
        venue=_require_str(obj, "venue", line_no, optional=True),
        cites=cites,
        citation_count=citation_count,
    )


def parse_corpus(data: CorpusInput) -> Corpus:
    """Parse line-delimited interchange data into a Corpus.

    Line order is irrelevant: authors may be defined after the records that
    name them. Blank lines are skipped. Raises MalformedRecord, DuplicateId,
    or DanglingAuthor as appropriate.
    """
    authors: dict[str, AuthorRecord] = {}
    records: dict[str, CollaborationRecord] = {}
    for line_no, line in enumerate(_iter_lines(data), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(line_no, f"invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise MalformedRecord(line_no, "line is not a JSON object")
        line_type = obj.get("type")
        if line_type == "author":
            author = _parse_author(obj, line_no)
            if author.id in authors:
                raise DuplicateId(f"author {author.id!r} defined twice")
            authors[author.id] = author
        elif line_type == "record":
            record = _parse_record(obj, line_no)
            if record.id in records:
                raise DuplicateId(f"record {record.id!r} defined twice")
            records[record.id] = record
        else:
            raise MalformedRecord(line_no, f"unknown line type {line_type!r}")

    for record in records.values():
        for author_id in record.author_ids:
            if author_id not in authors:
                raise DanglingAuthor(f"record {record.id!r} names unknown author {author_id!r}")
    for author in authors.values():
        if author.advisor_id is not None and author.advisor_id not in authors:
            raise DanglingAuthor(f"author {author.id!r} names unknown advisor {author.advisor_id!r}")

    return Corpus(
        authors={k: authors[k] for k in sorted(authors)},
        records={k: records[k] for k in sorted(records)},
    )


def _author_line(author: AuthorRecord) -> dict:
    obj: dict = {"type": "author", "id": author.id, "name": author.display_name}
    if author.aliases:
        obj["aliases"] = sorted(author.aliases)
    if author.institution is not None:
        obj["institution"] = author.institution
    if author.advisor_id is not None:
        obj["advisor"] = author.advisor_id
    return obj


def _record_line(record: CollaborationRecord) -> dict:
    obj: dict = {
        "type": "record",
        "id": record.id,
        "kind": record.kind,
        "title": record.title,
        "year": record.year,
        "authors": list(record.author_ids),
    }
    if record.venue is not None:
        obj["venue"] = record.venue
    if record.cites:
        obj["cites"] = sorted(record.cites)
    if record.citation_count is not None:
        obj["citation_count"] = record.citation_count
    return obj


def serialize_corpus(corpus: Corpus) -> bytes:
    """Write a corpus back to interchange lines. Output is byte-stable:
    authors then records, each in ascending-id order."""
    out = io.StringIO()
    for author_id in sorted(corpus.authors):
        out.write(json.dumps(_author_line(corpus.authors[author_id]), ensure_ascii=False))
        out.write("\n")
    for record_id in sorted(corpus.records):
        out.write(json.dumps(_record_line(corpus.records[record_id]), ensure_ascii=False))
        out.write("\n")
    return out.getvalue().encode("utf-8")


def merge_authors(corpus: Corpus, canonical: str, duplicates: Iterable[str]) -> Corpus:
    """Fold duplicate author identities into one canonical author.

    Record author lists and advisor links pointing at a duplicate are
    rewritten to the canonical id (deduplicating within a record's list, a
    person cannot co-author with themselves). The duplicates' display names
    and aliases become aliases of the canonical author. An advisor link that
    would end up self-referential after the merge is dropped.
    """
    dup_ids = list(duplicates)
    if canonical not in corpus.authors:
        raise UnknownAuthor(canonical)
    for dup in dup_ids:
        if dup not in corpus.authors:
            raise UnknownAuthor(dup)
    if canonical in dup_ids:
        raise ValueError("canonical id listed among duplicates")
    if not dup_ids:
        return corpus

    dup_set = set(dup_ids)

    def remap(author_id: str) -> str:
        return canonical if author_id in dup_set else author_id

    target = corpus.authors[canonical]
    folded = set(target.aliases)
    for dup in dup_ids:
        author = corpus.authors[dup]
        folded.add(author.display_name)
        folded.update(author.aliases)
    folded.discard(target.display_name)

    advisor = remap(target.advisor_id) if target.advisor_id else None
    if advisor == canonical:
        advisor = None
    new_authors: dict[str, AuthorRecord] = {}
    for author_id, author in corpus.authors.items():
        if author_id in dup_set:
            continue
        if author_id == canonical:
            new_authors[author_id] = replace(author, aliases=frozenset(folded), advisor_id=advisor)
            continue
        if author.advisor_id in dup_set:
            new_authors[author_id] = replace(author, advisor_id=canonical)
        else:
            new_authors[author_id] = author

    new_records: dict[str, CollaborationRecord] = {}
    for record_id, record in corpus.records.items():
        remapped = [remap(a) for a in record.author_ids]
        deduped = tuple(dict.fromkeys(remapped))
        if deduped != record.author_ids:
            record = replace(record, author_ids=deduped)
        new_records[record_id] = record

    return Corpus(authors=new_authors, records=new_records)


def snapshot_by_year(corpus: Corpus, cutoff: int) -> Corpus:
    """Restrict the corpus to records with a known year <= cutoff.

    Records of unknown year are excluded. All authors are retained and each
    surviving record's cites set is pruned to surviving records.
    """
    kept = {
        record_id: record
        for record_id, record in corpus.records.items()
        if record.year is not None and record.year <= cutoff
    }
    pruned: dict[str, CollaborationRecord] = {}
    for record_id, record in kept.items():
        surviving = frozenset(c for c in record.cites if c in kept)
        pruned[record_id] = record if surviving == record.cites else replace(record, cites=surviving)
    return Corpus(authors=dict(corpus.authors), records=pruned)


def _advisor_cycles(corpus: Corpus) -> tuple[tuple[str, ...], ...]:
    # Each author has at most one advisor, so the advisor links form a
    # functional graph; every cycle is found by walking until repetition.
    state: dict[str, int] = {}  # 0 visiting, 1 done
    cycles: list[tuple[str, ...]] = []
    for start in sorted(corpus.authors):
        path: list[str] = []
        node: str | None = start
        while node is not None and node not in state:
            state[node] = 0
            path.append(node)
            node = corpus.authors[node].advisor_id
        if node is not None and state[node] == 0:
            cycle = path[path.index(node):]
            pivot = cycle.index(min(cycle))
            cycles.append(tuple(cycle[pivot:] + cycle[:pivot]))
        for seen in path:
            state[seen] = 1
    return tuple(cycles)


def validate(corpus: Corpus) -> ValidationReport:
    """Report structural oddities without modifying or rejecting the corpus."""
    dangling = []
    cited_authors: set[str] = set()
    for record_id in sorted(corpus.records):
        record = corpus.records[record_id]
        cited_authors.update(record.author_ids)
        for cited in sorted(record.cites):
            if cited not in corpus.records:
                dangling.append((record_id, cited))
    without_records = tuple(a for a in sorted(corpus.authors) if a not in cited_authors)
    return ValidationReport(
        dangling_citations=tuple(dangling),
        authors_without_records=without_records,
        advisor_cycles=_advisor_cycles(corpus),
    )
