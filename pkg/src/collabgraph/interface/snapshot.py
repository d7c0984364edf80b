"""Engine-state persistence.

Snapshot layout: an 8-byte magic, then length-prefixed sections (4-byte
big-endian length + payload), then a sha256 trailer over everything before
it. Section 1 is a JSON header carrying the snapshot schema version and the
corpus version counter; section 2 is the corpus in interchange form, so a
snapshot stays inspectable with standard tools.
"""

from __future__ import annotations

import hashlib
import json
import struct
from pathlib import Path

from ..corpus import parse_corpus, serialize_corpus
from ..errors import CollabGraphError, CorruptSnapshot, VersionMismatch
from .service import EngineState

MAGIC = b"CGSNAP1\n"
SNAPSHOT_SCHEMA = 1
_CHECKSUM_LEN = 32
_LEN = struct.Struct(">I")


def _section(payload: bytes) -> bytes:
    return _LEN.pack(len(payload)) + payload


def save_state(state: EngineState, path: str | Path) -> None:
    """Write the engine state (corpus + version counter) to a snapshot file."""
    view = state.view
    header = json.dumps(
        {"schema": SNAPSHOT_SCHEMA, "corpus_version": view.version},
        separators=(",", ":"),
    ).encode("utf-8")
    body = MAGIC + _section(header) + _section(serialize_corpus(view.corpus))
    Path(path).write_bytes(body + hashlib.sha256(body).digest())


def _split_sections(body: bytes) -> list[bytes]:
    sections = []
    offset = len(MAGIC)
    while offset < len(body):
        if offset + _LEN.size > len(body):
            raise CorruptSnapshot("truncated section length")
        (length,) = _LEN.unpack_from(body, offset)
        offset += _LEN.size
        if offset + length > len(body):
            raise CorruptSnapshot("section overruns file")
        sections.append(body[offset:offset + length])
        offset += length
    return sections


def load_state(path: str | Path) -> EngineState:
    """Load a snapshot written by :func:`save_state`."""
    raw = Path(path).read_bytes()
    if len(raw) < len(MAGIC) + _CHECKSUM_LEN:
        raise CorruptSnapshot("file too short to be a snapshot")
    body, checksum = raw[:-_CHECKSUM_LEN], raw[-_CHECKSUM_LEN:]
    if not body.startswith(MAGIC):
        raise CorruptSnapshot("bad magic")
    if hashlib.sha256(body).digest() != checksum:
        raise CorruptSnapshot("checksum mismatch")
    sections = _split_sections(body)
    if len(sections) < 2:
        raise CorruptSnapshot("missing sections")
    try:
        header = json.loads(sections[0])
    except json.JSONDecodeError as exc:
        raise CorruptSnapshot("unreadable header") from exc
    schema = header.get("schema")
    if schema != SNAPSHOT_SCHEMA:
        raise VersionMismatch(f"snapshot schema {schema!r}, this build reads {SNAPSHOT_SCHEMA}")
    try:
        corpus = parse_corpus(sections[1])
    except CollabGraphError as exc:
        # The checksum passed, so a bad payload means a writer-side defect.
        raise CorruptSnapshot(f"corpus payload invalid: {exc}") from exc
    return EngineState(corpus, version=int(header.get("corpus_version", 0)))
