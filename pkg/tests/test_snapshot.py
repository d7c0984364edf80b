from __future__ import annotations

import hashlib
import json

import pytest

from collabgraph import serialize_corpus
from collabgraph.errors import CorruptSnapshot, VersionMismatch
from collabgraph.interface import EngineState, load_state, save_state
from collabgraph.interface.snapshot import MAGIC, _section


def _state(corpus) -> EngineState:
    state = EngineState()
    state.replace_corpus(corpus)
    state.replace_corpus(corpus)
    return state  # version counter is now 2


def _craft(header: dict, payload: bytes, path) -> None:
    body = MAGIC + _section(json.dumps(header).encode()) + _section(payload)
    path.write_bytes(body + hashlib.sha256(body).digest())


def test_round_trip_preserves_corpus_and_version(corpus, tmp_path) -> None:
    path = tmp_path / "engine.snap"
    save_state(_state(corpus), path)
    loaded = load_state(path)
    assert loaded.version == 2
    assert serialize_corpus(loaded.view.corpus) == serialize_corpus(corpus)


def test_snapshot_bytes_are_stable(corpus, tmp_path) -> None:
    a, b = tmp_path / "a.snap", tmp_path / "b.snap"
    save_state(_state(corpus), a)
    save_state(_state(corpus), b)
    assert a.read_bytes() == b.read_bytes()


def test_empty_state_round_trips(tmp_path) -> None:
    path = tmp_path / "empty.snap"
    save_state(EngineState(), path)
    loaded = load_state(path)
    assert loaded.version == 0
    assert len(loaded.view.corpus.authors) == 0


def test_truncated_file_rejected(corpus, tmp_path) -> None:
    path = tmp_path / "cut.snap"
    save_state(_state(corpus), path)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) // 2])
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_too_short_file_rejected(tmp_path) -> None:
    path = tmp_path / "tiny.snap"
    path.write_bytes(b"CGSNAP1\n")
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_bad_magic_rejected(corpus, tmp_path) -> None:
    path = tmp_path / "magic.snap"
    save_state(_state(corpus), path)
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_flipped_payload_byte_fails_checksum(corpus, tmp_path) -> None:
    path = tmp_path / "flip.snap"
    save_state(_state(corpus), path)
    data = bytearray(path.read_bytes())
    data[len(data) // 2] ^= 0x01
    path.write_bytes(bytes(data))
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_future_schema_rejected_as_version_mismatch(corpus, tmp_path) -> None:
    path = tmp_path / "future.snap"
    _craft({"schema": 99, "corpus_version": 1}, serialize_corpus(corpus), path)
    with pytest.raises(VersionMismatch):
        load_state(path)


def test_unreadable_header_rejected(corpus, tmp_path) -> None:
    path = tmp_path / "header.snap"
    body = MAGIC + _section(b"{not json") + _section(serialize_corpus(corpus))
    path.write_bytes(body + hashlib.sha256(body).digest())
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_bad_corpus_payload_rejected(tmp_path) -> None:
    path = tmp_path / "payload.snap"
    _craft({"schema": 1, "corpus_version": 1}, b"{\"type\": \"nonsense\"}", path)
    with pytest.raises(CorruptSnapshot):
        load_state(path)


def test_missing_second_section_rejected(tmp_path) -> None:
    path = tmp_path / "sections.snap"
    body = MAGIC + _section(json.dumps({"schema": 1}).encode())
    path.write_bytes(body + hashlib.sha256(body).digest())
    with pytest.raises(CorruptSnapshot):
        load_state(path)
