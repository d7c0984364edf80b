from __future__ import annotations

from pathlib import Path

import pytest

from collabgraph import Corpus, parse_corpus

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "fixtures" / "collaborations.jsonl"


@pytest.fixture(scope="session")
def fixture_bytes() -> bytes:
    return FIXTURE_PATH.read_bytes()


@pytest.fixture(scope="session")
def corpus(fixture_bytes: bytes) -> Corpus:
    return parse_corpus(fixture_bytes)
