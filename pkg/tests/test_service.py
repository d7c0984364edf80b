from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request

import pytest

from collabgraph import parse_corpus
from collabgraph.interface import ApiRequest, EngineState, handle_request, serve


@pytest.fixture()
def state(fixture_bytes) -> EngineState:
    engine = EngineState()
    engine.replace_corpus(parse_corpus(fixture_bytes))
    return engine


def _get(state: EngineState, path: str, **query: str):
    return handle_request(state, ApiRequest("GET", path, query))


def _author_lines(*ids: str) -> list[str]:
    return [json.dumps({"type": "author", "id": i, "name": i.title()}) for i in ids]


def _record_line(record_id: str, authors: list[str], **extra) -> str:
    return json.dumps(
        {
            "type": "record",
            "id": record_id,
            "kind": "publication",
            "title": record_id,
            "authors": authors,
            **extra,
        }
    )


def test_upload_bumps_version_and_reports_sizes(fixture_bytes) -> None:
    state = EngineState()
    first = handle_request(state, ApiRequest("POST", "/corpus", body=fixture_bytes))
    assert first.status == 200
    assert first.body == {"version": 1, "authors": 17, "records": 11}
    second = handle_request(state, ApiRequest("POST", "/corpus", body=fixture_bytes))
    assert second.body["version"] == 2


def test_rejected_upload_keeps_previous_corpus(state) -> None:
    bad = handle_request(state, ApiRequest("POST", "/corpus", body=b'{"type": "author"}'))
    assert bad.status == 422
    assert bad.body["code"] == "invalid_corpus"
    assert bad.body["version"] == 1
    after = _get(state, "/authors/erdos")
    assert after.status == 200
    assert after.body["version"] == 1


def test_unknown_routes_and_methods_return_404(state) -> None:
    for request in (
        ApiRequest("GET", "/nope"),
        ApiRequest("GET", "/authors/erdos/metrics/extra"),
        ApiRequest("POST", "/distance"),
        ApiRequest("DELETE", "/corpus"),
    ):
        response = handle_request(state, request)
        assert response.status == 404
        assert response.body["code"] == "not_found"
        assert response.body["version"] == 1


def test_every_response_carries_the_version_tag(state) -> None:
    paths = [
        "/authors",
        "/authors/erdos",
        "/authors/erdos/metrics",
        "/unknown",
    ]
    for path in paths:
        assert "version" in handle_request(state, ApiRequest("GET", path)).body


def test_search_matches_names_and_aliases_case_insensitively(state) -> None:
    response = _get(state, "/authors", q="ERD")
    ids = [m["id"] for m in response.body["matches"]]
    assert ids == ["erdos"]
    alias_hit = _get(state, "/authors", q="a. m. tur")
    assert [m["id"] for m in alias_hit.body["matches"]] == ["turing"]
    assert alias_hit.body["matches"][0]["display_name"] == "Alan Turing"


def test_search_without_query_returns_no_matches(state) -> None:
    assert _get(state, "/authors").body["matches"] == []
    assert _get(state, "/authors", q="").body["matches"] == []


def test_author_card_fields(state) -> None:
    response = _get(state, "/authors/turing")
    assert response.status == 200
    assert response.body["author"] == {
        "id": "turing",
        "display_name": "Alan Turing",
        "aliases": ["A. M. Turing"],
        "institution": "Princeton University",
        "advisor_id": "church",
        "records": 1,
    }
    missing = _get(state, "/authors/nobody")
    assert missing.status == 404
    assert missing.body["code"] == "unknown_author"


def test_metrics_defaults_to_cumulative(state) -> None:
    response = _get(state, "/authors/wilson/metrics")
    body = response.body
    assert (body["h"], body["g"], body["i10"]) == (1, 1, 0)
    assert body["citation_source"] == "in_corpus"
    assert body["series"]["mode"] == "cumulative"
    annual = _get(state, "/authors/wilson/metrics", mode="annual")
    assert annual.body["series"]["mode"] == "annual"
    bad = _get(state, "/authors/wilson/metrics", mode="weekly")
    assert bad.status == 400
    assert bad.body["code"] == "bad_parameter"
    unknown = _get(state, "/authors/nobody/metrics")
    assert unknown.status == 404
    assert unknown.body["code"] == "unknown_author"


def test_distance_body_contains_known_hops(state) -> None:
    response = _get(state, "/distance", root="erdos")
    assert response.status == 200
    assert b'"wilson":1,"bowen":2' in response.to_bytes()
    assert response.body["distances"]["erdos"] == 0
    assert "kleene" not in response.body["distances"]
    assert _get(state, "/distance").status == 400
    assert _get(state, "/distance", root="nobody").status == 404


def test_paths_between_fixture_authors(state) -> None:
    response = _get(state, "/paths", **{"from": "erdos", "to": "bowen"})
    assert response.body["distance"] == 2
    assert response.body["paths"][0] == ["erdos", "wilson", "bowen"]
    assert response.body["labels"]["wilson"] == "Robin J. Wilson"


def test_paths_parameter_validation(state) -> None:
    base = {"from": "erdos", "to": "bowen"}
    assert _get(state, "/paths", **{**base, "max": "0"}).status == 400
    assert _get(state, "/paths", **{**base, "slack": "-1"}).status == 400
    assert _get(state, "/paths", **{**base, "max": "six"}).status == 400
    same = _get(state, "/paths", **{"from": "erdos", "to": "erdos"})
    assert same.status == 400
    assert _get(state, "/paths", **{"from": "erdos"}).status == 400
    assert _get(state, "/paths", **{"from": "erdos", "to": "nobody"}).status == 404


def test_paths_between_disconnected_authors(state) -> None:
    response = _get(state, "/paths", **{"from": "hanks", "to": "church"})
    assert response.status == 200
    assert response.body["distance"] is None
    assert response.body["paths"] == []


def test_ego_view_fields(state) -> None:
    response = _get(state, "/ego", author="bowen")
    neighbours = response.body["ego"]["neighbours"]
    assert [n["id"] for n in neighbours] == ["borda", "hinchey", "reeves", "wilson"]
    assert all(n["count"] == 1 for n in neighbours)
    assert response.body["layout"]["idiom"] == "ego"
    assert response.body["labels"]["bowen"] == "Jonathan P. Bowen"
    assert _get(state, "/ego", author="bowen", k="0").status == 400
    assert _get(state, "/ego", author="bowen", k="x").status == 400
    assert _get(state, "/ego", author="nobody").status == 404
    assert _get(state, "/ego").status == 400


def test_ego_k_truncates(state) -> None:
    response = _get(state, "/ego", author="bowen", k="2")
    assert [n["id"] for n in response.body["ego"]["neighbours"]] == ["borda", "hinchey"]


def test_citers_view(state) -> None:
    response = _get(state, "/citers", author="erdos")
    assert response.body["citers"] == [
        {"id": "wilson", "count": 2},
        {"id": "bowen", "count": 1},
        {"id": "grant", "count": 1},
    ]
    assert response.body["layout"]["idiom"] == "citation"
    uncited = _get(state, "/citers", author="hanks")
    assert uncited.body["citers"] == []
    assert [n["id"] for n in uncited.body["layout"]["nodes"]] == ["hanks"]


def test_genealogy_view_groups_and_labels(state) -> None:
    response = _get(state, "/genealogy", root="church")
    nodes = {n["id"] for n in response.body["layout"]["nodes"]}
    inst = "inst:church:Princeton University"
    assert inst in nodes
    assert response.body["labels"][inst] == "Princeton University"
    assert response.body["labels"]["gandy"] == "Robin Gandy"
    ungrouped = _get(state, "/genealogy", root="church", threshold="6")
    assert not any(
        n["id"].startswith("inst:") for n in ungrouped.body["layout"]["nodes"]
    )
    assert _get(state, "/genealogy", root="church", threshold="0").status == 400


def test_genealogy_for_author_without_links_is_a_single_node(state) -> None:
    response = _get(state, "/genealogy", root="erdos")
    assert response.status == 200
    assert [n["id"] for n in response.body["layout"]["nodes"]] == ["erdos"]
    assert response.body["labels"] == {"erdos": "Paul Erdős"}
    assert _get(state, "/genealogy", root="nobody").status == 404


def test_communities_are_seed_deterministic(state) -> None:
    first = _get(state, "/communities", seed="7")
    second = _get(state, "/communities", seed="7")
    assert first.to_bytes() == second.to_bytes()
    body = first.body
    assert body["seed"] == 7
    assert body["converged"] is True
    assert set(body["labels"]) == set(body["colors"])
    assert all(body["colors"][v] == body["labels"][v] % 12 for v in body["labels"])
    assert _get(state, "/communities", seed="x").status == 400


def test_force_layout_endpoint(state) -> None:
    response = _get(state, "/layout/force", seed="3", iterations="50")
    assert response.body["seed"] == 3
    assert response.body["iterations"] == 50
    assert response.body["layout"]["idiom"] == "force"
    assert len(response.body["layout"]["nodes"]) == 17
    again = _get(state, "/layout/force", seed="3", iterations="50")
    assert response.to_bytes() == again.to_bytes()
    assert _get(state, "/layout/force", iterations="-1").status == 400


def test_force_layout_pins(state) -> None:
    pins = json.dumps({"erdos": [5.0, -3.5]})
    response = _get(state, "/layout/force", iterations="10", pins=pins)
    node = next(n for n in response.body["layout"]["nodes"] if n["id"] == "erdos")
    assert (node["x"], node["y"]) == (5.0, -3.5)
    assert _get(state, "/layout/force", pins="not json").status == 400
    assert _get(state, "/layout/force", pins='{"nobody": [0, 0]}').status == 400
    assert _get(state, "/layout/force", pins='{"erdos": [1]}').status == 400
    assert _get(state, "/layout/force", pins='{"erdos": [1, true]}').status == 400
    assert _get(state, "/layout/force", pins='["erdos"]').status == 400


def test_genealogy_cycle_reported_as_unprocessable() -> None:
    lines = [
        json.dumps({"type": "author", "id": "a", "name": "A", "advisor": "b"}),
        json.dumps({"type": "author", "id": "b", "name": "B", "advisor": "a"}),
    ]
    state = EngineState()
    state.replace_corpus(parse_corpus("\n".join(lines)))
    response = _get(state, "/genealogy", root="a")
    assert response.status == 422
    assert response.body["code"] == "advisor_cycle"


def test_readers_see_one_consistent_version_during_uploads() -> None:
    # Corpus generation n links a-b only when n is odd; readers must never
    # observe a distance map that disagrees with the version they were told.
    def corpus_bytes(linked: bool) -> bytes:
        lines = _author_lines("a", "b")
        if linked:
            lines.append(_record_line("r", ["a", "b"]))
        return "\n".join(lines).encode()

    state = EngineState()
    state.replace_corpus(parse_corpus(corpus_bytes(True)))  # version 1: linked
    stop = threading.Event()
    failures: list[str] = []

    def reader() -> None:
        while not stop.is_set():
            body = _get(state, "/distance", root="a").body
            linked = body["distances"].get("b") == 1
            if linked != (body["version"] % 2 == 1):
                failures.append(f"version {body['version']} served wrong graph")
                return

    threads = [threading.Thread(target=reader) for _ in range(4)]
    for t in threads:
        t.start()
    for version in range(2, 40):
        response = handle_request(
            state, ApiRequest("POST", "/corpus", body=corpus_bytes(version % 2 == 1))
        )
        assert response.body["version"] == version
    stop.set()
    for t in threads:
        t.join()
    assert failures == []


def test_http_server_round_trip(state, tmp_path) -> None:
    static = tmp_path / "web"
    static.mkdir()
    (static / "index.html").write_text("<h1>explorer</h1>", encoding="utf-8")
    server = serve(state, host="127.0.0.1", port=0, static_dir=static)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        with urllib.request.urlopen(f"{base}/distance?root=erdos") as response:
            assert response.status == 200
            assert response.headers["Access-Control-Allow-Origin"] == "*"
            assert response.headers["Content-Type"] == "application/json; charset=utf-8"
            payload = json.loads(response.read())
        assert payload["distances"]["bowen"] == 2

        upload = urllib.request.Request(
            f"{base}/corpus", data=b'{"type": "author", "id": "solo", "name": "Solo"}',
            method="POST",
        )
        with urllib.request.urlopen(upload) as response:
            assert json.loads(response.read())["version"] == 2

        with urllib.request.urlopen(f"{base}/") as response:
            assert response.read() == b"<h1>explorer</h1>"
            assert response.headers["Content-Type"].startswith("text/html")

        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(f"{base}/missing-page")
        assert err.value.code == 404
        assert json.loads(err.value.read())["code"] == "not_found"

        preflight = urllib.request.Request(f"{base}/corpus", method="OPTIONS")
        with urllib.request.urlopen(preflight) as response:
            assert response.status == 204
    finally:
        server.shutdown()
        server.server_close()
        thread.join()


def test_http_static_lookup_cannot_escape_the_root(state, tmp_path) -> None:
    static = tmp_path / "web"
    static.mkdir()
    (static / "index.html").write_text("ok", encoding="utf-8")
    secret = tmp_path / "secret.txt"
    secret.write_text("keep out", encoding="utf-8")
    server = serve(state, host="127.0.0.1", port=0, static_dir=static)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(f"{base}/%2e%2e/secret.txt")
        assert err.value.code == 404
    finally:
        server.shutdown()
        server.server_close()
        thread.join()
