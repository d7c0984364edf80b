"""HTTP adapter over the request router.

A threading server gives the many-readers/one-writer model for free: each
request runs on its own thread against whichever corpus view it captured.
When a static directory is configured (the bundled web client), any GET the
router does not recognise falls back to a file lookup there.
"""

from __future__ import annotations

import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qsl, unquote, urlsplit

from .service import ApiRequest, EngineState, handle_request

JSON_TYPE = "application/json; charset=utf-8"


class EngineHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(
        self,
        address: tuple[str, int],
        state: EngineState,
        static_dir: str | Path | None = None,
    ):
        self.state = state
        self.static_dir = Path(static_dir).resolve() if static_dir else None
        super().__init__(address, _Handler)


class _Handler(BaseHTTPRequestHandler):
    server: EngineHTTPServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args) -> None:
        pass  # keep stdout clean; the CLI prints the bound address once

    def _send(self, status: int, payload: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def _handle(self, method: str) -> None:
        parts = urlsplit(self.path)
        query = dict(parse_qsl(parts.query, keep_blank_values=True))
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length) if length else b""
        path = unquote(parts.path)
        response = handle_request(
            self.server.state, ApiRequest(method=method, path=path, query=query, body=body)
        )
        unrouted = response.status == 404 and response.body.get("code") == "not_found"
        if unrouted and method == "GET" and self._serve_static(path):
            return
        self._send(response.status, response.to_bytes(), JSON_TYPE)

    def _serve_static(self, path: str) -> bool:
        root = self.server.static_dir
        if root is None:
            return False
        candidate = (root / (path.lstrip("/") or "index.html")).resolve()
        if not candidate.is_relative_to(root) or not candidate.is_file():
            return False
        ctype = mimetypes.guess_type(candidate.name)[0] or "application/octet-stream"
        if ctype.startswith("text/") or ctype == "application/javascript":
            ctype += "; charset=utf-8"
        self._send(200, candidate.read_bytes(), ctype)
        return True

    def do_GET(self) -> None:
        self._handle("GET")

    def do_POST(self) -> None:
        self._handle("POST")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()


def serve(
    state: EngineState,
    host: str = "127.0.0.1",
    port: int = 8080,
    static_dir: str | Path | None = None,
) -> EngineHTTPServer:
    """Bind a server around the state; caller drives serve_forever/shutdown."""
    return EngineHTTPServer((host, port), state, static_dir)
