"""Operational shell: HTTP query service, persistence, CLI, and exporters."""

from .export import EXPORT_FORMATS, export_graph, import_graphml
from .httpd import EngineHTTPServer, serve
from .service import ApiRequest, ApiResponse, EngineState, handle_request
from .snapshot import load_state, save_state

__all__ = [
    "ApiRequest",
    "ApiResponse",
    "EngineHTTPServer",
    "EngineState",
    "EXPORT_FORMATS",
    "export_graph",
    "handle_request",
    "import_graphml",
    "load_state",
    "save_state",
    "serve",
]
