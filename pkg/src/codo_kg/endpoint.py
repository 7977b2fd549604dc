"""Read-only SPARQL query endpoint over a materialized graph.

``GET /sparql?query=...`` and ``POST /sparql`` (body as
``application/sparql-query`` or a form field ``query``) answer with SPARQL
JSON results.  ``GET /health`` answers ``ok``.
"""

from __future__ import annotations

import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .errors import QuerySyntaxError
from .graph import Graph
from .query import parse_query, evaluate, to_json_results

log = logging.getLogger(__name__)

RESULTS_TYPE = "application/sparql-results+json; charset=utf-8"
DEFAULT_MAX_CONCURRENT = 16
# how long a request may wait for a free evaluation slot before getting 503
DEFAULT_QUEUE_TIMEOUT = 5.0


class SparqlServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, graph: Graph, max_concurrent: int = DEFAULT_MAX_CONCURRENT,
                 queue_timeout: float = DEFAULT_QUEUE_TIMEOUT):
        super().__init__(address, _Handler)
        self.graph = graph
        self.slots = threading.BoundedSemaphore(max_concurrent)
        self.queue_timeout = queue_timeout

    @property
    def port(self) -> int:
        return self.server_address[1]

    def answer(self, text: str) -> tuple[int, str, str]:
        """(status, content type, body) for one query string."""
        if not text or not text.strip():
            return 400, "text/plain; charset=utf-8", "missing query\n"
        try:
            ast = parse_query(text)
        except QuerySyntaxError as exc:
            return 400, "text/plain; charset=utf-8", f"{exc}\n"
        if not self.slots.acquire(timeout=self.queue_timeout):
            return 503, "text/plain; charset=utf-8", "too many concurrent queries\n"
        try:
            return 200, RESULTS_TYPE, to_json_results(evaluate(ast, self.graph))
        finally:
            self.slots.release()


class _Handler(BaseHTTPRequestHandler):
    server: SparqlServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        log.debug("%s " + fmt, self.address_string(), *args)

    def send(self, status: int, content_type: str, body: str) -> None:
        data = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        url = urlsplit(self.path)
        if url.path == "/health":
            self.send(200, "text/plain; charset=utf-8", "ok")
        elif url.path == "/sparql":
            query = parse_qs(url.query).get("query", [""])[0]
            self.send(*self.server.answer(query))
        else:
            self.send(404, "text/plain; charset=utf-8", "not found\n")

    def do_POST(self):
        url = urlsplit(self.path)
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length).decode("utf-8", errors="replace")
        if url.path != "/sparql":
            self.send(404, "text/plain; charset=utf-8", "not found\n")
            return
        content_type = (self.headers.get("Content-Type") or "").split(";")[0].strip().lower()
        if content_type == "application/x-www-form-urlencoded":
            query = parse_qs(body).get("query", [""])[0]
        elif content_type in ("application/sparql-query", "text/plain", ""):
            query = body
        else:
            self.send(415, "text/plain; charset=utf-8", f"unsupported content type {content_type}\n")
            return
        self.send(*self.server.answer(query))


def make_server(graph: Graph, host: str = "127.0.0.1", port: int = 0,
                max_concurrent: int = DEFAULT_MAX_CONCURRENT,
                queue_timeout: float = DEFAULT_QUEUE_TIMEOUT) -> SparqlServer:
    """Bind a server (port 0 picks a free port); call ``serve_forever`` to run it."""
    return SparqlServer((host, port), graph, max_concurrent, queue_timeout)
