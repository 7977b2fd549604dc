import json
import threading
import urllib.error
import urllib.parse
import urllib.request
from concurrent.futures import ThreadPoolExecutor

import pytest

from codo_kg.competency import CONTACTS_QUERY
from codo_kg.endpoint import RESULTS_TYPE, make_server
from codo_kg.query import run_query, to_json_results


@pytest.fixture
def server(closed_fixture):
    graph, _ = closed_fixture
    srv = make_server(graph)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()


def url(srv, path):
    return f"http://127.0.0.1:{srv.port}{path}"


def get(srv, query):
    with urllib.request.urlopen(url(srv, "/sparql?" + urllib.parse.urlencode({"query": query}))) as resp:
        return resp.status, resp.headers["Content-Type"], resp.read().decode("utf-8")


def post(srv, body, content_type):
    req = urllib.request.Request(url(srv, "/sparql"), data=body.encode("utf-8"),
                                 headers={"Content-Type": content_type})
    with urllib.request.urlopen(req) as resp:
        return resp.status, resp.read().decode("utf-8")


def test_get_matches_local_evaluation(server, closed_fixture):
    status, ctype, body = get(server, CONTACTS_QUERY)
    assert status == 200 and ctype == RESULTS_TYPE
    assert body == to_json_results(run_query(CONTACTS_QUERY, closed_fixture[0]))


def test_post_variants(server):
    _, direct = post(server, CONTACTS_QUERY, "application/sparql-query")
    _, form = post(server, urllib.parse.urlencode({"query": CONTACTS_QUERY}), "application/x-www-form-urlencoded")
    assert direct == form
    assert len(json.loads(direct)["results"]["bindings"]) == 7


@pytest.mark.parametrize("query, status", [
    ("", 400), ("SELECT ?s WHERE { ?s ?p }", 400), ("SELECT ?s WHERE { ?s zz:a ?o }", 400)])
def test_bad_requests(server, query, status):
    with pytest.raises(urllib.error.HTTPError) as info:
        get(server, query)
    assert info.value.code == status


def test_unsupported_media_type(server):
    with pytest.raises(urllib.error.HTTPError) as info:
        post(server, "{}", "application/json")
    assert info.value.code == 415


def test_health_and_404(server):
    with urllib.request.urlopen(url(server, "/health")) as resp:
        assert resp.read() == b"ok"
    with pytest.raises(urllib.error.HTTPError) as info:
        urllib.request.urlopen(url(server, "/elsewhere"))
    assert info.value.code == 404


def test_concurrent_queries_agree(server):
    with ThreadPoolExecutor(max_workers=50) as pool:
        bodies = list(pool.map(lambda _: get(server, CONTACTS_QUERY)[2], range(50)))
    assert len(set(bodies)) == 1


def test_saturated_server_answers_503(closed_fixture):
    srv = make_server(closed_fixture[0], max_concurrent=1, queue_timeout=0.05)
    srv.slots.acquire()
    try:
        status, _, _ = srv.answer(CONTACTS_QUERY)
        assert status == 503
    finally:
        srv.slots.release()
        srv.server_close()
