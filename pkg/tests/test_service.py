import itertools

import pytest
from fastapi.testclient import TestClient

from conftest import DUNEDIN_SENTENCE, DUNEDIN_TERM_VALUES, GOLDEN_SENTENCE, GOLDEN_TREE
from reqlens.service import create_app

_ids = itertools.count(1)


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as client:
        yield client


@pytest.fixture
def project(client):
    project_id = f"proj-{next(_ids)}"
    response = client.post("/projects", json={"project_id": project_id})
    assert response.status_code == 201
    return project_id


def test_create_project_and_fetch_summary(client, project):
    assert client.post("/projects", json={"project_id": project}).status_code == 409
    response = client.get(f"/projects/{project}")
    assert response.status_code == 200
    body = response.json()
    assert body["project_id"] == project
    assert body["documents"] == []
    assert body["sentence_count"] == 0


def test_unknown_project_is_404(client):
    assert client.get("/projects/nope").status_code == 404
    assert client.post("/projects/nope/terms/x/filter").status_code == 404


def test_create_project_requires_project_id(client):
    assert client.post("/projects", json={}).status_code == 422


def test_document_upload_reports_sentences_and_unparsed(client, project):
    body = f"{GOLDEN_SENTENCE} He see a car in the park."
    response = client.post(f"/projects/{project}/documents", json={"title": "spec", "text": body})
    assert response.status_code == 201
    data = response.json()
    assert data["doc_id"] == "doc-1"
    assert data["sentence_count"] == 2
    assert data["unparsed_indices"] == [1]
    summary = client.get(f"/projects/{project}").json()
    assert summary["documents"] == [{"doc_id": "doc-1", "title": "spec", "sentence_count": 2}]


def test_terms_listing_and_status_filter(client, project):
    client.post(f"/projects/{project}/documents", json={"title": "d", "text": DUNEDIN_SENTENCE})
    response = client.get(f"/projects/{project}/terms")
    assert response.status_code == 200
    terms = response.json()["terms"]
    assert {t["value"] for t in terms} == DUNEDIN_TERM_VALUES
    displays = {t["value"]: t["display"] for t in terms}
    assert displays["details"] == "(patient's) details"

    client.post(f"/projects/{project}/terms/entry/filter")
    pending = client.get(f"/projects/{project}/terms", params={"status": "pending"}).json()["terms"]
    assert {t["value"] for t in pending} == DUNEDIN_TERM_VALUES - {"entry"}
    assert client.get(f"/projects/{project}/terms", params={"status": "odd"}).status_code == 400


def test_sentence_tree_endpoint(client, project):
    client.post(f"/projects/{project}/documents", json={"title": "d", "text": GOLDEN_SENTENCE})
    response = client.get(f"/projects/{project}/sentences/0/tree")
    assert response.status_code == 200
    data = response.json()
    assert data["tree"] == GOLDEN_TREE
    assert data["tree_count"] == 1
    assert data["text"] == GOLDEN_SENTENCE
    assert client.get(f"/projects/{project}/sentences/9/tree").status_code == 404


def test_term_state_transitions_over_http(client, project):
    client.post(f"/projects/{project}/documents", json={"title": "d", "text": GOLDEN_SENTENCE})
    base = f"/projects/{project}/terms"
    assert client.post(f"{base}/entry/classify", json={"type": "FUNCTION"}).status_code == 200
    assert client.post(f"{base}/entry/filter").status_code == 409
    assert client.post(f"{base}/entry/declassify").status_code == 200
    assert client.post(f"{base}/entry/filter").status_code == 200
    assert client.post(f"{base}/entry/classify", json={"type": "FUNCTION"}).status_code == 409
    assert client.post(f"{base}/entry/unfilter").status_code == 200
    assert client.post(f"{base}/ghost/filter").status_code == 404
    assert client.post(f"{base}/entry/classify", json={"type": "WIDGET"}).status_code == 400


def test_conflict_flow_and_export(client, project):
    docs = f"/projects/{project}/documents"
    client.post(docs, json={"title": "one", "text": "The system requires entry of the patient."})
    client.post(docs, json={"title": "two", "text": "The entry sees the age."})
    base = f"/projects/{project}/terms"
    client.post(f"{base}/entry/classify", json={"type": "FUNCTION"})
    client.post(f"{base}/patient/classify", json={"type": "ENTITY"})
    client.post(f"{base}/age/classify", json={"type": "ATTRIBUTE"})
    client.post(f"{base}/entry/classify", json={"type": "ENTITY"})

    conflicts = client.get(f"/projects/{project}/conflicts").json()["conflicts"]
    assert conflicts == [
        {"value": "entry", "types": ["FUNCTION", "ENTITY"], "status": "open", "resolution": None}
    ]
    assert client.get(f"/projects/{project}/export.sexpr").status_code == 409

    response = client.post(
        f"/projects/{project}/conflicts/entry/resolve", json={"type": "FUNCTION"}
    )
    assert response.status_code == 200
    assert response.json()["status"] == "resolved"
    assert client.get(f"/projects/{project}/conflicts").json()["conflicts"][0]["status"] == "resolved"

    export = client.get(f"/projects/{project}/export.sexpr")
    assert export.status_code == 200
    assert export.headers["content-type"].startswith("text/plain")
    assert export.text == (
        '(OBJECT (:TYPE FUNCTION) (:VALUE "entry"))\n'
        '(OBJECT (:TYPE ENTITY) (:VALUE "patient"))\n'
        '(OBJECT (:TYPE ATTRIBUTE) (:VALUE "age"))\n'
    )


def test_resolve_without_conflict_is_404(client, project):
    response = client.post(f"/projects/{project}/conflicts/entry/resolve", json={"type": "FUNCTION"})
    assert response.status_code == 404


def test_document_too_large_is_400(client, project):
    text = "It sees it. " * 501
    response = client.post(f"/projects/{project}/documents", json={"title": "big", "text": text})
    assert response.status_code == 400
    assert "limit" in response.json()["detail"]


def test_terms_with_spaces_work_in_paths(client, project):
    client.post(f"/projects/{project}/documents", json={"title": "d", "text": DUNEDIN_SENTENCE})
    response = client.post(f"/projects/{project}/terms/information%20system/classify",
                           json={"type": "ENTITY"})
    assert response.status_code == 200
    assert response.json()["claims"] == [{"type": "ENTITY", "object_value": "information system"}]


def test_ui_is_served_when_a_build_exists(tmp_path, monkeypatch):
    (tmp_path / "index.html").write_text("<!doctype html><title>reqlens</title>")
    monkeypatch.setenv("REQLENS_UI_DIR", str(tmp_path))
    with TestClient(create_app()) as client:
        response = client.get("/ui/")
        assert response.status_code == 200
        assert "reqlens" in response.text
