import json

import pytest
from fastapi.testclient import TestClient

from newsynth.service import create_app
from newsynth.subtopic.regression import save_model

from conftest import MINI_CONFIG, article_to_record, build_mini_corpus


@pytest.fixture(scope="module")
def service_env(tmp_path_factory, mini_model):
    root = tmp_path_factory.mktemp("service")
    model_path = root / "model.json"
    save_model(mini_model, model_path)
    store_root = root / "store"
    return store_root, model_path


@pytest.fixture(scope="module")
def client(service_env):
    store_root, model_path = service_env
    app = create_app(store_root, model_path, MINI_CONFIG)
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


def create_payload():
    corpus = build_mini_corpus()
    return {
        "topic_name": corpus.topic_name,
        "corpus": [article_to_record(a) for a in corpus.articles],
    }


def create_session(client) -> dict:
    resp = client.post("/v1/sessions", json=create_payload())
    assert resp.status_code == 200, resp.text
    return resp.json()


class TestCreate:
    def test_create_returns_labels(self, client):
        body = create_session(client)
        assert body["stage"] == "LABELS_READY"
        assert 1 <= len(body["labels"]) <= MINI_CONFIG.top_k
        scores = [l["score"] for l in body["labels"]]
        assert scores == sorted(scores, reverse=True)

    def test_empty_corpus_is_400(self, client):
        resp = client.post("/v1/sessions", json={"topic_name": "t", "corpus": []})
        assert resp.status_code == 400
        assert resp.json()["code"] == "empty_corpus"

    def test_corpus_path_and_inline_both_given(self, client):
        payload = create_payload()
        payload["corpus_path"] = "/tmp/x.jsonl"
        resp = client.post("/v1/sessions", json=payload)
        assert resp.status_code == 400

    def test_missing_corpus_file_is_400(self, client):
        resp = client.post(
            "/v1/sessions", json={"topic_name": "t", "corpus_path": "/nope/missing.jsonl"}
        )
        assert resp.status_code == 400

    def test_bad_config_is_400(self, client):
        payload = create_payload()
        payload["config"] = {"damping": 7.0}
        resp = client.post("/v1/sessions", json=payload)
        assert resp.status_code == 400
        assert resp.json()["code"] == "schema_error"

    def test_creates_are_isolated(self, client):
        a = create_session(client)
        b = create_session(client)
        assert a["session_id"] != b["session_id"]
        for sid in (a["session_id"], b["session_id"]):
            assert client.get(f"/v1/sessions/{sid}").status_code == 200

    def test_concurrent_creates(self, client):
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=2) as pool:
            futures = [pool.submit(create_session, client) for _ in range(2)]
            results = [f.result() for f in futures]
        ids = {r["session_id"] for r in results}
        assert len(ids) == 2
        for sid in ids:
            assert client.get(f"/v1/sessions/{sid}").status_code == 200

    def test_created_sessions_are_deterministic(self, client):
        a = create_session(client)
        b = create_session(client)
        assert a["labels"] == b["labels"]


class TestBlocks:
    def test_blocks_listing_ordered_and_traceable(self, client):
        session = create_session(client)
        sid = session["session_id"]
        label = session["labels"][0]["surface"]
        resp = client.get(f"/v1/sessions/{sid}/labels/{label}/blocks")
        assert resp.status_code == 200
        blocks = resp.json()["blocks"]
        assert blocks
        assert [b["mmr_rank"] for b in blocks] == list(range(len(blocks)))
        # provenance re-read: the text equals the corpus slice it points to
        corpus = build_mini_corpus()
        for b in blocks:
            article = corpus.article(b["article_id"])
            lo, hi = b["sentence_range"]
            assert b["text"] == " ".join(s.text for s in article.body[lo:hi])

    def test_unknown_label_404(self, client):
        session = create_session(client)
        resp = client.get(f"/v1/sessions/{session['session_id']}/labels/ghost/blocks")
        assert resp.status_code == 404

    def test_unknown_session_404(self, client):
        resp = client.get("/v1/sessions/deadbeef/labels/x/blocks")
        assert resp.status_code == 404
        assert resp.json()["code"] == "session_not_found"


class TestInteractionFlow:
    def test_figure_one_caption_flow(self, client):
        # select two subtopics, swap their order, pick and edit blocks,
        # synthesize, then polish the draft and export
        session = create_session(client)
        sid = session["session_id"]
        labels = [l["surface"] for l in session["labels"][:2]]
        reordered = [labels[1], labels[0]]

        resp = client.put(f"/v1/sessions/{sid}/labels", json={"labels": reordered})
        assert resp.status_code == 200
        assert resp.json()["chosen_labels"] == reordered

        blocks = client.get(f"/v1/sessions/{sid}/labels/{reordered[0]}/blocks").json()["blocks"]
        picked = [blocks[1]["block_id"], blocks[0]["block_id"]]
        resp = client.put(
            f"/v1/sessions/{sid}/labels/{reordered[0]}/blocks",
            json={"block_ids": picked, "edits": {picked[0]: "hand edited text"}},
        )
        assert resp.status_code == 200

        resp = client.post(f"/v1/sessions/{sid}/synthesize")
        assert resp.status_code == 200
        article = resp.json()["article"]
        assert [s["label"] for s in article["sections"]] == reordered
        first_section = article["sections"][0]
        assert first_section["paragraphs"][0]["text"] == "hand edited text"
        assert first_section["paragraphs"][0]["edited"] is True

        resp = client.put(f"/v1/sessions/{sid}/draft", json={"text": "final words"})
        assert resp.status_code == 200

        md = client.get(f"/v1/sessions/{sid}/export", params={"format": "md"})
        assert md.status_code == 200
        assert md.text == "final words"

        exported = client.get(f"/v1/sessions/{sid}/export", params={"format": "json"}).json()
        assert exported["draft"] == "final words"
        assert [s["label"] for s in exported["article"]["sections"]] == reordered

    def test_synthesize_twice_identical(self, client):
        session = create_session(client)
        sid = session["session_id"]
        a1 = client.post(f"/v1/sessions/{sid}/synthesize").json()["article"]
        a2 = client.post(f"/v1/sessions/{sid}/synthesize").json()["article"]
        assert a1 == a2

    def test_unknown_label_choice_is_422(self, client):
        session = create_session(client)
        resp = client.put(
            f"/v1/sessions/{session['session_id']}/labels", json={"labels": ["ghost"]}
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "unknown_label"

    def test_duplicate_label_choice_is_422(self, client):
        session = create_session(client)
        label = session["labels"][0]["surface"]
        resp = client.put(
            f"/v1/sessions/{session['session_id']}/labels", json={"labels": [label, label]}
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "duplicate_label"

    def test_draft_before_synthesize_is_409(self, client):
        session = create_session(client)
        resp = client.put(
            f"/v1/sessions/{session['session_id']}/draft", json={"text": "early"}
        )
        assert resp.status_code == 409
        assert resp.json()["code"] == "not_synthesized"

    def test_export_before_synthesize_is_409(self, client):
        session = create_session(client)
        resp = client.get(f"/v1/sessions/{session['session_id']}/export")
        assert resp.status_code == 409

    def test_export_bad_format_is_400(self, client):
        session = create_session(client)
        sid = session["session_id"]
        client.post(f"/v1/sessions/{sid}/synthesize")
        resp = client.get(f"/v1/sessions/{sid}/export", params={"format": "pdf"})
        assert resp.status_code == 400


class TestRestart:
    def test_state_survives_app_restart(self, service_env):
        store_root, model_path = service_env
        with TestClient(create_app(store_root, model_path, MINI_CONFIG)) as c1:
            session = create_session(c1)
            sid = session["session_id"]
            label = session["labels"][0]["surface"]
            c1.put(f"/v1/sessions/{sid}/labels", json={"labels": [label]})
        with TestClient(create_app(store_root, model_path, MINI_CONFIG)) as c2:
            view = c2.get(f"/v1/sessions/{sid}").json()
            assert view["chosen_labels"] == [label]
            resp = c2.post(f"/v1/sessions/{sid}/synthesize")
            assert resp.status_code == 200


class TestErrorShape:
    @pytest.mark.parametrize(
        "method,path",
        [
            ("post", "/v1/sessions"),
            ("put", "/v1/sessions/x/labels"),
            ("put", "/v1/sessions/x/labels/y/blocks"),
            ("put", "/v1/sessions/x/draft"),
        ],
    )
    def test_malformed_json_bodies_never_bare_500(self, client, method, path):
        for garbage in (b"{not json", b"[]", b'{"unexpected": 1}', b"\xff\xfe"):
            resp = getattr(client, method)(
                path, content=garbage, headers={"content-type": "application/json"}
            )
            assert resp.status_code in (400, 404, 409, 422), (path, garbage, resp.status_code)
            body = resp.json()
            assert {"code", "message", "detail"} <= set(body)

    def test_health(self, client):
        assert client.get("/v1/health").json() == {"status": "ok"}
