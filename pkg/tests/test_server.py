import pytest
from fastapi.testclient import TestClient

from cnlwiki.server import create_app
from cnlwiki.wiki import Wiki
from conftest import build_corpus_wiki


@pytest.fixture
def client(corpus_wiki):
    return TestClient(create_app(corpus_wiki))


def test_words_listing(client):
    words = client.get("/words").json()
    assert {"surface": "Zurich", "category": "pn", "display": "Zurich",
            "id": words[0]["id"]} == words[0]
    assert any(w["display"] == "part of" for w in words)


def test_words_empty_wiki():
    client = TestClient(create_app(Wiki()))
    assert client.get("/words").json() == []


def test_add_word_and_errors(client):
    r = client.post("/words", json={"category": "noun", "surface": "village"})
    assert r.status_code == 201
    assert r.json()["surface"] == "village"
    assert client.post("/words",
                       json={"category": "noun", "surface": "every"}
                       ).status_code == 400
    assert client.post("/words",
                       json={"category": "noun", "surface": "village"}
                       ).status_code == 409
    assert client.post("/words",
                       json={"category": "nope", "surface": "x"}
                       ).status_code == 400
    bad = client.post("/words", json={"category": "noun", "surface": "two words"})
    assert bad.status_code == 400
    assert bad.json()["code"] == "InvalidSurface"


def test_article_rendering(client):
    body = client.get("/articles/canal").json()
    assert body["word"]["surface"] == "canal"
    hierarchy = body["boxes"]["hierarchy"]
    assert hierarchy and hierarchy[0]["owl"] is True
    assert hierarchy[0]["text"] == "every canal is a waterbody ."
    assert client.get("/articles/nope").status_code == 404


def test_article_negated_sentence_is_red_and_unrestricted(client):
    body = client.get("/articles/animal").json()
    assert body["boxes"]["hierarchy"] == []
    assert body["unrestricted"][0]["owl"] is False


def test_get_sentence(client, corpus_wiki):
    sid = corpus_wiki.sentences_in_order()[0].id
    body = client.get(f"/sentences/{sid}").json()
    assert body["pattern"] == "ConceptInclusion"
    assert client.get("/sentences/99999").status_code == 404


def test_create_edit_delete_sentence(client):
    r = client.post("/sentences",
                    json={"tokens": "Zurich is a city .".split()})
    assert r.status_code == 201
    created = r.json()
    assert created["pattern"] == "IndividualAssignment"
    sid, version = created["id"], created["version"]

    r = client.put(f"/sentences/{sid}", json={
        "tokens": "Zurich is a mountain .".split(),
        "expectedVersion": version,
    })
    assert r.status_code == 200
    assert r.json()["version"] == version + 1

    stale = client.put(f"/sentences/{sid}", json={
        "tokens": "Zurich is a city .".split(),
        "expectedVersion": version,
    })
    assert stale.status_code == 409
    assert stale.json()["code"] == "VersionConflict"

    assert client.delete(
        f"/sentences/{sid}", params={"expectedVersion": version + 1}
    ).status_code == 204
    assert client.get(f"/sentences/{sid}").status_code == 404


def test_create_sentence_parse_error_position(client):
    r = client.post("/sentences", json={"tokens": "canal every is .".split()})
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "ParseFailed"
    assert body["position"] == 0


def test_predict_endpoint(client):
    r = client.post("/predict", json={"prefix": []})
    assert r.status_code == 200
    body = r.json()
    assert body["canFinish"] is False
    assert "it is false that" in body["functionMenu"]
    assert body["categoryMenus"]["properName"]
    r2 = client.post("/predict",
                     json={"prefix": ["Zurich", "is", "a", "city"]})
    assert r2.json()["canFinish"] is True


def test_predict_is_pure_and_ranked(client):
    client.post("/sentences", json={
        "tokens": "if something flows-through something Y then Y is a city ."
        .split()})
    client.post("/sentences", json={"tokens": "Zurich is a city .".split()})
    client.post("/sentences",
                json={"tokens": "Matterhorn is a mountain .".split()})
    payload = {"prefix": ["Limmat", "flows-through"]}
    first = client.post("/predict", json=payload)
    second = client.post("/predict", json=payload)
    assert first.json() == second.json()
    names = [w["surface"] for w in first.json()["categoryMenus"]["properName"]]
    assert names.index("Zurich") < names.index("Matterhorn")


def test_predict_errors(client):
    r = client.post("/predict", json={"prefix": ["is"]})
    assert r.status_code == 400
    assert r.json()["code"] == "DeadPrefix"
    r2 = client.post("/predict", json={"prefix": ["wibble"]})
    assert r2.status_code == 400
    assert r2.json()["code"] == "LexicalError"
    assert r2.json()["position"] == 0
    r3 = client.post("/predict", json={"prefix": [], "restrict": ["Bogus"]})
    assert r3.status_code == 400
    assert r3.json()["code"] == "UnknownPattern"


def test_predict_with_restriction(client):
    r = client.post("/predict",
                    json={"prefix": [], "restrict": ["ConceptInclusion"]})
    assert r.json()["functionMenu"] == ["every"]


def test_export_import_endpoints(client):
    exported = client.get("/export").text
    assert client.post("/import", content=exported).status_code == 200
    assert client.get("/export").text == exported
    bad = "word noun tree\nbroken line here\n"
    r = client.post("/import", content=bad)
    assert r.status_code == 400
    assert r.json()["code"] == "FormatError"
    assert client.get("/export").text == exported


def test_stats_endpoint(client):
    body = client.get("/stats").json()
    assert body["total"] == 11
    assert body["patternCounts"]["ConceptInclusion"] == 1
    assert body["negOrImplFraction"] == pytest.approx(8 / 11)


def test_revision_header_and_error_atomicity(client):
    before = client.get("/export")
    revision = int(before.headers["X-Wiki-Revision"])
    attempts = [
        ("POST", "/words", {"json": {"category": "noun", "surface": "every"}}),
        ("POST", "/sentences", {"json": {"tokens": ["city", "."]}}),
        ("PUT", "/sentences/1",
         {"json": {"tokens": ["x"], "expectedVersion": 77}}),
        ("DELETE", "/sentences/12345", {"params": {"expectedVersion": 1}}),
        ("POST", "/import", {"content": "garbage line\n"}),
    ]
    for method, path, kwargs in attempts:
        r = client.request(method, path, **kwargs)
        assert r.status_code >= 400
        assert "code" in r.json()
    after = client.get("/export")
    assert after.text == before.text
    assert int(after.headers["X-Wiki-Revision"]) == revision

    ok = client.post("/words", json={"category": "noun", "surface": "tree"})
    assert int(ok.headers["X-Wiki-Revision"]) == revision + 1
