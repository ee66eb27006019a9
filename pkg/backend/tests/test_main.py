from fastapi.testclient import TestClient

from main import app

client = TestClient(app)


def _duals(solids, index):
    return [str(index.hyperplane(int(h))) for h in solids.indices()]


def test_generate_hyperoval_points():
    response = client.post("/generate/hyperoval-points", json={"q": 4})
    assert response.status_code == 200
    body = response.json()
    assert body["census"] == {"kind": "hyperoval-points", "q": 4, "count": 6}
    assert "0:1:0:0:0" in body["items"]


def test_generate_unknown_kind_is_400():
    response = client.post("/generate/ovals", json={"q": 4})
    assert response.status_code == 400
    assert "unknown kind" in response.json()["detail"]


def test_bad_q_is_400():
    assert client.post("/generate/elliptic-solids", json={"q": 12}).status_code == 400


def test_check(pg4, elliptic4):
    response = client.post("/check", json={"q": 4, "solids": _duals(elliptic4, pg4)})
    assert response.status_code == 200
    report = response.json()
    assert report["condI"]["holds"] and report["condIII"]["holds"]
    assert report["e"] == 15


def test_check_bad_coordinates_is_400():
    response = client.post("/check", json={"q": 4, "solids": ["1:0:0:0:9"]})
    assert response.status_code == 400
    assert "line 1" in response.json()["detail"]


def test_classify(pg4, hyperoval4):
    response = client.post("/classify", json={"q": 4, "solids": _duals(hyperoval4, pg4)})
    assert response.status_code == 200
    verdict = response.json()
    assert verdict["case"] == "A"
    assert verdict["carrier"] == ["1:0:0:0:0", "0:1:0:0:0", "0:0:1:0:0"]
    assert verdict["theoremApplicable"] is True


def test_verify_lemmas(pg4, elliptic4):
    response = client.post("/verify_lemmas", json={"q": 4, "solids": _duals(elliptic4, pg4)})
    assert response.status_code == 200
    assert response.json()["allPassed"] is True


def test_verify_lemmas_precondition_is_400(pg4):
    response = client.post("/verify_lemmas", json={"q": 4, "solids": ["1:0:0:0:0"]})
    assert response.status_code == 400


def test_classify_caps_witnesses(pg4, elliptic4):
    outside = next(h for h in range(pg4.n) if h not in set(elliptic4.indices().tolist()))
    duals = _duals(elliptic4, pg4)[1:] + [str(pg4.hyperplane(outside))]
    response = client.post("/classify", json={"q": 4, "solids": duals, "witnessCap": 2})
    assert response.status_code == 200
    verdict = response.json()
    assert verdict["case"] == "NA"
    assert len(verdict["report"]["violations"]) == 2


def test_negative_witness_cap_is_400(pg4, elliptic4):
    response = client.post("/classify", json={"q": 4, "solids": _duals(elliptic4, pg4), "witnessCap": -1})
    assert response.status_code == 400
