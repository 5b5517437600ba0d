"""HTTP service endpoints, error envelopes, and graph registry behavior."""

import pytest
from fastapi.testclient import TestClient

from treecut.service import create_app

from conftest import REFERENCE_ADJACENCY, REFERENCE_PARTITION_TEXT

TRIANGLE = "n 3\n1 2\n2 3\n1 3\n"
CHORD = "n 4\n1 2\n2 3\n3 4\n1 4\n1 3\n"


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def upload(client, content, format="edge-list"):
    resp = client.post("/graphs", json={"content": content, "format": format})
    assert resp.status_code == 200, resp.text
    return resp.json()


def test_health(client):
    doc = client.get("/health").json()
    assert doc["status"] == "ok"
    assert doc["schema_version"] == 1


def test_upload_and_get_graph(client):
    info = upload(client, TRIANGLE)
    assert info["n"] == 3
    assert info["edge_count"] == 3
    assert info["connected"] is True
    assert info["edges"] == [[1, 2], [1, 3], [2, 3]]
    again = client.get(f"/graphs/{info['graph_id']}").json()
    assert again == info


def test_upload_is_content_addressed(client):
    # same graph in either format or edge order maps to one id
    a = upload(client, TRIANGLE)
    b = upload(client, "n 3\n1 3\n2 3\n1 2\n")
    c = upload(client, "0 1 1\n1 0 1\n1 1 0\n", format="adjacency-matrix")
    assert a["graph_id"] == b["graph_id"] == c["graph_id"]


def test_unknown_graph_id_envelope(client):
    resp = client.get("/graphs/deadbeef00000000")
    assert resp.status_code == 404
    err = resp.json()["error"]
    assert err["code"] == "not-found"
    assert "deadbeef" in err["message"]


def test_parse_error_envelope(client):
    resp = client.post("/graphs", json={"content": "1 1\n", "format": "edge-list"})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "parse"


def test_usage_error_envelope(client):
    info = upload(client, TRIANGLE)
    resp = client.post(f"/graphs/{info['graph_id']}/sample", json={"seed": 1})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "usage"


def test_precondition_error_envelope(client):
    info = upload(client, TRIANGLE)
    resp = client.post(
        f"/graphs/{info['graph_id']}/sample", json={"k": 9, "seed": 1, "count": 1}
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "precondition"


def test_budget_error_envelope(client):
    info = upload(client, CHORD)
    resp = client.post(
        f"/graphs/{info['graph_id']}/trees",
        json={"enumerate": True, "budget": {"max_trees": 2}},
    )
    assert resp.status_code == 422
    err = resp.json()["error"]
    assert err["code"] == "budget"
    assert "8" in err["message"]  # the pre-checked count


def test_trees_endpoint(client):
    info = upload(client, CHORD)
    doc = client.post(f"/graphs/{info['graph_id']}/trees", json={}).json()
    assert doc["t_G"] == 8
    assert doc["trees"] is None
    doc = client.post(
        f"/graphs/{info['graph_id']}/trees", json={"enumerate": True}
    ).json()
    assert len(doc["trees"]) == 8
    assert doc["trees"] == sorted(doc["trees"])


def test_sample_endpoint_deterministic(client):
    info = upload(client, CHORD)
    payload = {"k": 2, "count": 4, "seed": 11}
    a = client.post(f"/graphs/{info['graph_id']}/sample", json=payload).json()
    b = client.post(f"/graphs/{info['graph_id']}/sample", json=payload).json()
    assert a == b
    assert [item["index"] for item in a["items"]] == [0, 1, 2, 3]
    for item in a["items"]:
        assert sum(len(block) for block in item["blocks"]) == 4


def test_probability_endpoint_reference_values(client):
    info = upload(client, REFERENCE_ADJACENCY, format="adjacency-matrix")
    doc = client.post(
        f"/graphs/{info['graph_id']}/probability",
        json={"partition_text": REFERENCE_PARTITION_TEXT},
    ).json()
    assert doc["rational"] == "16/2273"
    assert doc["decimal"] == "0.0070"
    assert doc["t_G"] == 4546
    assert doc["t_blocks"] == [16, 3, 3]
    assert doc["t_M"] == 8
    assert doc["binom"] == 36
    assert doc["compatible_trees"] == 1152
    assert doc["float"] == pytest.approx(1152 / 163656)
    assert "float_value" not in doc  # serialized under its alias


def test_probability_accepts_blocks(client):
    info = upload(client, CHORD)
    doc = client.post(
        f"/graphs/{info['graph_id']}/probability",
        json={"blocks": [[1, 2], [3, 4]], "k": 2},
    ).json()
    assert doc["blocks"] == [[1, 2], [3, 4]]
    assert doc["rational"] != "0/1"


def test_probability_k_mismatch(client):
    info = upload(client, CHORD)
    resp = client.post(
        f"/graphs/{info['graph_id']}/probability",
        json={"blocks": [[1, 2], [3, 4]], "k": 3},
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "precondition"


def test_probability_requires_one_source(client):
    info = upload(client, CHORD)
    resp = client.post(f"/graphs/{info['graph_id']}/probability", json={})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "usage"


def test_partitions_endpoint(client):
    info = upload(client, "n 4\n1 2\n2 3\n3 4\n1 4\n")
    doc = client.post(
        f"/graphs/{info['graph_id']}/partitions", json={"k": 2}
    ).json()
    assert doc["count"] == 6
    assert doc["sum_rational"] == "1/1"
    assert all(row["rational"] == "1/6" for row in doc["rows"])
    blocks = [row["blocks"] for row in doc["rows"]]
    assert blocks == sorted(blocks)


def test_verify_endpoint_passes(client):
    info = upload(client, TRIANGLE)
    doc = client.post(
        f"/graphs/{info['graph_id']}/verify",
        json={"k": 2, "samples": 20000, "seed": 8},
    ).json()
    assert doc["passed"] is True
    assert doc["randmst_audit"] is None
    assert sum(r["observed"] for r in doc["rows"]) == 20000


def test_verify_randmst_audit(client):
    info = upload(client, CHORD)
    doc = client.post(
        f"/graphs/{info['graph_id']}/verify",
        json={
            "k": 2,
            "samples": 20000,
            "seed": 8,
            "mode": "randmst-tree",
            "reference": "randmst-exact",
        },
    ).json()
    assert doc["passed"] is True
    audit = doc["randmst_audit"]
    assert audit["tree_count"] == 8
    assert audit["equals_uniform"] is False
    assert audit["uniform_rational"] == "1/8"
    assert audit["max_abs_deviation"] == "1/120"
    laws = {row["rational"] for row in audit["law"]}
    assert laws == {"2/15", "7/60"}


def test_verify_randmst_audit_uniform_case(client):
    info = upload(client, TRIANGLE)
    doc = client.post(
        f"/graphs/{info['graph_id']}/verify",
        json={
            "k": 2,
            "samples": 20000,
            "seed": 8,
            "mode": "randmst-tree",
            "reference": "randmst-exact",
        },
    ).json()
    assert doc["passed"] is True
    audit = doc["randmst_audit"]
    assert audit["equals_uniform"] is True
    assert audit["max_abs_deviation"] == "0/1"


def test_verify_reference_mode_consistency(client):
    info = upload(client, TRIANGLE)
    resp = client.post(
        f"/graphs/{info['graph_id']}/verify",
        json={"k": 2, "samples": 20000, "seed": 8, "reference": "randmst-exact"},
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "precondition"


def test_verify_min_samples(client):
    info = upload(client, TRIANGLE)
    resp = client.post(
        f"/graphs/{info['graph_id']}/verify",
        json={"k": 2, "samples": 10, "seed": 8},
    )
    assert resp.status_code == 422
    assert "minimum" in resp.json()["error"]["message"]
