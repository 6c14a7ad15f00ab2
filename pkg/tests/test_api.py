import time

import pytest
from fastapi.testclient import TestClient

from wareplan import SpaceSpec, pareto_sweep
from wareplan import fileio
from wareplan.service import create_app


def small_spec():
    return SpaceSpec(
        width=5, height=5, aisle_width=1,
        walls={(4, 4)}, door_connections={(0, 1)}, pillars={(2, 2)},
        reserved={(3, 3)},
    )


@pytest.fixture()
def client():
    with TestClient(create_app(jobs=1)) as c:
        yield c


def _post_space(client):
    resp = client.post("/spaces", json=fileio.space_to_dict(small_spec()))
    assert resp.status_code == 200
    return resp.json()["id"]


def _wait_for(client, job_id, timeout=120):
    deadline = time.time() + timeout
    while time.time() < deadline:
        job = client.get(f"/jobs/{job_id}").json()
        if job["state"] in ("done", "failed"):
            return job
        time.sleep(0.05)
    raise AssertionError("job did not finish in time")


class TestSpaces:
    def test_round_trip(self, client):
        space_id = _post_space(client)
        got = client.get(f"/spaces/{space_id}").json()
        assert fileio.space_from_dict(got) == small_spec()

    def test_unknown_space_404(self, client):
        assert client.get("/spaces/nope").status_code == 404

    def test_invalid_space_400(self, client):
        body = fileio.space_to_dict(small_spec())
        body["walls"].append([99, 99])
        assert client.post("/spaces", json=body).status_code == 400


class TestJobs:
    def test_sweep_job_lifecycle(self, client):
        space_id = _post_space(client)
        resp = client.post("/jobs", json={"space_id": space_id, "kind": "sweep"})
        assert resp.status_code == 200
        job_id = resp.json()["id"]
        job = _wait_for(client, job_id)
        assert job["state"] == "done", job
        assert job["progress"] == {"completed": 26, "total": 26}

        result = client.get(f"/jobs/{job_id}/result").json()
        direct = fileio.pareto_to_dict(pareto_sweep(small_spec(), jobs=1))
        assert len(result["candidates"]) == 26
        assert result["front"] == direct["front"]
        got_scores = [c["score"]["score"] for c in result["candidates"]]
        want_scores = [c["score"]["score"] for c in direct["candidates"]]
        assert got_scores == pytest.approx(want_scores, abs=1e-12)

    def test_solve_job(self, client):
        space_id = _post_space(client)
        resp = client.post(
            "/jobs",
            json={
                "space_id": space_id,
                "kind": "solve",
                "params": {"alpha": 0.5, "theta": 0.1},
            },
        )
        job_id = resp.json()["id"]
        job = _wait_for(client, job_id)
        assert job["state"] == "done", job
        result = client.get(f"/jobs/{job_id}/result").json()
        assert result["score"] is not None
        assert result["validation"]["valid"] is True

    def test_unknown_job_404(self, client):
        assert client.get("/jobs/ghost").status_code == 404
        assert client.get("/jobs/ghost/result").status_code == 404

    def test_unknown_kind_400(self, client):
        space_id = _post_space(client)
        resp = client.post("/jobs", json={"space_id": space_id, "kind": "dance"})
        assert resp.status_code == 400

    def test_result_404_until_done(self, client):
        space_id = _post_space(client)
        job_id = client.post(
            "/jobs", json={"space_id": space_id, "kind": "sweep"}
        ).json()["id"]
        # poll the result endpoint; possibly already finished, but any
        # non-done state must give 404
        resp = client.get(f"/jobs/{job_id}/result")
        state = client.get(f"/jobs/{job_id}").json()["state"]
        if state != "done":
            assert resp.status_code == 404
        _wait_for(client, job_id)
        assert client.get(f"/jobs/{job_id}/result").status_code == 200

    def test_cancel_finished_job_409(self, client):
        space_id = _post_space(client)
        job_id = client.post(
            "/jobs", json={"space_id": space_id, "kind": "solve"}
        ).json()["id"]
        _wait_for(client, job_id)
        assert client.delete(f"/jobs/{job_id}").status_code == 409

    def test_sweep_with_refiners(self, client):
        space_id = _post_space(client)
        resp = client.post(
            "/jobs",
            json={
                "space_id": space_id,
                "kind": "sweep",
                "refiners": [{"id": "even", "kind": "even_racking_units"}],
            },
        )
        job_id = resp.json()["id"]
        job = _wait_for(client, job_id)
        assert job["state"] == "done", job
        result = client.get(f"/jobs/{job_id}/result").json()
        for cand in result["candidates"]:
            if cand["rejected_by"] is not None:
                assert cand["on_front"] is False
        for idx in result["front"]:
            assert result["candidates"][idx]["rejected_by"] is None


class TestLayouts:
    def test_import_layout_and_fetch(self, client):
        space_id = _post_space(client)
        from wareplan import ScoringParams, generate

        result = generate(small_spec(), ScoringParams(alpha=0.5, theta=0.1))
        body = fileio.layout_to_dict(result.optimal)
        body["params"] = {"alpha": 0.5, "theta": 0.1}
        resp = client.post(f"/spaces/{space_id}/import-layout", json=body)
        assert resp.status_code == 200
        data = resp.json()
        assert data["imported"] is True
        assert data["score"]["score"] == pytest.approx(
            result.breakdown.score, abs=1e-12
        )

        digest = result.optimal.digest
        fetched = client.get(f"/layouts/{digest}")
        assert fetched.status_code == 200
        assert fetched.json()["grid"] == data["grid"]

    def test_import_conflicting_masks_400(self, client):
        space_id = _post_space(client)
        body = {
            "grid": ["....." for _ in range(5)],
            "aisle_width": 1,
        }
        resp = client.post(f"/spaces/{space_id}/import-layout", json=body)
        assert resp.status_code == 400

    def test_unknown_layout_404(self, client):
        assert client.get("/layouts/da39a3").status_code == 404
