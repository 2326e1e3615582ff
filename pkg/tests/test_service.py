import json
import threading

import numpy as np
import pytest
from fastapi.testclient import TestClient

from paretoplace import default_pose
from paretoplace.service import create_app

SMALL_NSGA3 = {"population_size": 24, "generations": 15, "reference_divisions": 23, "seed": 5}


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(tmp_path / "data"))


def make_session(client, **config):
    body = {"pose": default_pose().to_dict()}
    body["config"] = {"nsga3": SMALL_NSGA3, **config}
    response = client.post("/sessions", json=body)
    assert response.status_code == 201
    return response.json()["id"]


class TestCreateSession:
    def test_round_trips_pose(self, client):
        sid = make_session(client)
        got = client.get(f"/sessions/{sid}")
        assert got.status_code == 200
        assert got.json()["pose"] == default_pose().to_dict()
        assert got.json()["rounds"] == 0

    def test_invalid_pose_names_field(self, client):
        pose = default_pose().to_dict()
        pose["arm_length"] = -1.0
        response = client.post("/sessions", json={"pose": pose})
        assert response.status_code == 422
        body = response.json()
        assert body["code"] == "validation"
        assert body["field"] == "arm_length"

    def test_missing_pose(self, client):
        response = client.post("/sessions", json={})
        assert response.status_code == 422
        assert response.json()["field"] == "pose"

    def test_distinct_ids(self, client):
        assert make_session(client) != make_session(client)

    def test_unknown_session_404(self, client):
        response = client.get("/sessions/doesnotexist")
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_session"


class TestAdapt:
    def test_returns_reduced_candidates(self, client):
        sid = make_session(client)
        response = client.post(f"/sessions/{sid}/adapt")
        assert response.status_code == 200
        body = response.json()
        assert body["round"] == 0
        assert len(body["candidates"]) == 5
        ids = [c["id"] for c in body["candidates"]]
        assert len(set(ids)) == 5
        assert body["auto_pick"] in ids
        for candidate in body["candidates"]:
            assert set(candidate["objectives"]) == {"neck_angle", "arm_angle"}
            for oid, rad in candidate["objectives"].items():
                assert candidate["objectives_degrees"][oid] == pytest.approx(
                    rad * 180.0 / np.pi
                )
        assert body["front"]["size"] >= 5

    def test_respects_reduction_k_override(self, client):
        sid = make_session(client)
        response = client.post(f"/sessions/{sid}/adapt", json={"reduction_k": 3})
        assert len(response.json()["candidates"]) == 3

    def test_candidates_satisfy_constraints_after_selection(self, client):
        sid = make_session(client)
        first = client.post(f"/sessions/{sid}/adapt").json()
        client.post(f"/sessions/{sid}/select", json={"candidate_id": first["auto_pick"]})
        constraints = client.get(f"/sessions/{sid}").json()["constraints"]
        bounds = {c["objective"]: c["upper_bound"] for c in constraints}
        second = client.post(f"/sessions/{sid}/adapt").json()
        front = client.get(f"/sessions/{sid}/front").json()
        for candidate in front["candidates"]:
            assert candidate["preference_violation"] <= 1e-9
        for candidate in second["candidates"]:
            for oid, value in candidate["objectives"].items():
                assert value <= bounds[oid] + 1e-9

    def test_unknown_session(self, client):
        assert client.post("/sessions/nope/adapt").status_code == 404

    def test_busy_conflict(self, client):
        sid = make_session(client)
        app = client.app
        lock = app.state.store.lock(sid)
        acquired = lock.acquire(blocking=False)
        assert acquired
        try:
            response = client.post(f"/sessions/{sid}/adapt")
            assert response.status_code == 409
            assert response.json()["code"] == "busy"
        finally:
            lock.release()

    def test_invalid_override_rejected(self, client):
        sid = make_session(client)
        response = client.post(
            f"/sessions/{sid}/adapt", json={"nsga3": {"population_size": 2}}
        )
        assert response.status_code == 422


class TestFront:
    def test_front_before_adapt_conflict(self, client):
        sid = make_session(client)
        response = client.get(f"/sessions/{sid}/front")
        assert response.status_code == 409
        assert response.json()["code"] == "ordering"

    def test_front_payload_matches_library_values(self, client):
        sid = make_session(client)
        adapt = client.post(f"/sessions/{sid}/adapt").json()
        front = client.get(f"/sessions/{sid}/front").json()
        assert front["round"] == 0
        assert front["objective_ids"] == ["neck_angle", "arm_angle"]
        assert len(front["candidates"]) == adapt["front"]["size"]
        # Reduced candidates appear verbatim in the full front payload.
        front_vectors = {
            tuple(c["objectives"]) for c in front["candidates"]
        }
        for candidate in adapt["candidates"]:
            vec = (
                candidate["objectives"]["neck_angle"],
                candidate["objectives"]["arm_angle"],
            )
            assert vec in front_vectors


class TestSelect:
    def test_select_returns_constraints(self, client):
        sid = make_session(client)
        adapt = client.post(f"/sessions/{sid}/adapt").json()
        response = client.post(
            f"/sessions/{sid}/select", json={"candidate_id": adapt["auto_pick"]}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["round"] == 0
        constraints = {c["objective"] for c in body["constraints"]}
        assert constraints == {"neck_angle", "arm_angle"}
        session = client.get(f"/sessions/{sid}").json()
        assert session["rounds"] == 1
        assert session["selections"] == [adapt["auto_pick"]]

    def test_constraints_tighten_monotonically(self, client):
        sid = make_session(client)
        bounds_history = []
        for _ in range(3):
            adapt = client.post(f"/sessions/{sid}/adapt").json()
            select = client.post(
                f"/sessions/{sid}/select", json={"candidate_id": adapt["auto_pick"]}
            ).json()
            bounds_history.append(
                {c["objective"]: c["upper_bound"] for c in select["constraints"]}
            )
        for earlier, later in zip(bounds_history, bounds_history[1:]):
            for objective, bound in earlier.items():
                assert later[objective] <= bound + 1e-12

    def test_stale_selection_conflict(self, client):
        sid = make_session(client)
        first = client.post(f"/sessions/{sid}/adapt").json()
        client.post(f"/sessions/{sid}/select", json={"candidate_id": first["auto_pick"]})
        client.post(f"/sessions/{sid}/adapt")
        response = client.post(
            f"/sessions/{sid}/select", json={"candidate_id": first["auto_pick"]}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "stale_selection"
        assert "1" in response.json()["message"]

    def test_select_before_adapt_is_ordering_error(self, client):
        sid = make_session(client)
        response = client.post(f"/sessions/{sid}/select", json={"candidate_id": "r0c0"})
        assert response.status_code == 409
        assert response.json()["code"] == "ordering"

    def test_missing_candidate_id(self, client):
        sid = make_session(client)
        client.post(f"/sessions/{sid}/adapt")
        response = client.post(f"/sessions/{sid}/select", json={})
        assert response.status_code == 422


class TestEvents:
    def test_progress_events_replayed(self, client):
        sid = make_session(client)
        client.post(f"/sessions/{sid}/adapt")
        response = client.get(f"/sessions/{sid}/events")
        assert response.status_code == 200
        events = [
            json.loads(line[len("data: ") :])
            for line in response.text.splitlines()
            if line.startswith("data: ")
        ]
        progress = [e for e in events if e["type"] == "progress"]
        assert len(progress) == SMALL_NSGA3["generations"]
        assert [e["generation"] for e in progress] == list(
            range(SMALL_NSGA3["generations"])
        )
        assert all(e["round"] == 0 for e in progress)
        assert events[-1]["type"] == "round_complete"

    def test_empty_stream_for_fresh_session(self, client):
        sid = make_session(client)
        response = client.get(f"/sessions/{sid}/events")
        assert response.status_code == 200
        assert response.text == ""


class TestThinOrchestrator:
    def test_response_values_recomputable_from_persisted_session(self, tmp_path):
        # Candidate ids, trade-off scores, and auto-pick must all be
        # re-derivable from the stored session with library calls alone.
        from paretoplace.selection import Session, auto_pick_index, present_candidates

        data_dir = tmp_path / "data"
        client = TestClient(create_app(data_dir))
        body = {"pose": default_pose().to_dict(), "config": {"nsga3": SMALL_NSGA3}}
        sid = client.post("/sessions", json=body).json()["id"]
        adapt = client.post(f"/sessions/{sid}/adapt").json()

        session = Session.load(data_dir / f"{sid}.json")
        rnd = session.rounds[-1]
        recomputed = present_candidates(rnd.front, session.reduction_k)
        assert [p.candidate_index for p in recomputed] == [
            p.candidate_index for p in rnd.presented
        ]
        assert adapt["auto_pick"] == rnd.candidate_ids[auto_pick_index(recomputed)]
        for payload, presented in zip(adapt["candidates"], recomputed):
            member = rnd.front.members[presented.candidate_index]
            assert payload["objectives"]["neck_angle"] == member.objectives[0]
            assert payload["objectives"]["arm_angle"] == member.objectives[1]
            assert payload["mu"] == presented.mu
            assert payload["is_extreme"] == presented.is_extreme


class TestPersistence:
    def test_sessions_survive_restart(self, tmp_path):
        data_dir = tmp_path / "data"
        client_a = TestClient(create_app(data_dir))
        body = {"pose": default_pose().to_dict(), "config": {"nsga3": SMALL_NSGA3}}
        sid = client_a.post("/sessions", json=body).json()["id"]
        adapt = client_a.post(f"/sessions/{sid}/adapt").json()
        client_a.post(f"/sessions/{sid}/select", json={"candidate_id": adapt["auto_pick"]})

        client_b = TestClient(create_app(data_dir))
        session = client_b.get(f"/sessions/{sid}")
        assert session.status_code == 200
        assert session.json()["rounds"] == 1
        assert session.json()["selections"] == [adapt["auto_pick"]]
        front = client_b.get(f"/sessions/{sid}/front")
        assert front.status_code == 200
        assert len(front.json()["candidates"]) == adapt["front"]["size"]

    def test_adapt_after_restart_continues_rounds(self, tmp_path):
        data_dir = tmp_path / "data"
        client_a = TestClient(create_app(data_dir))
        body = {"pose": default_pose().to_dict(), "config": {"nsga3": SMALL_NSGA3}}
        sid = client_a.post("/sessions", json=body).json()["id"]
        client_a.post(f"/sessions/{sid}/adapt")

        client_b = TestClient(create_app(data_dir))
        second = client_b.post(f"/sessions/{sid}/adapt")
        assert second.status_code == 200
        assert second.json()["round"] == 1
