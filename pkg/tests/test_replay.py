"""Trace validation and deterministic replay."""

from __future__ import annotations

import json

import pytest

from xrwm.demo import (
    default_scene_path,
    default_trace_path,
    default_transcript_path,
    default_windows_path,
    demo_scene_doc,
    demo_surface_id,
    demo_trace_doc,
    demo_windows_doc,
    write_demo_fixtures,
)
from xrwm.errors import ClockError, SchemaViolation
from xrwm.mock_resolver import MockResolver
from xrwm.replay import (
    TraceEntry,
    load_trace,
    replay_trace,
    transcript_text,
    validate_trace,
)


def entry(t, kind, payload):
    return {"t": t, "kind": kind, "payload": payload}


class TestValidateTrace:
    def test_accepts_well_formed(self):
        doc = [
            entry(0.0, "head", {"position": [0, 1.6, 0], "forward": [0, 0, -1]}),
            entry(1.0, "pointing", {"identifier": "w", "hoverDuration": 1.5}),
            entry(2.0, "request", {"text": "hi"}),
        ]
        entries = validate_trace(doc)
        assert [e.kind for e in entries] == ["head", "pointing", "request"]
        assert entries[2].t == 2.0

    def test_equal_timestamps_allowed(self):
        doc = [entry(1.0, "request", {"text": "a"}), entry(1.0, "request", {"text": "b"})]
        assert len(validate_trace(doc)) == 2

    def test_not_an_array(self):
        with pytest.raises(SchemaViolation):
            validate_trace({"t": 0})

    @pytest.mark.parametrize(
        "bad,needle",
        [
            (["nope"], "trace entry 0"),
            ([{"t": 0.0, "kind": "head"}], "trace entry 0"),
            ([entry(0.0, "blink", {})], "trace entry 0"),
            ([entry("soon", "head", {})], "trace entry 0"),
            ([entry(0.0, "head", "payload")], "trace entry 0"),
            ([entry(True, "head", {})], "trace entry 0"),
        ],
    )
    def test_shape_errors_name_the_entry(self, bad, needle):
        with pytest.raises(SchemaViolation) as exc_info:
            validate_trace(bad)
        assert needle in str(exc_info.value)

    def test_out_of_order_t_names_the_entry(self):
        doc = [entry(2.0, "request", {"text": "a"}), entry(1.0, "request", {"text": "b"})]
        with pytest.raises(ClockError) as exc_info:
            validate_trace(doc)
        assert "trace entry 1" in str(exc_info.value)

    def test_load_trace_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_trace(tmp_path / "nope.json")

    def test_load_trace_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{", encoding="utf-8")
        with pytest.raises(SchemaViolation):
            load_trace(p)


class TestReplay:
    def test_empty_trace_yields_untouched_session(self):
        transcript = replay_trace(
            default_scene_path(), default_windows_path(), [], MockResolver()
        )
        assert transcript["trace_entries"] == 0
        assert transcript["records"] == []
        assert transcript["generation"] == 0

    def test_demo_trace_moves_maps_to_cabinet(self):
        transcript = replay_trace(
            default_scene_path(),
            default_windows_path(),
            default_trace_path(),
            MockResolver(),
        )
        cabinet = demo_surface_id("cabinet")
        assert transcript["generation"] == 4
        record = transcript["records"][0]
        assert record["applied"] is True
        assert record["plan"]["actions"] == [["place", "w-maps", cabinet]]
        locations = {
            w["id"]: w["location"] for w in transcript["final_workspace"]["windows"]
        }
        assert locations["w-maps"] == cabinet

    def test_request_timestamps_come_from_trace(self):
        entries = [TraceEntry(t=7.25, kind="request", payload={"text": "no match"})]
        transcript = replay_trace(
            default_scene_path(), default_windows_path(), entries, MockResolver()
        )
        assert transcript["records"][0]["timestamp"] == 7.25

    def test_bad_pointing_payload_names_entry(self):
        entries = [TraceEntry(t=0.0, kind="pointing", payload={"identifier": "w"})]
        with pytest.raises(SchemaViolation) as exc_info:
            replay_trace(
                default_scene_path(), default_windows_path(), entries, MockResolver()
            )
        assert "trace entry 0" in str(exc_info.value)

    def test_bad_request_payload_names_entry(self):
        entries = [TraceEntry(t=0.0, kind="request", payload={})]
        with pytest.raises(SchemaViolation) as exc_info:
            replay_trace(
                default_scene_path(), default_windows_path(), entries, MockResolver()
            )
        assert "trace entry 0" in str(exc_info.value)

    def test_replay_is_byte_deterministic(self):
        def run():
            return transcript_text(
                replay_trace(
                    default_scene_path(),
                    default_windows_path(),
                    default_trace_path(),
                    MockResolver(),
                )
            )

        assert run() == run()


class TestGoldenTranscript:
    def test_committed_transcript_matches_fresh_replay(self):
        golden = default_transcript_path().read_text(encoding="utf-8")
        fresh = transcript_text(
            replay_trace(
                default_scene_path(),
                default_windows_path(),
                default_trace_path(),
                MockResolver(),
            )
        )
        assert fresh == golden

    def test_committed_fixtures_match_generators(self, tmp_path):
        write_demo_fixtures(tmp_path)
        pairs = [
            (tmp_path / "scene.json", default_scene_path()),
            (tmp_path / "windows.json", default_windows_path()),
            (tmp_path / "trace_put_that_there.json", default_trace_path()),
        ]
        for fresh_path, committed_path in pairs:
            assert fresh_path.read_text(encoding="utf-8") == committed_path.read_text(
                encoding="utf-8"
            ), f"{committed_path.name} is stale"

    def test_generator_docs_are_plain_json(self):
        for doc in (demo_scene_doc(), demo_windows_doc(), demo_trace_doc()):
            json.loads(json.dumps(doc))
