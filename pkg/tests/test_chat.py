"""Transcript persistence and the scripted/replay/live client contracts."""

import json
import random
import string

import pytest

from genplan.chat import (
    LiveClient,
    ProviderConfig,
    ReplayClient,
    ReplayDivergence,
    ReplayExhausted,
    ScriptedClient,
    Transcript,
    TransportError,
    load,
    persist,
)
from genplan.prompts import PromptMessage


def user(text):
    return PromptMessage("user", text)


def test_scripted_returns_primed_responses_in_order():
    client = ScriptedClient(["resp1", "resp2"])
    transcript = Transcript("s", "scripted", "m")
    assert client.query(transcript, user("q1")) == "resp1"
    assert client.query(transcript, user("q2")) == "resp2"
    assert [t.role for t in transcript.turns] == ["user", "assistant", "user", "assistant"]


def test_record_then_replay_round_trip(tmp_path):
    recording = Transcript("rec", "scripted", "m")
    scripted = ScriptedClient(["a1", "a2", "a3"])
    prompts = ["p1", "p2", "p3"]
    for p in prompts:
        scripted.query(recording, user(p))
    path = persist(recording, tmp_path / "rec.json")

    replay = ReplayClient.from_path(path)
    replayed = Transcript("rec", "scripted", "m")
    for i, p in enumerate(prompts):
        assert replay.query(replayed, user(p)) == f"a{i + 1}"
    assert replayed == recording  # timestamps included


def test_replay_divergence_names_first_differing_turn(tmp_path):
    recording = Transcript("rec", "scripted", "m")
    ScriptedClient(["a1", "a2"]).query(recording, user("prompt one"))
    replay = ReplayClient(recording)
    fresh = Transcript("rec", "scripted", "m")
    with pytest.raises(ReplayDivergence) as err:
        replay.query(fresh, user("prompt 0ne"))
    assert "turn 0" in str(err.value)
    assert "-prompt one" in str(err.value)
    assert "+prompt 0ne" in str(err.value)


def test_replay_exhausted():
    recording = Transcript("rec", "scripted", "m")
    ScriptedClient(["only"]).query(recording, user("p"))
    replay = ReplayClient(recording)
    fresh = Transcript("rec", "scripted", "m")
    replay.query(fresh, user("p"))
    with pytest.raises(ReplayExhausted):
        replay.query(fresh, user("another"))


def test_persist_load_round_trip_fuzzed(tmp_path):
    rng = random.Random(0)
    alphabet = string.printable + "αβγ🎉"
    for case in range(100):
        transcript = Transcript(f"s{case}", "scripted", "m")
        for i in range(rng.randint(0, 6)):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 80)))
            transcript.append("user" if i % 2 == 0 else "assistant", text, ts=rng.random() * 1e9)
        path = persist(transcript, tmp_path / f"t{case}.json")
        assert load(path) == transcript


def test_empty_transcript_round_trips(tmp_path):
    transcript = Transcript("empty", "scripted", "m")
    assert load(persist(transcript, tmp_path / "e.json")) == transcript


def test_code_fenced_response_round_trips_byte_exact(tmp_path):
    text = "Here you go:\n```python\ndef get_plan(o, i, g):\n    return []\n```\ndone.\n"
    transcript = Transcript("fenced", "scripted", "m")
    transcript.append("user", "write code", ts=1.0)
    transcript.append("assistant", text, ts=2.0)
    loaded = load(persist(transcript, tmp_path / "f.json"))
    assert loaded.turns[1].text == text


def test_incremental_and_final_persist_agree(tmp_path):
    incremental = Transcript("s", "scripted", "m")
    final = Transcript("s", "scripted", "m")
    for i in range(3):
        for t in (incremental, final):
            t.append("user", f"q{i}", ts=float(i))
            t.append("assistant", f"a{i}", ts=float(i) + 0.5)
        persist(incremental, tmp_path / "inc.json")
    persist(final, tmp_path / "fin.json")
    assert (tmp_path / "inc.json").read_bytes() == (tmp_path / "fin.json").read_bytes()


def test_malformed_transcript_file(tmp_path):
    from genplan.chat import ChatError

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"session_id": "x"}))
    with pytest.raises(ChatError):
        load(bad)


def test_query_requires_assistant_tail():
    from genplan.chat import ChatError

    transcript = Transcript("s", "scripted", "m")
    transcript.append("user", "dangling")
    with pytest.raises(ChatError):
        ScriptedClient(["r"]).query(transcript, user("q"))


# --- live provider (mocked transport; no network) ------------------------------


class FakeResponse:
    def __init__(self, status_code, content="ok"):
        self.status_code = status_code
        self._content = content

    def json(self):
        return {"choices": [{"message": {"content": self._content}}]}


def test_live_retries_transient_failures_then_succeeds(monkeypatch):
    monkeypatch.setenv("FAKE_KEY", "secret")
    monkeypatch.setattr("time.sleep", lambda s: None)
    calls = []

    def transport(url, json=None, timeout=None, headers=None):
        calls.append(url)
        if len(calls) < 3:
            raise ConnectionError("transient")
        return FakeResponse(200, "answer")

    cfg = ProviderConfig(
        provider="live", endpoint="http://example.invalid", credential_env="FAKE_KEY", retries=3
    )
    client = LiveClient(cfg, transport=transport)
    transcript = Transcript("s", "live", "default")
    assert client.query(transcript, user("q")) == "answer"
    assert len(calls) == 3
    assert transcript.turns[-1].text == "answer"


def test_live_fails_after_retry_budget(monkeypatch):
    monkeypatch.setenv("FAKE_KEY", "secret")
    monkeypatch.setattr("time.sleep", lambda s: None)

    def transport(url, json=None, timeout=None, headers=None):
        raise ConnectionError("down")

    cfg = ProviderConfig(
        provider="live", endpoint="http://example.invalid", credential_env="FAKE_KEY", retries=2
    )
    with pytest.raises(TransportError):
        LiveClient(cfg, transport=transport).query(Transcript("s", "live", "m"), user("q"))


def test_live_config_requires_endpoint_and_credential():
    with pytest.raises(ValueError):
        ProviderConfig(provider="live")


def test_replay_config_requires_path():
    with pytest.raises(ValueError):
        ProviderConfig(provider="replay")
