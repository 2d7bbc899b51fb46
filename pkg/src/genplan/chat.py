"""Chat-completion clients: live HTTP endpoint, transcript replay, scripted mock.

Every conversation is a Transcript that clients append to; transcripts
persist as JSON and replay byte-exactly. The whole test suite runs on
the replay and scripted providers; the live provider exists for real
synthesis runs and speaks a generic chat-completions HTTP+JSON protocol.
"""

from __future__ import annotations

import difflib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .prompts import PromptMessage


class ChatError(Exception):
    pass


class TransportError(ChatError):
    """Live request failed after exhausting retries."""


class ReplayDivergence(ChatError):
    """The prompt sent during replay differs from the recorded prompt."""


class ReplayExhausted(ChatError):
    """More queries were issued than the recording contains."""


@dataclass(frozen=True)
class Turn:
    role: str
    text: str
    ts: float


@dataclass
class Transcript:
    session_id: str
    provider: str
    model: str
    turns: list[Turn] = field(default_factory=list)

    def append(self, role: str, text: str, ts: Optional[float] = None) -> Turn:
        turn = Turn(role, text, time.time() if ts is None else ts)
        self.turns.append(turn)
        return turn


def persist(transcript: Transcript, path: str | Path) -> Path:
    path = Path(path)
    payload = {
        "session_id": transcript.session_id,
        "provider": transcript.provider,
        "model": transcript.model,
        "turns": [{"role": t.role, "text": t.text, "ts": t.ts} for t in transcript.turns],
    }
    path.write_text(json.dumps(payload, indent=2))
    return path


def load(path: str | Path) -> Transcript:
    data = json.loads(Path(path).read_text())
    try:
        return Transcript(
            session_id=data["session_id"],
            provider=data["provider"],
            model=data["model"],
            turns=[Turn(t["role"], t["text"], t["ts"]) for t in data["turns"]],
        )
    except (KeyError, TypeError) as err:
        raise ChatError(f"malformed transcript file {path}: {err}") from err


@dataclass(frozen=True)
class ProviderConfig:
    provider: str  # live | replay | scripted
    model: str = "default"
    endpoint: Optional[str] = None
    endpoint_path: str = "/v1/chat/completions"
    model_field: str = "model"
    credential_env: Optional[str] = None
    timeout_s: float = 60.0
    retries: int = 3
    transcript_path: Optional[str] = None

    def __post_init__(self):
        if self.provider == "live" and (not self.endpoint or not self.credential_env):
            raise ValueError("live provider requires endpoint and credential_env")
        if self.provider == "replay" and not self.transcript_path:
            raise ValueError("replay provider requires transcript_path")


def _check_turn_order(transcript: Transcript) -> None:
    if transcript.turns and transcript.turns[-1].role != "assistant":
        raise ChatError("transcript must be empty or end with an assistant turn")


class ScriptedClient:
    """Returns primed responses in order; fails loudly when exhausted."""

    provider_tag = "scripted"

    def __init__(self, responses: list[str], model: str = "scripted"):
        self._responses = list(responses)
        self._next = 0
        self.model_tag = model

    def query(self, transcript: Transcript, message: PromptMessage) -> str:
        _check_turn_order(transcript)
        if self._next >= len(self._responses):
            raise ChatError(f"scripted client exhausted after {self._next} responses")
        response = self._responses[self._next]
        self._next += 1
        transcript.append("user", message.text)
        transcript.append("assistant", response)
        return response


class ReplayClient:
    """Replays a recorded transcript, verifying each prompt byte-wise."""

    provider_tag = "replay"

    def __init__(self, recording: Transcript):
        self._recording = recording
        self._cursor = 0
        self.model_tag = recording.model

    @classmethod
    def from_path(cls, path: str | Path) -> "ReplayClient":
        return cls(load(path))

    def query(self, transcript: Transcript, message: PromptMessage) -> str:
        _check_turn_order(transcript)
        turns = self._recording.turns
        if self._cursor + 1 >= len(turns):
            raise ReplayExhausted(f"recording has only {len(turns)} turns")
        recorded_user = turns[self._cursor]
        recorded_assistant = turns[self._cursor + 1]
        if recorded_user.role != "user" or recorded_assistant.role != "assistant":
            raise ChatError(f"recording misaligned at turn {self._cursor}")
        if recorded_user.text != message.text:
            diff = "\n".join(
                difflib.unified_diff(
                    recorded_user.text.splitlines(),
                    message.text.splitlines(),
                    fromfile=f"recorded turn {self._cursor}",
                    tofile="sent prompt",
                    lineterm="",
                )
            )
            raise ReplayDivergence(
                f"prompt diverges from recording at turn {self._cursor}:\n{diff}"
            )
        self._cursor += 2
        transcript.append("user", message.text, ts=recorded_user.ts)
        transcript.append("assistant", recorded_assistant.text, ts=recorded_assistant.ts)
        return recorded_assistant.text


_request_cap: Optional[threading.BoundedSemaphore] = None


def set_request_cap(limit: Optional[int]) -> None:
    """Global cap on concurrent live requests across all sessions."""
    global _request_cap
    _request_cap = threading.BoundedSemaphore(limit) if limit else None


class LiveClient:
    """Generic chat-completions HTTP client with retry and backoff."""

    provider_tag = "live"

    def __init__(self, cfg: ProviderConfig, transport=None):
        if cfg.provider != "live":
            raise ValueError("LiveClient requires a live ProviderConfig")
        self.cfg = cfg
        self.model_tag = cfg.model
        if transport is None:
            import requests

            transport = requests.post
        self._post = transport

    def query(self, transcript: Transcript, message: PromptMessage) -> str:
        _check_turn_order(transcript)
        credential = os.environ.get(self.cfg.credential_env or "", "")
        if not credential:
            raise TransportError(f"credential env var {self.cfg.credential_env} is not set")
        messages = [{"role": t.role, "content": t.text} for t in transcript.turns]
        messages.append({"role": "user", "content": message.text})
        body = {self.cfg.model_field: self.cfg.model, "messages": messages}
        url = (self.cfg.endpoint or "").rstrip("/") + self.cfg.endpoint_path
        last_error: Optional[Exception] = None
        for attempt in range(self.cfg.retries + 1):
            if attempt:
                time.sleep(min(0.5 * 2 ** (attempt - 1), 8.0))
            try:
                if _request_cap is not None:
                    with _request_cap:
                        response = self._post(
                            url,
                            json=body,
                            timeout=self.cfg.timeout_s,
                            headers={"Authorization": f"Bearer {credential}"},
                        )
                else:
                    response = self._post(
                        url,
                        json=body,
                        timeout=self.cfg.timeout_s,
                        headers={"Authorization": f"Bearer {credential}"},
                    )
                if response.status_code >= 500:
                    last_error = TransportError(f"server error {response.status_code}")
                    continue
                if response.status_code != 200:
                    raise TransportError(f"request failed with status {response.status_code}")
                text = response.json()["choices"][0]["message"]["content"]
                transcript.append("user", message.text)
                transcript.append("assistant", text)
                return text
            except TransportError:
                raise
            except Exception as err:  # transport-level failure: retry
                last_error = err
        raise TransportError(f"live request failed after {self.cfg.retries + 1} attempts: {last_error}")


def make_client(cfg: ProviderConfig):
    if cfg.provider == "live":
        return LiveClient(cfg)
    if cfg.provider == "replay":
        return ReplayClient.from_path(cfg.transcript_path or "")
    raise ValueError(f"cannot build a {cfg.provider!r} client from config alone")
