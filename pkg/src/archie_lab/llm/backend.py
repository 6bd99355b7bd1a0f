"""Completion backends: a live HTTP client that records every exchange, and a
replay store that serves recorded exchanges by exact prompt hash. The test
suite and all default workflows run entirely on replay; nothing there opens a
network socket."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

DEFAULT_TOKEN_ENV = "ARCHIE_LLM_TOKEN"
DEFAULT_RESPONSE_POINTER = "/choices/0/message/content"


class FixtureMiss(KeyError):
    def __init__(self, key: str, directory: Path):
        super().__init__(f"no recorded exchange {key} in {directory}")
        self.key = key


class AuthError(RuntimeError):
    pass


class BackendError(RuntimeError):
    pass


def fixture_key(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Fixture:
    key: str
    prompt: str
    response: str
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def verify(self) -> None:
        actual = fixture_key(self.prompt)
        if actual != self.key:
            raise BackendError(f"fixture key {self.key} does not match its prompt ({actual})")

    def to_json(self) -> str:
        return json.dumps(
            {
                "key": self.key,
                "prompt": self.prompt,
                "response": self.response,
                "metadata": dict(self.metadata),
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "Fixture":
        doc = json.loads(text)
        return cls(
            key=doc["key"],
            prompt=doc["prompt"],
            response=doc["response"],
            metadata=doc.get("metadata", {}),
        )


def write_fixture(fixture: Fixture, directory: str | Path) -> Path:
    """Atomic write so concurrent recorders cannot corrupt an entry."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    final = directory / f"{fixture.key}.json"
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(fixture.to_json())
        os.replace(tmp, final)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return final


class ReplayBackend:
    """Serves recorded exchanges by exact prompt hash; performs no I/O beyond
    reading fixture files."""

    def __init__(self, fixture_dir: str | Path):
        self.fixture_dir = Path(fixture_dir)

    def complete(self, prompt: str) -> str:
        key = fixture_key(prompt)
        path = self.fixture_dir / f"{key}.json"
        if not path.exists():
            raise FixtureMiss(key, self.fixture_dir)
        fixture = Fixture.from_json(path.read_text())
        fixture.verify()
        if fixture.prompt != prompt:
            raise BackendError(f"fixture {key} stores a different prompt (hash collision?)")
        return fixture.response


Transport = Callable[[str, dict, dict], dict]


def _requests_transport(endpoint: str, body: dict, headers: dict) -> dict:
    import requests

    resp = requests.post(endpoint, json=body, headers=headers, timeout=120)
    resp.raise_for_status()
    return resp.json()


def resolve_pointer(doc: Any, pointer: str) -> Any:
    """Minimal JSON-pointer lookup ('/choices/0/message/content')."""
    node = doc
    for part in pointer.strip("/").split("/"):
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict):
            node = node[part]
        else:
            raise BackendError(f"cannot descend into {type(node).__name__} at {part!r}")
    return node


class LiveBackend:
    """One HTTP round trip per completion; every exchange is persisted as a
    fixture so the run can later be replayed offline."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        record_dir: str | Path,
        token_env: str = DEFAULT_TOKEN_ENV,
        response_pointer: str = DEFAULT_RESPONSE_POINTER,
        decoding: Optional[Mapping[str, Any]] = None,
        transport: Optional[Transport] = None,
    ):
        self.endpoint = endpoint
        self.model = model
        self.record_dir = Path(record_dir)
        self.token_env = token_env
        self.response_pointer = response_pointer
        self.decoding = dict(decoding or {})
        self._transport = transport or _requests_transport

    def complete(self, prompt: str) -> str:
        token = os.environ.get(self.token_env)
        if not token:
            raise AuthError(f"auth token env var {self.token_env} is not set")
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            **self.decoding,
        }
        headers = {"Authorization": f"Bearer {token}", "Content-Type": "application/json"}
        try:
            doc = self._transport(self.endpoint, body, headers)
        except Exception as exc:  # noqa: BLE001 - network errors become BackendError
            raise BackendError(f"completion request failed: {exc}") from exc
        text = resolve_pointer(doc, self.response_pointer)
        if not isinstance(text, str):
            raise BackendError(
                f"response pointer {self.response_pointer} resolved to {type(text).__name__}"
            )
        fixture = Fixture(
            key=fixture_key(prompt),
            prompt=prompt,
            response=text,
            metadata={"model": self.model, "endpoint": self.endpoint},
        )
        write_fixture(fixture, self.record_dir)
        return text


def complete(backend, prompt: str) -> str:
    return backend.complete(prompt)
