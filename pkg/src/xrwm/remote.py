"""Remote resolver: OpenAI-compatible chat-completions client.

Sends the system text as the system message and the canonical payload
JSON as the user message. When the reply does not parse as an action
plan the client retries once (configurable) with a corrective
instruction appended to the conversation; if every attempt fails, the
caller gets MalformedJson carrying each raw reply for the event log.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Protocol

import httpx

from .errors import AuthError, ConfigError, EngineError, MalformedJson, NetworkError, ProviderError
from .plan import parse_plan
from .prompt import PromptDocument

CORRECTIVE_INSTRUCTION = (
    "Your previous reply was not a valid action plan. Respond with only the "
    'JSON object: {"response": "<text>", "actions": [["place", "<windowid>", '
    '"<surface>"], ...]} and no other text.'
)

API_KEY_ENV = "OPENAI_API_KEY"


class ResolverBackend(Protocol):
    """Anything that turns a prompt into raw action-plan text."""

    name: str

    def resolve(self, prompt: PromptDocument) -> str: ...


@dataclass(frozen=True)
class RemoteConfig:
    base_url: str = "https://api.openai.com/v1"
    model: str = "gpt-4"
    timeout_s: float = 30.0
    #: retries after a reply that fails to parse (1 = the documented default)
    corrective_retries: int = 1
    api_key: str | None = None

    def resolved_api_key(self) -> str:
        key = self.api_key or os.environ.get(API_KEY_ENV, "")
        if not key:
            raise ConfigError(
                f"remote resolver needs an API key ({API_KEY_ENV} or explicit api_key)"
            )
        return key


class RemoteResolver:
    """ResolverBackend backed by a chat-completions HTTP endpoint.

    ``transport`` lets tests swap in an httpx.MockTransport; production
    callers leave it None.
    """

    name = "remote"

    def __init__(self, config: RemoteConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self._transport = transport

    def resolve(self, prompt: PromptDocument) -> str:
        messages = [
            {"role": "system", "content": prompt.system_text},
            {"role": "user", "content": prompt.canonical_payload()},
        ]
        attempts: list[str] = []
        for attempt in range(1 + max(0, self.config.corrective_retries)):
            raw = self._complete(messages)
            try:
                parse_plan(raw)
                return raw
            except EngineError:
                attempts.append(raw)
                messages = messages + [
                    {"role": "assistant", "content": raw},
                    {"role": "user", "content": CORRECTIVE_INSTRUCTION},
                ]
        raise MalformedJson(
            f"model output failed to parse after {len(attempts)} attempt(s)",
            attempts=attempts,
        )

    def _complete(self, messages: list[dict]) -> str:
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        headers = {"Authorization": f"Bearer {self.config.resolved_api_key()}"}
        body = {"model": self.config.model, "messages": messages}
        try:
            with httpx.Client(
                transport=self._transport, timeout=self.config.timeout_s
            ) as client:
                resp = client.post(url, json=body, headers=headers)
        except httpx.TimeoutException as exc:
            raise NetworkError(f"chat completions timed out after {self.config.timeout_s}s") from exc
        except httpx.HTTPError as exc:
            raise NetworkError(f"chat completions transport failure: {exc}") from exc

        if resp.status_code in (401, 403):
            raise AuthError(f"chat completions rejected credentials ({resp.status_code})")
        if resp.status_code >= 500:
            raise ProviderError(
                f"chat completions server error {resp.status_code}: {resp.text[:200]}"
            )
        if resp.status_code != 200:
            raise ProviderError(
                f"chat completions unexpected status {resp.status_code}: {resp.text[:200]}"
            )

        try:
            data = resp.json()
            content = data["choices"][0]["message"]["content"]
        except (ValueError, LookupError, TypeError) as exc:
            raise ProviderError(f"chat completions response missing content: {exc}") from exc
        if not isinstance(content, str):
            raise ProviderError("chat completions content is not text")
        return content
