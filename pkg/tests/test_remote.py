"""Remote chat-completions backend, exercised through httpx.MockTransport."""

from __future__ import annotations

import json

import httpx
import pytest

from xrwm.errors import AuthError, ConfigError, MalformedJson, NetworkError, ProviderError
from xrwm.prompt import PromptDocument
from xrwm.remote import API_KEY_ENV, CORRECTIVE_INSTRUCTION, RemoteConfig, RemoteResolver

GOOD_PLAN = '{"response": "ok", "actions": [["place", "w1", "s1"]]}'
FENCED_PLAN = f"```json\n{GOOD_PLAN}\n```"
BAD_REPLY = "Sure! I'd suggest the cabinet."


def make_prompt() -> PromptDocument:
    return PromptDocument(
        system_text="resolve requests",
        input_payload={
            "user_request": "move it",
            "flat_surfaces": [],
            "windows": [],
            "userPointingEvents": [],
        },
    )


def completion(content: str) -> httpx.Response:
    return httpx.Response(
        200, json={"choices": [{"message": {"content": content}}]}
    )


def scripted_resolver(replies, config=None, requests_seen=None):
    """Resolver whose endpoint returns each entry of ``replies`` in turn."""
    replies = list(replies)

    def handler(request: httpx.Request) -> httpx.Response:
        if requests_seen is not None:
            requests_seen.append(request)
        reply = replies.pop(0)
        if isinstance(reply, httpx.Response):
            return reply
        if isinstance(reply, Exception):
            raise reply
        return completion(reply)

    cfg = config or RemoteConfig(api_key="sk-test")
    return RemoteResolver(cfg, transport=httpx.MockTransport(handler))


class TestHappyPath:
    def test_plain_reply_returned_verbatim(self):
        resolver = scripted_resolver([GOOD_PLAN])
        assert resolver.resolve(make_prompt()) == GOOD_PLAN

    def test_fenced_reply_accepted_first_try(self):
        seen: list[httpx.Request] = []
        resolver = scripted_resolver([FENCED_PLAN], requests_seen=seen)
        assert resolver.resolve(make_prompt()) == FENCED_PLAN
        assert len(seen) == 1

    def test_request_body_and_messages(self):
        seen: list[httpx.Request] = []
        resolver = scripted_resolver([GOOD_PLAN], requests_seen=seen)
        prompt = make_prompt()
        resolver.resolve(prompt)
        body = json.loads(seen[0].content)
        assert body["model"] == "gpt-4"
        assert body["messages"] == [
            {"role": "system", "content": prompt.system_text},
            {"role": "user", "content": prompt.canonical_payload()},
        ]
        assert seen[0].headers["authorization"] == "Bearer sk-test"
        assert seen[0].url.path.endswith("/chat/completions")

    def test_base_url_trailing_slash_tolerated(self):
        seen: list[httpx.Request] = []
        cfg = RemoteConfig(base_url="https://example.test/v1/", api_key="sk-test")
        resolver = scripted_resolver([GOOD_PLAN], config=cfg, requests_seen=seen)
        resolver.resolve(make_prompt())
        assert str(seen[0].url) == "https://example.test/v1/chat/completions"


class TestCorrectiveRetry:
    def test_malformed_then_good_takes_exactly_two_requests(self):
        seen: list[httpx.Request] = []
        resolver = scripted_resolver([BAD_REPLY, GOOD_PLAN], requests_seen=seen)
        assert resolver.resolve(make_prompt()) == GOOD_PLAN
        assert len(seen) == 2

    def test_retry_appends_assistant_echo_and_corrective_user_turn(self):
        seen: list[httpx.Request] = []
        resolver = scripted_resolver([BAD_REPLY, GOOD_PLAN], requests_seen=seen)
        resolver.resolve(make_prompt())
        first = json.loads(seen[0].content)["messages"]
        second = json.loads(seen[1].content)["messages"]
        assert second[: len(first)] == first
        assert second[len(first):] == [
            {"role": "assistant", "content": BAD_REPLY},
            {"role": "user", "content": CORRECTIVE_INSTRUCTION},
        ]

    def test_twice_malformed_raises_with_both_raw_texts(self):
        resolver = scripted_resolver([BAD_REPLY, "still not json"])
        with pytest.raises(MalformedJson) as exc_info:
            resolver.resolve(make_prompt())
        assert exc_info.value.attempts == [BAD_REPLY, "still not json"]

    def test_zero_retries_fails_after_one_request(self):
        seen: list[httpx.Request] = []
        cfg = RemoteConfig(api_key="sk-test", corrective_retries=0)
        resolver = scripted_resolver([BAD_REPLY], config=cfg, requests_seen=seen)
        with pytest.raises(MalformedJson) as exc_info:
            resolver.resolve(make_prompt())
        assert len(seen) == 1
        assert exc_info.value.attempts == [BAD_REPLY]


class TestTransportErrors:
    @pytest.mark.parametrize("status", [401, 403])
    def test_credential_rejection(self, status):
        resolver = scripted_resolver([httpx.Response(status, text="no")])
        with pytest.raises(AuthError):
            resolver.resolve(make_prompt())

    @pytest.mark.parametrize("status", [500, 503])
    def test_server_errors(self, status):
        resolver = scripted_resolver([httpx.Response(status, text="boom")])
        with pytest.raises(ProviderError):
            resolver.resolve(make_prompt())

    def test_unexpected_status(self):
        resolver = scripted_resolver([httpx.Response(418, text="teapot")])
        with pytest.raises(ProviderError):
            resolver.resolve(make_prompt())

    def test_timeout(self):
        resolver = scripted_resolver([httpx.ConnectTimeout("slow")])
        with pytest.raises(NetworkError):
            resolver.resolve(make_prompt())

    def test_transport_failure(self):
        resolver = scripted_resolver([httpx.ConnectError("refused")])
        with pytest.raises(NetworkError):
            resolver.resolve(make_prompt())

    @pytest.mark.parametrize(
        "payload",
        [{"choices": []}, {"choices": [{"message": {}}]}, {"nope": 1}],
    )
    def test_missing_content_shape(self, payload):
        resolver = scripted_resolver([httpx.Response(200, json=payload)])
        with pytest.raises(ProviderError):
            resolver.resolve(make_prompt())

    def test_non_string_content(self):
        resolver = scripted_resolver(
            [httpx.Response(200, json={"choices": [{"message": {"content": 5}}]})]
        )
        with pytest.raises(ProviderError):
            resolver.resolve(make_prompt())


class TestConfig:
    def test_missing_key_is_config_error(self, monkeypatch):
        monkeypatch.delenv(API_KEY_ENV, raising=False)
        resolver = scripted_resolver([GOOD_PLAN], config=RemoteConfig())
        with pytest.raises(ConfigError):
            resolver.resolve(make_prompt())

    def test_key_from_environment(self, monkeypatch):
        monkeypatch.setenv(API_KEY_ENV, "sk-env")
        seen: list[httpx.Request] = []
        resolver = scripted_resolver([GOOD_PLAN], config=RemoteConfig(), requests_seen=seen)
        resolver.resolve(make_prompt())
        assert seen[0].headers["authorization"] == "Bearer sk-env"

    def test_explicit_key_beats_environment(self, monkeypatch):
        monkeypatch.setenv(API_KEY_ENV, "sk-env")
        seen: list[httpx.Request] = []
        resolver = scripted_resolver(
            [GOOD_PLAN], config=RemoteConfig(api_key="sk-arg"), requests_seen=seen
        )
        resolver.resolve(make_prompt())
        assert seen[0].headers["authorization"] == "Bearer sk-arg"
