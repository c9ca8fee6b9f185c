"""Random, oracle-scripted and remote-LLM agents."""

from __future__ import annotations

import enum
import os
import threading
import time
from dataclasses import dataclass, field

import httpx

from .core import AgentFailure, ConfigError, TurnContext
from .protocol.payloads import format_payload


class AgentKind(str, enum.Enum):
    RANDOM = "Random"
    SCRIPTED = "OracleScripted"
    REMOTE = "RemoteLLM"


@dataclass(frozen=True)
class AgentSpec:
    kind: AgentKind
    agent_id: str = ""
    endpoint: str = ""
    model: str = ""
    credential_env: str = ""
    max_output_tokens: int = 4096
    timeout: float = 120.0
    retries: int = 3
    provider: str = "openai"
    max_in_flight: int = 4
    backoff: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", AgentKind(self.kind))
        if not self.agent_id:
            object.__setattr__(self, "agent_id", self.model or self.kind.value)


def final_line(ctx: TurnContext, action) -> str:
    return ctx.game.answer_line(ctx.game.action_text(action))


class RandomAgent:
    """Uniform legal play; writes only the final action."""

    def __init__(self, agent_id: str = "Random"):
        self.agent_id = agent_id

    def reply(self, prompt: str, ctx: TurnContext) -> str:
        return final_line(ctx, ctx.game.random_action(ctx.state, ctx.seat, ctx.rng))


class OracleScriptedAgent:
    """Writes every oracle answer as a marker, then plays the game's scripted policy."""

    def __init__(self, agent_id: str = "OracleScripted"):
        self.agent_id = agent_id

    def reply(self, prompt: str, ctx: TurnContext) -> str:
        game = ctx.game
        action = game.scripted_action(ctx.state, ctx.seat, ctx.truths, ctx.rng)
        truths = game.truths_after_reply(ctx.state, ctx.seat, ctx.truths, action)
        kinds = {s.index: s.kind for s in game.subproblems}
        lines = [
            f"[Intermediate Thinking Results {t.index}: {format_payload(kinds[t.index], t.value)}]"
            for t in truths
            if t.value is not None
        ]
        lines.append(final_line(ctx, action))
        return "\n".join(lines)


# -- remote models ---------------------------------------------------------------
def _openai_request(spec: AgentSpec, key: str, prompt: str):
    headers = {"Authorization": f"Bearer {key}", "Content-Type": "application/json"}
    body = {"model": spec.model, "messages": [{"role": "user", "content": prompt}], "max_tokens": spec.max_output_tokens}
    return headers, body


def _openai_text(data: dict) -> str:
    return data["choices"][0]["message"]["content"]


def _anthropic_request(spec: AgentSpec, key: str, prompt: str):
    headers = {"x-api-key": key, "anthropic-version": "2023-06-01", "Content-Type": "application/json"}
    body = {"model": spec.model, "messages": [{"role": "user", "content": prompt}], "max_tokens": spec.max_output_tokens}
    return headers, body


def _anthropic_text(data: dict) -> str:
    return "".join(block.get("text", "") for block in data["content"] if block.get("type", "text") == "text")


ADAPTERS = {
    "openai": (_openai_request, _openai_text),
    "anthropic": (_anthropic_request, _anthropic_text),
}

RETRY_STATUS = {408, 409, 425, 429, 500, 502, 503, 504, 529}

_limiters: dict[str, threading.BoundedSemaphore] = {}
_limiters_lock = threading.Lock()


def _limiter(name: str, size: int) -> threading.BoundedSemaphore:
    with _limiters_lock:
        if name not in _limiters:
            _limiters[name] = threading.BoundedSemaphore(size)
        return _limiters[name]


@dataclass
class RemoteLLMAgent:
    """One chat-completion request per turn; the prompt is the sole user message."""

    spec: AgentSpec
    transport: httpx.BaseTransport | None = None
    _key: str = field(default="", init=False, repr=False)
    _client: httpx.Client = field(init=False, repr=False)

    def __post_init__(self):
        if not self.spec.endpoint or not self.spec.model:
            raise ConfigError(f"agent {self.spec.agent_id}: endpoint and model are required")
        if self.spec.provider not in ADAPTERS:
            raise ConfigError(f"unknown provider {self.spec.provider!r}")
        if not self.spec.credential_env:
            raise ConfigError(f"agent {self.spec.agent_id}: credential_env is required")
        self._key = os.environ.get(self.spec.credential_env, "")
        if not self._key:
            raise ConfigError(f"agent {self.spec.agent_id}: environment variable {self.spec.credential_env} is not set")
        self._client = httpx.Client(timeout=self.spec.timeout, transport=self.transport)
        self._slots = _limiter(self.spec.credential_env, self.spec.max_in_flight)

    @property
    def agent_id(self) -> str:
        return self.spec.agent_id

    def reply(self, prompt: str, ctx: TurnContext | None = None) -> str:
        build, read = ADAPTERS[self.spec.provider]
        headers, body = build(self.spec, self._key, prompt)
        last_error = "no attempt made"
        for attempt in range(self.spec.retries + 1):
            if attempt:
                time.sleep(self.spec.backoff * 2 ** (attempt - 1))
            try:
                with self._slots:
                    response = self._client.post(self.spec.endpoint, headers=headers, json=body)
            except httpx.HTTPError as exc:
                last_error = type(exc).__name__
                continue
            if response.status_code in RETRY_STATUS:
                last_error = f"HTTP {response.status_code}"
                continue
            if response.status_code >= 400:
                raise AgentFailure(f"{self.agent_id}: HTTP {response.status_code}")
            try:
                return read(response.json())
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise AgentFailure(f"{self.agent_id}: malformed response ({type(exc).__name__})") from None
        raise AgentFailure(f"{self.agent_id}: gave up after {self.spec.retries + 1} attempts ({last_error})")

    def close(self) -> None:
        self._client.close()


def build_agent(spec: AgentSpec, transport: httpx.BaseTransport | None = None):
    if spec.kind is AgentKind.RANDOM:
        return RandomAgent(spec.agent_id)
    if spec.kind is AgentKind.SCRIPTED:
        return OracleScriptedAgent(spec.agent_id)
    return RemoteLLMAgent(spec, transport)
