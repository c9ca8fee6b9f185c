"""Match and tournament engine, audit records and replay."""

from __future__ import annotations

import enum
import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Protocol, Sequence

from . import rng as rngmod
from .games import GAME_IDS, get_game
from .games.base import Game, Outcome, Seat, SubproblemTruth
from .protocol.extract import ParsedResponse, parse_response
from .protocol.payloads import ParseFailure, format_payload, parse_payload
from .protocol.templates import Variant, prompt_for


class ConfigError(ValueError):
    """Invalid match, tournament or run configuration."""


class AgentFailure(RuntimeError):
    """An agent could not produce a reply (transport error, exhausted retries)."""


class InvalidActionPolicy(str, enum.Enum):
    RANDOM_FALLBACK = "RandomFallback"
    FORFEIT = "ForfeitMatch"


class Termination(str, enum.Enum):
    NATURAL_END = "NaturalEnd"
    TURN_LIMIT = "TurnLimit"
    FORFEIT = "Forfeit"
    DRAW_RULE = "DrawRule"


@dataclass(frozen=True)
class MatchConfig:
    game_id: str
    seed: int
    max_turns: int | None = None  # None: four times the game's average length
    prompt_variant: Variant = Variant.CURATED
    parse_retries: int = 1
    invalid_action_policy: InvalidActionPolicy = InvalidActionPolicy.RANDOM_FALLBACK
    strict_parse: bool = False

    def __post_init__(self):
        if self.game_id not in GAME_IDS:
            raise ConfigError(f"unsupported game_id {self.game_id!r}")
        object.__setattr__(self, "prompt_variant", Variant(self.prompt_variant))
        object.__setattr__(self, "invalid_action_policy", InvalidActionPolicy(self.invalid_action_policy))
        if self.max_turns is None:
            object.__setattr__(self, "max_turns", get_game(self.game_id).max_turns)
        if self.max_turns < 1:
            raise ConfigError("max_turns must be at least 1")
        if self.parse_retries < 0:
            raise ConfigError("parse_retries must be non-negative")


@dataclass
class TurnContext:
    """What an agent may look at besides the prompt text."""

    game: Game
    state: Any
    seat: Seat
    legal_actions: list
    truths: list[SubproblemTruth]
    rng: random.Random
    turn_index: int
    variant: Variant


class Agent(Protocol):
    agent_id: str

    def reply(self, prompt: str, ctx: TurnContext) -> str: ...


@dataclass
class TurnRecord:
    turn_index: int
    seat: Seat
    state_text: str
    prompt_text: str
    raw_reply: str
    parsed: ParsedResponse
    truths: list[SubproblemTruth]
    action_taken: str | None  # canonical text; None only on the forfeiting turn
    action_was_fallback: bool
    attempts: int = 1


@dataclass
class MatchRecord:
    config: MatchConfig
    agent_ids: tuple[str, str]
    turns: list[TurnRecord] = field(default_factory=list)
    reward_first: float = 0
    reward_second: float = 0
    reward_cap: float = 1
    termination_reason: Termination = Termination.NATURAL_END

    def reward_for(self, seat: Seat) -> float:
        return self.reward_first if seat is Seat.FIRST else self.reward_second

    def seat_of(self, agent_id: str) -> Seat:
        return Seat(self.agent_ids.index(agent_id))


# -- running -------------------------------------------------------------------
def _ask(agent, prompt: str, ctx: TurnContext, game: Game, config: MatchConfig):
    """Query until the reply resolves to a legal action or retries run out."""
    attempts = 0
    while True:
        attempts += 1
        try:
            raw = agent.reply(prompt, ctx)
        except AgentFailure as exc:
            raw = ""
            parsed = ParsedResponse(
                {s.index: ParseFailure("agent failure") for s in game.subproblems},
                ParseFailure(f"agent failure: {exc}"),
            )
        else:
            parsed = parse_response(raw, game, config.strict_parse)
        action = None
        if not isinstance(parsed.action, ParseFailure):
            action = game.resolve(ctx.state, ctx.seat, parsed.action)
        if action is not None or attempts > config.parse_retries:
            return raw, parsed, action, attempts


def run_match(config: MatchConfig, agent_a, agent_b) -> MatchRecord:
    """Play one match; ``agent_a`` sits First."""
    game = get_game(config.game_id)
    agents = (agent_a, agent_b)
    record = MatchRecord(config, (agent_a.agent_id, agent_b.agent_id), reward_cap=game.reward_cap)
    state = game.initial_state(config.seed)
    tick = 0
    while True:
        result = game.outcome(state)
        if result is not Outcome.ONGOING:
            draw_rule = result is Outcome.DRAW and game.draw_is_rule(state)
            record.termination_reason = Termination.DRAW_RULE if draw_rule else Termination.NATURAL_END
            record.reward_first, record.reward_second = game.rewards(state)
            return record
        if tick >= config.max_turns:
            record.termination_reason = Termination.TURN_LIMIT
            record.reward_first, record.reward_second = game.turn_limit_rewards(state)
            return record
        actions = {}
        for seat in game.to_move(state):
            state_text, prompt = prompt_for(game, state, seat, config.prompt_variant)
            truths = game.truths(state, seat)
            legal = game.legal_actions(state, seat)
            ctx = TurnContext(
                game, state, seat, legal, truths,
                rngmod.derive_rng(config.seed, [rngmod.AGENT, seat, tick]), tick, config.prompt_variant,
            )
            raw, parsed, action, attempts = _ask(agents[seat], prompt, ctx, game, config)
            truths = game.truths_after_reply(state, seat, truths, action)
            for index, payload in list(parsed.intermediates.items()):
                if not isinstance(payload, ParseFailure):
                    parsed.intermediates[index] = game.normalize_intermediate(state, seat, index, payload)
            fallback = action is None
            if fallback and config.invalid_action_policy is InvalidActionPolicy.FORFEIT:
                record.turns.append(TurnRecord(tick, seat, state_text, prompt, raw, parsed, truths, None, False, attempts))
                record.termination_reason = Termination.FORFEIT
                cap = game.reward_cap
                record.reward_first, record.reward_second = (-cap, cap) if seat is Seat.FIRST else (cap, -cap)
                return record
            if fallback:
                action = game.random_action(state, seat, rngmod.derive_rng(config.seed, [rngmod.FALLBACK, seat, tick]))
            record.turns.append(
                TurnRecord(tick, seat, state_text, prompt, raw, parsed, truths, game.action_text(action), fallback, attempts)
            )
            actions[seat] = action
        state = game.apply(state, actions)
        tick += 1


@dataclass(frozen=True)
class ScheduledMatch:
    pair_index: int
    match_index: int
    first: int  # agent indices
    second: int
    seed: int


def schedule(n_agents: int, game_id: str, matches_per_pair: int, base_seed: int) -> list[ScheduledMatch]:
    """Round robin: every unordered pair plays ``matches_per_pair`` matches, seats alternating."""
    if matches_per_pair <= 0 or matches_per_pair % 2:
        raise ConfigError("matches_per_pair must be a positive even number")
    if game_id not in GAME_IDS:
        raise ConfigError(f"unsupported game_id {game_id!r}")
    game_index = GAME_IDS.index(game_id)
    out = []
    for pair_index, (i, j) in enumerate(itertools.combinations(range(n_agents), 2)):
        for m in range(matches_per_pair):
            first, second = (i, j) if m % 2 == 0 else (j, i)
            seed = rngmod.derive_seed(base_seed, [game_index, pair_index, m])
            out.append(ScheduledMatch(pair_index, m, first, second, seed))
    return out


def run_tournament(
    agents: Sequence,
    game_id: str,
    matches_per_pair: int = 20,
    base_seed: int = 0,
    *,
    prompt_variant: Variant | str = Variant.CURATED,
    parse_retries: int = 1,
    invalid_action_policy: InvalidActionPolicy | str = InvalidActionPolicy.RANDOM_FALLBACK,
    strict_parse: bool = False,
    parallel: int = 1,
    skip=None,
) -> list[MatchRecord]:
    """Run the full round robin for one game; records come back in schedule order.

    ``skip`` is an optional predicate on :class:`ScheduledMatch` used to resume runs.
    """
    if len({a.agent_id for a in agents}) != len(agents):
        raise ConfigError("agent ids must be unique")
    jobs = [s for s in schedule(len(agents), game_id, matches_per_pair, base_seed) if not (skip and skip(s))]

    def play(job: ScheduledMatch) -> MatchRecord:
        config = MatchConfig(game_id, job.seed, None, prompt_variant, parse_retries, invalid_action_policy, strict_parse)
        return run_match(config, agents[job.first], agents[job.second])

    if parallel <= 1:
        return [play(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(play, jobs))


# -- serialization ---------------------------------------------------------------
def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, enum.Enum):
        return value.value
    return value


def _tupled(value):
    if isinstance(value, list):
        return tuple(_tupled(v) for v in value)
    return value


def _payload_to_json(kind: str, value):
    if isinstance(value, ParseFailure):
        return {"parse_failure": value.reason}
    return {"text": format_payload(kind, value)}


def _payload_from_json(kind: str, data):
    if "parse_failure" in data:
        return ParseFailure(data["parse_failure"])
    return parse_payload(kind, data["text"], strict=True)


def record_to_dict(record: MatchRecord) -> dict:
    game = get_game(record.config.game_id)
    kinds = {s.index: s.kind for s in game.subproblems}
    turns = []
    for t in record.turns:
        parsed = {
            "intermediates": {str(i): _payload_to_json(kinds[i], v) for i, v in t.parsed.intermediates.items()},
            "action": {"parse_failure": t.parsed.action.reason}
            if isinstance(t.parsed.action, ParseFailure)
            else {"value": _jsonable(t.parsed.action)},
            "raw_spans": {k: list(v) for k, v in t.parsed.raw_spans.items()},
        }
        truths = [
            {"index": tr.index, "value": None if tr.value is None else format_payload(kinds[tr.index], tr.value)}
            for tr in t.truths
        ]
        turns.append({
            "turn_index": t.turn_index,
            "seat": t.seat.name,
            "state_text": t.state_text,
            "prompt_text": t.prompt_text,
            "raw_reply": t.raw_reply,
            "parsed": parsed,
            "truths": truths,
            "action_taken": t.action_taken,
            "action_was_fallback": t.action_was_fallback,
            "attempts": t.attempts,
        })
    config = {k: _jsonable(v) for k, v in asdict(record.config).items()}
    return {
        "config": config,
        "agent_ids": list(record.agent_ids),
        "turns": turns,
        "reward_first": record.reward_first,
        "reward_second": record.reward_second,
        "reward_cap": record.reward_cap,
        "termination_reason": record.termination_reason.value,
    }


def record_from_dict(data: dict) -> MatchRecord:
    config = MatchConfig(**data["config"])
    game = get_game(config.game_id)
    kinds = {s.index: s.kind for s in game.subproblems}
    turns = []
    for t in data["turns"]:
        p = t["parsed"]
        action = p["action"]
        parsed = ParsedResponse(
            {int(i): _payload_from_json(kinds[int(i)], v) for i, v in p["intermediates"].items()},
            ParseFailure(action["parse_failure"]) if "parse_failure" in action else _tupled(action["value"]),
            {k: tuple(v) for k, v in p["raw_spans"].items()},
        )
        truths = [
            SubproblemTruth(tr["index"], None if tr["value"] is None else parse_payload(kinds[tr["index"]], tr["value"], strict=True))
            for tr in t["truths"]
        ]
        turns.append(TurnRecord(
            t["turn_index"], Seat[t["seat"]], t["state_text"], t["prompt_text"], t["raw_reply"], parsed, truths,
            t["action_taken"], t["action_was_fallback"], t.get("attempts", 1),
        ))
    return MatchRecord(
        config, tuple(data["agent_ids"]), turns, data["reward_first"], data["reward_second"], data["reward_cap"],
        Termination(data["termination_reason"]),
    )


def record_to_json(record: MatchRecord) -> str:
    return json.dumps(record_to_dict(record), sort_keys=True, ensure_ascii=False)


def record_from_json(line: str) -> MatchRecord:
    return record_from_dict(json.loads(line))


# -- replay ------------------------------------------------------------------------
class ReplayMismatch(AssertionError):
    pass


def replay_states(record: MatchRecord) -> list:
    """States before each tick and the final state, re-derived from seed and logged actions.

    Raises :class:`ReplayMismatch` if any rendered state or prompt differs from the log.
    """
    game = get_game(record.config.game_id)
    state = game.initial_state(record.config.seed)
    states = [state]
    by_tick: dict[int, list[TurnRecord]] = {}
    for t in record.turns:
        by_tick.setdefault(t.turn_index, []).append(t)
    for tick in sorted(by_tick):
        actions = {}
        for t in by_tick[tick]:
            state_text, prompt = prompt_for(game, state, t.seat, record.config.prompt_variant)
            if state_text != t.state_text:
                raise ReplayMismatch(f"tick {tick} seat {t.seat.name}: state text differs")
            if prompt != t.prompt_text:
                raise ReplayMismatch(f"tick {tick} seat {t.seat.name}: prompt differs")
            if t.action_taken is None:
                return states
            actions[t.seat] = game.resolve_text(state, t.seat, t.action_taken)
        state = game.apply(state, actions)
        states.append(state)
    return states
