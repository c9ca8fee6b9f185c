"""Accuracy, F1, the O and I metrics, and scoreboards."""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable

from .games import GAME_IDS, get_game
from .games.base import Subproblem
from .protocol.extract import parse_response
from .protocol.payloads import ParseFailure


def score_accuracy(pairs: Iterable[tuple]) -> float | None:
    """Exact-match rate; a ParseFailure never matches. None for no pairs."""
    pairs = list(pairs)
    if not pairs:
        return None
    hits = sum(1 for pred, truth in pairs if not isinstance(pred, ParseFailure) and pred == truth)
    return hits / len(pairs)


def f1_counts(pred, truth: frozenset) -> tuple[int, int, int]:
    """(TP, FP, FN) for one turn of a set-valued answer."""
    if isinstance(pred, ParseFailure):
        return (0, 1, 0) if not truth else (0, 0, len(truth))
    pred = frozenset(pred)
    return len(pred & truth), len(pred - truth), len(truth - pred)


def _f1(tp: int, fp: int, fn: int) -> float:
    if tp + fp + fn == 0:
        return 1.0
    return 2 * tp / (2 * tp + fp + fn)


def score_f1(pairs: Iterable[tuple]) -> float | None:
    """Micro F1: TP/FP/FN pooled over all turns. Pairs hold positive sets."""
    pairs = list(pairs)
    if not pairs:
        return None
    tp = fp = fn = 0
    for pred, truth in pairs:
        a, b, c = f1_counts(pred, truth)
        tp, fp, fn = tp + a, fp + b, fn + c
    return _f1(tp, fp, fn)


def score_macro_f1(pairs: Iterable[tuple]) -> float | None:
    """Mean of per-turn F1 (a turn with both sides empty scores 1)."""
    pairs = list(pairs)
    if not pairs:
        return None
    return math.fsum(_f1(*f1_counts(pred, truth)) for pred, truth in pairs) / len(pairs)


def positive_set(sub: Subproblem, value):
    """Reduce a payload to the set of positive items F1 is computed over."""
    if isinstance(value, ParseFailure):
        return value
    if sub.kind == "bool":
        return frozenset({True}) if value == sub.positive else frozenset()
    if sub.kind == "safety":
        return frozenset(d for d, label in value if label == sub.positive)
    return frozenset(value)


def compute_outcome_metric(records, agent_id: str) -> float | None:
    """O = sum(R_j) / sum(T_j) over the matches ``agent_id`` played."""
    rewards, caps = [], []
    for r in records:
        if agent_id not in r.agent_ids:
            continue
        rewards.append(r.reward_for(r.seat_of(agent_id)))
        caps.append(r.reward_cap)
    total = math.fsum(caps)
    if total == 0:
        return None
    return math.fsum(rewards) / total


def compute_intermediate_metric(per_subproblem: Iterable[float]) -> float | None:
    """I = sum(I_t) / T."""
    values = list(per_subproblem)
    if not values:
        return None
    return math.fsum(values) / len(values)


def turn_pairs(records, agent_id: str, sub: Subproblem):
    """(predicted, truth) payloads for one subproblem over the agent's turns with a defined truth."""
    out = []
    for r in records:
        if agent_id not in r.agent_ids:
            continue
        seat = r.seat_of(agent_id)
        for t in r.turns:
            if t.seat is not seat:
                continue
            truth = next((x.value for x in t.truths if x.index == sub.index), None)
            if truth is None:
                continue
            out.append((t.parsed.intermediates.get(sub.index, ParseFailure("absent")), truth))
    return out


def emitted_markers(records, agent_id: str) -> bool:
    for r in records:
        if agent_id not in r.agent_ids:
            continue
        seat = r.seat_of(agent_id)
        for t in r.turns:
            if t.seat is seat and any(
                not (isinstance(v, ParseFailure) and v.reason == "absent") for v in t.parsed.intermediates.values()
            ):
                return True
    return False


@dataclass
class GameScore:
    agent_id: str
    game_id: str
    O: float | None
    I: float | None
    subproblem_scores: dict[int, float | None]
    macro_f1: dict[int, float | None]
    T: int
    matches: int
    turns: int
    fallback_rate: float | None


def score_game(records, agent_id: str, game_id: str) -> GameScore:
    game = get_game(game_id)
    records = [r for r in records if r.config.game_id == game_id and agent_id in r.agent_ids]
    scores, macro = {}, {}
    for sub in game.subproblems:
        pairs = turn_pairs(records, agent_id, sub)
        if sub.metric == "f1":
            sets = [(positive_set(sub, p), positive_set(sub, t)) for p, t in pairs]
            scores[sub.index] = score_f1(sets)
            macro[sub.index] = score_macro_f1(sets)
        else:
            scores[sub.index] = score_accuracy(pairs)
            macro[sub.index] = None
    counted = [scores[s.index] for s in game.subproblems if s.scored and scores[s.index] is not None]
    intermediate = compute_intermediate_metric(counted) if emitted_markers(records, agent_id) else None
    own_turns = [t for r in records for t in r.turns if t.seat is r.seat_of(agent_id)]
    fallbacks = sum(t.action_was_fallback for t in own_turns)
    return GameScore(
        agent_id, game_id, compute_outcome_metric(records, agent_id), intermediate, scores, macro,
        len(counted), len(records), len(own_turns), fallbacks / len(own_turns) if own_turns else None,
    )


def _mean(values) -> float | None:
    values = [v for v in values if v is not None]
    return math.fsum(values) / len(values) if values else None


@dataclass
class Scoreboard:
    agents: list[str]
    games: list[str]
    cells: dict[tuple[str, str], GameScore] = field(default_factory=dict)

    @classmethod
    def from_records(cls, records) -> "Scoreboard":
        records = list(records)
        agents = sorted({a for r in records for a in r.agent_ids})
        present = {r.config.game_id for r in records}
        games = [g for g in GAME_IDS if g in present]
        board = cls(agents, games)
        for g in games:
            for a in agents:
                board.cells[(a, g)] = score_game(records, a, g)
        return board

    def averages(self, agent_id: str) -> tuple[float | None, float | None, float | None]:
        cells = [self.cells[(agent_id, g)] for g in self.games]
        avg_o = _mean(c.O for c in cells)
        avg_i = _mean(c.I for c in cells)
        avg = None if avg_o is None or avg_i is None else (avg_o + avg_i) / 2
        return avg_o, avg_i, avg

    # -- reports ---------------------------------------------------------------
    def rows(self) -> list[dict]:
        out = []
        for a in self.agents:
            row = {"agent": a}
            for g in self.games:
                c = self.cells[(a, g)]
                row[f"{g}.O"] = c.O
                row[f"{g}.I"] = c.I
                for idx, val in c.subproblem_scores.items():
                    row[f"{g}.P{idx}"] = val
                row[f"{g}.fallback_rate"] = c.fallback_rate
            row["Avg.O"], row["Avg.I"], row["Avg"] = self.averages(a)
            out.append(row)
        return out

    def to_csv(self) -> str:
        rows = self.rows()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["agent"], lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buf.getvalue()

    def to_text(self) -> str:
        header = ["Agent"] + [f"{get_game(g).title} O/I" for g in self.games] + ["Avg.O", "Avg.I", "Avg"]
        lines = [" | ".join(header)]
        for a in self.agents:
            cells = [a]
            for g in self.games:
                c = self.cells[(a, g)]
                cells.append(f"{_cell(c.O)} / {_cell(c.I)}")
            cells.extend(_cell(v) for v in self.averages(a))
            lines.append(" | ".join(cells))
        lines.append("")
        lines.append("Per-subproblem scores (P<n>-f1 or P<n>-acc)")
        for g in self.games:
            game = get_game(g)
            names = [f"P{s.index}-{s.metric}" + ("" if s.scored else "*") for s in game.subproblems]
            lines.append(f"{game.title}: " + ", ".join(names))
            for a in self.agents:
                c = self.cells[(a, g)]
                vals = ", ".join(_cell(c.subproblem_scores[s.index]) for s in game.subproblems)
                lines.append(f"  {a}: {vals}")
        lines.append("* logged but not part of I")
        return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    return f"{value:.4f}"


def rescore_records(records, strict: bool = True) -> list:
    """Copies of ``records`` whose intermediate answers are re-read from the raw replies.

    The actions already played are kept; only the marker payloads change.
    """
    out = []
    for r in records:
        game = get_game(r.config.game_id)
        turns = []
        for t in r.turns:
            parsed = parse_response(t.raw_reply, game, strict)
            turns.append(replace(t, parsed=replace(t.parsed, intermediates=parsed.intermediates)))
        out.append(replace(r, turns=turns))
    return out
