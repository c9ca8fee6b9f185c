"""Pull intermediate answers and the final action out of free-form replies."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .payloads import COLS, ParseFailure, parse_payload, path_from_text

MARKER = re.compile(
    r"\[\s*intermediate\s+thinking\s+results?\s*(\d+)\s*:\s*([^\]\n]*)\]?",
    re.IGNORECASE,
)

_PAIR = r"\(\s*(\d+)\s*,\s*(\d+)\s*\)"
_TRIPLE = r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)"

ACTION_PATTERNS = {
    "tictactoe": re.compile(rf"chosen\s+move\s*:?\s*{_PAIR}", re.I),
    "connect4": re.compile(rf"chosen\s+move\s*:?\s*{_PAIR}", re.I),
    "othello": re.compile(r"chosen\s+move\s*:?\s*\(\s*([A-H])\s*,\s*([1-8])\s*\)", re.I),
    "checkers": re.compile(r"chosen\s+move\s*:?\s*(\(\s*\d+\s*,\s*\d+\s*\)(?:\s*->\s*\(\s*\d+\s*,\s*\d+\s*\))+)", re.I),
    "pong": re.compile(r"(?:\b([012])\s*-\s*)?\b(stay\s+still|move\s+up|move\s+down)\b", re.I),
    "surround": re.compile(r"\bmove\s+(up|down|left|right)\b", re.I),
    "holdem": re.compile(r"\b(fold|check\s+and\s+call|raise\s+half\s+pot|raise\s+full\s+pot|all[\s-]+in)\b", re.I),
    "negotiation": re.compile(rf"proposal\s*:\s*\[\s*(?:(agree)|p1\s*:\s*{_TRIPLE}\s*,\s*p2\s*:\s*{_TRIPLE})\s*\]", re.I),
}

PONG_WORDS = {"stay still": 0, "move up": 1, "move down": 2}
HOLDEM_WORDS = {
    "fold": "Fold",
    "check and call": "Check and Call",
    "raise half pot": "Raise Half Pot",
    "raise full pot": "Raise Full Pot",
    "all in": "All in",
}


@dataclass
class ParsedResponse:
    intermediates: dict = field(default_factory=dict)  # index -> payload or ParseFailure
    action: object = field(default_factory=lambda: ParseFailure("absent"))
    raw_spans: dict = field(default_factory=dict)  # "intermediate:N" / "action" -> (start, end)


def find_markers(text: str) -> dict[int, tuple[str, tuple[int, int]]]:
    """Marker payload text and span per index; later markers replace earlier ones."""
    found = {}
    for m in MARKER.finditer(text):
        found[int(m.group(1))] = (m.group(2).strip(), m.span())
    return found


def extract_intermediates(text: str, game, strict: bool = False) -> tuple[dict, dict]:
    """Payload per declared subproblem index, plus the source spans."""
    markers = find_markers(text)
    values, spans = {}, {}
    for sub in game.subproblems:
        if sub.index not in markers:
            values[sub.index] = ParseFailure("absent")
            continue
        payload, span = markers[sub.index]
        values[sub.index] = parse_payload(sub.kind, payload, strict)
        spans[f"intermediate:{sub.index}"] = span
    return values, spans


def _blank_markers(text: str) -> str:
    # same length so spans stay valid
    return MARKER.sub(lambda m: " " * (m.end() - m.start()), text)


def _convert(game_id: str, m: re.Match):
    g = m.groups()
    if game_id in ("tictactoe", "connect4"):
        return int(g[0]), int(g[1])
    if game_id == "othello":
        return COLS.index(g[0].upper()), int(g[1]) - 1
    if game_id == "checkers":
        return path_from_text(g[0])
    if game_id == "pong":
        return PONG_WORDS[" ".join(g[1].lower().split())]
    if game_id == "surround":
        return g[0].title()
    if game_id == "holdem":
        return HOLDEM_WORDS[" ".join(g[0].lower().replace("-", " ").split())]
    if game_id == "negotiation":
        if g[0]:
            return "Agree"
        nums = tuple(int(x) for x in g[1:])
        return nums[:3], nums[3:]
    raise KeyError(game_id)


def extract_action_span(text: str, game_id: str):
    """(action, span) for the last action pattern in ``text``; ParseFailure when absent."""
    cleaned = _blank_markers(text)
    pattern = ACTION_PATTERNS[game_id]
    last = None
    for last in pattern.finditer(cleaned):
        pass
    if last is not None:
        return _convert(game_id, last), last.span()
    if game_id == "pong":
        lines = [ln.strip() for ln in cleaned.strip().splitlines() if ln.strip()]
        if lines and lines[-1].strip("*.") in ("0", "1", "2"):
            digit = lines[-1].strip("*.")
            start = cleaned.rindex(digit)
            return int(digit), (start, start + 1)
    return ParseFailure("no action found"), None


def extract_action(text: str, game_id: str):
    return extract_action_span(text, game_id)[0]


def parse_response(text: str, game, strict: bool = False) -> ParsedResponse:
    values, spans = extract_intermediates(text, game, strict)
    action, span = extract_action_span(text, game.game_id)
    if span is not None:
        spans["action"] = span
    return ParsedResponse(values, action, spans)
