"""Text grammar of intermediate answers, one entry per payload kind.

Every kind has a canonical ``format`` and a ``parse`` that accepts the
canonical text in strict mode and a wider range of spellings in lenient
mode. ``parse(format(v)) == v`` holds for every valid value in both modes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable

from ..poker.cards import CATEGORY_NAMES

DIRS = ("Up", "Down", "Left", "Right")
DIRECTION_LABELS = ("Left Down", "Right Up", "Left Up", "Right Down")
COLS = "ABCDEFGH"


class PayloadError(ValueError):
    """The payload text does not fit the grammar of its kind."""


@dataclass(frozen=True)
class ParseFailure:
    """Stands in for a payload or action that could not be read."""

    reason: str = "unparseable"

    def __bool__(self) -> bool:
        return False


def _is_none(text: str) -> bool:
    return text.strip().strip(".").lower() in {"none", "", "n/a", "no", "empty", "[]"}


# -- coordinate sets ---------------------------------------------------------
_INT_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_STRICT_PAIRS = re.compile(r"\(\d+, ?\d+\)(?:, ?\(\d+, ?\d+\))*")


def format_coords(value) -> str:
    return ", ".join(f"({r},{c})" for r, c in sorted(value)) or "None"


def parse_coords(text: str, strict: bool) -> frozenset:
    text = text.strip()
    if strict:
        if text == "None":
            return frozenset()
        if not _STRICT_PAIRS.fullmatch(text):
            raise PayloadError(f"not a coordinate list: {text!r}")
    elif _is_none(text):
        return frozenset()
    pairs = _INT_PAIR.findall(text)
    if not pairs:
        raise PayloadError(f"no coordinates in {text!r}")
    return frozenset((int(r), int(c)) for r, c in pairs)


_SQUARE = re.compile(r"\(\s*([A-Ha-h])\s*,\s*([1-8])\s*\)")
_STRICT_SQUARES = re.compile(r"\([A-H], ?[1-8]\)(?:, ?\([A-H], ?[1-8]\))*")


def format_squares(value) -> str:
    return ", ".join(f"({COLS[c]},{r + 1})" for c, r in sorted(value)) or "None"


def parse_squares(text: str, strict: bool) -> frozenset:
    text = text.strip()
    if strict:
        if text == "None":
            return frozenset()
        if not _STRICT_SQUARES.fullmatch(text):
            raise PayloadError(f"not a square list: {text!r}")
    elif _is_none(text):
        return frozenset()
    found = _SQUARE.findall(text)
    if not found:
        raise PayloadError(f"no squares in {text!r}")
    return frozenset((COLS.index(c.upper()), int(r) - 1) for c, r in found)


_PATH = re.compile(r"\(\s*\d+\s*,\s*\d+\s*\)(?:\s*->\s*\(\s*\d+\s*,\s*\d+\s*\))+")
_STRICT_PATH = r"\(\d,\d\)(?:->\(\d,\d\))+"
_STRICT_PATHS = re.compile(rf"{_STRICT_PATH}(?:, ?{_STRICT_PATH})*")


def path_from_text(text: str) -> tuple[tuple[int, int], ...]:
    return tuple((int(r), int(c)) for r, c in _INT_PAIR.findall(text))


def format_paths(value) -> str:
    return ", ".join("->".join(f"({r},{c})" for r, c in path) for path in sorted(value)) or "None"


def parse_paths(text: str, strict: bool) -> frozenset:
    text = text.strip()
    if strict:
        if text == "None":
            return frozenset()
        if not _STRICT_PATHS.fullmatch(text):
            raise PayloadError(f"not a move list: {text!r}")
    elif _is_none(text):
        return frozenset()
    found = _PATH.findall(text)
    if not found:
        raise PayloadError(f"no moves in {text!r}")
    return frozenset(path_from_text(p) for p in found)


# -- scalars -----------------------------------------------------------------
_BOOL = {"true": True, "false": False, "yes": True, "no": False}


def parse_bool(text: str, strict: bool) -> bool:
    text = text.strip()
    if strict:
        if text not in ("True", "False"):
            raise PayloadError(f"expected True/False, got {text!r}")
        return text == "True"
    word = text.strip(".").lower()
    if word not in _BOOL:
        raise PayloadError(f"not a boolean: {text!r}")
    return _BOOL[word]


def parse_direction(text: str, strict: bool) -> str:
    text = text.strip()
    if strict:
        if text not in DIRECTION_LABELS:
            raise PayloadError(f"unknown direction {text!r}")
        return text
    low = text.lower()
    horiz = [w for w in ("left", "right") if w in low]
    vert = [w for w in ("up", "down") if re.search(rf"\b{w}|{w}\b|{w}ward", low)]
    if len(horiz) != 1 or len(vert) != 1:
        raise PayloadError(f"ambiguous direction {text!r}")
    return f"{horiz[0].title()} {vert[0].title()}"


_NUMBER = re.compile(r"-?\d+(?:\.\d+)?")


def parse_int(text: str, strict: bool) -> int:
    text = text.strip()
    if strict:
        if not re.fullmatch(r"-?\d+", text):
            raise PayloadError(f"expected an integer, got {text!r}")
        return int(text)
    numbers = _NUMBER.findall(text)
    if not numbers:
        raise PayloadError(f"no number in {text!r}")
    # "2*2+5*1=9" style answers: the last number is the result
    value = float(numbers[-1])
    if value != int(value):
        raise PayloadError(f"not an integer: {text!r}")
    return int(value)


def format_percent(value: float) -> str:
    return f"{value:.1f}"


def parse_percent(text: str, strict: bool) -> float:
    text = text.strip()
    if strict:
        if not re.fullmatch(r"\d{1,3}(?:\.\d)?%?", text):
            raise PayloadError(f"expected a percentage, got {text!r}")
        return round(float(text.rstrip("%")), 1)
    numbers = _NUMBER.findall(text)
    if not numbers:
        raise PayloadError(f"no number in {text!r}")
    return round(float(numbers[0]), 1)


_CATEGORY_BY_NAME = {name.lower(): rank for rank, name in CATEGORY_NAMES.items()}


def parse_rank(text: str, strict: bool) -> int:
    text = text.strip()
    if strict:
        if not re.fullmatch(r"(?:10|[1-9])", text):
            raise PayloadError(f"expected a rank 1-10, got {text!r}")
        return int(text)
    m = re.search(r"\b(10|[1-9])\b", text)
    if m:
        return int(m.group(1))
    low = text.lower()
    for name, rank in sorted(_CATEGORY_BY_NAME.items(), key=lambda kv: -len(kv[0])):
        if name in low:
            return rank
    raise PayloadError(f"no hand ranking in {text!r}")


# -- surround labelled lists --------------------------------------------------
def format_adjacent(value) -> str:
    return ", ".join(f"{d} {v}" for d, v in value)


_ADJ = re.compile(r"\b(up|down|left|right)\b\s*[:=]?\s*(-?\d+)", re.I)


def parse_adjacent(text: str, strict: bool) -> tuple:
    text = text.strip()
    if strict and not re.fullmatch(r"Up -?\d, Down -?\d, Left -?\d, Right -?\d", text):
        raise PayloadError(f"not an adjacency list: {text!r}")
    found = {d.title(): int(v) for d, v in _ADJ.findall(text)}
    if set(found) != set(DIRS):
        raise PayloadError(f"adjacency list must name all four directions: {text!r}")
    return tuple((d, found[d]) for d in DIRS)


def format_actions(value) -> str:
    return ", ".join(f"Move {d}" for d in DIRS if d in value) or "None"


def parse_actions(text: str, strict: bool) -> frozenset:
    text = text.strip()
    if strict:
        if text == "None":
            return frozenset()
        if not re.fullmatch(r"Move (?:Up|Down|Left|Right)(?:, Move (?:Up|Down|Left|Right))*", text):
            raise PayloadError(f"not an action list: {text!r}")
    elif _is_none(text):
        return frozenset()
    found = re.findall(r"\b(up|down|left|right)\b", text, re.I)
    if not found:
        raise PayloadError(f"no actions in {text!r}")
    return frozenset(d.title() for d in found)


def format_safety(value) -> str:
    return ", ".join(f"Move {d} {label}" for d, label in value) or "None"


_SAFETY = re.compile(r"\b(up|down|left|right)\b\s*[:\-=]?\s*(?:is\s+)?(safe|unsafe)\b", re.I)


def parse_safety(text: str, strict: bool) -> tuple:
    text = text.strip()
    if strict:
        if text == "None":
            return ()
        if not re.fullmatch(r"Move (?:Up|Down|Left|Right) (?:Safe|Unsafe)(?:, Move (?:Up|Down|Left|Right) (?:Safe|Unsafe))*", text):
            raise PayloadError(f"not a safety list: {text!r}")
    elif _is_none(text):
        return ()
    found = {d.title(): label.title() for d, label in _SAFETY.findall(text)}
    if not found:
        raise PayloadError(f"no safety labels in {text!r}")
    return tuple((d, found[d]) for d in DIRS if d in found)


@dataclass(frozen=True)
class Kind:
    name: str
    format: Callable[[Any], str]
    parse: Callable[[str, bool], Any]


KINDS: dict[str, Kind] = {
    k.name: k
    for k in (
        Kind("bool", lambda v: "True" if v else "False", parse_bool),
        Kind("coords", format_coords, parse_coords),
        Kind("othello_squares", format_squares, parse_squares),
        Kind("paths", format_paths, parse_paths),
        Kind("direction", str, parse_direction),
        Kind("int", str, parse_int),
        Kind("percent", format_percent, parse_percent),
        Kind("rank", str, parse_rank),
        Kind("adjacent", format_adjacent, parse_adjacent),
        Kind("actions", format_actions, parse_actions),
        Kind("safety", format_safety, parse_safety),
    )
}


def format_payload(kind: str, value) -> str:
    return KINDS[kind].format(value)


def parse_payload(kind: str, text: str, strict: bool = False):
    """Parse ``text`` as ``kind``; returns a :class:`ParseFailure` instead of raising."""
    try:
        return KINDS[kind].parse(text, strict)
    except PayloadError as exc:
        return ParseFailure(str(exc))
