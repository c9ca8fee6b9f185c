"""Non-interactive replay frames (plain text and SVG) for logged matches."""

from __future__ import annotations

from html import escape
from pathlib import Path

from .core import MatchRecord, replay_states
from .games import get_game
from .games.base import Seat

LINE_HEIGHT = 14
CHAR_WIDTH = 7.2


def frame_texts(record: MatchRecord) -> list[str]:
    """One frame per logged tick: the state as seat First saw it before acting."""
    seen, frames = set(), []
    for t in record.turns:
        if t.turn_index in seen:
            continue
        seen.add(t.turn_index)
        frames.append(t.state_text if t.seat is Seat.FIRST else None)
    # ticks where only Second moved: re-derive the First view from the replayed state
    if any(f is None for f in frames):
        game = get_game(record.config.game_id)
        states = replay_states(record)
        frames = [f if f is not None else game.render(states[i], Seat.FIRST) for i, f in enumerate(frames)]
    return frames


def final_text(record: MatchRecord) -> str:
    game = get_game(record.config.game_id)
    return game.render(replay_states(record)[-1], Seat.FIRST)


def to_svg(text: str, title: str = "") -> str:
    lines = ([title, ""] if title else []) + text.splitlines()
    width = int(max((len(ln) for ln in lines), default=1) * CHAR_WIDTH) + 20
    height = LINE_HEIGHT * len(lines) + 20
    body = "\n".join(
        f'<text x="10" y="{20 + i * LINE_HEIGHT}" xml:space="preserve">{escape(ln)}</text>' for i, ln in enumerate(lines)
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="12">\n<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
    )


def write_frames(record: MatchRecord, out_dir: Path, svg: bool = False) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    frames = frame_texts(record) + [final_text(record)]
    for i, text in enumerate(frames):
        name = "final" if i == len(frames) - 1 else f"frame_{i:04d}"
        path = out_dir / f"{name}.txt"
        path.write_text(text + "\n", encoding="utf-8")
        written.append(path)
        if svg:
            svg_path = out_dir / f"{name}.svg"
            svg_path.write_text(to_svg(text, name), encoding="utf-8")
            written.append(svg_path)
    return written
