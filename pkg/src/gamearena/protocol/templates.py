"""Prompt assembly for the three prompt variants of each game."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

SLOT = re.compile(r"<<([A-Z_]+)>>")
STATE_HEADER = "**Current Game State**"

# where the rules end in each curated body
RULES_END = {"pong": "Your strategy is that"}

ANSWER_FORMATS = {
    "othello": '"Chosen Move: (X,X)", for example "Chosen Move: (D,3)"',
    "tictactoe": '"Chosen Move: (a,b)", where a is the row and b is the column',
    "connect4": '"Chosen Move: (a,b)", where a is the row and b is the column',
    "checkers": '"Chosen Move: (X,X)->(X,X)"',
    "pong": '"0 - Stay Still", "1 - Move Up" or "2 - Move Down"',
    "surround": '"Move Up", "Move Down", "Move Left" or "Move Right"',
    "holdem": '"Fold", "Check and Call", "Raise Half Pot", "Raise Full Pot" or "All in"',
    "negotiation": '"Proposal: [Agree]" or "Proposal: [P1: (X,X,X), P2: (X,X,X)]"',
}


class Variant(str, enum.Enum):
    CURATED = "CuratedCoT"
    GENERIC = "GenericCoT"
    ACTION_ONLY = "ActionOnly"


class TemplateError(KeyError):
    pass


@dataclass(frozen=True)
class PromptTemplate:
    game_id: str
    variant: Variant
    body: str

    @property
    def slots(self) -> frozenset[str]:
        return frozenset(SLOT.findall(self.body))

    def render(self, **values: str) -> str:
        missing = self.slots - set(values)
        if missing:
            raise TemplateError(f"{self.game_id}/{self.variant.value}: missing slots {sorted(missing)}")
        return SLOT.sub(lambda m: values[m.group(1)], self.body)


@lru_cache(maxsize=None)
def curated_body(game_id: str) -> str:
    path = resources.files(__package__).joinpath("prompts", f"{game_id}.curated.txt")
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise TemplateError(f"no prompt for game {game_id!r}") from None


def rules_section(game_id: str) -> str:
    body = curated_body(game_id)
    cut = body.find(RULES_END.get(game_id, "**Output**"))
    return body[:cut].rstrip() + "\n"


@lru_cache(maxsize=None)
def get_template(game_id: str, variant: Variant | str) -> PromptTemplate:
    variant = Variant(variant)
    tail = f"\n{STATE_HEADER}\n<<STATE>>\n"
    if variant is Variant.CURATED:
        return PromptTemplate(game_id, variant, curated_body(game_id) + tail)
    fmt = ANSWER_FORMATS[game_id]
    if variant is Variant.GENERIC:
        output = (
            "\n**Output**\nProvide your chosen action. Let's think step by step before deciding.\n"
            f"End your reply with the chosen action in the format {fmt}.\n"
        )
    else:
        output = f"\n**Output**\nOutput only your chosen action in the format {fmt}. Do not include any other words.\n"
    return PromptTemplate(game_id, variant, rules_section(game_id) + output + tail)


def render_prompt(template: PromptTemplate, state_text: str, **extra: str) -> str:
    return template.render(STATE=state_text, **extra)


def prompt_for(game, state, seat, variant: Variant | str = Variant.CURATED) -> tuple[str, str]:
    """(state_text, prompt_text) for ``seat`` at ``state``."""
    template = get_template(game.game_id, variant)
    state_text = game.render(state, seat)
    extra = {}
    if "PREFLOP_TABLE" in template.slots:
        extra["PREFLOP_TABLE"] = game.table_text()
    return state_text, render_prompt(template, state_text, **extra)
