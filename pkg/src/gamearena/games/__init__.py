"""Registry of the eight games, keyed by game id."""

from __future__ import annotations

from .base import Game, Outcome, Seat, Subproblem, SubproblemTruth
from .checkers import Checkers
from .grid import Connect4, TicTacToe
from .holdem import Holdem
from .negotiation import Negotiation
from .othello import Othello
from .pong import Pong
from .surround import Surround

GAMES: dict[str, Game] = {
    g.game_id: g
    for g in (Othello(), Pong(), Surround(), Checkers(), TicTacToe(), Connect4(), Holdem(), Negotiation())
}
GAME_IDS = tuple(GAMES)


class UnknownGame(KeyError):
    pass


def get_game(game_id: str) -> Game:
    try:
        return GAMES[game_id]
    except KeyError:
        raise UnknownGame(f"unsupported game_id {game_id!r}; choose from {', '.join(GAME_IDS)}") from None


__all__ = ["GAMES", "GAME_IDS", "Game", "Outcome", "Seat", "Subproblem", "SubproblemTruth", "get_game", "UnknownGame"]
