"""Kernel selection: compiled extension when importable, else pure Python.

Set ``GAMEARENA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _handeval_py

if os.environ.get("GAMEARENA_PURE_PYTHON"):
    _kernel = _handeval_py
else:
    try:
        from . import _handeval as _kernel  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on build
        _kernel = _handeval_py

BACKEND = "compiled" if _kernel is not _handeval_py else "python"

score_cards = _kernel.score_cards
category_census = _kernel.category_census
preflop_showdowns = _kernel.preflop_showdowns

python_kernel = _handeval_py


def ranking_census() -> list[int]:
    """Five-card hand counts ordered by ranking number, 1 (royal flush) to 10 (high card)."""
    return list(reversed(category_census()))
