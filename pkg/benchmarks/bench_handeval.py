"""Compare the compiled hand-evaluation kernel with the pure-Python fallback.

    python benchmarks/bench_handeval.py [--hands N] [--trials N]

Both kernels are imported directly, so GAMEARENA_PURE_PYTHON has no effect here.
"""

from __future__ import annotations

import argparse
import random
import timeit

from gamearena.poker import _handeval_py

try:
    from gamearena.poker import _handeval
except ImportError:
    _handeval = None


def time_it(fn, repeat: int = 3) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--hands", type=int, default=50_000, help="seven-card hands scored")
    parser.add_argument("--trials", type=int, default=20_000, help="preflop showdown trials")
    args = parser.parse_args(argv)

    rng = random.Random(0)
    hands = [rng.sample(range(52), 7) for _ in range(args.hands)]
    kernels = {"python": _handeval_py}
    if _handeval is not None:
        kernels["compiled"] = _handeval
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {}
    for name, k in kernels.items():
        score = time_it(lambda k=k: [k.score_cards(h) for h in hands])
        show = time_it(lambda k=k: k.preflop_showdowns(48, 49, args.trials, 7))
        results[name] = (score, show)
        print(f"{name:>9}: score_cards {args.hands / score:>12,.0f} hands/s   "
              f"preflop_showdowns {args.trials / show:>12,.0f} trials/s")

    if len(results) == 2:
        (ps, pm), (cs, cm) = results["python"], results["compiled"]
        print(f"  speedup: score_cards x{ps / cs:.1f}, preflop_showdowns x{pm / cm:.1f}")
        same = all(_handeval_py.score_cards(h) == _handeval.score_cards(h) for h in hands[:2000])
        print(f"  kernels agree on the first 2000 hands: {same}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
