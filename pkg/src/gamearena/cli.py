"""Command line: run tournaments, score logs, render replays, print reports."""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .agents import AgentSpec, build_agent
from .core import (
    ConfigError,
    InvalidActionPolicy,
    MatchConfig,
    MatchRecord,
    record_from_json,
    record_to_json,
    run_match,
    schedule,
)
from .games import GAME_IDS
from .poker import handeval
from .protocol.templates import Variant
from .replay import write_frames
from .scoring import Scoreboard, rescore_records

log = logging.getLogger("gamearena")

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib


@dataclass
class RunConfig:
    agents: list[AgentSpec]
    games: list[str] = field(default_factory=lambda: list(GAME_IDS))
    matches_per_pair: int = 20
    base_seed: int = 0
    prompt_variant: Variant = Variant.CURATED
    output_dir: str = "arena-out"
    parallel: int = 1
    parse_retries: int = 1
    invalid_action_policy: InvalidActionPolicy = InvalidActionPolicy.RANDOM_FALLBACK
    strict_parse: bool = False

    def validate(self) -> None:
        if len(self.agents) < 2:
            raise ConfigError("at least two agents are required")
        ids = [a.agent_id for a in self.agents]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"agent ids must be unique: {ids}")
        bad = [g for g in self.games if g not in GAME_IDS]
        if bad:
            raise ConfigError(f"unknown games {bad}; choose from {list(GAME_IDS)}")
        if self.matches_per_pair <= 0 or self.matches_per_pair % 2:
            raise ConfigError("matches_per_pair must be a positive even number")
        if self.parallel < 1:
            raise ConfigError("parallel must be at least 1")


def load_config(path: Path) -> RunConfig:
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text) if path.suffix.lower() == ".json" else tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        agents = [AgentSpec(**a) for a in data.pop("agents", [])]
        config = RunConfig(agents=agents, **data)
        config.prompt_variant = Variant(config.prompt_variant)
        config.invalid_action_policy = InvalidActionPolicy(config.invalid_action_policy)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    config.validate()
    return config


def log_name(game_id: str, a: str, b: str) -> str:
    safe = lambda s: "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in s)  # noqa: E731
    return f"{game_id}__{safe(a)}__{safe(b)}.jsonl"


def read_log(path: Path) -> list[MatchRecord]:
    """Records in ``path``; a torn trailing line from an interrupted run is dropped."""
    if not path.exists():
        return []
    records, good = [], []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            records.append(record_from_json(line))
            good.append(line)
        except (ValueError, KeyError, TypeError):
            log.warning("dropping unreadable line in %s", path)
    if len(good) != sum(1 for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()):
        path.write_text("".join(g + "\n" for g in good), encoding="utf-8")
    return records


def cmd_run(args) -> int:
    config = load_config(Path(args.config))
    if args.out:
        config.output_dir = args.out
    if args.seed is not None:
        config.base_seed = args.seed
    if args.variant:
        config.prompt_variant = Variant(args.variant)
    if args.parallel:
        config.parallel = args.parallel
    if args.strict_parse:
        config.strict_parse = True
    config.validate()
    agents = [build_agent(spec) for spec in config.agents]
    out = Path(config.output_dir)
    logs = out / "logs"
    logs.mkdir(parents=True, exist_ok=True)

    groups, manifest_games = [], {}
    for game_id in config.games:
        jobs = schedule(len(agents), game_id, config.matches_per_pair, config.base_seed)
        manifest_games[game_id] = []
        by_pair: dict[int, list] = {}
        for job in jobs:
            by_pair.setdefault(job.pair_index, []).append(job)
        for pair_index, pair_jobs in sorted(by_pair.items()):
            first = pair_jobs[0]
            path = logs / log_name(game_id, agents[first.first].agent_id, agents[first.second].agent_id)
            manifest_games[game_id].append({
                "log": path.name,
                "agents": [agents[first.first].agent_id, agents[first.second].agent_id],
                "seeds": [j.seed for j in pair_jobs],
            })
            groups.append((game_id, path, pair_jobs))

    manifest = {
        "version": __version__,
        "python": platform.python_version(),
        "kernel_backend": handeval.BACKEND,
        "base_seed": config.base_seed,
        "matches_per_pair": config.matches_per_pair,
        "prompt_variant": config.prompt_variant.value,
        "parse_retries": config.parse_retries,
        "invalid_action_policy": config.invalid_action_policy.value,
        "strict_parse": config.strict_parse,
        "agents": [{k: v for k, v in asdict(s).items() if v not in ("", None)} for s in config.agents],
        "games": manifest_games,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, default=str) + "\n", encoding="utf-8")

    counter = {"new": 0, "skipped": 0}
    lock = threading.Lock()

    def play_group(group) -> None:
        game_id, path, jobs = group
        done = {r.config.seed for r in read_log(path)}
        with path.open("a", encoding="utf-8") as fh:
            for job in jobs:
                if job.seed in done:
                    with lock:
                        counter["skipped"] += 1
                    continue
                mc = MatchConfig(game_id, job.seed, None, config.prompt_variant, config.parse_retries,
                                 config.invalid_action_policy, config.strict_parse)
                record = run_match(mc, agents[job.first], agents[job.second])
                fh.write(record_to_json(record) + "\n")
                fh.flush()
                with lock:
                    counter["new"] += 1

    if config.parallel == 1:
        for g in groups:
            play_group(g)
    else:
        with ThreadPoolExecutor(max_workers=config.parallel) as pool:
            list(pool.map(play_group, groups))
    print(f"{counter['new']} matches played, {counter['skipped']} already logged; logs in {logs}")
    return 0


def load_records(log_dir: Path) -> list[MatchRecord]:
    files = sorted(log_dir.rglob("*.jsonl")) if log_dir.is_dir() else [log_dir]
    records = []
    for f in files:
        records.extend(read_log(f))
    return records


def _scoreboard(args) -> Scoreboard | None:
    path = Path(args.logs)
    if not path.exists():
        print(f"error: {path} does not exist", file=sys.stderr)
        return None
    records = load_records(path)
    if not records:
        print(f"error: no match records under {path}", file=sys.stderr)
        return None
    if args.strict_parse:
        records = rescore_records(records, strict=True)
    return Scoreboard.from_records(records)


def cmd_score(args) -> int:
    board = _scoreboard(args)
    if board is None:
        return 1
    out = Path(args.out) if args.out else Path(args.logs)
    if out.is_file():
        out = out.parent
    out.mkdir(parents=True, exist_ok=True)
    suffix = "strict" if args.strict_parse else "lenient"
    (out / f"scores_{suffix}.csv").write_text(board.to_csv(), encoding="utf-8")
    (out / f"scores_{suffix}.txt").write_text(board.to_text(), encoding="utf-8")
    print(board.to_text(), end="")
    return 0


def cmd_report(args) -> int:
    board = _scoreboard(args)
    if board is None:
        return 1
    print(board.to_csv() if args.format == "csv" else board.to_text(), end="")
    return 0


def cmd_replay(args) -> int:
    path = Path(args.log)
    if not path.is_file():
        print(f"error: {path} is not a log file", file=sys.stderr)
        return 1
    records = read_log(path)
    if not 0 <= args.match < len(records):
        print(f"error: match index {args.match} out of range (log holds {len(records)})", file=sys.stderr)
        return 1
    out = Path(args.out) if args.out else path.parent.parent / "replays" / f"{path.stem}__{args.match}"
    written = write_frames(records[args.match], out, svg=args.svg)
    print(f"{len(written)} files written to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamearena", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="play a round-robin tournament and write JSONL logs")
    run.add_argument("--config", required=True, help="TOML or JSON run configuration")
    run.add_argument("--out", help="output directory (overrides output_dir)")
    run.add_argument("--seed", type=int, help="base seed (overrides base_seed)")
    run.add_argument("--variant", choices=[v.value for v in Variant])
    run.add_argument("--parallel", type=int, help="matches groups played concurrently")
    run.add_argument("--strict-parse", action="store_true")
    run.set_defaults(func=cmd_run)

    score = sub.add_parser("score", help="compute the scoreboard and write CSV and text reports")
    score.add_argument("logs", help="log directory or single JSONL file")
    score.add_argument("--out", help="where to write scores_*.csv / scores_*.txt")
    score.add_argument("--strict-parse", action="store_true", help="re-read replies with the strict grammar")
    score.set_defaults(func=cmd_score)

    report = sub.add_parser("report", help="print the scoreboard")
    report.add_argument("logs")
    report.add_argument("--format", choices=["text", "csv"], default="text")
    report.add_argument("--strict-parse", action="store_true")
    report.set_defaults(func=cmd_report)

    replay = sub.add_parser("replay", help="render the frames of one logged match")
    replay.add_argument("log", help="JSONL log file")
    replay.add_argument("--match", type=int, default=0, help="zero-based match index in the file")
    replay.add_argument("--out", help="frame directory")
    replay.add_argument("--svg", action="store_true", help="also write SVG frames")
    replay.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
