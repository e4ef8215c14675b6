"""Command line entry points: serve, analyze, selfplay, agent."""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="coplace")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the game server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--scenes", default=None, help="scene config file (JSON)")
    p.add_argument("--log-dir", default=None, help="directory for room event logs")
    p.add_argument("--seed", type=int, default=0, help="root seed; per-room seeds derive from it")
    p.add_argument("--app-dir", default=None, help="built browser client to serve under /app")

    p = sub.add_parser("analyze", help="dominance/strategy report over room logs")
    p.add_argument("--log-dir", required=True)
    p.add_argument("--theta", type=float, default=1.3)
    p.add_argument("--length-unit", choices=("tokens", "chars"), default="tokens")
    p.add_argument("--out", required=True, help="path for the JSON report")

    p = sub.add_parser("selfplay", help="run scripted matchups and analyze them")
    p.add_argument("--matchup", action="append", default=None,
                   help="a:b policy pair, repeatable (default leader:follower)")
    p.add_argument("--seeds", type=int, default=5, help="number of seeds (0..n-1)")
    p.add_argument("--theta", type=float, default=1.3)
    p.add_argument("--scenes", default=None)
    p.add_argument("--out", required=True, help="output directory for logs and report")

    p = sub.add_parser("agent", help="connect the baseline agent to a live server")
    p.add_argument("--room", required=True)
    p.add_argument("--server", default="ws://127.0.0.1:8000")
    p.add_argument("--parser", choices=("rule", "llm"), default="rule")
    p.add_argument("--name", default="agent")
    p.add_argument("--scenes", default=None)
    p.add_argument("--synonyms", default=None, help="extra name -> canonical-term JSON map")

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")

    if args.command == "serve":
        from .server import serve

        serve(
            host=args.host,
            port=args.port,
            scenes_path=args.scenes,
            log_dir=args.log_dir,
            seed=args.seed,
            app_dir=args.app_dir,
        )
        return 0

    if args.command == "analyze":
        from .analysis import games_from_log_dir, report

        games = games_from_log_dir(args.log_dir)
        if not games:
            print(f"no .log files under {args.log_dir}", file=sys.stderr)
            return 1
        table = report(games, theta=args.theta, length_unit=args.length_unit)
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(table.to_doc(), indent=2) + "\n", encoding="utf-8")
        print(table.render_text())
        return 0

    if args.command == "selfplay":
        from .analysis import report as _report
        from .eventlog import write_records
        from .scenes import load_scenes
        from .selfplay import BatchConfig, batch_run

        scenes = load_scenes(args.scenes) if args.scenes else None
        config = BatchConfig(
            matchups=args.matchup or ["leader:follower"],
            seeds=list(range(args.seeds)),
            theta=args.theta,
        )
        games, table = batch_run(config, scenes=scenes)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for game in games:
            write_records(out / f"{game.room_id}.log", game.records)
        (out / "report.json").write_text(
            json.dumps(table.to_doc(), indent=2) + "\n", encoding="utf-8"
        )
        aborted = sum(1 for g in games if g.aborted)
        print(f"{len(games)} games -> {out} ({aborted} aborted)")
        print(table.render_text())
        return 0

    if args.command == "agent":
        from .agent import load_synonyms
        from .scenes import load_scenes

        scenes = load_scenes(args.scenes) if args.scenes else None
        synonyms = load_synonyms(args.synonyms) if args.synonyms else None
        asyncio.run(
            run_agent_client(
                server=args.server,
                room=args.room,
                name=args.name,
                parser_kind=args.parser,
                scenes=scenes,
                extra_synonyms=synonyms,
            )
        )
        return 0

    return 1


async def run_agent_client(
    server: str,
    room: str,
    name: str,
    parser_kind: str = "rule",
    scenes=None,
    extra_synonyms=None,
) -> None:
    """Join a room on a live server and play as the baseline agent."""
    import websockets

    from .agent import Agent

    agent = Agent(scenes=scenes, parser_kind=parser_kind, extra_synonyms=extra_synonyms)
    url = server.rstrip("/") + "/ws"
    async with websockets.connect(url) as ws:
        await ws.send(json.dumps({"type": "join", "room": room, "name": name}))
        async for raw in ws:
            frame = json.loads(raw)
            for action in agent.on_frame(frame):
                await ws.send(json.dumps(action))
            if frame.get("type") == "game_end":
                break


if __name__ == "__main__":
    raise SystemExit(main())
