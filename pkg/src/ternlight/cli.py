"""Command-line entry point.

Subcommands: train, eval, bench, gen-corpus, parse, serve, send. Training,
evaluation, benchmarking, and corpus generation run locally; serve hosts
the webhook gateway, and send is a thin HTTP client for a running gateway.

Exit codes: 0 success, 1 usage, 2 configuration (bad config files, missing
inputs, checkpoint version mismatch), 3 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

TRAIN_WEIGHTS_DEFAULT = "2.5,1.0,0.25"
TRAIN_DISCOUNT_DEFAULT = 0.4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_weights(text: str):
    from .agent import RewardWeights

    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError("weights must be three comma-separated numbers")
    return RewardWeights(*parts)


def _parse_dims(text: str):
    dims = []
    for part in text.split(","):
        rows, _, cols = part.partition("x")
        dims.append((int(rows), int(cols)))
    return dims


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ternlight", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a DQN agent on a home config")
    p.add_argument("--config", required=True, help="home config JSON")
    p.add_argument("--episodes", type=int, default=120)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="checkpoint output path")
    p.add_argument("--metrics", help="episode metrics CSV output path")
    p.add_argument("--weights", default=TRAIN_WEIGHTS_DEFAULT,
                   help="training reward weights w_energy,w_comfort,w_circadian")
    p.add_argument("--discount", type=float, default=TRAIN_DISCOUNT_DEFAULT)
    p.add_argument("--no-exploring-starts", action="store_true")

    p = sub.add_parser("eval", help="paired-seed evaluation vs the rule-based baseline")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--episodes", type=int, default=20)
    p.add_argument("--seed", type=int, default=10_000)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--trace", help="write the agent's trajectory as JSON-lines here")

    p = sub.add_parser("bench", help="kernel microbenchmarks")
    p.add_argument("--dims", default="128x128,256x384",
                   help="comma-separated ROWSxCOLS list")
    p.add_argument("--kernels", default="float,ternary,lut,twobit")
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--threads", type=int, default=0,
                   help="also time a parallel-over-rows ternary kernel")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="JSON report path")

    p = sub.add_parser("gen-corpus", help="generate a synthetic command corpus")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--noise-levels", default="0,1,2,3")
    p.add_argument("--config", help="home config to build the lexicon from")

    p = sub.add_parser("parse", help="parse one command text")
    p.add_argument("--text", required=True)
    p.add_argument("--config", help="home config to build the lexicon from")

    p = sub.add_parser("serve", help="run the webhook gateway")
    p.add_argument("--config", required=True, help="server config JSON")

    p = sub.add_parser("send", help="send a command to a running gateway")
    p.add_argument("--url", default="http://127.0.0.1:8787")
    p.add_argument("--token", required=True)
    p.add_argument("--text", required=True)
    return parser


def _cmd_train(args) -> int:
    from .agent import AgentConfig, DQNAgent, LightingEnv, save_checkpoint, train, write_metrics_csv
    from .sim import HomeConfig

    cfg = HomeConfig.from_json(args.config)
    weights = _parse_weights(args.weights)
    env = LightingEnv(cfg, weights, seed=500 + args.seed,
                      exploring_starts=not args.no_exploring_starts)
    agent = DQNAgent(
        env.obs_dim, env.n_actions, AgentConfig(seed=args.seed, discount=args.discount)
    )
    metrics = train(agent, env, episodes=args.episodes)
    save_checkpoint(args.out, agent.online, env.obs_dim, env.n_actions)
    if args.metrics:
        write_metrics_csv(args.metrics, metrics)
    last = metrics[-1] if metrics else None
    print(
        json.dumps(
            {
                "episodes": len(metrics),
                "steps": agent.total_steps,
                "checkpoint": args.out,
                "final_reward": last.total_reward if last else None,
                "final_energy_kwh": last.energy_kwh if last else None,
            }
        )
    )
    return EXIT_OK


def _cmd_eval(args) -> int:
    from .agent import RewardWeights, load_checkpoint, state_dim
    from .evaluation import evaluate_pair, greedy_policy
    from .sim import HomeConfig

    cfg = HomeConfig.from_json(args.config)
    net, obs_dim, n_actions = load_checkpoint(args.ckpt)
    if obs_dim != state_dim(cfg.n_zones):
        print(
            f"checkpoint expects {obs_dim} features but config has {state_dim(cfg.n_zones)}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    report = evaluate_pair(
        greedy_policy(net, cfg), cfg, RewardWeights(), seed=args.seed,
        episodes=args.episodes, trace_path=args.trace,
    )
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fp:
            fp.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_bench(args) -> int:
    from .bench import run_bench

    report = run_bench(
        dims=_parse_dims(args.dims),
        kernels=tuple(k.strip() for k in args.kernels.split(",")),
        iterations=args.iterations,
        seed=args.seed,
        threads=args.threads,
    )
    with open(args.out, "w") as fp:
        json.dump(report, fp, indent=2)
        fp.write("\n")
    print(json.dumps({"rows": len(report["rows"]), "out": args.out,
                      "ordering_violations": report["ordering_violations"]}))
    return EXIT_OK


def _cmd_gen_corpus(args) -> int:
    from .intent import Lexicon, generate_corpus, write_corpus
    from .sim import HomeConfig

    if args.config:
        lexicon = Lexicon.from_home_config(HomeConfig.from_json(args.config))
    else:
        lexicon = Lexicon.default()
    levels = tuple(int(v) for v in args.noise_levels.split(","))
    entries = generate_corpus(args.count, lexicon, seed=args.seed, noise_levels=levels)
    write_corpus(args.out, entries)
    print(json.dumps({"count": len(entries), "out": args.out}))
    return EXIT_OK


def _cmd_parse(args) -> int:
    from .intent import Lexicon, ParseError, intent_to_doc, parse_command
    from .sim import HomeConfig

    if args.config:
        lexicon = Lexicon.from_home_config(HomeConfig.from_json(args.config))
    else:
        lexicon = Lexicon.default()
    try:
        intent = parse_command(args.text, lexicon)
    except ParseError as exc:
        print(json.dumps({"error": exc.message, "slot": exc.slot}), file=sys.stderr)
        return EXIT_RUNTIME
    print(json.dumps(intent_to_doc(intent)))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .gateway import ServerConfig, create_app

    cfg = ServerConfig.from_json(args.config)
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="info")
    return EXIT_OK


def _cmd_send(args) -> int:
    import httpx

    try:
        r = httpx.post(
            f"{args.url.rstrip('/')}/webhook/command",
            json={"text": args.text, "source": "cli"},
            headers={"X-Auth-Token": args.token},
            timeout=10.0,
        )
    except httpx.HTTPError as exc:
        print(f"gateway unreachable: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(json.dumps(r.json(), indent=2))
    return EXIT_OK if r.status_code == 200 else EXIT_RUNTIME


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    from .gateway import ServerConfigError
    from .sim import ConfigError
    from .ternary import BlockFormatError

    handlers = {
        "train": _cmd_train,
        "eval": _cmd_eval,
        "bench": _cmd_bench,
        "gen-corpus": _cmd_gen_corpus,
        "parse": _cmd_parse,
        "serve": _cmd_serve,
        "send": _cmd_send,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ServerConfigError, BlockFormatError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
