"""Operator CLI: archie-lab generate|validate|train|eval|audit|plot.

Exit codes: 0 ok, 2 config/auth problem, 3 validation failure, 4 runtime
failure (divergence, corrupted inputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .. import fixtures
from ..envs import ENV_IDS, EnvConfig, make_env
from ..llm.backend import AuthError, BackendError, FixtureMiss, ReplayBackend
from ..llm.extract import NoCodeBlock, extract_spec
from ..llm.prompt import build_prompt
from ..llm.tasks import TASKS
from ..rewardlang.engine import compile_spec
from ..rewardlang.parser import RewardSyntaxError, parse_reward_spec
from ..rewardlang.spec import validate_spec
from ..sac.bundle import TrainConfig, load_checkpoint
from ..sac.train import evaluate
from .audit_io import AuditIOError, BREAKDOWNS_FILENAME, audit_run, read_breakdowns, render_audit_report
from .config import ConfigError, load_experiment_config
from .runner import make_backend, run_matrix
from .stats import RaggedGridError, aggregate_percentiles, curves_from_csvs

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_RUNTIME = 4


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def cmd_generate(args) -> int:
    if args.task in TASKS:
        task = TASKS[args.task]
        task_text, env_id = task.text, task.env_id
    else:
        if not args.env:
            _err("free-text tasks need --env to pick the observation schema")
            return EXIT_CONFIG
        task_text, env_id = args.task, args.env

    if args.config:
        try:
            backend = make_backend(load_experiment_config(args.config))
        except (ConfigError, AuthError) as exc:
            _err(f"stage backend: {exc}")
            return EXIT_CONFIG
    else:
        if args.backend == "live":
            _err("stage backend: live mode needs --config with a [backend] section")
            return EXIT_CONFIG
        backend = ReplayBackend(fixtures.llm_fixture_dir())

    try:
        schema = make_env(EnvConfig(env_id=env_id)).schema
        prompt = build_prompt(task_text, schema)
    except (ValueError, KeyError) as exc:
        _err(f"stage prompt: {exc}")
        return EXIT_CONFIG
    try:
        response = backend.complete(prompt)
    except AuthError as exc:
        _err(f"stage complete: {exc}")
        return EXIT_CONFIG
    except (FixtureMiss, BackendError) as exc:
        _err(f"stage complete: {exc}")
        return EXIT_CONFIG

    out = Path(args.out)
    try:
        program = extract_spec(response)
    except NoCodeBlock as exc:
        _save_raw(out, response)
        _err(f"stage extract: {exc}")
        return EXIT_VALIDATION
    try:
        spec = parse_reward_spec(program)
    except RewardSyntaxError as exc:
        _save_raw(out, response)
        _err(f"stage parse: [{exc.code}] {exc}")
        return EXIT_VALIDATION
    report = validate_spec(spec, schema)
    if not report.ok:
        _save_raw(out, response)
        _err("stage validate:\n" + report.render())
        return EXIT_VALIDATION
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(program)
    print(f"wrote {out}")
    return EXIT_OK


def _save_raw(out: Path, response: str) -> None:
    raw = out.with_suffix(out.suffix + ".raw.txt")
    raw.parent.mkdir(parents=True, exist_ok=True)
    raw.write_text(response)
    print(f"raw response saved to {raw}", file=sys.stderr)


def cmd_validate(args) -> int:
    try:
        text = Path(args.spec).read_text()
    except OSError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    try:
        spec = parse_reward_spec(text)
    except RewardSyntaxError as exc:
        print(f"{exc.code}: {exc}")
        return EXIT_VALIDATION
    schema = make_env(EnvConfig(env_id=args.env)).schema
    report = validate_spec(spec, schema)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_train(args) -> int:
    try:
        config = load_experiment_config(args.config)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    if args.strict_alg1_done:
        config = replace(config, train=replace(config.train, strict_alg1_done=True))
    try:
        results = run_matrix(config, workers=args.workers)
    except (ConfigError, AuthError) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except (FixtureMiss, BackendError, RewardSyntaxError) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    failed = 0
    for res in results:
        line = f"{res.reward_id} seed={res.seed}: {res.status}"
        if res.error:
            line += f" ({res.error})"
            failed += 1
        print(line)
    return EXIT_RUNTIME if failed else EXIT_OK


def cmd_eval(args) -> int:
    try:
        bundle = load_checkpoint(args.checkpoint, TrainConfig())
    except (OSError, ValueError) as exc:
        _err(f"cannot load checkpoint: {exc}")
        return EXIT_RUNTIME
    env = make_env(EnvConfig(env_id=args.env))
    try:
        spec = parse_reward_spec(Path(args.spec).read_text(), horizon=env.config.horizon)
        compiled = compile_spec(spec, env.schema)
    except (OSError, RewardSyntaxError, ValueError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    rate = evaluate(bundle, env, compiled, episodes=args.episodes, seed=args.seed)
    result = {
        "checkpoint": str(args.checkpoint),
        "env_id": args.env,
        "seed": args.seed,
        "episodes": args.episodes,
        "success_rate": rate,
    }
    print(f"success_rate: {rate}")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_audit(args) -> int:
    run_dir = Path(args.run_dir)
    path = run_dir / BREAKDOWNS_FILENAME if run_dir.is_dir() else run_dir
    try:
        episodes = read_breakdowns(path)
    except AuditIOError as exc:
        _err(str(exc))
        return EXIT_RUNTIME
    report = audit_run(episodes)
    print(render_audit_report(report))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _metrics_paths(run_dirs: list[str]) -> list[Path]:
    paths = []
    for d in run_dirs:
        p = Path(d)
        paths.append(p / "metrics.csv" if p.is_dir() else p)
    return paths


def cmd_plot(args) -> int:
    from .plot import plot_curves  # deferred: pulls in matplotlib

    series = {}
    try:
        if args.series:
            for item in args.series:
                label, _, dirs = item.partition("=")
                if not dirs:
                    _err(f"--series wants LABEL=dir1,dir2,..., got {item!r}")
                    return EXIT_CONFIG
                steps, curves = curves_from_csvs(_metrics_paths(dirs.split(",")))
                series[label] = aggregate_percentiles(steps, curves)
        if args.run_dirs:
            steps, curves = curves_from_csvs(_metrics_paths(args.run_dirs))
            series.setdefault("runs", aggregate_percentiles(steps, curves))
        if not series:
            _err("nothing to plot: pass run directories or --series")
            return EXIT_CONFIG
    except (OSError, ValueError, RaggedGridError) as exc:
        _err(str(exc))
        return EXIT_RUNTIME
    out = plot_curves(series, args.out)
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="archie-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="turn a task description into a reward program")
    p.add_argument("task", help="task id from the registry, or free task text (needs --env)")
    p.add_argument("--env", choices=ENV_IDS, help="env id for free-text tasks")
    p.add_argument("--out", required=True, help="output .rsp path")
    p.add_argument("--backend", choices=("replay", "live"), default="replay")
    p.add_argument("--config", help="experiment config supplying [backend] settings")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("validate", help="validate a reward program against an env schema")
    p.add_argument("--spec", required=True)
    p.add_argument("--env", required=True, choices=ENV_IDS)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("train", help="run the (reward x seed) training matrix")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict-alg1-done", action="store_true",
                   help="store horizon truncation as done in the replay buffer")
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--env", required=True, choices=ENV_IDS)
    p.add_argument("--spec", required=True, help="reward program providing the classifiers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--episodes", type=int, default=10)
    p.add_argument("--out", help="also write the result as JSON")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("audit", help="audit recorded trajectories of a run")
    p.add_argument("run_dir", help="run directory (or a breakdowns.jsonl path)")
    p.add_argument("--out", help="also write the report as JSON")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser("plot", help="plot success curves with a 25-75 band")
    p.add_argument("run_dirs", nargs="*", help="run directories (or metrics.csv paths)")
    p.add_argument("--series", action="append",
                   help="named group: LABEL=dir1,dir2,... (repeatable)")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(fn=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


def entry() -> None:
    sys.exit(main())
