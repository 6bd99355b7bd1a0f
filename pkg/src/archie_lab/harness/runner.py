"""The (reward x seed) experiment matrix.

Each cell trains one agent in reference mode and writes its own directory:
the reward program, a byte-deterministic metrics CSV, a checkpoint, and the
evaluation-episode reward breakdowns for auditing. Cells are isolated: a
diverging run is marked FAILED and the rest of the matrix continues. Finished
cells are skipped on re-run, which makes a killed matrix resumable.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .. import fixtures
from ..envs import make_env
from ..llm.backend import LiveBackend, ReplayBackend
from ..llm.extract import extract_spec
from ..llm.prompt import build_prompt
from ..llm.tasks import TASKS
from ..rewardlang.parser import parse_reward_spec
from ..sac.bundle import save_checkpoint
from ..sac.train import metrics_to_csv, train
from .audit_io import BREAKDOWNS_FILENAME, episode_record_to_json
from .config import ConfigError, ExperimentConfig

DONE_MARKER = "DONE"
FAILED_MARKER = "FAILED"


@dataclass(frozen=True)
class RunResult:
    reward_id: str
    seed: int
    run_dir: Path
    status: str  # "done" | "failed" | "skipped"
    error: Optional[str] = None


def make_backend(config: ExperimentConfig):
    b = config.backend
    fixture_dir = b.fixture_dir or fixtures.llm_fixture_dir()
    if b.mode == "replay":
        return ReplayBackend(fixture_dir)
    return LiveBackend(
        endpoint=b.endpoint,
        model=b.model,
        record_dir=fixture_dir,
        token_env=b.token_env,
        response_pointer=b.response_pointer,
        decoding=b.decoding,
    )


def generate_program(task_text: str, env_config, backend, variant: int = 0) -> str:
    """Prompt -> completion -> extracted reward program text."""
    schema = make_env(env_config).schema
    prompt = build_prompt(task_text, schema)
    if variant > 0:
        prompt = f"{prompt}\n\nVariant: {variant}"
    response = backend.complete(prompt)
    return extract_spec(response)


def resolve_reward_texts(config: ExperimentConfig) -> list[tuple[str, str]]:
    """Materialize the reward column of the matrix as (reward_id, program text)."""
    src = config.reward
    if src.kind == "file":
        text = Path(src.file).read_text()
        return [("r0", text)]
    task_text = src.text
    if src.task is not None:
        if src.task not in TASKS:
            raise ConfigError(f"unknown task id {src.task!r}; known: {sorted(TASKS)}")
        task = TASKS[src.task]
        if task.env_id != config.env.env_id:
            raise ConfigError(
                f"task {src.task!r} targets {task.env_id}, config env is {config.env.env_id}"
            )
        task_text = task_text or task.text
    backend = make_backend(config)
    out = []
    for variant in range(config.rewards_per_task):
        out.append((f"r{variant}", generate_program(task_text, config.env, backend, variant)))
    return out


def run_one(config: ExperimentConfig, reward_id: str, reward_text: str, seed: int) -> RunResult:
    run_dir = config.output_dir / f"{reward_id}_seed{seed}"
    if (run_dir / DONE_MARKER).exists():
        return RunResult(reward_id, seed, run_dir, "skipped")
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "spec.rsp").write_text(reward_text)
    try:
        spec = parse_reward_spec(reward_text, horizon=config.train.horizon)
        train_config = config.train
        if train_config.seed != seed:
            from dataclasses import replace

            train_config = replace(train_config, seed=seed)
        with open(run_dir / BREAKDOWNS_FILENAME, "w") as sink_fh:

            def sink(record: dict) -> None:
                sink_fh.write(episode_record_to_json(record) + "\n")

            bundle, rows = train(
                lambda: make_env(config.env), spec, train_config, breakdown_sink=sink
            )
        (run_dir / "metrics.csv").write_text(metrics_to_csv(rows))
        save_checkpoint(bundle, run_dir / "checkpoint.bin")
        (run_dir / DONE_MARKER).write_text("ok\n")
        return RunResult(reward_id, seed, run_dir, "done")
    except Exception as exc:  # noqa: BLE001 - isolation: one cell must not kill the matrix
        (run_dir / FAILED_MARKER).write_text(f"{type(exc).__name__}: {exc}\n")
        return RunResult(reward_id, seed, run_dir, "failed", error=str(exc))


def run_matrix(config: ExperimentConfig, workers: int = 1) -> list[RunResult]:
    rewards = resolve_reward_texts(config)
    cells = [
        (config, reward_id, text, seed) for reward_id, text in rewards for seed in config.seeds
    ]
    if workers <= 1:
        return [run_one(*cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, cells))


def _run_cell(cell) -> RunResult:
    return run_one(*cell)
