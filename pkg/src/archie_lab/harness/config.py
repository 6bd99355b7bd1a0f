"""Experiment configuration: one TOML file with nested sections mirroring the
dataclass fields. Unknown keys are hard errors so a typo cannot silently run
the wrong experiment."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ..envs.base import EnvConfig
from ..sac.bundle import TrainConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RewardSource:
    kind: str  # "fixture" | "file" | "live"
    task: Optional[str] = None
    file: Optional[str] = None
    text: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("fixture", "file", "live"):
            raise ConfigError(f"reward source must be fixture|file|live, got {self.kind!r}")
        if self.kind == "file" and not self.file:
            raise ConfigError("reward source 'file' requires a file path")
        if self.kind in ("fixture", "live") and not (self.task or self.text):
            raise ConfigError(f"reward source {self.kind!r} requires a task id or text")


@dataclass(frozen=True)
class BackendConfig:
    mode: str = "replay"  # "replay" | "live"
    fixture_dir: Optional[str] = None  # default: packaged corpus
    endpoint: Optional[str] = None
    model: Optional[str] = None
    token_env: str = "ARCHIE_LLM_TOKEN"
    response_pointer: str = "/choices/0/message/content"
    decoding: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("replay", "live"):
            raise ConfigError(f"backend mode must be replay|live, got {self.mode!r}")
        if self.mode == "live" and not (self.endpoint and self.model):
            raise ConfigError("live backend requires endpoint and model")


@dataclass(frozen=True)
class ExperimentConfig:
    env: EnvConfig
    reward: RewardSource
    train: TrainConfig
    backend: BackendConfig
    seeds: tuple[int, ...]
    rewards_per_task: int
    output_dir: Path

    def __post_init__(self):
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds must be distinct")
        if self.rewards_per_task < 1:
            raise ConfigError("rewards_per_task must be >= 1")
        if self.env.horizon != self.train.horizon:
            raise ConfigError(
                f"env horizon {self.env.horizon} != train horizon {self.train.horizon}"
            )


def _take(section: Mapping[str, Any], allowed: set[str], where: str) -> dict[str, Any]:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in [{where}]: {sorted(unknown)}")
    return dict(section)


def _build_train(raw: Mapping[str, Any], env_horizon: int) -> TrainConfig:
    allowed = {f.name for f in fields(TrainConfig)}
    data = _take(raw, allowed, "train")
    if "hidden" in data:
        data["hidden"] = tuple(int(h) for h in data["hidden"])
    data.setdefault("horizon", env_horizon)
    try:
        return TrainConfig(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [train] section: {exc}") from exc


def experiment_config_from_dict(doc: Mapping[str, Any]) -> ExperimentConfig:
    top = _take(
        doc,
        {"env", "reward", "train", "backend", "seeds", "rewards_per_task", "output_dir"},
        "top level",
    )
    for required in ("env", "reward", "train", "output_dir", "seeds"):
        if required not in top:
            raise ConfigError(f"missing required key {required!r}")

    env_raw = _take(top["env"], {"env_id", "dt", "horizon", "gravity", "geometry"}, "env")
    try:
        env = EnvConfig(**env_raw)
        env.validate()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [env] section: {exc}") from exc

    reward_raw = _take(top["reward"], {"source", "task", "file", "text"}, "reward")
    source = reward_raw.pop("source", None)
    if source is None:
        raise ConfigError("[reward] requires a source")
    reward = RewardSource(kind=source, **reward_raw)

    backend_raw = _take(
        top.get("backend", {}),
        {"mode", "fixture_dir", "endpoint", "model", "token_env", "response_pointer", "decoding"},
        "backend",
    )
    backend = BackendConfig(**backend_raw)

    train = _build_train(top["train"], env.horizon)
    return ExperimentConfig(
        env=env,
        reward=reward,
        train=train,
        backend=backend,
        seeds=tuple(int(s) for s in top["seeds"]),
        rewards_per_task=int(top.get("rewards_per_task", 1)),
        output_dir=Path(top["output_dir"]),
    )


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc
    return experiment_config_from_dict(doc)
