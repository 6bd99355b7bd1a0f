"""Shared environment machinery: configs, observation schemas, the step contract."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

ENV_IDS = ("GraspLift2D", "GraspSlide2D", "Place2D", "NarrowTablePush", "PointToOrigin")


class EnvError(ValueError):
    pass


class UnknownEnvId(EnvError):
    pass


class EpisodeExhausted(RuntimeError):
    """Raised when step() is called after the horizon has been consumed."""


class NotReset(RuntimeError):
    """Raised when step() is called before the first reset()."""


@dataclass(frozen=True)
class EnvConfig:
    """Environment construction knobs.

    `geometry` overrides the per-env defaults (world bounds, grasp radius,
    object half-extents, table dimensions...); unknown keys are rejected so a
    typo cannot silently fall back to a default.
    """

    env_id: str
    dt: float = 0.01
    horizon: int = 1000
    geometry: Mapping[str, float] = field(default_factory=dict)
    gravity: float = 9.81

    def validate(self) -> None:
        if self.env_id not in ENV_IDS:
            raise UnknownEnvId(f"unknown env_id {self.env_id!r}; expected one of {ENV_IDS}")
        if not (self.dt > 0):
            raise EnvError(f"dt must be positive, got {self.dt}")
        if self.horizon < 1:
            raise EnvError(f"horizon must be >= 1, got {self.horizon}")
        if not math.isfinite(self.gravity):
            raise EnvError("gravity must be finite")
        for key, val in self.geometry.items():
            if not math.isfinite(float(val)):
                raise EnvError(f"geometry scalar {key!r} is not finite: {val}")


@dataclass(frozen=True)
class ObservationSchema:
    """Ordered, named scalar layout shared by an env and the reward evaluator."""

    names: tuple[str, ...]
    ranges: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise EnvError("schema names must be unique")
        if len(self.ranges) != len(self.names):
            raise EnvError("one range per name required")

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class Observation:
    schema: ObservationSchema
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (len(self.schema),):
            raise EnvError(
                f"observation has {self.values.shape} values, schema expects {len(self.schema)}"
            )
        if not np.all(np.isfinite(self.values)):
            raise EnvError("observation contains non-finite values")

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.schema.index(name)])

    def as_dict(self) -> dict[str, float]:
        return {n: float(v) for n, v in zip(self.schema.names, self.values)}


@dataclass(frozen=True)
class EnvAction:
    """Clamped velocity command plus, for the grasping envs, a grasp command."""

    velocity_cmd: np.ndarray
    grasp_cmd: float | None = None


@dataclass(frozen=True)
class StepInfo:
    t: int
    contact: bool
    grasping: bool = False
    fallen: bool = False


@dataclass
class WorldState:
    agent_pos: np.ndarray
    object_pos: np.ndarray
    object_vel: np.ndarray
    agent_grasping: bool
    grasp_offset: np.ndarray
    t: int


class Env:
    """Deterministic single-threaded environment; one PRNG per instance."""

    def __init__(self, config: EnvConfig):
        config.validate()
        self.config = config
        self._state: WorldState | None = None
        self._rng: np.random.Generator | None = None

    # --- contract -----------------------------------------------------
    @property
    def schema(self) -> ObservationSchema:
        raise NotImplementedError

    @property
    def action_dim(self) -> int:
        raise NotImplementedError

    def reset(self, seed: int) -> Observation:
        raise NotImplementedError

    def step(self, action: EnvAction) -> tuple[Observation, StepInfo]:
        raise NotImplementedError

    # --- helpers ------------------------------------------------------
    def action_from_array(self, arr: np.ndarray) -> EnvAction:
        arr = np.asarray(arr, dtype=np.float64)
        if arr.shape != (self.action_dim,):
            raise EnvError(f"action shape {arr.shape} != ({self.action_dim},)")
        if self.action_dim == 2:
            return EnvAction(velocity_cmd=arr[:2].copy())
        return EnvAction(velocity_cmd=arr[:2].copy(), grasp_cmd=float(arr[2]))

    def _check_steppable(self) -> WorldState:
        if self._state is None:
            raise NotReset("step() before reset()")
        if self._state.t >= self.config.horizon:
            raise EpisodeExhausted(
                f"episode exhausted after {self.config.horizon} steps; reset() required"
            )
        return self._state

    @staticmethod
    def _clamped_velocity(action: EnvAction, v_max: float) -> np.ndarray:
        v = np.clip(np.asarray(action.velocity_cmd, dtype=np.float64), -1.0, 1.0)
        if not np.all(np.isfinite(v)):
            raise EnvError("velocity command contains non-finite values")
        return v * v_max


def merge_geometry(defaults: dict[str, float], overrides: Mapping[str, float]) -> dict[str, float]:
    unknown = set(overrides) - set(defaults)
    if unknown:
        raise EnvError(f"unknown geometry keys: {sorted(unknown)}")
    merged = dict(defaults)
    merged.update({k: float(v) for k, v in overrides.items()})
    return merged
