from .base import (
    ENV_IDS,
    Env,
    EnvAction,
    EnvConfig,
    EnvError,
    EpisodeExhausted,
    NotReset,
    Observation,
    ObservationSchema,
    StepInfo,
    UnknownEnvId,
)
from .planar import GraspLift2D, GraspSlide2D, Place2D
from .point import PointToOrigin
from .push import NarrowTablePush

_ENV_CLASSES = {
    "GraspLift2D": GraspLift2D,
    "GraspSlide2D": GraspSlide2D,
    "Place2D": Place2D,
    "NarrowTablePush": NarrowTablePush,
    "PointToOrigin": PointToOrigin,
}


def make_env(config: EnvConfig) -> Env:
    """Build an environment; raises UnknownEnvId / EnvError on a bad config."""
    config.validate()
    return _ENV_CLASSES[config.env_id](config)


def observation_schema(env: Env) -> ObservationSchema:
    return env.schema


__all__ = [
    "ENV_IDS",
    "Env",
    "EnvAction",
    "EnvConfig",
    "EnvError",
    "EpisodeExhausted",
    "GraspLift2D",
    "GraspSlide2D",
    "NarrowTablePush",
    "NotReset",
    "Observation",
    "ObservationSchema",
    "Place2D",
    "PointToOrigin",
    "StepInfo",
    "UnknownEnvId",
    "make_env",
    "observation_schema",
]
