from .bundle import (
    CHECKPOINT_MAGIC,
    PolicyBundle,
    TrainConfig,
    TwinCritics,
    load_checkpoint,
    make_bundle,
    save_checkpoint,
    soft_update,
)
from .policy import (
    GaussianPolicy,
    init_policy,
    log_prob,
    mean_action,
    rsample,
    sample_action,
)
from .replay import Batch, ReplayBuffer
from .train import (
    METRICS_COLUMNS,
    MetricsRow,
    derive_seed,
    evaluate,
    metrics_to_csv,
    train,
)
from .updates import (
    DivergedError,
    actor_update,
    alpha_update,
    critic_targets,
    critic_update,
)

__all__ = [
    "Batch",
    "CHECKPOINT_MAGIC",
    "DivergedError",
    "GaussianPolicy",
    "METRICS_COLUMNS",
    "MetricsRow",
    "PolicyBundle",
    "ReplayBuffer",
    "TrainConfig",
    "TwinCritics",
    "actor_update",
    "alpha_update",
    "critic_targets",
    "critic_update",
    "derive_seed",
    "evaluate",
    "init_policy",
    "load_checkpoint",
    "log_prob",
    "make_bundle",
    "mean_action",
    "metrics_to_csv",
    "rsample",
    "sample_action",
    "save_checkpoint",
    "soft_update",
    "train",
]
