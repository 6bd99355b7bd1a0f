from .audit_io import (
    AuditIOError,
    BREAKDOWNS_FILENAME,
    audit_run,
    read_breakdowns,
    render_audit_report,
)
from .config import (
    BackendConfig,
    ConfigError,
    ExperimentConfig,
    RewardSource,
    experiment_config_from_dict,
    load_experiment_config,
)
from .runner import RunResult, generate_program, resolve_reward_texts, run_matrix, run_one
from .stats import (
    CurveStats,
    RaggedGridError,
    aggregate_percentiles,
    curves_from_csvs,
    read_success_curve,
)

__all__ = [
    "AuditIOError",
    "BackendConfig",
    "BREAKDOWNS_FILENAME",
    "ConfigError",
    "CurveStats",
    "ExperimentConfig",
    "RaggedGridError",
    "RewardSource",
    "RunResult",
    "aggregate_percentiles",
    "audit_run",
    "curves_from_csvs",
    "experiment_config_from_dict",
    "generate_program",
    "load_experiment_config",
    "read_breakdowns",
    "read_success_curve",
    "render_audit_report",
    "resolve_reward_texts",
    "run_matrix",
    "run_one",
]
