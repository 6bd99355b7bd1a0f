from .ast import Expr, to_text
from .audit import (
    AuditError,
    DominanceReport,
    MonotonicityReport,
    MonotonicityViolation,
    audit_dominance,
    audit_monotonicity,
)
from .engine import (
    CompiledReward,
    NonFiniteReward,
    RewardBreakdown,
    SpecSchemaMismatch,
    StepOutcome,
    assemble_reward,
    compile_spec,
    eval_classifier,
    eval_components,
)
from .parser import RewardSyntaxError, parse_expr, parse_reward_spec
from .spec import (
    RESERVED_COMPONENT_NAME,
    Classifier,
    RewardComponent,
    RewardSpec,
    ValidationIssue,
    ValidationReport,
    serialize_spec,
    validate_spec,
)

__all__ = [
    "AuditError",
    "Classifier",
    "CompiledReward",
    "DominanceReport",
    "Expr",
    "MonotonicityReport",
    "MonotonicityViolation",
    "NonFiniteReward",
    "RESERVED_COMPONENT_NAME",
    "RewardBreakdown",
    "RewardComponent",
    "RewardSpec",
    "RewardSyntaxError",
    "SpecSchemaMismatch",
    "StepOutcome",
    "ValidationIssue",
    "ValidationReport",
    "assemble_reward",
    "audit_dominance",
    "audit_monotonicity",
    "compile_spec",
    "eval_classifier",
    "eval_components",
    "parse_expr",
    "parse_reward_spec",
    "serialize_spec",
    "to_text",
    "validate_spec",
]
