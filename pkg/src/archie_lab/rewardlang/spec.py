"""Reward program structure and schema validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from ..envs.base import ObservationSchema
from .ast import Clamp, Const, Dist, Expr, Var, resolve_group, to_text

RESERVED_COMPONENT_NAME = "task_solved_reward"


@dataclass(frozen=True)
class RewardComponent:
    name: str
    expr: Expr


@dataclass(frozen=True)
class Classifier:
    """Binary predicate over an observation; root must be boolean-valued."""

    expr: Expr


@dataclass(frozen=True)
class RewardSpec:
    components: tuple[RewardComponent, ...]
    success: Classifier
    failure: Optional[Classifier]
    horizon: int

    def component_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.components)

    def with_horizon(self, horizon: int) -> "RewardSpec":
        if horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {horizon}")
        return replace(self, horizon=horizon)


@dataclass(frozen=True)
class ValidationIssue:
    code: str  # UnknownVariable | NonBooleanClassifier | ReservedName | NonFiniteConstant
    where: str  # "component <name>" | "success" | "failure"
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> set[str]:
        return {issue.code for issue in self.issues}

    def render(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{i.code} [{i.where}]: {i.message}" for i in self.issues)


def _check_expr(expr: Expr, schema: ObservationSchema, where: str, issues: list[ValidationIssue]):
    for node in expr.walk():
        if isinstance(node, Var):
            if node.name == RESERVED_COMPONENT_NAME:
                issues.append(
                    ValidationIssue(
                        "ReservedName", where, f"{RESERVED_COMPONENT_NAME} cannot be referenced"
                    )
                )
            elif node.name not in schema.names:
                issues.append(
                    ValidationIssue("UnknownVariable", where, f"unknown variable {node.name!r}")
                )
        elif isinstance(node, Dist):
            ga = resolve_group(schema, node.group_a)
            gb = resolve_group(schema, node.group_b)
            if not ga:
                issues.append(
                    ValidationIssue(
                        "UnknownVariable", where, f"unknown point group {node.group_a!r}"
                    )
                )
            if not gb:
                issues.append(
                    ValidationIssue(
                        "UnknownVariable", where, f"unknown point group {node.group_b!r}"
                    )
                )
            if ga and gb and set(ga) != set(gb):
                issues.append(
                    ValidationIssue(
                        "UnknownVariable",
                        where,
                        f"groups {node.group_a!r} and {node.group_b!r} have mismatched "
                        f"coordinates ({sorted(ga)} vs {sorted(gb)})",
                    )
                )
        elif isinstance(node, Const):
            if not math.isfinite(node.value):
                issues.append(
                    ValidationIssue("NonFiniteConstant", where, f"constant {node.value} not finite")
                )
        elif isinstance(node, Clamp):
            if not (math.isfinite(node.lo) and math.isfinite(node.hi)):
                issues.append(
                    ValidationIssue("NonFiniteConstant", where, "clamp bounds must be finite")
                )


def validate_spec(spec: RewardSpec, schema: ObservationSchema) -> ValidationReport:
    """Static checks only; never evaluates on live data."""
    issues: list[ValidationIssue] = []
    for comp in spec.components:
        if comp.name == RESERVED_COMPONENT_NAME:
            issues.append(
                ValidationIssue(
                    "ReservedName",
                    f"component {comp.name}",
                    f"component name {RESERVED_COMPONENT_NAME!r} is reserved for the terminal term",
                )
            )
        _check_expr(comp.expr, schema, f"component {comp.name}", issues)
    for label, clf in (("success", spec.success), ("failure", spec.failure)):
        if clf is None:
            continue
        if not clf.expr.is_boolean:
            issues.append(
                ValidationIssue(
                    "NonBooleanClassifier",
                    label,
                    f"{label} classifier must be rooted in a comparison or logical operator",
                )
            )
        _check_expr(clf.expr, schema, label, issues)
    return ValidationReport(issues=tuple(issues))


def serialize_spec(spec: RewardSpec) -> str:
    """Canonical text form; reparsing yields a structurally identical program."""
    lines = [f"component {c.name}: {to_text(c.expr)}" for c in spec.components]
    lines.append(f"success: {to_text(spec.success.expr)}")
    if spec.failure is not None:
        lines.append(f"failure: {to_text(spec.failure.expr)}")
    return "\n".join(lines) + "\n"
