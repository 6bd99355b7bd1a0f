"""Reward evaluation and the hard-enforced shaping/terminal assembly.

The engine, not the reward author, owns the terminal term: after the named
components are evaluated, the per-step positive parts are summed, floored at
one, scaled by ten times the episode length, and granted when (and only when)
the success classifier fires on the post-step state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..envs.base import Observation, ObservationSchema
from .ast import compile_expr
from .spec import RewardSpec, validate_spec

TERMINAL_SCALE = 10.0


class NonFiniteReward(RuntimeError):
    """A component evaluated to inf/nan; the episode must abort with context."""


class SpecSchemaMismatch(ValueError):
    def __init__(self, report):
        super().__init__("reward spec does not validate against the schema:\n" + report.render())
        self.report = report


@dataclass(frozen=True)
class RewardBreakdown:
    """Per-step reward record kept alongside the scalar for auditing."""

    components: dict[str, float]
    shaping_sum: float
    bonus_sum: float
    terminal: float
    total: float


def assemble_reward(components: Mapping[str, float], phi_next: float, horizon: int) -> RewardBreakdown:
    """Combine component values into the step reward.

    bonus_sum   = sum of positive component values
    terminal    = 10 * horizon * max(bonus_sum, 1) * phi_next
    total       = sum of all component values + terminal
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if phi_next not in (0, 1, 0.0, 1.0):
        raise ValueError(f"phi_next must be 0 or 1, got {phi_next}")
    values = []
    for name, value in components.items():
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteReward(f"component {name!r} evaluated to {value}")
        values.append(value)
    shaping_sum = math.fsum(values)
    bonus_sum = math.fsum(v for v in values if v > 0.0)
    terminal = TERMINAL_SCALE * horizon * max(bonus_sum, 1.0) * float(phi_next)
    return RewardBreakdown(
        components={k: float(v) for k, v in components.items()},
        shaping_sum=shaping_sum,
        bonus_sum=bonus_sum,
        terminal=terminal,
        total=shaping_sum + terminal,
    )


@dataclass(frozen=True)
class StepOutcome:
    breakdown: RewardBreakdown
    solved: bool
    failed: bool


class CompiledReward:
    """A reward spec bound to a schema: validated once, evaluated many times.

    Immutable after construction; safe to share across workers.
    """

    def __init__(self, spec: RewardSpec, schema: ObservationSchema):
        report = validate_spec(spec, schema)
        if not report.ok:
            raise SpecSchemaMismatch(report)
        self.spec = spec
        self.schema = schema
        self._component_fns = [(c.name, compile_expr(c.expr, schema)) for c in spec.components]
        self._success_fn = compile_expr(spec.success.expr, schema)
        self._failure_fn = compile_expr(spec.failure.expr, schema) if spec.failure else None

    def components(self, values: np.ndarray) -> dict[str, float]:
        out: dict[str, float] = {}
        for name, fn in self._component_fns:
            val = fn(values)
            if not math.isfinite(val):
                raise NonFiniteReward(f"component {name!r} evaluated to {val}")
            out[name] = val
        return out

    def success(self, values: np.ndarray) -> int:
        return int(self._success_fn(values))

    def failure(self, values: np.ndarray) -> int:
        if self._failure_fn is None:
            return 0
        return int(self._failure_fn(values))

    def step(self, next_values: np.ndarray, use_terminal: bool = True) -> StepOutcome:
        """Reward for a transition, evaluated on the post-step observation."""
        comps = self.components(next_values)
        solved = bool(self.success(next_values))
        failed = bool(self.failure(next_values))
        phi = 1.0 if (solved and use_terminal) else 0.0
        breakdown = assemble_reward(comps, phi, self.spec.horizon)
        return StepOutcome(breakdown=breakdown, solved=solved, failed=failed)


def compile_spec(spec: RewardSpec, schema: ObservationSchema) -> CompiledReward:
    return CompiledReward(spec, schema)


def eval_components(spec: RewardSpec, obs: Observation) -> dict[str, float]:
    """Evaluate every component independently on one observation."""
    return CompiledReward(spec, obs.schema).components(obs.values)


def eval_classifier(classifier, obs: Observation) -> int:
    """Evaluate a success/failure classifier to exactly 0 or 1."""
    fn = compile_expr(classifier.expr, obs.schema)
    return int(fn(obs.values))
