"""Trajectory auditors for the shaping/terminal formalization.

The monotonicity audit checks the sufficient condition behind the terminal
reward guarantee: once a component has paid a positive value, it never pays
less at a later step. It is diagnostic only. The dominance audit checks the
guarantee itself on a finished episode: the terminal reward at the success
step is at least ten times the positive shaping collected on the way there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import RewardBreakdown
from .spec import RewardSpec

DOMINANCE_EPS = 1e-9


class AuditError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonotonicityViolation:
    component: str
    t_earlier: int
    t_later: int
    magnitude: float


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    n_steps: int
    violations: tuple[MonotonicityViolation, ...]
    max_violation: float


@dataclass(frozen=True)
class DominanceReport:
    solved: bool
    applicable: bool
    passed: Optional[bool]
    conditional: bool
    terminal: float
    cumulative_bonus: float
    cumulative_shaping: float
    ratio: Optional[float]


def _component_names(trajectory: Sequence[RewardBreakdown], spec: Optional[RewardSpec]) -> tuple[str, ...]:
    if spec is not None:
        return spec.component_names()
    return tuple(trajectory[0].components.keys())


def audit_monotonicity(
    trajectory: Sequence[RewardBreakdown], spec: Optional[RewardSpec] = None
) -> MonotonicityReport:
    """Check, per component, that no later value undercuts an earlier positive one."""
    if not trajectory:
        raise AuditError("cannot audit an empty trajectory")
    names = _component_names(trajectory, spec)
    violations: list[MonotonicityViolation] = []
    max_violation = 0.0
    for name in names:
        trace = np.array([bd.components[name] for bd in trajectory], dtype=np.float64)
        if len(trace) < 2:
            continue
        running_max = np.maximum.accumulate(trace)[:-1]
        later = trace[1:]
        bad = (later < running_max) & (running_max > 0.0)
        for offset in np.nonzero(bad)[0]:
            t_later = int(offset) + 1
            t_earlier = int(np.argmax(trace[:t_later]))
            magnitude = float(running_max[offset] - later[offset])
            violations.append(
                MonotonicityViolation(
                    component=name, t_earlier=t_earlier, t_later=t_later, magnitude=magnitude
                )
            )
            max_violation = max(max_violation, magnitude)
    return MonotonicityReport(
        ok=not violations,
        n_steps=len(trajectory),
        violations=tuple(violations),
        max_violation=max_violation,
    )


def audit_dominance(
    episode: Sequence[RewardBreakdown],
    solved: bool,
    spec: Optional[RewardSpec] = None,
    eps: float = DOMINANCE_EPS,
) -> DominanceReport:
    """Check that the terminal reward dominates the cumulative positive shaping.

    Applies only to solved episodes. If the monotonicity condition failed on
    this episode, the verdict is marked conditional: the guarantee's premise
    does not hold, so a failure would not contradict it.
    """
    if not episode:
        raise AuditError("cannot audit an empty episode")
    cumulative_bonus = float(sum(bd.bonus_sum for bd in episode))
    cumulative_shaping = float(sum(bd.shaping_sum for bd in episode))
    if not solved:
        return DominanceReport(
            solved=False,
            applicable=False,
            passed=None,
            conditional=False,
            terminal=0.0,
            cumulative_bonus=cumulative_bonus,
            cumulative_shaping=cumulative_shaping,
            ratio=None,
        )
    terminal = episode[-1].terminal
    if terminal == 0.0:
        raise AuditError("episode marked solved but its final terminal reward is zero")
    conditional = not audit_monotonicity(episode, spec).ok
    ratio = terminal / max(abs(cumulative_shaping), eps)
    passed = terminal >= 10.0 * cumulative_bonus
    return DominanceReport(
        solved=True,
        applicable=True,
        passed=passed,
        conditional=conditional,
        terminal=terminal,
        cumulative_bonus=cumulative_bonus,
        cumulative_shaping=cumulative_shaping,
        ratio=ratio,
    )
