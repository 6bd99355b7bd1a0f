"""Persistence and aggregation for trajectory audits.

Evaluation rollouts are dumped as JSONL (one episode per line, each step with
its full reward breakdown); the audit command replays the monotonicity and
dominance checks over them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..rewardlang.audit import audit_dominance, audit_monotonicity
from ..rewardlang.engine import RewardBreakdown

BREAKDOWNS_FILENAME = "breakdowns.jsonl"


class AuditIOError(RuntimeError):
    pass


def breakdown_to_dict(bd: RewardBreakdown) -> dict:
    return {
        "components": bd.components,
        "shaping_sum": bd.shaping_sum,
        "bonus_sum": bd.bonus_sum,
        "terminal": bd.terminal,
        "total": bd.total,
    }


def breakdown_from_dict(doc: dict) -> RewardBreakdown:
    return RewardBreakdown(
        components=dict(doc["components"]),
        shaping_sum=float(doc["shaping_sum"]),
        bonus_sum=float(doc["bonus_sum"]),
        terminal=float(doc["terminal"]),
        total=float(doc["total"]),
    )


def episode_record_to_json(record: dict) -> str:
    return json.dumps(
        {
            "episode": record["episode"],
            "solved": record["solved"],
            "steps": [breakdown_to_dict(bd) for bd in record["breakdowns"]],
        },
        sort_keys=True,
    )


@dataclass(frozen=True)
class EpisodeTrace:
    solved: bool
    breakdowns: list[RewardBreakdown]


def read_breakdowns(path: str | Path) -> list[EpisodeTrace]:
    path = Path(path)
    episodes: list[EpisodeTrace] = []
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                doc = json.loads(line)
                episodes.append(
                    EpisodeTrace(
                        solved=bool(doc["solved"]),
                        breakdowns=[breakdown_from_dict(s) for s in doc["steps"]],
                    )
                )
    except FileNotFoundError as exc:
        raise AuditIOError(f"no breakdown file at {path}") from exc
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise AuditIOError(f"corrupted breakdown file {path} (line {lineno}): {exc}") from exc
    return episodes


def audit_run(episodes: Sequence[EpisodeTrace]) -> dict:
    """Aggregate audit report over recorded episodes, as a JSON-ready dict."""
    mono_violations = 0
    mono_max = 0.0
    dominance = []
    solved_count = 0
    for idx, ep in enumerate(episodes):
        if not ep.breakdowns:
            continue
        mono = audit_monotonicity(ep.breakdowns)
        mono_violations += len(mono.violations)
        mono_max = max(mono_max, mono.max_violation)
        if ep.solved:
            solved_count += 1
            dom = audit_dominance(ep.breakdowns, solved=True)
            dominance.append(
                {
                    "episode": idx,
                    "passed": dom.passed,
                    "conditional": dom.conditional,
                    "terminal": dom.terminal,
                    "cumulative_bonus": dom.cumulative_bonus,
                    "ratio": dom.ratio,
                }
            )
    report = {
        "episodes": len(episodes),
        "solved_episodes": solved_count,
        "monotonicity": {"violations": mono_violations, "max_violation": mono_max},
        "dominance": {
            "checked": len(dominance),
            "passed": sum(1 for d in dominance if d["passed"]),
            "conditional": sum(1 for d in dominance if d["conditional"]),
            "failed": sum(1 for d in dominance if not d["passed"]),
            "episodes": dominance,
        },
    }
    if solved_count == 0:
        report["dominance"]["note"] = "no solved episodes"
    return report


def render_audit_report(report: dict) -> str:
    lines = [
        f"episodes audited:      {report['episodes']}",
        f"solved episodes:       {report['solved_episodes']}",
        f"monotonicity:          {report['monotonicity']['violations']} violation(s), "
        f"max magnitude {report['monotonicity']['max_violation']:.6g}",
    ]
    dom = report["dominance"]
    if dom.get("note"):
        lines.append(f"dominance:             {dom['note']}")
    else:
        lines.append(
            f"dominance:             {dom['passed']}/{dom['checked']} passed"
            f" ({dom['conditional']} conditional, {dom['failed']} failed)"
        )
    return "\n".join(lines)
