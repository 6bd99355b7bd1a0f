#!/usr/bin/env python3
"""Regenerate the recorded completion exchanges for the benchmark tasks.

Each fixture pairs the deterministic prompt for a task with a response whose
fenced code block contains the shipped reward program for that task. Run this
after changing prompts, schemas, or the shipped programs; commit the result.
"""

from __future__ import annotations

import sys
from pathlib import Path

from archie_lab import fixtures
from archie_lab.envs import EnvConfig, make_env
from archie_lab.llm.backend import Fixture, fixture_key, write_fixture
from archie_lab.llm.prompt import build_prompt
from archie_lab.llm.tasks import TASKS

RESPONSE_TEMPLATE = """\
Here is a dense reward program for this task. The shaping components guide the
agent toward the goal step by step, and the success condition encodes the
task's completion check; the training engine adds the terminal bonus on top.

```rsp
{program}```

The distance terms pull the agent through the subgoals while the positive
terms stay consistent as progress accumulates, so the assembled terminal
bonus dominates whatever shaping the agent can collect along the way.
"""


def main() -> int:
    out_dir = Path(__file__).resolve().parents[1] / "src" / "archie_lab" / "fixtures" / "llm"
    for stale in out_dir.glob("*.json"):
        stale.unlink()
    for task in TASKS.values():
        schema = make_env(EnvConfig(env_id=task.env_id)).schema
        prompt = build_prompt(task.text, schema)
        program = fixtures.load_spec_text(task.fixture_spec)
        response = RESPONSE_TEMPLATE.format(program=program)
        fixture = Fixture(
            key=fixture_key(prompt),
            prompt=prompt,
            response=response,
            metadata={
                "model": "recorded-fixture",
                "task_id": task.task_id,
                "timestamp": "1970-01-01T00:00:00Z",
            },
        )
        path = write_fixture(fixture, out_dir)
        print(f"{task.task_id}: {path.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
