"""Prompt assembly for reward generation.

The rendered prompt is the concatenation of four blocks, in order:
introduction, task description, coding context (reward-language reference,
the observation variables, and the fixed shaping/terminal assembly the engine
enforces), and general reward-design advice with a worked example. Rendering
is byte-deterministic so recorded exchanges can be replayed by content hash.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..envs.base import ObservationSchema

DEFAULT_GRAMMAR_DOC = """\
Reward programs are plain text with one block per line:

    component NAME: EXPRESSION      # one or more shaping components
    success: CONDITION              # required; fires when the task is solved
    failure: CONDITION              # optional; fires when the task is failed

Expressions may use: numeric literals; the observation variables listed below;
+ - * and parentheses; min(a, b); max(a, b); abs(a); clamp(a, lo, hi) with
literal bounds; dist(g1, g2) for the euclidean distance between two point
groups (dist(agent, object) pairs agent.x/object.x, agent.y/object.y, ...);
comparisons < <= > >= which evaluate to 0 or 1; and the connectives
and / or / not. Conditions must be rooted in a comparison or connective.
A '#' starts a comment. There is no division and no function definition."""


@dataclass(frozen=True)
class PromptBlocks:
    introduction: str
    task_description: str
    coding_context: str
    rl_context: str

    def render(self) -> str:
        return "\n\n".join(
            (self.introduction, self.task_description, self.coding_context, self.rl_context)
        )


_INTRODUCTION = """\
You are a reward engineer writing reward functions that make reinforcement
learning agents solve tasks as effectively as possible. Your goal is to write
a dense reward program, in the small reward language described below, that
helps the agent learn the task described next. Use the observation variables
the environment exposes. Reply with exactly one fenced code block tagged rsp
containing the complete program and nothing else inside the block."""

_ASSEMBLY_CONSTRAINT = """\
The training engine assembles the final step reward from your components; this
assembly is fixed and you cannot alter it. After your components are evaluated
on the post-step observation:

    total_bonuses = sum of every component value that is > 0
    total_bonuses = max(total_bonuses, 1)
    task_solved_reward = 10 * episode_length * total_bonuses * solved
    reward = sum of all component values + task_solved_reward

where solved is 1 exactly when your success condition holds on the new state.
Therefore: do not add your own task-completion bonus, and never name a
component task_solved_reward (the name is reserved). Declare success (and, if
the task defines one, failure) as conditions; they also terminate the episode."""

_ADVICE = """\
Advice on designing reward components:
- The components should implement a shaping that clearly guides the policy
  towards the goal.
- You can pay a bonus when the task is partially solved.
- If a failure condition can end an episode before the goal is reached, prefer
  positive shaping terms so early termination is not attractive.
- Keep the components roughly proportionate to each other.
- To drive the agent toward an object, reward the decrease of distance and the
  contact with it; to keep it away from something, penalize touching it.
- To encourage grasping an object (or not dropping it), reward contact and the
  grasping flag.
- To reward lifting, use the object height as a positive term.
- Penalties for unwanted behavior should be small in absolute value compared
  to the positive terms.

Worked example, for a task where the agent must grasp an object and lift it to
height 0.5:

```rsp
component reach: -dist(agent, object)
component touch: contact + grasping
component lift: 10 * object.y
success: object.y >= 0.5
```"""


def _fmt(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def render_schema(schema: ObservationSchema) -> str:
    lines = ["Observation variables (name: [low, high]):"]
    for name, (lo, hi) in zip(schema.names, schema.ranges):
        lines.append(f"- {name}: [{_fmt(lo)}, {_fmt(hi)}]")
    return "\n".join(lines)


def build_prompt_blocks(
    task_text: str, schema: ObservationSchema, grammar_doc: str | None = None
) -> PromptBlocks:
    if not task_text or not task_text.strip():
        raise ValueError("task text must be non-empty")
    grammar = grammar_doc if grammar_doc is not None else DEFAULT_GRAMMAR_DOC
    coding = "\n\n".join((grammar, render_schema(schema), _ASSEMBLY_CONSTRAINT))
    return PromptBlocks(
        introduction=_INTRODUCTION,
        task_description="Task:\n" + task_text.strip(),
        coding_context=coding,
        rl_context=_ADVICE,
    )


def build_prompt(task_text: str, schema: ObservationSchema, grammar_doc: str | None = None) -> str:
    return build_prompt_blocks(task_text, schema, grammar_doc).render()
