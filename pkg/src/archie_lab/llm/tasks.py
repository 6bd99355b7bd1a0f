"""Benchmark task definitions: the natural-language inputs to reward generation."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TaskDef:
    task_id: str
    env_id: str
    text: str
    fixture_spec: str  # name of the shipped reward program for replay fixtures


TASKS: dict[str, TaskDef] = {
    t.task_id: t
    for t in (
        TaskDef(
            task_id="grasp_lift",
            env_id="GraspLift2D",
            text=(
                "The agent must reach the cube position. Then grasp and lift the cube. "
                "Consider the task solved when the cube is at 0.5 height. "
                "There is no failure condition."
            ),
            fixture_spec="grasp_lift",
        ),
        TaskDef(
            task_id="grasp_slide",
            env_id="GraspSlide2D",
            text=(
                "The agent must reach the cube position. Then grasp the cube. Finally, "
                "move the cube to the right (positive x direction). "
                "Consider the task solved when the cube x coordinate is > 0.99. "
                "There is no failure condition."
            ),
            fixture_spec="grasp_slide",
        ),
        TaskDef(
            task_id="place",
            env_id="Place2D",
            text=(
                "The agent is holding the cube. Move the cube to (0, 0). "
                "Consider the task solved when the cube is at 0.05 distance from (0, 0) "
                "and is grasped. "
                "Consider the task failed when the agent doesn't grasp the cube."
            ),
            fixture_spec="place",
        ),
        TaskDef(
            task_id="push",
            env_id="NarrowTablePush",
            text=(
                "The agent and the cube are on a narrow table. The agent must reach the "
                "cube position. Then the agent must push the cube towards the positive x "
                "direction, without dropping the cube from the table. "
                "Consider the task solved when the cube is at x position > 0.5. "
                "Consider the task failed when the cube falls off the table."
            ),
            fixture_spec="push",
        ),
        TaskDef(
            task_id="point_to_origin",
            env_id="PointToOrigin",
            text=(
                "The agent is a point on a plane and must reach the origin. "
                "Consider the task solved when the agent is at 0.05 distance from (0, 0). "
                "There is no failure condition."
            ),
            fixture_spec="point_to_origin_b1",
        ),
    )
}
