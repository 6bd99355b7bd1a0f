"""Point-mass navigation to the plane origin; the minimal testbed for studying
how a constant bonus term of varying weight distorts the reward landscape."""

from __future__ import annotations

import numpy as np

from .base import (
    Env,
    EnvAction,
    EnvConfig,
    Observation,
    ObservationSchema,
    StepInfo,
    WorldState,
    merge_geometry,
)

POINT_GEOMETRY = {
    "x_min": -1.0,
    "x_max": 1.0,
    "y_min": 0.0,
    "y_max": 1.0,
    "v_max": 1.0,
    "spawn_margin": 0.1,
}


class PointToOrigin(Env):
    def __init__(self, config: EnvConfig):
        super().__init__(config)
        self.geom = merge_geometry(POINT_GEOMETRY, config.geometry)
        g = self.geom
        self._schema = ObservationSchema(
            names=("agent.x", "agent.y", "origin.x", "origin.y", "dist_agent_origin"),
            ranges=(
                (g["x_min"], g["x_max"]),
                (g["y_min"], g["y_max"]),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 3.0),
            ),
        )

    @property
    def schema(self) -> ObservationSchema:
        return self._schema

    @property
    def action_dim(self) -> int:
        return 2

    def reset(self, seed: int) -> Observation:
        rng = np.random.default_rng(seed)
        self._rng = rng
        g = self.geom
        m = g["spawn_margin"]
        agent = np.array(
            [rng.uniform(g["x_min"] + m, g["x_max"] - m), rng.uniform(g["y_min"] + m, g["y_max"] - m)]
        )
        self._state = WorldState(
            agent_pos=agent,
            object_pos=np.zeros(2),
            object_vel=np.zeros(2),
            agent_grasping=False,
            grasp_offset=np.zeros(2),
            t=0,
        )
        return self._observe()

    def step(self, action: EnvAction) -> tuple[Observation, StepInfo]:
        s = self._check_steppable()
        g = self.geom
        v = self._clamped_velocity(action, g["v_max"])
        lo = np.array([g["x_min"], g["y_min"]])
        hi = np.array([g["x_max"], g["y_max"]])
        s.agent_pos = np.clip(s.agent_pos + v * self.config.dt, lo, hi)
        s.t += 1
        return self._observe(), StepInfo(t=s.t, contact=False)

    def _observe(self) -> Observation:
        s = self._state
        values = np.array(
            [
                s.agent_pos[0],
                s.agent_pos[1],
                0.0,
                0.0,
                float(np.linalg.norm(s.agent_pos)),
            ],
            dtype=np.float64,
        )
        return Observation(schema=self._schema, values=values)
