"""Top-down narrow-table pushing: the agent shoves a rectangular object along
the table by moving into it; overlap is resolved kinematically by displacing
the object along the axis of least penetration. The object falls (and the
failure flag latches) once its center leaves the table laterally."""

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

PUSH_GEOMETRY = {
    "x_min": -0.6,
    "x_max": 0.6,
    "table_width": 0.2,
    "table_length": 0.5,
    "v_max": 1.0,
    "object_half_w": 0.05,
    "object_half_h": 0.025,
}

_CONTACT_EPS = 1e-9


class NarrowTablePush(Env):
    def __init__(self, config: EnvConfig):
        super().__init__(config)
        self.geom = merge_geometry(PUSH_GEOMETRY, config.geometry)
        g = self.geom
        self._half_w = g["table_width"] / 2.0
        self._schema = ObservationSchema(
            names=(
                "agent.x",
                "agent.y",
                "object.x",
                "object.y",
                "object.fallen",
                "contact",
                "dist_agent_object",
            ),
            ranges=(
                (g["x_min"], g["x_max"]),
                (-self._half_w, self._half_w),
                (g["x_min"] - 0.5, g["x_max"] + 0.5),
                (-2 * self._half_w, 2 * self._half_w),
                (0.0, 1.0),
                (0.0, 1.0),
                (0.0, 3.0),
            ),
        )
        self._fallen = False

    @property
    def schema(self) -> ObservationSchema:
        return self._schema

    @property
    def action_dim(self) -> int:
        return 2

    def reset(self, seed: int) -> Observation:
        rng = np.random.default_rng(seed)
        self._rng = rng
        hw = self._half_w
        agent = np.array([rng.uniform(-0.55, -0.45), rng.uniform(-hw / 2, hw / 2)])
        obj = np.array([rng.uniform(-0.4, -0.2), rng.uniform(-0.04, 0.04)])
        self._state = WorldState(
            agent_pos=agent,
            object_pos=obj,
            object_vel=np.zeros(2),
            agent_grasping=False,
            grasp_offset=np.zeros(2),
            t=0,
        )
        self._fallen = False
        return self._observe()

    def step(self, action: EnvAction) -> tuple[Observation, StepInfo]:
        s = self._check_steppable()
        g = self.geom
        v = self._clamped_velocity(action, g["v_max"])
        lo = np.array([g["x_min"], -self._half_w])
        hi = np.array([g["x_max"], self._half_w])
        s.agent_pos = np.clip(s.agent_pos + v * self.config.dt, lo, hi)

        if not self._fallen:
            old = s.object_pos.copy()
            self._resolve_overlap(s)
            s.object_vel = (s.object_pos - old) / self.config.dt
            if abs(s.object_pos[1]) > self._half_w:
                self._fallen = True
                s.object_vel = np.zeros(2)
        s.t += 1
        obs = self._observe()
        return obs, StepInfo(t=s.t, contact=obs["contact"] > 0.5, fallen=self._fallen)

    def _resolve_overlap(self, s: WorldState) -> None:
        hx, hy = self.geom["object_half_w"], self.geom["object_half_h"]
        dx = s.agent_pos[0] - s.object_pos[0]
        dy = s.agent_pos[1] - s.object_pos[1]
        if abs(dx) >= hx or abs(dy) >= hy:
            return
        # Displace along the axis of least penetration, placing the object's
        # face exactly on the agent point so contact is bit-stable.
        pen_x = hx - abs(dx)
        pen_y = hy - abs(dy)
        if pen_x <= pen_y:
            sign = 1.0 if dx <= 0 else -1.0
            s.object_pos[0] = s.agent_pos[0] + sign * hx
        else:
            sign = 1.0 if dy <= 0 else -1.0
            s.object_pos[1] = s.agent_pos[1] + sign * hy

    def _point_rect_distance(self, s: WorldState) -> float:
        hx, hy = self.geom["object_half_w"], self.geom["object_half_h"]
        ox = max(abs(s.agent_pos[0] - s.object_pos[0]) - hx, 0.0)
        oy = max(abs(s.agent_pos[1] - s.object_pos[1]) - hy, 0.0)
        return float(np.hypot(ox, oy))

    def _observe(self) -> Observation:
        s = self._state
        contact = 1.0 if (not self._fallen and self._point_rect_distance(s) <= _CONTACT_EPS) else 0.0
        values = np.array(
            [
                s.agent_pos[0],
                s.agent_pos[1],
                s.object_pos[0],
                s.object_pos[1],
                1.0 if self._fallen else 0.0,
                contact,
                float(np.linalg.norm(s.agent_pos - s.object_pos)),
            ],
            dtype=np.float64,
        )
        return Observation(schema=self._schema, values=values)
