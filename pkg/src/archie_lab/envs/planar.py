"""Vertical-plane grasping environments: a velocity-controlled point agent and
a rectangular object resting on the floor. Grasping within reach rigidly
attaches the object; releasing drops it under gravity."""

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

PLANAR_GEOMETRY = {
    "x_min": -1.0,
    "x_max": 1.0,
    "y_min": 0.0,
    "y_max": 1.0,
    "v_max": 1.0,
    "grasp_radius": 0.05,
    "object_half_w": 0.05,
    "object_half_h": 0.025,
    "spawn_margin": 0.1,
}

_BASE_NAMES = (
    "agent.x",
    "agent.y",
    "object.x",
    "object.y",
    "grasping",
    "contact",
    "dist_agent_object",
)


def _planar_schema(geom: dict[str, float], with_origin: bool) -> ObservationSchema:
    carry = geom["grasp_radius"]
    names = _BASE_NAMES
    ranges = [
        (geom["x_min"], geom["x_max"]),
        (geom["y_min"], geom["y_max"]),
        (geom["x_min"] - carry, geom["x_max"] + carry),
        (geom["y_min"] - carry, geom["y_max"] + carry),
        (0.0, 1.0),
        (0.0, 1.0),
        (0.0, 3.0),
    ]
    if with_origin:
        names = names + ("origin.x", "origin.y", "dist_object_origin")
        ranges += [(0.0, 0.0), (0.0, 0.0), (0.0, 3.0)]
    return ObservationSchema(names=names, ranges=tuple(ranges))


class PlanarGraspEnv(Env):
    """Common dynamics for the grasp-and-move tasks; subclasses set spawning."""

    with_origin = False

    def __init__(self, config: EnvConfig):
        super().__init__(config)
        self.geom = merge_geometry(PLANAR_GEOMETRY, config.geometry)
        self._schema = _planar_schema(self.geom, self.with_origin)
        self._rest_y = self.geom["object_half_h"]

    @property
    def schema(self) -> ObservationSchema:
        return self._schema

    @property
    def action_dim(self) -> int:
        return 3

    # --- spawning, overridden per task ---------------------------------
    def _spawn(self, rng: np.random.Generator) -> WorldState:
        raise NotImplementedError

    def reset(self, seed: int) -> Observation:
        self._rng = np.random.default_rng(seed)
        self._state = self._spawn(self._rng)
        return self._observe()

    def step(self, action: EnvAction) -> tuple[Observation, StepInfo]:
        s = self._check_steppable()
        g = self.geom
        v = self._clamped_velocity(action, g["v_max"])
        lo = np.array([g["x_min"], g["y_min"]])
        hi = np.array([g["x_max"], g["y_max"]])
        s.agent_pos = np.clip(s.agent_pos + v * self.config.dt, lo, hi)

        grasp_cmd = action.grasp_cmd if action.grasp_cmd is not None else -1.0
        if s.agent_grasping:
            if grasp_cmd <= 0.0:
                s.agent_grasping = False
        elif grasp_cmd > 0.0:
            if np.linalg.norm(s.agent_pos - s.object_pos) < g["grasp_radius"]:
                s.agent_grasping = True
                s.grasp_offset = s.object_pos - s.agent_pos

        if s.agent_grasping:
            new_pos = s.agent_pos + s.grasp_offset
            s.object_vel = (new_pos - s.object_pos) / self.config.dt
            s.object_pos = new_pos
        else:
            s.object_vel = s.object_vel + np.array([0.0, -self.config.gravity]) * self.config.dt
            s.object_pos = s.object_pos + s.object_vel * self.config.dt
            if s.object_pos[1] <= self._rest_y:
                s.object_pos[1] = self._rest_y
                s.object_vel = np.zeros(2)

        s.t += 1
        obs = self._observe()
        return obs, StepInfo(
            t=s.t,
            contact=obs["contact"] > 0.5,
            grasping=s.agent_grasping,
        )

    def _observe(self) -> Observation:
        s = self._state
        dist = float(np.linalg.norm(s.agent_pos - s.object_pos))
        contact = 1.0 if dist < self.geom["grasp_radius"] else 0.0
        values = [
            s.agent_pos[0],
            s.agent_pos[1],
            s.object_pos[0],
            s.object_pos[1],
            1.0 if s.agent_grasping else 0.0,
            contact,
            dist,
        ]
        if self.with_origin:
            values += [0.0, 0.0, float(np.linalg.norm(s.object_pos))]
        return Observation(schema=self._schema, values=np.array(values, dtype=np.float64))


class GraspLift2D(PlanarGraspEnv):
    """Reach the object on the floor, grasp it and lift it. Agent spawns at a
    fixed mid-plane position; the object spawns uniformly along the floor."""

    AGENT_START = np.array([0.0, 0.5])

    def _spawn(self, rng: np.random.Generator) -> WorldState:
        g = self.geom
        m = g["spawn_margin"]
        ox = rng.uniform(g["x_min"] + m, g["x_max"] - m)
        return WorldState(
            agent_pos=self.AGENT_START.copy(),
            object_pos=np.array([ox, self._rest_y]),
            object_vel=np.zeros(2),
            agent_grasping=False,
            grasp_offset=np.zeros(2),
            t=0,
        )


class GraspSlide2D(GraspLift2D):
    """Same dynamics and spawning as the lift task; the goal (carry the object
    toward the right edge) lives entirely in the reward program."""


class Place2D(PlanarGraspEnv):
    """Agent spawns at the top of the plane already holding the object and must
    carry it to the plane origin without releasing it."""

    with_origin = True
    Y_TOP = 0.9
    HOLD_OFFSET = np.array([0.0, -0.03])

    def _spawn(self, rng: np.random.Generator) -> WorldState:
        g = self.geom
        m = g["spawn_margin"]
        ax = rng.uniform(g["x_min"] + m, g["x_max"] - m)
        agent = np.array([ax, self.Y_TOP])
        return WorldState(
            agent_pos=agent,
            object_pos=agent + self.HOLD_OFFSET,
            object_vel=np.zeros(2),
            agent_grasping=True,
            grasp_offset=self.HOLD_OFFSET.copy(),
            t=0,
        )
