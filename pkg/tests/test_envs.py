import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archie_lab.envs import (
    EnvAction,
    EnvConfig,
    EnvError,
    EpisodeExhausted,
    NotReset,
    UnknownEnvId,
    make_env,
)

IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*$")


def env_of(env_id, **kwargs):
    return make_env(EnvConfig(env_id=env_id, **kwargs))


# --- construction -----------------------------------------------------------


def test_grasp_lift_schema_contains_expected_names():
    env = env_of("GraspLift2D")
    assert {"agent.x", "agent.y", "object.x", "object.y", "grasping", "contact",
            "dist_agent_object"} <= set(env.schema.names)


def test_push_schema_contains_expected_names():
    env = env_of("NarrowTablePush")
    assert {"object.x", "object.y", "object.fallen", "contact"} <= set(env.schema.names)


def test_unknown_env_id_rejected():
    with pytest.raises(UnknownEnvId):
        make_env(EnvConfig(env_id="Quadcopter3D"))


def test_nonpositive_dt_rejected():
    with pytest.raises(EnvError):
        make_env(EnvConfig(env_id="GraspLift2D", dt=0.0))


def test_nonpositive_horizon_rejected():
    with pytest.raises(EnvError):
        make_env(EnvConfig(env_id="GraspLift2D", horizon=0))


def test_unknown_geometry_key_rejected():
    with pytest.raises(EnvError):
        make_env(EnvConfig(env_id="GraspLift2D", geometry={"wheel_radius": 1.0}))


def test_schema_names_are_legal_identifiers():
    for env_id in ("GraspLift2D", "GraspSlide2D", "Place2D", "NarrowTablePush", "PointToOrigin"):
        for name in env_of(env_id).schema.names:
            assert IDENT_RE.match(name), name


def test_schema_stable_across_calls():
    env = env_of("GraspSlide2D")
    assert env.schema is env.schema
    assert env.schema == env_of("GraspSlide2D").schema


# --- reset ------------------------------------------------------------------


def test_reset_same_seed_bit_identical():
    env = env_of("Place2D")
    a = env.reset(7)
    b = env.reset(7)
    assert np.array_equal(a.values, b.values)


def test_grasp_lift_agent_starts_constant():
    env = env_of("GraspLift2D")
    positions = set()
    for seed in range(5):
        obs = env.reset(seed)
        positions.add((obs["agent.x"], obs["agent.y"]))
    assert positions == {(0.0, 0.5)}


def test_place_spawns_at_top_holding_object():
    env = env_of("Place2D")
    for seed in (0, 11, 392):
        obs = env.reset(seed)
        assert obs["agent.y"] == 0.9
        assert obs["grasping"] == 1.0
        assert obs["dist_agent_object"] < env.geom["grasp_radius"]


def test_point_env_never_spawns_solved():
    env = env_of("PointToOrigin")
    for seed in range(30):
        assert env.reset(seed)["dist_agent_origin"] >= 0.05


# --- stepping ---------------------------------------------------------------


def grasp_the_object(env, seed=3):
    """Drive the agent onto the object and engage the grasp; returns last obs."""
    obs = env.reset(seed)
    for _ in range(3000):
        dx = obs["object.x"] - obs["agent.x"]
        dy = obs["object.y"] - obs["agent.y"]
        if obs["grasping"] > 0.5:
            return obs
        vel = np.clip([dx / env.config.dt, dy / env.config.dt], -1, 1)
        obs, _ = env.step(EnvAction(velocity_cmd=np.array(vel), grasp_cmd=1.0))
    raise AssertionError("never grasped")


def test_step_before_reset_raises():
    with pytest.raises(NotReset):
        env_of("GraspLift2D").step(EnvAction(velocity_cmd=np.zeros(2), grasp_cmd=0.0))


def test_grasp_requires_proximity():
    env = env_of("GraspLift2D")
    obs = env.reset(0)
    assert obs["dist_agent_object"] > env.geom["grasp_radius"]
    obs, info = env.step(EnvAction(velocity_cmd=np.zeros(2), grasp_cmd=1.0))
    assert obs["grasping"] == 0.0 and not info.grasping


def test_grasped_object_moves_rigidly_with_agent():
    env = env_of("GraspLift2D")
    obs = grasp_the_object(env)
    before_agent, before_obj = obs["agent.y"], obs["object.y"]
    obs, _ = env.step(EnvAction(velocity_cmd=np.array([0.0, 1.0]), grasp_cmd=1.0))
    agent_delta = obs["agent.y"] - before_agent
    obj_delta = obs["object.y"] - before_obj
    assert agent_delta == pytest.approx(env.geom["v_max"] * env.config.dt, abs=1e-12)
    assert obj_delta == agent_delta


def test_rigid_grasp_keeps_distance_constant():
    env = env_of("GraspLift2D")
    obs = grasp_the_object(env)
    d0 = obs["dist_agent_object"]
    rng = np.random.default_rng(1)
    for _ in range(50):
        obs, _ = env.step(EnvAction(velocity_cmd=rng.uniform(-1, 1, 2), grasp_cmd=1.0))
        assert obs["grasping"] == 1.0
        assert abs(obs["dist_agent_object"] - d0) < 1e-12


def test_released_object_falls_and_rests_on_floor():
    env = env_of("GraspLift2D")
    obs = grasp_the_object(env)
    for _ in range(60):  # lift well above the floor
        obs, _ = env.step(EnvAction(velocity_cmd=np.array([0.0, 1.0]), grasp_cmd=1.0))
    assert obs["object.y"] > 0.2
    rest_y = env.geom["object_half_h"]
    for _ in range(500):
        obs, _ = env.step(EnvAction(velocity_cmd=np.zeros(2), grasp_cmd=-1.0))
    assert obs["object.y"] == rest_y
    obs, _ = env.step(EnvAction(velocity_cmd=np.zeros(2), grasp_cmd=-1.0))
    assert obs["object.y"] == rest_y  # and stays there


def test_agent_position_clamped_to_bounds():
    env = env_of("PointToOrigin")
    env.reset(5)
    for _ in range(400):
        obs, _ = env.step(EnvAction(velocity_cmd=np.array([5.0, 5.0])))
    assert obs["agent.x"] == 1.0 and obs["agent.y"] == 1.0


def test_horizon_enforced_exactly():
    env = env_of("PointToOrigin", horizon=5)
    env.reset(0)
    for _ in range(5):
        env.step(EnvAction(velocity_cmd=np.zeros(2)))
    with pytest.raises(EpisodeExhausted):
        env.step(EnvAction(velocity_cmd=np.zeros(2)))
    env.reset(0)  # reset clears the episode
    env.step(EnvAction(velocity_cmd=np.zeros(2)))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), n=st.integers(1, 40), data=st.data())
def test_trajectories_bit_deterministic(seed, n, data):
    actions = [
        np.array(data.draw(st.lists(st.floats(-2, 2), min_size=3, max_size=3)))
        for _ in range(n)
    ]
    traces = []
    for _ in range(2):
        env = env_of("GraspLift2D", horizon=64)
        obs = env.reset(seed)
        trace = [obs.values]
        for a in actions:
            obs, _ = env.step(env.action_from_array(a))
            trace.append(obs.values)
        traces.append(np.stack(trace))
    assert np.array_equal(traces[0], traces[1])


# --- pushing ----------------------------------------------------------------


def push_env_with_state(agent, obj):
    env = env_of("NarrowTablePush")
    env.reset(0)
    env._state.agent_pos = np.array(agent, dtype=float)
    env._state.object_pos = np.array(obj, dtype=float)
    return env


def test_push_moves_object_along_x_and_reports_contact():
    env = push_env_with_state(agent=[-0.06, 0.0], obj=[0.0, 0.0])
    ox = env._state.object_pos[0]
    contact_seen = False
    for _ in range(200):
        obs, info = env.step(EnvAction(velocity_cmd=np.array([1.0, 0.0])))
        contact_seen = contact_seen or info.contact
    assert obs["object.x"] > ox + 0.1
    assert contact_seen
    assert obs["object.fallen"] == 0.0


def test_push_contact_is_exact_after_resolution():
    env = push_env_with_state(agent=[-0.0501, 0.0], obj=[0.0, 0.0])
    obs, info = env.step(EnvAction(velocity_cmd=np.array([1.0, 0.0])))
    assert info.contact and obs["contact"] == 1.0
    # agent sits exactly on the object's face
    assert abs(obs["agent.x"] - obs["object.x"]) == env.geom["object_half_w"]


def test_push_lateral_fall_sets_sticky_flag():
    env = push_env_with_state(agent=[0.0, 0.09], obj=[0.0, 0.05])
    fallen_at = None
    for t in range(300):
        obs, info = env.step(EnvAction(velocity_cmd=np.array([0.0, -1.0])))
        if info.fallen:
            fallen_at = t
            break
    assert fallen_at is not None
    assert abs(obs["object.y"]) > env.geom["table_width"] / 2
    frozen = obs["object.y"]
    obs, info = env.step(EnvAction(velocity_cmd=np.array([0.0, 1.0])))
    assert info.fallen and obs["object.fallen"] == 1.0  # latches
    assert obs["object.y"] == frozen  # fallen object no longer moves
    assert obs["contact"] == 0.0


def test_action_components_clamped():
    env = env_of("PointToOrigin")
    a = env.reset(4)
    big, _ = env.step(EnvAction(velocity_cmd=np.array([10.0, 0.0])))
    env.reset(4)
    unit, _ = env.step(EnvAction(velocity_cmd=np.array([1.0, 0.0])))
    assert np.array_equal(big.values, unit.values)
    assert big["agent.x"] - a["agent.x"] == pytest.approx(env.config.dt, abs=1e-12)
