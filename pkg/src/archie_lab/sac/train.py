"""Reference-mode training loop.

N environment instances are stepped round-robin in a fixed order, one critic
update per collected transition, one actor/temperature update every
`actor_delay` critic updates, target networks blended after every critic
update. Episodes terminate on the success/failure classifiers (evaluated on
the post-step observation) or on horizon exhaustion; pure truncation stores
done=0 unless the strict pseudocode mode is requested. Everything is a pure
function of (config, spec, env family): PRNG streams are derived from the
config seed per role, so two runs with the same inputs produce byte-identical
metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ..envs.base import Env
from ..rewardlang.engine import CompiledReward, compile_spec
from ..rewardlang.spec import RewardSpec
from .bundle import PolicyBundle, TrainConfig, make_bundle, soft_update
from .policy import mean_action, sample_action
from .replay import ReplayBuffer
from .updates import actor_update, alpha_update, critic_update

_TAG_INIT, _TAG_ACTION, _TAG_REPLAY, _TAG_UPDATE, _TAG_ENV, _TAG_EVAL, _TAG_EVAL_EP = range(1, 8)

METRICS_COLUMNS = (
    "step",
    "seed",
    "env_id",
    "success_rate",
    "critic_loss",
    "actor_loss",
    "alpha",
    "episode_return",
    "episodes_done",
)


def derive_seed(*parts: int) -> int:
    """Deterministic child seed from a tuple of integers."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


@dataclass(frozen=True)
class MetricsRow:
    step: int
    seed: int
    env_id: str
    success_rate: float
    critic_loss: float
    actor_loss: float
    alpha: float
    episode_return: float
    episodes_done: int

    def as_csv_fields(self) -> list[str]:
        return [
            str(self.step),
            str(self.seed),
            self.env_id,
            repr(self.success_rate),
            repr(self.critic_loss),
            repr(self.actor_loss),
            repr(self.alpha),
            repr(self.episode_return),
            str(self.episodes_done),
        ]


def metrics_to_csv(rows: Sequence[MetricsRow]) -> str:
    lines = [",".join(METRICS_COLUMNS)]
    lines.extend(",".join(row.as_csv_fields()) for row in rows)
    return "\n".join(lines) + "\n"


BreakdownSink = Callable[[dict], None]


def evaluate(
    bundle: PolicyBundle,
    env: Env,
    compiled: CompiledReward,
    episodes: int = 10,
    seed: int = 0,
    sink: Optional[BreakdownSink] = None,
) -> float:
    """Mean-action rollouts; returns the fraction ending with success fired.

    Evaluation episodes always terminate on success/failure regardless of the
    training-side termination switches, and recorded breakdowns always carry
    the full terminal assembly so they can be audited against it.
    """
    successes = 0
    for ep in range(episodes):
        obs = env.reset(derive_seed(seed, _TAG_EVAL_EP, ep))
        solved = False
        breakdowns = [] if sink is not None else None
        while True:
            action = mean_action(bundle.policy, obs.values)
            obs, info = env.step(env.action_from_array(action))
            outcome = compiled.step(obs.values, use_terminal=True)
            if breakdowns is not None:
                breakdowns.append(outcome.breakdown)
            if outcome.solved:
                solved = True
                break
            if outcome.failed or info.t >= env.config.horizon:
                break
        successes += int(solved)
        if sink is not None:
            sink({"episode": ep, "solved": solved, "breakdowns": breakdowns})
    return successes / episodes


def _mean_or_nan(values: list[float]) -> float:
    return float(np.mean(values)) if values else math.nan


def train(
    env_factory: Callable[[], Env],
    spec: RewardSpec,
    config: TrainConfig,
    breakdown_sink: Optional[BreakdownSink] = None,
    progress: Optional[Callable[[MetricsRow], None]] = None,
) -> tuple[PolicyBundle, list[MetricsRow]]:
    envs = [env_factory() for _ in range(config.n_envs)]
    env_id = envs[0].config.env_id
    if envs[0].config.horizon != config.horizon:
        raise ValueError(
            f"env horizon {envs[0].config.horizon} != train config horizon {config.horizon}"
        )
    spec = spec.with_horizon(config.horizon)
    compiled = compile_spec(spec, envs[0].schema)

    obs_dim = len(envs[0].schema)
    action_dim = envs[0].action_dim
    rng_init = np.random.default_rng(derive_seed(config.seed, _TAG_INIT))
    bundle = make_bundle(obs_dim, action_dim, config, rng_init)
    buffer = ReplayBuffer(
        min(config.replay_capacity, config.total_steps), obs_dim, action_dim
    )
    rng_action = np.random.default_rng(derive_seed(config.seed, _TAG_ACTION))
    rng_replay = np.random.default_rng(derive_seed(config.seed, _TAG_REPLAY))
    rng_update = np.random.default_rng(derive_seed(config.seed, _TAG_UPDATE))

    episode_idx = [0] * config.n_envs
    observations = [
        envs[i].reset(derive_seed(config.seed, _TAG_ENV, i, 0)) for i in range(config.n_envs)
    ]
    episode_return = [0.0] * config.n_envs
    episodes_done = 0
    return_window: list[float] = []
    critic_window: list[float] = []
    actor_window: list[float] = []
    rows: list[MetricsRow] = []
    eval_env = env_factory()

    for step in range(config.total_steps):
        i = step % config.n_envs
        action, _ = sample_action(bundle.policy, observations[i].values, rng_action)
        obs_next, info = envs[i].step(envs[i].action_from_array(action))
        outcome = compiled.step(obs_next.values, use_terminal=config.use_terminal)
        terminated = (outcome.solved and config.terminate_on_success) or outcome.failed
        truncated = info.t >= config.horizon
        replay_done = terminated or (config.strict_alg1_done and truncated)
        buffer.add(observations[i].values, action, outcome.breakdown.total,
                   obs_next.values, replay_done)
        episode_return[i] += outcome.breakdown.total

        if terminated or truncated:
            episodes_done += 1
            return_window.append(episode_return[i])
            episode_return[i] = 0.0
            episode_idx[i] += 1
            observations[i] = envs[i].reset(
                derive_seed(config.seed, _TAG_ENV, i, episode_idx[i])
            )
        else:
            observations[i] = obs_next

        batch = buffer.sample(config.batch_size, rng_replay)
        critic_window.append(critic_update(batch, bundle, config, rng_update))
        soft_update(bundle, config.tau)
        if (step + 1) % config.actor_delay == 0:
            actor_window.append(actor_update(batch, bundle, config, rng_update))
            alpha_update(batch, bundle, config, rng_update)

        if (step + 1) % config.eval_every == 0:
            eval_idx = (step + 1) // config.eval_every
            rate = evaluate(
                bundle,
                eval_env,
                compiled,
                episodes=config.eval_episodes,
                seed=derive_seed(config.seed, _TAG_EVAL, eval_idx),
                sink=breakdown_sink,
            )
            row = MetricsRow(
                step=step + 1,
                seed=config.seed,
                env_id=env_id,
                success_rate=rate,
                critic_loss=_mean_or_nan(critic_window),
                actor_loss=_mean_or_nan(actor_window),
                alpha=bundle.alpha,
                episode_return=_mean_or_nan(return_window),
                episodes_done=episodes_done,
            )
            rows.append(row)
            critic_window.clear()
            actor_window.clear()
            return_window.clear()
            if progress is not None:
                progress(row)
            if (
                config.stop_at_success_rate is not None
                and rate >= config.stop_at_success_rate
            ):
                break

    return bundle, rows
