"""Tanh-squashed Gaussian policy.

The trunk MLP emits (mean, log_std) per action dimension; log_std is clipped
to [-20, 2], the sample is squashed by tanh so actions live strictly inside
(-1, 1), and log-probabilities carry the tanh change-of-variables correction.
Gradients are propagated manually through the reparameterized sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..nets.mlp import ForwardCache, Mlp, backward, forward, forward_cache, init_mlp

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0
TANH_EPS = 1e-6
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


@dataclass
class GaussianPolicy:
    trunk: Mlp
    action_dim: int

    def params(self) -> list[np.ndarray]:
        return self.trunk.params()

    def copy(self) -> "GaussianPolicy":
        return GaussianPolicy(trunk=self.trunk.copy(), action_dim=self.action_dim)


def init_policy(obs_dim: int, action_dim: int, hidden: tuple[int, ...],
                rng: np.random.Generator) -> GaussianPolicy:
    trunk = init_mlp((obs_dim, *hidden, 2 * action_dim), rng)
    return GaussianPolicy(trunk=trunk, action_dim=action_dim)


@dataclass
class SampleCache:
    trunk_cache: ForwardCache
    noise: np.ndarray
    sigma: np.ndarray
    action: np.ndarray
    clip_mask: np.ndarray


def _split_head(policy: GaussianPolicy, head: np.ndarray):
    a = policy.action_dim
    mu = head[:, :a]
    ls_raw = head[:, a:]
    ls = np.clip(ls_raw, LOG_STD_MIN, LOG_STD_MAX)
    clip_mask = (ls_raw > LOG_STD_MIN) & (ls_raw < LOG_STD_MAX)
    return mu, ls, clip_mask


def rsample(policy: GaussianPolicy, obs: np.ndarray, noise: np.ndarray):
    """Reparameterized sample for a batch: returns (action, log_prob, cache)."""
    head, trunk_cache = forward_cache(policy.trunk, obs)
    mu, ls, clip_mask = _split_head(policy, head)
    sigma = np.exp(ls)
    u = mu + sigma * noise
    action = np.tanh(u)
    log_prob = np.sum(
        -0.5 * noise**2 - ls - _HALF_LOG_2PI - np.log1p(-(action**2) + TANH_EPS),
        axis=1,
    )
    cache = SampleCache(
        trunk_cache=trunk_cache, noise=noise, sigma=sigma, action=action, clip_mask=clip_mask
    )
    return action, log_prob, cache


def rsample_backward(
    policy: GaussianPolicy,
    cache: SampleCache,
    d_action: np.ndarray | None,
    d_log_prob: np.ndarray | None,
) -> list[np.ndarray]:
    """Backprop dL/d(action) and dL/d(log_prob) to trunk parameter grads.

    The sample path is a = tanh(mu + sigma * noise) with fixed noise, so both
    the density parameters and the action move with the trunk output.
    """
    a = cache.action
    one_m_a2 = 1.0 - a**2
    batch = a.shape[0]
    d_mu = np.zeros_like(a)
    d_ls = np.zeros_like(a)
    if d_log_prob is not None:
        # d log_prob / du through the tanh correction; the -0.5*noise^2 term
        # is constant under reparameterization and -ls differentiates to -1.
        g_u = 2.0 * a * one_m_a2 / (one_m_a2 + TANH_EPS)
        d_mu += d_log_prob[:, None] * g_u
        d_ls += d_log_prob[:, None] * (-1.0 + g_u * cache.sigma * cache.noise)
    if d_action is not None:
        du = d_action * one_m_a2
        d_mu += du
        d_ls += du * cache.sigma * cache.noise
    d_head = np.concatenate([d_mu, d_ls * cache.clip_mask], axis=1)
    grads, _ = backward(policy.trunk, cache.trunk_cache, d_head)
    assert grads is not None and len(grads) > 0 and batch > 0
    return grads


def sample_action(policy: GaussianPolicy, obs: np.ndarray, rng: np.random.Generator):
    """Draw one action for a single observation; returns (action, log_prob)."""
    obs = np.asarray(obs, dtype=np.float64)[None, :]
    noise = rng.standard_normal((1, policy.action_dim))
    action, log_prob, _ = rsample(policy, obs, noise)
    return action[0], float(log_prob[0])


def mean_action(policy: GaussianPolicy, obs: np.ndarray) -> np.ndarray:
    """Deterministic evaluation action: tanh of the Gaussian mean."""
    obs = np.asarray(obs, dtype=np.float64)
    head = forward(policy.trunk, obs)
    return np.tanh(head[: policy.action_dim])


def log_prob(policy: GaussianPolicy, obs: np.ndarray, action: np.ndarray) -> float:
    """Density of a given squashed action under the current policy."""
    obs = np.asarray(obs, dtype=np.float64)[None, :]
    a = np.asarray(action, dtype=np.float64)
    head = forward(policy.trunk, obs)[0]
    mu = head[: policy.action_dim]
    ls = np.clip(head[policy.action_dim :], LOG_STD_MIN, LOG_STD_MAX)
    sigma = np.exp(ls)
    u = np.arctanh(np.clip(a, -1.0 + 1e-12, 1.0 - 1e-12))
    z = (u - mu) / sigma
    lp = np.sum(-0.5 * z**2 - ls - _HALF_LOG_2PI - np.log1p(-(a**2) + TANH_EPS))
    return float(lp)
