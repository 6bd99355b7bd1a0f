"""Gradient steps for the three losses.

Critic: MSE of both critics against y = r + gamma*(1-done)*(min target Q of a
resampled next action - alpha*log pi). Actor: E[alpha*log pi(a|s) - min Q(s,a)]
with a reparameterized action. Temperature: E[-log_alpha*(log pi + target
entropy)] with the log-probability treated as constant.

Each *_update draws its noise from the rng it is given, computes analytic
gradients (the same code paths the finite-difference tests check), and applies
one optimizer step.
"""

from __future__ import annotations

import math

import numpy as np

from ..nets.mlp import backward, forward, forward_cache
from .bundle import PolicyBundle, TrainConfig
from .policy import rsample, rsample_backward
from .replay import Batch


class DivergedError(RuntimeError):
    """A loss went non-finite; the run must abort with diagnostics."""


def _check_finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise DivergedError(f"{what} is non-finite ({value})")
    return value


def critic_targets(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                   noise: np.ndarray) -> np.ndarray:
    """Bootstrap targets; constant w.r.t. the online critic parameters."""
    next_action, next_logp, _ = rsample(bundle.policy, batch.next_obs, noise)
    x2 = np.concatenate([batch.next_obs, next_action], axis=1)
    q1t = forward(bundle.critics.q1_target, x2)[:, 0]
    q2t = forward(bundle.critics.q2_target, x2)[:, 0]
    soft_value = np.minimum(q1t, q2t) - bundle.alpha * next_logp
    return batch.rew + config.gamma * (1.0 - batch.done) * soft_value


def critic_loss_and_grads(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                          noise: np.ndarray):
    y = critic_targets(batch, bundle, config, noise)
    x = np.concatenate([batch.obs, batch.act], axis=1)
    batch_size = x.shape[0]
    losses = []
    all_grads = []
    for net in (bundle.critics.q1, bundle.critics.q2):
        q, cache = forward_cache(net, x)
        err = q[:, 0] - y
        losses.append(float(np.mean(err**2)))
        upstream = (2.0 / batch_size) * err[:, None]
        grads, _ = backward(net, cache, upstream)
        all_grads.append(grads)
    return losses[0] + losses[1], all_grads[0], all_grads[1]


def critic_update(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                  rng: np.random.Generator) -> float:
    noise = rng.standard_normal((batch.obs.shape[0], bundle.policy.action_dim))
    loss, g1, g2 = critic_loss_and_grads(batch, bundle, config, noise)
    _check_finite(loss, "critic loss")
    bundle.opt_q1.step(bundle.critics.q1.params(), g1)
    bundle.opt_q2.step(bundle.critics.q2.params(), g2)
    bundle.critic_updates += 1
    return loss


def actor_loss_and_grads(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                         noise: np.ndarray):
    action, logp, cache = rsample(bundle.policy, batch.obs, noise)
    x = np.concatenate([batch.obs, action], axis=1)
    q1, c1 = forward_cache(bundle.critics.q1, x)
    q2, c2 = forward_cache(bundle.critics.q2, x)
    q1 = q1[:, 0]
    q2 = q2[:, 0]
    qmin = np.minimum(q1, q2)
    alpha = bundle.alpha
    batch_size = x.shape[0]
    loss = float(np.mean(alpha * logp - qmin))

    # dL/d(action) via whichever critic realizes the min, critics frozen.
    pick1 = (q1 <= q2)[:, None]
    upstream = np.full((batch_size, 1), -1.0 / batch_size)
    _, dx1 = backward(bundle.critics.q1, c1, upstream * pick1, need_param_grads=False)
    _, dx2 = backward(bundle.critics.q2, c2, upstream * (~pick1), need_param_grads=False)
    obs_dim = batch.obs.shape[1]
    d_action = (dx1 + dx2)[:, obs_dim:]
    d_logp = np.full(batch_size, alpha / batch_size)
    grads = rsample_backward(bundle.policy, cache, d_action, d_logp)
    return loss, grads


def actor_update(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                 rng: np.random.Generator) -> float:
    noise = rng.standard_normal((batch.obs.shape[0], bundle.policy.action_dim))
    loss, grads = actor_loss_and_grads(batch, bundle, config, noise)
    _check_finite(loss, "actor loss")
    bundle.opt_policy.step(bundle.policy.params(), grads)
    bundle.actor_updates += 1
    return loss


def alpha_loss_and_grad(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                        noise: np.ndarray):
    _, logp, _ = rsample(bundle.policy, batch.obs, noise)
    target = config.resolved_target_entropy(bundle.policy.action_dim)
    gap = float(np.mean(logp + target))
    loss = -float(bundle.log_alpha) * gap
    return loss, -gap


def alpha_update(batch: Batch, bundle: PolicyBundle, config: TrainConfig,
                 rng: np.random.Generator) -> float:
    noise = rng.standard_normal((batch.obs.shape[0], bundle.policy.action_dim))
    loss, grad = alpha_loss_and_grad(batch, bundle, config, noise)
    _check_finite(loss, "alpha loss")
    bundle.opt_alpha.step([bundle.log_alpha], [np.array(grad)])
    return loss
