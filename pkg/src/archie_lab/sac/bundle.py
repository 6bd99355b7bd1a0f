"""Trainable state: policy, twin critics with targets, temperature, optimizers.

Checkpoints are a binary format: an "ARCHLAB1" magic header (format version,
config hash, per-net layer dims, activation id) followed by little-endian
float64 parameter blocks in declaration order, then optimizer moments and the
update counters. save -> load -> save is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from ..nets.adam import Adam
from ..nets.mlp import Mlp, init_mlp
from .policy import GaussianPolicy, init_policy

CHECKPOINT_MAGIC = b"ARCHLAB1"
CHECKPOINT_VERSION = 1
ACTIVATION_RELU = 0


@dataclass(frozen=True)
class TrainConfig:
    total_steps: int = 10_000
    gamma: float = 0.99
    tau: float = 5e-3
    horizon: int = 1000
    n_envs: int = 1
    actor_delay: int = 2
    batch_size: int = 256
    lr_actor: float = 3e-4
    lr_critic: float = 3e-4
    lr_alpha: float = 3e-4
    target_entropy: Optional[float] = None  # default: -action_dim
    eval_every: int = 5000
    eval_episodes: int = 10
    seed: int = 0
    hidden: tuple[int, ...] = (256, 256)
    replay_capacity: int = 1_000_000
    use_terminal: bool = True
    terminate_on_success: bool = True
    strict_alg1_done: bool = False
    stop_at_success_rate: Optional[float] = None
    initial_alpha: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if not (0.0 < self.tau <= 1.0):
            raise ValueError(f"tau must be in (0, 1], got {self.tau}")
        if self.n_envs < 1:
            raise ValueError("n_envs must be >= 1")
        if self.actor_delay < 1:
            raise ValueError("actor_delay must be >= 1")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")

    def resolved_target_entropy(self, action_dim: int) -> float:
        if self.target_entropy is not None:
            return self.target_entropy
        return -float(action_dim)

    def hash(self) -> bytes:
        payload = asdict(self)
        payload["hidden"] = list(self.hidden)
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).digest()


@dataclass
class TwinCritics:
    q1: Mlp
    q2: Mlp
    q1_target: Mlp
    q2_target: Mlp


@dataclass
class PolicyBundle:
    policy: GaussianPolicy
    critics: TwinCritics
    log_alpha: np.ndarray  # shape-() array so the optimizer can update in place
    opt_policy: Adam
    opt_q1: Adam
    opt_q2: Adam
    opt_alpha: Adam
    critic_updates: int = 0
    actor_updates: int = 0
    config_hash: bytes = b"\x00" * 32

    @property
    def alpha(self) -> float:
        return float(np.exp(self.log_alpha))

    def _nets(self) -> list[Mlp]:
        c = self.critics
        return [self.policy.trunk, c.q1, c.q2, c.q1_target, c.q2_target]


def make_bundle(obs_dim: int, action_dim: int, config: TrainConfig,
                rng: np.random.Generator) -> PolicyBundle:
    policy = init_policy(obs_dim, action_dim, config.hidden, rng)
    q_dims = (obs_dim + action_dim, *config.hidden, 1)
    q1 = init_mlp(q_dims, rng)
    q2 = init_mlp(q_dims, rng)
    critics = TwinCritics(q1=q1, q2=q2, q1_target=q1.copy(), q2_target=q2.copy())
    log_alpha = np.array(np.log(config.initial_alpha), dtype=np.float64)
    return PolicyBundle(
        policy=policy,
        critics=critics,
        log_alpha=log_alpha,
        opt_policy=Adam(policy.params(), lr=config.lr_actor),
        opt_q1=Adam(q1.params(), lr=config.lr_critic),
        opt_q2=Adam(q2.params(), lr=config.lr_critic),
        opt_alpha=Adam([log_alpha], lr=config.lr_alpha),
        config_hash=config.hash(),
    )


def soft_update(bundle: PolicyBundle, tau: float) -> None:
    """Blend target critics toward the online critics: t <- tau*q + (1-tau)*t."""
    c = bundle.critics
    for online, target in ((c.q1, c.q1_target), (c.q2, c.q2_target)):
        for p_online, p_target in zip(online.params(), target.params()):
            p_target *= 1.0 - tau
            p_target += tau * p_online


# ---------------------------------------------------------------------------
# checkpoint serialization


def _write_array(out: list[bytes], arr: np.ndarray) -> None:
    out.append(arr.astype("<f8").tobytes())


def _adam_state(opt: Adam) -> tuple[int, list[np.ndarray]]:
    return opt.t, opt.m + opt.v


def save_checkpoint(bundle: PolicyBundle, path: str | Path) -> None:
    out: list[bytes] = [CHECKPOINT_MAGIC]
    out.append(struct.pack("<II", CHECKPOINT_VERSION, ACTIVATION_RELU))
    out.append(bundle.config_hash)
    nets = bundle._nets()
    out.append(struct.pack("<I", len(nets)))
    for net in nets:
        out.append(struct.pack("<I", len(net.dims)))
        out.append(struct.pack(f"<{len(net.dims)}I", *net.dims))
    out.append(struct.pack("<d", float(bundle.log_alpha)))
    out.append(struct.pack("<QQ", bundle.critic_updates, bundle.actor_updates))
    for net in nets:
        for p in net.params():
            _write_array(out, p)
    for opt in (bundle.opt_policy, bundle.opt_q1, bundle.opt_q2, bundle.opt_alpha):
        t, moments = _adam_state(opt)
        out.append(struct.pack("<Q", t))
        for m in moments:
            _write_array(out, m)
    Path(path).write_bytes(b"".join(out))


class _Reader:
    def __init__(self, blob: bytes):
        self.blob = blob
        self.off = 0

    def take(self, n: int) -> bytes:
        if self.off + n > len(self.blob):
            raise ValueError("truncated checkpoint")
        chunk = self.blob[self.off : self.off + n]
        self.off += n
        return chunk

    def unpack(self, fmt: str):
        size = struct.calcsize(fmt)
        return struct.unpack(fmt, self.take(size))

    def array(self, shape: tuple[int, ...]) -> np.ndarray:
        n = int(np.prod(shape))
        arr = np.frombuffer(self.take(8 * n), dtype="<f8").astype(np.float64)
        return arr.reshape(shape).copy()


def _mlp_shapes(dims: tuple[int, ...]) -> list[tuple[int, ...]]:
    shapes: list[tuple[int, ...]] = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        shapes.append((fan_out, fan_in))
        shapes.append((fan_out,))
    return shapes


def load_checkpoint(path: str | Path, config: TrainConfig | None = None) -> PolicyBundle:
    """Reconstruct a bundle; learning rates come from `config` when given."""
    r = _Reader(Path(path).read_bytes())
    if r.take(len(CHECKPOINT_MAGIC)) != CHECKPOINT_MAGIC:
        raise ValueError(f"{path} is not a checkpoint (bad magic)")
    version, activation = r.unpack("<II")
    if version != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {version}")
    if activation != ACTIVATION_RELU:
        raise ValueError(f"unsupported activation id {activation}")
    config_hash = r.take(32)
    (n_nets,) = r.unpack("<I")
    all_dims: list[tuple[int, ...]] = []
    for _ in range(n_nets):
        (n_dims,) = r.unpack("<I")
        all_dims.append(tuple(r.unpack(f"<{n_dims}I")))
    (log_alpha_val,) = r.unpack("<d")
    critic_updates, actor_updates = r.unpack("<QQ")

    nets = []
    for dims in all_dims:
        shapes = _mlp_shapes(dims)
        params = [r.array(s) for s in shapes]
        weights = params[0::2]
        biases = params[1::2]
        nets.append(Mlp(dims=dims, weights=weights, biases=biases))
    policy_trunk, q1, q2, q1t, q2t = nets
    action_dim = policy_trunk.dims[-1] // 2
    policy = GaussianPolicy(trunk=policy_trunk, action_dim=action_dim)
    critics = TwinCritics(q1=q1, q2=q2, q1_target=q1t, q2_target=q2t)
    log_alpha = np.array(log_alpha_val, dtype=np.float64)

    cfg = config if config is not None else TrainConfig()
    opts = []
    for params, lr in (
        (policy.params(), cfg.lr_actor),
        (q1.params(), cfg.lr_critic),
        (q2.params(), cfg.lr_critic),
        ([log_alpha], cfg.lr_alpha),
    ):
        opt = Adam(params, lr=lr)
        (opt.t,) = r.unpack("<Q")
        opt.m = [r.array(p.shape) for p in params]
        opt.v = [r.array(p.shape) for p in params]
        opts.append(opt)
    if r.off != len(r.blob):
        raise ValueError("trailing bytes in checkpoint")

    return PolicyBundle(
        policy=policy,
        critics=critics,
        log_alpha=log_alpha,
        opt_policy=opts[0],
        opt_q1=opts[1],
        opt_q2=opts[2],
        opt_alpha=opts[3],
        critic_updates=critic_updates,
        actor_updates=actor_updates,
        config_hash=config_hash,
    )
