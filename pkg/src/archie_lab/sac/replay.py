"""Uniform ring-buffer replay memory.

`done` records success/failure termination only. Episodes that merely run out
of horizon store done=0 so the critic keeps bootstrapping through truncation;
the strict mode in TrainConfig flips that for the literal pseudocode variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Batch:
    obs: np.ndarray
    act: np.ndarray
    rew: np.ndarray
    next_obs: np.ndarray
    done: np.ndarray


class ReplayBuffer:
    def __init__(self, capacity: int, obs_dim: int, action_dim: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._obs = np.zeros((capacity, obs_dim))
        self._act = np.zeros((capacity, action_dim))
        self._rew = np.zeros(capacity)
        self._next_obs = np.zeros((capacity, obs_dim))
        self._done = np.zeros(capacity)
        self._size = 0
        self._head = 0

    def __len__(self) -> int:
        return self._size

    def add(self, obs, act, rew: float, next_obs, done: bool) -> None:
        i = self._head
        self._obs[i] = obs
        self._act[i] = act
        self._rew[i] = rew
        self._next_obs[i] = next_obs
        self._done[i] = 1.0 if done else 0.0
        self._head = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Batch:
        if self._size == 0:
            raise ValueError("cannot sample from an empty buffer")
        idx = rng.integers(0, self._size, size=batch_size)
        return Batch(
            obs=self._obs[idx],
            act=self._act[idx],
            rew=self._rew[idx],
            next_obs=self._next_obs[idx],
            done=self._done[idx],
        )
