"""Plain-numpy multilayer perceptron with ReLU hidden layers and manual
backprop. Weights are float64 row-major (out, in); the ReLU subgradient at
exactly zero is zero."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Mlp:
    dims: tuple[int, ...]
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def params(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def copy(self) -> "Mlp":
        return Mlp(
            dims=self.dims,
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
        )


def init_mlp(dims: tuple[int, ...], rng: np.random.Generator) -> Mlp:
    """He-uniform weights, zero biases."""
    if len(dims) < 2:
        raise ValueError("an MLP needs at least input and output dims")
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return Mlp(dims=tuple(int(d) for d in dims), weights=weights, biases=biases)


@dataclass
class ForwardCache:
    inputs: list[np.ndarray]  # layer inputs a_0 .. a_{L-1}
    pre_acts: list[np.ndarray]  # z_1 .. z_L


def forward(net: Mlp, x: np.ndarray) -> np.ndarray:
    h = np.asarray(x, dtype=np.float64)
    squeeze = h.ndim == 1
    if squeeze:
        h = h[None, :]
    if h.shape[1] != net.dims[0]:
        raise ValueError(f"input dim {h.shape[1]} != net input {net.dims[0]}")
    last = net.n_layers - 1
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        h = h @ w.T + b
        if i != last:
            h = np.maximum(h, 0.0)
    return h[0] if squeeze else h


def forward_cache(net: Mlp, x: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
    h = np.asarray(x, dtype=np.float64)
    if h.ndim != 2 or h.shape[1] != net.dims[0]:
        raise ValueError(f"expected batch of shape (B, {net.dims[0]}), got {h.shape}")
    inputs, pre_acts = [], []
    last = net.n_layers - 1
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        inputs.append(h)
        z = h @ w.T + b
        pre_acts.append(z)
        h = z if i == last else np.maximum(z, 0.0)
    return h, ForwardCache(inputs=inputs, pre_acts=pre_acts)


def backward(
    net: Mlp,
    cache: ForwardCache,
    upstream: np.ndarray,
    need_param_grads: bool = True,
) -> tuple[list[np.ndarray] | None, np.ndarray]:
    """Backprop `upstream` (dL/dy, shape (B, out)) through the net.

    Returns (param_grads ordered like net.params(), dL/dx). Pass
    need_param_grads=False when only the input gradient matters (e.g.
    differentiating a frozen critic w.r.t. its action input).
    """
    delta = np.asarray(upstream, dtype=np.float64)
    grads: list[np.ndarray] = []
    last = net.n_layers - 1
    for i in range(last, -1, -1):
        if i != last:
            delta = delta * (cache.pre_acts[i] > 0.0)
        if need_param_grads:
            dw = delta.T @ cache.inputs[i]
            db = delta.sum(axis=0)
            grads.append(db)
            grads.append(dw)
        delta = delta @ net.weights[i]
    if not need_param_grads:
        return None, delta
    grads.reverse()  # now [dW1, db1, dW2, db2, ...] matching params()
    return grads, delta


def pack_params(arrays: list[np.ndarray]) -> np.ndarray:
    return np.concatenate([a.ravel() for a in arrays])


def unpack_params(flat: np.ndarray, like: list[np.ndarray]) -> None:
    """Write `flat` back into the arrays in `like`, preserving shapes."""
    offset = 0
    for a in like:
        n = a.size
        a[...] = flat[offset : offset + n].reshape(a.shape)
        offset += n
    if offset != flat.size:
        raise ValueError("flat vector size does not match parameter count")
