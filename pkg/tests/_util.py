"""Shared test helpers: finite-difference gradient checking and an
independent rank-interpolation percentile oracle."""

from __future__ import annotations

import math

import numpy as np

from archie_lab.nets import pack_params, unpack_params


def finite_difference_gradient(params: list[np.ndarray], loss_fn, h: float = 1e-5) -> np.ndarray:
    """Central differences over the flattened parameter vector."""
    flat = pack_params(params)
    fd = np.zeros_like(flat)
    for i in range(flat.size):
        bumped = flat.copy()
        bumped[i] += h
        unpack_params(bumped, params)
        up = loss_fn()
        bumped[i] -= 2 * h
        unpack_params(bumped, params)
        down = loss_fn()
        fd[i] = (up - down) / (2 * h)
    unpack_params(flat, params)
    return fd


def max_norm_relative_error(analytic: np.ndarray, fd: np.ndarray) -> float:
    """Relative error of the gradient vector in the max norm.

    ||an - fd||_inf / ||fd||_inf: robust to finite-difference roundoff noise
    on individual near-zero coordinates, which at h=1e-5 sits around 1e-7 in
    absolute terms regardless of how exact the analytic gradient is.
    """
    denom = max(float(np.max(np.abs(fd))), 1e-12)
    return float(np.max(np.abs(analytic - fd))) / denom


def rank_interp_percentile(values, p: float) -> float:
    """Brute-force linear interpolation between closest ranks, inclusive.

    Written independently of numpy.percentile: sort, locate the fractional
    rank r = p*(n-1), and blend the two neighbouring order statistics.
    """
    ordered = sorted(float(v) for v in values)
    n = len(ordered)
    if n == 1:
        return ordered[0]
    r = (p / 100.0) * (n - 1)
    lo = math.floor(r)
    hi = math.ceil(r)
    frac = r - lo
    return ordered[lo] * (1.0 - frac) + ordered[hi] * frac
