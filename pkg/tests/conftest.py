"""Shared test helpers."""

import math

import numpy as np


def sampled_hausdorff_oracle(a, b, n=10_000):
    """Set-based distance oracle: sample unit-sphere points on each side.

    For every sampled unit vector x of one subspace, the nearest point of the
    other subspace's unit ball along a sampled direction y is the clamped
    inner multiple, at squared distance 1 - <x, y>^2.  The inner maximum of
    |<x, y(phi)>| over the uniform phi grid equals ||w|| cos(delta) where w
    is x in the other basis and delta is the offset of w's phase from the
    nearest grid angle, so each side costs O(n) instead of O(n^2).  The
    oracle value is the larger of the two one-sided maximal minimal
    distances.  ``n`` must be even so the grid is symmetric under phi ->
    phi + pi.
    """
    if n % 2:
        raise ValueError("use an even sample count")

    def circle(m):
        ts = np.linspace(0.0, 2 * math.pi, m, endpoint=False)
        return np.column_stack([np.cos(ts), np.sin(ts)])

    def coeffs(sub):
        return np.array([[1.0], [-1.0]]) if sub.dim == 1 else circle(n)

    gram = a.basis @ b.basis.T

    def one_sided(x_coeffs, g, other_dim):
        w = x_coeffs @ g  # x-samples in the other side's basis coordinates
        if other_dim == 1:
            best = np.abs(w[:, 0])
        else:
            radius = np.hypot(w[:, 0], w[:, 1])
            phase = np.arctan2(w[:, 1], w[:, 0])
            step = 2 * math.pi / n
            residue = np.mod(phase, step)
            offset = np.minimum(residue, step - residue)
            best = radius * np.cos(offset)
        worst_overlap = float(best.min())
        return math.sqrt(max(0.0, 1.0 - worst_overlap**2))

    return max(
        one_sided(coeffs(a), gram, b.dim),
        one_sided(coeffs(b), gram.T, a.dim),
    )
