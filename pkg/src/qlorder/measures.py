"""Quantum probability measures in density-operator form.

A measure on subspaces is evaluated as mu(A) = tr(P_A T) for a symmetric
positive-semidefinite trace-one operator T.  Rank-one operators are the pure
states; T = I/d is the uniform measure mu(A) = dim(A)/d.
"""

from __future__ import annotations

import json

import numpy as np

from .subspaces import DimensionMismatch, Subspace

SYM_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
VALUE_TOL = 1e-10


class InvariantViolation(ValueError):
    """A value broke a numerical invariant it was required to satisfy."""


class DensityOperator:
    """Real symmetric PSD operator with unit trace."""

    __slots__ = ("dim", "mat")

    def __init__(self, mat: np.ndarray):
        mat = np.asarray(mat, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density operator must be a square matrix")
        if np.abs(mat - mat.T).max() > SYM_TOL:
            raise InvariantViolation("operator is not symmetric within 1e-12")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min() < -PSD_TOL:
            raise InvariantViolation(f"operator has negative eigenvalue {eigs.min():.3e}")
        if abs(np.trace(mat) - 1.0) > TRACE_TOL:
            raise InvariantViolation(f"trace is {np.trace(mat):.12f}, expected 1")
        mat = (mat + mat.T) / 2.0
        mat.setflags(write=False)
        object.__setattr__(self, "dim", mat.shape[0])
        object.__setattr__(self, "mat", mat)

    def __setattr__(self, name, value):
        raise AttributeError("DensityOperator is immutable")

    def __repr__(self) -> str:
        return f"DensityOperator(dim={self.dim})"

    def isclose(self, other: "DensityOperator", tol: float = 1e-9) -> bool:
        return self.dim == other.dim and np.abs(self.mat - other.mat).max() <= tol

    def to_json(self) -> dict:
        return {"dim": self.dim, "mat": self.mat.tolist()}

    @staticmethod
    def from_json(obj: dict) -> "DensityOperator":
        mat = np.asarray(obj["mat"], dtype=float)
        if mat.shape != (int(obj["dim"]), int(obj["dim"])):
            raise ValueError("matrix shape does not match declared dimension")
        return DensityOperator(mat)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def mu(t: DensityOperator, a: Subspace) -> float:
    """Measure of a subspace: tr(P_A T), clamped to [0, 1] only inside tolerance.

    Out-of-tolerance values raise instead of clamping, so solver bugs surface.
    """
    if t.dim != a.ambient_dim:
        raise DimensionMismatch(
            f"operator dim {t.dim} vs subspace ambient dim {a.ambient_dim}"
        )
    val = float(np.sum(a.projection * t.mat))
    if val < -VALUE_TOL or val > 1.0 + VALUE_TOL:
        raise InvariantViolation(f"mu value {val} outside [0,1] beyond tolerance")
    return min(1.0, max(0.0, val))


def pure_state(p: np.ndarray) -> DensityOperator:
    """Rank-one state p p^T for a unit vector p; mu(A) = ||P_A p||^2."""
    p = np.asarray(p, dtype=float)
    norm = float(np.linalg.norm(p))
    if norm == 0.0:
        raise ValueError("cannot build a pure state from the zero vector")
    p = p / norm
    return DensityOperator(np.outer(p, p))


def uniform(d: int) -> DensityOperator:
    """T = I/d, the measure mu(A) = dim(A)/d."""
    if d < 1:
        raise ValueError("dimension must be positive")
    return DensityOperator(np.eye(d) / d)


def mixture(weights, parts) -> DensityOperator:
    """Convex combination of density operators; mu is affine in the weights."""
    weights = np.asarray(weights, dtype=float)
    parts = list(parts)
    if len(weights) != len(parts):
        raise ValueError("weights and parts have different lengths")
    if np.any(weights < 0):
        raise ValueError("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > 1e-10:
        raise ValueError(f"weights sum to {weights.sum()}, expected 1")
    dims = {t.dim for t in parts}
    if len(dims) != 1:
        raise DimensionMismatch("mixture parts have different dimensions")
    mat = sum(w * t.mat for w, t in zip(weights, parts))
    return DensityOperator(mat)


def random_density(d: int, rng: np.random.Generator) -> DensityOperator:
    """G G^T normalized to unit trace for a standard-normal G: full rank a.s."""
    g = rng.standard_normal((d, d))
    mat = g @ g.T
    return DensityOperator(mat / np.trace(mat))
