"""Linear subspaces of R^d: construction, lattice operations, Hausdorff metric.

A subspace is stored as an orthonormal basis (rows) together with its cached
orthogonal projection matrix.  All values are immutable; every operation is a
pure function, so sharing across threads is unrestricted.
"""

from __future__ import annotations

import json

import numpy as np

# Relative singular-value cutoff separating numerical noise from genuine
# linear dependence at double precision.
RANK_TOL = 1e-10

ORTHO_TOL = 1e-10       # basis orthonormality / projector idempotence
EQUALITY_TOL = 1e-9     # two subspaces are "the same" below this Hausdorff distance


class DimensionMismatch(ValueError):
    """Operands live in ambient spaces of different dimensions."""


def _check_same_dim(a: "Subspace", b: "Subspace") -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


class Subspace:
    """A linear subspace of R^d held as an orthonormal basis.

    ``basis`` has shape (k, d) with orthonormal rows; k = 0 encodes {0} and
    k = d the full space.  ``projection`` is the d x d symmetric idempotent
    sum of the rank-one projectors onto the basis vectors.
    """

    __slots__ = ("ambient_dim", "basis", "projection")

    def __init__(self, ambient_dim: int, basis: np.ndarray):
        basis = np.atleast_2d(np.asarray(basis, dtype=float))
        if basis.size == 0:
            basis = basis.reshape(0, ambient_dim)
        if basis.shape[1] != ambient_dim:
            raise DimensionMismatch(
                f"basis vectors have dimension {basis.shape[1]}, expected {ambient_dim}"
            )
        gram = basis @ basis.T
        if gram.size and np.abs(gram - np.eye(basis.shape[0])).max() > ORTHO_TOL:
            raise ValueError("basis is not orthonormal within tolerance")
        proj = basis.T @ basis
        basis.setflags(write=False)
        proj.setflags(write=False)
        object.__setattr__(self, "ambient_dim", int(ambient_dim))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "projection", proj)

    def __setattr__(self, name, value):  # immutability
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains_vector(self, v: np.ndarray, tol: float = EQUALITY_TOL) -> bool:
        v = np.asarray(v, dtype=float)
        return float(np.linalg.norm(self.projection @ v - v)) <= tol * max(
            1.0, float(np.linalg.norm(v))
        )

    def isclose(self, other: "Subspace", tol: float = EQUALITY_TOL) -> bool:
        """Equality of subspaces is Hausdorff distance <= tol, never basis identity."""
        _check_same_dim(self, other)
        return hausdorff(self, other) <= tol

    def __repr__(self) -> str:
        return f"Subspace(d={self.ambient_dim}, k={self.dim})"

    def to_json(self) -> dict:
        return {"dim": self.ambient_dim, "basis": self.basis.tolist()}

    @staticmethod
    def from_json(obj: dict) -> "Subspace":
        """Deserialize, re-orthonormalizing the given rows.

        Rejects inputs whose re-orthonormalized span drops dimension (the rows
        were not linearly independent).
        """
        d = int(obj["dim"])
        rows = np.asarray(obj["basis"], dtype=float)
        if rows.size == 0:
            return zero(d)
        sub = span(list(rows), d)
        if sub.dim != len(rows):
            raise ValueError(
                f"basis rows are linearly dependent: got rank {sub.dim}, expected {len(rows)}"
            )
        return sub

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def zero(d: int) -> Subspace:
    return Subspace(d, np.zeros((0, d)))


def full(d: int) -> Subspace:
    return Subspace(d, np.eye(d))


def span(vectors, ambient_dim: int | None = None) -> Subspace:
    """Subspace spanned by ``vectors`` with a rank-revealing orthonormal basis.

    Rank decisions use the singular-value threshold RANK_TOL times the largest
    singular value.  The list may be empty (then ``ambient_dim`` is required).
    """
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if not vectors:
        if ambient_dim is None:
            raise ValueError("empty span needs an explicit ambient dimension")
        return zero(ambient_dim)
    d = vectors[0].shape[0]
    for v in vectors:
        if v.shape != (d,):
            raise DimensionMismatch("input vectors have mismatched dimensions")
    if ambient_dim is not None and ambient_dim != d:
        raise DimensionMismatch(f"vectors have dimension {d}, expected {ambient_dim}")
    mat = np.vstack(vectors)
    u, s, vt = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return zero(d)
    rank = int(np.sum(s > RANK_TOL * s[0]))
    return Subspace(d, vt[:rank])


def from_orthonormal(basis: np.ndarray, ambient_dim: int) -> Subspace:
    """Trusted fast path: rows are already orthonormal (e.g. out of a QR)."""
    return Subspace(ambient_dim, basis)


def complement(a: Subspace) -> Subspace:
    """Orthogonal complement; its projection is I minus the projection of ``a``."""
    if a.dim == 0:
        return full(a.ambient_dim)
    if a.dim == a.ambient_dim:
        return zero(a.ambient_dim)
    _, _, vt = np.linalg.svd(a.basis, full_matrices=True)
    return Subspace(a.ambient_dim, vt[a.dim :])


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    _check_same_dim(a, b)
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return span(list(a.basis) + list(b.basis), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """A cap B computed through the complements: (A^perp + B^perp)^perp."""
    _check_same_dim(a, b)
    return complement(sum_subspaces(complement(a), complement(b)))


def is_orthogonal(a: Subspace, b: Subspace, tol: float = 1e-10) -> bool:
    _check_same_dim(a, b)
    if a.dim == 0 or b.dim == 0:
        return True
    return float(np.abs(a.projection @ b.projection).max()) <= tol


def hausdorff(a: Subspace, b: Subspace) -> float:
    """Hausdorff distance between the unit-ball truncations of two subspaces.

    Equals max(||(I - P_B) P_A||_op, ||(I - P_A) P_B||_op): the worst distance
    from a unit vector of one subspace to the other's unit ball is attained at
    the orthogonal projection, which never leaves the ball.  Always 1 when the
    dimensions differ.
    """
    _check_same_dim(a, b)
    if a.dim != b.dim:
        # a unit vector of the larger space orthogonal to the smaller one is
        # at distance exactly 1 from the smaller unit ball
        return 1.0
    if a.dim == 0:
        return 0.0
    eye = np.eye(a.ambient_dim)
    d_ab = np.linalg.norm((eye - b.projection) @ a.projection, 2)
    d_ba = np.linalg.norm((eye - a.projection) @ b.projection, 2)
    return float(min(1.0, max(d_ab, d_ba)))
