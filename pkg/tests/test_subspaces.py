import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlorder.subspaces import (
    DimensionMismatch,
    Subspace,
    complement,
    full,
    hausdorff,
    intersect,
    is_orthogonal,
    span,
    sum_subspaces,
    zero,
)

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def random_subspace(d, k, rng):
    if k == 0:
        return zero(d)
    return span(list(rng.standard_normal((k, d))))


def test_span_empty():
    s = span([], ambient_dim=3)
    assert s.dim == 0
    assert s.ambient_dim == 3


def test_span_drops_dependent_vector():
    s = span([E1, 2 * E1, E2])
    assert s.dim == 2
    np.testing.assert_allclose(s.projection, np.diag([1.0, 1.0, 0.0]), atol=1e-12)


def test_span_rank_matches_gram_eigenvalue_oracle():
    # oracle: count of Gram-matrix eigenvalues above the squared threshold
    rng = np.random.default_rng(11)
    for _ in range(25):
        vecs = rng.standard_normal((3, 5))
        gram = vecs @ vecs.T
        eigs = np.linalg.eigvalsh(gram)
        oracle_rank = int(np.sum(eigs > 1e-20 * eigs.max()))
        assert span(list(vecs)).dim == oracle_rank


def test_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        span([E1, np.array([1.0, 0.0])])


def test_projection_invariants():
    rng = np.random.default_rng(0)
    for _ in range(50):
        s = random_subspace(4, int(rng.integers(0, 5)), rng)
        p = s.projection
        assert np.abs(p - p.T).max() <= 1e-10
        assert np.abs(p @ p - p).max() <= 1e-10
        assert abs(np.trace(p) - s.dim) <= 1e-10


def test_complement_trivial():
    assert complement(zero(3)).dim == 3
    c = complement(span([E1]))
    assert c.dim == 2
    np.testing.assert_allclose(c.projection, np.diag([0.0, 1.0, 1.0]), atol=1e-12)


def test_complement_resolution_of_identity():
    rng = np.random.default_rng(1)
    for _ in range(100):
        s = random_subspace(4, int(rng.integers(0, 5)), rng)
        total = s.projection + complement(s).projection
        assert np.abs(total - np.eye(4)).max() <= 1e-10


def test_complement_involution():
    rng = np.random.default_rng(2)
    for _ in range(30):
        s = random_subspace(5, int(rng.integers(0, 6)), rng)
        assert hausdorff(complement(complement(s)), s) <= 1e-9


def test_sum_with_zero_and_lines():
    a = span([E1])
    assert sum_subspaces(a, zero(3)).isclose(a)
    s = sum_subspaces(span([E1]), span([E2]))
    assert s.dim == 2


def test_modular_dimension_law():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = random_subspace(5, int(rng.integers(0, 6)), rng)
        b = random_subspace(5, int(rng.integers(0, 6)), rng)
        lhs = sum_subspaces(a, b).dim + intersect(a, b).dim
        assert lhs == a.dim + b.dim


def test_intersect_trivial():
    a = span([E1, E2])
    assert intersect(a, full(3)).isclose(a)
    line = intersect(span([E1, E2]), span([E2, E3]))
    assert line.dim == 1
    assert line.isclose(span([E2]))


def _nullspace_intersection(a, b):
    # independent oracle: stack (I - P) blocks and take the nullspace
    d = a.ambient_dim
    stacked = np.vstack([np.eye(d) - a.projection, np.eye(d) - b.projection])
    _, s, vt = np.linalg.svd(stacked)
    rank = int(np.sum(s > 1e-8))  # nonzero singular values here are O(1)
    return Subspace(d, vt[rank:])


def test_intersect_agrees_with_nullspace_oracle():
    rng = np.random.default_rng(4)
    for _ in range(100):
        a = random_subspace(4, int(rng.integers(1, 5)), rng)
        b = random_subspace(4, int(rng.integers(1, 5)), rng)
        assert hausdorff(intersect(a, b), _nullspace_intersection(a, b)) <= 1e-8


def test_is_orthogonal():
    a = span([E1])
    assert is_orthogonal(a, complement(a))
    assert not is_orthogonal(span([E1]), span([E1 + E2]))
    assert is_orthogonal(a, zero(3))


def test_hausdorff_trivial_and_orthogonal():
    a = span([E1])
    assert hausdorff(a, a) == 0.0
    assert hausdorff(span([E1]), span([E2])) == pytest.approx(1.0, abs=1e-12)


def test_hausdorff_rotated_line_is_sine():
    for alpha in (0.1, 0.4, 0.9, 1.3):
        b = span([np.cos(alpha) * E1 + np.sin(alpha) * E2])
        assert hausdorff(span([E1]), b) == pytest.approx(np.sin(alpha), abs=1e-12)


def test_hausdorff_matches_sampling_oracle():
    from conftest import sampled_hausdorff_oracle

    rng = np.random.default_rng(5)
    for _ in range(10):
        d = int(rng.integers(3, 5))
        k = int(rng.integers(1, 3))
        a = random_subspace(d, k, rng)
        b = random_subspace(d, k, rng)
        assert abs(hausdorff(a, b) - sampled_hausdorff_oracle(a, b)) <= 1e-3


def test_hausdorff_mixed_dimensions_is_one():
    rng = np.random.default_rng(6)
    for _ in range(100):
        ka, kb = 0, 0
        while ka == kb:
            ka, kb = int(rng.integers(0, 5)), int(rng.integers(0, 5))
        a = random_subspace(4, ka, rng)
        b = random_subspace(4, kb, rng)
        assert hausdorff(a, b) == 1.0


def test_hausdorff_triangle_inequality():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        k = int(rng.integers(1, 4))
        a, b, c = (random_subspace(4, k, rng) for _ in range(3))
        assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-9


def test_non_orthonormal_basis_rejected():
    with pytest.raises(ValueError):
        Subspace(3, np.array([[1.0, 1.0, 0.0]]))


def test_immutability():
    s = span([E1])
    with pytest.raises(AttributeError):
        s.basis = None
    assert not s.basis.flags.writeable


def test_json_round_trip():
    rng = np.random.default_rng(8)
    s = random_subspace(4, 2, rng)
    blob = json.dumps(s.to_json())
    back = Subspace.from_json(json.loads(blob))
    assert back.isclose(s)


def test_json_rejects_rank_deficient_basis():
    obj = {"dim": 3, "basis": [[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]]}
    with pytest.raises(ValueError):
        Subspace.from_json(obj)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_projection_roundtrip_property(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 6))
    k = int(rng.integers(0, d + 1))
    s = random_subspace(d, k, rng)
    p = s.projection
    assert np.abs(p @ p - p).max() <= 1e-10
    assert np.abs(p - p.T).max() <= 1e-10
    assert s.dim <= d
