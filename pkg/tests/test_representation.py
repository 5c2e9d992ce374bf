import itertools

import numpy as np
import pytest

from qlorder.measures import mu, pure_state, random_density, uniform
from qlorder.orders import OrderRelation, order_from_measure
from qlorder.representation import (
    ClassicalResult,
    IndeterminateError,
    InfeasibilityCertificate,
    RepresentationProblem,
    classical_represent,
    partial_representation,
    synthesize,
    verify_certificate,
    verify_classical_certificate,
)
from qlorder.subspaces import full, span, zero
from qlorder.axioms import random_subspace

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

# the classic five-point family violating the indicator-sum cancelation:
# {0} < {2}, {1} < {3}, {2,3} < {0,1} while the indicator sums agree
KPS_STRICTS = [(frozenset({0}), frozenset({2})),
               (frozenset({1}), frozenset({3})),
               (frozenset({2, 3}), frozenset({0, 1}))]


def roundtrip_problem(d, rng, n_subs=10, min_gap=1e-4):
    t = random_density(d, rng)
    while True:
        subs = [random_subspace(d, rng, dim=int(rng.integers(1, d))) for _ in range(n_subs)]
        mus = np.array([mu(t, s) for s in subs])
        if np.diff(np.sort(mus)).min() >= min_gap:
            break
    idx = np.argsort(mus)
    stricts = tuple((subs[idx[i]], subs[idx[i + 1]]) for i in range(n_subs - 1))
    return t, RepresentationProblem(dim=d, stricts=stricts)


def test_trivial_normalization_problem():
    prob = RepresentationProblem(dim=3, stricts=((zero(3), full(3)),))
    res = synthesize(prob)
    assert res.feasible
    assert res.margin == pytest.approx(1.0, abs=1e-9)


def test_problem_validation():
    with pytest.raises(ValueError):
        RepresentationProblem(
            dim=3,
            equivalences=((span([E1]), span([E2])),),
            stricts=((span([E1]), span([E2])),),
        )
    with pytest.raises(ValueError):
        RepresentationProblem(dim=4, stricts=((span([E1]), span([E2])),))


def test_uniform_level_sets_round_trip():
    rng = np.random.default_rng(0)
    by_dim = {k: [random_subspace(3, rng, dim=k) for _ in range(2)] for k in (1, 2)}
    by_dim[0] = [zero(3)]
    by_dim[3] = [full(3)]
    equivalences = []
    stricts = []
    for k, group in by_dim.items():
        for a, b in itertools.combinations(group, 2):
            equivalences.append((a, b))
    for k1, k2 in itertools.combinations(sorted(by_dim), 2):
        for a in by_dim[k1]:
            for b in by_dim[k2]:
                stricts.append((a, b))
    prob = RepresentationProblem(
        dim=3, equivalences=tuple(equivalences), stricts=tuple(stricts)
    )
    res = synthesize(prob)
    assert res.feasible
    order = order_from_measure(res.operator)
    for a, b in stricts:
        assert order.compare(a, b) is OrderRelation.LESS
    for a, b in equivalences:
        assert abs(mu(res.operator, a) - mu(res.operator, b)) <= 1e-6


def test_roundtrip_feasible_with_margin():
    rng = np.random.default_rng(1)
    for _ in range(5):
        d = int(rng.integers(3, 6))
        t, prob = roundtrip_problem(d, rng)
        res = synthesize(prob)
        assert res.feasible
        assert res.margin >= 1e-6
        # recovered order agrees with the source on every constrained pair
        for a, b in prob.stricts:
            assert mu(res.operator, b) - mu(res.operator, a) >= res.margin - 1e-12


def test_solution_postconditions_reverified_externally():
    rng = np.random.default_rng(2)
    t, prob = roundtrip_problem(4, rng)
    res = synthesize(prob)
    op = res.operator
    # density invariants re-checked through the measures module
    assert abs(np.trace(op.mat) - 1.0) <= 1e-10
    assert np.linalg.eigvalsh(op.mat).min() >= -1e-10
    for a, b in prob.stricts:
        assert mu(op, b) - mu(op, a) >= 1e-6 - 1e-12


def test_infeasible_with_equivalences():
    # mu(e1) forced to one by an equivalence, then the strict pair demands
    # mu(e2) exceed it: impossible
    prob = RepresentationProblem(
        dim=3,
        equivalences=((span([E1]), full(3)),),
        stricts=((span([E1]), span([E2])),),
    )
    res = synthesize(prob)
    assert res.status == "infeasible"
    assert verify_certificate(res.certificate, prob)


def test_equivalence_chain_boundary_is_infeasible():
    # equivalences force all three axes equal; a strict pair between two of
    # them admits margin zero only
    prob = RepresentationProblem(
        dim=3,
        equivalences=((span([E1]), span([E3])), (span([E3]), span([E2]))),
        stricts=((span([E1]), span([E2])),),
    )
    res = synthesize(prob)
    assert res.status == "infeasible"
    assert verify_certificate(res.certificate, prob)
    relaxed = partial_representation(prob)
    assert relaxed.feasible


def test_duplicate_sides_strict_instantly_infeasible():
    prob = RepresentationProblem(dim=3, stricts=((span([E1]), span([E1 * 1.0])),))
    res = synthesize(prob)
    assert res.status == "infeasible"
    assert verify_certificate(res.certificate, prob)


def test_tampered_certificate_rejected():
    prob = RepresentationProblem(
        dim=3,
        equivalences=((span([E1]), full(3)),),
        stricts=((span([E1]), span([E2])),),
    )
    res = synthesize(prob)
    cert = res.certificate
    bad = InfeasibilityCertificate(
        tuple(-x for x in cert.lam), cert.coeffs, cert.combined
    )
    assert not verify_certificate(bad, prob)
    shifted = InfeasibilityCertificate(
        cert.lam, cert.coeffs, tuple(x + 0.5 for x in cert.combined)
    )
    assert not verify_certificate(shifted, prob)


def test_certificate_requires_stricts():
    prob = RepresentationProblem(dim=3, equivalences=((span([E1]), span([E2])),))
    cert = InfeasibilityCertificate((), (), tuple(np.zeros(9)))
    with pytest.raises(ValueError):
        verify_certificate(cert, prob)


def test_partial_relaxation_monotone_on_roundtrips():
    rng = np.random.default_rng(3)
    for _ in range(3):
        t, prob = roundtrip_problem(4, rng)
        strict_res = synthesize(prob)
        part_res = partial_representation(prob)
        assert strict_res.feasible and part_res.feasible
        assert part_res.margin >= strict_res.margin - 1e-9


def test_budget_exhaustion_is_indeterminate_not_infeasible():
    rng = np.random.default_rng(4)
    _, prob = roundtrip_problem(4, rng)
    with pytest.raises(IndeterminateError):
        synthesize(prob, max_sweeps=2)


def test_tol_validation():
    prob = RepresentationProblem(dim=3, stricts=((zero(3), full(3)),))
    with pytest.raises(ValueError):
        synthesize(prob, tol=0.5)
    with pytest.raises(ValueError):
        synthesize(prob, tol=0.0)


# ---------------------------------------------------------------------------
# Classical baseline


def test_classical_two_point_example():
    res = classical_represent(
        2,
        equivalences=[(frozenset({0}), frozenset({1}))],
        stricts=[(frozenset(), frozenset({0}))],
    )
    assert res.feasible
    np.testing.assert_allclose(res.probabilities, [0.5, 0.5], atol=1e-6)


def test_classical_round_trip_full_order():
    rng = np.random.default_rng(5)
    n = 4
    while True:
        p = rng.dirichlet(np.ones(n))
        subsets = [frozenset(s) for r in range(n + 1)
                   for s in itertools.combinations(range(n), r)]
        values = {s: sum(p[i] for i in s) for s in subsets}
        ordered = sorted(subsets, key=lambda s: values[s])
        gaps = [values[ordered[i + 1]] - values[ordered[i]] for i in range(len(ordered) - 1)]
        if min(gaps) >= 1e-3:
            break
    stricts = [(ordered[i], ordered[j])
               for i in range(len(ordered)) for j in range(i + 1, len(ordered))]
    res = classical_represent(n, stricts=stricts)
    assert res.feasible
    q = np.asarray(res.probabilities)
    for a, b in stricts:
        assert sum(q[i] for i in b) - sum(q[i] for i in a) >= res.margin - 1e-12


def test_kps_family_discovered_by_enumeration():
    """Brute-force search over small strict families on five points.

    Enumerates three-pair families of distinct subsets with identical
    indicator sums; the frozen KPS_STRICTS family must appear, and imposing
    its stricts must defeat every probability vector.
    """
    n = 5
    small = [frozenset(s) for r in (1, 2)
             for s in itertools.combinations(range(n), r)]

    def indicator(subset):
        v = np.zeros(n)
        v[list(subset)] = 1.0
        return v

    found = []
    target = {tuple(sorted(map(tuple, map(sorted, pair)))) for pair in [KPS_STRICTS]}
    for pairs in itertools.combinations(
        [(a, b) for a in small for b in small if a != b and not (a & b)], 3
    ):
        lhs = sum(indicator(a) for a, _ in pairs)
        rhs = sum(indicator(b) for _, b in pairs)
        if np.array_equal(lhs, rhs):
            found.append(pairs)
            if len(found) > 200:
                break
    assert found, "no indicator-balanced strict families exist?"
    canonical = {
        tuple(sorted((tuple(sorted(a)), tuple(sorted(b))) for a, b in pairs))
        for pairs in found
    }
    kps_key = tuple(sorted((tuple(sorted(a)), tuple(sorted(b))) for a, b in KPS_STRICTS))
    assert kps_key in canonical

    # oracle: random probability vectors all violate the strict system
    rng = np.random.default_rng(6)
    samples = rng.dirichlet(np.ones(n), size=100_000)
    margins = np.full(len(samples), np.inf)
    for a, b in KPS_STRICTS:
        margins = np.minimum(margins, samples @ (indicator(b) - indicator(a)))
    assert (margins <= 1e-12).all()


def test_classical_kps_infeasible_with_verified_certificate():
    res = classical_represent(5, stricts=KPS_STRICTS)
    assert res.status == "infeasible"
    assert verify_classical_certificate(res.certificate, 5, stricts=KPS_STRICTS)
    assert max(res.certificate.combined) <= 1e-8


def test_classical_input_validation():
    with pytest.raises(ValueError):
        classical_represent(0)
    with pytest.raises(ValueError):
        classical_represent(3, stricts=[(frozenset({5}), frozenset({0}))])
