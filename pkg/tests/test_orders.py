import json

import numpy as np
import pytest

from qlorder.measures import mu, pure_state, random_density, uniform
from qlorder.orders import (
    FiniteOrder,
    OrderRelation,
    UnlistedSubspaceError,
    continuity_witness,
    finite_order,
    lexicographic_order,
    order_from_json,
    order_from_measure,
    order_to_json,
)
from qlorder.subspaces import full, hausdorff, span, zero

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

LESS, EQ, GT = OrderRelation.LESS, OrderRelation.EQUIVALENT, OrderRelation.GREATER


def random_subspace(d, rng, k=None):
    k = int(rng.integers(0, d + 1)) if k is None else k
    if k == 0:
        return zero(d)
    return span(list(rng.standard_normal((k, d))))


def gap_separated_samples(order, d, rng, count, gap=1e-6):
    """Subspaces whose pairwise measure gaps are zero or at least ``gap``."""
    out = []
    while len(out) < count:
        s = random_subspace(d, rng)
        vals = [order.mu(t) for t in out]
        v = order.mu(s)
        if all(abs(v - w) >= gap or abs(v - w) == 0.0 for w in vals):
            out.append(s)
    return out


def test_uniform_order_compares_by_dimension():
    order = order_from_measure(uniform(3))
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = random_subspace(3, rng), random_subspace(3, rng)
        expected = EQ if a.dim == b.dim else (LESS if a.dim < b.dim else GT)
        assert order.compare(a, b) is expected


def test_pure_state_pole_equivalent_to_space():
    p = np.array([0.3, -0.5, 0.81])
    p /= np.linalg.norm(p)
    order = order_from_measure(pure_state(p))
    assert order.compare(span([p]), full(3)) is EQ


def test_reflexivity_and_antisymmetry():
    rng = np.random.default_rng(1)
    order = order_from_measure(random_density(4, rng))
    for _ in range(1000):
        a, b = random_subspace(4, rng), random_subspace(4, rng)
        rel = order.compare(a, b)
        assert order.compare(b, a) is rel.flipped()
        assert order.compare(a, a) is EQ


def test_transitivity_on_gap_separated_triples():
    rng = np.random.default_rng(2)
    order = order_from_measure(random_density(4, rng))
    subs = gap_separated_samples(order, 4, rng, 22)
    checked = 0
    for i in range(20):
        a, b, c = (subs[(i + j) % len(subs)] for j in range(3))
        rab, rbc, rac = order.compare(a, b), order.compare(b, c), order.compare(a, c)
        if rab is LESS and rbc in (LESS, EQ):
            assert rac is LESS
        if rab is EQ and rbc is EQ:
            assert rac is EQ
        checked += 1
    assert checked == 20


def test_measure_order_monotone_under_inclusion():
    rng = np.random.default_rng(3)
    order = order_from_measure(random_density(4, rng))
    for _ in range(200):
        b = random_subspace(4, rng, k=int(rng.integers(1, 5)))
        keep = int(rng.integers(0, b.dim + 1))
        coeff = np.linalg.qr(rng.standard_normal((b.dim, keep)))[0] if keep else None
        a = (
            zero(4)
            if keep == 0
            else span(list((b.basis.T @ coeff).T))
        )
        assert order.compare(a, b) in (LESS, EQ)


def test_lexicographic_strict_primary_matches_measure_order():
    t1 = random_density(3, np.random.default_rng(4))
    t2 = random_density(3, np.random.default_rng(5))
    lex = lexicographic_order(t1, t2)
    base = order_from_measure(t1)
    rng = np.random.default_rng(6)
    for _ in range(200):
        a, b = random_subspace(3, rng), random_subspace(3, rng)
        if abs(mu(t1, a) - mu(t1, b)) > 1e-6:
            assert lex.compare(a, b) is base.compare(a, b)


def test_lexicographic_tie_broken_by_secondary():
    lex = lexicographic_order(pure_state(E3), pure_state(E1))
    # both lines have mu1 = 0; mu2 separates them
    assert lex.compare(span([E1]), span([E2])) is GT
    assert lex.compare(span([E2]), span([E1])) is LESS


def test_lexicographic_rejects_identical_operators():
    t = uniform(3)
    with pytest.raises(ValueError):
        lexicographic_order(t, t)


def test_finite_order_basics():
    classes = [[zero(3)], [span([E1])], [full(3)]]
    order = finite_order(classes)
    assert order.compare(zero(3), span([E1])) is LESS
    assert order.compare(full(3), span([E1])) is GT
    assert order.compare(span([E1]), span([E1])) is EQ


def test_finite_order_single_class_all_equivalent():
    order = finite_order([[span([E1]), span([E2])]])
    assert order.compare(span([E1]), span([E2])) is EQ


def test_finite_order_unlisted_query_errors():
    order = finite_order([[span([E1])], [span([E2])]])
    with pytest.raises(UnlistedSubspaceError):
        order.compare(span([E3]), span([E1]))


def test_finite_order_overlapping_classes_rejected():
    with pytest.raises(ValueError):
        finite_order([[span([E1])], [span([E1])]])


def test_finite_order_round_trip_from_level_sets():
    rng = np.random.default_rng(7)
    t = random_density(3, rng)
    base = order_from_measure(t)
    subs = gap_separated_samples(base, 3, rng, 8)
    ranked = sorted(subs, key=lambda s: mu(t, s))
    classes = []
    for s in ranked:  # group exact mu ties (e.g. repeated {0}) into one class
        if classes and abs(mu(t, classes[-1][0]) - mu(t, s)) == 0.0:
            if any(hausdorff(s, other) <= 1e-9 for other in classes[-1]):
                continue
            classes[-1].append(s)
        else:
            classes.append([s])
    fin = finite_order(classes)
    for a in subs:
        for b in subs:
            assert fin.compare(a, b) is base.compare(a, b)


def test_continuity_witness_found_for_lexicographic():
    lex = lexicographic_order(pure_state(E3), pure_state(E1))
    a = span([(E1 + E3) / np.sqrt(2)])
    b = span([(E2 + E3) / np.sqrt(2)])
    assert lex.compare(a, b) is not LESS
    witness = continuity_witness(lex, b, a, shrink=0.5, steps=20,
                                 rng=np.random.default_rng(0))
    assert witness is not None
    for k, w in enumerate(witness, start=1):
        assert hausdorff(w, a) <= 0.5**k + 1e-12
        assert lex.compare(w, b) is LESS


def test_continuity_witness_derived_by_search_over_coordinate_spans():
    lex = lexicographic_order(pure_state(E3), pure_state(E1))
    pool = [
        span([E1]),
        span([E2]),
        span([(E1 + E3) / np.sqrt(2)]),
        span([(E2 + E3) / np.sqrt(2)]),
        span([(E1 + E2) / np.sqrt(2)]),
    ]
    hits = 0
    for a in pool:
        for b in pool:
            if a is b or lex.compare(a, b) is LESS:
                continue
            if continuity_witness(lex, b, a, steps=8,
                                  rng=np.random.default_rng(1)) is not None:
                hits += 1
    assert hits > 0


def test_no_witness_for_measure_orders():
    rng = np.random.default_rng(8)
    order = order_from_measure(random_density(3, rng))
    for _ in range(100):
        a, b = random_subspace(3, rng), random_subspace(3, rng)
        assert continuity_witness(order, b, a, steps=12, rng=rng) is None


def test_witness_errors_for_finite_orders():
    order = finite_order([[span([E1])], [span([E2])]])
    with pytest.raises(TypeError):
        continuity_witness(order, span([E2]), span([E1]))


def test_order_serialization_round_trips():
    rng = np.random.default_rng(9)
    orders = [
        order_from_measure(random_density(3, rng)),
        lexicographic_order(pure_state(E3), pure_state(E1)),
        finite_order([[zero(3)], [span([E1])], [full(3)]]),
    ]
    probes = [(span([E1]), span([E1 + 0.0 * E2]))]
    for order in orders:
        blob = json.dumps(order_to_json(order))
        back = order_from_json(json.loads(blob))
        assert type(back) is type(order)
        for a, b in probes:
            try:
                assert back.compare(a, b) is order.compare(a, b)
            except UnlistedSubspaceError:
                pass


def test_gallery_orders_serialize_through_registry():
    from qlorder.gallery import counterexample_order, example31_order

    for order in (example31_order(E3), counterexample_order(E3)):
        back = order_from_json(json.loads(json.dumps(order_to_json(order))))
        assert type(back) is type(order)
        a, b = span([E1]), span([(E1 + E3) / np.sqrt(2)])
        assert back.compare(a, b) is order.compare(a, b)
