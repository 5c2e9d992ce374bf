"""Axiom checkers for likelihood orders and a seeded randomized audit harness.

The checkers evaluate single instances; ``audit`` batches them over seeded
random configurations and aggregates a reproducible report.  Cancelation
instances are weighted subspace families whose weighted projection sums agree
on both sides.
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from . import subspaces
from .orders import LikelihoodOrder, MeasureOrder, OrderRelation
from .subspaces import Subspace, complement, is_orthogonal, sum_subspaces

IDENTITY_TOL = 1e-8


def random_subspace(
    d: int, rng: np.random.Generator, dim: int | None = None
) -> Subspace:
    """Haar-ish random subspace from the QR of a Gaussian matrix."""
    k = int(rng.integers(0, d + 1)) if dim is None else dim
    if k == 0:
        return subspaces.zero(d)
    q = np.linalg.qr(rng.standard_normal((d, k)))[0]
    return subspaces.from_orthonormal(q.T, d)


def random_subspace_within(
    parent: Subspace, rng: np.random.Generator, dim: int | None = None
) -> Subspace:
    """Random subspace of ``parent`` (dimension chosen uniformly if not given)."""
    k_max = parent.dim
    k = int(rng.integers(0, k_max + 1)) if dim is None else dim
    if k == 0:
        return subspaces.zero(parent.ambient_dim)
    coeff = np.linalg.qr(rng.standard_normal((k_max, k)))[0]
    return subspaces.from_orthonormal((parent.basis.T @ coeff).T, parent.ambient_dim)


def _coordinate_plane(d: int, rng: np.random.Generator) -> Subspace:
    i, j = sorted(rng.choice(d, size=2, replace=False))
    basis = np.zeros((2, d))
    basis[0, i] = 1.0
    basis[1, j] = 1.0
    return subspaces.from_orthonormal(basis, d)


def _line_in(parent: Subspace, rng: np.random.Generator) -> Subspace:
    phi = rng.uniform(0.0, np.pi)
    v = np.cos(phi) * parent.basis[0] + np.sin(phi) * parent.basis[1]
    return subspaces.from_orthonormal(v[None, :], parent.ambient_dim)


# ---------------------------------------------------------------------------
# Single-instance checkers


def check_definetti(order, a: Subspace, b: Subspace, c: Subspace):
    """Adding a subspace orthogonal to both sides must preserve the relation.

    Returns (passed, relation_before, relation_after).
    """
    if not (is_orthogonal(a, c) and is_orthogonal(b, c)):
        raise ValueError("c must be orthogonal to both a and b")
    before = order.compare(a, b)
    after = order.compare(sum_subspaces(a, c), sum_subspaces(b, c))
    return before is after, before, after


def check_negation(order, a: Subspace, b: Subspace):
    """a below b forces the complement of b below the complement of a."""
    rel = order.compare(a, b)
    rel_perp = order.compare(complement(b), complement(a))
    if rel is OrderRelation.LESS:
        return rel_perp in (OrderRelation.LESS, OrderRelation.EQUIVALENT)
    if rel is OrderRelation.EQUIVALENT:
        return rel_perp is OrderRelation.EQUIVALENT
    return True  # premise a <= b fails


def check_monotonicity(order, a: Subspace) -> bool:
    """The zero subspace is below everything."""
    rel = order.compare(subspaces.zero(a.ambient_dim), a)
    return rel in (OrderRelation.LESS, OrderRelation.EQUIVALENT)


def check_qualitative_additivity(order, a1, a2, b1, b2) -> bool:
    """Componentwise comparisons of orthogonal pairs lift to the direct sums.

    Requires a1 perp a2 and b1 perp b2.  Pass means: if a_i <= b_i for both i
    then the sum relation holds, and one strict premise forces a strict
    conclusion.  A failed premise passes vacuously.
    """
    if not is_orthogonal(a1, a2):
        raise ValueError("a1 and a2 must be orthogonal")
    if not is_orthogonal(b1, b2):
        raise ValueError("b1 and b2 must be orthogonal")
    r1, r2 = order.compare(a1, b1), order.compare(a2, b2)
    if OrderRelation.GREATER in (r1, r2):
        return True
    conclusion = order.compare(sum_subspaces(a1, a2), sum_subspaces(b1, b2))
    if conclusion is OrderRelation.GREATER:
        return False
    if OrderRelation.LESS in (r1, r2) and conclusion is not OrderRelation.LESS:
        return False
    return True


# ---------------------------------------------------------------------------
# Cancelation condition


@dataclasses.dataclass(frozen=True)
class CancelationInstance:
    """Two weighted families with identical weighted projection sums."""

    lhs: tuple
    rhs: tuple
    weights: tuple

    def __post_init__(self):
        if not (len(self.lhs) == len(self.rhs) == len(self.weights)):
            raise ValueError("lhs, rhs and weights must have equal lengths")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.identity_residual() > IDENTITY_TOL:
            raise ValueError(
                f"projection-sum identity fails: residual {self.identity_residual():.3e}"
            )

    def identity_residual(self) -> float:
        d = self.lhs[0].ambient_dim
        diff = np.zeros((d, d))
        for w, a, b in zip(self.weights, self.lhs, self.rhs):
            diff += w * (a.projection - b.projection)
        return float(np.abs(diff).max())


def check_cancelation(order, inst: CancelationInstance) -> str:
    """Evaluate the cancelation condition on one instance.

    The definition quantifies over instances whose pairs all satisfy
    a_i <= b_i, so before checking, the two sides are re-paired rank-to-rank
    under the order (a within-side permutation, which preserves the defining
    identity; swapping members across sides would not).

    Returns "pass", "fail", or "not_applicable" (premise unsatisfiable).
    """
    if inst.identity_residual() > IDENTITY_TOL:
        raise ValueError("instance violates the projection-sum identity")
    key = order.sort_key()
    lhs = sorted(inst.lhs, key=key)
    rhs = sorted(inst.rhs, key=key)
    rels = [order.compare(a, b) for a, b in zip(lhs, rhs)]
    if OrderRelation.GREATER in rels:
        return "not_applicable"
    if OrderRelation.LESS in rels:
        return "fail"
    return "pass"


def generate_cancelation_instances(
    d: int, seed: int, count: int
) -> list[CancelationInstance]:
    """Seeded instances from three generator families.

    (i) two orthonormal bases of a common random subspace (rank-one sums both
    equal its projection); (ii) complement pairs {A, A^perp} vs {B, B^perp}
    (both sides sum to the identity); (iii) refinements: a subspace against
    the other side's orthogonal decomposition into lines, zero-padded to equal
    length, with a shared rational weight.
    """
    if d < 2:
        raise ValueError("need ambient dimension at least 2")
    rng = np.random.default_rng(seed)
    rationals = [1.0, 0.5, 1.0 / 3.0, 2.0 / 3.0, 0.25]
    out = []
    while len(out) < count:
        family = len(out) % 3
        if family == 0:
            k = int(rng.integers(1, d + 1))
            parent = random_subspace(d, rng, dim=k)
            rot = np.linalg.qr(rng.standard_normal((k, k)))[0]
            lhs = [
                subspaces.from_orthonormal(parent.basis[i : i + 1], d)
                for i in range(k)
            ]
            rotated = rot.T @ parent.basis
            # occasionally keep the same basis (permuted): instances whose
            # premise is satisfiable under any order
            if len(out) % 6 == 0:
                rotated = parent.basis[rng.permutation(k)]
            rhs = [subspaces.from_orthonormal(rotated[i : i + 1], d) for i in range(k)]
            out.append(CancelationInstance(tuple(lhs), tuple(rhs), (1.0,) * k))
        elif family == 1:
            a = random_subspace(d, rng, dim=int(rng.integers(1, d)))
            b = random_subspace(d, rng, dim=int(rng.integers(1, d)))
            out.append(
                CancelationInstance(
                    (a, complement(a)), (b, complement(b)), (1.0, 1.0)
                )
            )
        else:
            w = float(rng.choice(rationals))
            ka = int(rng.integers(1, d + 1))
            kb = int(rng.integers(1, d + 1))
            sa = random_subspace(d, rng, dim=ka)
            sb = random_subspace(d, rng, dim=kb)
            lhs = [sa] + [
                subspaces.from_orthonormal(sb.basis[i : i + 1], d) for i in range(kb)
            ]
            rhs = [sb] + [
                subspaces.from_orthonormal(sa.basis[i : i + 1], d) for i in range(ka)
            ]
            n = max(len(lhs), len(rhs))
            lhs += [subspaces.zero(d)] * (n - len(lhs))
            rhs += [subspaces.zero(d)] * (n - len(rhs))
            out.append(CancelationInstance(tuple(lhs), tuple(rhs), (w,) * n))
    return out


# ---------------------------------------------------------------------------
# Audit harness

AXIOMS = ("definetti", "negation", "monotonicity", "qualitative_additivity", "cancelation")


@dataclasses.dataclass
class AuditReport:
    seed: int
    samples: int
    dim: int
    order_kind: str
    checked: dict
    violations: dict
    not_applicable: int
    witnesses: list

    def total_violations(self) -> int:
        return sum(self.violations.values())

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "dim": self.dim,
            "order_kind": self.order_kind,
            "checked": dict(self.checked),
            "violations": dict(self.violations),
            "not_applicable": self.not_applicable,
            "witnesses": self.witnesses,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _witness(axiom: str, index: int, subs, extra=None) -> dict:
    w = {
        "axiom": axiom,
        "sample": index,
        "subspaces": [s.to_json() for s in subs],
    }
    if extra:
        w.update(extra)
    return w


def audit(order: LikelihoodOrder, d: int, seed: int, samples: int) -> AuditReport:
    """Run all five checkers over seeded random configurations.

    Each sample draws from an independent stream keyed by (seed, axiom,
    sample-index), so reports are reproducible byte-for-byte and independent
    of evaluation order.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    checked = {name: 0 for name in AXIOMS}
    violations = {name: 0 for name in AXIOMS}
    witnesses = []
    not_applicable = 0

    for i in range(samples):
        rng = np.random.default_rng([seed, 0, i])
        if rng.random() < 0.25:
            # structured corner: a coordinate axis with two lines in its
            # orthogonal coordinate plane
            axis = int(rng.integers(d))
            c = subspaces.from_orthonormal(np.eye(d)[axis][None, :], d)
            rest = complement(c)
            plane = subspaces.from_orthonormal(rest.basis[:2], d)
            a, b = _line_in(plane, rng), _line_in(plane, rng)
        else:
            c = random_subspace(d, rng, dim=int(rng.integers(0, d - 1)))
            rest = complement(c)
            a = random_subspace_within(rest, rng)
            b = random_subspace_within(rest, rng)
        ok, before, after = check_definetti(order, a, b, c)
        checked["definetti"] += 1
        if not ok:
            violations["definetti"] += 1
            witnesses.append(
                _witness(
                    "definetti",
                    i,
                    (a, b, c),
                    {"before": before.name, "after": after.name},
                )
            )

    for i in range(samples):
        rng = np.random.default_rng([seed, 1, i])
        if rng.random() < 0.25:
            # structured corner: two lines of one coordinate plane
            plane = _coordinate_plane(d, rng)
            a, b = _line_in(plane, rng), _line_in(plane, rng)
        else:
            a = random_subspace(d, rng)
            b = random_subspace(d, rng)
        checked["negation"] += 1
        if not check_negation(order, a, b):
            violations["negation"] += 1
            witnesses.append(_witness("negation", i, (a, b)))

    for i in range(samples):
        rng = np.random.default_rng([seed, 2, i])
        a = random_subspace(d, rng)
        checked["monotonicity"] += 1
        if not check_monotonicity(order, a):
            violations["monotonicity"] += 1
            witnesses.append(_witness("monotonicity", i, (a,)))

    for i in range(samples):
        rng = np.random.default_rng([seed, 3, i])
        a1 = random_subspace(d, rng, dim=int(rng.integers(0, d)))
        a2 = random_subspace_within(complement(a1), rng)
        b1 = random_subspace(d, rng, dim=int(rng.integers(0, d)))
        b2 = random_subspace_within(complement(b1), rng)
        # orientation freedom that keeps each side orthogonal: swap the two
        # sides wholesale, or re-index one side
        quads = [
            (a1, a2, b1, b2),
            (a1, a2, b2, b1),
            (b1, b2, a1, a2),
            (b2, b1, a1, a2),
        ]
        chosen = quads[0]
        for quad in quads:
            r1 = order.compare(quad[0], quad[2])
            r2 = order.compare(quad[1], quad[3])
            if OrderRelation.GREATER not in (r1, r2):
                chosen = quad
                break
        checked["qualitative_additivity"] += 1
        if not check_qualitative_additivity(order, *chosen):
            violations["qualitative_additivity"] += 1
            witnesses.append(_witness("qualitative_additivity", i, chosen))

    insts = generate_cancelation_instances(d, seed, samples)
    for i, inst in enumerate(insts):
        outcome = check_cancelation(order, inst)
        checked["cancelation"] += 1
        if outcome == "fail":
            violations["cancelation"] += 1
            witnesses.append(
                _witness("cancelation", i, tuple(inst.lhs) + tuple(inst.rhs))
            )
        elif outcome == "not_applicable":
            not_applicable += 1

    witnesses.sort(key=lambda w: (w["axiom"], w["sample"]))
    return AuditReport(
        seed=seed,
        samples=samples,
        dim=d,
        order_kind=order.kind,
        checked=checked,
        violations=violations,
        not_applicable=not_applicable,
        witnesses=witnesses,
    )
