"""Likelihood orders over subspaces: the comparison abstraction and variants.

An order is a total comparison oracle on subspaces of a fixed R^d.  Variants
here: induced by a density operator, lexicographic in two operators, and
finitely presented by ranked equivalence classes.  A discontinuity probe
searches for sequences witnessing failure of lower semi-continuity.
"""

from __future__ import annotations

import enum
import json
import math

import numpy as np

from . import measures, subspaces
from .measures import DensityOperator
from .subspaces import Subspace, hausdorff

DEFAULT_EQ_TOL = 1e-9


class OrderRelation(enum.Enum):
    LESS = -1
    EQUIVALENT = 0
    GREATER = 1

    def flipped(self) -> "OrderRelation":
        return OrderRelation(-self.value)


def relation_from_gap(gap: float, eq_tol: float) -> OrderRelation:
    """Relation of A against B given gap = mu(B) - mu(A)."""
    if abs(gap) <= eq_tol:
        return OrderRelation.EQUIVALENT
    return OrderRelation.LESS if gap > 0 else OrderRelation.GREATER


class UnlistedSubspaceError(ValueError):
    """A finitely presented order was asked about a subspace it does not carry."""


class LikelihoodOrder:
    """Total comparison oracle over subspaces of R^d.

    ``compare(a, b)`` returns the relation of ``a`` against ``b``; subclasses
    must guarantee compare(a, b) = LESS iff compare(b, a) = GREATER and
    compare(a, a) = EQUIVALENT.
    """

    kind = "abstract"

    def __init__(self, dim: int):
        self.dim = int(dim)

    def compare(self, a: Subspace, b: Subspace) -> OrderRelation:
        raise NotImplementedError

    def is_less(self, a: Subspace, b: Subspace) -> bool:
        return self.compare(a, b) is OrderRelation.LESS

    def to_json(self) -> dict:
        raise NotImplementedError

    def sort_key(self):
        """Comparator adapter for sorting lists of subspaces by this order."""
        import functools

        return functools.cmp_to_key(lambda a, b: self.compare(a, b).value)


class MeasureOrder(LikelihoodOrder):
    """Order represented by a density operator: compare by mu values."""

    kind = "measure"

    def __init__(self, operator: DensityOperator, eq_tol: float = DEFAULT_EQ_TOL):
        if eq_tol <= 0:
            raise ValueError("eq_tol must be positive")
        super().__init__(operator.dim)
        self.operator = operator
        self.eq_tol = float(eq_tol)

    def mu(self, a: Subspace) -> float:
        return measures.mu(self.operator, a)

    def compare(self, a: Subspace, b: Subspace) -> OrderRelation:
        return relation_from_gap(self.mu(b) - self.mu(a), self.eq_tol)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "operator": self.operator.to_json(),
            "eq_tol": self.eq_tol,
        }


def order_from_measure(
    operator: DensityOperator, eq_tol: float = DEFAULT_EQ_TOL
) -> MeasureOrder:
    return MeasureOrder(operator, eq_tol)


class LexicographicOrder(LikelihoodOrder):
    """Primary comparison by mu_1, ties broken by mu_2."""

    kind = "lex"

    def __init__(
        self,
        t1: DensityOperator,
        t2: DensityOperator,
        eq_tol: float = DEFAULT_EQ_TOL,
    ):
        if t1.dim != t2.dim:
            raise subspaces.DimensionMismatch("operators have different dimensions")
        if np.abs(t1.mat - t2.mat).max() <= 1e-8:
            raise ValueError("lexicographic order needs two distinct operators")
        super().__init__(t1.dim)
        self.t1 = t1
        self.t2 = t2
        self.eq_tol = float(eq_tol)

    def compare(self, a: Subspace, b: Subspace) -> OrderRelation:
        rel = relation_from_gap(
            measures.mu(self.t1, b) - measures.mu(self.t1, a), self.eq_tol
        )
        if rel is not OrderRelation.EQUIVALENT:
            return rel
        return relation_from_gap(
            measures.mu(self.t2, b) - measures.mu(self.t2, a), self.eq_tol
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "t1": self.t1.to_json(),
            "t2": self.t2.to_json(),
            "eq_tol": self.eq_tol,
        }


def lexicographic_order(
    t1: DensityOperator, t2: DensityOperator, eq_tol: float = DEFAULT_EQ_TOL
) -> LexicographicOrder:
    return LexicographicOrder(t1, t2, eq_tol)


class FiniteOrder(LikelihoodOrder):
    """Order presented by ranked equivalence classes of concrete subspaces.

    Comparing anything not listed is an error, never a silent default: the
    topology and the order are undefined off the carrier.
    """

    kind = "finite"

    MATCH_TOL = 1e-9
    SEPARATION_TOL = 1e-6

    def __init__(self, ranked_classes):
        classes = [list(cls) for cls in ranked_classes]
        if not classes or not any(classes):
            raise ValueError("finite order needs at least one nonempty class")
        dims = {s.ambient_dim for cls in classes for s in cls}
        if len(dims) != 1:
            raise subspaces.DimensionMismatch("class members span different ambient dims")
        super().__init__(dims.pop())
        # members of different classes must be separated; duplicates across
        # classes would make the presentation contradictory
        for i, cls_i in enumerate(classes):
            for j in range(i + 1, len(classes)):
                for s in cls_i:
                    for t in classes[j]:
                        if hausdorff(s, t) <= self.SEPARATION_TOL:
                            raise ValueError(
                                f"classes {i} and {j} overlap within separation tolerance"
                            )
        self.classes = classes

    def _class_of(self, a: Subspace) -> int:
        for i, cls in enumerate(self.classes):
            for s in cls:
                if hausdorff(s, a) <= self.MATCH_TOL:
                    return i
        raise UnlistedSubspaceError(f"{a!r} is not carried by this finite order")

    def compare(self, a: Subspace, b: Subspace) -> OrderRelation:
        ia, ib = self._class_of(a), self._class_of(b)
        if ia == ib:
            return OrderRelation.EQUIVALENT
        return OrderRelation.LESS if ia < ib else OrderRelation.GREATER

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "classes": [[s.to_json() for s in cls] for cls in self.classes],
        }


def finite_order(ranked_classes) -> FiniteOrder:
    return FiniteOrder(ranked_classes)


# ---------------------------------------------------------------------------
# Discontinuity probe


def _perturbations(a: Subspace, radius: float, rng: np.random.Generator, trials: int):
    """Subspaces at Hausdorff distance exactly ``radius`` from ``a``.

    Rotates one basis vector into the orthogonal complement by arcsin(radius):
    one principal angle moves, so the distance is sin of that angle.
    """
    d, k = a.ambient_dim, a.dim
    if k == 0 or k == d or radius >= 1.0:
        return
    alpha = math.asin(min(radius, 1.0))
    comp = subspaces.complement(a)
    for _ in range(trials):
        j = int(rng.integers(k))
        w = comp.basis.T @ rng.standard_normal(comp.dim)
        nw = np.linalg.norm(w)
        if nw < 1e-12:
            continue
        w = w / nw
        rows = np.array(a.basis)
        rows[j] = math.cos(alpha) * rows[j] + math.sin(alpha) * w
        yield subspaces.from_orthonormal(rows, d)


def continuity_witness(
    order: LikelihoodOrder,
    b: Subspace,
    a: Subspace,
    shrink: float = 0.5,
    steps: int = 20,
    rng: np.random.Generator | None = None,
    trials_per_step: int = 48,
):
    """Search for a sequence a_k -> a with a_k strictly below ``b`` throughout.

    Returns a list [a_1, ..., a_steps] with hausdorff(a_k, a) <= shrink**k and
    compare(a_k, b) = LESS for every k, while compare(a, b) is not LESS; or
    None when no such sequence is found.  A returned witness certifies that
    the order is not lower semi-continuous at ``a`` relative to ``b``.

    Finite presentations carry no topology, so probing them is an error.
    """
    if isinstance(order, FiniteOrder):
        raise TypeError("continuity is undefined for finitely presented orders")
    if not 0.0 < shrink < 1.0:
        raise ValueError("shrink must lie in (0, 1)")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if order.compare(a, b) is OrderRelation.LESS:
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    witness = []
    for k in range(1, steps + 1):
        radius = shrink**k
        found = None
        for cand in _perturbations(a, radius, rng, trials_per_step):
            if order.compare(cand, b) is OrderRelation.LESS:
                found = cand
                break
        if found is None:
            return None
        witness.append(found)
    return witness


# ---------------------------------------------------------------------------
# Serialization: tagged union over all registered order kinds.

_ORDER_KINDS: dict[str, type] = {}


def register_order_kind(cls: type) -> type:
    _ORDER_KINDS[cls.kind] = cls
    return cls


for _cls in (MeasureOrder, LexicographicOrder, FiniteOrder):
    register_order_kind(_cls)


def order_to_json(order: LikelihoodOrder) -> dict:
    return order.to_json()


def order_from_json(obj: dict) -> LikelihoodOrder:
    from . import gallery  # noqa: F401  (registers the gallery kinds)

    kind = obj.get("kind")
    if kind == "measure":
        return MeasureOrder(
            DensityOperator.from_json(obj["operator"]),
            float(obj.get("eq_tol", DEFAULT_EQ_TOL)),
        )
    if kind == "lex":
        return LexicographicOrder(
            DensityOperator.from_json(obj["t1"]),
            DensityOperator.from_json(obj["t2"]),
            float(obj.get("eq_tol", DEFAULT_EQ_TOL)),
        )
    if kind == "finite":
        classes = [
            [Subspace.from_json(s) for s in cls] for cls in obj["classes"]
        ]
        return FiniteOrder(classes)
    cls = _ORDER_KINDS.get(kind)
    if cls is None or not hasattr(cls, "from_json"):
        raise ValueError(f"unknown order kind {kind!r}")
    return cls.from_json(obj)


def order_dumps(order: LikelihoodOrder) -> str:
    return json.dumps(order_to_json(order))


def order_loads(text: str) -> LikelihoodOrder:
    return order_from_json(json.loads(text))
