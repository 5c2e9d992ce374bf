"""Synthesis of representing measures from finite order constraints.

Given equivalence constraints (mu(A) = mu(B)) and strict constraints
(mu(A) < mu(B)) over subspaces, find a density operator maximizing the
minimum strict margin, or produce a verifiable certificate that no strict
margin is achievable.  The classical variant does the same for probability
vectors over a finite set, with indicator vectors in place of projections.
"""

from __future__ import annotations

import dataclasses
import itertools
import math

import numpy as np

from . import feasibility as feas
from .measures import DensityOperator
from .subspaces import Subspace, hausdorff, full as full_space, zero as zero_space

DEFAULT_TOL = 1e-6
MAX_SWEEPS = 100_000
BISECTION_DEPTH = 40
CERT_TOL = 1e-8


class IndeterminateError(RuntimeError):
    """Budget exhausted with neither a feasible point nor a certificate."""


@dataclasses.dataclass(frozen=True)
class RepresentationProblem:
    """Finite order-constraint system over subspaces of R^dim.

    ``equivalences`` are pairs (a, b) read as mu(a) = mu(b); ``stricts`` as
    mu(a) < mu(b).  ``include_normalization`` adds the strict pair
    ({0}, full space).
    """

    dim: int
    equivalences: tuple = ()
    stricts: tuple = ()
    include_normalization: bool = False

    def __post_init__(self):
        for a, b in itertools.chain(self.equivalences, self.stricts):
            if a.ambient_dim != self.dim or b.ambient_dim != self.dim:
                raise ValueError("constraint subspaces must share the problem dimension")
        for a, b in self.equivalences:
            for c, d in self.stricts:
                if _same_pair(a, b, c, d):
                    raise ValueError("a pair appears in both equivalences and stricts")

    def all_stricts(self):
        stricts = list(self.stricts)
        if self.include_normalization:
            stricts.append((zero_space(self.dim), full_space(self.dim)))
        return stricts

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "equiv": [[a.to_json(), b.to_json()] for a, b in self.equivalences],
            "strict": [[a.to_json(), b.to_json()] for a, b in self.stricts],
            "include_normalization": self.include_normalization,
        }

    @staticmethod
    def from_json(obj: dict) -> "RepresentationProblem":
        return RepresentationProblem(
            dim=int(obj["dim"]),
            equivalences=tuple(
                (Subspace.from_json(a), Subspace.from_json(b))
                for a, b in obj.get("equiv", [])
            ),
            stricts=tuple(
                (Subspace.from_json(a), Subspace.from_json(b))
                for a, b in obj.get("strict", [])
            ),
            include_normalization=bool(obj.get("include_normalization", False)),
        )


def _same_pair(a, b, c, d, tol=1e-9) -> bool:
    return (hausdorff(a, c) <= tol and hausdorff(b, d) <= tol) or (
        hausdorff(a, d) <= tol and hausdorff(b, c) <= tol
    )


@dataclasses.dataclass(frozen=True)
class InfeasibilityCertificate:
    """Simplex weights over stricts plus free equivalence coefficients.

    The combined operator M = sum lam_i (P_Bi - P_Ai) + sum c_j (P_B'j - P_A'j)
    has largest eigenvalue <= tolerance, so for any density operator T meeting
    the equivalences, sum lam_i tr((P_Bi - P_Ai) T) = tr(M T) <= lamax(M): no
    strict margin is achievable.
    """

    lam: tuple
    coeffs: tuple
    combined: tuple  # row-major combined operator

    def matrix(self, dim: int) -> np.ndarray:
        return np.asarray(self.combined, dtype=float).reshape(dim, dim)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "coeffs": list(self.coeffs),
            "combined": list(self.combined),
        }

    @staticmethod
    def from_json(obj: dict) -> "InfeasibilityCertificate":
        return InfeasibilityCertificate(
            tuple(obj["lambda"]), tuple(obj["coeffs"]), tuple(obj["combined"])
        )


@dataclasses.dataclass(frozen=True)
class RepresentationResult:
    status: str  # "feasible" | "infeasible"
    operator: DensityOperator | None = None
    margin: float | None = None
    certificate: InfeasibilityCertificate | None = None
    sweeps: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def to_json(self) -> dict:
        out = {"status": self.status, "sweeps": self.sweeps}
        if self.operator is not None:
            out["operator"] = self.operator.to_json()
        if self.margin is not None:
            out["margin"] = self.margin
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


class _ConstraintSystem:
    """Flattened strict/equivalence rows with dedup back-references."""

    def __init__(self, c_rows, d_rows, width):
        self.n_stricts = len(c_rows)
        self.n_eqs = len(d_rows)
        self.c_arr, self.c_map = _dedup(c_rows, width)
        self.d_arr, self.d_map = _dedup(d_rows, width)

    def expand_lam(self, lam):
        full = np.zeros(self.n_stricts)
        for value, idx in zip(lam, self.c_map):
            full[idx] = value
        return full

    def expand_coeffs(self, coeffs):
        full = np.zeros(self.n_eqs)
        for value, idx in zip(coeffs, self.d_map):
            full[idx] = value
        return full


def _dedup(rows, width):
    arr = np.array(rows).reshape(len(rows), width) if rows else np.zeros((0, width))
    kept, index = [], []
    for i, row in enumerate(arr):
        if any(np.abs(row - arr[j]).max() <= 1e-12 for j in index):
            continue
        index.append(i)
        kept.append(row)
    out = np.array(kept).reshape(len(kept), width) if kept else np.zeros((0, width))
    return out, index


def _quantum_system(prob: RepresentationProblem) -> _ConstraintSystem:
    c_rows = [
        (b.projection - a.projection).ravel() for a, b in prob.all_stricts()
    ]
    d_rows = [
        (b.projection - a.projection).ravel()
        for a, b in prob.equivalences
        if np.abs(b.projection - a.projection).max() > 1e-14
    ]
    return _ConstraintSystem(c_rows, d_rows, prob.dim * prob.dim)


def _solve(system, tol, floor, max_sweeps, project_base, positive_part, worst_of, start):
    """Feasibility plus margin maximization; returns point/margin/sweeps or a
    DualCertificate, or raises IndeterminateError.

    ``floor`` is the lowest strict level that counts as feasible (tol for the
    strict problem, 0 for partial representation).
    """
    c_arr, d_arr = system.c_arr, system.d_arr
    inner = 1e-9
    used = 0

    def margin_of(point):
        if not len(c_arr):
            return math.inf
        return float((c_arr @ point).min())

    def attempt(eps, point, sweeps):
        nonlocal used
        sweeps = max(1, min(sweeps, max_sweeps - used))
        out = feas.dykstra_feasible(
            c_arr, d_arr, eps, project_base, point, sweeps, inner
        )
        used += out.sweeps_used
        return out

    # a strict pair with identical sides is infeasible at any positive level
    if len(c_arr) and floor > 0:
        norms = np.einsum("ij,ij->i", c_arr, c_arr)
        j = int(np.argmin(norms))
        if norms[j] <= 1e-18:
            lam = np.zeros(len(c_arr))
            lam[j] = 1.0
            mvec = lam @ c_arr
            return feas.DualCertificate(lam, np.zeros(len(d_arr)), mvec, worst_of(mvec))

    # refusing margin >= 0 (floor zero) takes a strictly negative combined
    # operator; a zero one only rules out positive margins
    cert_tol = CERT_TOL if floor > 0 else -CERT_TOL
    base_eps = floor + inner if floor > 0 else 0.0
    first = attempt(base_eps, start, 8000)
    if not first.converged:
        cert = feas.find_certificate(c_arr, d_arr, positive_part, worst_of, tol=cert_tol)
        if cert is not None:
            return cert
        retry = attempt(base_eps, start, max_sweeps - used)
        if not retry.converged:
            raise IndeterminateError(
                "no feasible point within budget and no certificate extracted"
            )
        first = retry

    best_point = first.point
    best_margin = margin_of(best_point)
    if not len(c_arr):
        return best_point, best_margin, used

    # maximize the minimum margin: geometric ramp to bracket the optimum,
    # then a few bisection refinements within the bracket
    lo = max(best_margin, floor)
    hi_known_bad = None
    for _ in range(10):
        if used >= max_sweeps or lo >= 1.0:
            break
        probe = min(1.0, max(8.0 * lo, lo + 1e-3))
        out = attempt(probe + inner, best_point, 800)
        if out.converged:
            best_point = out.point
            best_margin = margin_of(best_point)
            lo = max(lo, best_margin)
            if probe >= 1.0:
                break
        else:
            hi_known_bad = probe
            break
    if hi_known_bad is not None:
        hi = hi_known_bad
        for _ in range(min(BISECTION_DEPTH, 5)):
            if hi - lo <= max(10 * tol, 0.3 * hi) or used >= max_sweeps:
                break
            mid = (lo + hi) / 2.0
            out = attempt(mid + inner, best_point, 800)
            if out.converged:
                best_point = out.point
                best_margin = margin_of(best_point)
                lo = max(mid, best_margin)
            else:
                hi = mid
    return best_point, best_margin, used


def synthesize(
    prob: RepresentationProblem,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> RepresentationResult:
    """Find a representing density operator with strict margin >= tol.

    Feasible(T, m): every equivalence holds within tol and every strict pair
    has margin at least m >= tol; the solver maximizes the minimum margin.
    Infeasible carries a certificate (see InfeasibilityCertificate).  Raises
    IndeterminateError when the budget runs out with neither outcome.
    """
    return _run_quantum(prob, tol, max_sweeps, floor="tol")


def partial_representation(
    prob: RepresentationProblem,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> RepresentationResult:
    """Like synthesize, but strict pairs only need margin >= 0.

    This is the one-directional notion: the measure may collapse strict
    constraints to ties.  Still returns the maximizer of the minimum margin;
    when the strict problem is solvable its solution is returned as-is, so
    the relaxation never reports a worse margin.
    """
    try:
        strict = _run_quantum(prob, tol, max_sweeps, floor="tol")
    except IndeterminateError:
        strict = None
    if strict is not None and strict.feasible:
        return strict
    return _run_quantum(prob, tol, max_sweeps, floor="zero")


def _run_quantum(prob, tol, max_sweeps, floor) -> RepresentationResult:
    _check_tol(tol)
    system = _quantum_system(prob)
    dim = prob.dim
    outcome = _solve(
        system,
        tol,
        floor=tol if floor == "tol" else 0.0,
        max_sweeps=max_sweeps,
        project_base=lambda x: feas.project_density(x.reshape(dim, dim)).ravel(),
        positive_part=feas.positive_part_matrix,
        worst_of=feas.worst_eigenvalue,
        start=(np.eye(dim) / dim).ravel(),
    )
    if isinstance(outcome, feas.DualCertificate):
        cert = InfeasibilityCertificate(
            tuple(float(x) for x in system.expand_lam(outcome.lam)),
            tuple(float(x) for x in system.expand_coeffs(outcome.coeffs)),
            tuple(float(x) for x in outcome.combined),
        )
        return RepresentationResult(status="infeasible", certificate=cert)
    point, margin, used = outcome
    t = DensityOperator(point.reshape(dim, dim))
    return RepresentationResult(
        status="feasible",
        operator=t,
        margin=None if math.isinf(margin) else float(margin),
        sweeps=used,
    )


def _check_tol(tol: float) -> None:
    if not 0.0 < tol <= 1e-3:
        raise ValueError("tol must lie in (0, 1e-3]")


def verify_certificate(
    cert: InfeasibilityCertificate,
    prob: RepresentationProblem,
    tol: float = CERT_TOL,
) -> bool:
    """Re-check a certificate independently of the solver.

    True iff the weights are a probability vector over the strict pairs, the
    combined operator reconstructs from the problem's projections, and its
    largest eigenvalue is at most ``tol``.
    """
    stricts = prob.all_stricts()
    if not stricts:
        raise ValueError("certificates require at least one strict constraint")
    lam = np.asarray(cert.lam, dtype=float)
    coeffs = np.asarray(cert.coeffs, dtype=float)
    if lam.shape != (len(stricts),):
        return False
    if lam.min(initial=0.0) < -tol:
        return False
    if abs(lam.sum() - 1.0) > tol:
        return False
    eq_pairs = [
        (a, b)
        for a, b in prob.equivalences
        if np.abs(b.projection - a.projection).max() > 1e-14
    ]
    if coeffs.shape != (len(eq_pairs),):
        return False
    m = np.zeros((prob.dim, prob.dim))
    for w, (a, b) in zip(lam, stricts):
        m += w * (b.projection - a.projection)
    for w, (a, b) in zip(coeffs, eq_pairs):
        m += w * (b.projection - a.projection)
    if np.abs(m - cert.matrix(prob.dim)).max() > max(tol, 1e-9):
        return False
    return float(np.linalg.eigvalsh((m + m.T) / 2.0).max()) <= tol


# ---------------------------------------------------------------------------
# Classical baseline: probability vectors over a finite set.


@dataclasses.dataclass(frozen=True)
class ClassicalCertificate:
    """Indicator-vector analogue: max entry of the combined vector <= tol."""

    lam: tuple
    coeffs: tuple
    combined: tuple

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "coeffs": list(self.coeffs),
            "combined": list(self.combined),
        }


@dataclasses.dataclass(frozen=True)
class ClassicalResult:
    status: str
    probabilities: tuple | None = None
    margin: float | None = None
    certificate: ClassicalCertificate | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.probabilities is not None:
            out["probabilities"] = list(self.probabilities)
        if self.margin is not None:
            out["margin"] = self.margin
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _indicator(subset, n: int) -> np.ndarray:
    v = np.zeros(n)
    idx = list(subset)
    if any(not (0 <= int(i) < n) for i in idx):
        raise ValueError(f"subset {subset!r} is not within range({n})")
    if len(set(idx)) != len(idx):
        raise ValueError(f"subset {subset!r} has repeated elements")
    v[[int(i) for i in idx]] = 1.0
    return v


def classical_represent(
    omega_size: int,
    equivalences=(),
    stricts=(),
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> ClassicalResult:
    """The synthesizer restricted to diagonal operators and coordinate spans.

    Subsets of range(omega_size) play the role of subspaces via indicator
    vectors; the solution is a probability vector.  Certificates combine
    indicator differences into a vector with no entry above tolerance.
    """
    _check_tol(tol)
    if omega_size < 1:
        raise ValueError("omega must be nonempty")
    n = omega_size
    c_rows = [_indicator(b, n) - _indicator(a, n) for a, b in stricts]
    d_rows = [
        row
        for a, b in equivalences
        if np.abs(row := _indicator(b, n) - _indicator(a, n)).max() > 1e-14
    ]
    system = _ConstraintSystem(c_rows, d_rows, n)
    outcome = _solve(
        system,
        tol,
        floor=tol,
        max_sweeps=max_sweeps,
        project_base=feas.project_simplex,
        positive_part=feas.positive_part_vector,
        worst_of=feas.worst_entry,
        start=np.full(n, 1.0 / n),
    )
    if isinstance(outcome, feas.DualCertificate):
        cert = ClassicalCertificate(
            tuple(float(x) for x in system.expand_lam(outcome.lam)),
            tuple(float(x) for x in system.expand_coeffs(outcome.coeffs)),
            tuple(float(x) for x in outcome.combined),
        )
        return ClassicalResult(status="infeasible", certificate=cert)
    point, margin, _ = outcome
    return ClassicalResult(
        status="feasible",
        probabilities=tuple(float(x) for x in point),
        margin=None if math.isinf(margin) else float(margin),
    )


def verify_classical_certificate(
    cert: ClassicalCertificate,
    omega_size: int,
    equivalences=(),
    stricts=(),
    tol: float = CERT_TOL,
) -> bool:
    if not stricts:
        raise ValueError("certificates require at least one strict constraint")
    lam = np.asarray(cert.lam, dtype=float)
    coeffs = np.asarray(cert.coeffs, dtype=float)
    if lam.shape != (len(stricts),) or lam.min(initial=0.0) < -tol:
        return False
    if abs(lam.sum() - 1.0) > tol:
        return False
    n = omega_size
    d_rows = [
        row
        for a, b in equivalences
        if np.abs(row := _indicator(b, n) - _indicator(a, n)).max() > 1e-14
    ]
    if coeffs.shape != (len(d_rows),):
        return False
    m = np.zeros(n)
    for w, (a, b) in zip(lam, stricts):
        m += w * (_indicator(b, n) - _indicator(a, n))
    for w, row in zip(coeffs, d_rows):
        m += w * row
    if np.abs(m - np.asarray(cert.combined)).max() > max(tol, 1e-9):
        return False
    return float(m.max()) <= tol
