"""Convex feasibility machinery shared by the quantum and classical solvers.

Everything here works on a generic base set (density operators or probability
vectors) intersected with hyperplanes <D_j, x> = 0 and halfspaces
<C_i, x> >= eps.  Feasible points come from parallel Dykstra alternating
projections; infeasibility certificates are simplex-weighted combinations
M = sum lam_i C_i + sum c_j D_j whose "positive part" vanishes, found by an
exact nonnegative least-squares stage and, failing that, a smoothed descent.
"""

from __future__ import annotations

import dataclasses

import numpy as np


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.nonzero(u * np.arange(1, len(u) + 1) > (css - 1))[0]
    rho = idx[-1]
    theta = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def project_density(s: np.ndarray) -> np.ndarray:
    """Frobenius projection onto {symmetric PSD, trace one}.

    Eigendecompose the symmetrized input and project the spectrum onto the
    simplex.
    """
    s = (s + s.T) / 2.0
    w, v = np.linalg.eigh(s)
    return (v * project_simplex(w)) @ v.T


def nnls(a: np.ndarray, b: np.ndarray, max_outer: int | None = None):
    """Lawson-Hanson nonnegative least squares: min ||a x - b||, x >= 0.

    Returns (x, residual_norm).  Active-set method; exact at the scale used
    here (hundreds of columns).
    """
    m, n = a.shape
    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    grad = a.T @ (b - a @ x)
    outer = 0
    limit = max_outer if max_outer is not None else 3 * n + 30
    while (not passive.all()) and grad[~passive].max(initial=-np.inf) > 1e-12:
        outer += 1
        if outer > limit:
            break
        j = int(np.argmax(np.where(~passive, grad, -np.inf)))
        passive[j] = True
        while True:
            s = np.zeros(n)
            s[passive] = np.linalg.lstsq(a[:, passive], b, rcond=None)[0]
            if s[passive].min(initial=1.0) > 1e-14:
                x = s
                break
            mask = passive & (s <= 1e-14)
            ratios = x[mask] / (x[mask] - s[mask])
            alpha = float(ratios.min())
            x = x + alpha * (s - x)
            passive = passive & (x > 1e-14)
            x[~passive] = 0.0
        grad = a.T @ (b - a @ x)
    return x, float(np.linalg.norm(a @ x - b))


@dataclasses.dataclass
class FeasibilityOutcome:
    point: np.ndarray | None
    sweeps_used: int
    converged: bool


def dykstra_feasible(
    c_arr: np.ndarray,
    d_arr: np.ndarray,
    eps: float,
    project_base,
    start: np.ndarray,
    sweeps: int,
    tol: float,
) -> FeasibilityOutcome:
    """Parallel Dykstra over the base set, hyperplanes and halfspaces.

    ``c_arr``/``d_arr`` hold the flattened halfspace and hyperplane normals
    (shape (n, m) and (k, m)); the iterate is flattened to length m.  Stops as
    soon as the base-projected iterate satisfies every constraint within
    ``tol``; returns that point.
    """
    n, k = len(c_arr), len(d_arr)
    x = start.copy()
    m = x.size
    corr_base = np.zeros(m)
    corr_c = np.zeros((n, m)) if n else None
    corr_d = np.zeros((k, m)) if k else None
    cn2 = np.einsum("ij,ij->i", c_arr, c_arr) if n else None
    dn2 = np.einsum("ij,ij->i", d_arr, d_arr) if k else None
    blocks = 1 + (1 if n else 0) + (1 if k else 0)
    w = 1.0 / blocks

    def constraint_violation(point):
        v = 0.0
        if n:
            v = max(v, float(np.max(eps - c_arr @ point, initial=0.0)))
        if k:
            v = max(v, float(np.abs(d_arr @ point).max()))
        return v

    check_every = 25
    for t in range(1, sweeps + 1):
        parts = []
        y = project_base(x + corr_base)
        corr_base = x + corr_base - y
        parts.append(y)
        if n:
            z = x[None, :] + corr_c
            vals = np.einsum("ij,ij->i", c_arr, z)
            deficit = np.maximum(eps - vals, 0.0) / cn2
            yc = z + deficit[:, None] * c_arr
            corr_c = z - yc
            parts.append(yc.mean(axis=0))
        if k:
            z = x[None, :] + corr_d
            vals = np.einsum("ij,ij->i", d_arr, z)
            yd = z - (vals / dn2)[:, None] * d_arr
            corr_d = z - yd
            parts.append(yd.mean(axis=0))
        x = w * sum(parts)
        if t % check_every == 0 or t == sweeps:
            candidate = project_base(x)
            if constraint_violation(candidate) <= tol:
                return FeasibilityOutcome(candidate, t, True)
    return FeasibilityOutcome(None, sweeps, False)


@dataclasses.dataclass
class DualCertificate:
    lam: np.ndarray
    coeffs: np.ndarray
    combined: np.ndarray  # flattened M
    worst: float  # max eigenvalue (matrices) or max entry (vectors)


def find_certificate(
    c_arr: np.ndarray,
    d_arr: np.ndarray,
    positive_part,
    worst_of,
    tol: float,
    descent_iters: int = 20000,
) -> DualCertificate | None:
    """Search for lam in the simplex and free coeffs with worst(M) <= tol.

    M = sum lam_i C_i + sum c_j D_j excludes any base point from satisfying
    the strict system: for x in the base set meeting the hyperplanes,
    sum lam_i <C_i, x> = <M, x> <= worst(M).

    Stage 1 solves min ||M|| exactly by nonnegative least squares (certificates
    of cancelation type have M = 0 exactly).  Stage 2 runs projected gradient
    descent on the convex smooth ||positive_part(M)||^2 for certificates with
    strictly negative worst value.
    """
    n, k = len(c_arr), len(d_arr)
    if n == 0:
        return None
    m = c_arr.shape[1]

    def combined(lam, coeffs):
        out = lam @ c_arr
        if k:
            out = out + coeffs @ d_arr
        return out

    # Stage 1: exact M = 0 search.  Eliminate the free coefficients by
    # projecting the C rows onto the orthocomplement of the D span, then NNLS
    # with a normalization row enforcing sum lam = 1.
    if k:
        dt = d_arr.T
        proj = np.linalg.lstsq(dt, c_arr.T, rcond=None)[0]  # (k, n)
        c_reduced = c_arr - proj.T @ d_arr
    else:
        c_reduced = c_arr
    a = np.vstack([c_reduced.T, np.ones((1, n))])
    b = np.zeros(m + 1)
    b[-1] = 1.0
    lam, _ = nnls(a, b)
    total = lam.sum()
    if total > 1e-9:
        lam = lam / total
        coeffs = -np.linalg.lstsq(d_arr.T, (lam @ c_arr), rcond=None)[0] if k else np.zeros(0)
        mvec = combined(lam, coeffs)
        worst = worst_of(mvec)
        if worst <= tol:
            return DualCertificate(lam, coeffs, mvec, worst)

    # Stage 2: minimize ||pos(M)||^2 by projected gradient (convex, smooth).
    lam = np.ones(n) / n
    coeffs = np.zeros(k)
    stack = np.vstack([c_arr, d_arr]) if k else c_arr
    lip = 2.0 * float(np.linalg.norm(stack, 2)) ** 2
    step = 1.0 / max(lip, 1e-12)
    best: DualCertificate | None = None
    last_check = np.inf
    for it in range(descent_iters):
        mvec = combined(lam, coeffs)
        pos = positive_part(mvec)
        worst = worst_of(mvec)
        if best is None or worst < best.worst:
            best = DualCertificate(lam.copy(), coeffs.copy(), mvec, worst)
            if worst <= tol:
                return best
        if float(pos @ pos) <= (0.5 * tol) ** 2:
            break
        if it % 1000 == 999:  # stagnating well above zero: no certificate here
            if best.worst > 1e-3 and last_check - best.worst < 1e-6:
                break
            last_check = best.worst
        lam = project_simplex(lam - step * 2.0 * (c_arr @ pos))
        if k:
            coeffs = coeffs - step * 2.0 * (d_arr @ pos)
    if best is not None and best.worst <= tol:
        return best
    return None


def positive_part_matrix(mvec: np.ndarray) -> np.ndarray:
    d = int(round(mvec.size**0.5))
    m = mvec.reshape(d, d)
    m = (m + m.T) / 2.0
    w, v = np.linalg.eigh(m)
    return ((v * np.maximum(w, 0.0)) @ v.T).ravel()


def worst_eigenvalue(mvec: np.ndarray) -> float:
    d = int(round(mvec.size**0.5))
    m = mvec.reshape(d, d)
    return float(np.linalg.eigvalsh((m + m.T) / 2.0).max())


def positive_part_vector(mvec: np.ndarray) -> np.ndarray:
    return np.maximum(mvec, 0.0)


def worst_entry(mvec: np.ndarray) -> float:
    return float(mvec.max())
