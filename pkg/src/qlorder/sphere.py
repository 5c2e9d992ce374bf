"""Sphere geometry in R^3: hemispheres, EW circles, constructive hop paths.

Relative to a pole p, every point q strictly inside the northern hemisphere
determines a unique great circle through q meeting the equator orthogonally
to q; q is that circle's northernmost point.  Chains of hops along these
circles connect any hemisphere point to any point of larger co-latitude.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

UNIT_TOL = 1e-10
MEMBERSHIP_TOL = 1e-9
MAX_HOPS = 64


def _as_unit(v, tol: float = UNIT_TOL) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError("expected a vector in R^3")
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) > tol:
        raise ValueError(f"expected a unit vector, got norm {n!r}")
    return v / n


def theta(p, q) -> float:
    """Angle in [0, pi] between unit vectors: arccos of the clamped inner product."""
    p, q = _as_unit(p), _as_unit(q)
    return float(math.acos(min(1.0, max(-1.0, float(p @ q)))))


@dataclasses.dataclass(frozen=True)
class SphereFrame:
    """A pole on S^2; the equator is the great circle of its orthocomplement."""

    pole: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pole", _as_unit(self.pole, tol=1e-12))

    def colatitude(self, q) -> float:
        return theta(self.pole, q)

    def in_northern_hemisphere(self, q, tol: float = MEMBERSHIP_TOL) -> bool:
        t = self.colatitude(q)
        return tol < t < math.pi / 2 - tol


def ew_normal(frame: SphereFrame, q) -> np.ndarray:
    """Unit normal of the plane of the EW circle of q.

    x = normalize(pole x q) is the unique (up to sign) equator vector
    orthogonal to q; the circle through q and x has normal normalize(q x x).
    Membership: y on the circle iff |<y, n>| <= 1e-9 for unit y.
    """
    q = _as_unit(q)
    p = frame.pole
    cross = np.cross(p, q)
    norm_cross = float(np.linalg.norm(cross))
    if norm_cross <= 1e-9:
        raise ValueError("q is at the pole: EW circle undefined")
    if abs(float(p @ q)) <= 1e-9:
        raise ValueError("q is on the equator: EW circle undefined")
    x = cross / norm_cross
    n = np.cross(q, x)
    return n / float(np.linalg.norm(n))


def on_ew_circle(frame: SphereFrame, q, y, tol: float = MEMBERSHIP_TOL) -> bool:
    return abs(float(_as_unit(y) @ ew_normal(frame, q))) <= tol


@dataclasses.dataclass(frozen=True)
class PironPath:
    """Hop path q_0 .. q_n with q_{i+1} on the EW circle of q_i."""

    frame: SphereFrame
    points: tuple

    def __post_init__(self):
        pts = tuple(_as_unit(p, tol=1e-9) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a path needs at least two points")
        if len(pts) - 1 > MAX_HOPS:
            raise ValueError(f"path exceeds {MAX_HOPS} hops")
        object.__setattr__(self, "points", pts)

    @property
    def hops(self) -> int:
        return len(self.points) - 1

    def to_json(self) -> dict:
        return {
            "pole": self.frame.pole.tolist(),
            "points": [list(map(float, pt)) for pt in self.points],
        }

    @staticmethod
    def from_json(obj: dict) -> "PironPath":
        return PironPath(
            SphereFrame(np.asarray(obj["pole"], dtype=float)),
            tuple(np.asarray(pt, dtype=float) for pt in obj["points"]),
        )


def _azimuth_frame(frame: SphereFrame, ref):
    """Orthonormal (e1, e2) spanning the equator plane, e1 toward ref."""
    p = frame.pole
    r = ref - float(ref @ p) * p
    nr = float(np.linalg.norm(r))
    if nr <= 1e-12:
        # ref at the pole: any equator direction works
        seed = np.eye(3)[int(np.argmin(np.abs(p)))]
        r = seed - float(seed @ p) * p
        nr = float(np.linalg.norm(r))
    e1 = r / nr
    e2 = np.cross(p, e1)
    return e1, e2


def _longitude_gap(frame, a, r) -> float:
    """Signed azimuth of a relative to r's meridian, in (-pi, pi]."""
    e1, e2 = _azimuth_frame(frame, r)
    return math.atan2(float(a @ e2), float(a @ e1))


def _final_hop_parameter(frame, a, x, r, t_max):
    """Root of g(t) = <r, y(t)> cos(colat(y(t))) - cos(colat(r)) on [0, t_max].

    y(t) = cos(t) a + sin(t) x walks along the EW circle of a; g(t) = 0 makes
    r lie on the EW circle of y(t).  Bisection; g(0) > 0 and g(t_max) <= 0
    must hold at the call site.
    """
    p = frame.pole
    cos_rho = float(p @ r)
    cos_alpha = float(p @ a)

    def g(t):
        y = math.cos(t) * a + math.sin(t) * x
        return float(r @ y) * math.cos(t) * cos_alpha - cos_rho

    lo, hi = 0.0, t_max
    glo = g(lo)
    for _ in range(200):
        mid = (lo + hi) / 2.0
        gm = g(mid)
        if abs(gm) < 1e-15:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return (lo + hi) / 2.0


def piron_path(frame: SphereFrame, q, r, tol: float = MEMBERSHIP_TOL) -> PironPath:
    """Construct a hop path from q down to r (strictly larger co-latitude).

    Greedy descent: each hop moves along the current EW circle in the
    rotation sense that closes the longitude gap to r, descending a fixed
    latitude increment; the final hop is taken exactly when r lies on the
    current circle, located by root-finding on the circle parameter.
    """
    q, r = _as_unit(q), _as_unit(r)
    if not frame.in_northern_hemisphere(q, tol=1e-12):
        raise ValueError("q must lie strictly inside the northern hemisphere")
    if not frame.in_northern_hemisphere(r, tol=1e-12):
        raise ValueError("r must lie strictly inside the northern hemisphere")
    alpha_q, rho = frame.colatitude(q), frame.colatitude(r)
    if alpha_q >= rho - 1e-9:
        raise ValueError("q must be strictly north of r")
    p = frame.pole

    if abs(float(r @ ew_normal(frame, q))) <= tol:
        return PironPath(frame, (q, r))

    points = [q]
    a = q
    cos_rho = math.cos(rho)
    while len(points) <= MAX_HOPS - 1:
        alpha = frame.colatitude(a)
        x = np.cross(p, a)
        x = x / float(np.linalg.norm(x))
        gap = _longitude_gap(frame, a, r)
        # moving toward +x increases azimuth in the local frame of a; choose
        # the sense that shrinks the gap to r's meridian
        sign = -1.0 if gap > 0 else 1.0
        x = sign * x

        # r lies on the EW circle of some point of the circle of a exactly
        # when g(0) > 0 (g at the latitude limit is never positive)
        g0 = float(r @ a) * math.cos(alpha) - cos_rho
        if g0 > 1e-14:
            t_limit = math.acos(min(1.0, cos_rho / math.cos(alpha)))
            t_star = _final_hop_parameter(frame, a, x, r, t_limit)
            y = math.cos(t_star) * a + math.sin(t_star) * x
            y = y / float(np.linalg.norm(y))
            points.append(y)
            points.append(r)
            return PironPath(frame, tuple(points))

        # descent hop.  A hop of azimuth step g costs about g^2 sin cos / 2
        # of latitude, so closing the remaining azimuth within the remaining
        # latitude budget B takes about gap^2 sin cos / (2 B) equal hops;
        # plan the azimuth step accordingly, capped at half the budget.
        budget = rho - alpha
        s_factor = math.sin(alpha) * math.cos(alpha)
        gamma_total = abs(gap)
        if gamma_total > 1e-6:
            plan = gamma_total * gamma_total * s_factor / (1.6 * budget)
            n_plan = max(1, min(50, math.ceil(plan)))
            gamma_step = gamma_total / n_plan
        else:
            gamma_step = 0.0
        lat_cap = alpha + budget / 2.0
        t_lat = math.acos(min(1.0, math.cos(lat_cap) / math.cos(alpha)))
        if 1e-9 < gamma_step < math.pi / 2:
            t_azi = math.atan(math.tan(gamma_step) * math.sin(alpha))
            t_hop = min(t_lat, t_azi)
        else:
            t_hop = t_lat
        t_hop = max(t_hop, 1e-9)
        y = math.cos(t_hop) * a + math.sin(t_hop) * x
        y = y / float(np.linalg.norm(y))
        points.append(y)
        a = y
    raise RuntimeError(f"failed to reach the target within {MAX_HOPS} hops")


def verify_piron_path(
    path: PironPath, q, r, tol: float = MEMBERSHIP_TOL
) -> bool:
    """Independent validity check of a hop path.

    Endpoints must match, every consecutive pair must satisfy circle
    membership, all points must stay strictly inside the hemisphere, and
    co-latitudes must be non-decreasing.
    """
    pts = path.points
    frame = path.frame
    q, r = _as_unit(q), _as_unit(r)
    if np.linalg.norm(pts[0] - q) > tol or np.linalg.norm(pts[-1] - r) > tol:
        return False
    for pt in pts:
        if not frame.in_northern_hemisphere(pt, tol=min(tol, 1e-9)):
            return False
    lats = [frame.colatitude(pt) for pt in pts]
    if any(lats[i + 1] < lats[i] - tol for i in range(len(lats) - 1)):
        return False
    for i in range(len(pts) - 1):
        try:
            n = ew_normal(frame, pts[i])
        except ValueError:
            return False
        if abs(float(pts[i + 1] @ n)) > tol:
            return False
    return True


def half_pole(frame: SphereFrame, z):
    """Midpoint pole p' between the pole and z, with its equator's band.

    p' lies in span{pole, z} at half the co-latitude of z; every point of the
    equator of p' has co-latitude (relative to the original pole) inside
    [pi/2 - theta/2, pi/2 + theta/2] where theta is the co-latitude of z.
    Returns (p', band_lo, band_hi).
    """
    z = _as_unit(z)
    p = frame.pole
    t = theta(p, z)
    if t <= 1e-12:
        raise ValueError("z is at the pole")
    mid = p + z
    mid = mid / float(np.linalg.norm(mid))
    return mid, math.pi / 2 - t / 2.0, math.pi / 2 + t / 2.0
