"""Convex bodies on the sphere bounded by cyclic sequences of circular arcs.

A body is stored as its boundary: arcs of circles of angular radius at most
pi/2, each oriented counterclockwise as seen from its circle center, with the
body on the left.  The polar dual (the curve of supporting-hemisphere
centers) has a closed form per arc, which gives exact membership and support
queries: a point lies in the body iff its dot product with every supporting
center is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull, QhullError

from .errors import (DegenerateHull, InvariantViolation, NoEnclosingHemisphere)
from .sphere import dist, normalize, orthonormal_frame

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

UNIT_TOL = 1e-9          # how far off unit length stored vectors may be
RADIUS_MATCH_TOL = 1e-10  # endpoint distance to circle center vs radius
CLOSURE_TOL = 1e-10       # gap allowed between consecutive segments
ENCLOSING_MIN_DOT = 1e-6  # strict containment margin for the enclosing hemisphere
INTERIOR_MIN = 1e-6       # the body must contain a cap of this angular radius
SMOOTH_TOL = 1e-8         # junction tangent turn below this counts as smooth
CONVEXITY_TOL = 1e-8
_CHUNK = 4_000_000        # cap on temporary matrix entries in batched queries


@dataclass(frozen=True)
class BoundarySegment:
    """One boundary arc: circle center, angular radius, start and end points.

    start == end (within 1e-12) denotes the full circle; radius pi/2 denotes
    a great-circle edge.  The arc runs counterclockwise as seen from center.
    """

    center: np.ndarray
    radius: float
    start: np.ndarray
    end: np.ndarray

    def __post_init__(self):
        for name in ("center", "start", "end"):
            v = np.asarray(getattr(self, name), dtype=float)
            n = np.linalg.norm(v)
            if abs(n - 1.0) > UNIT_TOL:
                raise InvariantViolation("unit norm", f"segment {name} has norm {n!r}")
            if abs(n - 1.0) > 1e-13:  # keep already-unit vectors bit-stable
                v = v / n
            object.__setattr__(self, name, v)
        r = float(self.radius)
        if abs(r - HALF_PI) <= 1e-9:
            r = HALF_PI
        if not (1e-9 <= r <= HALF_PI):
            raise InvariantViolation("radius range", f"radius {r!r} outside (0, pi/2]")
        object.__setattr__(self, "radius", r)
        for name in ("start", "end"):
            d = float(dist(self.center, getattr(self, name)))
            if abs(d - r) > RADIUS_MATCH_TOL:
                raise InvariantViolation(
                    "segment radius",
                    f"{name} at distance {d!r} from center, radius {r!r}")

    @property
    def is_great(self) -> bool:
        return self.radius == HALF_PI

    @property
    def is_full_circle(self) -> bool:
        return bool(np.linalg.norm(self.start - self.end) < 1e-12)


class _Arcs:
    """Stacked arc data with vectorized point and support queries."""

    def __init__(self, centers, radii, u0, v0, sweeps):
        self.centers = centers
        self.radii = radii
        self.u0 = u0
        self.v0 = v0
        self.sweeps = sweeps
        self.cos_r = np.cos(radii)
        self.sin_r = np.sin(radii)
        self.lengths = sweeps * self.sin_r
        self.cum = np.concatenate([[0.0], np.cumsum(self.lengths)])
        self.total = float(self.cum[-1])
        self.count = len(radii)

    @classmethod
    def from_segments(cls, segments) -> "_Arcs":
        m = len(segments)
        centers = np.empty((m, 3))
        radii = np.empty(m)
        u0 = np.empty((m, 3))
        v0 = np.empty((m, 3))
        sweeps = np.empty(m)
        for i, seg in enumerate(segments):
            centers[i] = seg.center
            radii[i] = seg.radius
            cr = math.cos(seg.radius)
            sr = math.sin(seg.radius)
            u = (seg.start - cr * seg.center) / sr
            u = u / np.linalg.norm(u)
            v = np.cross(seg.center, u)
            u0[i] = u
            v0[i] = v
            if seg.is_full_circle:
                sweeps[i] = TWO_PI
            else:
                e = (seg.end - cr * seg.center) / sr
                sw = math.atan2(float(e @ v), float(e @ u)) % TWO_PI
                if sw < 1e-12:
                    raise InvariantViolation(
                        "degenerate segment", "zero-length boundary arc")
                sweeps[i] = sw
        return cls(centers, radii, u0, v0, sweeps)

    def point_at(self, s):
        """Boundary point at cumulative arc-length parameter s (vectorized)."""
        s = np.mod(np.atleast_1d(np.asarray(s, dtype=float)), self.total)
        idx = np.clip(np.searchsorted(self.cum, s, side="right") - 1, 0, self.count - 1)
        t = (s - self.cum[idx]) / self.sin_r[idx]
        w = (np.cos(t)[:, None] * self.u0[idx] + np.sin(t)[:, None] * self.v0[idx])
        return self.cos_r[idx][:, None] * self.centers[idx] + self.sin_r[idx][:, None] * w

    def sample_params(self, n: int, align: bool = True) -> np.ndarray:
        """n arc-length parameters; when align is set and n >= arc count,
        every arc start (hence every junction) is included.

        Per-arc counts blend the arc-length share with a chord-sag share
        (sweep * sqrt(sin r)): sharply curved short arcs get enough samples
        to keep the inscribed-polygon error balanced across arcs, while the
        length half of the blend bounds the spacing anywhere by 2*total/n.
        """
        m = self.count
        if not align or n < m:
            return np.arange(n) / n * self.total
        counts = np.ones(m, dtype=int)
        rem = n - m
        if rem > 0:
            sag = self.sweeps * np.sqrt(self.sin_r)
            quota = 0.5 * (self.lengths / self.total + sag / sag.sum()) * rem
            counts += np.floor(quota).astype(int)
            short = n - int(counts.sum())
            if short > 0:
                frac = quota - np.floor(quota)
                order = np.argsort(-frac, kind="stable")
                counts[order[:short]] += 1
        parts = [self.cum[i] + self.lengths[i] * np.arange(counts[i]) / counts[i]
                 for i in range(m)]
        return np.concatenate(parts)

    def sample_points(self, n: int, align: bool = True):
        params = self.sample_params(n, align=align)
        return params, self.point_at(params)

    def support_extreme(self, dirs, mode: str = "min") -> np.ndarray:
        """Per-direction extreme of the dot product over the whole curve.

        mode="min" gives the support minimum (negative when the curve dips
        below the hemisphere of the direction); mode="max" the maximum.
        """
        dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
        k = dirs.shape[0]
        out = np.empty(k)
        step = max(1, _CHUNK // max(self.count, 1))
        best = np.min if mode == "min" else np.max
        for lo in range(0, k, step):
            d = dirs[lo:lo + step]
            dc = self.centers @ d.T           # (m, kk)
            a = self.u0 @ d.T
            b = self.v0 @ d.T
            r = np.hypot(a, b)
            base = self.cos_r[:, None] * dc
            v_start = base + self.sin_r[:, None] * a
            cos_sw = np.cos(self.sweeps)[:, None]
            sin_sw = np.sin(self.sweeps)[:, None]
            v_end = base + self.sin_r[:, None] * (a * cos_sw + b * sin_sw)
            phi = np.arctan2(b, a)
            if mode == "min":
                t_crit = np.mod(phi + math.pi, TWO_PI)
                v_crit = base - self.sin_r[:, None] * r
                fill = np.inf
            else:
                t_crit = np.mod(phi, TWO_PI)
                v_crit = base + self.sin_r[:, None] * r
                fill = -np.inf
            in_range = t_crit <= self.sweeps[:, None]
            v_crit = np.where(in_range, v_crit, fill)
            stack = np.stack([v_start, v_end, v_crit])
            vals = stack.min(axis=0) if mode == "min" else stack.max(axis=0)
            out[lo:lo + step] = best(vals, axis=0)
        return out


def _support_point(seg: BoundarySegment, x: np.ndarray) -> np.ndarray:
    """Center of the hemisphere supporting the body at boundary point x of seg."""
    if seg.is_great:
        return seg.center
    c = (seg.center - math.cos(seg.radius) * x) / math.sin(seg.radius)
    return c / np.linalg.norm(c)


def _dual_segments(segments):
    """Closed-form polar dual boundary.

    Each arc of radius rho dualizes to an arc of radius pi/2 - rho about the
    same center (a single point when rho = pi/2); each corner junction
    contributes a great arc about the junction point sweeping the supporting
    centers.  Returns (dual segment list, junction index per dual segment,
    junction turn angles).
    """
    m = len(segments)
    pieces = []
    jmap = []
    turns = np.zeros(m)
    for k, seg in enumerate(segments):
        if not seg.is_great:
            pieces.append(BoundarySegment(
                center=seg.center, radius=HALF_PI - seg.radius,
                start=_support_point(seg, seg.start),
                end=_support_point(seg, seg.end)))
            jmap.append(-1)
        if seg.is_full_circle:
            continue
        nxt = segments[(k + 1) % m]
        n1 = _support_point(seg, seg.end)
        n2 = _support_point(nxt, nxt.start)
        turn = float(dist(n1, n2))
        turns[k] = turn
        if turn > SMOOTH_TOL:
            pieces.append(BoundarySegment(
                center=seg.end, radius=HALF_PI, start=n1, end=n2))
            jmap.append(k)
    return pieces, np.array(jmap, dtype=int), turns


@dataclass
class ExtremeSet:
    """Extreme points of a body: isolated corners plus strictly convex arcs."""

    isolated: np.ndarray        # (k, 3) corner points
    strict_arcs: np.ndarray     # indices of boundary segments with radius < pi/2
    smooth: bool                # True when no junction is a corner


class SphericalBody:
    """Closed convex region of the sphere, inside some open hemisphere.

    Validation at construction: unit vectors, radii in (0, pi/2], consecutive
    segments sharing endpoints, convex (leftward) junction turns, monotone
    winding about the enclosing center, strict containment in the enclosing
    open hemisphere, and nonempty interior.
    """

    def __init__(self, segments, enclosing_center=None, meta=None):
        segments = tuple(
            s if isinstance(s, BoundarySegment) else BoundarySegment(*s)
            for s in segments)
        if not segments:
            raise InvariantViolation("closed boundary", "no segments")
        if any(s.is_full_circle for s in segments) and len(segments) > 1:
            raise InvariantViolation(
                "closed boundary", "full-circle segment mixed with others")
        m = len(segments)
        for k in range(m):
            gap = np.linalg.norm(segments[k].end - segments[(k + 1) % m].start)
            if gap > CLOSURE_TOL and not segments[k].is_full_circle:
                raise InvariantViolation(
                    "closed boundary",
                    f"segment {k} end misses segment {(k + 1) % m} start by {gap:.3g}")
        self.segments = segments
        self.meta = dict(meta or {})
        self.arcs = _Arcs.from_segments(segments)

        self.dual_segments, self._dual_jmap, self._turns = _dual_segments(segments)
        if any(t < -CONVEXITY_TOL for t in self._turns):
            raise InvariantViolation("convexity", "reflex junction")
        self.dual_arcs = _Arcs.from_segments(self.dual_segments)

        if enclosing_center is None:
            probe = self.arcs.point_at(
                self.arcs.sample_params(max(16, 4 * m), align=True))
            enclosing_center = find_enclosing_center(probe)
        self.enclosing_center = normalize(np.asarray(enclosing_center, dtype=float))
        margin = float(self.arcs.support_extreme(self.enclosing_center, "min")[0])
        if margin <= ENCLOSING_MIN_DOT:
            raise InvariantViolation(
                "enclosing hemisphere",
                f"boundary reaches dot {margin:.3g} with the enclosing center")

        interior = float(self.dual_arcs.support_extreme(self.enclosing_center, "min")[0])
        if interior < INTERIOR_MIN * (1.0 - 1e-9):
            raise InvariantViolation(
                "nonempty interior",
                f"interior cap radius only asin({interior:.3g})")

        self._check_winding()

    def _check_winding(self):
        u, v = orthonormal_frame(self.enclosing_center)
        _, pts = self.arcs.sample_points(max(96, 8 * len(self.segments)), align=True)
        az = np.arctan2(pts @ v, pts @ u)
        d = np.diff(np.concatenate([az, az[:1]]))
        d = np.mod(d + math.pi, TWO_PI) - math.pi
        if np.any(d < -1e-9) or abs(float(d.sum()) - TWO_PI) > 1e-6:
            raise InvariantViolation(
                "convexity", "boundary does not wind once counterclockwise")

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> np.ndarray:
        """Junction points between consecutive segments (corner or smooth)."""
        if len(self.segments) == 1 and self.segments[0].is_full_circle:
            return np.empty((0, 3))
        return np.stack([seg.end for seg in self.segments])

    @property
    def is_polygon(self) -> bool:
        return all(seg.is_great for seg in self.segments)

    def support_min(self, dirs) -> np.ndarray:
        """Minimum of p . dir over the body, per direction (shape (k,))."""
        return self.arcs.support_extreme(dirs, "min")

    def contains(self, p, tol: float = 1e-9) -> bool:
        """Membership within angular slack tol, via the supporting centers."""
        p = np.asarray(p, dtype=float)
        val = self.dual_arcs.support_extreme(p.reshape(1, 3), "min")[0]
        return bool(val >= -math.sin(tol))

    def contains_many(self, pts, tol: float = 1e-9) -> np.ndarray:
        vals = self.dual_arcs.support_extreme(pts, "min")
        return vals >= -math.sin(tol)

    def boundary_points(self, n: int) -> np.ndarray:
        _, pts = self.arcs.sample_points(n, align=True)
        return pts

    def interior_radius(self) -> float:
        """Angular radius of the largest cap about the enclosing center inside."""
        val = float(self.dual_arcs.support_extreme(self.enclosing_center, "min")[0])
        return math.asin(min(1.0, max(-1.0, val)))


# -- constructors ---------------------------------------------------------


def polygon_from_vertices(vertices, enclosing_center=None) -> SphericalBody:
    """Convex spherical polygon from counterclockwise-ordered vertices."""
    verts = [normalize(np.asarray(v, dtype=float)) for v in vertices]
    n = len(verts)
    if n < 3:
        raise DegenerateHull("fewer than three vertices")
    segs = []
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        pole = np.cross(a, b)
        norm = np.linalg.norm(pole)
        if norm < 1e-12:
            raise DegenerateHull("consecutive vertices equal or antipodal")
        segs.append(BoundarySegment(center=pole / norm, radius=HALF_PI, start=a, end=b))
    return SphericalBody(segs, enclosing_center=enclosing_center,
                         meta={"kind": "polygon"})


def find_enclosing_center(points, min_dot: float = ENCLOSING_MIN_DOT) -> np.ndarray:
    """Unit vector whose open hemisphere strictly contains all points.

    Fast path is the normalized mean; otherwise the max-min-dot problem is
    solved iteratively (SLSQP on the sphere).  Raises NoEnclosingHemisphere
    when the best achievable minimum dot product is below min_dot.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mean = pts.mean(axis=0)
    candidates = []
    if np.linalg.norm(mean) > 1e-12:
        candidates.append(mean / np.linalg.norm(mean))
    best = None
    best_val = -np.inf
    for c in candidates:
        val = float(np.min(pts @ c))
        if val > best_val:
            best, best_val = c, val
    if best_val > 10 * min_dot:
        return best

    def neg_t(x):
        return -x[3]

    cons = [
        {"type": "ineq", "fun": lambda x: pts @ x[:3] - x[3]},
        {"type": "eq", "fun": lambda x: x[:3] @ x[:3] - 1.0},
    ]
    seeds = candidates + [np.array(e, dtype=float)
                          for e in ((0, 0, 1), (0, 0, -1), (1, 0, 0), (0, 1, 0))]
    for seed in seeds:
        x0 = np.concatenate([seed, [float(np.min(pts @ seed))]])
        res = minimize(neg_t, x0, constraints=cons, method="SLSQP",
                       options={"maxiter": 200, "ftol": 1e-14})
        c = res.x[:3]
        nrm = np.linalg.norm(c)
        if nrm < 1e-12:
            continue
        c = c / nrm
        val = float(np.min(pts @ c))
        if val > best_val:
            best, best_val = c, val
        if best_val > 10 * min_dot:
            break
    if best is None or best_val <= min_dot:
        raise NoEnclosingHemisphere(
            f"best containment margin {best_val:.3g} below {min_dot:.3g}")
    return best


def hull_from_points(points) -> SphericalBody:
    """Spherical convex hull via central (gnomonic) projection.

    Projects onto the tangent plane at an enclosing-hemisphere center, where
    great circles become straight lines, takes the planar hull, and lifts the
    extreme subset back.  Raises NoEnclosingHemisphere or DegenerateHull.
    """
    pts = normalize(np.atleast_2d(np.asarray(points, dtype=float)))
    # drop duplicates: after a lexicographic sort, points within 1e-12 of
    # each other are adjacent, so one linear pass suffices
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
    ranked = pts[order]
    fresh = np.ones(len(pts), dtype=bool)
    if len(pts) > 1:
        fresh[1:] = np.linalg.norm(np.diff(ranked, axis=0), axis=1) > 1e-12
    keep = np.zeros(len(pts), dtype=bool)
    keep[order[fresh]] = True
    pts = pts[keep]
    if len(pts) < 3:
        raise DegenerateHull("fewer than three distinct points")
    center = find_enclosing_center(pts)
    u, v = orthonormal_frame(center)
    w = pts @ center
    plane = np.column_stack([pts @ u / w, pts @ v / w])
    try:
        hull = ConvexHull(plane)
    except QhullError as exc:
        raise DegenerateHull(f"planar hull failed: {exc}") from exc
    idx = hull.vertices  # counterclockwise
    if len(idx) < 3:
        raise DegenerateHull("hull has fewer than three extreme points")
    return polygon_from_vertices(pts[idx], enclosing_center=center)


# -- module-level operations ----------------------------------------------


def boundary_sample(body: SphericalBody, n: int) -> np.ndarray:
    """n boundary points in order, arc-length-even per segment, junctions included."""
    if n < len(body.segments):
        raise ValueError("need at least one sample per boundary segment")
    return body.boundary_points(n)


def extreme_points(body: SphericalBody) -> ExtremeSet:
    """Corners (junctions where the tangent turns) plus strictly convex arcs."""
    corners = [body.segments[k].end
               for k in range(len(body.segments))
               if not body.segments[k].is_full_circle and body._turns[k] > SMOOTH_TOL]
    strict = np.array([k for k, seg in enumerate(body.segments) if not seg.is_great],
                      dtype=int)
    iso = np.stack(corners) if corners else np.empty((0, 3))
    return ExtremeSet(isolated=iso, strict_arcs=strict, smooth=len(corners) == 0)


def supporting_hemisphere_centers(body: SphericalBody, n: int = 720) -> np.ndarray:
    """n centers of supporting hemispheres, in order along the dual curve."""
    arcs = body.dual_arcs
    _, pts = arcs.sample_points(n, align=n >= arcs.count)
    return pts


def polar_dual(body: SphericalBody, n: int = 720) -> SphericalBody:
    """The polar dual body: its boundary is the supporting-center curve.

    The dual is assembled exactly from the arc structure (arc of radius rho
    about c -> arc of radius pi/2 - rho about c; corner -> polar great arc),
    so dualizing twice reproduces the body to roundoff.  n is kept as the
    resolution knob for validation sampling.
    """
    dual = SphericalBody(body.dual_segments, enclosing_center=body.enclosing_center)
    _ = n
    return dual


def distance_to_body(body: SphericalBody, pts, tol: float = 1e-9) -> np.ndarray:
    """Angular distance from each point to the body (0 for members)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    best = body.arcs.support_extreme(pts, "max")
    d = np.arccos(np.clip(best, -1.0, 1.0))
    inside = body.contains_many(pts, tol=tol)
    return np.where(inside, 0.0, d)


def hausdorff_bodies(a: SphericalBody, b: SphericalBody, n: int = 720) -> float:
    """Symmetric boundary-sampled Hausdorff distance between two bodies."""
    pa = a.boundary_points(max(n, len(a.segments)))
    pb = b.boundary_points(max(n, len(b.segments)))
    d_ab = float(np.max(distance_to_body(b, pa)))
    d_ba = float(np.max(distance_to_body(a, pb)))
    return max(d_ab, d_ba)
