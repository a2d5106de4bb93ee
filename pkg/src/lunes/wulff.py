"""Planar Wulff shapes, their duals, and the projection bridge to the sphere.

A Wulff shape is the intersection of half-planes x . u(theta) <= gamma(theta)
over a positive surface-energy function gamma on the circle of directions.
The dual reweights by gamma_bar(theta) = 1 / w(theta + pi), w being the
radial function.  Central (gnomonic) projection at a pole N carries these
polygons to spherical convex bodies and back, which turns the self-duality
question into width/diameter checks on the sphere; the equivalence report
runs all five checks and treats any disagreement as an internal error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .body import SphericalBody, hull_from_points
from .errors import (EmptyInterior, InconsistentVerdicts, InvalidSpec,
                     InvariantViolation, NotInHemisphere, PoleNotInterior)
from .metrics import (Verdict, diameter, is_constant_diameter,
                      is_constant_width, reduced_check, thickness)
from .sphere import normalize, orthonormal_frame

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi
_BLOCK = 512  # vertex block size for pairwise polygon distance loops


@dataclass(frozen=True)
class GammaFn:
    """Positive surface-energy function on directions, piecewise linear.

    Sample angles must be strictly increasing within [0, 2*pi); evaluation
    interpolates linearly and periodically.
    """

    angles: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ang = np.asarray(self.angles, dtype=float).ravel()
        val = np.asarray(self.values, dtype=float).ravel()
        if len(ang) != len(val) or len(ang) == 0:
            raise InvalidSpec("angles and values must be equal-length, nonempty")
        if np.any(val <= 0.0) or not np.all(np.isfinite(val)):
            raise InvalidSpec("gamma values must be positive and finite")
        if np.any(ang < 0.0) or np.any(ang >= TWO_PI):
            raise InvalidSpec("gamma angles must lie in [0, 2*pi)")
        if len(ang) > 1 and np.any(np.diff(ang) <= 0.0):
            raise InvalidSpec("gamma angles must be strictly increasing")
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "values", val)

    def __call__(self, theta):
        theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        return np.interp(theta, self.angles, self.values, period=TWO_PI)

    @classmethod
    def constant(cls, value: float, n: int = 8) -> "GammaFn":
        ang = TWO_PI * np.arange(n) / n
        return cls(ang, np.full(n, float(value)))

    @classmethod
    def from_callable(cls, fn, n: int = 360) -> "GammaFn":
        ang = TWO_PI * np.arange(n) / n
        return cls(ang, np.array([float(fn(a)) for a in ang]))

    @classmethod
    def from_samples(cls, angles, values) -> "GammaFn":
        order = np.argsort(np.asarray(angles, dtype=float))
        return cls(np.asarray(angles, dtype=float)[order],
                   np.asarray(values, dtype=float)[order])


class WulffShape:
    """Convex planar polygon with the origin strictly interior.

    Vertices counterclockwise; edge normals, offsets, radial and support
    functions are derived at construction.  gamma records provenance.
    """

    def __init__(self, vertices, gamma: GammaFn | None = None):
        verts = np.atleast_2d(np.asarray(vertices, dtype=float))
        if verts.shape[1] != 2 or len(verts) < 3:
            raise InvalidSpec("need at least 3 planar vertices")
        keep = [0]
        for i in range(1, len(verts)):
            if np.linalg.norm(verts[i] - verts[keep[-1]]) > 1e-14:
                keep.append(i)
        if np.linalg.norm(verts[keep[-1]] - verts[keep[0]]) <= 1e-14:
            keep.pop()
        verts = verts[keep]
        if len(verts) < 3:
            raise InvalidSpec("fewer than 3 distinct vertices")
        edges = np.roll(verts, -1, axis=0) - verts
        cross = verts[:, 0] * np.roll(verts, -1, axis=0)[:, 1] \
            - verts[:, 1] * np.roll(verts, -1, axis=0)[:, 0]
        if float(cross.sum()) <= 0.0:
            raise InvariantViolation("convexity", "vertices not counterclockwise")
        turn = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] \
            - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(turn < -1e-12 * np.max(np.abs(verts)) ** 2):
            raise InvariantViolation("convexity", "reflex planar vertex")
        normals = np.column_stack([edges[:, 1], -edges[:, 0]])
        norms = np.linalg.norm(normals, axis=1)
        if np.any(norms < 1e-15):
            raise InvalidSpec("repeated vertex")
        normals = normals / norms[:, None]
        offsets = np.sum(normals * verts, axis=1)
        if np.any(offsets <= 0.0):
            raise EmptyInterior("origin not strictly interior")
        self.vertices = verts
        self.normals = normals
        self.offsets = offsets
        self.gamma = gamma

    def radial(self, theta):
        """Distance from the origin to the boundary along direction theta."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        d = np.column_stack([np.cos(theta), np.sin(theta)])
        den = d @ self.normals.T
        ratio = np.full(den.shape, np.inf)
        np.divide(self.offsets[None, :], den, out=ratio, where=den > 1e-15)
        return ratio.min(axis=1)

    def support(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        d = np.column_stack([np.cos(theta), np.sin(theta)])
        return (d @ self.vertices.T).max(axis=1)

    def contains(self, p, tol: float = 1e-12) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(self.normals @ p <= self.offsets + tol))

    def scaled(self, s: float) -> "WulffShape":
        return WulffShape(float(s) * self.vertices, gamma=None)


def _gamma_of_polygon(verts: np.ndarray, normals: np.ndarray,
                      grid: int = 1440) -> GammaFn:
    """Dense support samples: a fine angle grid united with the edge normals.

    Every sampled value is the true polygon support, so each half-plane a
    consumer derives from a sample is valid, and the edge normals carry the
    exact face offsets.  Rebuilding with wulff_shape is therefore exact
    whenever the consumer's direction grid is a subset of these angles (any
    resolution dividing the grid, e.g. the defaults 720 and 1440); between
    samples linear interpolation can undercut the support near a corner by
    at most kink * (2 pi / grid) / 4.
    """
    ang = np.mod(np.arctan2(normals[:, 1], normals[:, 0]), TWO_PI)
    ang = np.unique(np.concatenate([TWO_PI * np.arange(grid) / grid, ang]))
    dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    vals = (dirs @ verts.T).max(axis=1)
    return GammaFn(ang, vals)


def polygon_gamma(shape: WulffShape) -> GammaFn:
    """Gamma encoding of a polygon; see _gamma_of_polygon for fidelity."""
    return _gamma_of_polygon(shape.vertices, shape.normals)


def wulff_shape(gamma: GammaFn, n: int = 720) -> WulffShape:
    """Intersection of the half-planes x . u(theta_k) <= gamma(theta_k).

    Directions are n equispaced angles united with gamma's own sample
    angles.  Each half-plane maps to the dual point u/gamma; active
    half-planes are the hull vertices of those points, and consecutive
    actives intersect in the Wulff vertices.
    """
    if n < 3:
        raise InvalidSpec("need at least 3 directions")
    ang = np.unique(np.concatenate([TWO_PI * np.arange(n) / n, gamma.angles]))
    g = gamma(ang)
    dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    pts = dirs / g[:, None]
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise EmptyInterior(f"degenerate half-plane family: {exc}") from exc
    idx = hull.vertices  # counterclockwise
    if len(idx) < 3:
        raise EmptyInterior("fewer than 3 active half-planes")
    pa = pts[idx]
    pb = pts[np.roll(idx, -1)]
    den = pa[:, 0] * pb[:, 1] - pa[:, 1] * pb[:, 0]
    if np.any(den <= 1e-300):
        raise EmptyInterior("origin on or outside the dual hull")
    verts = np.column_stack([(pb[:, 1] - pa[:, 1]) / den,
                             (pa[:, 0] - pb[:, 0]) / den])
    return WulffShape(verts, gamma=gamma)


def radial_w(shape: WulffShape, theta) -> float | np.ndarray:
    """Radial function w of the shape; scalar in, scalar out."""
    out = shape.radial(theta)
    return float(out[0]) if np.isscalar(theta) or np.ndim(theta) == 0 else out


def dual_wulff(shape: WulffShape, n: int = 720) -> WulffShape:
    """Wulff shape of gamma_bar(theta) = 1 / w(theta + pi) at n angles."""
    ang = TWO_PI * np.arange(n) / n
    gbar = GammaFn(ang, 1.0 / shape.radial(ang + math.pi))
    return wulff_shape(gbar, n)


def _directed_hausdorff(a: WulffShape, b: WulffShape) -> float:
    """max over vertices of a of the Euclidean distance to polygon b (exact:
    the maximum of a convex function over a polygon sits at a vertex)."""
    vb = b.vertices
    eb = np.roll(vb, -1, axis=0) - vb
    elen2 = np.maximum(np.sum(eb * eb, axis=1), 1e-300)
    worst = 0.0
    for lo in range(0, len(a.vertices), _BLOCK):
        va = a.vertices[lo:lo + _BLOCK]
        inside = np.all(va @ b.normals.T <= b.offsets[None, :] + 1e-15, axis=1)
        diff = va[:, None, :] - vb[None, :, :]
        t = np.clip(np.einsum("kmj,mj->km", diff, eb) / elen2[None, :], 0.0, 1.0)
        proj = vb[None, :, :] + t[:, :, None] * eb[None, :, :]
        d = np.linalg.norm(va[:, None, :] - proj, axis=2).min(axis=1)
        d = np.where(inside, 0.0, d)
        worst = max(worst, float(d.max()))
    return worst


def hausdorff_polygons(a: WulffShape, b: WulffShape) -> float:
    """Exact symmetric Hausdorff distance between two convex polygons."""
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))


def is_self_dual(shape: WulffShape, tol: float = 1e-6,
                 n: int = 720) -> tuple[bool, float]:
    """Whether the shape equals its dual Wulff shape within tol (exact
    polygon Hausdorff gap returned alongside)."""
    gap = hausdorff_polygons(shape, dual_wulff(shape, n))
    return gap <= tol, gap


def _exact_dual(shape: WulffShape) -> WulffShape:
    """Closed-form dual of a polygon: the intersection of the half-planes
    y . v <= 1 over v in the negated vertex set.  dual_wulff converges to
    this as n grows (linearly in 1/n near polygon corners), so it serves as
    the sampling-free arbiter for verdict consistency."""
    pa = -shape.vertices
    pb = np.roll(pa, -1, axis=0)
    den = pa[:, 0] * pb[:, 1] - pa[:, 1] * pb[:, 0]
    if np.any(den <= 1e-300):
        raise EmptyInterior("origin on or outside the negated polygon")
    verts = np.column_stack([(pb[:, 1] - pa[:, 1]) / den,
                             (pa[:, 0] - pb[:, 0]) / den])
    return WulffShape(verts)


# -- projection bridge ------------------------------------------------------


@dataclass(frozen=True)
class ProjectionFrame:
    """Pole and tangent-plane basis for the central projection."""

    pole: np.ndarray
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("pole", "u", "v"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))
        gram = np.stack([self.u, self.v, self.pole])
        if np.max(np.abs(gram @ gram.T - np.eye(3))) > 1e-12:
            raise InvalidSpec("frame basis not orthonormal")


def frame_at(pole) -> ProjectionFrame:
    n = normalize(np.asarray(pole, dtype=float))
    u, v = orthonormal_frame(n)
    return ProjectionFrame(pole=n, u=u, v=v)


def project_to_plane(body: SphericalBody, frame: ProjectionFrame,
                     n: int = 720) -> WulffShape:
    """Central projection of the body onto the tangent plane at frame.pole.

    p maps to (p.u / p.N, p.v / p.N); the output is the planar hull of n
    projected boundary samples.  The body must sit strictly inside the open
    hemisphere at the pole, and the pole strictly inside the body (so the
    origin is interior to the image).
    """
    margin = float(body.support_min(frame.pole)[0])
    if margin <= 1e-6:
        raise NotInHemisphere(
            f"body reaches dot {margin:.3g} with the projection pole")
    interior = float(body.dual_arcs.support_extreme(frame.pole, "min")[0])
    if interior <= 1e-6:
        raise PoleNotInterior(
            f"pole has containment margin only {interior:.3g}")
    pts = body.boundary_points(max(n, len(body.segments)))
    w = pts @ frame.pole
    plane = np.column_stack([pts @ frame.u / w, pts @ frame.v / w])
    try:
        hull = ConvexHull(plane)
    except QhullError as exc:
        raise InvalidSpec(f"projected boundary degenerate: {exc}") from exc
    shape = WulffShape(plane[hull.vertices])
    shape.gamma = _gamma_of_polygon(shape.vertices, shape.normals)
    return shape


def _polygon_boundary_samples(verts: np.ndarray, n: int) -> np.ndarray:
    """n points along the polygon boundary, perimeter-even per edge, every
    vertex included (n is a floor; at least one sample per edge)."""
    m = len(verts)
    edges = np.roll(verts, -1, axis=0) - verts
    lens = np.linalg.norm(edges, axis=1)
    total = float(lens.sum())
    counts = np.ones(m, dtype=int)
    rem = max(n, m) - m
    if rem > 0:
        quota = lens / total * rem
        counts += np.floor(quota).astype(int)
        short = max(n, m) - int(counts.sum())
        if short > 0:
            frac = quota - np.floor(quota)
            order = np.argsort(-frac, kind="stable")
            counts[order[:short]] += 1
    parts = [verts[i] + np.outer(np.arange(counts[i]) / counts[i], edges[i])
             for i in range(m)]
    return np.concatenate(parts)


def induce_spherical(shape: WulffShape, frame: ProjectionFrame,
                     n: int = 720) -> SphericalBody:
    """Spherical body induced by the shape: inverse central projection.

    Lifts n perimeter-even boundary samples (every vertex included) by
    (x, y) -> normalize(N + x u + y v) and takes the spherical hull.
    """
    plane = _polygon_boundary_samples(shape.vertices, n)
    lifted = normalize(frame.pole[None, :]
                       + plane[:, 0:1] * frame.u[None, :]
                       + plane[:, 1:2] * frame.v[None, :])
    body = hull_from_points(lifted)
    body.meta.update({"kind": "induced"})
    return body


@dataclass
class DualityReport:
    """Self-duality verdict plus the four equivalent spherical conditions.

    The five booleans (self_dual and the four conditions) must agree; a
    strict pass coexisting with a hard failure raises InconsistentVerdicts
    upstream rather than being resolved silently.
    """

    self_dual: bool
    hausdorff_gap: float
    four_conditions: dict = field(default_factory=dict)
    induced_body: SphericalBody | None = None

    @property
    def booleans(self) -> list[bool]:
        return [self.self_dual] + [v.passed for v in self.four_conditions.values()]


def self_dual_equivalence_report(shape: WulffShape, frame: ProjectionFrame,
                                 tol: float = 1e-4, n: int = 720,
                                 dual_n: int | None = None) -> DualityReport:
    """Evaluate self-duality and the four induced-body conditions at pi/2.

    Conditions: constant width pi/2; reduced with thickness pi/2; reduced
    with diameter pi/2; constant diameter pi/2.  Each is a Verdict gated on
    both the property check and the pi/2 value.  Disagreement beyond
    tolerance slack (one strict pass at <= tol together with one failure at
    > 10*tol) raises InconsistentVerdicts; the self-duality side of that
    comparison uses the sampling-free closed-form dual, because the sampled
    dual of a polygon carries an O(1/n) corner artifact that is a resolution
    limit, not a numerical fault.  The reported self_dual/hausdorff_gap pair
    stays the sampled measurement.

    The induced-body metrics converge much faster than the sampled dual, so
    dual_n (default n) lets the dual comparison run at a finer resolution
    without dragging the metric passes along.
    """
    sd, gap = is_self_dual(shape, tol=tol, n=n if dual_n is None else dual_n)
    exact_gap = hausdorff_polygons(shape, _exact_dual(shape))
    body = induce_spherical(shape, frame, n=n)
    th = thickness(body, n=n)
    dm = diameter(body, n=n)
    cw = is_constant_width(body, tol=tol, n=n)
    cd = is_constant_diameter(body, tol=tol, n=n)
    red = reduced_check(body, tol=tol, n=n)
    w_mean = float(cw.witness["w_mean"])

    def gated(kind, base: Verdict, value: float) -> Verdict:
        dev = max(base.deviation, abs(value - HALF_PI))
        return Verdict(kind=kind, passed=bool(base.passed and dev <= tol),
                       deviation=dev, tolerance=tol,
                       witness={"value": value, "base_kind": base.kind,
                                "base_deviation": base.deviation})

    conditions = {
        "constant_width_half_pi": gated("self_dual_aux", cw, w_mean),
        "reduced_thickness_half_pi": gated("self_dual_aux", red, th.value),
        "reduced_diameter_half_pi": gated("self_dual_aux", red, dm.value),
        "constant_diameter_half_pi": gated("self_dual_aux", cd, dm.value),
    }
    report = DualityReport(self_dual=sd, hausdorff_gap=gap,
                           four_conditions=conditions, induced_body=body)
    devs = [exact_gap] + [v.deviation for v in conditions.values()]
    flags = [exact_gap <= tol] + [v.passed for v in conditions.values()]
    if any(flags) and not all(flags):
        strict_pass = any(f and d <= tol for f, d in zip(flags, devs))
        hard_fail = any((not f) and d > 10.0 * tol for f, d in zip(flags, devs))
        if strict_pass and hard_fail:
            raise InconsistentVerdicts(
                "equivalent self-duality conditions disagree: "
                + ", ".join(f"{k}={v.passed} (dev {v.deviation:.3g})"
                            for k, v in conditions.items())
                + f", exact dual gap {exact_gap:.3g}"
                + f", self_dual={sd} (sampled gap {gap:.3g})")
    return report
