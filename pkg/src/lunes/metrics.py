"""Width, thickness, diameter and shape verdicts for spherical convex bodies.

The width of a body relative to a supporting hemisphere K is the smallest
thickness of a lune K intersect K' over the other supporting hemispheres K';
the thickness is the minimum width and the diameter the largest point-pair
distance.  All searches run as a coarse scan over the supporting-center
curve (the polar dual boundary) followed by golden-section refinement, with
the closed-form lune thickness pi - dist(centers) used as an independent
cross-check of every returned width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .body import SMOOTH_TOL, SphericalBody
from .errors import ConsistencyError, NotSupporting
from .search import golden_max
from .sphere import Hemisphere, dist, lune_make, normalize

HALF_PI = 0.5 * math.pi
SUPPORT_TOL = 1e-8       # |min dot| beyond this means "not a supporting hemisphere"
CROSS_CHECK_TOL = 1e-8   # agreement between definition-based and dual-form widths
VERTEX_AGREE_TOL = 1e-9  # polygon diameter vs vertex-pair enumeration


@dataclass
class WidthSample:
    """Width of the body seen from one supporting hemisphere."""

    support_center: np.ndarray
    width: float
    opposing_center: np.ndarray


@dataclass
class ThicknessResult:
    value: float
    witness: WidthSample


@dataclass
class DiameterResult:
    value: float
    p: np.ndarray
    q: np.ndarray


@dataclass
class Verdict:
    """Outcome of a tolerance-gated property check."""

    kind: str
    passed: bool
    deviation: float
    tolerance: float
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pass": bool(self.passed),
                "deviation": float(self.deviation),
                "tolerance": float(self.tolerance),
                "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [float(x) for x in np.asarray(obj).ravel()]
    if isinstance(obj, (np.floating, np.integer)):
        return float(obj)
    return obj


def _row_dist(p, q):
    """Rowwise great-circle distance between (k,3) arrays."""
    cr = np.cross(p, q)
    return np.arctan2(np.linalg.norm(cr, axis=-1), np.sum(p * q, axis=-1))


def _samples(arcs, n):
    n_eff = max(int(n), arcs.count, 8)
    return arcs.sample_points(n_eff)


def _refine_farthest(arcs, fixed_pts, t0, bracket):
    """Per-row golden refinement of max_t dist(fixed_pts[i], curve(t))."""
    fixed_pts = np.atleast_2d(fixed_pts)

    def f(t):
        return _row_dist(fixed_pts, arcs.point_at(t))

    t, v = golden_max(f, t0 - bracket, t0 + bracket)
    return t, v


def _refine_pair(arcs_a, arcs_b, s0, t0, bracket, rounds: int = 3):
    """Coordinate-ascent refinement of dist(a(s), b(t)) from a coarse pair."""
    s = np.array([s0], dtype=float)
    t = np.array([t0], dtype=float)
    val = 0.0
    for _ in range(rounds):
        pa = arcs_a.point_at(s)

        def f_t(tt):
            return _row_dist(np.repeat(pa, len(tt), axis=0), arcs_b.point_at(tt))

        t, _ = golden_max(f_t, t - bracket, t + bracket)
        pb = arcs_b.point_at(t)

        def f_s(ss):
            return _row_dist(arcs_a.point_at(ss), np.repeat(pb, len(ss), axis=0))

        s, v = golden_max(f_s, s - bracket, s + bracket)
        val = float(v[0])
    return float(s[0]), float(t[0]), val


def _checked_width(k, kp) -> float:
    """Lune thickness from the semicircle midpoints, cross-checked against
    the closed form pi - dist(centers)."""
    lune = lune_make(Hemisphere(k), Hemisphere(kp))
    alt = math.pi - float(dist(k, kp))
    if abs(lune.thickness - alt) > CROSS_CHECK_TOL:
        raise ConsistencyError(
            f"lune thickness {lune.thickness!r} vs closed form {alt!r}")
    return lune.thickness


def width_at(body: SphericalBody, support_center, n: int = 720) -> WidthSample:
    """Width of the body relative to the supporting hemisphere H(support_center).

    Scans n supporting centers for the narrowest lune through H(support_center)
    and refines the opposing center by golden-section search; the result is
    checked against the dual form pi - max distance along the supporting curve.
    """
    k = normalize(np.asarray(support_center, dtype=float))
    margin = float(body.support_min(k)[0])
    if abs(margin) > SUPPORT_TOL:
        raise NotSupporting(f"support minimum {margin:.3g} is not zero")
    arcs = body.dual_arcs
    params, pts = _samples(arcs, n)
    dots = pts @ k
    j = int(np.argmin(dots))  # farthest supporting center = narrowest lune
    bracket = 2.0 * arcs.total / len(params)
    t, far = _refine_farthest(arcs, k.reshape(1, 3), np.array([params[j]]), bracket)
    opposing = arcs.point_at(t)[0]
    width = _checked_width(k, opposing)
    return WidthSample(support_center=k, width=width, opposing_center=opposing)


def thickness(body: SphericalBody, n: int = 720) -> ThicknessResult:
    """Minimal width over all supporting hemispheres.

    Equals pi minus the diameter of the supporting-center curve; computed by
    a coarse pairwise scan plus two-sided refinement, with the witness lune
    evaluated from its semicircle midpoints as an independent check.
    """
    arcs = body.dual_arcs
    params, pts = _samples(arcs, n)
    gram = pts @ pts.T
    i, j = np.unravel_index(int(np.argmin(gram)), gram.shape)
    bracket = 2.0 * arcs.total / len(params)
    s, t, _ = _refine_pair(arcs, arcs, params[i], params[j], bracket)
    k = arcs.point_at(np.array([s]))[0]
    kp = arcs.point_at(np.array([t]))[0]
    width = _checked_width(k, kp)
    return ThicknessResult(value=width, witness=WidthSample(k, width, kp))


def diameter(body: SphericalBody, n: int = 720) -> DiameterResult:
    """Largest distance between two points of the body.

    Attained on the boundary; coarse pairwise scan over boundary samples plus
    two-sided golden refinement.  For polygons with diameter at most pi/2 the
    result is checked against exhaustive vertex-pair enumeration.
    """
    arcs = body.arcs
    params, pts = _samples(arcs, n)
    gram = pts @ pts.T
    i, j = np.unravel_index(int(np.argmin(gram)), gram.shape)
    bracket = 2.0 * arcs.total / len(params)
    s, t, val = _refine_pair(arcs, arcs, params[i], params[j], bracket)
    p = arcs.point_at(np.array([s]))[0]
    q = arcs.point_at(np.array([t]))[0]
    if body.is_polygon and val <= HALF_PI + 1e-8:
        verts = body.vertices
        vmax = float(np.max(dist(verts[:, None, :], verts[None, :, :])))
        if abs(val - vmax) > VERTEX_AGREE_TOL:
            raise ConsistencyError(
                f"sampled diameter {val!r} vs vertex enumeration {vmax!r}")
    return DiameterResult(value=val, p=p, q=q)


def _width_profile(body: SphericalBody, n: int):
    """Refined widths at n supporting centers (returns centers, widths)."""
    arcs = body.dual_arcs
    params, pts = _samples(arcs, n)
    gram = pts @ pts.T
    jbest = np.argmin(gram, axis=1)
    bracket = 2.0 * arcs.total / len(params)
    _, far = _refine_farthest(arcs, pts, params[jbest], bracket)
    widths = math.pi - far
    return pts, widths


def is_constant_width(body: SphericalBody, tol: float = 1e-6, n: int = 720) -> Verdict:
    """Whether the refined width profile is constant within tol."""
    centers, widths = _width_profile(body, n)
    i_min = int(np.argmin(widths))
    i_max = int(np.argmax(widths))
    deviation = float(widths[i_max] - widths[i_min])
    witness = {"w_min": widths[i_min], "w_max": widths[i_max],
               "w_mean": float(widths.mean()),
               "argmin_center": centers[i_min], "argmax_center": centers[i_max]}
    return Verdict(kind="constant_width", passed=deviation <= tol,
                   deviation=deviation, tolerance=tol, witness=witness)


def is_constant_diameter(body: SphericalBody, tol: float = 1e-6,
                         n: int = 720) -> Verdict:
    """Whether every boundary point has a partner at the full diameter.

    Fails (with the worst point as witness) when some boundary point's
    farthest partner falls short of the diameter by more than tol.
    """
    diam = diameter(body, n).value
    arcs = body.arcs
    params, pts = _samples(arcs, n)
    gram = pts @ pts.T
    jbest = np.argmin(gram, axis=1)
    bracket = 2.0 * arcs.total / len(params)
    _, far = _refine_farthest(arcs, pts, params[jbest], bracket)
    shortfall = diam - far
    i_worst = int(np.argmax(shortfall))
    deviation = max(0.0, float(shortfall[i_worst]))
    witness = {"delta": diam, "worst_point": pts[i_worst],
               "worst_partner_distance": float(far[i_worst])}
    return Verdict(kind="constant_diameter", passed=deviation <= tol,
                   deviation=deviation, tolerance=tol, witness=witness)


def reduced_check(body: SphericalBody, tol: float = 1e-6, n: int = 720,
                  max_probes: int = 64) -> Verdict:
    """Necessary-condition screen for reducedness (heuristic, two parts).

    For each isolated extreme point e: (a) search for a lune of thickness
    equal to the body's thickness that contains the body with e at the
    midpoint of one bounding semicircle; (b) verify that slicing off a cap of
    depth 10*tol at e lowers the thickness by more than tol.  Bodies without
    isolated extreme points pass vacuously.  Bodies with more than max_probes
    corners are probed on an evenly spaced subset.
    """
    corner_idx = [k for k in range(len(body.segments))
                  if not body.segments[k].is_full_circle
                  and body._turns[k] > SMOOTH_TOL]
    if not corner_idx:
        return Verdict(kind="reduced_necessary", passed=True, deviation=0.0,
                       tolerance=tol, witness={"note": "boundary is smooth"})
    if len(corner_idx) > max_probes:
        sel = np.linspace(0, len(corner_idx) - 1, max_probes).astype(int)
        corner_idx = [corner_idx[i] for i in sorted(set(sel.tolist()))]
    thick = thickness(body, n).value
    dual = body.dual_arcs
    params, pts = _samples(dual, n)
    dual_diam = math.pi - thick
    corners = np.stack([body.segments[k].end for k in corner_idx])
    m = body.enclosing_center

    # (b) cap-cutting probe: removing depth d at corner e intersects the body
    # with a hemisphere whose center joins the dual; the new thickness is
    # pi - max(dual diameter, max dist from that center to the dual curve).
    depth = 10.0 * tol
    w_dir = normalize(m - (corners @ m)[:, None] * corners)
    cut_centers = -math.sin(depth) * corners + math.cos(depth) * w_dir
    dots = cut_centers @ pts.T
    jbest = np.argmin(dots, axis=1)
    bracket = 2.0 * dual.total / len(params)
    _, far = _refine_farthest(dual, cut_centers, params[jbest], bracket)
    drops = far - dual_diam
    bad = np.where(drops <= tol)[0]
    if len(bad):
        i = int(bad[0])
        return Verdict(kind="reduced_necessary", passed=False,
                       deviation=float(max(0.0, tol - drops[i])), tolerance=tol,
                       witness={"mode": "cap_cut", "corner": corners[i],
                                "thickness_drop": float(drops[i])})

    # (a) lune search: hemisphere centers supporting at e form a great arc
    # about e (a dual junction arc); pairing each with the center at angle
    # pi - thickness through e yields every candidate lune with e at a
    # semicircle midpoint.  The lune contains the body iff the partner
    # center's support minimum is nonnegative.
    row_of = {int(body._dual_jmap[r]): r for r in range(dual.count)
              if body._dual_jmap[r] >= 0}
    cos_t, sin_t = math.cos(thick), math.sin(thick)
    n_scan = 33
    worst = None
    for pos, k in enumerate(corner_idx):
        r = row_of.get(k)
        if r is None:
            continue  # turn below the dual's smoothness cut; treat as smooth
        e = corners[pos]
        lo, hi = dual.cum[r], dual.cum[r + 1]
        phis = np.linspace(lo, hi, n_scan)
        cand = -cos_t * dual.point_at(phis) + sin_t * e
        vals = body.support_min(cand)
        jb = int(np.argmax(vals))
        span = (hi - lo) / (n_scan - 1)

        def f(phi, e=e):
            c = -cos_t * dual.point_at(np.clip(phi, lo, hi)) + sin_t * e
            return body.support_min(c)

        _, best = golden_max(f, np.array([phis[jb] - span]),
                             np.array([phis[jb] + span]))
        best = float(best[0])
        if best < -tol:
            return Verdict(kind="reduced_necessary", passed=False,
                           deviation=float(-best), tolerance=tol,
                           witness={"mode": "lune_search", "corner": e,
                                    "support_margin": best})
        if worst is None or best < worst:
            worst = best
    return Verdict(kind="reduced_necessary", passed=True, deviation=0.0,
                   tolerance=tol,
                   witness={"probes": len(corner_idx),
                            "worst_support_margin": worst})


@dataclass
class ClassifyReport:
    """Bundle of metric results plus derived relations between them."""

    thickness: ThicknessResult
    diameter: DiameterResult
    constant_width: Verdict
    constant_diameter: Verdict
    reduced: Verdict
    checks: dict


def classify(body: SphericalBody, tol: float = 1e-6, n: int = 720) -> ClassifyReport:
    """Measure the body and evaluate the standard width/diameter relations.

    checks (True means the relation holds, vacuously when its hypothesis does
    not apply):
      thickness_le_diameter: thickness <= diameter always.
      halfpi_sign_agreement: for reduced bodies, thickness and diameter fall
        on the same side of pi/2.
      thickness_equals_diameter_above_halfpi: reduced bodies at least pi/2
        thick have thickness == diameter.
      constant_width_above_halfpi: reduced bodies with diameter >= pi/2 are
        constant-width.
    """
    th = thickness(body, n)
    dm = diameter(body, n)
    cw = is_constant_width(body, tol=tol, n=n)
    cd = is_constant_diameter(body, tol=tol, n=n)
    red = reduced_check(body, tol=tol, n=n)
    s1 = th.value - HALF_PI
    s2 = dm.value - HALF_PI
    sign_agree = (s1 >= -tol and s2 >= -tol) or (s1 <= tol and s2 <= tol)
    checks = {
        "thickness_le_diameter": bool(th.value <= dm.value + tol),
        "halfpi_sign_agreement": bool((not red.passed) or sign_agree),
        "thickness_equals_diameter_above_halfpi": bool(
            (not (red.passed and th.value >= HALF_PI - tol))
            or abs(th.value - dm.value) <= tol),
        "constant_width_above_halfpi": bool(
            (not (red.passed and dm.value >= HALF_PI - tol)) or cw.passed),
    }
    return ClassifyReport(thickness=th, diameter=dm, constant_width=cw,
                          constant_diameter=cd, reduced=red, checks=checks)
