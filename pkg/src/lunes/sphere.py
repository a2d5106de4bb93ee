"""Primitives on the unit sphere: distances, arcs, hemispheres and lunes.

All points are unit vectors in E^3 stored as numpy arrays of shape (3,).
Angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateArc, DegenerateLune

UNIT_TOL = 1e-12
# below this separation (or above pi minus it) paired points stop defining
# a great circle / lune reliably
DEGENERATE_TOL = 1e-9


def normalize(v) -> np.ndarray:
    """Return v scaled to unit length (works on batches along the last axis)."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n < 1e-15):
        raise ValueError("cannot normalize a zero vector")
    return v / n


def unit_vec(x: float, y: float, z: float) -> np.ndarray:
    """Build a unit vector from components, normalizing the input."""
    return normalize(np.array([x, y, z], dtype=float))


def dist(a, b):
    """Great-circle distance in [0, pi].

    Uses atan2(|a x b|, a.b), which stays accurate near 0 and near pi
    where acos of a dot product loses digits.  Broadcasts over leading axes.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cr = np.cross(a, b)
    s = np.linalg.norm(cr, axis=-1)
    c = np.sum(a * b, axis=-1)
    return np.arctan2(s, c)


def antipode(a) -> np.ndarray:
    """The point diametrically opposite a."""
    return -np.asarray(a, dtype=float)


def geodesic_point(a, b, t: float) -> np.ndarray:
    """Point at parameter t in [0, 1] along the minor arc from a to b.

    Raises DegenerateArc when a and b coincide or are antipodal, since the
    connecting arc is then not unique.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.linalg.norm(a - b) < DEGENERATE_TOL or np.linalg.norm(a + b) < DEGENERATE_TOL:
        raise DegenerateArc("arc endpoints coincide or are antipodal")
    ang = float(dist(a, b))
    s = math.sin(ang)
    p = (math.sin((1.0 - t) * ang) * a + math.sin(t * ang) * b) / s
    return normalize(p)


@dataclass(frozen=True)
class GreatArc:
    """Minor great-circle arc between two non-equal, non-antipodal points."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", normalize(self.a))
        object.__setattr__(self, "b", normalize(self.b))
        if np.linalg.norm(self.a - self.b) < DEGENERATE_TOL:
            raise DegenerateArc("arc endpoints coincide")
        if np.linalg.norm(self.a + self.b) < DEGENERATE_TOL:
            raise DegenerateArc("arc endpoints are antipodal")

    @property
    def length(self) -> float:
        return float(dist(self.a, self.b))

    def point(self, t: float) -> np.ndarray:
        return geodesic_point(self.a, self.b, t)


@dataclass(frozen=True)
class Hemisphere:
    """Closed half-sphere {p : p . center >= 0}."""

    center: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "center", normalize(self.center))

    def contains(self, p, tol: float = 1e-12) -> bool:
        return bool(np.dot(np.asarray(p, dtype=float), self.center) >= -tol)


@dataclass(frozen=True)
class Lune:
    """Intersection of two hemispheres G and H with distinct, non-opposite centers.

    corners: the two points where the bounding great circles cross.
    mid_g:   midpoint of the bounding semicircle lying on bd(G).
    mid_h:   midpoint of the bounding semicircle lying on bd(H).
    thickness: distance between the two semicircle midpoints, in (0, pi).
    """

    g: Hemisphere
    h: Hemisphere
    corners: tuple
    mid_g: np.ndarray
    mid_h: np.ndarray
    thickness: float


def lune_make(g, h) -> Lune:
    """Build the lune G intersect H from two hemispheres (or their centers).

    The midpoint of the semicircle bd(G) inside H is the point of bd(G)
    maximizing the dot product with h's center, i.e. the normalized
    projection of h's center onto the plane of bd(G); symmetrically for H.
    """
    if not isinstance(g, Hemisphere):
        g = Hemisphere(np.asarray(g, dtype=float))
    if not isinstance(h, Hemisphere):
        h = Hemisphere(np.asarray(h, dtype=float))
    cg, ch = g.center, h.center
    ang = float(dist(cg, ch))
    if ang < DEGENERATE_TOL or ang > math.pi - DEGENERATE_TOL:
        raise DegenerateLune("hemisphere centers equal or antipodal")
    corner = normalize(np.cross(cg, ch))
    d = float(np.dot(cg, ch))
    mid_g = normalize(ch - d * cg)
    mid_h = normalize(cg - d * ch)
    thickness = float(dist(mid_g, mid_h))
    return Lune(g=g, h=h, corners=(corner, -corner), mid_g=mid_g, mid_h=mid_h,
                thickness=thickness)


def lune_contains(lune: Lune, body, tol: float = 1e-10) -> bool:
    """True when the body lies inside both hemispheres of the lune.

    `body` is anything exposing support_min(directions) -> min dot over the body.
    """
    dirs = np.stack([lune.g.center, lune.h.center])
    return bool(np.all(body.support_min(dirs) >= -tol))


def orthonormal_frame(n) -> tuple:
    """Deterministic right-handed tangent basis (u, v) with u x v = n."""
    n = normalize(n)
    ref = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = normalize(np.cross(ref, n))
    v = np.cross(n, u)
    return u, v
