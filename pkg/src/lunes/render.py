"""Deterministic SVG figures: orthographic sphere views and planar shapes.

Bodies are drawn looking along the view direction; boundary arcs on the far
hemisphere are dashed.  Output is byte-identical for identical inputs
(fixed sampling, fixed %.6f coordinate formatting, no timestamps).
"""

from __future__ import annotations

import math

import numpy as np

from .body import SphericalBody
from .sphere import normalize, orthonormal_frame
from .wulff import WulffShape

_SEG_SAMPLES = 96  # samples per boundary segment, fixed for determinism

_HEADER = ('<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}" '
           'width="512" height="512">\n')
_STYLE = ('<style>\n'
          '.outline{fill:none;stroke:#999;stroke-width:0.006}\n'
          '.boundary{fill:none;stroke:#000;stroke-width:0.01}\n'
          '.boundary-hidden{fill:none;stroke:#000;stroke-width:0.006;'
          'stroke-dasharray:0.03 0.02}\n'
          '.overlay{fill:none;stroke:#c00;stroke-width:0.008;'
          'stroke-dasharray:0.02 0.015}\n'
          '.marker{fill:#c00;stroke:none}\n'
          '</style>\n')


def _fmt(x: float) -> str:
    v = 0.0 if abs(x) < 5e-7 else x  # avoid "-0.000000"
    return f"{v:.6f}"


def _path(points_2d, cls: str) -> str:
    cmds = []
    for i, (x, y) in enumerate(points_2d):
        cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(x)} {_fmt(-y)}")
    return f'<path class="{cls}" d="{" ".join(cmds)}"/>\n'


def _segment_points(seg, n: int) -> np.ndarray:
    u = seg.start - math.cos(seg.radius) * seg.center
    u = u / np.linalg.norm(u)
    v = np.cross(seg.center, u)
    if seg.is_full_circle:
        sweep = 2.0 * math.pi
    else:
        e = seg.end - math.cos(seg.radius) * seg.center
        e = e / np.linalg.norm(e)
        sweep = math.atan2(float(e @ v), float(e @ u)) % (2.0 * math.pi)
    t = np.linspace(0.0, sweep, n)
    rim = np.cos(t)[:, None] * u + np.sin(t)[:, None] * v
    return math.cos(seg.radius) * seg.center + math.sin(seg.radius) * rim


def _runs(mask: np.ndarray):
    """Consecutive index runs of equal mask value, as (value, slice) pairs."""
    edges = np.flatnonzero(np.diff(mask.astype(int))) + 1
    starts = np.concatenate([[0], edges])
    ends = np.concatenate([edges, [len(mask)]])
    return [(bool(mask[s]), slice(s, e)) for s, e in zip(starts, ends)]


def _sphere_svg(body: SphericalBody, view: np.ndarray,
                chords=(), points=()) -> str:
    w = normalize(np.asarray(view, dtype=float))
    u, v = orthonormal_frame(w)
    out = [_HEADER.format(vb="-1.1 -1.1 2.2 2.2"), _STYLE]
    circle = np.linspace(0.0, 2.0 * math.pi, 181)
    out.append(_path(np.column_stack([np.cos(circle), np.sin(circle)]),
                     "outline"))
    for seg in body.segments:
        pts = _segment_points(seg, _SEG_SAMPLES)
        xy = np.column_stack([pts @ u, pts @ v])
        visible = pts @ w >= 0.0
        for vis, sl in _runs(visible):
            if sl.stop - sl.start < 2:
                continue
            out.append(_path(xy[sl], "boundary" if vis else "boundary-hidden"))
    for a, b in chords:
        a = normalize(np.asarray(a, dtype=float))
        b = normalize(np.asarray(b, dtype=float))
        t = np.linspace(0.0, 1.0, 33)[:, None]
        line = normalize((1.0 - t) * a + t * b)
        out.append(_path(np.column_stack([line @ u, line @ v]), "overlay"))
    for p in points:
        p = normalize(np.asarray(p, dtype=float))
        if float(p @ w) >= 0.0:
            out.append(f'<circle class="marker" cx="{_fmt(float(p @ u))}" '
                       f'cy="{_fmt(-float(p @ v))}" r="0.02"/>\n')
    out.append("</svg>\n")
    return "".join(out)


def _shape_svg(shape: WulffShape) -> str:
    span = 1.1 * float(np.max(np.abs(shape.vertices)))
    span = max(span, 1e-6)
    vb = f"{_fmt(-span)} {_fmt(-span)} {_fmt(2 * span)} {_fmt(2 * span)}"
    out = [_HEADER.format(vb=vb), _STYLE]
    closed = np.vstack([shape.vertices, shape.vertices[:1]])
    out.append(_path(closed, "boundary"))
    out.append(f'<circle class="marker" cx="0.000000" cy="0.000000" '
               f'r="{_fmt(span / 60.0)}"/>\n')
    out.append("</svg>\n")
    return "".join(out)


def render_svg(obj, view, path: str, chords=(), points=()) -> None:
    """Write an SVG of a SphericalBody (orthographic along view, hidden arcs
    dashed) or a WulffShape (view ignored); optional great-arc chords and
    point markers are drawn as overlays."""
    if isinstance(obj, WulffShape):
        text = _shape_svg(obj)
    elif isinstance(obj, SphericalBody):
        text = _sphere_svg(obj, view, chords=chords, points=points)
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
