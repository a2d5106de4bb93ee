"""Acceptance gate: one test per headline guarantee of the package.

Each test wraps its assertions in the `criterion` context manager from
conftest, which echoes a PASS/FAIL line per criterion into the terminal
summary.  Tolerances here are the published accuracy contract; loosening
them is an API change, not a test fix.
"""

import math

import numpy as np
import pytest
from conftest import (cap_points, criterion, random_cd_gon_vertices,
                      random_cd_triangle_vertices, random_unit)

from lunes import body as bd
from lunes import construct, metrics, sphere, wulff

HALF_PI = math.pi / 2
Z = np.array([0.0, 0.0, 1.0])


def lune_thickness_by_definition(g, h):
    """Distance between the midpoints of the two bounding semicircles."""
    mid_g = sphere.normalize(h - (h @ g) * g)
    mid_h = sphere.normalize(g - (g @ h) * h)
    return sphere.dist(mid_g, mid_h)


def varied_polygons(first_seed, count, n_lo=4, n_span=6,
                    diam_lo=0.5, diam_steps=10):
    for seed in range(first_seed, first_seed + count):
        yield construct.random_convex_polygon(
            seed, n=n_lo + seed % n_span,
            max_diam=diam_lo + 0.1 * (seed % diam_steps))


def test_01_lune_thickness_closed_form():
    with criterion(1, "lune thickness closed form matches the "
                      "midpoint-distance definition (1e-10)"):
        rng = np.random.default_rng(101)
        done = 0
        while done < 1000:
            g, h = random_unit(rng), random_unit(rng)
            if abs(g @ h) > 1.0 - 1e-6:
                continue
            lune = sphere.lune_make(g, h)
            want = lune_thickness_by_definition(g, h)
            assert lune.thickness == pytest.approx(want, abs=1e-10)
            assert lune.thickness == pytest.approx(
                math.pi - sphere.dist(g, h), abs=1e-10)
            done += 1


def test_02_hemisphere_halves_into_half_pi_lunes():
    with criterion(2, "a great circle through a hemisphere center cuts it "
                      "into two lunes of thickness pi/2 (1e-10)"):
        rng = np.random.default_rng(102)
        for _ in range(100):
            c = random_unit(rng)
            v = random_unit(rng)
            h = sphere.normalize(v - (v @ c) * c)
            for pole in (h, -h):
                lune = sphere.lune_make(c, pole)
                assert lune.thickness == pytest.approx(HALF_PI, abs=1e-10)


def test_03_thickness_bounded_by_diameter():
    with criterion(3, "thickness <= diameter on random polygons; equality "
                      "at or below pi/2 implies constant width"):
        for poly in varied_polygons(0, 200, diam_lo=0.5, diam_steps=10):
            th = metrics.thickness(poly, n=360).value
            dm = metrics.diameter(poly, n=360).value
            assert th <= dm + 1e-8
            if abs(th - dm) <= 1e-8 and dm <= HALF_PI + 1e-8:
                assert metrics.is_constant_width(poly, tol=1e-6,
                                                 n=360).passed


def test_04_constant_diameter_triangles():
    with criterion(4, "triangles completed with balanced corner arcs have "
                      "diameter pi/2 and constant width (1e-6)"):
        rng = np.random.default_rng(104)
        for _ in range(50):
            v = random_cd_triangle_vertices(rng)
            body = construct.constant_diameter_triangle(v[0], v[1], v[2])
            assert metrics.diameter(body, n=720).value == pytest.approx(
                HALF_PI, abs=1e-6)
            assert metrics.is_constant_diameter(body, tol=1e-6, n=360).passed
            assert metrics.is_constant_width(body, tol=1e-6, n=360).passed

        # equilateral: all corner radii collapse to (pi/2 - side)/2
        eq = construct.regular_polygon_vertices(3, 0.5)
        spec = construct.solve_corner_radii(eq)
        side = sphere.dist(spec.vertices[0], spec.vertices[1])
        for s in spec.corner_radii:
            assert s == pytest.approx(math.pi / 4 - side / 2, abs=1e-13)

        # coordinate-axis vertices: the corner arcs vanish entirely
        octant = bd.polygon_from_vertices(np.eye(3))
        built = construct.constant_diameter_triangle(*np.eye(3))
        assert bd.hausdorff_bodies(octant, built, n=360) <= 1e-9


def test_05_constant_diameter_odd_gons():
    with criterion(5, "odd-gon corner radii satisfy the diagonal balance "
                      "and give diameter pi/2 (1e-6)"):
        rng = np.random.default_rng(105)
        for n, cap_rad in [(5, 0.55)] * 10 + [(7, 0.45)] * 10:
            v = random_cd_gon_vertices(rng, n, cap_rad)
            spec = construct.solve_corner_radii(v)
            m = (n - 1) // 2
            for i in range(n):
                kappa = sphere.dist(spec.vertices[i],
                                    spec.vertices[(i + m) % n])
                res = (spec.corner_radii[i] + kappa
                       + spec.corner_radii[(i + m) % n] - HALF_PI)
                assert abs(res) < 1e-12
            body = construct.constant_diameter_odd_gon(v)
            assert metrics.diameter(body, n=360).value == pytest.approx(
                HALF_PI, abs=1e-6)

        # the 3-gon route reproduces the dedicated triangle constructor
        v3 = random_cd_triangle_vertices(rng)
        a = construct.constant_diameter_odd_gon(v3)
        b = construct.constant_diameter_triangle(v3[0], v3[1], v3[2])
        assert bd.hausdorff_bodies(a, b, n=240) <= 1e-12


def test_06_reduced_sign_agreement(regular_gons):
    with criterion(6, "on reduced bodies, thickness and diameter sit on the "
                      "same side of pi/2 (1e-6 slack)"):
        corpus = list(regular_gons.values()) + [
            construct.cap(Z, 0.3), construct.cap(Z, math.pi / 4),
            construct.cap(Z, 1.0)]
        for body in corpus:
            red = metrics.reduced_check(body, tol=1e-6, n=360)
            assert red.passed
            th = metrics.thickness(body, n=360).value
            dm = metrics.diameter(body, n=360).value
            if th > HALF_PI + 1e-6:
                assert dm > HALF_PI
            if th < HALF_PI - 1e-6:
                assert dm < HALF_PI + 1e-6
            if th >= HALF_PI - 1e-6:
                assert metrics.is_constant_width(body, tol=1e-6, n=360).passed
                assert th == pytest.approx(dm, abs=1e-6)
            if th < HALF_PI - 0.05:
                assert dm < HALF_PI - 1e-6


def test_07_half_pi_equivalences(quarter_cap, cd_triangle, regular_gons,
                                 random_polygons):
    with criterion(7, "constant width pi/2, reduced at thickness pi/2, "
                      "reduced at diameter pi/2, and constant diameter pi/2 "
                      "hold or fail together"):
        rng = np.random.default_rng(107)
        cd_gon = construct.constant_diameter_odd_gon(
            random_cd_gon_vertices(rng, 5, 0.55))
        positives = [quarter_cap, cd_triangle, cd_gon] + [
            regular_gons[(n, HALF_PI)] for n in (3, 5, 7)]
        negatives = [construct.cap(Z, 0.3), construct.cap(Z, 1.0)] + [
            regular_gons[(n, t)] for n in (3, 5, 7)
            for t in (0.6, 1.0, 1.4)] + list(random_polygons)

        def four_conditions(body):
            th = metrics.thickness(body, n=360).value
            dm = metrics.diameter(body, n=360).value
            cw = metrics.is_constant_width(body, tol=1e-6, n=360).passed
            cd = metrics.is_constant_diameter(body, tol=1e-6, n=360).passed
            red = metrics.reduced_check(body, tol=1e-6, n=360).passed
            near = lambda x: abs(x - HALF_PI) <= 1e-6
            return [cw and near(th), red and near(th),
                    red and near(dm), cd and near(dm)]

        for body in positives:
            assert all(four_conditions(body))
        for body in negatives:
            assert not any(four_conditions(body))


def test_08_unit_gamma_and_square():
    with criterion(8, "unit gamma is self-dual and induces the quarter cap; "
                      "the square is not self-dual"):
        disk = wulff.wulff_shape(wulff.GammaFn.constant(1.0), n=4096)
        sd, gap = wulff.is_self_dual(disk, tol=1e-6, n=4096)
        assert sd and gap <= 1e-6
        frame = wulff.frame_at(Z)
        induced = wulff.induce_spherical(disk, frame, n=4096)
        want = construct.cap(Z, math.pi / 4)
        assert bd.hausdorff_bodies(induced, want, n=720) <= 1e-6

        square = wulff.WulffShape([[1.0, 1.0], [-1.0, 1.0],
                                   [-1.0, -1.0], [1.0, -1.0]])
        sd, gap = wulff.is_self_dual(square, tol=1e-6, n=720)
        assert not sd and gap > 0.1
        ind = wulff.induce_spherical(square, frame, n=720)
        assert metrics.diameter(ind, n=720).value == pytest.approx(
            2.0 * math.atan(math.sqrt(2.0)), abs=1e-6)


def test_09_self_duality_decision(random_polygons):
    with criterion(9, "constant-diameter bodies project to self-dual Wulff "
                      "shapes and random bodies do not, with the full "
                      "equivalence report agreeing (tol 1e-4)"):
        rng = np.random.default_rng(109)
        for _ in range(20):
            v = random_cd_triangle_vertices(rng)
            body = construct.constant_diameter_triangle(v[0], v[1], v[2])
            frame = wulff.frame_at(body.enclosing_center)
            shape = wulff.project_to_plane(body, frame, n=720)
            rep = wulff.self_dual_equivalence_report(
                shape, frame, tol=1e-4, n=720, dual_n=2880)
            assert all(rep.booleans), rep.booleans

        negatives = list(random_polygons) + list(
            varied_polygons(100, 8, diam_lo=0.5, diam_steps=7))
        for body in negatives:
            frame = wulff.frame_at(body.enclosing_center)
            shape = wulff.project_to_plane(body, frame, n=720)
            rep = wulff.self_dual_equivalence_report(
                shape, frame, tol=1e-4, n=720, dual_n=2880)
            assert not any(rep.booleans), rep.booleans


def test_10_projection_round_trip():
    with criterion(10, "project/induce round trip is lossless (1e-9) and "
                       "the double dual returns the Wulff shape (5e-3)"):
        for poly in varied_polygons(200, 50, diam_lo=0.5, diam_steps=9):
            frame = wulff.frame_at(poly.enclosing_center)
            shape = wulff.project_to_plane(poly, frame, n=1024)
            back = wulff.induce_spherical(shape, frame, n=1024)
            assert bd.hausdorff_bodies(poly, back, n=1024) <= 1e-9
            # the uniform-grid sampled dual resolves kinks at O(1/n); 5760
            # gives an 8x margin on this corpus (worst observed 6.1e-4)
            ddw = wulff.dual_wulff(wulff.dual_wulff(shape, n=5760), n=5760)
            assert wulff.hausdorff_polygons(shape, ddw) <= 5e-3


def test_11_duality_and_width_consistency():
    with criterion(11, "thickness plus polar-dual diameter equals pi "
                       "(1e-6); width routes agree at every support"):
        polys = list(varied_polygons(300, 100, diam_lo=0.4, diam_steps=9))
        for poly in polys:
            th = metrics.thickness(poly, n=720).value
            dm = metrics.diameter(bd.polar_dual(poly), n=720).value
            assert th + dm == pytest.approx(math.pi, abs=1e-6)
        for poly in polys[:25]:
            for c in bd.supporting_hemisphere_centers(poly, n=16):
                w = metrics.width_at(poly, c, n=720)
                assert 0.0 < w.width <= math.pi
