"""Shared fixtures: reference bodies, random-corpus generators, acceptance log."""

from __future__ import annotations

import contextlib
import math

import numpy as np
import pytest

from lunes import body as bd
from lunes import construct
from lunes.errors import LunesError

HALF_PI = math.pi / 2

# One line per acceptance criterion, echoed in the terminal summary so the
# pass/fail status of each is visible even when every test passes.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@contextlib.contextmanager
def criterion(num: int, text: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  criterion {num:2d}: {text}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  criterion {num:2d}: {text}")


# -- random generators -------------------------------------------------------


def cap_points(rng: np.random.Generator, k: int, cap_rad: float) -> np.ndarray:
    """k points uniform on the cap of the given radius around the z-axis."""
    z = rng.uniform(math.cos(cap_rad), 1.0, size=k)
    az = rng.uniform(0.0, 2 * math.pi, size=k)
    r = np.sqrt(1.0 - z ** 2)
    return np.c_[r * np.cos(az), r * np.sin(az), z]


def random_unit(rng: np.random.Generator, k: int | None = None) -> np.ndarray:
    v = rng.normal(size=3 if k is None else (k, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_cd_triangle_vertices(rng: np.random.Generator,
                                cap_rad: float = math.pi / 4) -> np.ndarray:
    """Vertex triple in the cap, rejection-sampled until all corner radii >= 0."""
    while True:
        v = cap_points(rng, 3, cap_rad)
        try:
            construct.solve_corner_radii(v)
        except LunesError:
            continue
        return v


def random_cd_gon_vertices(rng: np.random.Generator, n: int, cap_rad: float,
                           min_gap: float = 0.15) -> np.ndarray:
    """n-gon vertices in convex position with a solvable corner-radius system."""
    while True:
        az = np.sort(rng.uniform(0.0, 2 * math.pi, size=n))
        gaps = np.diff(np.concatenate([az, [az[0] + 2 * math.pi]]))
        if gaps.min() < min_gap:
            continue
        pol = rng.uniform(0.3 * cap_rad, cap_rad, size=n)
        v = np.c_[np.sin(pol) * np.cos(az), np.sin(pol) * np.sin(az),
                  np.cos(pol)]
        try:
            construct.solve_corner_radii(v)
        except LunesError:
            continue
        return v


# -- shared reference bodies --------------------------------------------------


@pytest.fixture(scope="session")
def octant():
    return bd.polygon_from_vertices(np.eye(3))


@pytest.fixture(scope="session")
def quarter_cap():
    return construct.cap(np.array([0.0, 0.0, 1.0]), math.pi / 4)


@pytest.fixture(scope="session")
def cd_triangle():
    """One fixed nontrivial constant-diameter triangle body (all radii > 0)."""
    rng = np.random.default_rng(42)
    v = random_cd_triangle_vertices(rng)
    return construct.constant_diameter_triangle(v[0], v[1], v[2])


@pytest.fixture(scope="session")
def regular_gons():
    """Regular odd-gons for the thickness sweep, built once per session."""
    out = {}
    for n in (3, 5, 7):
        for tgt in (0.6, 1.0, 1.4, HALF_PI):
            out[(n, tgt)] = construct.regular_odd_gon(n, tgt)
    return out


@pytest.fixture(scope="session")
def random_polygons():
    """A shared batch of deterministic random convex polygons."""
    return [construct.random_convex_polygon(seed, n=4 + seed % 5,
                                            max_diam=0.6 + 0.1 * (seed % 7))
            for seed in range(12)]
