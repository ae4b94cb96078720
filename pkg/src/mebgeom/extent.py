"""Diameter, width, hull facets and the Chebyshev inball of point sets.

Width and inradius are exact for ``d <= 3`` and for simplex vertex sets in any
dimension. Elsewhere the width is a sampled upper bound flagged as inexact and
the inradius is left undefined.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np
import scipy.optimize
import scipy.spatial

from . import _kernels
from .errors import (
    DegenerateHull,
    Infeasible,
    NumericalFault,
    Unbounded,
    Undefined,
    UnsupportedDimension,
)
from .meb import minimum_enclosing_ball
from .simplex import Ball
from .tolerance import DEFAULT_TOL, Tolerance, as_points

SAMPLED_DIRECTIONS = 4000


@dataclass(frozen=True)
class Halfspace:
    """Points ``x`` with ``<normal, x> <= offset``; ``normal`` has unit length."""

    normal: np.ndarray
    offset: float

    def violation(self, x) -> float:
        return float(np.dot(self.normal, x) - self.offset)


@dataclass(frozen=True)
class DiameterResult:
    value: float
    pair: tuple[int, int]
    shortest: float
    shortest_pair: tuple[int, int]


def diameter(points) -> DiameterResult:
    pts = as_points(points)
    if pts.shape[0] < 2:
        raise Undefined("diameter needs at least 2 points")
    hi, i, j, lo, k, l = _kernels.pairwise_extremes(pts)
    return DiameterResult(sqrt(hi), (int(i), int(j)), sqrt(lo), (int(k), int(l)))


def affine_rank(pts: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    diffs = pts[1:] - pts[0]
    if diffs.size == 0:
        return 0
    s = np.linalg.svd(diffs, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rel_eps * s[0]))


def is_simplex_set(pts: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    n, d = pts.shape
    return n == d + 1 and affine_rank(pts, tol) == d


def _unit_normal(rows: np.ndarray, d: int) -> np.ndarray:
    """A unit vector orthogonal to every row of ``rows`` (shape ``(d-1, d)``)."""
    if rows.shape[0] == 0:
        return np.eye(d)[0]
    _, _, vt = np.linalg.svd(rows)
    return vt[-1]


def _simplex_facets(pts: np.ndarray) -> list[Halfspace]:
    d = pts.shape[1]
    out = []
    for i in range(d + 1):
        face = np.delete(pts, i, axis=0)
        u = _unit_normal(face[1:] - face[0], d)
        off = float(u @ face[0])
        if u @ pts[i] > off:
            u, off = -u, -off
        out.append(Halfspace(u, off))
    return out


def convex_hull_facets(points, tol: Tolerance = DEFAULT_TOL) -> list[Halfspace]:
    pts = as_points(points)
    n, d = pts.shape
    if n < d + 1 or affine_rank(pts, tol) < d:
        raise DegenerateHull("hull is not full-dimensional")
    if n == d + 1:
        return _simplex_facets(pts)
    if d == 1:
        return [Halfspace(np.array([-1.0]), -float(pts.min())), Halfspace(np.array([1.0]), float(pts.max()))]
    if d > 3:
        raise UnsupportedDimension(f"hull facets supported for d <= 3 or simplices, got d={d}")
    hull = scipy.spatial.ConvexHull(pts)
    merged: list[Halfspace] = []
    for eq in hull.equations:
        normal, off = eq[:-1], -eq[-1]
        normal_len = np.linalg.norm(normal)
        normal, off = normal / normal_len, off / normal_len
        if not any(
            np.allclose(h.normal, normal, rtol=0, atol=tol.rel_eps * 10)
            and tol.close(h.offset, off)
            for h in merged
        ):
            merged.append(Halfspace(normal, float(off)))
    return merged


@dataclass(frozen=True)
class WidthResult:
    value: float
    direction: np.ndarray
    exact: bool


def simplex_width(points) -> WidthResult:
    """Exact width of a full-dimensional simplex in any dimension.

    Every bipartition of the vertices into two faces fixes one direction
    orthogonal to both faces; the width is the smallest extent over these.
    """
    pts = as_points(points)
    n, d = pts.shape
    dirs = []
    others = range(1, n)
    for size in range(0, n - 1):
        for rest in combinations(others, size):
            side_a = [0, *rest]
            side_b = [i for i in range(n) if i not in side_a]
            rows = np.vstack(
                [pts[side_a[1:]] - pts[side_a[0]], pts[side_b[1:]] - pts[side_b[0]]]
            )
            dirs.append(_unit_normal(rows, d))
    dirs = np.array(dirs)
    ext = _kernels.directional_extents(pts, dirs)
    best = int(np.argmin(ext))
    return WidthResult(float(ext[best]), dirs[best], True)


def _hull_width(pts: np.ndarray, tol: Tolerance) -> WidthResult:
    d = pts.shape[1]
    if d == 1:
        return WidthResult(float(pts.max() - pts.min()), np.array([1.0]), True)
    hull = scipy.spatial.ConvexHull(pts)
    verts = pts[hull.vertices]
    dirs = [eq[:-1] / np.linalg.norm(eq[:-1]) for eq in hull.equations]
    if d == 3:
        edges = set()
        for tri in hull.simplices:
            for a, b in combinations(sorted(tri), 2):
                edges.add((a, b))
        vecs = np.array([pts[b] - pts[a] for a, b in sorted(edges)])
        vecs /= np.linalg.norm(vecs, axis=1)[:, None]
        ia, ib = np.triu_indices(len(vecs), k=1)
        cross = np.cross(vecs[ia], vecs[ib])
        norms = np.linalg.norm(cross, axis=1)
        keep = norms > 1e-9
        dirs.extend(cross[keep] / norms[keep][:, None])
    dirs = np.array(dirs)
    ext = _kernels.directional_extents(verts, dirs)
    best = int(np.argmin(ext))
    return WidthResult(float(ext[best]), dirs[best], True)


def sampled_width(points, seed: int = 0, samples: int = SAMPLED_DIRECTIONS) -> WidthResult:
    """Upper bound on the width from random directions plus local refinement."""
    pts = as_points(points)
    d = pts.shape[1]
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((samples, d))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    ext = _kernels.directional_extents(pts, dirs)

    def extent(u):
        u = u / np.linalg.norm(u)
        return float(_kernels.directional_extents(pts, u[None, :])[0])

    best_val, best_dir = np.inf, dirs[0]
    for start in np.argsort(ext)[:5]:
        res = scipy.optimize.minimize(
            extent, dirs[start], method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000 * d},
        )
        cand = res.x / np.linalg.norm(res.x)
        val = extent(cand)
        if ext[start] < val:
            val, cand = float(ext[start]), dirs[start]
        if val < best_val:
            best_val, best_dir = val, cand
    return WidthResult(best_val, best_dir, False)


def width(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> WidthResult:
    pts = as_points(points)
    n, d = pts.shape
    if n < 2:
        raise Undefined("width needs at least 2 points")
    if affine_rank(pts, tol) < d:
        # flat set: any normal of its affine hull gives zero extent
        diffs = pts[1:] - pts[0]
        _, _, vt = np.linalg.svd(np.vstack([diffs, np.zeros((d, d))]))
        u = vt[-1]
        return WidthResult(0.0, u, True)
    if n == d + 1:
        return simplex_width(pts)
    if d <= 3:
        return _hull_width(pts, tol)
    return sampled_width(pts, seed)


def chebyshev_inball(facets, tol: Tolerance = DEFAULT_TOL) -> Ball:
    """Largest ball inside the intersection of halfspaces (a linear program)."""
    facets = list(facets)
    if not facets:
        raise Unbounded("no halfspaces given")
    A = np.array([h.normal for h in facets], dtype=float)
    b = np.array([h.offset for h in facets], dtype=float)
    norms = np.linalg.norm(A, axis=1)
    m, d = A.shape
    A_ub = np.hstack([A, norms[:, None]])
    cost = np.zeros(d + 1)
    cost[-1] = -1.0
    res = scipy.optimize.linprog(
        cost, A_ub=A_ub, b_ub=b, bounds=[(None, None)] * d + [(0, None)], method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status == 2:
        raise Infeasible("halfspaces have empty intersection")
    if res.status == 3:
        raise Unbounded("halfspace intersection is unbounded")
    if res.status != 0:
        raise NumericalFault(f"LP failed: {res.message}")
    x = res.x
    # polish: re-solve the tight constraints exactly
    scale = max(1.0, float(np.max(np.abs(b))))
    active = np.flatnonzero(b - A_ub @ x <= 1e-7 * scale)
    if active.size >= d + 1:
        polished = np.linalg.lstsq(A_ub[active], b[active], rcond=None)[0]
        if np.all(A_ub @ polished <= b + tol.slack(scale)) and polished[-1] >= x[-1] - 1e-9 * scale:
            x = polished
    return Ball(x[:d], max(0.0, float(x[-1])))


@dataclass(frozen=True)
class ExtentProfile:
    circumradius: float
    inradius: float | None
    diameter: float
    width: float
    width_exact: bool
    diameter_pair: tuple[int, int]
    width_direction: np.ndarray
    shortest: float
    circumcenter: np.ndarray
    incenter: np.ndarray | None = None

    def eggleston(self) -> list[tuple[str, float, float]]:
        """The six implied ``lhs <= rhs`` relations as ``(name, lhs, rhs)``.

        Relations involving an unavailable inradius are omitted.
        """
        rows = [
            ("diam <= 2 circumradius", self.diameter, 2 * self.circumradius),
            ("width <= diam", self.width, self.diameter),
            ("width <= 2 circumradius", self.width, 2 * self.circumradius),
        ]
        if self.inradius is not None:
            rows[:0] = [
                ("inradius <= circumradius", self.inradius, self.circumradius),
                ("inradius <= width / 2", self.inradius, self.width / 2),
            ]
            rows.append(("inradius <= diam / 2", self.inradius, self.diameter / 2))
        return rows


def extent_profile(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL, check: bool = True) -> ExtentProfile:
    pts = as_points(points)
    n, d = pts.shape
    if n < 2:
        raise Undefined("extent profile needs at least 2 points")
    mb = minimum_enclosing_ball(pts, seed, tol)
    diam = diameter(pts)
    w = width(pts, seed, tol)
    incenter = None
    if affine_rank(pts, tol) < d:
        inr = 0.0
    elif d <= 3 or n == d + 1:
        ball = chebyshev_inball(convex_hull_facets(pts, tol), tol)
        inr, incenter = ball.radius, ball.center
    else:
        inr = None
    prof = ExtentProfile(
        circumradius=mb.radius,
        inradius=inr,
        diameter=diam.value,
        width=w.value,
        width_exact=w.exact,
        diameter_pair=diam.pair,
        width_direction=w.direction,
        shortest=diam.shortest,
        circumcenter=mb.center,
        incenter=incenter,
    )
    if check:
        for name, lhs, rhs in prof.eggleston():
            if not tol.leq(lhs, rhs):
                raise NumericalFault(f"{name} violated: {lhs!r} > {rhs!r}")
    return prof
