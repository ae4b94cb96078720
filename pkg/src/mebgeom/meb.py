"""Exact minimum enclosing ball of a finite point set.

The solver is Welzl's randomized incremental algorithm in its move-to-front
form; the oracle enumerates every affinely independent subset of at most
``d + 1`` points and keeps the smallest enclosing circumball.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .errors import DegenerateSupport, EmptyInput, GeometryError, InstanceTooLarge
from .simplex import Ball, affine_weights, circumball_of_support, most_dependent_index
from .tolerance import DEFAULT_TOL, Tolerance, as_points

log = logging.getLogger(__name__)

ORACLE_MAX_POINTS = 40
ORACLE_MAX_DIM = 6
ORACLE_MAX_SUBSETS = 5_000_000

# inside test used while building the ball; much tighter than the reporting tolerance
_INNER_REL = 1e-12
_WEIGHT_EPS = 1e-10
_MAX_RESTARTS = 8


@dataclass
class MebResult:
    ball: Ball
    support: list[int]
    iterations: int
    certified: bool = True

    @property
    def radius(self) -> float:
        return self.ball.radius

    @property
    def center(self) -> np.ndarray:
        return self.ball.center


@dataclass(frozen=True)
class EnclosureReport:
    max_violation: float
    violating_index: int | None
    enclosed: bool


def verify_enclosure(ball: Ball, points, tol: Tolerance = DEFAULT_TOL) -> EnclosureReport:
    """Largest ``|p - c| - r`` over the points; nonpositive (within tol) means enclosed."""
    pts = as_points(points)
    if pts.shape[1] != ball.dim:
        raise GeometryError(f"ball has dimension {ball.dim}, points have {pts.shape[1]}")
    excess = np.linalg.norm(pts - ball.center, axis=1) - ball.radius
    worst = int(np.argmax(excess))
    viol = float(excess[worst])
    enclosed = viol <= tol.slack(max(1.0, ball.radius))
    return EnclosureReport(viol, None if enclosed else worst, enclosed)


def _support_ball(pts, support, tol):
    """Circumball of ``support``; drops dependent points in place until it exists."""
    while True:
        try:
            return circumball_of_support(pts[support], tol)
        except DegenerateSupport:
            drop = most_dependent_index(pts[support])
            log.debug("dropping dependent support point %d", support[drop])
            del support[drop]


class _MoveToFront:
    def __init__(self, pts, order, tol):
        self.pts = pts
        self.order = order
        self.tol = tol
        self.dim = pts.shape[1]
        self.calls = 0

    def run(self, end, support):
        # recursion depth is bounded by d + 2: every level adds one support point
        self.calls += 1
        pts, order = self.pts, self.order
        ball = _support_ball(pts, support, self.tol) if support else None
        if len(support) == self.dim + 1:
            return ball, support
        best_support = list(support)
        start = 0
        while start < end:
            if ball is None:
                pos = start
            else:
                limit = ball.radius + _INNER_REL * max(1.0, ball.radius)
                pos = _kernels.first_outside(pts, order, start, end, ball.center, limit)
                if pos < 0:
                    break
            idx = int(order[pos])
            ball, best_support = self.run(pos, support + [idx])
            order[1 : pos + 1] = order[0:pos].copy()
            order[0] = idx
            start = pos + 1
        return ball, best_support


def _canonical(pts, ball, support, tol):
    """Drop support points carrying (numerically) zero weight in the center.

    Returns the pruned ball, support and the smallest weight seen. The ball is
    minimal exactly when its center is a convex combination of its support.
    """
    if len(support) <= 1:
        return ball, sorted(support), 1.0
    w = affine_weights(ball.center, pts[support])
    keep = [s for s, wi in zip(support, w) if wi > _WEIGHT_EPS]
    min_w = float(w.min())
    if keep and len(keep) < len(support):
        pruned = circumball_of_support(pts[keep], tol)
        if verify_enclosure(pruned, pts, tol).enclosed:
            return pruned, sorted(keep), min_w
    return ball, sorted(support), min_w


def _lowest_duplicates(pts, support):
    """Replace each support index by the lowest index holding the same point."""
    return sorted({int(np.flatnonzero(np.all(pts == pts[s], axis=1))[0]) for s in support})


def minimum_enclosing_ball(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> MebResult:
    pts = as_points(points)
    n = pts.shape[0]
    rng = np.random.default_rng(seed)
    calls = 0
    result = None
    for attempt in range(_MAX_RESTARTS):
        order = rng.permutation(n).astype(np.int64)
        mtf = _MoveToFront(pts, order, tol)
        ball, support = mtf.run(n, [])
        calls += mtf.calls
        ball, support, min_w = _canonical(pts, ball, support, tol)
        support = _lowest_duplicates(pts, support)
        certified = verify_enclosure(ball, pts, tol).enclosed and min_w >= -tol.rel_eps
        result = MebResult(ball, support, calls, certified)
        if certified:
            return result
        log.warning("MEB attempt %d not certified (min weight %.3g); reshuffling", attempt, min_w)
    return result


def oracle_subset_count(n: int, d: int) -> int:
    return sum(comb(n, k) for k in range(1, min(n, d + 1) + 1))


def meb_oracle(points, tol: Tolerance = DEFAULT_TOL) -> MebResult:
    """Brute-force MEB over all circumballs of supports with at most ``d + 1`` points."""
    pts = as_points(points)
    n, d = pts.shape
    if n > ORACLE_MAX_POINTS or d > ORACLE_MAX_DIM:
        raise InstanceTooLarge(f"oracle limited to n <= {ORACLE_MAX_POINTS}, d <= {ORACLE_MAX_DIM}")
    count = oracle_subset_count(n, d)
    if count > ORACLE_MAX_SUBSETS:
        raise InstanceTooLarge(f"{count} candidate supports exceed {ORACLE_MAX_SUBSETS}")
    candidates = []
    for k in range(1, min(n, d + 1) + 1):
        r, c, idx = _kernels.best_support_ball(pts, k, tol.rel_eps, 1e-10, tol.abs_eps, 1e-12)
        if np.isfinite(r):
            candidates.append((float(r), tuple(int(i) for i in idx), np.asarray(c)))
    if not candidates:
        raise GeometryError("no enclosing support found")  # cannot happen for n >= 1
    r_min = min(c[0] for c in candidates)
    ties = [c for c in candidates if c[0] <= r_min + 1e-12 * max(1.0, r_min)]
    r, support, center = min(ties, key=lambda c: c[1])
    ball, support, _ = _canonical(pts, Ball(center, r), list(support), tol)
    return MebResult(ball, _lowest_duplicates(pts, support), count, True)
