"""Finite representations of convex sets plus the distance and feasibility
engines used by the partition theorems.

Hull distances come from Wolfe's minimum-norm-point algorithm. Common points
of polyhedral families come from a linear program; families containing balls,
and the minimax/projection problems, go through a conic solver.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Sequence

import cvxpy as cp
import numpy as np
import scipy.optimize

from .errors import GeometryError
from .extent import Halfspace
from .simplex import Ball
from .tolerance import as_points

log = logging.getLogger(__name__)

_CLARABEL_OPTS = dict(tol_gap_abs=1e-11, tol_gap_rel=1e-11, tol_feas=1e-11, max_iter=400)
_HIGHS_OPTS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def min_norm_point(points, eps: float = 1e-13, max_iter: int = 500):
    """Point of smallest norm in the convex hull of ``points`` (Wolfe 1976).

    Returns ``(x, weights)`` with ``weights`` a convex combination over all rows.
    """
    P = np.asarray(points, dtype=float)
    n = P.shape[0]
    sq = np.einsum("ij,ij->i", P, P)
    scale = max(float(sq.max()), 1e-300)
    j = int(np.argmin(sq))
    S = [j]
    lam = np.array([1.0])
    x = P[j].copy()
    for _ in range(max_iter):
        g = P @ x
        j = int(np.argmin(g))
        if x @ x - g[j] <= eps * scale or j in S:
            break
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            Q = P[S]
            k = len(S)
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = Q @ Q.T
            kkt[:k, k] = 1.0
            kkt[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            mu = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
            if np.all(mu > eps):
                lam = mu
                break
            drop = (mu <= eps) & (lam - mu > 0)
            theta = np.min(lam[drop] / (lam[drop] - mu[drop])) if drop.any() else 1.0
            lam = lam + theta * (mu - lam)
            keep = lam > eps
            if keep.all():
                keep[int(np.argmin(lam))] = False
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
        x = lam @ P[S]
    weights = np.zeros(n)
    weights[S] = lam
    return x, weights


def hull_distance(x, points) -> tuple[float, np.ndarray]:
    """Euclidean distance from ``x`` to ``conv(points)`` and the nearest point."""
    P = as_points(points)
    x = np.asarray(x, dtype=float)
    y, w = min_norm_point(P - x)
    return float(np.linalg.norm(y)), w @ P


@dataclass(frozen=True, eq=False)
class ConvexSet:
    """One of: convex hull of points, intersection of halfspaces, or a ball."""

    kind: str
    points: np.ndarray | None = None
    halfspaces: tuple[Halfspace, ...] | None = None
    ball: Ball | None = None

    @classmethod
    def hull(cls, points) -> "ConvexSet":
        return cls("hull", points=as_points(points))

    @classmethod
    def from_halfspaces(cls, halfspaces: Sequence[Halfspace]) -> "ConvexSet":
        hs = tuple(halfspaces)
        if not hs:
            raise GeometryError("need at least one halfspace")
        return cls("halfspaces", halfspaces=hs)

    @classmethod
    def halfspace(cls, normal, offset) -> "ConvexSet":
        """``{x : <normal, x> <= offset}``; the normal is rescaled to unit length."""
        a = np.asarray(normal, dtype=float)
        norm = np.linalg.norm(a)
        return cls.from_halfspaces([Halfspace(a / norm, float(offset) / norm)])

    @classmethod
    def from_ball(cls, center, radius) -> "ConvexSet":
        return cls("ball", ball=Ball(center, radius))

    @property
    def dim(self) -> int:
        if self.kind == "hull":
            return self.points.shape[1]
        if self.kind == "halfspaces":
            return self.halfspaces[0].normal.shape[0]
        return self.ball.dim

    def residual(self, x) -> float:
        """Nonnegative membership defect: distance for hulls and balls, largest
        constraint violation for halfspaces."""
        x = np.asarray(x, dtype=float)
        if self.kind == "hull":
            return hull_distance(x, self.points)[0]
        if self.kind == "ball":
            return max(0.0, float(np.linalg.norm(x - self.ball.center)) - self.ball.radius)
        return max(0.0, max(h.violation(x) for h in self.halfspaces))

    def distance(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if self.kind != "halfspaces" or len(self.halfspaces) == 1:
            return self.residual(x)
        if self.residual(x) == 0.0:
            return 0.0
        y = cp.Variable(self.dim)
        prob = cp.Problem(cp.Minimize(cp.norm(y - x)), _membership(self, y))
        _solve(prob)
        return float(prob.value)

    def representative(self) -> np.ndarray:
        if self.kind == "hull":
            return self.points[0].copy()
        if self.kind == "ball":
            return self.ball.center.copy()
        w = hulls_common_point([self])
        if w is None:
            raise GeometryError("halfspace set is empty")
        return w


def _membership(s: ConvexSet, x, margin=None) -> list:
    if s.kind == "hull":
        lam = cp.Variable(s.points.shape[0], nonneg=True)
        return [s.points.T @ lam == x, cp.sum(lam) == 1]
    if s.kind == "ball":
        lhs = cp.norm(x - s.ball.center)
        return [lhs + margin <= s.ball.radius] if margin is not None else [lhs <= s.ball.radius]
    A = np.array([h.normal for h in s.halfspaces])
    b = np.array([h.offset for h in s.halfspaces])
    return [A @ x + margin <= b] if margin is not None else [A @ x <= b]


def _solve(prob: cp.Problem) -> str:
    # tight tolerances often end "optimal_inaccurate"; callers re-check residuals themselves
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        try:
            prob.solve(solver=cp.CLARABEL, **_CLARABEL_OPTS)
        except cp.error.SolverError:
            prob.solve(solver=cp.CLARABEL)
    return prob.status


def _set_scale(sets) -> float:
    vals = [1.0]
    for s in sets:
        if s.kind == "hull":
            vals.append(float(np.max(np.abs(s.points))))
        elif s.kind == "ball":
            vals.append(float(np.max(np.abs(s.ball.center))) + s.ball.radius)
        else:
            vals.extend(abs(h.offset) for h in s.halfspaces)
    return max(vals)


def max_residual(sets, x) -> float:
    return max(s.residual(x) for s in sets)


def _interval_common_point(sets):
    lo = max(float(s.points.min()) for s in sets)
    hi = min(float(s.points.max()) for s in sets)
    if lo > hi:
        return None
    return np.array([0.5 * (lo + hi)])


def _box_disjoint(sets, slack) -> bool:
    lo = np.max([s.points.min(axis=0) for s in sets], axis=0)
    hi = np.min([s.points.max(axis=0) for s in sets], axis=0)
    return bool(np.any(lo > hi + slack))


def _polyhedral_common_point(sets, d):
    hulls = [s for s in sets if s.kind == "hull"]
    hs = [h for s in sets if s.kind == "halfspaces" for h in s.halfspaces]
    sizes = [s.points.shape[0] for s in hulls]
    nvar = d + sum(sizes) + 1
    A_eq, b_eq = [], []
    col = d
    for s, m in zip(hulls, sizes):
        for t in range(d):
            row = np.zeros(nvar)
            row[t] = -1.0
            row[col : col + m] = s.points[:, t]
            A_eq.append(row)
            b_eq.append(0.0)
        row = np.zeros(nvar)
        row[col : col + m] = 1.0
        A_eq.append(row)
        b_eq.append(1.0)
        col += m
    A_ub = [np.concatenate([h.normal, np.zeros(nvar - d - 1), [1.0]]) for h in hs]
    b_ub = [h.offset for h in hs]
    cost = np.zeros(nvar)
    cost[-1] = -1.0  # push into the interior of the halfspaces when possible
    bounds = [(None, None)] * d + [(0, None)] * sum(sizes) + [(0, 1.0 if hs else 0.0)]
    res = scipy.optimize.linprog(
        cost,
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=bounds,
        method="highs",
        options=_HIGHS_OPTS,
    )
    if res.status == 2:
        return None
    if res.status == 3:
        raise GeometryError("feasibility LP unbounded")
    if res.status != 0:
        log.warning("feasibility LP ended with status %d: %s", res.status, res.message)
        return None
    return res.x[:d]


def _conic_common_point(sets, d):
    x = cp.Variable(d)
    t = cp.Variable()
    cons = [t >= 0, t <= 1.0]
    for s in sets:
        cons += _membership(s, x, margin=None if s.kind == "hull" else t)
    prob = cp.Problem(cp.Maximize(t), cons)
    status = _solve(prob)
    if status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE):
        return None
    if x.value is None:
        return None
    return np.asarray(x.value, dtype=float)


def hulls_common_point(sets: Sequence[ConvexSet], tol: float = 1e-9):
    """A point lying in every set (within ``tol * scale``), or ``None`` when the
    intersection is empty."""
    sets = list(sets)
    if not sets:
        raise GeometryError("empty family")
    d = sets[0].dim
    if any(s.dim != d for s in sets):
        raise GeometryError("sets live in different dimensions")
    scale = _set_scale(sets)
    if len(sets) == 1 and sets[0].kind != "halfspaces":
        return sets[0].representative()
    all_hulls = all(s.kind == "hull" for s in sets)
    if all_hulls and d == 1:
        return _interval_common_point(sets)
    if all_hulls and _box_disjoint(sets, tol * scale):
        return None
    if any(s.kind == "ball" for s in sets):
        x = _conic_common_point(sets, d)
    else:
        x = _polyhedral_common_point(sets, d)
    if x is None:
        return None
    if max_residual(sets, x) > tol * scale:
        x = _refine(sets, x)
        if max_residual(sets, x) > tol * scale:
            log.warning("common point residual %.3g above tolerance", max_residual(sets, x))
    return x


def _project(s: ConvexSet, x):
    if s.kind == "hull":
        return hull_distance(x, s.points)[1]
    if s.kind == "ball":
        v = x - s.ball.center
        nv = np.linalg.norm(v)
        return x if nv <= s.ball.radius else s.ball.center + v * (s.ball.radius / nv)
    if len(s.halfspaces) == 1:
        h = s.halfspaces[0]
        viol = h.violation(x)
        return x - max(0.0, viol) * h.normal
    y = cp.Variable(s.dim)
    _solve(cp.Problem(cp.Minimize(cp.sum_squares(y - x)), _membership(s, y)))
    return np.asarray(y.value, dtype=float)


def _refine(sets, x, rounds: int = 50):
    """Averaged projections from a nearly feasible start."""
    best, best_res = x, max_residual(sets, x)
    for _ in range(rounds):
        x = np.mean([_project(s, x) for s in sets], axis=0)
        res = max_residual(sets, x)
        if res < best_res:
            best, best_res = x, res
    return best


def distance_to_intersection(sets: Sequence[ConvexSet], b) -> float:
    """``dist(b, intersection of sets)``; ``inf`` for an empty intersection."""
    sets = list(sets)
    d = sets[0].dim
    b = np.asarray(b, dtype=float)
    if len(sets) == 1:
        return sets[0].distance(b)
    y = cp.Variable(d)
    cons = []
    for s in sets:
        cons += _membership(s, y)
    prob = cp.Problem(cp.Minimize(cp.norm(y - b)), cons)
    status = _solve(prob)
    if status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE) or prob.value is None:
        return float("inf")
    return float(prob.value)


def minimax_point(sets: Sequence[ConvexSet]) -> np.ndarray:
    """A point minimizing ``max_i dist(q, K_i)``."""
    sets = list(sets)
    d = sets[0].dim
    q = cp.Variable(d)
    t = cp.Variable()
    cons = []
    for s in sets:
        y = cp.Variable(d)
        cons += _membership(s, y)
        cons.append(cp.norm(q - y) <= t)
    prob = cp.Problem(cp.Minimize(t), cons)
    _solve(prob)
    if q.value is None:
        raise GeometryError(f"minimax solve failed: {prob.status}")
    return np.asarray(q.value, dtype=float)
