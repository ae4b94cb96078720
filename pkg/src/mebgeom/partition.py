"""Constructive and brute-force realizations of the Helly-type theorems:
Radon, Caratheodory (plain and colorful), Tverberg, Helly, and the three
no-dimension variants.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod, sqrt
from typing import Iterator, Sequence

import numpy as np
import scipy.optimize

from .convexsets import (
    ConvexSet,
    distance_to_intersection,
    hull_distance,
    hulls_common_point,
    max_residual,
    minimax_point,
)
from .errors import (
    DegenerateInput,
    GeometryError,
    HypothesisFailed,
    InstanceTooLarge,
    NotInHull,
    NumericalFault,
    PreconditionFailed,
    TooFewPoints,
)
from .extent import diameter
from .meb import minimum_enclosing_ball
from .simplex import affine_weights, affinely_independent
from .tolerance import DEFAULT_TOL, Tolerance, as_points, coordinate_scale

log = logging.getLogger(__name__)

MAX_PARTITIONS = 100_000
MAX_SELECTIONS = 1_000_000
MAX_FAMILY = 12
RESIDUAL_REL = 1e-9


@dataclass
class PartitionCertificate:
    parts: list[list[int]]
    witness: np.ndarray
    residual: float
    exhaustive: bool = True
    details: dict = field(default_factory=dict)


@dataclass
class ConvexCombination:
    indices: list[int]
    weights: np.ndarray
    reconstruction_error: float


def _affine_dependence(pts: np.ndarray) -> np.ndarray:
    """Unit vector ``alpha`` with ``sum alpha_i p_i = 0`` and ``sum alpha_i = 0``."""
    M = np.vstack([pts.T, np.ones(pts.shape[0])])
    _, _, vt = np.linalg.svd(M)
    return vt[-1]


def radon_partition(points, tol: Tolerance = DEFAULT_TOL) -> PartitionCertificate:
    pts = as_points(points)
    n, d = pts.shape
    if n != d + 2:
        raise GeometryError(f"Radon partition needs exactly d + 2 = {d + 2} points, got {n}")
    alpha = _affine_dependence(pts)
    if alpha[np.argmax(np.abs(alpha))] < 0:
        alpha = -alpha
    cut = tol.abs_eps * np.max(np.abs(alpha))
    pos = [i for i in range(n) if alpha[i] > cut]
    neg = [i for i in range(n) if alpha[i] <= cut]
    mass = alpha[pos].sum()
    if mass <= tol.abs_eps:
        raise DegenerateInput("affine dependence is numerically null")
    witness = (alpha[pos] / mass) @ pts[pos]
    residual = max(hull_distance(witness, pts[pos])[0], hull_distance(witness, pts[neg])[0])
    return PartitionCertificate([pos, neg], witness, residual, True, {"dependence": alpha})


def reduce_combination(points, weights, tol: Tolerance = DEFAULT_TOL) -> tuple[list[int], np.ndarray]:
    """Drop points from a convex combination along affine dependences until the
    remaining support is affinely independent (so at most ``d + 1`` points)."""
    pts = as_points(points)
    w = np.asarray(weights, dtype=float).copy()
    support = [i for i in range(len(w)) if w[i] > 0.0]
    while len(support) > 1 and not affinely_independent(pts[support], tol):
        alpha = _affine_dependence(pts[support])
        if alpha.max() <= 0:
            alpha = -alpha
        ws = w[support]
        up = alpha > 0
        ratios = np.full(len(support), np.inf)
        ratios[up] = ws[up] / alpha[up]
        out = int(np.argmin(ratios))
        ws = ws - ratios[out] * alpha
        ws[out] = 0.0
        ws[ws < 0.0] = 0.0
        w[support] = ws
        support = [i for i in support if w[i] > 0.0]
    w_out = w[support]
    return support, w_out / w_out.sum()


def _feasible_weights(pts, a):
    n = pts.shape[0]
    A_eq = np.vstack([pts.T, np.ones(n)])
    b_eq = np.concatenate([a, [1.0]])
    res = scipy.optimize.linprog(
        np.zeros(n), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs",
        options={"primal_feasibility_tolerance": 1e-10},
    )
    return res.x if res.status == 0 else None


def caratheodory_reduce(points, a, tol: Tolerance = DEFAULT_TOL) -> ConvexCombination:
    pts = as_points(points)
    a = np.asarray(a, dtype=float).reshape(-1)
    scale = coordinate_scale(pts)
    dist, _ = hull_distance(a, pts)
    if dist > RESIDUAL_REL * scale:
        raise NotInHull(f"point is at distance {dist:.3g} from the hull")
    w = _feasible_weights(pts, a)
    if w is None:
        # the LP can miss boundary points that the min-norm solve accepts
        w = _wolfe_weights(pts, a)
    idx, ws = reduce_combination(pts, w, tol)
    exact = affine_weights(a, pts[idx])
    if np.all(exact >= 0.0):
        ws = exact / exact.sum()
    err = float(np.linalg.norm(ws @ pts[idx] - a))
    return ConvexCombination(idx, ws, err)


def _wolfe_weights(pts, a):
    from .convexsets import min_norm_point

    return min_norm_point(pts - a)[1]


@dataclass
class ColorfulSelection:
    indices: tuple[int, ...]
    points: np.ndarray
    weights: np.ndarray


def _in_hull_small(a, sel, scale) -> np.ndarray | None:
    if affinely_independent(sel):
        w = affine_weights(a, sel)
        if np.all(w >= -RESIDUAL_REL) and np.linalg.norm(w @ sel - a) <= RESIDUAL_REL * scale:
            return w
        return None
    dist, _ = hull_distance(a, sel)
    if dist <= RESIDUAL_REL * scale:
        return _wolfe_weights(sel, a)
    return None


def colorful_caratheodory_bruteforce(color_classes: Sequence, a) -> ColorfulSelection:
    """One point per color class whose hull contains ``a``, by enumeration."""
    classes = [c.points if isinstance(c, ConvexSet) else as_points(c) for c in color_classes]
    a = np.asarray(a, dtype=float).reshape(-1)
    d = a.shape[0]
    if len(classes) != d + 1 or any(c.shape[1] != d for c in classes):
        raise GeometryError(f"need d + 1 = {d + 1} color classes in R^{d}")
    scale = max(coordinate_scale(c) for c in classes)
    for i, c in enumerate(classes):
        if hull_distance(a, c)[0] > RESIDUAL_REL * scale:
            raise PreconditionFailed(f"point is not in the hull of color class {i}")
    total = prod(c.shape[0] for c in classes)
    if total > MAX_SELECTIONS:
        raise InstanceTooLarge(f"{total} selections exceed {MAX_SELECTIONS}")
    for choice in itertools.product(*(range(c.shape[0]) for c in classes)):
        sel = np.array([c[i] for c, i in zip(classes, choice)])
        w = _in_hull_small(a, sel, scale)
        if w is not None:
            return ColorfulSelection(choice, sel, w)
    raise NumericalFault("no colorful selection found although one must exist")


@dataclass
class HellyReport:
    hypothesis_holds: bool
    failing_subfamilies: list[tuple[int, ...]]
    witness: np.ndarray | None
    holds: bool

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis_holds


def helly_check(family: Sequence[ConvexSet]) -> HellyReport:
    family = list(family)
    k = len(family)
    d = family[0].dim
    if k < d + 1:
        raise PreconditionFailed(f"Helly needs at least d + 1 = {d + 1} sets, got {k}")
    if k > MAX_FAMILY:
        raise InstanceTooLarge(f"family size {k} exceeds {MAX_FAMILY}")
    failing = [
        J for J in itertools.combinations(range(k), d + 1)
        if hulls_common_point([family[j] for j in J]) is None
    ]
    if failing:
        return HellyReport(False, failing, None, True)
    w = hulls_common_point(family)
    return HellyReport(True, [], w, w is not None)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def set_partitions(n: int, p: int) -> Iterator[list[list[int]]]:
    """Partitions of ``range(n)`` into exactly ``p`` nonempty blocks, in
    lexicographic order of their restricted growth strings."""
    rgs = [0] * n

    def rec(i, blocks):
        if n - i < p - blocks:
            return
        if i == n:
            if blocks == p:
                parts = [[] for _ in range(p)]
                for idx, b in enumerate(rgs):
                    parts[b].append(idx)
                yield parts
            return
        for b in range(min(blocks + 1, p)):
            rgs[i] = b
            yield from rec(i + 1, max(blocks, b + 1))

    if n == 0 or p < 1 or p > n:
        return iter(())
    return rec(0, 0)


def tverberg_bruteforce(points, p: int) -> PartitionCertificate:
    pts = as_points(points)
    n, d = pts.shape
    need = (p - 1) * (d + 1) + 1
    if p < 1:
        raise GeometryError("p must be positive")
    if n < need:
        raise TooFewPoints(f"Tverberg with p={p} in R^{d} needs {need} points, got {n}")
    count = stirling2(n, p)
    if count > MAX_PARTITIONS:
        raise InstanceTooLarge(f"{count} partitions exceed {MAX_PARTITIONS}")
    for parts in set_partitions(n, p):
        sets = [ConvexSet.hull(pts[part]) for part in parts]
        w = hulls_common_point(sets)
        if w is not None:
            return PartitionCertificate(parts, w, max_residual(sets, w), True)
    raise NumericalFault("no Tverberg partition found although one must exist")


@dataclass
class NdCaratheodoryResult:
    indices: list[int]
    distance: float
    bound: float
    method: str

    @property
    def holds(self) -> bool:
        return self.distance <= self.bound + 1e-12


def nd_caratheodory(points, a, r: int, seed: int = 0, trials: int = 2000) -> NdCaratheodoryResult:
    """``r`` points whose hull is within ``diam / sqrt(2r)`` of ``a``.

    Greedy: start at the point nearest ``a``; repeatedly add the point
    extremal in the direction from the current nearest hull point towards
    ``a``, then re-project. Falls back to sampling ``r`` points from a convex
    representation of ``a`` when the greedy set misses the bound.
    """
    pts = as_points(points)
    n = pts.shape[0]
    a = np.asarray(a, dtype=float).reshape(-1)
    if not 1 <= r <= n:
        raise GeometryError(f"need 1 <= r <= n, got r={r}, n={n}")
    scale = coordinate_scale(pts)
    if hull_distance(a, pts)[0] > RESIDUAL_REL * scale:
        raise NotInHull("point is not in the hull")
    diam = diameter(pts).value if n > 1 else 0.0
    bound = diam / sqrt(2.0 * r)

    def grow(chosen):
        chosen = list(chosen)
        free = np.ones(n, dtype=bool)
        free[chosen] = False
        while len(chosen) < r:
            if chosen:
                _, near = hull_distance(a, pts[chosen])
                score = pts @ (a - near)
            else:
                score = -np.linalg.norm(pts - a, axis=1)
            score[~free] = -np.inf
            j = int(np.argmax(score))
            chosen.append(j)
            free[j] = False
        return chosen

    best = grow([])
    best_dist = hull_distance(a, pts[best])[0]
    method = "greedy"
    if best_dist > bound:
        rng = np.random.default_rng(seed)
        lam = np.clip(_wolfe_weights(pts, a), 0.0, None)
        lam /= lam.sum()
        for _ in range(trials):
            draw = list(dict.fromkeys(rng.choice(n, size=r, p=lam).tolist()))
            cand = grow(draw)
            dist = hull_distance(a, pts[cand])[0]
            if dist < best_dist:
                best, best_dist, method = cand, dist, "sampled"
            if best_dist <= bound:
                break
    return NdCaratheodoryResult(sorted(best), best_dist, bound, method)


def _balanced_partitions(n, k, rng, count):
    for _ in range(count):
        perm = rng.permutation(n)
        yield [sorted(perm[i::k].tolist()) for i in range(k)]


def nd_tverberg_search(points, k: int, seed: int = 0, max_partitions: int = MAX_PARTITIONS,
                       heuristic_tries: int = 500) -> PartitionCertificate:
    """A partition into ``k`` parts and a point close to every part's hull.

    Partitions are screened by the largest hull distance from the centroid;
    the best one then gets the point minimizing its largest hull distance.
    """
    pts = as_points(points)
    n = pts.shape[0]
    if not 1 <= k <= n:
        raise GeometryError(f"need 1 <= k <= n, got k={k}, n={n}")
    diam = diameter(pts).value if n > 1 else 0.0
    bound = (2.0 + sqrt(2.0)) * sqrt(k / n) * diam
    q0 = pts.mean(axis=0)
    if k == 1:
        # the centroid is a convex combination of the whole set
        return PartitionCertificate([list(range(n))], q0, 0.0, True, {"bound": bound, "holds": True})
    exhaustive = stirling2(n, k) <= max_partitions
    if exhaustive:
        candidates = set_partitions(n, k)
    else:
        candidates = _balanced_partitions(n, k, np.random.default_rng(seed), heuristic_tries)
    best_parts, best_score = None, np.inf
    for parts in candidates:
        score = 0.0
        for part in parts:
            score = max(score, hull_distance(q0, pts[part])[0])
            if score >= best_score:
                break
        if score < best_score:
            best_parts, best_score = parts, score
            if score <= 1e-15 * max(1.0, diam):
                break
    q, residual = q0, best_score
    if residual > 0.0:
        if all(len(part) == 1 for part in best_parts):
            cand = minimum_enclosing_ball(pts).center
        else:
            cand = minimax_point([ConvexSet.hull(pts[part]) for part in best_parts])
        cand_res = max(hull_distance(cand, pts[part])[0] for part in best_parts)
        if cand_res < residual:
            q, residual = cand, cand_res
    return PartitionCertificate(
        best_parts, q, residual, exhaustive, {"bound": bound, "holds": residual <= bound + 1e-12}
    )


@dataclass
class NdHellyResult:
    point: np.ndarray
    distances: list[float]
    bound: float

    @property
    def max_distance(self) -> float:
        return max(self.distances)

    @property
    def holds(self) -> bool:
        return self.max_distance <= self.bound + 1e-12


def nd_helly_point(family: Sequence[ConvexSet], k: int, b, tol: Tolerance = DEFAULT_TOL) -> NdHellyResult:
    """Point within ``1/sqrt(k)`` of every set, given that the unit ball around
    ``b`` meets every ``k``-wise intersection."""
    family = list(family)
    n = len(family)
    b = np.asarray(b, dtype=float).reshape(-1)
    if not 1 <= k <= n:
        raise GeometryError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > MAX_FAMILY:
        raise InstanceTooLarge(f"family size {n} exceeds {MAX_FAMILY}")
    for J in itertools.combinations(range(n), k):
        dist = distance_to_intersection([family[j] for j in J], b)
        if dist > 1.0 + tol.slack(1.0):
            raise HypothesisFailed(f"subfamily {J} stays {dist:.6g} away from b", subfamily=J)
    bound = 1.0 / sqrt(k)
    candidates = [b]
    try:
        candidates.append(minimax_point(family))
    except GeometryError as exc:
        log.warning("minimax search failed: %s", exc)
    best = None
    for q in candidates:
        dists = [s.distance(q) for s in family]
        if best is None or max(dists) < best.max_distance:
            best = NdHellyResult(np.asarray(q, dtype=float), dists, bound)
    if not best.holds:
        log.warning("search did not reach the guaranteed bound (%.3g > %.3g)", best.max_distance, bound)
    return best
