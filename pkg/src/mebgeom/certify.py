"""Certify classical radius bounds on concrete point sets, and tabulate the
inner/outer radii of the regular simplex, cube and cross-polytope.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from . import _kernels
from .errors import DegenerateHull, GeometryError, InstanceTooLarge, UnsupportedDimension
from .extent import (
    ExtentProfile,
    Halfspace,
    affine_rank,
    chebyshev_inball,
    convex_hull_facets,
    diameter,
    extent_profile,
)
from .meb import minimum_enclosing_ball
from .simplex import regular_simplex
from .tolerance import DEFAULT_TOL, Tolerance, as_points

EQUALITY_REL = 1e-9
DEFAULT_CUTOFF = 30


class FormulaConsistencyWarning(UserWarning):
    """A tabulated closed form disagrees with a direct geometric computation."""


@dataclass
class BoundReport:
    bound_name: str
    quantity: float
    bound: float
    slack: float
    holds: bool
    details: dict = field(default_factory=dict)

    @property
    def tight(self) -> bool:
        return abs(self.slack) <= EQUALITY_REL * max(1.0, abs(self.bound))

    def as_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "quantity": self.quantity,
            "bound": self.bound,
            "slack": self.slack,
            "holds": self.holds,
            "tight": self.tight,
            **self.details,
        }


def make_report(name: str, quantity: float, bound: float, tol: Tolerance = DEFAULT_TOL, **details) -> BoundReport:
    slack = bound - quantity
    holds = slack >= -tol.rel_eps * max(1.0, abs(bound))
    return BoundReport(name, float(quantity), float(bound), float(slack), bool(holds), details)


def jung_factor(d: int) -> float:
    return sqrt(d / (2.0 * (d + 1)))


def steinhagen_factor(d: int) -> float:
    """Constant ``c`` in ``inradius >= c * width``."""
    if d % 2:
        return 1.0 / (2.0 * sqrt(d))
    return sqrt(d + 2.0) / (2.0 * d + 2.0)


def jung_check(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    pts = as_points(points, min_points=2)
    d = pts.shape[1]
    diam = diameter(pts).value
    r = minimum_enclosing_ball(pts, seed, tol).radius
    return make_report("jung", r, jung_factor(d) * diam, tol, diameter=diam, dim=d)


def _exact_profile(pts, seed, tol) -> ExtentProfile:
    n, d = pts.shape
    if d > 3 and n != d + 1 and affine_rank(pts, tol) == d:
        raise UnsupportedDimension("exact inradius/width need d <= 3 or a simplex")
    return extent_profile(pts, seed, tol, check=False)


def steinhagen_check(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    pts = as_points(points, min_points=2)
    d = pts.shape[1]
    prof = _exact_profile(pts, seed, tol)
    lower = steinhagen_factor(d) * prof.width
    return make_report(
        "steinhagen", lower, prof.inradius, tol,
        width=prof.width, inradius=prof.inradius, parity="odd" if d % 2 else "even",
    )


def barycentric_set_witness(points, cutoff: int = DEFAULT_CUTOFF, tol: Tolerance = DEFAULT_TOL):
    """Largest barycentric circumradius over all simplices with vertices in the set,
    with the vertex indices attaining it."""
    pts = as_points(points, min_points=2)
    n, d = pts.shape
    if n > cutoff:
        raise InstanceTooLarge(f"exhaustive enumeration needs n <= cutoff ({n} > {cutoff})")
    best, best_idx = -1.0, ()
    for k in range(2, min(n, d + 1) + 1):
        val, idx = _kernels.max_barycentric_radius(pts, k, tol.rel_eps)
        if val > best:
            best, best_idx = float(val), tuple(int(i) for i in idx)
    if best < 0:
        raise GeometryError("all points coincide; no simplex with vertices in the set")
    return best, best_idx


def barycentric_circumradius_of_set(points, cutoff: int = DEFAULT_CUTOFF, tol: Tolerance = DEFAULT_TOL) -> float:
    return barycentric_set_witness(points, cutoff, tol)[0]


def variant_jung_check(points, cutoff: int = DEFAULT_CUTOFF, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> BoundReport:
    pts = as_points(points, min_points=2)
    d = pts.shape[1]
    beta, subset = barycentric_set_witness(pts, cutoff, tol)
    diam = diameter(pts).value
    jung = jung_factor(d) * diam
    r = minimum_enclosing_ball(pts, seed, tol).radius
    gap = EQUALITY_REL * max(1.0, jung)
    if beta < jung - gap:
        branch = "barycentric"
    elif jung < beta - gap:
        branch = "jung"
    else:
        branch = "both"
    return make_report(
        "variant-jung", r, min(beta, jung), tol,
        barycentric_circumradius=beta, jung_bound=jung, active_branch=branch, simplex=list(subset),
    )


def perelman_pukhov_extremes(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> tuple[BoundReport, BoundReport]:
    """The two computable extremes of the inner/outer radii quotient.

    ``circumradius / (diam/2) <= sqrt(2d/(d+1))`` and
    ``(width/2) / inradius <= sqrt(d)`` (odd d) or ``(d+1)/sqrt(d+2)`` (even d);
    each also checked against the coarse ``i + 1`` bound with ``i = 1`` and
    ``i = d`` respectively.
    """
    pts = as_points(points, min_points=2)
    d = pts.shape[1]
    prof = _exact_profile(pts, seed, tol)
    if not prof.inradius:
        raise DegenerateHull("inradius is zero; the width/inradius quotient is undefined")
    ratio_d = prof.circumradius / (prof.diameter / 2.0)
    ratio_1 = (prof.width / 2.0) / prof.inradius
    bound_1 = sqrt(d) if d % 2 else (d + 1) / sqrt(d + 2.0)
    outer = make_report(
        "perelman-pukhov R_d/r_1", ratio_d, sqrt(2.0 * d / (d + 1)), tol,
        coarse_bound=2.0, coarse_holds=bool(ratio_d <= 2.0 + tol.rel_eps),
    )
    inner = make_report(
        "perelman-pukhov R_1/r_d", ratio_1, bound_1, tol,
        coarse_bound=float(d + 1), coarse_holds=bool(ratio_1 <= d + 1 + tol.rel_eps),
    )
    return outer, inner


def eggleston_check(points, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> list[BoundReport]:
    pts = as_points(points, min_points=2)
    prof = extent_profile(pts, seed, tol, check=False)
    return [make_report(f"eggleston: {name}", lhs, rhs, tol) for name, lhs, rhs in prof.eggleston()]


# --- regular polytope radii, circumradius scaled to 1 ----------------------

KINDS = {
    "simplex": "regular_simplex",
    "regular_simplex": "regular_simplex",
    "cube": "cube",
    "cross": "cross_polytope",
    "cross_polytope": "cross_polytope",
}


@dataclass(frozen=True)
class PolytopeRadii:
    kind: str
    d: int
    j: int
    inner: float
    outer: float
    consistency_note: str | None = None


@dataclass(frozen=True)
class ConsistencyProbe:
    kind: str
    d: int
    closed_form: float
    direct: float
    agrees: bool
    note: str


def inner_radius(kind: str, d: int, j: int) -> float:
    if kind == "regular_simplex":
        return sqrt((d + 1.0) / (j * (j + 1.0) * d))
    return sqrt(1.0 / (j * (d + 1.0)))


def outer_radius(kind: str, d: int, j: int) -> float:
    if kind == "regular_simplex" and d % 2 == 0:
        if j == 1:
            return (d + 1.0) / d * sqrt(1.0 / (d + 2.0))
        if j == d - 1:
            return (2.0 * d - 1.0) / (2.0 * d)
    return sqrt(j / d)


def _polytope_facets(kind: str, d: int) -> list[Halfspace]:
    if kind == "cube":
        off = 1.0 / sqrt(d)
        eye = np.eye(d)
        return [Halfspace(s * e, off) for e in eye for s in (1.0, -1.0)]
    if kind == "cross_polytope":
        off = 1.0 / sqrt(d)
        return [
            Halfspace(np.array(signs) / sqrt(d), off)
            for signs in itertools.product((1.0, -1.0), repeat=d)
        ]
    raise GeometryError(f"no facet model for {kind}")


def direct_inradius(kind: str, d: int) -> float:
    """Inradius at circumradius 1, from a linear program over the facets."""
    if kind == "regular_simplex":
        verts = regular_simplex(d, 1.0 / jung_factor(d)).vertices
        return chebyshev_inball(convex_hull_facets(verts)).radius
    return chebyshev_inball(_polytope_facets(kind, d)).radius


def inner_radius_probe(kind: str, d: int) -> ConsistencyProbe:
    """Compare the closed-form inner radius at ``j = d`` with the inradius computed
    directly from the polytope's facets."""
    kind = _kind(kind)
    closed_form = inner_radius(kind, d, d)
    direct = direct_inradius(kind, d)
    agrees = abs(closed_form - direct) <= 1e-9 * max(1.0, direct)
    note = (
        f"{kind} d={d}: closed-form inner r_{d} = {closed_form:.10g}, "
        f"direct inradius = {direct:.10g} ({'consistent' if agrees else 'DISCREPANCY'})"
    )
    return ConsistencyProbe(kind, d, closed_form, direct, agrees, note)


def _kind(kind: str) -> str:
    try:
        return KINDS[kind]
    except KeyError:
        raise GeometryError(f"unknown polytope kind {kind!r}") from None


def regular_polytope_radii(kind: str, d: int, j: int) -> PolytopeRadii:
    kind = _kind(kind)
    if d < 1 or not 1 <= j <= d:
        raise GeometryError(f"need 1 <= j <= d, got j={j}, d={d}")
    note = None
    if j == d:
        probe = inner_radius_probe(kind, d)
        note = probe.note
        if not probe.agrees:
            warnings.warn(note, FormulaConsistencyWarning, stacklevel=2)
    return PolytopeRadii(kind, d, j, inner_radius(kind, d, j), outer_radius(kind, d, j), note)


def radii_table(kind: str, d: int) -> list[PolytopeRadii]:
    return [regular_polytope_radii(kind, d, j) for j in range(1, d + 1)]
