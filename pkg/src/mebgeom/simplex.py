"""Coordinate-level simplex machinery.

Squared-edge energies, barycenters and medians, barycentric radii and
thickness, circumballs of small supports, and the regular simplex with its
closed-form measures.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import sqrt

import numpy as np
import scipy.linalg

from . import _kernels
from .errors import DegenerateSimplex, DegenerateSupport, GeometryError
from .tolerance import DEFAULT_TOL, Tolerance, as_points


@dataclass
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float).reshape(-1)
        self.radius = float(self.radius)
        if self.radius < 0 or not np.isfinite(self.radius):
            raise GeometryError(f"invalid ball radius {self.radius}")
        if not np.all(np.isfinite(self.center)):
            raise GeometryError("ball center must be finite")

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def contains(self, x, tol: Tolerance = DEFAULT_TOL) -> bool:
        dist = float(np.linalg.norm(np.asarray(x, dtype=float) - self.center))
        return dist <= self.radius + tol.slack(max(1.0, self.radius))


def _pivoted_r_diagonal(vectors: np.ndarray):
    """|diag R| and pivot order of a column-pivoted QR of ``vectors`` (as columns)."""
    _, r, piv = scipy.linalg.qr(vectors.T, mode="economic", pivoting=True)
    return np.abs(np.diag(r)), piv


def affinely_independent(points, tol: Tolerance = DEFAULT_TOL) -> bool:
    pts = as_points(points)
    k = pts.shape[0]
    if k == 1:
        return True
    if k - 1 > pts.shape[1]:
        return False
    diag, _ = _pivoted_r_diagonal(pts[1:] - pts[0])
    if diag[0] == 0.0:
        return False
    return bool(diag[-1] > tol.rel_eps * diag[0])


def most_dependent_index(points) -> int:
    """Index of the point whose difference vector got the smallest QR pivot."""
    pts = as_points(points)
    if pts.shape[0] < 2:
        return 0
    diffs = pts[1:] - pts[0]
    if diffs.shape[0] > pts.shape[1]:
        # more vectors than dimensions: the surplus pivots are exactly zero
        _, piv = _pivoted_r_diagonal(diffs)
        return int(np.setdiff1d(np.arange(diffs.shape[0]), piv[: pts.shape[1]])[0]) + 1
    _, piv = _pivoted_r_diagonal(diffs)
    return int(piv[-1]) + 1


class Simplex:
    """``m + 1`` affinely independent points in ``R^d`` with ``d >= m >= 1``."""

    def __init__(self, vertices, tol: Tolerance = DEFAULT_TOL):
        verts = as_points(vertices)
        if verts.shape[0] < 2:
            raise DegenerateSimplex("a simplex needs at least 2 vertices")
        if not affinely_independent(verts, tol):
            raise DegenerateSimplex("vertices are affinely dependent")
        verts = verts.copy()
        verts.setflags(write=False)
        self.vertices = verts
        self.tol = tol

    @property
    def m(self) -> int:
        return self.vertices.shape[0] - 1

    @property
    def d(self) -> int:
        return self.vertices.shape[1]

    def __len__(self):
        return self.vertices.shape[0]

    def __repr__(self):
        return f"Simplex(m={self.m}, d={self.d})"

    @cached_property
    def squared_edges(self) -> np.ndarray:
        diff = self.vertices[:, None, :] - self.vertices[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)

    @cached_property
    def _edge_extremes(self):
        return _kernels.pairwise_extremes(self.vertices)

    @property
    def diameter(self) -> float:
        return sqrt(self._edge_extremes[0])

    @property
    def shortest_edge(self) -> float:
        return sqrt(self._edge_extremes[3])

    @property
    def barycenter(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def face(self, drop: int) -> "Simplex":
        """The facet opposite vertex ``drop``; needs ``m >= 2``."""
        keep = [i for i in range(len(self)) if i != drop]
        return Simplex(self.vertices[keep], self.tol)

    def face_barycenters(self) -> np.ndarray:
        total = self.vertices.sum(axis=0)
        return (total[None, :] - self.vertices) / self.m


@dataclass(frozen=True)
class EnergyProfile:
    vertex_energy: np.ndarray
    face_energy: np.ndarray
    total_energy: float


def edge_energies(s: Simplex) -> EnergyProfile:
    """Sums of squared edge lengths at each vertex, on each facet, and overall."""
    sq = s.squared_edges
    vertex = sq.sum(axis=1)
    total = float(np.triu(sq, k=1).sum())
    face = total - vertex
    # facets of a 1-simplex are points and carry no edges
    face = np.where(face < 0.0, 0.0, face)
    return EnergyProfile(vertex_energy=vertex, face_energy=face, total_energy=total)


@dataclass(frozen=True)
class MedianProfile:
    barycenter: np.ndarray
    face_barycenters: np.ndarray
    median_lengths: np.ndarray
    vertex_barycenter_distances: np.ndarray


def _apollonius_terms(s: Simplex) -> np.ndarray:
    e = edge_energies(s)
    return np.maximum(s.m * e.vertex_energy - e.face_energy, 0.0)


def median_profile(s: Simplex) -> MedianProfile:
    """Medians from the energy identities (not from coordinates).

    ``|mu_i|^2 = (m E(v_i) - E(face_i)) / m^2`` and
    ``|kappa - v_i| = sqrt(m E(v_i) - E(face_i)) / (m + 1)``.
    """
    m = s.m
    terms = _apollonius_terms(s)
    return MedianProfile(
        barycenter=s.barycenter,
        face_barycenters=s.face_barycenters(),
        median_lengths=np.sqrt(terms) / m,
        vertex_barycenter_distances=np.sqrt(terms) / (m + 1),
    )


def barycentric_circumradius(s: Simplex) -> float:
    """Radius of the smallest ball centred at the barycenter containing ``s``."""
    return float(np.sqrt(_apollonius_terms(s).max()) / (s.m + 1))


def distance_to_simplex(x, vertices) -> float:
    """Exact Euclidean distance from ``x`` to the convex hull of affinely
    independent ``vertices``.

    Projects onto the affine hull; when the projection has negative
    barycentric coordinates, recurses into the facets opposite those vertices.
    """
    x = np.asarray(x, dtype=float)
    verts = np.asarray(vertices, dtype=float)
    if verts.shape[0] == 1:
        return float(np.linalg.norm(x - verts[0]))
    v0 = verts[0]
    A = (verts[1:] - v0).T
    coef = np.linalg.lstsq(A, x - v0, rcond=None)[0]
    lam = np.concatenate(([1.0 - coef.sum()], coef))
    if np.all(lam >= 0.0):
        return float(np.linalg.norm(x - v0 - A @ coef))
    return min(
        distance_to_simplex(x, np.delete(verts, i, axis=0))
        for i in np.flatnonzero(lam < 0.0)
    )


def barycentric_inradius_and_thickness(s: Simplex) -> tuple[float, float]:
    k = s.barycenter
    beta = min(
        distance_to_simplex(k, np.delete(s.vertices, i, axis=0)) for i in range(len(s))
    )
    return beta, beta / s.diameter


def circumball_of_support(points, tol: Tolerance = DEFAULT_TOL) -> Ball:
    """Ball through all of ``points`` whose center lies in their affine hull."""
    pts = as_points(points)
    if pts.shape[0] > pts.shape[1] + 1 or not affinely_independent(pts, tol):
        raise DegenerateSupport(f"{pts.shape[0]} points are affinely dependent")
    p0 = pts[0]
    if pts.shape[0] == 1:
        return Ball(p0.copy(), 0.0)
    A = pts[1:] - p0
    # minimum-norm solution of 2 A x = |a_i|^2 lies in the row space of A; solving
    # it directly (not via A A^T) keeps thin supports accurate
    offset = np.linalg.lstsq(A, 0.5 * np.einsum("ij,ij->i", A, A), rcond=None)[0]
    center = p0 + offset
    return Ball(center, float(np.linalg.norm(center - p0)))


def affine_weights(x, points) -> np.ndarray:
    """Weights ``w`` with ``sum w = 1`` and ``w @ points = x`` (least squares)."""
    pts = as_points(points)
    M = np.vstack([pts.T, np.ones(pts.shape[0])])
    rhs = np.concatenate([np.asarray(x, dtype=float), [1.0]])
    return np.linalg.lstsq(M, rhs, rcond=None)[0]


def regular_simplex(d: int, diam: float = 1.0) -> Simplex:
    """Regular ``d``-simplex in ``R^d``, built by lifting one vertex per axis."""
    if d < 1 or diam <= 0:
        raise GeometryError("need d >= 1 and diam > 0")
    verts = np.zeros((d + 1, d))
    for k in range(1, d + 1):
        c = verts[:k].mean(axis=0)
        r2 = float(np.sum((verts[0] - c) ** 2))
        verts[k] = c
        verts[k, k - 1] = sqrt(diam * diam - r2)
    return Simplex(verts)


@dataclass(frozen=True)
class RegularMeasures:
    circumradius: float
    inradius: float
    width: float
    median_length: float


def regular_width_factor(d: int) -> float:
    if d % 2:
        return sqrt(2.0 / (d + 1))
    return sqrt(2.0 * (d + 1) / (d * (d + 2)))


def regular_measures(d: int, diam: float = 1.0) -> RegularMeasures:
    if d < 1 or diam <= 0:
        raise GeometryError("need d >= 1 and diam > 0")
    return RegularMeasures(
        circumradius=sqrt(d / (2.0 * (d + 1))) * diam,
        inradius=sqrt(1.0 / (2.0 * d * (d + 1))) * diam,
        width=regular_width_factor(d) * diam,
        median_length=sqrt((d + 1) / (2.0 * d)) * diam,
    )
