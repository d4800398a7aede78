"""H-representation polytopes: construction, vertices, redundancy, facets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import (
    DegeneratePolytope,
    InfeasibleSystem,
    NearZeroRow,
    NotAFacet,
    NotEnoughVertices,
    TooManyConstraints,
    UnsupportedDimension,
    ValidationError,
)

ZERO_ROW_TOL = 1e-12
FEAS_TOL = 1e-9
TIGHT_TOL = 1e-8
INTERIOR_TOL = 1e-10
ENUM_CAP = 40
MAX_ENUM_DIM = 8
SINGULAR_TOL = 1e-12


def _frozen(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HPolytope:
    """The set ``{x : normals @ x <= offsets}`` with unit-length normal rows.

    Rows are normalized on construction, so ``HPolytope(2*A, 2*b)`` and
    ``HPolytope(A, b)`` describe (and store) the same thing.
    """

    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.normals, dtype=float)
        b = np.asarray(self.offsets, dtype=float)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        b = b.reshape(-1)
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise ValidationError(f"normals must be a non-empty m x d matrix, got shape {A.shape}")
        if b.shape[0] != A.shape[0]:
            raise ValidationError(f"{A.shape[0]} normals but {b.shape[0]} offsets")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValidationError("normals and offsets must be finite")
        norms = np.linalg.norm(A, axis=1)
        for i, nrm in enumerate(norms):
            if nrm <= ZERO_ROW_TOL:
                raise NearZeroRow(i, nrm)
        unit = np.abs(norms - 1.0) <= 1e-15
        scale = np.where(unit, 1.0, norms)
        object.__setattr__(self, "normals", _frozen(A / scale[:, None]))
        object.__setattr__(self, "offsets", _frozen(b / scale))

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    @property
    def num_constraints(self) -> int:
        return self.normals.shape[0]

    def contains(self, x, tol: float = FEAS_TOL) -> bool:
        return bool(np.all(self.normals @ np.asarray(x, dtype=float) <= self.offsets + tol))

    def translate(self, t) -> "HPolytope":
        """The image ``P + t``."""
        return HPolytope(self.normals, self.offsets + self.normals @ np.asarray(t, dtype=float))

    def rotate(self, Q) -> "HPolytope":
        """The image ``Q P`` for orthogonal ``Q``."""
        return HPolytope(self.normals @ np.asarray(Q, dtype=float).T, self.offsets)

    def scale(self, s: float) -> "HPolytope":
        """The image ``s P`` for ``s > 0``."""
        if not s > 0:
            raise ValidationError("scale factor must be positive")
        return HPolytope(self.normals, self.offsets * s)

    def select(self, rows) -> "HPolytope":
        rows = list(rows)
        return HPolytope(self.normals[rows], self.offsets[rows])

    def __eq__(self, other):
        if not isinstance(other, HPolytope):
            return NotImplemented
        return np.array_equal(self.normals, other.normals) and np.array_equal(
            self.offsets, other.offsets
        )

    def __hash__(self):
        return hash((self.normals.tobytes(), self.offsets.tobytes()))


def normalize(raw_normals, raw_offsets) -> HPolytope:
    """Scale each constraint so its normal has unit length."""
    return HPolytope(raw_normals, raw_offsets)


def from_simplex(vertices) -> HPolytope:
    """H-representation of the simplex spanned by ``d + 1`` points in R^d.

    Facet ``k`` passes through every vertex except vertex ``k``, with its
    normal pointing away from the omitted vertex.
    """
    V = np.asarray(vertices, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] + 1:
        raise ValidationError(f"a simplex in R^d needs d+1 vertices of length d, got shape {V.shape}")
    if not np.all(np.isfinite(V)):
        raise ValidationError("simplex vertices must be finite")
    d = V.shape[1]
    normals, offsets = [], []
    for k in range(d + 1):
        face = np.delete(V, k, axis=0)
        if d == 1:
            n = np.array([1.0])
        else:
            diffs = face[1:] - face[0]
            _, s, vt = np.linalg.svd(diffs)
            n = vt[-1]
        off = float(n @ face[0])
        if n @ V[k] > off:
            n, off = -n, -off
        normals.append(n)
        offsets.append(off)
    return HPolytope(np.array(normals), np.array(offsets))


def is_bounded(P: HPolytope) -> bool:
    """True iff every coordinate is bounded above and below over ``P``."""
    for k in range(P.dim):
        for sgn in (1.0, -1.0):
            c = np.zeros(P.dim)
            c[k] = sgn
            sol = lp.solve_lp(lp.LpProblem(c, P.normals, P.offsets))
            if sol.status is lp.LpStatus.INFEASIBLE:
                raise InfeasibleSystem("polytope is empty")
            if sol.status is lp.LpStatus.UNBOUNDED:
                return False
    return True


def origin_interior(P: HPolytope, tol: float = INTERIOR_TOL) -> bool:
    """Whether the origin is an interior point, i.e. every offset is positive."""
    return bool(np.all(P.offsets > tol))


@dataclass(frozen=True)
class VertexSet:
    vertices: np.ndarray
    active_sets: tuple[tuple[int, ...], ...]

    def __len__(self):
        return self.vertices.shape[0]


def _dedupe_tol(P: HPolytope) -> float:
    return 1e-7 * (1.0 + float(np.abs(P.offsets).max()))


def enumerate_vertices(P: HPolytope, cap: int = ENUM_CAP) -> VertexSet:
    """All vertices of ``P`` by brute force over d-subsets of constraints."""
    A, b = P.normals, P.offsets
    m, d = A.shape
    if m > cap:
        raise TooManyConstraints(f"{m} constraints exceed the enumeration cap {cap}")
    if d > MAX_ENUM_DIM:
        raise TooManyConstraints(f"dimension {d} exceeds {MAX_ENUM_DIM}")
    if m < d:
        raise DegeneratePolytope(f"{m} constraints cannot cut out a vertex in R^{d}")

    combos = np.array(list(itertools.combinations(range(m), d)), dtype=np.intp)
    points = []
    for chunk in np.array_split(combos, max(1, len(combos) // 20000 + 1)):
        blocks = A[chunk]  # (N, d, d)
        # unit rows give |det| <= 1 (Hadamard), so a small |det| flags near-singularity
        ok = np.abs(np.linalg.det(blocks)) > SINGULAR_TOL
        if not np.any(ok):
            continue
        x = np.linalg.solve(blocks[ok], b[chunk[ok]][..., None])[..., 0]
        feasible = np.all(x @ A.T <= b + FEAS_TOL, axis=1)
        points.append(x[feasible])
    pts = np.vstack(points) if points else np.empty((0, d))

    tol = _dedupe_tol(P)
    V = np.empty_like(pts)
    n = 0
    for p in pts:
        if n == 0 or np.min(np.sum((V[:n] - p) ** 2, axis=1)) > tol * tol:
            V[n] = p
            n += 1
    if n < d + 1:
        raise DegeneratePolytope(f"only {n} vertices found in R^{d}")
    V = V[:n]
    # lexicographic order keeps output independent of constraint order
    V = V[np.lexsort(V.T[::-1])]
    slack = b[None, :] - V @ A.T
    active = tuple(tuple(int(i) for i in np.flatnonzero(row <= TIGHT_TOL)) for row in slack)
    V.setflags(write=False)
    return VertexSet(V, active)


def diameter(V: VertexSet | np.ndarray) -> float:
    """Largest pairwise Euclidean distance between the vertices."""
    pts = V.vertices if isinstance(V, VertexSet) else np.asarray(V, dtype=float)
    if pts.shape[0] < 2:
        raise NotEnoughVertices("diameter needs at least two vertices")
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff**2).sum(axis=-1).max()))


def facet_rows(P: HPolytope, tol: float = FEAS_TOL) -> list[int]:
    """Indices of the facet-defining rows of ``P``.

    Row ``i`` is redundant when ``max a_i^T x`` over the remaining rows is at
    most ``b_i + tol``. Rows are tested from the highest index down against
    the rows still kept, so among duplicates the lowest index survives.
    """
    A, b = P.normals, P.offsets
    probe = lp.solve_lp(lp.LpProblem(np.zeros(P.dim), A, b))
    if probe.status is lp.LpStatus.INFEASIBLE:
        raise InfeasibleSystem("polytope is empty")
    keep = list(range(P.num_constraints))
    for i in reversed(range(P.num_constraints)):
        others = [j for j in keep if j != i]
        if not others:
            continue
        sol = lp.solve_lp(lp.LpProblem(A[i], A[others], b[others]))
        if sol.status is lp.LpStatus.OPTIMAL and sol.optimum <= b[i] + tol:
            keep = others
    return keep


def remove_redundant(P: HPolytope, tol: float = FEAS_TOL) -> HPolytope:
    """``P`` restricted to its facet-defining rows."""
    keep = facet_rows(P, tol)
    return P if len(keep) == P.num_constraints else P.select(keep)


@dataclass(frozen=True)
class FacetGeometry:
    facet_index: int
    vertices: np.ndarray
    measure: float
    centroid: np.ndarray


def in_plane_basis(normal) -> np.ndarray:
    """Orthonormal 2 x 3 basis of the plane orthogonal to a unit 3-vector.

    Built by Gram-Schmidt from the two coordinate axes least aligned with
    ``normal``, which avoids the near-parallel singular case.
    """
    a = np.asarray(normal, dtype=float)
    order = np.argsort(np.abs(a), kind="stable")[:2]
    basis = []
    for k in sorted(order):
        e = np.zeros(3)
        e[k] = 1.0
        e -= (e @ a) * a
        for u in basis:
            e -= (e @ u) * u
        basis.append(e / np.linalg.norm(e))
    return np.array(basis)


def facet_geometry(P: HPolytope, V: VertexSet, i: int) -> FacetGeometry:
    """Vertices, surface measure and centroid of facet ``i`` (d = 2 or 3)."""
    d = P.dim
    if d not in (2, 3):
        raise UnsupportedDimension(f"facet measures are implemented for d in {{2, 3}}, not {d}")
    if not 0 <= i < P.num_constraints:
        raise NotAFacet(i, "index out of range")
    on = [k for k, act in enumerate(V.active_sets) if i in act]
    pts = V.vertices[on]
    if len(pts) < d:
        raise NotAFacet(i, f"only {len(pts)} tight vertices")
    if d == 2:
        if len(pts) != 2:
            raise NotAFacet(i, f"{len(pts)} tight vertices on an edge")
        measure = float(np.linalg.norm(pts[1] - pts[0]))
        if measure <= TIGHT_TOL:
            raise NotAFacet(i, "edge has zero length")
        return FacetGeometry(i, pts, measure, pts.mean(axis=0))

    a = P.normals[i]
    basis = in_plane_basis(a)
    up = np.cross(basis[0], basis[1])  # +-a, matches the angular ordering
    mid = pts.mean(axis=0)
    coords = (pts - mid) @ basis.T
    order = np.argsort(np.arctan2(coords[:, 1], coords[:, 0]), kind="stable")
    pts = pts[order]
    area = 0.0
    moment = np.zeros(3)
    for k in range(len(pts)):
        p, q = pts[k], pts[(k + 1) % len(pts)]
        tri = 0.5 * float(np.cross(p - mid, q - mid) @ up)
        area += tri
        moment += tri * (mid + p + q) / 3.0
    if area <= TIGHT_TOL:
        raise NotAFacet(i, "facet has zero area")
    return FacetGeometry(i, pts, area, moment / area)


def facets(P: HPolytope, V: VertexSet | None = None) -> list[FacetGeometry]:
    V = enumerate_vertices(P) if V is None else V
    return [facet_geometry(P, V, i) for i in range(P.num_constraints)]
