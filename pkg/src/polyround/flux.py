"""Facet flux integrals and recovery of a constant field from them.

Given fluxes ``phi_i`` of a field through the facets of a polytope, the
constant field ``J`` with ``(J . a_i) |F_i| = phi_i`` is recovered in the
least-squares sense from the normal equations ``A^T A J = A^T phi_hat`` with
``phi_hat_i = phi_i / |F_i|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import spectral
from .errors import SingularGram, UnsupportedDimension, ValidationError
from .polytope import FacetGeometry, HPolytope, enumerate_vertices, facet_geometry

GRAM_TOL = 1e-10

# 8-point Gauss-Legendre on [-1, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)

# 7-point degree-5 rule on the reference triangle; weights sum to 1
_S15 = np.sqrt(15.0)
_A1 = (6.0 - _S15) / 21.0
_A2 = (6.0 + _S15) / 21.0
_W1 = (155.0 - _S15) / 1200.0
_W2 = (155.0 + _S15) / 1200.0
TRI_BARY = np.array(
    [
        [1 / 3, 1 / 3, 1 / 3],
        [_A1, _A1, 1 - 2 * _A1],
        [_A1, 1 - 2 * _A1, _A1],
        [1 - 2 * _A1, _A1, _A1],
        [_A2, _A2, 1 - 2 * _A2],
        [_A2, 1 - 2 * _A2, _A2],
        [1 - 2 * _A2, _A2, _A2],
    ]
)
TRI_WEIGHTS = np.array([9 / 40, _W1, _W1, _W1, _W2, _W2, _W2])


@dataclass(frozen=True)
class ConstantField:
    J0: np.ndarray

    def __post_init__(self):
        J0 = np.asarray(self.J0, dtype=float).reshape(-1)
        if not np.all(np.isfinite(J0)):
            raise ValidationError("field parameters must be finite")
        object.__setattr__(self, "J0", J0)

    def __call__(self, y):
        return np.broadcast_to(self.J0, np.shape(y))


@dataclass(frozen=True)
class AffineField:
    """``J(y) = J0 + M y``."""

    J0: np.ndarray
    M: np.ndarray

    def __post_init__(self):
        J0 = np.asarray(self.J0, dtype=float).reshape(-1)
        M = np.asarray(self.M, dtype=float)
        if M.shape != (J0.size, J0.size):
            raise ValidationError(f"M must be {J0.size}x{J0.size}, got {M.shape}")
        if not (np.all(np.isfinite(J0)) and np.all(np.isfinite(M))):
            raise ValidationError("field parameters must be finite")
        object.__setattr__(self, "J0", J0)
        object.__setattr__(self, "M", M)

    def __call__(self, y):
        return self.J0 + np.asarray(y) @ self.M.T


@dataclass(frozen=True)
class SampledField:
    """An arbitrary field given by a callback mapping an (n, d) array of points to (n, d)."""

    fn: Callable[[np.ndarray], np.ndarray]

    def __call__(self, y):
        return np.asarray(self.fn(np.asarray(y, dtype=float)), dtype=float)


FieldSpec = ConstantField | AffineField | SampledField


@dataclass(frozen=True)
class FluxData:
    phi: np.ndarray
    facet_measures: np.ndarray

    @property
    def phi_hat(self) -> np.ndarray:
        return self.phi / self.facet_measures


@dataclass(frozen=True)
class ReconstructionResult:
    J: np.ndarray
    residual_norm: float
    gram_condition: float


def _facet_integral(field, facet: FacetGeometry, normal: np.ndarray) -> float:
    """Integral of ``field . normal`` over a facet by fixed-order quadrature."""
    pts = facet.vertices
    if pts.shape[1] == 2:
        p, q = pts
        half = 0.5 * np.linalg.norm(q - p)
        y = 0.5 * (p + q) + np.outer(_GL_NODES, 0.5 * (q - p))
        return float(half * (_GL_WEIGHTS @ (field(y) @ normal)))
    mid = pts.mean(axis=0)
    total = 0.0
    for k in range(len(pts)):
        tri = np.array([mid, pts[k], pts[(k + 1) % len(pts)]])
        area = 0.5 * np.linalg.norm(np.cross(tri[1] - tri[0], tri[2] - tri[0]))
        y = TRI_BARY @ tri
        total += area * float(TRI_WEIGHTS @ (field(y) @ normal))
    return total


def facet_flux(P: HPolytope, field: FieldSpec, facets: list[FacetGeometry] | None = None) -> FluxData:
    """Flux of ``field`` through each facet of ``P`` along its outward normal."""
    if P.dim not in (2, 3):
        raise UnsupportedDimension(f"flux is implemented for d in {{2, 3}}, not {P.dim}")
    if facets is None:
        V = enumerate_vertices(P)
        facets = [facet_geometry(P, V, i) for i in range(P.num_constraints)]
    A = P.normals
    measures = np.array([f.measure for f in facets])
    if isinstance(field, ConstantField):
        phi = (A @ field.J0) * measures
    elif isinstance(field, AffineField):
        # the integrand is affine on each facet, so the centroid value is exact
        cent = np.array([f.centroid for f in facets])
        vals = field.J0 + cent @ field.M.T
        phi = np.einsum("ij,ij->i", vals, A) * measures
    else:
        phi = np.array([_facet_integral(field, f, A[f.facet_index]) for f in facets])
    if not np.all(np.isfinite(phi)):
        raise ValidationError("field produced non-finite fluxes")
    return FluxData(phi, measures)


def reconstruct(P: HPolytope | np.ndarray, data: FluxData) -> ReconstructionResult:
    """Least-squares constant field from facet fluxes via Cholesky on ``A^T A``."""
    A = P.normals if isinstance(P, HPolytope) else np.asarray(P, dtype=float)
    if A.shape[0] != data.phi.shape[0]:
        raise ValidationError(f"{A.shape[0]} normals but {data.phi.shape[0]} fluxes")
    sv = spectral.svd(A).singular_values
    if sv[-1] <= GRAM_TOL:
        raise SingularGram(f"sigma_min(A) = {sv[-1]:.3g}; A^T A is singular")
    phi_hat = data.phi_hat
    G = A.T @ A
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise SingularGram("A^T A is not positive definite") from exc
    y = np.linalg.solve(L, A.T @ phi_hat)
    J = np.linalg.solve(L.T, y)
    residual = float(np.linalg.norm(A @ J - phi_hat))
    return ReconstructionResult(J, residual, float(sv[0] ** 2 / sv[-1] ** 2))
