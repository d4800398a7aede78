"""Singular values of the normal matrix by one-sided Jacobi rotations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, ValidationError

MAX_SWEEPS = 30
OFF_TOL = 1e-12


@dataclass(frozen=True)
class SvdResult:
    singular_values: np.ndarray  # descending
    right_vectors: np.ndarray  # d x d, columns v_1..v_d
    left_vectors: np.ndarray  # m x d, orthonormal columns u_1..u_d
    sweeps: int = 0

    @property
    def sigma_min(self) -> float:
        return float(self.singular_values[-1])

    @property
    def v_min(self) -> np.ndarray:
        return self.right_vectors[:, -1]

    @property
    def u_min(self) -> np.ndarray:
        return self.left_vectors[:, -1]

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


def _complete_columns(U: np.ndarray, good: np.ndarray) -> np.ndarray:
    """Replace the columns of U not flagged ``good`` with an orthonormal completion."""
    m, d = U.shape
    U = U.copy()
    basis = [U[:, k] for k in range(d) if good[k]]
    cand = iter(np.eye(m))
    for k in range(d):
        if good[k]:
            continue
        while True:
            e = next(cand).copy()
            for _ in range(2):
                for u in basis:
                    e -= (u @ e) * u
            nrm = np.linalg.norm(e)
            if nrm > 1e-6:
                break
        U[:, k] = e / nrm
        basis.append(U[:, k])
    return U


def svd(A) -> SvdResult:
    """Thin SVD ``A = U diag(s) V^T`` of an m x d matrix with m >= d.

    Columns are orthogonalized pairwise in cyclic order until every
    off-diagonal Gram entry is at most ``1e-12 * ||A||_F^2``. Each right
    singular vector is signed so that its first largest-magnitude component
    is nonnegative.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValidationError("svd expects a 2-D matrix")
    m, d = A.shape
    if not (m >= d >= 1):
        raise ValidationError(f"svd needs m >= d >= 1, got {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix entries must be finite")

    W = A.copy()
    V = np.eye(d)
    fro2 = float((A * A).sum())
    tol = OFF_TOL * fro2
    sweeps = 0
    converged = d == 1 or fro2 == 0.0
    while not converged:
        if sweeps >= MAX_SWEEPS:
            raise NoConvergence(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                wp, wq = W[:, p], W[:, q]
                alpha = wp @ wp
                beta = wq @ wq
                gamma = wp @ wq
                off = max(off, abs(gamma))
                if gamma == 0.0 or abs(gamma) <= 1e-300:
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                W[:, [p, q]] = np.column_stack([c * wp - s * wq, s * wp + c * wq])
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        converged = off <= tol

    sigma = np.linalg.norm(W, axis=0)
    # ascending stable sort reversed: ties keep the later column first
    order = np.argsort(sigma, kind="stable")[::-1]
    sigma = sigma[order]
    W = W[:, order]
    V = V[:, order]
    good = sigma > 1e-14 * max(1.0, np.sqrt(fro2))
    U = np.zeros((m, d))
    U[:, good] = W[:, good] / sigma[good]
    if not np.all(good):
        U = _complete_columns(U, good)
        sigma = np.where(good, sigma, 0.0)
    for k in range(d):
        j = int(np.argmax(np.abs(V[:, k])))
        if V[j, k] < 0:
            V[:, k] = -V[:, k]
            U[:, k] = -U[:, k]
    return SvdResult(sigma, V, U, sweeps)


def gram_eigvals_2x2(A) -> tuple[float, float]:
    """Closed-form eigenvalues (largest, smallest) of ``A^T A`` for d = 2."""
    A = np.asarray(A, dtype=float)
    G = A.T @ A
    p, q, r = G[0, 0], G[0, 1], G[1, 1]
    half_tr = 0.5 * (p + r)
    disc = np.hypot(0.5 * (p - r), q)
    lam_max = half_tr + disc
    det = p * r - q * q
    # det / lam_max avoids cancellation in half_tr - disc
    lam_min = det / lam_max if lam_max > 0 else 0.0
    return float(lam_max), float(max(lam_min, 0.0))


def sigma_min(A) -> float:
    """Smallest singular value of ``A``; checked against the 2x2 closed form when d = 2."""
    res = svd(A)
    s = res.sigma_min
    A = np.asarray(A, dtype=float)
    if A.shape[1] == 2:
        _, lam = gram_eigvals_2x2(A)
        scale = max(1.0, float((A * A).sum()))
        if abs(s * s - lam) > 1e-10 * scale:
            raise NoConvergence(
                f"Jacobi sigma_min^2 = {s * s!r} disagrees with closed form {lam!r}"
            )
    return s


def symmetric_eigvals(S, max_sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi, descending."""
    S = np.array(S, dtype=float)
    n = S.shape[0]
    scale = np.abs(S).max() if S.size else 0.0
    for _ in range(max_sweeps):
        off = np.abs(S - np.diag(np.diag(S))).max() if n > 1 else 0.0
        if off <= 1e-15 * max(scale, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if S[p, q] == 0.0:
                    continue
                theta = (S[q, q] - S[p, p]) / (2.0 * S[p, q])
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                S = J.T @ S @ J
    else:
        raise NoConvergence("symmetric Jacobi did not converge")
    return np.sort(np.diag(S))[::-1]
