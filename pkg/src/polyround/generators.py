"""Seeded canonical and random polytopes.

Randomness comes from the raw 64-bit output of PCG64 (numpy's
``PCG64(seed).random_raw``). Each word ``w`` becomes a double
``((w >> 11) + 0.5) * 2**-53`` in (0, 1), and Gaussian draws use the
Box-Muller transform on consecutive pairs, so a corpus is fixed by its seeds
alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import GenerationFailed, ValidationError
from .polytope import HPolytope, is_bounded

MAX_ATTEMPTS = 100


class Family(enum.Enum):
    CUBE = "cube"
    SIMPLEX = "simplex"
    SLAB = "slab"
    TANGENT_BALL = "tangent-ball"
    ROTATED_CUBE = "rotated-cube"
    PERTURBED_SIMPLEX = "perturbed-simplex"


@dataclass(frozen=True)
class GeneratorSpec:
    family: Family
    dim: int
    seed: int = 0
    m: int | None = None  # tangent-ball facet count
    epsilon: float = 1e-3  # slab half-thickness
    noise: float = 0.1  # perturbed-simplex normal noise

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if self.dim < 1:
            raise ValidationError("dim must be >= 1")
        if fam is Family.TANGENT_BALL:
            if self.m is None or self.m < self.dim + 1:
                raise ValidationError(f"tangent-ball needs m >= d+1 = {self.dim + 1}")
        if not self.epsilon > 0:
            raise ValidationError("epsilon must be positive")
        if not self.noise >= 0:
            raise ValidationError("noise must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")

    @property
    def label(self) -> str:
        fam = self.family.value
        extra = {
            Family.TANGENT_BALL: f",m={self.m}",
            Family.SLAB: f",eps={self.epsilon:g}",
            Family.PERTURBED_SIMPLEX: f",noise={self.noise:g}",
        }.get(self.family, "")
        return f"{fam}(d={self.dim}{extra},seed={self.seed})"


class Stream:
    """Uniform and Gaussian draws from a PCG64 word stream."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def uniform(self, n: int) -> np.ndarray:
        words = self._bits.random_raw(n)
        return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53

    def normal(self, n: int) -> np.ndarray:
        pairs = (n + 1) // 2
        u = self.uniform(2 * pairs).reshape(pairs, 2)
        rad = np.sqrt(-2.0 * np.log(u[:, 0]))
        ang = 2.0 * math.pi * u[:, 1]
        z = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]).reshape(-1)
        return z[:n]

    def sphere(self, m: int, d: int) -> np.ndarray:
        z = self.normal(m * d).reshape(m, d)
        return z / np.linalg.norm(z, axis=1, keepdims=True)

    def orthogonal(self, d: int) -> np.ndarray:
        """Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed)."""
        Z = self.normal(d * d).reshape(d, d)
        Q, R = np.linalg.qr(Z)
        return Q * np.sign(np.diag(R))


def cube_normals(d: int) -> np.ndarray:
    I = np.eye(d)
    return np.vstack([I, -I])


def regular_simplex_normals(d: int) -> np.ndarray:
    """``d + 1`` unit vectors in R^d with pairwise inner product ``-1/d``."""
    E = np.eye(d + 1) - 1.0 / (d + 1)
    # orthonormal basis of the sum-zero hyperplane in R^{d+1}
    _, _, vt = np.linalg.svd(np.ones((1, d + 1)))
    basis = vt[1:]
    N = E @ basis.T
    return N / np.linalg.norm(N, axis=1, keepdims=True)


def _checked(P: HPolytope, spec: GeneratorSpec) -> HPolytope:
    if not is_bounded(P):
        raise GenerationFailed(f"{spec.label} produced an unbounded polytope")
    return P


def generate(spec: GeneratorSpec) -> HPolytope:
    d = spec.dim
    fam = spec.family
    if fam is Family.CUBE:
        return _checked(HPolytope(cube_normals(d), np.ones(2 * d)), spec)
    if fam is Family.SIMPLEX:
        return _checked(HPolytope(regular_simplex_normals(d), np.ones(d + 1)), spec)
    if fam is Family.SLAB:
        b = np.ones(2 * d)
        b[d - 1] = b[2 * d - 1] = spec.epsilon
        return _checked(HPolytope(cube_normals(d), b), spec)
    rng = Stream(spec.seed)
    if fam is Family.ROTATED_CUBE:
        Q = rng.orthogonal(d)
        return _checked(HPolytope(cube_normals(d) @ Q.T, np.ones(2 * d)), spec)
    if fam is Family.TANGENT_BALL:
        for _ in range(MAX_ATTEMPTS):
            P = HPolytope(rng.sphere(spec.m, d), np.ones(spec.m))
            if is_bounded(P):
                return P
        raise GenerationFailed(f"{spec.label}: no bounded sample in {MAX_ATTEMPTS} attempts")
    if fam is Family.PERTURBED_SIMPLEX:
        base = regular_simplex_normals(d)
        for _ in range(MAX_ATTEMPTS):
            N = base + spec.noise * rng.normal((d + 1) * d).reshape(d + 1, d)
            if np.any(np.linalg.norm(N, axis=1) <= 1e-12):
                continue
            P = HPolytope(N, np.ones(d + 1))
            if is_bounded(P):
                return P
        raise GenerationFailed(f"{spec.label}: no bounded sample in {MAX_ATTEMPTS} attempts")
    raise ValidationError(f"unknown family {fam!r}")


@dataclass(frozen=True)
class CorpusEntry:
    spec: GeneratorSpec
    polytope: HPolytope


def corpus(
    dims=range(2, 7),
    rotated: int = 24,
    perturbed: int = 15,
    tangent: int = 18,
    epsilons=(1e-1, 1e-2, 1e-3),
    noises=(0.05, 0.2),
    base_seed: int = 20240101,
) -> list[CorpusEntry]:
    """The standard verification corpus.

    Per dimension: cube, regular simplex, one slab per epsilon, ``rotated``
    rotated cubes, ``perturbed`` perturbed simplices per noise level and
    ``tangent`` tangent-ball polytopes for every m in d+1..3d. A tangent-ball
    seed that exhausts its resampling budget is replaced by the next seed.
    """
    out: list[CorpusEntry] = []

    def add(spec):
        out.append(CorpusEntry(spec, generate(spec)))

    for d in dims:
        add(GeneratorSpec(Family.CUBE, d))
        add(GeneratorSpec(Family.SIMPLEX, d))
        for eps in epsilons:
            add(GeneratorSpec(Family.SLAB, d, epsilon=eps))
        for k in range(rotated):
            add(GeneratorSpec(Family.ROTATED_CUBE, d, seed=base_seed + 1000 * d + k))
        for noise in noises:
            for k in range(perturbed):
                add(GeneratorSpec(Family.PERTURBED_SIMPLEX, d, seed=base_seed + 2000 * d + k, noise=noise))
        for m in range(d + 1, 3 * d + 1):
            seed = base_seed + 100_000 * d + 1000 * m
            made = 0
            while made < tangent:
                spec = GeneratorSpec(Family.TANGENT_BALL, d, seed=seed, m=m)
                seed += 1
                try:
                    add(spec)
                except GenerationFailed:
                    continue
                made += 1
    return out
