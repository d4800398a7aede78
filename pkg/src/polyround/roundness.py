"""Degeneracy ratio, the delta < sigma_min bound, and its proof witness.

``analyze`` computes inradius / diameter and the smallest singular value of
the normal matrix. ``extract_witness`` replays the geometric argument behind
the bound numerically: it intersects the line spanned by the smallest right
singular vector with the polytope, maps the resulting chord through ``A`` and
evaluates each link of the inequality chain.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import lp, spectral
from .errors import (
    DegenerateDirection,
    NotFullDimensional,
    UnboundedPolytope,
)
from .polytope import (
    INTERIOR_TOL,
    HPolytope,
    diameter,
    enumerate_vertices,
    facet_rows,
    is_bounded,
)

FLAT_TOL = 1e-10
DIRECTION_TOL = 1e-12


@dataclass(frozen=True)
class RoundnessReport:
    inradius: float
    chebyshev_center: np.ndarray
    diameter: float
    delta: float
    sigma_min: float
    bound_margin: float
    full_dimensional: bool
    num_constraints: int
    removed_rows: tuple[int, ...] = ()
    raw_sigma_min: float | None = None

    @property
    def bound_holds(self) -> bool:
        return self.delta < self.sigma_min

    @property
    def inverse_delta(self) -> float:
        return self.diameter / self.inradius if self.inradius > 0 else float("inf")

    def to_dict(self) -> dict:
        out = {
            "inradius": self.inradius,
            "center": [float(x) for x in self.chebyshev_center],
            "diameter": self.diameter,
            "delta": self.delta,
            "sigma_min": self.sigma_min,
            "bound_margin": self.bound_margin,
            "full_dimensional": self.full_dimensional,
            "num_constraints": self.num_constraints,
            "removed_rows": list(self.removed_rows),
        }
        if self.raw_sigma_min is not None:
            out["raw_sigma_min"] = self.raw_sigma_min
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RoundnessReport":
        return cls(
            inradius=float(data["inradius"]),
            chebyshev_center=np.asarray(data["center"], dtype=float),
            diameter=float(data["diameter"]),
            delta=float(data["delta"]),
            sigma_min=float(data["sigma_min"]),
            bound_margin=float(data["bound_margin"]),
            full_dimensional=bool(data["full_dimensional"]),
            num_constraints=int(data["num_constraints"]),
            removed_rows=tuple(int(i) for i in data.get("removed_rows", ())),
            raw_sigma_min=(
                float(data["raw_sigma_min"]) if data.get("raw_sigma_min") is not None else None
            ),
        )


def _irredundant(P: HPolytope) -> tuple[HPolytope, tuple[int, ...]]:
    keep = facet_rows(P)
    if len(keep) == P.num_constraints:
        return P, ()
    kept = set(keep)
    removed = tuple(i for i in range(P.num_constraints) if i not in kept)
    return P.select(keep), removed


def analyze(P: HPolytope, keep_redundant: bool = False, check_bounded: bool = True) -> RoundnessReport:
    """Inradius, diameter, degeneracy ratio and sigma_min of ``P``.

    The bound is evaluated on the irredundant form of ``P``. When rows were
    removed, or when ``keep_redundant`` is set, the smallest singular value of
    the raw normal matrix is recorded as ``raw_sigma_min``.
    """
    if check_bounded and not is_bounded(P):
        raise UnboundedPolytope("polytope is unbounded")
    Q, removed = _irredundant(P)
    center, r = lp.chebyshev(Q)
    diam = diameter(enumerate_vertices(Q))
    s = spectral.sigma_min(Q.normals)
    full = r > FLAT_TOL
    delta = r / diam if full else 0.0
    raw = None
    if removed or keep_redundant:
        raw = s if not removed else spectral.sigma_min(P.normals)
    return RoundnessReport(
        inradius=r,
        chebyshev_center=center,
        diameter=diam,
        delta=delta,
        sigma_min=s,
        bound_margin=s - delta,
        full_dimensional=full,
        num_constraints=Q.num_constraints,
        removed_rows=removed,
        raw_sigma_min=raw,
    )


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))


@dataclass(frozen=True)
class BoundWitness:
    v_d: np.ndarray
    sigma_min: float
    lambda1: float
    lambda2: float
    f: np.ndarray
    g: np.ndarray
    facet_i: int
    facet_j: int
    b: np.ndarray  # offsets after centering
    b_prime: np.ndarray
    Af: np.ndarray
    Ag: np.ndarray
    segment_length: float  # |f - g|
    image_length: float  # |Af - Ag|
    leg_length: float  # |Ag - b'|
    lhs_chain: float
    mid_chain: float
    rhs_chain: float
    diameter: float
    inradius: float
    center: np.ndarray
    checks: tuple[Check, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if k == "checks":
                continue
            out[k] = v.tolist() if isinstance(v, np.ndarray) else v
        out["checks"] = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]
        return out


def _chain_checks(w: dict) -> tuple[Check, ...]:
    lam1, lam2 = w["lambda1"], w["lambda2"]
    bi = w["b"][w["facet_i"]]
    Af, Ag, bp = w["Af"], w["Ag"], w["b_prime"]
    leg_a = Af - bp
    leg_b = Ag - bp
    dot = float(leg_a @ leg_b)
    s = w["sigma_min"]
    lhs, mid, rhs = w["lhs_chain"], w["mid_chain"], w["rhs_chain"]
    r = w["inradius"]
    g = lambda x: f"{x:.17g}"  # noqa: E731
    return (
        Check(
            "sign",
            lam1 != 0 and lam2 != 0 and np.sign(lam1) == -np.sign(lam2),
            f"lambda1 = {g(lam1)}, lambda2 = {g(lam2)}",
        ),
        Check(
            "segment_length",
            abs(w["segment_length"] - abs(lam1 - lam2)) <= 1e-9,
            f"|f-g| = {g(w['segment_length'])} vs |lambda1-lambda2| = {g(abs(lam1 - lam2))}",
        ),
        Check(
            "image_length",
            abs(w["image_length"] - s * w["segment_length"]) <= 1e-8,
            f"|Af-Ag| = {g(w['image_length'])} vs sigma_min*|f-g| = {g(s * w['segment_length'])}",
        ),
        Check(
            "right_angle",
            abs(dot) <= 1e-9 * (1.0 + np.linalg.norm(leg_a) * np.linalg.norm(leg_b)),
            f"(Af-b').(Ag-b') = {g(dot)}",
        ),
        Check(
            "leg_length",
            abs(w["leg_length"] - mid) <= 1e-9 * (1.0 + mid),
            f"|Ag-b'| = {g(w['leg_length'])} vs b_i(1+|lambda2/lambda1|) = {g(mid)}",
        ),
        Check("hypotenuse", lhs > mid - 1e-9, f"{g(lhs)} > {g(mid)}"),
        Check("leg_exceeds_offset", mid > rhs, f"{g(mid)} > {g(rhs)}"),
        Check(
            "diameter_bound",
            s * w["diameter"] > bi,
            f"sigma_min*diam = {g(s * w['diameter'])} > b_i = {g(bi)}",
        ),
        Check("offset_vs_inradius", bi >= r - 1e-9, f"b_i = {g(bi)} >= inradius = {g(r)}"),
        Check("distinct_facets", w["facet_i"] != w["facet_j"], f"i = {w['facet_i']}, j = {w['facet_j']}"),
        Check(
            "degeneracy_bound",
            r / w["diameter"] < s,
            f"delta = {g(r / w['diameter'])} < sigma_min = {g(s)}",
        ),
    )


def extract_witness(P: HPolytope, irredundant: bool = True) -> BoundWitness:
    """Numerically evaluate every object in the proof of ``delta < sigma_min``.

    ``P`` is first translated so its Chebyshev center sits at the origin.
    """
    if irredundant:
        P, _ = _irredundant(P)
    center, r = lp.chebyshev(P)
    if r <= FLAT_TOL:
        raise NotFullDimensional(f"inradius {r:.3g} is not positive")
    P0 = P.translate(-center)
    A, b = P0.normals, P0.offsets
    diam = diameter(enumerate_vertices(P0))
    res = spectral.svd(A)
    v = res.v_min
    s = res.sigma_min

    proj = A @ v
    pos = np.flatnonzero(proj > DIRECTION_TOL)
    neg = np.flatnonzero(proj < -DIRECTION_TOL)
    if pos.size == 0 or neg.size == 0:
        raise DegenerateDirection("span(v_d) leaves the polytope in one direction")
    up = b[pos] / proj[pos]
    down = b[neg] / -proj[neg]
    # argmin returns the first (lowest-index) minimizer
    i = int(pos[np.argmin(up)])
    j = int(neg[np.argmin(down)])
    lam1 = float(up.min())
    lam2 = float(-down.min())
    f = lam1 * v
    g = lam2 * v
    Af = A @ f
    Ag = A @ g
    bp = Ag.copy()
    bp[i] = b[i]
    w = dict(
        v_d=v,
        sigma_min=s,
        lambda1=lam1,
        lambda2=lam2,
        f=f,
        g=g,
        facet_i=i,
        facet_j=j,
        b=b,
        b_prime=bp,
        Af=Af,
        Ag=Ag,
        segment_length=float(np.linalg.norm(f - g)),
        image_length=float(np.linalg.norm(Af - Ag)),
        leg_length=float(np.linalg.norm(Ag - bp)),
        lhs_chain=s * abs(lam1 - lam2),
        mid_chain=float(b[i] * (1.0 + abs(lam2 / lam1))),
        rhs_chain=float(b[i]),
        diameter=diam,
        inradius=r,
        center=center,
    )
    return BoundWitness(**w, checks=_chain_checks(w))


@dataclass(frozen=True)
class Certificate:
    delta_positive: bool
    sigma_min_lower_bound: float


def certify_reconstruction(P: HPolytope, report: RoundnessReport | None = None) -> Certificate:
    """A positive degeneracy ratio certifies that ``A^T A`` is invertible.

    Since ``delta < sigma_min``, ``delta`` itself is a lower bound on the
    smallest singular value.
    """
    report = analyze(P) if report is None else report
    positive = report.full_dimensional and report.delta > INTERIOR_TOL
    return Certificate(positive, report.delta if positive else 0.0)
