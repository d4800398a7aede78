"""Inscribed-ball regularity audit over a collection of mesh cells.

A cell K is regular when ``diam K / inrad K <= sigma_bar`` and
``diam K <= diameter_cap``. Each cell is analyzed independently; a cell that
fails to analyze is recorded as irregular with its error message instead of
aborting the batch.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import PolyroundError, ValidationError
from .io import format_float, polytope_from_dict
from .polytope import HPolytope, from_simplex
from .roundness import analyze


@dataclass(frozen=True)
class AuditConfig:
    sigma_bar: float
    diameter_cap: float = 1.0

    def __post_init__(self):
        if not self.sigma_bar >= 2.0:
            raise ValidationError("sigma_bar must be >= 2 (a ball already has diam/inrad = 2)")
        if not self.diameter_cap > 0:
            raise ValidationError("diameter_cap must be positive")


@dataclass(frozen=True)
class CellRecord:
    cell_id: int
    delta: float
    inverse_delta: float
    sigma_min: float
    bound_margin: float
    diameter: float
    inradius: float
    regular: bool
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "cell_id": self.cell_id,
            "delta": self.delta,
            "inverse_delta": self.inverse_delta,
            "sigma_min": self.sigma_min,
            "bound_margin": self.bound_margin,
            "diameter": self.diameter,
            "inradius": self.inradius,
            "regular": self.regular,
            "error": self.error,
        }


@dataclass(frozen=True)
class MeshAuditReport:
    cells: list[CellRecord] = field(default_factory=list)
    sigma_bar: float = float("nan")
    diameter_cap: float = float("nan")

    @property
    def num_irregular(self) -> int:
        return sum(not c.regular for c in self.cells)

    @property
    def min_delta(self) -> float | None:
        return min((c.delta for c in self.cells), default=None)

    @property
    def max_inverse_delta(self) -> float | None:
        return max((c.inverse_delta for c in self.cells), default=None)

    @property
    def irregular_ids(self) -> list[int]:
        return [c.cell_id for c in self.cells if not c.regular]

    def summary(self) -> dict:
        return {
            "num_cells": len(self.cells),
            "min_delta": self.min_delta,
            "max_inverse_delta": self.max_inverse_delta,
            "num_irregular": self.num_irregular,
        }

    def to_dict(self) -> dict:
        return {
            "config": {"sigma_bar": self.sigma_bar, "diameter_cap": self.diameter_cap},
            "cells": [c.to_dict() for c in self.cells],
            "summary": self.summary(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "delta", "inverse_delta", "sigma_min", "margin", "regular"])
        for c in self.cells:
            w.writerow(
                [
                    c.cell_id,
                    format_float(c.delta),
                    format_float(c.inverse_delta),
                    format_float(c.sigma_min),
                    format_float(c.bound_margin),
                    "true" if c.regular else "false",
                ]
            )
        return buf.getvalue()


def as_polytope(cell) -> HPolytope:
    """Accept an HPolytope, a JSON cell dict, or a (d+1) x d array of simplex vertices."""
    if isinstance(cell, HPolytope):
        return cell
    if isinstance(cell, dict):
        return polytope_from_dict(cell)
    return from_simplex(cell)


def _audit_cell(cell_id: int, cell, config: AuditConfig) -> CellRecord:
    nan = float("nan")
    try:
        P = as_polytope(cell)
        rep = analyze(P)
    except PolyroundError as exc:
        return CellRecord(cell_id, nan, nan, nan, nan, nan, nan, False, f"{type(exc).__name__}: {exc}")
    error = None
    if not rep.full_dimensional:
        error = "cell is not full-dimensional"
    elif not rep.delta < rep.sigma_min:
        # the bound delta < sigma_min is a theorem; a violation means a numerical bug
        error = f"self-check failed: delta {rep.delta!r} >= sigma_min {rep.sigma_min!r}"
    inv = rep.inverse_delta
    regular = error is None and inv <= config.sigma_bar and rep.diameter <= config.diameter_cap
    return CellRecord(
        cell_id,
        rep.delta,
        inv,
        rep.sigma_min,
        rep.bound_margin,
        rep.diameter,
        rep.inradius,
        bool(regular),
        error,
    )


def audit_mesh(cells, config: AuditConfig, workers: int = 1) -> MeshAuditReport:
    """Audit every cell; records come back in input order."""
    cells = list(cells)
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda ic: _audit_cell(ic[0], ic[1], config), enumerate(cells)))
    else:
        records = [_audit_cell(i, c, config) for i, c in enumerate(cells)]
    return MeshAuditReport(records, config.sigma_bar, config.diameter_cap)


def scale_cells(cells, s: float) -> list[HPolytope]:
    return [as_polytope(c).scale(s) for c in cells]


def equilateral_pair() -> list[np.ndarray]:
    """Two unit-side equilateral triangles sharing an edge."""
    h = np.sqrt(3.0) / 2.0
    return [
        np.array([[0.0, 0.0], [1.0, 0.0], [0.5, h]]),
        np.array([[1.0, 0.0], [1.5, h], [0.5, h]]),
    ]
