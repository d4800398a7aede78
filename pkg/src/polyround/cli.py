"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a witness chain inequality failed,
4 ``audit --strict`` found irregular cells.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import flux, io, spectral
from .audit import AuditConfig, audit_mesh
from .errors import PolyroundError, ValidationError
from .generators import Family, GeneratorSpec, generate
from .polytope import remove_redundant
from .roundness import analyze, certify_reconstruction, extract_witness

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_WITNESS_FAILED = 3
EXIT_IRREGULAR = 4


def _cmd_analyze(args, out) -> int:
    P = io.load_polytope(args.input)
    rep = analyze(P, keep_redundant=args.keep_redundant)
    doc = rep.to_dict()
    if args.keep_redundant:
        doc["raw_singular_values"] = spectral.svd(P.normals).singular_values
    doc["witness"] = extract_witness(P).to_dict() if rep.full_dimensional else None
    out.write(io.dumps(doc))
    return EXIT_OK


def _cmd_witness(args, out) -> int:
    P = io.load_polytope(args.input)
    w = extract_witness(P)
    out.write(io.dumps(w.to_dict()))
    for c in w.checks:
        out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}\n")
    return EXIT_OK if w.holds else EXIT_WITNESS_FAILED


def field_from_dict(data: dict, dim: int):
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError("field needs a 'kind'")
    kind = data["kind"]
    try:
        J0 = np.asarray(data.get("J0", data.get("J", np.zeros(dim))), dtype=float)
        if kind == "constant":
            field = flux.ConstantField(J0)
        elif kind == "affine":
            field = flux.AffineField(J0, np.asarray(data["M"], dtype=float))
        else:
            raise ValidationError(f"unknown field kind {kind!r}; expected 'constant' or 'affine'")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"bad field parameters: {exc}") from exc
    if field.J0.shape != (dim,):
        raise ValidationError(f"field has dimension {field.J0.size}, polytope has {dim}")
    return field


def _cmd_reconstruct(args, out) -> int:
    data = io.read_json(args.input)
    if "polytope" not in data or "field" not in data:
        raise ValidationError("flux input needs 'polytope' and 'field'")
    P = io.polytope_from_dict(data["polytope"])
    field = field_from_dict(data["field"], P.dim)
    rep = analyze(P)
    cert = certify_reconstruction(P, rep)
    Q = remove_redundant(P)
    fd = flux.facet_flux(Q, field)
    res = flux.reconstruct(Q, fd)
    out.write(
        io.dumps(
            {
                "phi": fd.phi,
                "facet_measures": fd.facet_measures,
                "phi_hat": fd.phi_hat,
                "J": res.J,
                "residual": res.residual_norm,
                "gram_condition": res.gram_condition,
                "certificate": {
                    "delta_positive": cert.delta_positive,
                    "sigma_min_lower_bound": cert.sigma_min_lower_bound,
                },
            }
        )
    )
    return EXIT_OK


def _cmd_generate(args, out) -> int:
    spec = GeneratorSpec(
        Family(args.family),
        args.dim,
        seed=args.seed,
        m=args.m,
        epsilon=args.epsilon,
        noise=args.noise,
    )
    text = io.dumps(io.polytope_to_dict(generate(spec)))
    if args.out is None:
        out.write(text)
    else:
        Path(args.out).write_text(text)
    return EXIT_OK


def _cmd_audit(args, out) -> int:
    cells = io.load_mesh(args.mesh)
    config = AuditConfig(args.sigma_bar, args.diameter_cap)
    rep = audit_mesh(cells, config, workers=args.workers)
    out.write(rep.to_csv() if args.format == "csv" else io.dumps(rep.to_dict()))
    if args.strict and rep.num_irregular:
        return EXIT_IRREGULAR
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polyround",
        description="Degeneracy ratio and smallest-singular-value bound for H-polytopes.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="inradius, diameter, delta and sigma_min")
    a.add_argument("--input", required=True)
    a.add_argument("--keep-redundant", action="store_true", help="also report the raw spectrum")
    a.set_defaults(func=_cmd_analyze)

    w = sub.add_parser("witness", help="evaluate the bound's inequality chain")
    w.add_argument("--input", required=True)
    w.set_defaults(func=_cmd_witness)

    r = sub.add_parser("reconstruct", help="facet fluxes and the recovered constant field")
    r.add_argument("--input", required=True)
    r.set_defaults(func=_cmd_reconstruct)

    g = sub.add_parser("generate", help="write a generated polytope")
    g.add_argument("--family", required=True, choices=[f.value for f in Family])
    g.add_argument("--dim", required=True, type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--epsilon", type=float, default=1e-3)
    g.add_argument("--noise", type=float, default=0.1)
    g.add_argument("--out", default=None)
    g.set_defaults(func=_cmd_generate)

    m = sub.add_parser("audit", help="inscribed-ball regularity audit of a mesh")
    m.add_argument("--mesh", required=True)
    m.add_argument("--sigma-bar", required=True, type=float)
    m.add_argument("--diameter-cap", type=float, default=1.0)
    m.add_argument("--format", choices=["json", "csv"], default="json")
    m.add_argument("--strict", action="store_true")
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=_cmd_audit)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except PolyroundError as exc:
        err.write(f"polyround {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
