"""Command-line front end: validate / cohomology / omega / isotropy / simulate / sweep.

Structured reports go out as JSON, trajectories and sweeps as CSV.  All
numeric output uses 17 significant digits so that files round-trip
bit-faithfully.  Exit codes: 0 success, 2 validation failure, 3
degenerate-form abort.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import itertools
import json
import os
import sys

import numpy as np

from . import __version__
from .algebra import get_algebra, load_algebra, validate_algebra
from .cohomology import cohomology_dimensions, cocycle_residual, solve_primitive
from .dynamics import InertiaTensor, hamiltonian, integrate, so3_vector_representation
from .errors import (DegenerateForm, LieDeformError, NotACocycle,
                     NotAntisymmetric, NotExact, ShapeMismatch, UpsilonPresent)
from .phase_space import (DeformedStructure, darboux_shift, degeneracy,
                          load_deformation, poisson_tensor)
from .symmetry import isotropy_subalgebra

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3

REGISTRY_ENV = "LIEDEFORM_REGISTRY"


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _round17(obj):
    """Recursively coerce floats through 17 significant digits (lossless for float64)."""
    if isinstance(obj, float):
        return float(f"{obj:.17g}")
    if isinstance(obj, np.floating):
        return float(f"{float(obj):.17g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _round17(obj.tolist())
    if isinstance(obj, dict):
        return {k: _round17(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round17(v) for v in obj]
    return obj


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def emit_report(report: dict, output: str | None):
    text = json.dumps(_round17(report), indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def input_hash(payload) -> str:
    """Stable hash over the resolved numeric inputs of a run."""
    blob = json.dumps(_round17(payload), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# argument parsing / resolution
# ---------------------------------------------------------------------------

def parse_vector(text: str) -> np.ndarray:
    return np.array([float(tok) for tok in text.split(",")], dtype=float)


def resolve_algebra(spec: str):
    """Path to an algebra spec file, or a registry name.

    With LIEDEFORM_REGISTRY set, names are first resolved as <dir>/<name>.json.
    """
    if os.path.exists(spec):
        return load_algebra(spec)
    override = os.environ.get(REGISTRY_ENV)
    if override:
        candidate = os.path.join(override, spec + ".json")
        if os.path.exists(candidate):
            return load_algebra(candidate)
    return get_algebra(spec)


def resolve_structure(args, algebra) -> DeformedStructure:
    if getattr(args, "deformation", None):
        return load_deformation(args.deformation, algebra)
    if getattr(args, "xi", None):
        from .cohomology import delta1_scalar
        return DeformedStructure(algebra, delta1_scalar(algebra, parse_vector(args.xi)))
    return DeformedStructure(algebra)


def resolve_inertia(spec: str, n: int) -> InertiaTensor:
    if spec == "identity":
        return InertiaTensor.identity(n)
    if spec.startswith("diag:"):
        return InertiaTensor.diagonal(parse_vector(spec[len("diag:"):]))
    with open(spec) as fh:
        data = json.load(fh)
    I_inv = np.asarray(data["I_inv"] if isinstance(data, dict) else data, float)
    return InertiaTensor(I_inv)


def _structure_payload(structure: DeformedStructure) -> dict:
    return {
        "algebra": {"name": structure.algebra.name,
                    "dim": structure.algebra.dim,
                    "f": structure.algebra.f},
        "Theta": structure.Theta,
        "Upsilon": structure.Upsilon,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    algebra = resolve_algebra(args.algebra)
    report = validate_algebra(algebra.f, tol=args.tol)
    out = {
        "algebra": algebra.name,
        "dim": algebra.dim,
        "antisymmetry_residual": report.antisymmetry_residual,
        "jacobi_residual": report.jacobi_residual,
        "accepted": report.accepted,
        "input_hash": input_hash({"f": algebra.f}),
        "version": __version__,
    }
    emit_report(out, args.output)
    return EXIT_OK if report.accepted else EXIT_VALIDATION


def cmd_cohomology(args) -> int:
    algebra = resolve_algebra(args.algebra)
    structure = resolve_structure(args, algebra)
    dims = cohomology_dimensions(algebra)
    residual = cocycle_residual(algebra, structure.Theta)
    try:
        xi, _, _ = solve_primitive(algebra, structure.Theta)
        exact, xi_out = True, xi
    except NotExact:
        exact, xi_out = False, None
    out = {
        "algebra": algebra.name,
        "cocycle_residual": residual,
        "exact": exact,
        "xi": xi_out,
        "dims": {"Z2": dims.z2, "B2": dims.b2, "H2": dims.h2, "H1": dims.h1},
        "input_hash": input_hash(_structure_payload(structure)),
        "version": __version__,
    }
    emit_report(out, args.output)
    return EXIT_OK


def cmd_omega(args) -> int:
    algebra = resolve_algebra(args.algebra)
    structure = resolve_structure(args, algebra)
    pi = parse_vector(args.pi) if args.pi else np.zeros(algebra.dim)
    report = degeneracy(structure, pi, rank_tol=args.rank_tol)
    poisson = None
    if report.nullity == 0:
        poisson = poisson_tensor(structure, pi, rank_tol=args.rank_tol)
    darboux_xi = None
    try:
        _, darboux_xi = darboux_shift(structure, pi)
    except (UpsilonPresent, NotExact, NotACocycle):
        pass
    out = {
        "algebra": algebra.name,
        "rank": report.rank,
        "nullity": report.nullity,
        "kernel": report.kernel,
        "poisson": poisson,
        "darboux_xi": darboux_xi,
        "input_hash": input_hash({**_structure_payload(structure), "pi": pi}),
        "version": __version__,
    }
    emit_report(out, args.output)
    return EXIT_OK


def cmd_isotropy(args) -> int:
    algebra = resolve_algebra(args.algebra)
    structure = resolve_structure(args, algebra)
    inertia_inv = None
    if args.inertia:
        inertia_inv = resolve_inertia(args.inertia, algebra.dim).I_inv
    sub = isotropy_subalgebra(algebra, structure.Theta, structure.Upsilon, inertia_inv)
    out = {
        "algebra": algebra.name,
        "dimension": sub.dimension,
        "basis": sub.basis,
        "closure_residual": sub.closure_residual,
        "input_hash": input_hash({**_structure_payload(structure),
                                  "inertia": inertia_inv}),
        "version": __version__,
    }
    emit_report(out, args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    algebra = resolve_algebra(args.algebra)
    structure = resolve_structure(args, algebra)
    inertia = resolve_inertia(args.inertia, algebra.dim)
    pi0 = parse_vector(args.pi0)
    rep = None
    if args.rep == "so3":
        rep = so3_vector_representation()
    elif args.rep:
        with open(args.rep) as fh:
            rep = np.asarray(json.load(fh), float)

    # linear observables from the residual-symmetry directions
    sub = isotropy_subalgebra(algebra, structure.Theta, structure.Upsilon, inertia.I_inv)
    extra = {f"isotropy_{i}": sub.basis[i] for i in range(sub.dimension)}

    traj = integrate(structure, inertia, pi0, args.T, args.dt, rep=rep,
                     extra_monitors=extra)

    channel_names = sorted(traj.monitors)
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"pi_{i}" for i in range(algebra.dim)] + channel_names)
        for k in range(len(traj.times)):
            row = [_fmt(traj.times[k])]
            row += [_fmt(v) for v in traj.pis[k]]
            row += [_fmt(traj.monitors[name][k]) for name in channel_names]
            writer.writerow(row)

    summary = {
        "algebra": algebra.name,
        "energy_drift": traj.drift("energy"),
        "casimir_drift": traj.drift("casimir") if "casimir" in traj.monitors else None,
        "monitor_drifts": {name: traj.drift(name) for name in channel_names},
        "degenerate_at": traj.degenerate_at,
        "steps": len(traj.times) - 1,
        "input_hash": input_hash({**_structure_payload(structure),
                                  "I_inv": inertia.I_inv, "pi0": pi0,
                                  "T": args.T, "dt": args.dt}),
        "version": __version__,
    }
    emit_report(summary, args.summary)
    return EXIT_OK if traj.degenerate_at is None else EXIT_DEGENERATE


def parse_axis(text: str):
    """Axis spec kind:i[,j]=start:stop:num, kinds theta / upsilon / xi."""
    try:
        head, rng = text.split("=")
        kind, idx = head.split(":")
        indices = tuple(int(tok) for tok in idx.split(","))
        start, stop, num = rng.split(":")
        values = np.linspace(float(start), float(stop), int(num)) if int(num) > 0 \
            else np.array([])
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad axis spec {text!r}: {exc}") from exc
    if kind not in ("theta", "upsilon", "xi"):
        raise ValueError(f"bad axis kind {kind!r} in {text!r}")
    if kind == "xi" and len(indices) != 1:
        raise ValueError(f"xi axis takes one index, got {indices}")
    if kind != "xi" and len(indices) != 2:
        raise ValueError(f"{kind} axis takes an index pair, got {indices}")
    return kind, indices, values


def cmd_sweep(args) -> int:
    from .cohomology import delta1_scalar

    algebra = resolve_algebra(args.algebra)
    base = resolve_structure(args, algebra)
    pi = parse_vector(args.pi0) if args.pi0 else np.zeros(algebra.dim)
    axes = [parse_axis(spec) for spec in args.axis]

    def axis_label(kind, indices):
        return f"{kind}_" + "_".join(str(i) for i in indices)

    header = (["index"] + [axis_label(k, i) for k, i, _ in axes]
              + ["rank", "nullity", "poisson_qq", "poisson_pp"])
    n = algebra.dim
    rows = []
    grid = itertools.product(*[range(len(values)) for _, _, values in axes])
    for flat, point in enumerate(grid):
        Theta = base.Theta.copy()
        Upsilon = base.Upsilon.copy()
        xi = np.zeros(n)
        use_xi = False
        for (kind, indices, values), idx in zip(axes, point):
            v = values[idx]
            if kind == "theta":
                i, j = indices
                Theta[i, j], Theta[j, i] = v, -v
            elif kind == "upsilon":
                i, j = indices
                Upsilon[i, j], Upsilon[j, i] = v, -v
            else:
                xi[indices[0]] = v
                use_xi = True
        if use_xi:
            Theta = Theta + delta1_scalar(algebra, xi)
        structure = DeformedStructure(algebra, Theta, Upsilon)
        report = degeneracy(structure, pi, rank_tol=args.rank_tol)
        qq = pp = ""
        if report.nullity == 0:
            Pi = poisson_tensor(structure, pi, rank_tol=args.rank_tol)
            if n >= 2:
                qq, pp = _fmt(Pi[0, 1]), _fmt(Pi[n, n + 1])
        row = [str(flat)]
        row += [_fmt(values[idx]) for (_, _, values), idx in zip(axes, point)]
        row += [str(report.rank), str(report.nullity), qq, pp]
        rows.append(row)

    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liedeform",
        description="Deformed symplectic structures on T*G: cocycles, "
                    "degeneracy, Darboux shifts, Euler-type dynamics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, deformation=True):
        p.add_argument("--algebra", required=True,
                       help="algebra spec file or registry name (so3, sl2r, "
                            "heisenberg, se2, abelianN)")
        if deformation:
            p.add_argument("--deformation", help="deformation spec file (JSON)")
            p.add_argument("--xi", help="inline xi vector; Theta becomes its coboundary")
        p.add_argument("--tol", type=float, default=1e-12,
                       help="validation tolerance override")
        p.add_argument("--rank-tol", type=float, default=1e-10,
                       help="relative singular-value cutoff for rank decisions")
        p.add_argument("--output", "-o", help="output file (default: stdout for JSON)")

    p = sub.add_parser("validate", help="check bracket axioms of an algebra")
    common(p, deformation=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="cocycle residual, exactness, cohomology dims")
    common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("omega", help="two-form matrix analysis at a phase point")
    common(p)
    p.add_argument("--pi", help="body momentum, comma separated (default zeros)")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("isotropy", help="residual-symmetry subalgebra")
    common(p)
    p.add_argument("--inertia", help="optional inertia: identity, diag:..., or file")
    p.set_defaults(func=cmd_isotropy)

    p = sub.add_parser("simulate", help="integrate the Euler-type flow")
    common(p)
    p.add_argument("--inertia", required=True,
                   help="inertia: identity, diag:a,b,..., or JSON file")
    p.add_argument("--pi0", required=True, help="initial body momentum")
    p.add_argument("--T", type=float, required=True, help="final time")
    p.add_argument("--dt", type=float, required=True, help="time step")
    p.add_argument("--rep", help="matrix representation: 'so3' or a JSON generator stack")
    p.add_argument("--summary", help="JSON summary file (default: stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="grid sweep of deformation entries")
    common(p)
    p.add_argument("--axis", action="append", default=[],
                   help="kind:i[,j]=start:stop:num with kind theta|upsilon|xi; repeatable")
    p.add_argument("--pi0", help="body momentum at which to evaluate (default zeros)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and not args.output:
        parser.error("simulate requires --output for the trajectory CSV")
    if args.command == "sweep" and not args.output:
        parser.error("sweep requires --output for the grid CSV")
    try:
        return args.func(args)
    except DegenerateForm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ShapeMismatch, NotACocycle, NotAntisymmetric, LieDeformError,
            ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
