#!/usr/bin/env python3
"""qhpolytope CLI.

Every command prints one JSON document (or writes it to ``--out``) and
exits with 0 on success, 2 on invalid input and 3 when no certificate was
found (a non-converged solve or a missing witness).
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np

from .alcove.cells import classify, orbit_dim, stabilizer_dim
from .alcove.types import AlcovePoint
from .config import Config
from .exceptions import OUTCOME_ERRORS, AmbiguousCellError, QHPolytopeError, ValidationError, wrap_exception
from .io import matrices_from_json, matrix_to_json, read_json, write_json
from .lab.sampling import sample_polytope, sample_real_polytope
from .lab.types import AlcoveCloud
from .lab.verify import dominant_cell, verify_convexity, verify_real_equality
from .logger import get_logger, setup_logging
from .qham.decomposition import chain_residual, decompose_witness
from .qham.moment import moment
from .qham.types import Configuration, SurfaceGroupData
from .solver.fiber import decomposable_representation, solve_fiber, solve_fiber_symmetric, symmetric_factorization
from .solver.objective import gradient_check
from .solver.transfer import transfer_from_symmetric, transfer_to_symmetric
from .spec import ProblemSpec
from .types import CloudKind, TransferDirection
from .unitary.sampling import haar_su, rng_stream, sample_class
from .unitary.spectra import ConjClassSpec, spectrum_to_alcove

logger = get_logger("cli")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_CERTIFICATE = 3

# Stream key for the random configuration used by gradcheck.
_GRADCHECK_STREAM = 301


class _Context:
    """Parsed arguments plus the configuration and problem spec they select."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = Config(args.config) if args.config else Config()
        self.spec = ProblemSpec.load(args.spec) if getattr(args, "spec", None) else None
        if self.spec is not None:
            self.config.apply_tolerances(self.spec.tolerances)
        if getattr(args, "jobs", None):
            self.config.sampling.jobs = args.jobs
        problems = self.config.validate()
        if problems:
            raise ValidationError(f"Invalid configuration: {problems[0]}", field="config", value=problems)

    @property
    def seed(self) -> int:
        if self.args.seed is not None:
            return self.args.seed
        return self.spec.seed if self.spec else 0

    @property
    def samples(self) -> int:
        if getattr(self.args, "samples", None) is not None:
            return self.args.samples
        return self.spec.samples if self.spec else 10000

    @property
    def include_witness(self) -> bool:
        return bool(self.args.include_witness or self.config.output.include_witness)

    def data(self) -> SurfaceGroupData:
        if self.spec is None:
            raise ValidationError(f"Command '{self.args.command}' needs --spec", field="spec")
        return self.spec.surface_data()

    def solve_options(self, **overrides: Any):
        tol = getattr(self.args, "tol", None)
        return self.config.solve_options(
            seed=self.seed,
            restarts=getattr(self.args, "restarts", None),
            residual_tol=tol,
            jobs=self.config.sampling.jobs,
            **overrides,
        )


def _parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ValidationError(f"Expected comma-separated numbers, got {text!r}", field="x", value=text) from e


def _tolerances(ctx: _Context) -> dict[str, float]:
    return {k: float(v) for k, v in vars(ctx.config.tolerances).items()}


def _cmd_classify(ctx: _Context) -> tuple[dict, int]:
    if not ctx.args.x:
        raise ValidationError("classify needs --x", field="x")
    tol = ctx.args.tol if ctx.args.tol is not None else ctx.config.tolerances.classify
    point = AlcovePoint(_parse_vector(ctx.args.x), tol=tol)
    sig = classify(point, tol=tol)
    payload = dict(sig.to_json())
    payload.update(
        {"stabilizer_dim": stabilizer_dim(sig, point.n), "orbit_dim": orbit_dim(sig, point.n), "tol": tol}
    )
    return payload, EXIT_OK


def _cloud_summary(ctx: _Context, cloud: AlcoveCloud) -> dict:
    payload = cloud.to_dict()
    payload["tolerances"] = _tolerances(ctx)
    if ctx.args.out and Path(ctx.args.out).suffix == ".csv":
        cloud.to_csv(ctx.args.out, tol=ctx.config.tolerances.classify)
        payload["csv"] = str(ctx.args.out)
    return payload


def _cmd_sample(ctx: _Context) -> tuple[dict, int]:
    cloud = sample_polytope(
        ctx.data(),
        ctx.samples,
        seed=ctx.seed,
        chunk_size=ctx.config.sampling.chunk_size,
        jobs=ctx.config.sampling.jobs,
        guard=ctx.config.tolerances.phase_guard,
    )
    payload = _cloud_summary(ctx, cloud)
    try:
        cell = dominant_cell(cloud, tol=ctx.config.tolerances.classify)
        payload["dominant_cell"] = {"ambiguous": False, **cell.to_dict()}
    except AmbiguousCellError as exc:
        # The cloud is already written; a tie is part of the result.
        payload["dominant_cell"] = {"ambiguous": True, **exc.to_dict()}
    return payload, EXIT_OK


def _full_cloud(ctx: _Context, data: SurfaceGroupData) -> AlcoveCloud:
    if ctx.args.input:
        return AlcoveCloud.from_csv(ctx.args.input, data, CloudKind.FULL, seed=ctx.seed)
    return sample_polytope(
        data, ctx.samples, seed=ctx.seed, chunk_size=ctx.config.sampling.chunk_size, jobs=ctx.config.sampling.jobs
    )


def _cmd_real_sample(ctx: _Context) -> tuple[dict, int]:
    data = ctx.data()
    cloud = sample_real_polytope(data, ctx.samples, seed=ctx.seed, opts=ctx.solve_options(), full=_full_cloud(ctx, data))
    return _cloud_summary(ctx, cloud), EXIT_OK


def _cmd_verify_convexity(ctx: _Context) -> tuple[dict, int]:
    data = ctx.data()
    pairs = ctx.args.pairs or ctx.config.sampling.pairs
    report = verify_convexity(_full_cloud(ctx, data), pairs=pairs, opts=ctx.solve_options(), seed=ctx.seed)
    payload = dict(report.to_dict())
    payload["tolerances"] = _tolerances(ctx)
    return payload, EXIT_OK


def _cmd_verify_real(ctx: _Context) -> tuple[dict, int]:
    data = ctx.data()
    opts = ctx.solve_options()
    full = _full_cloud(ctx, data)
    real_samples = ctx.args.real_samples or min(ctx.samples, 50)
    real = sample_real_polytope(data, real_samples, seed=ctx.seed, opts=opts, full=full)
    report = verify_real_equality(
        full,
        real,
        grid=ctx.args.grid or ctx.config.sampling.grid,
        opts=opts,
        inset=ctx.config.sampling.inset,
        seed=ctx.seed,
    )
    payload = dict(report.to_dict())
    payload["tolerances"] = _tolerances(ctx)
    return payload, EXIT_OK


def _spectra(mats: list[np.ndarray], tol: float) -> list[list[float]]:
    return [spectrum_to_alcove(m, tol=tol).to_json() for m in mats]


def _cmd_transfer(ctx: _Context) -> tuple[dict, int]:
    direction = TransferDirection(ctx.args.direction)
    tol = ctx.args.tol if ctx.args.tol is not None else ctx.config.tolerances.witness
    payload: dict[str, Any] = {"direction": direction.value, "tol": tol}

    if direction is TransferDirection.TO_UNITARY:
        if not ctx.args.input:
            raise ValidationError("to-unitary needs --in with the matrices A", field="in")
        a = matrices_from_json(read_json(ctx.args.input))
        u = transfer_from_symmetric(a, tol=tol)
        total = np.linalg.multi_dot(a) if len(a) > 1 else a[0]
        product = np.linalg.multi_dot(u) if len(u) > 1 else u[0]
        payload["u"] = [matrix_to_json(m) for m in u]
        payload["identity_residual"] = float(np.linalg.norm(product - total.T @ total))
        payload["spectra"] = _spectra(u, tol)
        return payload, EXIT_OK

    if ctx.args.input:
        w = matrices_from_json(read_json(ctx.args.input))
    else:
        report, a = symmetric_factorization(ctx.data(), ctx.solve_options(), tol=max(tol, 1e-6))
        payload["solve"] = report.to_dict(include_witness=ctx.include_witness)
        w = list(report.witness.punctures)
        a_product = np.linalg.multi_dot(a) if len(a) > 1 else a[0]
        payload.update(_factorization_payload(a, w, a_product, tol))
        return payload, EXIT_OK

    a = transfer_to_symmetric(w, tol=tol, reconstruction=ctx.config.tolerances.reconstruction)
    a_product = np.linalg.multi_dot(a) if len(a) > 1 else a[0]
    payload.update(_factorization_payload(a, w, a_product, tol))
    return payload, EXIT_OK


def _factorization_payload(a: list[np.ndarray], w: list[np.ndarray], product: np.ndarray, tol: float) -> dict:
    n = product.shape[0]
    gaps = [
        float(np.max(np.abs(spectrum_to_alcove(f.T @ f, tol=tol).array - spectrum_to_alcove(m, tol=tol).array)))
        for f, m in zip(a, w, strict=True)
    ]
    return {
        "A": [matrix_to_json(m) for m in a],
        "product_residual": float(np.linalg.norm(product - np.eye(n))),
        "spectrum_residual": max(gaps),
    }


def _configuration_from_payload(payload: Any, tol: float) -> Configuration:
    if isinstance(payload, dict) and "classes" in payload:
        return Configuration.from_json(payload, tol=tol)
    punctures = matrices_from_json(payload)
    classes = tuple(ConjClassSpec(spectrum_to_alcove(c, tol=tol)) for c in punctures)
    return Configuration(SurfaceGroupData(punctures[0].shape[0], 0, classes), (), tuple(punctures), tol=tol)


def _cmd_decompose(ctx: _Context) -> tuple[dict, int]:
    tol = ctx.args.tol if ctx.args.tol is not None else ctx.config.tolerances.witness
    payload: dict[str, Any] = {"tol": tol}
    if ctx.args.input:
        cfg = _configuration_from_payload(read_json(ctx.args.input), tol=ctx.config.tolerances.class_membership)
        tolerances = ctx.config.tolerances
        chain = decompose_witness(
            cfg,
            tol=tol,
            seed=ctx.seed,
            kernel_rtol=tolerances.kernel_rtol,
            reconstruction=tolerances.reconstruction,
        )
    else:
        report, chain = decomposable_representation(ctx.data(), ctx.solve_options(), tol=max(tol, 1e-6))
        cfg = report.witness
        payload["solve"] = report.to_dict(include_witness=ctx.include_witness)
    payload["w"] = [matrix_to_json(m) for m in chain]
    payload["chain_residual"] = chain_residual(cfg.punctures, chain)
    payload["symmetry_residual"] = max(float(np.linalg.norm(m - m.T)) for m in chain)
    return payload, EXIT_OK


def _target(ctx: _Context, n: int) -> AlcovePoint:
    if ctx.args.target is None:
        return AlcovePoint.identity(n)
    return AlcovePoint(_parse_vector(ctx.args.target), tol=ctx.config.tolerances.classify)


def _cmd_solve(ctx: _Context) -> tuple[dict, int]:
    data = ctx.data()
    target = _target(ctx, data.n)
    opts = ctx.solve_options(record_history=False)
    report = (solve_fiber_symmetric if ctx.args.symmetric else solve_fiber)(data, target, opts)
    payload = dict(report.to_dict(include_witness=ctx.include_witness))
    if report.converged:
        payload["moment_spectrum"] = spectrum_to_alcove(moment(report.witness)).to_json()
    return payload, EXIT_OK if report.converged else EXIT_NO_CERTIFICATE


def _cmd_gradcheck(ctx: _Context) -> tuple[dict, int]:
    data = ctx.data()
    rng = rng_stream(ctx.seed, _GRADCHECK_STREAM)
    handles = tuple(haar_su(data.n, rng) for _ in range(2 * data.genus))
    punctures = tuple(sample_class(spec, rng=rng) for spec in data.classes)
    cfg = Configuration(data, handles, punctures)
    target = _target(ctx, data.n)
    symmetric = bool(ctx.args.symmetric)
    value = gradient_check(data, target, cfg, eps=ctx.args.eps, seed=ctx.seed, symmetric=symmetric)
    return {"check": value, "eps": ctx.args.eps, "symmetric": symmetric, "target": target.to_json()}, EXIT_OK


COMMANDS: dict[str, Callable[[_Context], tuple[dict, int]]] = {
    "classify": _cmd_classify,
    "sample": _cmd_sample,
    "real-sample": _cmd_real_sample,
    "verify-convexity": _cmd_verify_convexity,
    "verify-real": _cmd_verify_real,
    "transfer": _cmd_transfer,
    "decompose": _cmd_decompose,
    "solve": _cmd_solve,
    "gradcheck": _cmd_gradcheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhpolytope",
        description="Weyl alcove cells, momentum polytopes and symmetric transfers for SU(n)",
        epilog="""
Examples:
  qhpolytope classify --x 0.5,0,-0.5
  qhpolytope sample --spec su2.json --samples 100000 --seed 7 --out cloud.csv
  qhpolytope solve --spec su2.json --target 0.2,-0.2 --symmetric
  qhpolytope transfer --direction to-unitary --in A.json

Exit status: 0 success, 2 invalid input, 3 no certificate found.
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Operation to run")
    parser.add_argument("--spec", help="Problem spec (JSON or YAML)")
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("--out", help="Output path (.json report or .csv cloud)")
    parser.add_argument("--in", dest="input", help="Input matrices, configuration or cloud CSV")
    parser.add_argument("--seed", type=int, help="Root seed (default: from spec, else 0)")
    parser.add_argument("--samples", type=int, help="Sample count (default: from spec)")
    parser.add_argument("--real-samples", type=int, help="Targets for the Real cloud in verify-real (default: 50)")
    parser.add_argument("--tol", type=float, help="Primary tolerance of the command")
    parser.add_argument("--jobs", type=int, help="Worker threads for sampling and solving")
    parser.add_argument("--grid", type=int, help="Grid points per axis for verify-real")
    parser.add_argument("--pairs", type=int, help="Midpoint pairs for verify-convexity")
    parser.add_argument("--restarts", type=int, help="Solver restarts")
    parser.add_argument("--x", help="Alcove point for classify, comma-separated")
    parser.add_argument("--target", help="Alcove target for solve and gradcheck, comma-separated")
    parser.add_argument(
        "--direction",
        choices=[d.value for d in TransferDirection],
        default=TransferDirection.TO_UNITARY.value,
        help="Transfer direction (default: to-unitary)",
    )
    parser.add_argument("--symmetric", action="store_true", help="Add the fixed-point penalty to solve/gradcheck")
    parser.add_argument("--include-witness", action="store_true", help="Emit witness matrices in solve reports")
    parser.add_argument("--eps", type=float, default=1e-6, help="Finite-difference step for gradcheck")
    parser.add_argument("--log-level", help="Console log level (default: WARNING)")
    return parser


def _emit(payload: dict, out: str | None) -> None:
    path = out if out and Path(out).suffix != ".csv" else None
    print(write_json(payload, path))


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        setup_logging(level=args.log_level.upper())

    try:
        ctx = _Context(args)
        payload, status = COMMANDS[args.command](ctx)
    except OUTCOME_ERRORS as e:
        _emit(e.to_dict(), None)
        return EXIT_NO_CERTIFICATE
    except QHPolytopeError as e:
        _emit(e.to_dict(), None)
        return EXIT_INVALID
    except KeyboardInterrupt:
        print("\nCancelled", file=sys.stderr)
        return 130
    except (ValueError, TypeError, KeyError, OSError, np.linalg.LinAlgError) as e:
        _emit(wrap_exception(e, context=args.command).to_dict(), None)
        return EXIT_INVALID

    _emit(payload, args.out)
    return status


def cli():
    """Entry point for the CLI."""
    sys.exit(main())


if __name__ == "__main__":
    cli()
