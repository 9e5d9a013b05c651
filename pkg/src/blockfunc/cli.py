"""Command-line driver: ``blockfunc verify`` and ``blockfunc matfunc``."""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from .blockenc import from_matrix
from .circuits import DEFAULT_MAX_QUBITS
from .errors import (
    BlockFuncError,
    BranchCutError,
    ConfigError,
    PreconditionError,
    SingularMatrixError,
)
from .io import ExperimentConfig, load_config, matrix_to_json
from .linalg import spectral_norm
from .matfunc import (
    CircleContour,
    F_M_dense,
    build_FM_encoding,
    build_fM_encoding,
    exact_matrix_function,
    f_M_dense,
    get_function,
    shift_inverse_bound,
    trapezoid_error_bound,
)
from .stateprep import build_sqrt_pair
from .suites import run_all

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3  # also spectrum-enclosure violations
EXIT_CONTRACT = 4
EXIT_SINGULAR = 5
EXIT_BRANCH_CUT = 6


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _threads(single: bool):
    return threadpool_limits(limits=1) if single else contextlib.nullcontext()


def cmd_verify(seed: int, trials: int, max_qubits: int, out: str | None = None) -> int:
    if max_qubits > DEFAULT_MAX_QUBITS or max_qubits < 1:
        raise ConfigError(f"--max-qubits must lie in [1, {DEFAULT_MAX_QUBITS}], got {max_qubits}")
    if trials < 1:
        raise ConfigError("--trials must be positive")
    results = run_all(seed, trials, cap=max_qubits)
    _write(_dumps([r.to_dict() for r in results]), out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CONTRACT


def _input_encoding(cfg: ExperimentConfig):
    alpha = cfg.alpha if cfg.alpha is not None else max(spectral_norm(cfg.matrix), 1e-12)
    return from_matrix(cfg.matrix, alpha=alpha, epsilon=cfg.epsilon)


def run_matfunc(cfg: ExperimentConfig) -> dict:
    """Build the requested encoding and return the report as a plain dict."""
    f = get_function(cfg.function)
    be = _input_encoding(cfg)
    a = cfg.matrix
    if cfg.contour is not None:
        _, rep = build_fM_encoding(be, f, cfg.contour, cfg.delta, target=a)
        approx = f_M_dense(a, f, cfg.contour)
    else:
        q = cfg.quadrature
        beta_prime = cfg.beta_prime
        if beta_prime is None:
            beta_prime = shift_inverse_bound(a, q)
        pair = build_sqrt_pair(q.w)
        _, rep = build_FM_encoding(be, q, pair, beta_prime, cfg.delta, target=a, function=f)
        approx = F_M_dense(a, q)
    return {
        "mode": "contour" if cfg.contour is not None else "quadrature",
        "seed": cfg.seed,
        "tau": rep.tau,
        "eta": rep.eta,
        "eps_M": rep.eps_M,
        "delta_L": rep.delta_L,
        "degree_d": rep.degree,
        "alpha_prime": rep.alpha_prime,
        "beta_prime": rep.beta_prime,
        "measured_error_vs_fM": rep.measured_error,
        "measured_error_vs_f": rep.measured_error_vs_f,
        "pass": rep.passed,
        "approximant": matrix_to_json(approx)["entries"],
    }


def sweep_rows(cfg: ExperimentConfig, Ms) -> list[tuple[int, float, float]]:
    """Dense (M, eps_M, ||f(A) - f_M(A)||) rows for the config's circle."""
    if cfg.contour is None:
        raise ConfigError("--sweep needs a contour config")
    f = get_function(cfg.function)
    exact = exact_matrix_function(cfg.matrix, f)
    s = spectral_norm(cfg.matrix - cfg.contour.z0 * np.eye(cfg.matrix.shape[0]))
    rows = []
    for M in Ms:
        c = CircleContour(cfg.contour.z0, cfg.contour.r, cfg.contour.R, M, cfg.contour.L)
        err = spectral_norm(exact - f_M_dense(cfg.matrix, f, c))
        rows.append((M, trapezoid_error_bound(c, f, s), err))
    return rows


def _sweep_path(out: str | None) -> Path:
    if out is None:
        return Path("sweep.csv")
    p = Path(out)
    return p.with_name(p.stem + "_sweep.csv")


def cmd_matfunc(config: str, out: str | None = None, sweep=None, seed: int | None = None) -> int:
    cfg = load_config(config)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    out = out or cfg.out
    report = run_matfunc(cfg)
    _write(_dumps(report), out)
    if sweep:
        with open(_sweep_path(out), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["M", "eps_M", "error"])
            for M, eps, err in sweep_rows(cfg, sweep):
                w.writerow([M, repr(eps), repr(err)])
    return EXIT_OK if report["pass"] else EXIT_CONTRACT


def _parse_sweep(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--sweep expects M1,M2,...; got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blockfunc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="report path (stdout when omitted)")
    common.add_argument("--single-thread", action="store_true", help="pin BLAS to one thread")

    v = sub.add_parser("verify", parents=[common], help="randomized contract suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)

    m = sub.add_parser("matfunc", parents=[common], help="block-encode f(A) from a config file")
    m.add_argument("--config", required=True)
    m.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    m.add_argument("--sweep", type=_parse_sweep, default=None, metavar="M1,M2,...")
    return p


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, BranchCutError):
        return EXIT_BRANCH_CUT
    if isinstance(exc, SingularMatrixError):
        return EXIT_SINGULAR
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    return EXIT_CONFIG


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with _threads(args.single_thread):
            if args.command == "verify":
                return cmd_verify(args.seed, args.trials, args.max_qubits, args.out)
            return cmd_matfunc(args.config, args.out, args.sweep, args.seed)
    except BlockFuncError as exc:
        print(f"blockfunc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
