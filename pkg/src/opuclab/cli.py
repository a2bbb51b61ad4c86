"""``opuclab <command> --config <path>``: config-driven experiment runner.

Exit status: 0 success or confirmed, 1 input or numerical error,
2 hypothesis not met, 3 counterexample candidate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .config import (
    COMMANDS,
    KEYS,
    ConfigError,
    ExperimentConfig,
    apply_overrides,
    config_dict,
    parse_config_lines,
    validate,
)
from .markov import BSpec, detc_sweep, explore_conjecture, track_popuc_zeros, verify
from .moments import make_family, perturb
from .opuc import szego_family
from .popuc import RESIDUAL_TOL, UNIMODULAR_TOL, build_popuc, popuc_zeros, quadrature_rule
from .toeplitz import build_toeplitz, leading_principal_minors

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
VERDICT_EXIT = {
    "confirmed": EXIT_OK,
    "hypothesis-not-met": EXIT_HYPOTHESIS,
    "counterexample-candidate": EXIT_COUNTEREXAMPLE,
}
CONDITION_FACTOR = 1e3


def build_sequence(cfg: ExperimentConfig):
    seq = make_family(
        cfg.family_name,
        q=cfg.family_q,
        r=cfg.family_r,
        nodes=cfg.family_nodes,
        weights=cfg.family_weights,
        values=cfg.family_values,
    )
    if cfg.perturb_k is not None:
        seq = perturb(seq, cfg.perturb_k, cfg.perturb_kind, cfg.perturb_rate)
    return seq


def build_b(cfg: ExperimentConfig) -> BSpec:
    return BSpec(cfg.b_beta0, cfg.b_beta1 if cfg.b_kind == "linear-phase" else 0.0)


def grid(cfg: ExperimentConfig) -> np.ndarray:
    return np.linspace(cfg.grid_start, cfg.grid_stop, cfg.grid_count)


def manifest(cfg: ExperimentConfig) -> dict:
    return {
        "config": config_dict(cfg),
        "version": __version__,
        "tolerances": {
            "unimodular": UNIMODULAR_TOL,
            "residual": RESIDUAL_TOL,
            "quadrature": cfg.tol_quadrature,
            "fd_step": cfg.tol_fd_step,
            "noise_factor": cfg.tol_noise_factor,
        },
    }


def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if not np.isfinite(x):
        raise ValueError(f"non-finite value {x} in output row")
    return "%.17g" % x


def render_csv(cfg, columns: Sequence[str], rows: List[Sequence]) -> str:
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest(cfg), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_num(v) for v in row])
    return buf.getvalue()


def render_json(cfg, result) -> str:
    doc = {"manifest": manifest(cfg), "result": result}
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".opuclab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _warn_conditioning(seq, n, ts) -> None:
    eps = np.finfo(float).eps
    for t in ts:
        minors, _ = leading_principal_minors(build_toeplitz(seq, n, t))
        # a clearly negative minor is a PD failure, reported elsewhere
        if abs(minors.min()) < CONDITION_FACTOR * eps * abs(minors).max():
            print(f"warning: smallest leading minor {minors.min():.3e} at t={t:.6g} is near "
                  "round-off; results may be unreliable", file=sys.stderr)
            return


def _complex_rows(values):
    return [(i, complex(v).real, complex(v).imag) for i, v in enumerate(values)]


def cmd_opuc(cfg, seq):
    fam = szego_family(seq, cfg.n, cfg.t)
    rows = [("alpha", j, a.real, a.imag) for j, a in enumerate(fam.alpha)]
    rows += [("norm_sq", j, v, 0.0) for j, v in enumerate(fam.norm_sq)]
    rows += [("kappa", j, v, 0.0) for j, v in enumerate(fam.kappa)]
    rows += [("Qn", j, c.real, c.imag) for j, c in enumerate(fam.Qn.coeffs)]
    return ("kind", "index", "re", "im"), rows, EXIT_OK


def cmd_popuc_zeros(cfg, seq):
    fam = szego_family(seq, cfg.n, cfg.t)
    P = build_popuc(fam, build_b(cfg)(cfg.t))
    zeros, rep = popuc_zeros(P, full_output=True)
    rows = [(i, z.real, z.imag, float(np.angle(z)), rep.residuals[i], rep.unimodularity[i])
            for i, z in enumerate(zeros)]
    return ("zero_index", "re", "im", "phi", "residual", "unimodularity"), rows, EXIT_OK


def cmd_quadrature(cfg, seq):
    fam = szego_family(seq, cfg.n, cfg.t)
    rule = quadrature_rule(fam, build_b(cfg)(cfg.t), seq, cfg.t, tol=cfg.tol_quadrature)
    rows = [(i, z.real, z.imag, w) for i, (z, w) in enumerate(zip(rule.nodes, rule.weights))]
    return ("node_index", "re", "im", "weight"), rows, EXIT_OK


def cmd_det_sweep(cfg, seq):
    sweep = detc_sweep(seq, cfg.n, grid(cfg), h=cfg.tol_fd_step)
    rows = [(r["t"], r["det"], r["d_jacobi"], r["d_fd"], r["pd_ok"]) for r in sweep.rows()]
    if not sweep.pd_ok.all():
        print("warning: positive definiteness fails at some grid points (pd_ok = 0)", file=sys.stderr)
    return ("t", "det", "d_jacobi", "d_fd", "pd_ok"), rows, EXIT_OK


def cmd_zeros_sweep(cfg, seq):
    traj = track_popuc_zeros(seq, cfg.n, build_b(cfg), grid(cfg), strict=False)
    rows = []
    for i, t in enumerate(traj.t):
        for m in range(traj.n_paths):
            z = traj.zeros[i, m]
            rows.append((t, m, z.real, z.imag, traj.phi[i, m], traj.residuals[i, m]))
    status = EXIT_OK
    if traj.failures:
        for msg in traj.failures:
            print(f"error: zero matching failed at {msg}", file=sys.stderr)
        status = EXIT_ERROR
    return ("t", "zero_index", "re", "im", "phi_unwrapped", "residual"), rows, status


def cmd_conjecture(cfg, seq):
    rows = explore_conjecture(cfg.family_q, cfg.n, cfg.perturb_k, grid(cfg),
                              rate=cfg.perturb_rate, kind=cfg.perturb_kind)
    cols = ("path", "zeta0_re", "zeta0_im", "phi0", "distance_to_1", "closest_to_1",
            "ck_direction", "observed_sign", "dphi_min", "dphi_max")
    out = [(r["path"], r["zeta0"].real, r["zeta0"].imag, r["phi0"], r["distance_to_1"],
            r["closest_to_1"], r["ck_direction"], r["observed_sign"], r["dphi_min"], r["dphi_max"])
           for r in rows]
    return cols, out, EXIT_OK


def cmd_verify(cfg, seq):
    b = None if cfg.theorem.startswith("cor") else build_b(cfg)
    report = verify(cfg.theorem, seq, cfg.n, grid(cfg), b, window=cfg.verify_window,
                    order=cfg.verify_order, theta0=cfg.verify_theta0,
                    noise_factor=cfg.tol_noise_factor, fd_step=cfg.tol_fd_step)
    return report.to_dict(), VERDICT_EXIT[report.verdict]


TABLE_COMMANDS = {
    "opuc": cmd_opuc,
    "popuc-zeros": cmd_popuc_zeros,
    "quadrature": cmd_quadrature,
    "det-sweep": cmd_det_sweep,
    "zeros-sweep": cmd_zeros_sweep,
    "conjecture": cmd_conjecture,
}


def run(cfg: ExperimentConfig) -> int:
    """Execute a validated config, write its output, return the exit status."""
    seq = build_sequence(cfg)
    ts = [cfg.t] if cfg.command in ("opuc", "popuc-zeros", "quadrature") else list(grid(cfg))
    _warn_conditioning(seq, cfg.n, ts)
    if cfg.command == "verify":
        result, status = cmd_verify(cfg, seq)
        text = render_json(cfg, result)
    else:
        cols, rows, status = TABLE_COMMANDS[cfg.command](cfg, seq)
        if cfg.resolved_format == "json":
            text = render_json(cfg, {"columns": list(cols),
                                     "rows": [[_json_cell(v) for v in r] for r in rows]})
        else:
            text = render_csv(cfg, cols, rows)
    write_atomic(cfg.out_path, text)
    return status


def _json_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, str):
        return v
    v = float(v)
    if not np.isfinite(v):
        raise ValueError(f"non-finite value {v} in output row")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="opuclab",
        description="OPUC/POPUC experiments on parametric Toeplitz moment sequences.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--version", action="version", version=f"opuclab {__version__}")
    for key in KEYS:
        if key == "command":
            continue
        p.add_argument(f"--{key}", dest=key, metavar="VALUE", default=None,
                       help=f"override {key}")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lines = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                cfg, lines = parse_config_lines(fh.read())
        else:
            cfg = ExperimentConfig()
        overrides = {k: v for k, v in vars(args).items() if k in KEYS and v is not None}
        overrides["command"] = args.command
        # flags win over the file; their errors are reported without a line
        lines = {k: v for k, v in lines.items() if k not in overrides}
        cfg = validate(apply_overrides(cfg, overrides), lines)
        return run(cfg)
    except (ConfigError, ValueError, ArithmeticError, RuntimeError, OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
