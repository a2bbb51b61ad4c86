"""Flat ``key = value`` experiment configuration.

Keys are dotted (``family.q``, ``grid.count``, ...); ``#`` starts a
comment. :func:`emit_config` writes every resolved field so that
``parse_config(emit_config(cfg)) == cfg``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Dict, Optional, Tuple

from .markov import THEOREMS
from .moments import FAMILIES, PERTURBATION_KINDS

__all__ = ["ConfigError", "ExperimentConfig", "COMMANDS", "KEYS", "parse_config",
           "parse_config_lines", "emit_config", "apply_overrides", "validate"]

COMMANDS = ("opuc", "popuc-zeros", "det-sweep", "zeros-sweep", "verify", "quadrature", "conjecture")
DERIVATIVE_COMMANDS = ("det-sweep", "zeros-sweep", "verify", "conjecture")
B_KINDS = ("constant", "linear-phase")
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Malformed or out-of-range configuration; names the field and line."""


@dataclass(frozen=True)
class ExperimentConfig:
    command: Optional[str] = None
    theorem: Optional[str] = None
    family_name: Optional[str] = None
    family_q: Optional[float] = None
    family_r: Optional[float] = None
    family_nodes: Optional[Tuple[complex, ...]] = None
    family_weights: Optional[Tuple[float, ...]] = None
    family_values: Optional[Tuple[complex, ...]] = None
    n: int = 4
    t: float = 0.0
    perturb_k: Optional[int] = None
    perturb_kind: str = "linear"
    perturb_rate: float = 1.0
    b_kind: str = "constant"
    b_beta0: float = 0.0
    b_beta1: float = 0.0
    grid_start: float = -0.05
    grid_stop: float = 0.05
    grid_count: int = 41
    verify_theta0: float = 0.0
    verify_window: int = 4
    verify_order: int = 3
    tol_noise_factor: float = 10.0
    tol_fd_step: float = 1e-4
    tol_quadrature: float = 1e-8
    out_path: str = "-"
    out_format: Optional[str] = None

    @property
    def resolved_format(self) -> str:
        if self.out_format:
            return self.out_format
        return "json" if self.command == "verify" else "csv"


def _key(name: str) -> str:
    head, _, tail = name.partition("_")
    if head in ("family", "perturb", "b", "grid", "verify", "tol", "out"):
        return f"{head}.{tail}"
    return name


#: dotted key -> dataclass attribute
KEYS: Dict[str, str] = {_key(f.name): f.name for f in fields(ExperimentConfig)}

_INT = {"n", "perturb_k", "grid_count", "verify_window", "verify_order"}
_FLOAT = {"family_q", "family_r", "t", "perturb_rate", "b_beta0", "b_beta1", "grid_start",
          "grid_stop", "verify_theta0", "tol_noise_factor", "tol_fd_step", "tol_quadrature"}
_COMPLEX_LIST = {"family_nodes", "family_values"}
_FLOAT_LIST = {"family_weights"}
_CHOICES = {
    "command": COMMANDS,
    "theorem": THEOREMS,
    "family_name": FAMILIES,
    "perturb_kind": PERTURBATION_KINDS,
    "b_kind": B_KINDS,
    "out_format": FORMATS,
}


def _convert(attr: str, raw: str, where: str):
    key = _key(attr)
    raw = raw.strip()
    try:
        if attr in _INT:
            return int(raw)
        if attr in _FLOAT:
            val = float(raw)
            if not math.isfinite(val):
                raise ValueError("not finite")
            return val
        if attr in _COMPLEX_LIST:
            return tuple(complex(x.strip().replace(" ", "")) for x in raw.split(",") if x.strip())
        if attr in _FLOAT_LIST:
            return tuple(float(x) for x in raw.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"{where}: {key}: cannot parse {raw!r}") from None
    if attr in _CHOICES and raw not in _CHOICES[attr]:
        raise ConfigError(f"{where}: {key}: {raw!r} is not one of {', '.join(_CHOICES[attr])}")
    return raw


def parse_config(text: str, *, validate_result: bool = True) -> ExperimentConfig:
    """Parse configuration text; unknown keys and bad values raise
    :class:`ConfigError` with the line number."""
    cfg, lines = parse_config_lines(text)
    if validate_result:
        validate(cfg, lines)
    return cfg


def parse_config_lines(text: str):
    """Unvalidated config plus ``{dotted key: line number}``."""
    values = {}
    lines = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {body!r}")
        key, raw = (s.strip() for s in body.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown field {key!r}")
        if key in lines:
            raise ConfigError(f"line {lineno}: {key} already set on line {lines[key]}")
        attr = KEYS[key]
        if raw == "":
            continue
        values[attr] = _convert(attr, raw, f"line {lineno}")
        lines[key] = lineno
    return ExperimentConfig(**values), lines


def apply_overrides(cfg: ExperimentConfig, overrides: Dict[str, str]) -> ExperimentConfig:
    """Replace fields from ``{dotted key: raw string}`` (command-line flags)."""
    values = {}
    for key, raw in overrides.items():
        if key not in KEYS:
            raise ConfigError(f"unknown field {key!r}")
        attr = KEYS[key]
        values[attr] = _convert(attr, raw, f"flag --{key}")
    return replace(cfg, **values)


def validate(cfg: ExperimentConfig, lines: Optional[Dict[str, int]] = None) -> ExperimentConfig:
    """Cross-field and range checks."""
    lines = lines or {}

    def fail(key, msg):
        where = f"line {lines[key]}: " if key in lines else ""
        raise ConfigError(f"{where}{key}: {msg}")

    if cfg.command is None:
        fail("command", "missing")
    if cfg.family_name is None:
        fail("family.name", "missing")
    name = cfg.family_name
    if name == "rogers-szego" or cfg.command == "conjecture":
        if cfg.command == "conjecture" and name != "rogers-szego":
            fail("family.name", "conjecture runs on rogers-szego")
        if cfg.family_q is None:
            fail("family.q", "required for rogers-szego")
        if not 0.0 < cfg.family_q < 1.0:
            fail("family.q", f"must lie in (0, 1), got {cfg.family_q}")
    if name == "gaussian-pf":
        if cfg.family_r is None:
            fail("family.r", "required for gaussian-pf")
        if not 0.0 < cfg.family_r < 1.0:
            fail("family.r", f"must lie in (0, 1), got {cfg.family_r}")
    if name == "point-masses":
        if not cfg.family_nodes or not cfg.family_weights:
            fail("family.nodes", "point-masses needs family.nodes and family.weights")
        if len(cfg.family_nodes) != len(cfg.family_weights):
            fail("family.weights", "must have as many entries as family.nodes")
        if any(abs(abs(z) - 1.0) > 1e-12 for z in cfg.family_nodes):
            fail("family.nodes", "every node must lie on the unit circle")
        if any(w <= 0 for w in cfg.family_weights):
            fail("family.weights", "weights must be positive")
    if name == "table":
        if not cfg.family_values:
            fail("family.values", "table needs family.values = c_0, c_1, ...")
        if cfg.family_values[0].imag != 0.0:
            fail("family.values", "c_0 must be real")
    if cfg.n < 0:
        fail("n", f"must be >= 0, got {cfg.n}")
    if cfg.perturb_k is not None and cfg.perturb_k < 0:
        fail("perturb.k", "must be >= 0 (c_{-k} follows by symmetry)")
    if cfg.command in ("det-sweep", "verify", "conjecture") and cfg.perturb_k is None:
        fail("perturb.k", f"required for {cfg.command}")
    if cfg.command == "verify" and cfg.theorem is None:
        fail("theorem", "required for verify")
    if cfg.command == "verify" and cfg.out_format == "csv":
        fail("out.format", "verify writes a JSON report")
    if cfg.grid_count < 1:
        fail("grid.count", f"must be >= 1, got {cfg.grid_count}")
    if cfg.command in DERIVATIVE_COMMANDS and cfg.grid_count < 3:
        fail("grid.count", f"{cfg.command} needs at least 3 grid points, got {cfg.grid_count}")
    if cfg.grid_count > 1 and not cfg.grid_start < cfg.grid_stop:
        fail("grid.stop", "must exceed grid.start")
    if cfg.b_kind == "constant" and cfg.b_beta1 != 0.0:
        fail("b.beta1", "must be 0 for a constant b")
    for attr in ("tol_noise_factor", "tol_fd_step", "tol_quadrature"):
        if getattr(cfg, attr) <= 0:
            fail(_key(attr), "tolerances must be positive")
    if cfg.verify_window < 1 or cfg.verify_order < 1:
        fail("verify.window", "window and order must be >= 1")
    return cfg


def _fmt(attr: str, value) -> str:
    if value is None:
        return ""
    if attr in _COMPLEX_LIST:
        return ", ".join(repr(complex(v)) for v in value)
    if attr in _FLOAT_LIST:
        return ", ".join(repr(float(v)) for v in value)
    if attr in _FLOAT:
        return repr(float(value))
    return str(value)


def emit_config(cfg: ExperimentConfig) -> str:
    """Every field, one per line, in declaration order."""
    out = []
    for f in fields(ExperimentConfig):
        out.append(f"{_key(f.name)} = {_fmt(f.name, getattr(cfg, f.name))}".rstrip())
    return "\n".join(out) + "\n"


def config_dict(cfg: ExperimentConfig) -> dict:
    """JSON-friendly ``{dotted key: value}`` (complex as ``[re, im]``)."""
    out = {}
    for f in fields(ExperimentConfig):
        v = getattr(cfg, f.name)
        if f.name in _COMPLEX_LIST and v is not None:
            v = [[complex(z).real, complex(z).imag] for z in v]
        elif isinstance(v, tuple):
            v = list(v)
        out[_key(f.name)] = v
    return out
