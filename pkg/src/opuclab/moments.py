"""Parametric moment sequences on the unit circle.

A moment sequence is a doubly infinite Hermitian sequence ``c_j`` with
``c_{-j} = conj(c_j)``. The convention throughout the package is

    c_j = integral of exp(-i j theta) d sigma(theta),

so a point mass ``lam`` at ``zeta`` contributes ``lam * conj(zeta)**j``.

At most one index ``k`` (together with ``-k``) may depend on a real
parameter ``t``; every other moment is frozen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "FAMILIES",
    "UNBOUNDED",
    "MomentSequence",
    "Perturbation",
    "make_family",
    "eval_moment",
    "moments_array",
    "perturb",
    "moment_derivative",
]

FAMILIES = ("lebesgue", "rogers-szego", "gaussian-pf", "point-masses", "table")
PERTURBATION_KINDS = ("linear", "exponential-scale")

#: support bound reported by families defined for every index
UNBOUNDED = 2**31 - 1

_UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class Perturbation:
    k: int
    kind: str
    rate: float

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ValueError(
                f"unknown perturbation kind {self.kind!r}; "
                f"expected one of {PERTURBATION_KINDS}"
            )


@dataclass(frozen=True)
class MomentSequence:
    """Immutable description of ``c_j(t)``.

    Use :func:`make_family` and :func:`perturb` rather than building this
    directly; the constructor does not validate parameters.
    """

    family: str
    params: tuple = ()
    nodes: Optional[tuple] = None
    weights: Optional[tuple] = None
    values: Optional[tuple] = None
    support_bound: int = UNBOUNDED
    perturbation: Optional[Perturbation] = None
    t_domain: tuple = (-math.inf, math.inf)
    _base_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def k(self) -> Optional[int]:
        return None if self.perturbation is None else self.perturbation.k

    @property
    def is_real(self) -> bool:
        """True when every moment is real for every ``t``."""
        if self.family in ("lebesgue", "rogers-szego", "gaussian-pf"):
            return True
        if self.family == "table":
            return all(complex(v).imag == 0.0 for v in self.values)
        # m atoms: the measure equals its mirror image iff c_1..c_2m are real
        m = len(self.nodes)
        scale = sum(self.weights)
        return all(abs(self.base(j).imag) <= 1e-12 * scale for j in range(1, 2 * m + 1))

    def base(self, j: int) -> complex:
        """Unperturbed moment ``c_j(0)``."""
        cache = self._base_cache
        if j in cache:
            return cache[j]
        value = _base_moment(self, j)
        cache[j] = value
        return value


def _base_moment(seq: MomentSequence, j: int) -> complex:
    fam = seq.family
    if fam == "lebesgue":
        return 1.0 + 0j if j == 0 else 0j
    if fam == "rogers-szego":
        (q,) = seq.params
        return complex((-1) ** (j % 2) * q ** (j * j / 2.0))
    if fam == "gaussian-pf":
        (r,) = seq.params
        return complex(r ** (j * j))
    if fam == "point-masses":
        z = np.asarray(seq.nodes, dtype=complex)
        w = np.asarray(seq.weights, dtype=float)
        # negative indices by conjugation so the symmetry holds bit for bit
        value = complex(np.sum(w * np.conj(z) ** abs(j)))
        return value if j >= 0 else value.conjugate()
    if fam == "table":
        v = seq.values[abs(j)]
        return complex(v) if j >= 0 else complex(v).conjugate()
    raise ValueError(f"unknown family {fam!r}")


def make_family(name: str, *, q=None, r=None, nodes=None, weights=None,
                values=None, t_domain=(-math.inf, math.inf)) -> MomentSequence:
    """Build one of the built-in moment families.

    Parameters
    ----------
    name : str
        ``lebesgue``, ``rogers-szego`` (needs ``q``), ``gaussian-pf``
        (needs ``r``), ``point-masses`` (needs ``nodes`` and ``weights``)
        or ``table`` (needs ``values = [c_0, ..., c_J]``).
    t_domain : tuple of float
        Open interval of admissible parameter values.

    Returns
    -------
    MomentSequence

    Examples
    --------
    >>> seq = make_family("rogers-szego", q=0.25)
    >>> eval_moment(seq, 1, 0.0)
    (-0.5+0j)
    """
    lo, hi = t_domain
    if not lo < 0.0 < hi:
        raise ValueError(f"t_domain {t_domain} must be an open interval containing 0")
    common = dict(t_domain=(float(lo), float(hi)))
    if name == "lebesgue":
        return MomentSequence("lebesgue", **common)
    if name == "rogers-szego":
        _check_unit_interval("q", q)
        return MomentSequence("rogers-szego", params=(float(q),), **common)
    if name == "gaussian-pf":
        _check_unit_interval("r", r)
        return MomentSequence("gaussian-pf", params=(float(r),), **common)
    if name == "point-masses":
        if nodes is None or weights is None:
            raise ValueError("point-masses needs nodes and weights")
        z = np.asarray(nodes, dtype=complex).ravel()
        w = np.asarray(weights, dtype=float).ravel()
        if z.size == 0 or z.size != w.size:
            raise ValueError("nodes and weights must be non-empty and of equal length")
        bad = np.abs(np.abs(z) - 1.0) > _UNIMODULAR_TOL
        if bad.any():
            raise ValueError(f"node {z[bad][0]} is not on the unit circle")
        if (w <= 0).any():
            raise ValueError(f"weights must be positive, got {w[w <= 0][0]}")
        return MomentSequence(
            "point-masses",
            nodes=tuple(complex(x) for x in z),
            weights=tuple(float(x) for x in w),
            **common,
        )
    if name == "table":
        if values is None or len(values) == 0:
            raise ValueError("table needs values c_0..c_J")
        vals = tuple(complex(v) for v in values)
        if vals[0].imag != 0.0:
            raise ValueError(f"table c_0 must be real, got {vals[0]}")
        return MomentSequence("table", values=vals, support_bound=len(vals) - 1, **common)
    raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}")


def _check_unit_interval(label, value):
    if value is None:
        raise ValueError(f"missing parameter {label}")
    if not 0.0 < float(value) < 1.0:
        raise ValueError(f"{label} must lie in (0, 1), got {value}")


def _check_t(seq: MomentSequence, t: float):
    lo, hi = seq.t_domain
    if not lo < t < hi:
        raise ValueError(f"t = {t} outside the domain ({lo}, {hi})")


def _perturbed_k(seq: MomentSequence, t: float) -> complex:
    p = seq.perturbation
    c0 = seq.base(p.k)
    if p.kind == "linear":
        return c0 + p.rate * t
    return c0 * math.exp(p.rate * t)


def eval_moment(seq: MomentSequence, j: int, t: float = 0.0) -> complex:
    """Return ``c_j(t)``."""
    j = int(j)
    if abs(j) > seq.support_bound:
        raise IndexError(f"moment index {j} exceeds support bound {seq.support_bound}")
    _check_t(seq, t)
    p = seq.perturbation
    if p is not None and abs(j) == abs(p.k):
        ck = _perturbed_k(seq, t)
        if p.k == 0:
            return complex(ck.real, 0.0)
        return ck if j == p.k else ck.conjugate()
    return seq.base(j)


def moments_array(seq: MomentSequence, n: int, t: float = 0.0) -> np.ndarray:
    """Return ``[c_{-n}, ..., c_n]`` as a complex array (index ``j + n``)."""
    _check_t(seq, t)
    if n > seq.support_bound:
        raise IndexError(f"moment index {n} exceeds support bound {seq.support_bound}")
    return np.array([eval_moment(seq, j, t) for j in range(-n, n + 1)], dtype=complex)


def perturb(seq: MomentSequence, k: int, kind: str = "linear",
            rate: float = 1.0) -> MomentSequence:
    """Let ``c_k`` (and ``c_{-k}`` by conjugation) depend on ``t``.

    ``linear`` gives ``c_k(t) = c_k(0) + rate*t``; ``exponential-scale``
    gives ``c_k(t) = c_k(0) * exp(rate*t)``.
    """
    if seq.perturbation is not None:
        raise ValueError(
            f"sequence is already perturbed at k={seq.perturbation.k}; "
            "only one perturbed index is supported"
        )
    k = int(k)
    if abs(k) > seq.support_bound:
        raise IndexError(f"perturbed index {k} exceeds support bound {seq.support_bound}")
    # with a real rate, perturbing c_{-k} is the same as perturbing c_k
    k = abs(k)
    return replace(seq, perturbation=Perturbation(k, kind, float(rate)), _base_cache={})


def moment_derivative(seq: MomentSequence, t: float = 0.0) -> complex:
    """Exact ``d c_k / dt`` of the perturbed moment."""
    p = seq.perturbation
    if p is None:
        raise ValueError("sequence has no perturbation")
    _check_t(seq, t)
    if p.kind == "linear":
        return complex(p.rate)
    return p.rate * _perturbed_k(seq, t)


def scaled(seq: MomentSequence, n: int, t: float, factor: float) -> MomentSequence:
    """Frozen ``table`` copy of ``factor * c_j(t)`` for ``0 <= j <= n``."""
    vals = [factor * eval_moment(seq, j, t) for j in range(n + 1)]
    vals[0] = complex(vals[0].real, 0.0)
    return make_family("table", values=vals)


def point_masses(nodes: Sequence[complex], weights: Sequence[float]) -> MomentSequence:
    """Shorthand for ``make_family("point-masses", ...)``."""
    return make_family("point-masses", nodes=nodes, weights=weights)
