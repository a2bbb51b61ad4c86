"""Paraorthogonal polynomials, their unimodular zeros, and the
mechanical quadrature rules they generate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .moments import MomentSequence, moments_array
from .opuc import MonicPolynomial, OPUCFamily, cd_kernel_eval, reversed_poly

__all__ = [
    "RootFindingError",
    "UnimodularityError",
    "QuadratureError",
    "QuadratureRule",
    "ZeroReport",
    "find_roots",
    "build_popuc",
    "popuc_zeros",
    "b_from_zero",
    "quadrature_rule",
]

UNIMODULAR_TOL = 1e-9
RESIDUAL_TOL = 1e-9
MAX_ITER = 500


class RootFindingError(RuntimeError):
    pass


class UnimodularityError(ValueError):
    pass


class QuadratureError(ValueError):
    pass


def _horner_with_deriv(coeffs, z):
    """Values of p and p' at the points ``z`` (ascending coefficients)."""
    p = np.full(z.shape, coeffs[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def find_roots(coeffs, *, radius=None, tol=1e-15, max_iter=MAX_ITER) -> np.ndarray:
    """All zeros of a polynomial by Aberth-Ehrlich simultaneous iteration.

    Parameters
    ----------
    coeffs : array_like
        Ascending coefficients; the leading one must be nonzero.
    radius : float, optional
        Radius of the circle holding the starting points. The default is
        the geometric mean of the root moduli, ``|a_0 / a_n|^(1/n)``.

    Returns
    -------
    ndarray
        The zeros, polished by two Newton steps, in no particular order.

    Raises
    ------
    RootFindingError
        If the corrections have not settled after ``max_iter`` sweeps.
    """
    c = np.asarray(coeffs, dtype=complex)
    c = np.trim_zeros(c, "b")
    if c.size == 0:
        raise ValueError("zero polynomial")
    deg = c.size - 1
    if deg == 0:
        return np.empty(0, dtype=complex)
    # zeros at the origin are split off exactly
    nz = 0
    while c[nz] == 0:
        nz += 1
    c = c[nz:] / c[-1]
    deg = c.size - 1
    if deg == 0:
        return np.zeros(nz, dtype=complex)
    if radius is None:
        radius = abs(c[0]) ** (1.0 / deg)
    m = np.arange(deg)
    # offset angle keeps the start off symmetry lines of real polynomials
    z = radius * np.exp(1j * (2 * np.pi * m / deg + 0.4 / deg + 0.2))
    absc = np.abs(c)
    active = np.ones(deg, dtype=bool)
    for _ in range(max_iter):
        p, dp = _horner_with_deriv(c, z)
        bad = active & (dp == 0)
        if bad.any():
            # landed on a critical point: nudge and keep going
            z[bad] *= 1.0 + 1e-8j
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(active & np.isfinite(corr), corr, 0.0)
        z = z - corr
        # a root is done once the step is negligible or |p| is at round-off level
        bound = 8 * np.finfo(float).eps * npoly.polyval(np.abs(z), absc)
        small_step = np.abs(corr) <= tol * np.maximum(1.0, np.abs(z))
        active &= ~(small_step | (np.abs(npoly.polyval(z, c)) <= bound))
        if not active.any():
            break
    else:
        raise RootFindingError(f"Aberth iteration did not converge in {max_iter} sweeps")
    for _ in range(2):
        p, dp = _horner_with_deriv(c, z)
        step = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
        z = z - step
    return np.concatenate([np.zeros(nz, dtype=complex), z])


def sort_by_argument(zeros) -> np.ndarray:
    """Order by principal argument in [0, 2pi), ties broken on (Re, Im)."""
    z = np.asarray(zeros, dtype=complex)
    arg = np.mod(np.angle(z), 2 * np.pi)
    # arguments within round-off of 2pi belong to the zero at angle 0
    arg = np.where(arg > 2 * np.pi - 1e-14, 0.0, arg)
    order = np.lexsort((z.imag, z.real, np.round(arg, 13)))
    return z[order]


class ZeroReport(NamedTuple):
    residuals: np.ndarray
    unimodularity: np.ndarray
    min_gap: float


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    degree: int

    def integrate_moment(self, j: int) -> complex:
        """``sum_m w_m conj(node_m)^j``, the rule's value of ``c_j``."""
        return complex(np.sum(self.weights * np.conj(self.nodes) ** j))

    def integrate(self, f) -> complex:
        """Apply the rule to a function of ``z`` on the circle."""
        return complex(np.sum(self.weights * f(self.nodes)))


def build_popuc(fam: OPUCFamily, b: complex) -> MonicPolynomial:
    """``P_{n+1}(z, b) = z Q_n(z) - conj(b) Q_n^*(z)``."""
    b = complex(b)
    if abs(abs(b) - 1.0) > 1e-12:
        raise ValueError(f"b must be unimodular, |b| = {abs(b)!r}")
    Qn = fam.Qn.coeffs
    out = np.zeros(len(Qn) + 1, dtype=complex)
    out[1:] = Qn
    out[:-1] -= np.conj(b) * reversed_poly(Qn)
    return MonicPolynomial(out)


def popuc_zeros(P, *, full_output=False):
    """Zeros of a paraorthogonal polynomial, sorted by argument.

    The zeros are not projected onto the circle; unimodularity and the
    residual are checked instead.

    Raises
    ------
    UnimodularityError
        If a zero is off the circle by more than ``1e-9`` or its residual
        exceeds ``1e-9 * (1 + max|coeff|)``.
    """
    c = P.coeffs if isinstance(P, MonicPolynomial) else np.asarray(P, dtype=complex)
    zeros = sort_by_argument(find_roots(c, radius=1.0))
    residuals = np.abs(npoly.polyval(zeros, c))
    unimod = np.abs(np.abs(zeros) - 1.0)
    scale = 1.0 + np.abs(c).max()
    if unimod.size and unimod.max() > UNIMODULAR_TOL:
        i = int(np.argmax(unimod))
        raise UnimodularityError(
            f"zero {zeros[i]} has | |z| - 1 | = {unimod[i]:.3e}; "
            "the moment section is probably not positive definite"
        )
    if residuals.size and residuals.max() > RESIDUAL_TOL * scale:
        raise UnimodularityError(f"residual {residuals.max():.3e} exceeds tolerance")
    if zeros.size > 1:
        gaps = np.abs(zeros[:, None] - zeros[None, :])
        np.fill_diagonal(gaps, np.inf)
        min_gap = float(gaps.min())
    else:
        min_gap = math.inf
    if full_output:
        return zeros, ZeroReport(residuals, unimod, min_gap)
    return zeros


def b_from_zero(fam: OPUCFamily, zeta: complex) -> complex:
    """The ``b`` for which ``P_{n+1}(., b)`` vanishes at ``zeta``.

    From ``z Q_n(z) / Q_n^*(z) = conj(b)`` at ``z = zeta``.
    """
    zeta = complex(zeta)
    Qn = fam.Qn.coeffs
    num = zeta * npoly.polyval(zeta, Qn)
    den = npoly.polyval(zeta, reversed_poly(Qn))
    return complex(np.conj(num / den))


def quadrature_rule(fam: OPUCFamily, b: complex, seq: MomentSequence = None,
                    t: float = None, tol: float = 1e-8) -> QuadratureRule:
    """Mechanical quadrature with nodes at the zeros of ``P_{n+1}(., b)``.

    Weights are ``1 / K_n(zeta_m, zeta_m)``. When ``seq`` is given the rule
    is checked to reproduce ``c_j(t)`` for ``|j| <= n`` within
    ``tol * c_0``.
    """
    nodes = popuc_zeros(build_popuc(fam, b))
    weights = np.array([1.0 / cd_kernel_eval(fam, z, z).real for z in nodes])
    rule = QuadratureRule(nodes, weights, fam.n)
    if seq is not None:
        t = fam.t if t is None else t
        n = fam.n
        c = moments_array(seq, n, t)
        err = np.array([abs(rule.integrate_moment(j) - c[j + n]) for j in range(-n, n + 1)])
        scale = c[n].real
        worst = int(np.argmax(err))
        if err[worst] > tol * scale:
            raise QuadratureError(
                f"moment c_{worst - n} reproduced with error {err[worst]:.3e} "
                f"(tolerance {tol * scale:.3e})"
            )
    return rule
