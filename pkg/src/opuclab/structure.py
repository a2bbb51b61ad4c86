"""Classification of polynomials and sequences, and the Laurent
coefficients that drive the zero-monotonicity sign laws."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .moments import MomentSequence, eval_moment
from .opuc import MonicPolynomial, OPUCFamily, cd_kernel_eval, cd_kernel_poly, reflect
from .popuc import RootFindingError, find_roots

__all__ = [
    "LaurentPolynomial",
    "HurwitzResult",
    "PFResult",
    "DeflationError",
    "is_hurwitz",
    "kernel_hurwitz",
    "pf_window_check",
    "deflate",
    "weighted_laurent",
    "bk_conjugate_pair",
    "bk_pair_theta0",
    "bk_integral",
    "sign_pattern_check",
]

DEFLATION_TOL = 1e-8


class DeflationError(ValueError):
    """The point divided out is not a zero of the polynomial."""


@dataclass(frozen=True)
class LaurentPolynomial:
    """``sum_{j=-m}^{m} d_j z^j`` with ``coeffs[j + m] = d_j``."""

    coeffs: np.ndarray

    @property
    def order(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def __getitem__(self, j: int) -> complex:
        m = self.order
        if abs(j) > m:
            return 0j
        return complex(self.coeffs[j + m])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        m = self.order
        return npoly.polyval(z, self.coeffs) * z ** (-m)

    def is_real_on_circle(self, tol: float = 1e-10) -> bool:
        c = self.coeffs
        scale = 1.0 + np.abs(c).max()
        return bool(np.abs(c - np.conj(c[::-1])).max() <= tol * scale)


class HurwitzResult(NamedTuple):
    hurwitz: bool
    margin: float
    zeros: np.ndarray

    def __bool__(self):
        return self.hurwitz


class PFResult(NamedTuple):
    ok: bool
    min_minor: float
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    checked: int

    def __bool__(self):
        return self.ok


def is_hurwitz(p) -> HurwitzResult:
    """Whether every zero of ``p`` (ascending coefficients) has negative
    real part. ``margin`` is the largest real part of a zero."""
    c = np.trim_zeros(np.asarray(p, dtype=complex), "b")
    if c.size == 0:
        raise ValueError("zero polynomial")
    if c.size == 1:
        return HurwitzResult(True, -np.inf, np.empty(0, dtype=complex))
    zeros = find_roots(c)
    scale = npoly.polyval(np.abs(zeros), np.abs(c))
    if np.any(np.abs(npoly.polyval(zeros, c)) > 1e-8 * scale):
        raise RootFindingError("zero residual check failed in is_hurwitz")
    margin = float(zeros.real.max())
    return HurwitzResult(margin < 0.0, margin, zeros)


def kernel_hurwitz(fam: OPUCFamily, w: complex = 1.0) -> HurwitzResult:
    """Hurwitz test of ``z -> K_n(w, -z)``."""
    return is_hurwitz(reflect(cd_kernel_poly(fam, w)))


def pf_window_check(seq: MomentSequence, t: float = 0.0, window: int = 4,
                    max_order: int = 3) -> PFResult:
    """Positivity of all minors of order ``<= max_order`` in the central
    ``(2W+1) x (2W+1)`` window ``(c_{i-j})`` of the four-way matrix.

    Passing means the sequence is consistent with the two-sided Polya
    frequency property up to ``(window, max_order)``; the infinite
    condition cannot be decided from finitely many moments.

    Returns
    -------
    PFResult
        ``rows``/``cols`` are 0-based window indices of the smallest minor
        (the witness when ``ok`` is false).
    """
    W = int(window)
    c = np.array([eval_moment(seq, j, t) for j in range(-2 * W, 2 * W + 1)])
    if np.abs(c.imag).max() > 1e-14 * (1.0 + np.abs(c).max()):
        raise ValueError("PF check needs a real moment sequence")
    c = c.real
    idx = np.arange(2 * W + 1)
    M = c[idx[:, None] - idx[None, :] + 2 * W]
    best = (np.inf, (), ())
    checked = 0
    for m in range(1, max_order + 1):
        combos = np.array(list(itertools.combinations(idx, m)))
        sub = M[combos[:, None, :, None], combos[None, :, None, :]]
        dets = np.linalg.det(sub.reshape(-1, m, m)).reshape(len(combos), len(combos))
        checked += dets.size
        i, j = np.unravel_index(np.argmin(dets), dets.shape)
        if dets[i, j] < best[0]:
            best = (float(dets[i, j]), tuple(int(x) for x in combos[i]),
                    tuple(int(x) for x in combos[j]))
    return PFResult(best[0] > 0.0, best[0], best[1], best[2], checked)


def deflate(coeffs, zeta: complex) -> np.ndarray:
    """Synthetic division by ``z - zeta``; the remainder must vanish."""
    c = np.asarray(coeffs, dtype=complex)
    out = np.empty(len(c) - 1, dtype=complex)
    acc = c[-1]
    for i in range(len(c) - 2, -1, -1):
        out[i] = acc
        acc = acc * zeta + c[i]
    scale = 1.0 + np.abs(c).max()
    if abs(acc) > DEFLATION_TOL * scale:
        raise DeflationError(f"|P({zeta})| = {abs(acc):.3e} is not a zero residual")
    return out


def weighted_laurent(P, zeta1: complex, zeta2: complex) -> LaurentPolynomial:
    """Coefficients of ``z |P(z)|^2 / ((z - zeta1)(z - zeta2))`` on the circle.

    On ``|z| = 1``, ``|P|^2 = P(z) * sum_j conj(p_j) z^{-j}``, so the result
    is the product of ``z R(z)``, with ``R = P / ((z - zeta1)(z - zeta2))``,
    and the conjugate-reversed coefficients of ``P``.
    """
    c = P.coeffs if isinstance(P, MonicPolynomial) else np.asarray(P, dtype=complex)
    if abs(zeta1 - zeta2) < 1e-12:
        raise ValueError("zeta1 and zeta2 must be distinct")
    R = deflate(deflate(c, zeta1), zeta2)
    # z R(z) occupies powers 1..n; conj-reversed P occupies -(n+1)..0
    d = np.convolve(R, np.conj(c[::-1]))
    return LaurentPolynomial(d)


def _qn_at(fam: OPUCFamily, z):
    return npoly.polyval(z, fam.Qn.coeffs)


def bk_conjugate_pair(fam: OPUCFamily, P, zeta: complex, k: int) -> complex:
    """``b_k`` for a zero ``zeta`` whose conjugate is also a zero:
    ``kappa_n^4 |Q_n(zeta)|^2 d_k`` with ``d`` from :func:`weighted_laurent`."""
    L = weighted_laurent(P, zeta, np.conj(zeta))
    kap = fam.kappa[-1]
    return kap ** 4 * abs(_qn_at(fam, zeta)) ** 2 * L[k]


def bk_pair_theta0(fam: OPUCFamily, P, zeta: complex, theta0: float, k: int) -> complex:
    """``b_k`` for a zero ``zeta`` paired with the zero ``exp(i theta0)``:
    coefficient ``k`` of ``i kappa_n^4 (zeta - w) z|P|^2/((z - zeta)(z - w))``."""
    w = np.exp(1j * theta0)
    L = weighted_laurent(P, zeta, w)
    kap = fam.kappa[-1]
    return 1j * kap ** 4 * (zeta - w) * L[k]


def bk_integral(fam: OPUCFamily, zeta: complex, k: int, *, theta0: Optional[float] = None,
                form: str = "sine", points: int = 4096) -> complex:
    """Trapezoid-rule value of the integral representations of ``b_k``.

    Independent of the Laurent pipeline; used as an oracle. ``form`` picks
    the conjugate-pair display: ``"sine"`` (the ``|K_n|^2`` integral with
    the sine ratio) or ``"kernel"`` (the product of two kernels). With
    ``theta0`` given the paired-zero display is used instead.
    """
    # half-step offset keeps the grid off the removable singularity
    theta = 2 * np.pi * (np.arange(points) + 0.5) / points
    z = np.exp(1j * theta)
    weight = np.exp(-1j * k * theta) / points
    phi = np.angle(zeta)
    K_zeta = cd_kernel_eval(fam, zeta, z)
    if theta0 is not None:
        w = np.exp(1j * theta0)
        K_to_w = np.conj(cd_kernel_eval(fam, w, z))
        pref = -1j * np.exp(-1j * theta0) * (zeta - w) / (
            _qn_at(fam, w) * np.conj(_qn_at(fam, zeta)))
        return complex(pref * np.sum(weight * K_zeta * K_to_w))
    if form == "sine":
        ratio = np.sin((theta - phi) / 2) / np.sin((theta + phi) / 2)
        return complex(-np.sum(weight * ratio * np.abs(K_zeta) ** 2))
    if form == "kernel":
        K_to_conj = np.conj(cd_kernel_eval(fam, np.conj(zeta), z))
        pref = -zeta / np.conj(_qn_at(fam, zeta) ** 2)
        return complex(pref * np.sum(weight * K_zeta * K_to_conj))
    raise ValueError(f"unknown form {form!r}")


def sign_pattern_check(coeffs, pattern: str = "alternating-from-leading",
                       tol: float = 1e-10) -> bool:
    """Strict sign pattern of real coefficients (ascending order).

    ``alternating-from-leading``: the leading coefficient is positive and
    signs alternate downwards, i.e. ``sgn(a_l) = (-1)^(deg - l)``.
    ``all-positive``: every coefficient is positive.
    """
    c = np.asarray(coeffs, dtype=complex)
    scale = 1.0 + np.abs(c).max()
    if np.abs(c.imag).max(initial=0.0) > tol * scale:
        raise ValueError("sign patterns need real coefficients")
    r = c.real
    if pattern == "all-positive":
        return bool(np.all(r > 0))
    if pattern == "alternating-from-leading":
        deg = len(r) - 1
        expected = (-1.0) ** (deg - np.arange(len(r)))
        return bool(np.all(r * expected > 0))
    raise ValueError(f"unknown pattern {pattern!r}")
