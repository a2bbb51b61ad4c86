"""Monic orthogonal polynomials on the unit circle.

Two independent constructions are provided: the Heine determinant
formula (:func:`heine_opuc`) and the Szego recursion driven by the
moment functional (:func:`szego_family`). The inner product is

    <z^l, z^j> = c_{j-l},

i.e. ``<f, g> = integral f * conj(g) d sigma`` for the convention used
in :mod:`opuclab.moments`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .moments import MomentSequence, moments_array
from .toeplitz import build_toeplitz, deletion_minor, determinant, leading_principal_minors

__all__ = [
    "MonicPolynomial",
    "OPUCFamily",
    "NotPositiveDefinite",
    "heine_opuc",
    "szego_family",
    "alpha_from_determinants",
    "reversed_poly",
    "inner_product",
    "cd_kernel_eval",
    "cd_kernel_poly",
]


class NotPositiveDefinite(ValueError):
    """A Toeplitz section that must be positive definite is not."""


@dataclass(frozen=True)
class MonicPolynomial:
    """Polynomial with ascending ``coeffs`` and leading coefficient 1."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d array")
        if abs(c[-1] - 1.0) > 1e-9:
            raise ValueError(f"leading coefficient must be 1, got {c[-1]}")
        c = c.copy()
        c[-1] = 1.0
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def deriv(self) -> np.ndarray:
        return npoly.polyder(self.coeffs)


Poly = Union[MonicPolynomial, Sequence[complex], np.ndarray]


def _coeffs(p: Poly) -> np.ndarray:
    if isinstance(p, MonicPolynomial):
        return p.coeffs
    return np.asarray(p, dtype=complex)


@dataclass(frozen=True)
class OPUCFamily:
    """Snapshot of ``Q_0..Q_n`` and their Szego data at one ``t``."""

    Q: List[MonicPolynomial]
    alpha: np.ndarray
    norm_sq: np.ndarray
    t: float = 0.0

    @property
    def n(self) -> int:
        return len(self.Q) - 1

    @property
    def kappa(self) -> np.ndarray:
        """Leading coefficients of the orthonormal ``q_j = kappa_j Q_j``."""
        return 1.0 / np.sqrt(self.norm_sq)

    def orthonormal(self, j: int) -> np.ndarray:
        return self.kappa[j] * self.Q[j].coeffs

    @property
    def Qn(self) -> MonicPolynomial:
        return self.Q[-1]


def reversed_poly(Q: Poly) -> np.ndarray:
    """Coefficients of ``Q^*(z) = z^n conj(Q(1/conj(z)))``."""
    return np.conj(_coeffs(Q)[::-1])


def inner_product(seq: MomentSequence, p: Poly, g: Poly, t: float = 0.0) -> complex:
    """``<p, g>`` under the moment functional at ``t``."""
    a = _coeffs(p)
    b = _coeffs(g)
    m = max(len(a), len(b)) - 1
    c = moments_array(seq, m, t)
    # G[l, j] = c_{j-l}
    l = np.arange(len(a))[:, None]
    j = np.arange(len(b))[None, :]
    G = c[j - l + m]
    return complex(a @ G @ np.conj(b))


def _require_pd(seq, n, t):
    if n == 0:
        return
    minors, ok = leading_principal_minors(build_toeplitz(seq, n - 1, t))
    if not ok:
        bad = int(np.argmax(minors <= 0)) + 1
        raise NotPositiveDefinite(
            f"det C_{bad}(t={t}) = {minors[bad - 1]:.3e} is not positive"
        )


def heine_opuc(seq: MomentSequence, n: int, t: float = 0.0) -> MonicPolynomial:
    """Monic ``Q_n`` from the Heine determinant formula.

    The top ``n`` rows of the bordered matrix are ``A[r, s] = c_{r-s}``;
    expanding along the last row ``(1, z, ..., z^n)`` gives coefficient
    ``s`` as a signed maximal minor of ``A`` divided by ``det C_n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return MonicPolynomial(np.array([1.0 + 0j]))
    _require_pd(seq, n, t)
    c = moments_array(seq, n, t)
    r = np.arange(n)[:, None]
    s = np.arange(n + 1)[None, :]
    A = c[r - s + n]
    denom = determinant(A[:, :n])
    coeffs = np.empty(n + 1, dtype=complex)
    for col in range(n + 1):
        minor = determinant(np.delete(A, col, axis=1))
        coeffs[col] = (-1) ** (n + col) * minor / denom
    return MonicPolynomial(coeffs)


def szego_family(seq: MomentSequence, n: int, t: float = 0.0) -> OPUCFamily:
    """``Q_0..Q_n`` by the Szego recursion.

    Each step picks ``alpha_j`` so that ``Q_{j+1} = z Q_j - conj(alpha_j) Q_j^*``
    is orthogonal to 1 under the moment functional; since ``Q_j^*`` is
    orthogonal to ``z, ..., z^j`` with ``<Q_j^*, 1> = ||Q_j||^2``, this gives
    ``conj(alpha_j) = <z Q_j, 1> / ||Q_j||^2``.

    Raises
    ------
    NotPositiveDefinite
        If ``c_0 <= 0`` or some ``|alpha_j| >= 1``.
    """
    c = moments_array(seq, n, t)
    c0 = c[n].real
    if not c0 > 0:
        raise NotPositiveDefinite(f"c_0(t={t}) = {c0} is not positive")
    Q = [np.array([1.0 + 0j])]
    alpha = np.zeros(n, dtype=complex)
    norm_sq = np.empty(n + 1)
    norm_sq[0] = c0
    for j in range(n):
        a = Q[-1]
        # <z Q_j, 1> = sum_l a_l c_{-(l+1)}
        proj = np.dot(a, c[n - 1 - np.arange(j + 1)])
        abar = proj / norm_sq[j]
        alpha[j] = np.conj(abar)
        if not abs(alpha[j]) < 1.0:
            raise NotPositiveDefinite(
                f"|alpha_{j}(t={t})| = {abs(alpha[j]):.6g} >= 1"
            )
        nxt = np.zeros(j + 2, dtype=complex)
        nxt[1:] = a
        nxt[:-1] -= abar * np.conj(a[::-1])
        Q.append(nxt)
        norm_sq[j + 1] = norm_sq[j] * (1.0 - abs(alpha[j]) ** 2)
    return OPUCFamily([MonicPolynomial(q) for q in Q], alpha, norm_sq, float(t))


def alpha_from_determinants(seq: MomentSequence, j: int, t: float = 0.0) -> complex:
    """``(-1)^j det C_{j+2}^{(j+2,1)} / det C_{j+1}``."""
    C = build_toeplitz(seq, j + 1, t)
    num = deletion_minor(C, j + 2, 1)
    den = determinant(C.matrix[: j + 1, : j + 1]).real
    return (-1) ** j * num / den


def cd_kernel_eval(fam: OPUCFamily, w: complex, z):
    """``K_n(w, z) = sum_j conj(q_j(w)) q_j(z)``; vectorized over ``z``."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for j in range(fam.n + 1):
        qj = fam.orthonormal(j)
        total += np.conj(npoly.polyval(w, qj)) * npoly.polyval(z, qj)
    return total if total.ndim else complex(total)


def cd_kernel_poly(fam: OPUCFamily, w: complex) -> np.ndarray:
    """Ascending coefficients of ``z -> K_n(w, z)``."""
    out = np.zeros(fam.n + 1, dtype=complex)
    for j in range(fam.n + 1):
        qj = fam.orthonormal(j)
        out[: j + 1] += np.conj(npoly.polyval(w, qj)) * qj
    return out


def reflect(coeffs) -> np.ndarray:
    """Coefficients of ``p(-z)``."""
    c = np.asarray(coeffs, dtype=complex)
    return c * (-1.0) ** np.arange(len(c))
