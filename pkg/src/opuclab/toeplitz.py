"""Finite Toeplitz sections ``C_{n+1} = (c_{l-j})``, their minors and
the parameter derivative of ``det C_{n+1}(t)``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import warnings

import numpy as np
import scipy.linalg

from .moments import MomentSequence, moment_derivative, moments_array

__all__ = [
    "ToeplitzMatrix",
    "LeadingMinors",
    "build_toeplitz",
    "toeplitz_from_symbols",
    "determinant",
    "cofactor_determinant",
    "leading_principal_minors",
    "general_minor",
    "jacobi_det_derivative",
    "fd_det_derivative",
]

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Toeplitz section stored by its symbols ``c_{-n}, ..., c_n``."""

    symbols: np.ndarray
    t: float = 0.0

    @property
    def size(self) -> int:
        return (len(self.symbols) + 1) // 2

    @property
    def matrix(self) -> np.ndarray:
        n1 = self.size
        idx = np.arange(n1)
        # entry (j, l) = c_{l-j}; symbol index of c_m is m + n
        return self.symbols[(idx[None, :] - idx[:, None]) + n1 - 1]

    def __array__(self, dtype=None, copy=None):
        m = self.matrix
        return m if dtype is None else m.astype(dtype)


class LeadingMinors(NamedTuple):
    minors: np.ndarray
    positive_definite: bool


def toeplitz_from_symbols(symbols: Sequence[complex], t: float = 0.0) -> ToeplitzMatrix:
    s = np.asarray(symbols, dtype=complex)
    if s.ndim != 1 or len(s) % 2 != 1:
        raise ValueError("symbols must be c_{-n}..c_n (odd length)")
    return ToeplitzMatrix(s, float(t))


def build_toeplitz(seq: MomentSequence, n: int, t: float = 0.0) -> ToeplitzMatrix:
    """Return ``C_{n+1}(t)``, the ``(n+1) x (n+1)`` section."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return ToeplitzMatrix(moments_array(seq, n, t), float(t))


def _as_array(M) -> np.ndarray:
    if isinstance(M, ToeplitzMatrix):
        return M.matrix
    return np.asarray(M, dtype=complex)


def _is_hermitian(A: np.ndarray) -> bool:
    scale = 1.0 + np.abs(A).max(initial=0.0)
    return bool(np.abs(A - A.conj().T).max(initial=0.0) <= HERMITIAN_TOL * scale)


def _lu_det(A: np.ndarray) -> complex:
    # exactly singular input is legitimate here (the determinant is 0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    sign = (-1) ** int(np.count_nonzero(piv != np.arange(len(piv))))
    return complex(sign * np.prod(np.diag(lu)))


def determinant(M) -> complex:
    """Determinant by LU with partial (row) pivoting.

    For Hermitian input the tiny imaginary round-off is dropped.
    """
    A = _as_array(M)
    if A.size == 0:
        return 1.0 + 0j
    value = _lu_det(A)
    if _is_hermitian(A):
        value = complex(value.real, 0.0)
    return value


def cofactor_determinant(M) -> complex:
    """Determinant by Laplace expansion along the first row.

    Exponential cost; used as an independent check for small sizes.
    """
    A = _as_array(M)
    n = A.shape[0]
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(A[0, 0])
    total = 0j
    for col in range(n):
        if A[0, col] == 0:
            continue
        sub = np.delete(A[1:], col, axis=1)
        total += (-1) ** col * A[0, col] * cofactor_determinant(sub)
    return total


def leading_principal_minors(M) -> LeadingMinors:
    """``det C_1, ..., det C_{n+1}`` and the positive-definiteness flag."""
    A = _as_array(M)
    if not _is_hermitian(A):
        raise ValueError("leading_principal_minors needs a Hermitian matrix")
    minors = np.array([determinant(A[:m, :m]).real for m in range(1, A.shape[0] + 1)])
    return LeadingMinors(minors, bool(np.all(minors > 0)))


def general_minor(M, rows: Sequence[int], cols: Sequence[int]) -> complex:
    """Minor on 1-based, strictly increasing ``rows`` and ``cols``."""
    A = _as_array(M)
    rows = list(rows)
    cols = list(cols)
    if len(rows) != len(cols):
        raise ValueError("rows and cols must have the same length")
    for label, idx in (("rows", rows), ("cols", cols)):
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{label} must be strictly increasing: {idx}")
        if idx and (idx[0] < 1 or idx[-1] > A.shape[0]):
            raise ValueError(f"{label} out of bounds 1..{A.shape[0]}: {idx}")
    r = np.asarray(rows, dtype=int) - 1
    c = np.asarray(cols, dtype=int) - 1
    sub = A[np.ix_(r, c)]
    if sub.size == 0:
        return 1.0 + 0j
    return _lu_det(sub)


def deletion_minor(M, row: int, col: int) -> complex:
    """``det M^{(row, col)}`` with 1-based row/column removed."""
    A = _as_array(M)
    n1 = A.shape[0]
    rows = [j for j in range(1, n1 + 1) if j != row]
    cols = [l for l in range(1, n1 + 1) if l != col]
    return general_minor(A, rows, cols)


def jacobi_det_derivative(seq: MomentSequence, n: int, t: float = 0.0) -> float:
    """``d/dt det C_{n+1}(t)`` from the cofactor expansion.

    Sums ``(-1)^(j+l) det C^{(j,l)} * dC_{jl}/dt`` over the two bands
    ``l - j = k`` and ``l - j = -k``; on the second band the entry is
    ``c_{-k} = conj(c_k)``, so its derivative is ``conj(dc_k/dt)``.
    """
    k = seq.k
    if k is None:
        raise ValueError("jacobi_det_derivative needs a perturbed sequence")
    C = build_toeplitz(seq, n, t)
    dck = moment_derivative(seq, t)
    n1 = n + 1
    total = 0j
    for j in range(1, n1 + 1):
        for l in range(1, n1 + 1):
            if l - j == k:
                d_entry = dck
            elif l - j == -k:
                d_entry = dck.conjugate()
            else:
                continue
            if k == 0:
                d_entry = complex(dck.real, 0.0)
            total += (-1) ** (j + l) * deletion_minor(C, j, l) * d_entry
    return float(total.real)


def fd_det_derivative(seq: MomentSequence, n: int, t: float = 0.0,
                      h: float = 1e-4) -> float:
    """Central finite difference of ``det C_{n+1}`` with step ``h``."""
    up = determinant(build_toeplitz(seq, n, t + h)).real
    down = determinant(build_toeplitz(seq, n, t - h)).real
    return (up - down) / (2.0 * h)
