"""Determinant sweeps, zero tracking and the sign-law verifiers.

Every verifier follows the same pattern: run the hypothesis checks on
the whole grid, observe the relevant derivative signs by finite
differences, compare them with the predicted signs, and classify the
run as ``confirmed``, ``hypothesis-not-met`` or
``counterexample-candidate``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .moments import MomentSequence, eval_moment, make_family, moment_derivative, perturb
from .opuc import OPUCFamily, cd_kernel_poly, reflect, szego_family
from .popuc import build_popuc, popuc_zeros, quadrature_rule
from .structure import (
    DeflationError,
    bk_conjugate_pair,
    bk_pair_theta0,
    is_hurwitz,
    pf_window_check,
    weighted_laurent,
)
from .toeplitz import (
    build_toeplitz,
    fd_det_derivative,
    jacobi_det_derivative,
    leading_principal_minors,
)

__all__ = [
    "THEOREMS",
    "BSpec",
    "MatchingError",
    "ZeroTrajectory",
    "DetSweep",
    "HypothesisCheck",
    "VerificationReport",
    "track_popuc_zeros",
    "detc_sweep",
    "predicted_zero_sign",
    "zero_velocity",
    "verify",
    "explore_conjecture",
]

THEOREMS = ("thm2.1", "thm2.2", "thm2.3-conjugate", "thm2.3-pair", "cor2.4", "cor2.5", "cor2.6")
VERDICTS = ("confirmed", "hypothesis-not-met", "counterexample-candidate")

PAIR_TOL = 1e-8
SIGN_RTOL = 1e-12


class MatchingError(RuntimeError):
    """Zeros could not be matched unambiguously between grid points."""


@dataclass(frozen=True)
class BSpec:
    """``b(t) = exp(i (beta0 + beta1 t))``; ``beta1 = 0`` is a constant."""

    beta0: float = 0.0
    beta1: float = 0.0

    @classmethod
    def constant(cls, b: complex) -> "BSpec":
        b = complex(b)
        if abs(abs(b) - 1.0) > 1e-12:
            raise ValueError(f"b must be unimodular, got {b}")
        return cls(math.atan2(b.imag, b.real), 0.0)

    @property
    def is_constant(self) -> bool:
        return self.beta1 == 0.0

    def __call__(self, t: float) -> complex:
        ang = self.beta0 + self.beta1 * t
        # exact values on the axes keep real polynomials real
        for target, val in ((0.0, 1.0), (math.pi, -1.0), (-math.pi, -1.0)):
            if ang == target:
                return complex(val)
        return complex(np.exp(1j * ang))


def _as_bspec(b) -> BSpec:
    if isinstance(b, BSpec):
        return b
    return BSpec.constant(b)


def _wrap(x):
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


@dataclass
class ZeroTrajectory:
    """Zeros of ``P_{n+1}(., b(t); t)`` followed along a ``t`` grid.

    ``zeros[i, m]`` is path ``m`` at ``t[i]``; ``phi`` is its unwrapped
    argument. Paths are numbered by argument order at ``t[0]``.
    """

    t: np.ndarray
    zeros: np.ndarray
    phi: np.ndarray
    phi_error: np.ndarray
    match_distance: np.ndarray
    min_gap: np.ndarray
    residuals: np.ndarray
    failures: List[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.failures

    @property
    def n_paths(self) -> int:
        return self.zeros.shape[1]

    def dphi_dt(self, stride: int = 1) -> np.ndarray:
        """Central differences at ``t[s:-s]`` with stride ``s``."""
        s = stride
        dt = self.t[2 * s:] - self.t[: -2 * s]
        return (self.phi[2 * s:] - self.phi[: -2 * s]) / dt[:, None]

    def noise_floor(self) -> np.ndarray:
        """Error scale of :meth:`dphi_dt` at the interior points.

        Zero-finder error propagated through the difference quotient plus
        a truncation estimate from the doubled stride where it exists.
        """
        dt = (self.t[2:] - self.t[:-2])[:, None]
        floor = (self.phi_error[2:] + self.phi_error[:-2]) / dt
        d1 = self.dphi_dt(1)
        if len(self.t) >= 5:
            d2 = self.dphi_dt(2)
            trunc = np.abs(d2 - d1[1:-1]) / 3.0
            # edge points borrow the estimate of their neighbour
            trunc = np.vstack([trunc[:1], trunc, trunc[-1:]])
            floor = floor + trunc
        return floor


def _match(prev_phi, cur, gap_prev, gap_cur):
    cur_arg = np.angle(cur)
    D = np.abs(_wrap(cur_arg[None, :] - prev_phi[:, None]))
    order = np.argsort(D, axis=1)
    nearest = order[:, 0]
    rows = np.arange(len(prev_phi))
    d1 = D[rows, nearest]
    problems = []
    if len(set(nearest.tolist())) != len(nearest):
        problems.append("nearest-zero assignment is not one-to-one")
    gap = min(gap_prev, gap_cur)
    if np.any(d1 >= gap):
        problems.append(f"step {d1.max():.3e} exceeds the minimal angular gap {gap:.3e}")
    if D.shape[1] > 1:
        d2 = D[rows, order[:, 1]]
        if np.any(d2 - d1 <= d1):
            problems.append("two candidate zeros within matching tolerance")
    new_phi = prev_phi + _wrap(cur_arg[nearest] - prev_phi)
    return nearest, d1, new_phi, problems


def _angular_gap(z):
    if len(z) < 2:
        return 2 * np.pi
    a = np.sort(np.mod(np.angle(z), 2 * np.pi))
    gaps = np.diff(np.concatenate([a, [a[0] + 2 * np.pi]]))
    return float(gaps.min())


def _zeros_at(seq, n, b, t):
    fam = szego_family(seq, n, t)
    P = build_popuc(fam, b(t))
    zeros, rep = popuc_zeros(P, full_output=True)
    dP = np.abs(npoly.polyval(zeros, P.deriv()))
    phi_err = rep.residuals / dP + 4 * np.finfo(float).eps
    return fam, P, zeros, phi_err, rep.residuals


def track_popuc_zeros(seq: MomentSequence, n: int, b, grid, *, strict: bool = True) -> ZeroTrajectory:
    """Follow every zero of ``P_{n+1}(., b(t); t)`` across ``grid``.

    Zeros are matched step to step by nearest unwrapped argument.
    Failures are recorded on the trajectory, and with ``strict`` they
    raise :class:`MatchingError`; they are never repaired.
    """
    b = _as_bspec(b)
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.size < 1 or np.any(np.diff(t) <= 0):
        raise ValueError("grid must be a strictly increasing 1-d array")
    T, N = t.size, n + 1
    zeros = np.empty((T, N), dtype=complex)
    phi = np.empty((T, N))
    perr = np.empty((T, N))
    res = np.empty((T, N))
    dist = np.zeros((max(T - 1, 0), N))
    gaps = np.empty(T)
    failures = []
    for i, ti in enumerate(t):
        _, _, z, e, r = _zeros_at(seq, n, b, ti)
        gaps[i] = _angular_gap(z)
        if i == 0:
            zeros[0], perr[0], phi[0], res[0] = z, e, np.angle(z), r
            continue
        idx, d1, new_phi, problems = _match(phi[i - 1], z, gaps[i - 1], gaps[i])
        for msg in problems:
            failures.append(f"t={ti:.6g}: {msg}")
        zeros[i], perr[i], phi[i], res[i] = z[idx], e[idx], new_phi, r[idx]
        dist[i - 1] = d1
    traj = ZeroTrajectory(t, zeros, phi, perr, dist, gaps, res, failures)
    if strict and failures:
        raise MatchingError("; ".join(failures[:3]))
    return traj


@dataclass
class DetSweep:
    t: np.ndarray
    det: np.ndarray
    d_jacobi: np.ndarray
    d_fd: np.ndarray
    pd_ok: np.ndarray
    min_minor: np.ndarray

    @property
    def monotone(self) -> int:
        """+1 strictly increasing on the grid, -1 strictly decreasing, else 0."""
        step = np.diff(self.det)
        if np.all(step > 0) and np.all(self.d_jacobi > 0):
            return 1
        if np.all(step < 0) and np.all(self.d_jacobi < 0):
            return -1
        return 0

    def rows(self):
        for i in range(len(self.t)):
            yield {
                "t": float(self.t[i]),
                "det": float(self.det[i]),
                "d_jacobi": float(self.d_jacobi[i]),
                "d_fd": float(self.d_fd[i]),
                "pd_ok": bool(self.pd_ok[i]),
            }


def detc_sweep(seq: MomentSequence, n: int, grid, *, h: float = 1e-4) -> DetSweep:
    """``det C_{n+1}(t)`` with its Jacobi and finite-difference derivatives.

    Points that lose positive definiteness are flagged, not dropped.
    """
    if seq.perturbation is None:
        raise ValueError("detc_sweep needs a perturbed sequence")
    t = np.asarray(grid, dtype=float)
    det = np.empty(t.size)
    dj = np.empty(t.size)
    dfd = np.empty(t.size)
    pd = np.empty(t.size, dtype=bool)
    mm = np.empty(t.size)
    for i, ti in enumerate(t):
        C = build_toeplitz(seq, n, ti)
        minors, ok = leading_principal_minors(C)
        det[i] = minors[-1]
        pd[i] = ok
        mm[i] = minors.min()
        dj[i] = jacobi_det_derivative(seq, n, ti)
        dfd[i] = fd_det_derivative(seq, n, ti, h)
    return DetSweep(t, det, dj, dfd, pd, mm)


def _sign(x: float, threshold: float = 0.0) -> int:
    if abs(x) <= threshold:
        return 0
    return 1 if x > 0 else -1


def predicted_zero_sign(fam: OPUCFamily, P, zeta: complex, mode: str, dck: complex,
                        k: int, theta0: Optional[float] = None) -> int:
    """Sign of ``d phi / dt`` for the zero ``zeta = exp(i phi)``.

    ``mode="conjugate-pair"`` needs ``conj(zeta)`` to be a zero too and
    returns ``-sgn(Im zeta) sgn(Re(conj(b_k) dc_k/dt))``; ``mode="pair-with"``
    needs ``exp(i theta0)`` to be a zero and returns
    ``sgn(Re(conj(b_k) dc_k/dt))``. Returns 0 when the real part is at
    round-off level.
    """
    dck = complex(dck)
    try:
        if mode == "conjugate-pair":
            bk = bk_conjugate_pair(fam, P, zeta, k)
        elif mode == "pair-with":
            if theta0 is None:
                raise ValueError("pair-with mode needs theta0")
            bk = bk_pair_theta0(fam, P, zeta, theta0, k)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    except DeflationError as exc:
        raise ValueError(f"zero-pair hypothesis violated: {exc}") from None
    val = (np.conj(bk) * dck).real
    s = _sign(val, SIGN_RTOL * abs(bk) * abs(dck))
    if mode == "conjugate-pair":
        return -_sign(zeta.imag) * s
    return s


def _h_integral(fam: OPUCFamily, P, zeta, b):
    # int |P/(z - zeta)|^2 d sigma is a degree-n Laurent integral, so any
    # rule exact for |j| <= n gives it; nodes for -b avoid the zeros of P
    rule = quadrature_rule(fam, -b)
    R = np.polynomial.polynomial.polydiv(P.coeffs, np.array([-zeta, 1.0]))[0]
    return float(np.sum(rule.weights * np.abs(npoly.polyval(rule.nodes, R)) ** 2))


def zero_velocity(fam: OPUCFamily, P, zeta: complex, b: complex, mode: str,
                  dck: complex, k: int, theta0: Optional[float] = None) -> float:
    """Exact ``d phi / dt`` from the quasi-orthogonality identities.

    Conjugate pair: ``(h(zeta) + h(conj zeta)) phi' = -2 (2 - delta_k0)
    Im(zeta) Re(conj(d_k) dc_k)``. Pair with a fixed zero ``w``:
    ``kappa_n^4 h(zeta) phi' = (2 - delta_k0) Re(conj(b_k) dc_k)``. Here
    ``h(x) = int |P(z)/(z - x)|^2 d sigma``.
    """
    mult = 1.0 if k == 0 else 2.0
    dck = complex(dck)
    if mode == "conjugate-pair":
        d = weighted_laurent(P, zeta, np.conj(zeta))[k]
        h = _h_integral(fam, P, zeta, b) + _h_integral(fam, P, np.conj(zeta), b)
        return -2.0 * mult * zeta.imag * (np.conj(d) * dck).real / h
    if mode == "pair-with":
        bk = bk_pair_theta0(fam, P, zeta, theta0, k)
        h = _h_integral(fam, P, zeta, b)
        return mult * (np.conj(bk) * dck).real / (fam.kappa[-1] ** 4 * h)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class HypothesisCheck:
    passed: bool
    margin: float
    detail: str = ""


@dataclass
class VerificationReport:
    theorem: str
    hypotheses: Dict[str, HypothesisCheck]
    observations: List[dict]
    verdict: str
    worst_margin: float
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "worst_margin": _finite(self.worst_margin),
            "hypotheses": {
                name: {"passed": bool(h.passed), "margin": _finite(h.margin), "detail": h.detail}
                for name, h in sorted(self.hypotheses.items())
            },
            "notes": list(self.notes),
            "observations": [_jsonable(o) for o in self.observations],
        }


def _finite(x):
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return 1e308 if x > 0 else -1e308
    return x


def _jsonable(obs: dict) -> dict:
    out = {}
    for key, val in obs.items():
        if isinstance(val, (complex, np.complexfloating)):
            out[key] = [_finite(val.real), _finite(val.imag)]
        elif isinstance(val, (bool, np.bool_)):
            out[key] = bool(val)
        elif isinstance(val, (int, np.integer)):
            out[key] = int(val)
        elif isinstance(val, (float, np.floating)):
            out[key] = _finite(val)
        else:
            out[key] = val
    return out


def _pd_check(seq, n, grid) -> HypothesisCheck:
    worst = math.inf
    where = None
    for t in grid:
        minors, _ = leading_principal_minors(build_toeplitz(seq, n, t))
        ratio = minors.min() / max(minors.max(), 1e-300)
        if ratio < worst:
            worst, where = ratio, t
    return HypothesisCheck(worst > 0, worst, f"smallest leading-minor ratio at t={where:.6g}")


def _monotone_check(seq, grid, sign_factor: int, label: str) -> HypothesisCheck:
    """``sign_factor * c_k(t)`` strictly increasing, from the exact derivative."""
    vals = []
    for t in grid:
        d = moment_derivative(seq, t)
        ck = eval_moment(seq, seq.k, t)
        if abs(d.imag) > 0 or abs(ck.imag) > 1e-14 * (1 + abs(ck)):
            return HypothesisCheck(False, -math.inf, f"c_{seq.k}(t) is not real-valued")
        vals.append(sign_factor * d.real)
    m = min(vals)
    return HypothesisCheck(m > 0, m, label)


def _hurwitz_check(seq, n, grid, w) -> HypothesisCheck:
    worst = -math.inf
    for t in grid:
        worst = max(worst, is_hurwitz(_hurwitz_poly(szego_family(seq, n, t), w)).margin)
    label = "K_n(1,-z)" if w == 1 else "K_n(-1,z)"
    return HypothesisCheck(worst < 0, -worst, f"largest real part of a zero of {label}, negated")


def _hurwitz_poly(fam, w):
    # K_n(1, -z) for the b = 1 corollaries, K_n(-1, z) for the mirrored b = -1 case
    if w == 1:
        return reflect(cd_kernel_poly(fam, 1.0))
    return cd_kernel_poly(fam, -1.0)


def _pf_check(seq, grid, window, order) -> HypothesisCheck:
    worst = math.inf
    for t in grid:
        res = pf_window_check(seq, t, window, order)
        worst = min(worst, res.min_minor)
    return HypothesisCheck(worst > 0, worst, f"smallest minor, window {window}, order <= {order}")


def _real_check(seq) -> HypothesisCheck:
    ok = seq.is_real
    return HypothesisCheck(ok, 0.0 if ok else -1.0, "all moments real")


def _verdict(hyps, asserted_agree):
    """``asserted_agree``: list of booleans for the observations above noise."""
    if not all(h.passed for h in hyps.values()):
        return "hypothesis-not-met"
    if not asserted_agree:
        return "hypothesis-not-met"
    if not all(asserted_agree):
        return "counterexample-candidate"
    return "confirmed"


def _det_theorem(theorem, seq, n, grid, hyps, noise_factor, fd_step):
    sweep = detc_sweep(seq, n, grid, h=fd_step)
    obs = []
    agree = []
    margins = []
    for row in sweep.rows():
        floor = abs(row["d_jacobi"] - row["d_fd"]) + 1e-14 * abs(row["det"])
        asserted = abs(row["d_jacobi"]) > noise_factor * floor
        observed = _sign(row["d_jacobi"])
        row.update(predicted=1, observed=observed, noise_floor=floor, asserted=asserted)
        obs.append(row)
        if asserted:
            agree.append(observed == 1)
            margins.append(row["d_jacobi"] / floor)
    steps_ok = bool(np.all(np.diff(sweep.det) > 0))
    hyps = dict(hyps)
    notes = [f"det strictly increasing across the grid: {steps_ok}"]
    if not steps_ok:
        agree.append(False)
    verdict = _verdict(hyps, agree)
    return VerificationReport(theorem, hyps, obs, verdict,
                              min(margins) if margins else -math.inf, notes)


def _zero_observations(traj, predict, noise_factor, paths):
    """Compare FD slopes with ``predict(i, m)`` on interior grid points."""
    d = traj.dphi_dt(1)
    floor = traj.noise_floor()
    obs, agree, margins = [], [], []
    for i in range(1, len(traj.t) - 1):
        for m in paths:
            pred, extra = predict(i, m)
            val = d[i - 1, m]
            fl = floor[i - 1, m]
            asserted = pred != 0 and abs(val) > noise_factor * fl
            observed = _sign(val)
            row = {
                "t": float(traj.t[i]),
                "path": int(m),
                "zeta": complex(traj.zeros[i, m]),
                "phi": float(traj.phi[i, m]),
                "dphi_fd": float(val),
                "noise_floor": float(fl),
                "predicted": int(pred),
                "observed": int(observed),
                "asserted": bool(asserted),
            }
            row.update(extra)
            obs.append(row)
            if asserted:
                agree.append(observed == pred)
                margins.append(pred * val / fl)
    return obs, agree, margins


def _conjugate_partner(traj, m):
    target = np.conj(traj.zeros[:, m])
    for j in range(traj.n_paths):
        if j != m and np.all(np.abs(traj.zeros[:, j] - target) < PAIR_TOL):
            return j
    return None


def verify(theorem: str, seq: MomentSequence, n: int, grid, b=None, *,
           window: int = 4, order: int = 3, theta0: float = 0.0,
           noise_factor: float = 10.0, fd_step: float = 1e-4) -> VerificationReport:
    """Run one theorem/corollary verifier on a perturbed sequence.

    Parameters
    ----------
    theorem : str
        One of ``thm2.1``, ``thm2.2``, ``thm2.3-conjugate``, ``thm2.3-pair``,
        ``cor2.4``, ``cor2.5``, ``cor2.6``.
    seq : MomentSequence
        Must carry a perturbation; its index is the ``k`` of the theorem.
    grid : array_like
        Increasing ``t`` values; at least 3 for the zero theorems.
    b : complex or BSpec, optional
        POPUC parameter. Fixed to 1 for ``cor2.4``/``cor2.6`` and -1 for
        ``cor2.5``; required for the ``thm2.3`` variants.
    noise_factor : float
        Observed signs are asserted only where the derivative exceeds this
        multiple of its noise floor.

    Raises
    ------
    ValueError
        For precondition violations (missing perturbation, odd ``n`` for
        ``cor2.6``, wrong ``b`` for a corollary, grid too short).
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; expected one of {THEOREMS}")
    if seq.perturbation is None:
        raise ValueError(f"{theorem} needs a perturbed moment sequence")
    grid = np.asarray(grid, dtype=float)
    if grid.size < 3:
        raise ValueError("derivative-based verification needs at least 3 grid points")
    k = seq.k
    hyps: Dict[str, HypothesisCheck] = {"positive-definite": _pd_check(seq, n, grid)}

    if theorem in ("thm2.1", "thm2.2"):
        if theorem == "thm2.1":
            hyps["pf-window"] = _pf_check(seq, grid, window, order)
        else:
            hyps["real-moments"] = _real_check(seq)
            if hyps["positive-definite"].passed:
                hyps["kernel-hurwitz K_n(1,-z)"] = _hurwitz_check(seq, n, grid, 1)
        hyps["(-1)^k c_k increasing"] = _monotone_check(seq, grid, (-1) ** k, "min of (-1)^k dc_k/dt")
        return _det_theorem(theorem, seq, n, grid, hyps, noise_factor, fd_step)

    # zero theorems
    notes: List[str] = []
    if theorem in ("cor2.4", "cor2.6"):
        if b is not None and _as_bspec(b) != BSpec.constant(1):
            raise ValueError(f"{theorem} requires b = 1")
        b = BSpec.constant(1)
    elif theorem == "cor2.5":
        if b is not None and _as_bspec(b) != BSpec.constant(-1):
            raise ValueError("cor2.5 requires b = -1")
        b = BSpec.constant(-1)
    elif b is None:
        raise ValueError(f"{theorem} needs b")
    b = _as_bspec(b)
    if theorem == "cor2.6" and n % 2:
        raise ValueError("cor2.6 requires n even")
    if theorem in ("cor2.4", "cor2.5") and n % 2:
        notes.append(f"n = {n} is odd; the corollary's hypothesis forces n even")

    if theorem in ("cor2.4", "cor2.5"):
        hyps["real-moments"] = _real_check(seq)
    if theorem == "cor2.6":
        hyps["pf-window"] = _pf_check(seq, grid, window, order)
    if theorem == "cor2.4":
        hyps["(-1)^k c_k decreasing"] = _monotone_check(seq, grid, -(-1) ** k, "min of -(-1)^k dc_k/dt")
    elif theorem == "cor2.5":
        hyps["c_k increasing"] = _monotone_check(seq, grid, 1, "min of dc_k/dt")
    elif theorem == "cor2.6":
        hyps["(-1)^k c_k decreasing"] = _monotone_check(seq, grid, -(-1) ** k, "min of -(-1)^k dc_k/dt")

    if not hyps["positive-definite"].passed or not all(h.passed for h in hyps.values()):
        return VerificationReport(theorem, hyps, [], "hypothesis-not-met", -math.inf, notes)

    if theorem == "cor2.4":
        hyps["kernel-hurwitz K_n(1,-z)"] = _hurwitz_check(seq, n, grid, 1)
    elif theorem == "cor2.5":
        hyps["kernel-hurwitz K_n(-1,z)"] = _hurwitz_check(seq, n, grid, -1)

    traj = track_popuc_zeros(seq, n, b, grid, strict=False)
    hyps["zero-matching"] = HypothesisCheck(traj.clean, 0.0 if traj.clean else -1.0,
                                            "; ".join(traj.failures[:3]))
    if not traj.clean:
        return VerificationReport(theorem, hyps, [], "hypothesis-not-met", -math.inf, notes)

    fams = {}

    def family_at(i):
        if i not in fams:
            ti = traj.t[i]
            fam = szego_family(seq, n, ti)
            fams[i] = (fam, build_popuc(fam, b(ti)))
        return fams[i]

    if theorem == "thm2.3-conjugate":
        paths = [m for m in range(traj.n_paths)
                 if np.all(np.abs(traj.zeros[:, m].imag) > PAIR_TOL)
                 and _conjugate_partner(traj, m) is not None]
        hyps["conjugate-pair zeros"] = HypothesisCheck(
            bool(paths), float(len(paths)), f"{len(paths)} path(s) with a conjugate partner")
        mode = "conjugate-pair"
    elif theorem == "thm2.3-pair":
        w = np.exp(1j * theta0)
        fixed = [m for m in range(traj.n_paths) if np.all(np.abs(traj.zeros[:, m] - w) < PAIR_TOL)]
        hyps["fixed zero exp(i theta0)"] = HypothesisCheck(
            bool(fixed), float(len(fixed)), f"theta0 = {theta0}")
        paths = [m for m in range(traj.n_paths) if m not in fixed]
        mode = "pair-with"
    elif theorem in ("cor2.4", "cor2.5"):
        paths = [m for m in range(traj.n_paths) if np.all(np.abs(traj.zeros[:, m].imag) > PAIR_TOL)]
        mode = None
    else:  # cor2.6
        i0 = int(np.argmin(np.abs(traj.t)))
        upper = [m for m in range(traj.n_paths) if traj.zeros[i0, m].imag > PAIR_TOL]
        if upper:
            m0 = min(upper, key=lambda m: abs(traj.zeros[i0, m] + 1.0))
            paths = [m0]
            notes.append(f"tracked path {m0}: upper zero closest to -1 at t={traj.t[i0]:.6g}")
        else:
            paths = []
        hyps["upper zero exists"] = HypothesisCheck(bool(upper), float(len(upper)))
        mode = None

    if not all(h.passed for h in hyps.values()):
        return VerificationReport(theorem, hyps, [], "hypothesis-not-met", -math.inf, notes)

    def predict(i, m):
        zeta = traj.zeros[i, m]
        ti = traj.t[i]
        dck = moment_derivative(seq, ti)
        if mode is not None:
            fam, P = family_at(i)
            th = theta0 if mode == "pair-with" else None
            pred = predicted_zero_sign(fam, P, zeta, mode, dck, k, th)
            exact = zero_velocity(fam, P, zeta, b(ti), mode, dck, k, th)
            return pred, {"dphi_exact": exact}
        # corollaries: upper zeros clockwise, lower counterclockwise
        return (-1 if zeta.imag > 0 else 1), {}

    obs, agree, margins = _zero_observations(traj, predict, noise_factor, paths)
    verdict = _verdict(hyps, agree)
    if theorem == "cor2.5" and verdict == "counterexample-candidate":
        flipped = [o for o in obs if o["asserted"] and o["observed"] == -o["predicted"]]
        if len(flipped) == sum(o["asserted"] for o in obs) and k % 2:
            notes.append("every asserted sign matches the prediction with a (-1)^k factor; "
                         "possible k-parity discrepancy")
    return VerificationReport(theorem, hyps, obs, verdict,
                              min(margins) if margins else -math.inf, notes)


def explore_conjecture(q: float, n: int, k: int, grid, *, rate: float = -0.1,
                       kind: str = "exponential-scale") -> List[dict]:
    """Zero motion of ``P_{n+1}(., -1)`` for rotated Rogers-Szego moments.

    ``c_{+-k}`` is perturbed (by default ``c_k(0) exp(rate t)``, which keeps
    the form ``(-1)^k r(t)^{k^2/2}``); ``c_k`` increases iff
    ``(-1)^k rate > 0`` for the exponential kind. One row per upper
    half-plane path, with the observed sign of ``d phi/dt``, the distance
    to 1 at the grid point nearest ``t = 0``, and whether the path is the
    closest-to-1 zero for which the monotonicity is known.
    """
    if n % 2:
        raise ValueError("explore_conjecture requires n even")
    seq = perturb(make_family("rogers-szego", q=q), k, kind, rate)
    t = np.asarray(grid, dtype=float)
    traj = track_popuc_zeros(seq, n, BSpec.constant(-1), t)
    d = traj.dphi_dt(1)
    floor = traj.noise_floor()
    i0 = int(np.argmin(np.abs(t)))
    upper = [m for m in range(traj.n_paths) if traj.zeros[i0, m].imag > PAIR_TOL]
    closest = min(upper, key=lambda m: abs(traj.zeros[i0, m] - 1.0)) if upper else None
    dck = moment_derivative(seq, t[i0])
    ck_dir = _sign(dck.real)
    rows = []
    for m in upper:
        slopes = d[:, m]
        above = np.abs(slopes) > 10 * floor[:, m]
        signs = sorted({_sign(s) for s in slopes[above]})
        if not signs:
            observed = 0
        elif len(signs) == 1:
            observed = signs[0]
        else:
            observed = 2  # sign changes along the grid
        rows.append({
            "path": m,
            "zeta0": complex(traj.zeros[i0, m]),
            "phi0": float(traj.phi[i0, m]),
            "distance_to_1": float(abs(traj.zeros[i0, m] - 1.0)),
            "closest_to_1": m == closest,
            "ck_direction": ck_dir,
            "observed_sign": observed,
            "dphi_min": float(slopes.min()),
            "dphi_max": float(slopes.max()),
            "clockwise": observed == -1,
        })
    return rows
