"""
How paraorthogonal zeros move
=============================

When one moment ``c_k(t)`` changes, each zero ``e^{i phi(t)}`` of
``P_{n+1}(., b)`` moves along the circle. The direction is predicted by
the sign of ``Re(conj(b_k) c_k')``, with ``b_k`` a Laurent coefficient
computed exactly from polynomial algebra.
"""

import numpy as np

from opuclab import (
    build_popuc,
    make_family,
    perturb,
    point_masses,
    szego_family,
    track_popuc_zeros,
    verify,
    zero_velocity,
)

###############################################################################
# Closed form first. With ``c_0 = 1`` and ``c_1 = t`` the polynomial is
# ``z^2 - 2tz + 1``, so the upper zero is ``t + i sqrt(1 - t^2)`` and
# ``phi' = -1 / sqrt(1 - t^2)``.

seq = perturb(make_family("table", values=[1.0, 0.0]), 1, "linear", 1.0)
t = np.linspace(-0.5, 0.5, 5)
traj = track_popuc_zeros(seq, 1, -1, t)
upper = int(np.argmax(traj.zeros[2].imag))
for i, ti in enumerate(t):
    fam = szego_family(seq, 1, t=ti)
    v = zero_velocity(fam, build_popuc(fam, -1), traj.zeros[i, upper], -1, "conjugate-pair", 1.0, 1)
    print(f"t={ti:+.2f}  phi={traj.phi[i, upper]:.6f}  phi'={v:+.6f}  "
          f"exact={-1 / np.sqrt(1 - ti ** 2):+.6f}")

###############################################################################
# A symmetric measure with atoms in the right half of the circle satisfies
# the Hurwitz condition on ``K_n(1, -z)``. Raising ``c_1`` then sends every
# upper zero clockwise and every lower zero counterclockwise.

a = np.array([0.45, 0.9, 1.35])
measure = point_masses(np.exp(1j * np.concatenate([[0.0], a, -a])),
                       [1.0, 0.8, 0.6, 0.5, 0.8, 0.6, 0.5])
report = verify("cor2.4", perturb(measure, 1, "linear", 0.1), 4, np.linspace(-0.05, 0.05, 41))
print("cor2.4:", report.verdict)
seen = {}
for o in report.observations:
    if o["asserted"]:
        seen.setdefault((o["path"], o["zeta"].imag > 0), set()).add(o["observed"])
for (path, up), signs in sorted(seen.items()):
    print(f"  path {path} ({'upper' if up else 'lower'}): observed signs {sorted(signs)}")
