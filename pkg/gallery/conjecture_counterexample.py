"""
Do all upper zeros turn clockwise?
==================================

Take Rogers-Szego moments, ``b = -1`` and ``n`` even, and let ``c_k``
grow. The upper zero closest to 1 is known to move clockwise; the
natural guess is that every upper zero does. At ``q = 0.25``, ``n = 6``,
``k = 2`` one of them turns the other way.

Three independent numbers agree on the sign: a central difference on the
tracked zero, the exact velocity from the conjugate-pair formula, and the
velocity from the pair formula with ``theta_0 = pi`` (``-1`` is a zero of
``P_7(., -1)`` because the moments are real).
"""

import numpy as np

from opuclab import (
    build_popuc,
    explore_conjecture,
    make_family,
    moment_derivative,
    perturb,
    szego_family,
    zero_velocity,
)

q, n, k = 0.25, 6, 2
grid = np.linspace(-0.01, 0.01, 21)

# c_2 = q^2 > 0, so c_2(t) = c_2 e^{0.1 t} is increasing
rows = explore_conjecture(q, n, k, grid, rate=0.1)
print(f"{'path':>4} {'arg':>8} {'|z-1|':>8} {'closest':>8} {'sign':>5} {'dphi/dt':>12}")
for r in rows:
    print(f"{r['path']:4d} {r['phi0']:8.4f} {r['distance_to_1']:8.4f} "
          f"{str(r['closest_to_1']):>8} {r['observed_sign']:+5d} {r['dphi_max']:+12.4e}")

###############################################################################
# Exact velocities at ``t = 0``.

seq = perturb(make_family("rogers-szego", q=q), k, "exponential-scale", 0.1)
fam = szego_family(seq, n)
P = build_popuc(fam, -1)
dck = moment_derivative(seq, 0.0)
for r in rows:
    zeta = r["zeta0"]
    v_pair = zero_velocity(fam, P, zeta, -1, "conjugate-pair", dck, k)
    v_pi = zero_velocity(fam, P, zeta, -1, "pair-with", dck, k, theta0=np.pi)
    print(f"arg {np.angle(zeta):.4f}: conjugate-pair {v_pair:+.4e}, pair with -1 {v_pi:+.4e}")

###############################################################################
# The closest-to-1 zero turns clockwise as it must. The zero near
# ``arg 2.35`` turns counterclockwise, so the guess fails at this ``q``.
# A scan over ``q`` in {0.25, 0.5, 0.75} and small ``n, k`` only finds
# such zeros at ``q = 0.25``.
