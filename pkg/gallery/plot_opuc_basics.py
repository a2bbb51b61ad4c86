"""
Orthogonal polynomials from a moment sequence
=============================================

A measure on the unit circle is known here only through its moments
``c_j``. From them we build the monic orthogonal polynomials two ways,
place the zeros of a paraorthogonal polynomial on the circle and read
off a quadrature rule.
"""

import numpy as np

from opuclab import (
    build_popuc,
    heine_opuc,
    make_family,
    popuc_zeros,
    quadrature_rule,
    szego_family,
)

np.set_printoptions(precision=6, suppress=True)

###############################################################################
# The Rogers-Szego moments ``c_j = (-1)^j q^{j^2/2}`` give a positive
# definite Toeplitz section for every ``n``.

seq = make_family("rogers-szego", q=0.5)
fam = szego_family(seq, 4)
print("Verblunsky coefficients:", fam.alpha.real)
print("Q_4 by recursion:       ", fam.Qn.coeffs.real)
print("Q_4 by determinants:    ", heine_opuc(seq, 4).coeffs.real)

###############################################################################
# The paraorthogonal polynomial ``z Q_4 - conj(b) Q_4^*`` has all five zeros
# on the circle. With real moments and ``b = 1``, one of them sits at 1.

zeros = popuc_zeros(build_popuc(fam, 1))
print("zeros:", zeros)
print("max ||z| - 1|:", np.abs(np.abs(zeros) - 1).max())

###############################################################################
# Weights ``1 / K_4(z, z)`` at those nodes integrate every Laurent monomial
# of degree at most 4 exactly.

rule = quadrature_rule(fam, 1, seq)
for j in range(5):
    print(f"c_{j}: rule {rule.integrate_moment(j).real:+.12f}")
