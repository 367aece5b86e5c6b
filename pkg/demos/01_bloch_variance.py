"""Matrices in, geometry out: states and observables as real vectors.

A density matrix rho decomposes over the su(N) generators as
rho = I/N + (1/2) sum_j p_j g_j, and a traceless observable as
A = sum_j a_j g_j.  Once that is done, means and variances stop being
matrix computations: <A> = a.p and

    Var(A) = (2/N) |a|^2 + a'.p - (a.p)^2

with a' the symmetric-tensor contraction of a with itself.  This script
walks one qubit and one qutrit example and shows the matrix-route and
vector-route variances agreeing to near machine precision.
"""

import numpy as np

from blochvar import (
    HermitianMatrix,
    Xoshiro256pp,
    basis_for,
    draw_mixed,
    draw_observable,
    observable_from_matrix,
    state_from_matrix,
    variance_report,
)

print(__doc__)

# --- a qubit, by hand -------------------------------------------------------
basis = basis_for(2)
rho = HermitianMatrix([[0.75, 0.2 - 0.1j], [0.2 + 0.1j, 0.25]])
state = state_from_matrix(rho, basis)
print("qubit state p =", np.round(state.p, 6), " purity |p|^2 =", round(state.purity, 6))

sigma_z_shifted = HermitianMatrix([[6.0, 0.0], [0.0, 4.0]])  # = 5 I + sigma_z
obs = observable_from_matrix(sigma_z_shifted, basis)
print("observable a =", obs.a, " (trace", obs.original_trace, "removed; variance unchanged)")

report = variance_report(obs, state, basis)
print(f"variance via traces  : {report.via_matrix:.12f}")
print(f"variance via vectors : {report.via_bloch:.12f}")
print(f"route discrepancy    : {report.discrepancy:.2e}")

# --- a qutrit, at random ----------------------------------------------------
basis3 = basis_for(3)
rng = Xoshiro256pp(2718)
state3 = draw_mixed(rng, basis3)
obs3 = draw_observable(rng, basis3)
report3 = variance_report(obs3, state3, basis3)
print("\nrandom qutrit pair:")
print(f"mean <A> = a.p       : {report3.mean:+.9f}")
print(f"variance (traces)    : {report3.via_matrix:.12f}")
print(f"variance (vectors)   : {report3.via_bloch:.12f}")
print(f"route discrepancy    : {report3.discrepancy:.2e}")
print("\nFor N > 2 the contracted vector a' carries the non-qubit part:")
print("|a'|^2 =", round(obs3.prime_norm2, 9), " a'.p =", round(float(obs3.a_prime @ state3.p), 9))
