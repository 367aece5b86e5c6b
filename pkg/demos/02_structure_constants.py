"""The su(N) scaffolding: generators and their structure tensors.

Everything in this package leans on the generator algebra

    [g_j, g_k] = 2i sum_l f_jkl g_l
    {g_j, g_k} = (4/N) d_jk I + 2 sum_l d_jkl g_l

so this script builds bases for N = 2..6, prints the familiar landmarks
(Pauli matrices, the f_123 = 1 and d_118 = 1/sqrt(3) entries of su(3)),
and re-verifies that every product g_j g_k is reproduced from the stored
sparse tensors.
"""

import math

import numpy as np

from blochvar import basis_for, max_algebra_residual, structure_d, structure_f

print(__doc__)

basis2 = basis_for(2)
print("N=2 generators (the Pauli triple):")
for k, g in enumerate(basis2.generators, start=1):
    print(f"  g{k} =", np.round(g.array, 3).tolist())
print("f(1,2,3) =", structure_f(basis2, 1, 2, 3), "   d tensor:", dict(basis2.d_tensor) or "empty")

basis3 = basis_for(3)
print("\nN=3: 8 generators,", len(basis3.f_tensor), "independent f entries,",
      len(basis3.d_tensor), "independent d entries")
print("f(1,2,3) =", structure_f(basis3, 1, 2, 3))
print("d(1,1,8) =", structure_d(basis3, 1, 1, 8), " vs 1/sqrt(3) =", 1 / math.sqrt(3))
print("antisymmetry: f(2,1,3) =", structure_f(basis3, 2, 1, 3))

print("\nalgebra closure residuals (worst entry of g_j g_k rebuilt from tensors):")
for n in range(2, 7):
    basis = basis_for(n)
    print(f"  N={n}: {len(basis.generators):3d} generators, residual {max_algebra_residual(basis):.2e}")
