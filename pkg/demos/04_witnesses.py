"""Minimal rank-one perturbation witnesses.

For a balanced matrix B and a unit vector x at angle a to the row span:
* a perturbation of Frobenius norm sin(a) pulls x into the row span, and
  nothing smaller can;
* a perturbation of norm cos(a) puts x into the kernel.

For a strictly dual feasible matrix, the minimal perturbation that flips
it to primal feasibility is -(Ap)p^T at the dual-cone minimizer p, whose
norm is exactly the distance to the primal feasible set.
"""

import math

import numpy as np

from coniccond import (
    Orthant,
    distance_to_primal_feasible,
    subspace_from_rowspan,
    witness_flip_dual_to_primal,
    witness_image,
    witness_kernel,
)
from coniccond.grassmann import angle_point_subspace

b = np.array([[1.0, 0.0, 0.0]])
x = np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0)
alpha = angle_point_subspace(x, subspace_from_rowspan(b))
print(f"angle(x, row span) = {alpha:.6f} (pi/4)")

image = witness_image(b, x)
print("image witness delta =", image.delta, "frobenius norm", image.frob_norm)
print("  -> sin(alpha) =", math.sin(alpha))
print("  residual angle of x against perturbed span:", image.residual)

kernel = witness_kernel(b, x)
print("kernel witness delta =", kernel.delta, "frobenius norm", kernel.frob_norm)
print("  -> cos(alpha) =", math.cos(alpha))
print("  ||(B + delta) x|| =", kernel.residual)

# Flipping a dual feasible instance to primal.
a = np.array([[1.0, 1.0]]) / math.sqrt(2.0)
flip = witness_flip_dual_to_primal(Orthant(2), a)
print("\nflip witness for the diagonal ray:")
print("minimizer p =", flip.vector)
print("delta =", flip.delta, "norm", flip.frob_norm)
print("distance to primal feasibility:", distance_to_primal_feasible(Orthant(2), a))
print("(A + delta) p =", (a + flip.delta) @ flip.vector)
