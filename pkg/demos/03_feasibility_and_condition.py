"""Feasibility classification and the three condition numbers.

A subspace W is strictly primal feasible when it meets the cone only at
the origin, strictly dual feasible when it meets the interior, and ill
posed when it touches the boundary.  The Grassmann condition is the
reciprocal distance to the touching subspaces; the Renegar condition
measures the same degeneracy for a concrete matrix representative and is
sandwiched between C(W) and kappa(A) * C(W).
"""

import math

import numpy as np

from coniccond import (
    Orthant,
    classify_feasibility,
    cone_subspace_angle,
    grassmann_condition,
    iteration_bound_estimate,
    kappa,
    polar_decompose,
    renegar_condition,
    sigma_distances,
    subspace_from_rowspan,
)

cone = Orthant(3)

for rows, label in [
    ([[1.0, 1.0, 1.0]], "interior ray"),
    ([[1.0, -1.0, 0.0]], "sign-mixed ray"),
    ([[1.0, 0.0, 0.0]], "boundary ray"),
]:
    w = subspace_from_rowspan(rows)
    status = classify_feasibility(cone, w)
    print(f"{label:>15}: {status.tag.value:>13}  "
          f"primal angle {status.primal_angle:.4f}, dual angle {status.dual_angle:.4f}")

# The worked 2x3 family: dual feasible with condition sqrt(1+2e^2)/(e sqrt(2)).
eps = 0.1
a = np.array([[2 * eps, 1.0, 1.0], [0.0, -1.0, 1.0]])
w = subspace_from_rowspan(a)
grassmann = grassmann_condition(cone, w)
print("\nfamily matrix, eps = 0.1")
print("grassmann condition:", grassmann.value,
      "(closed form:", math.sqrt(1 + 2 * eps**2) / (eps * math.sqrt(2)), ")")

renegar = renegar_condition(cone, a)
print("renegar condition:", renegar.value, f"({renegar.basis_of_claim})")
print("kappa:", kappa(a))
print("sandwich C(W) <= R(A) <= kappa C(W):",
      grassmann.value, "<=", renegar.value, "<=", kappa(a) * grassmann.value)

# Distances to the ill-posed set in both Grassmann metrics.
d_p, d_g = sigma_distances(cone, w)
print(f"distance to ill-posedness: projection {d_p:.6f}, geodesic {d_g:.6f}")

# Preconditioning: the balanced representative has the same row span,
# kappa 1, and Renegar condition equal to the Grassmann condition.
balanced = polar_decompose(a).balanced_part
print("balanced representative renegar:", renegar_condition(cone, balanced).value)

# Scale estimate for interior-point iteration counts.
print("iteration estimate sqrt(n) ln(n C):",
      iteration_bound_estimate(grassmann.value, 3))

# Witness of the minimal angle: the cone point nearest to W (in angle).
result = cone_subspace_angle(cone, subspace_from_rowspan([[1.0, -1.0, 0.0]]))
print("\nangle(C, span(1,-1,0)) =", result.angle, "witness:", result.witness)
