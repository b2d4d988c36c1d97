"""Subspace geometry: principal angles and the three Grassmann metrics.

Any rotation-invariant distance between equal-dimensional subspaces is a
function of their principal angles.  The library exposes the projection
distance (sin of the largest angle), the geodesic distance (Euclidean
norm of the angle vector), and the Hausdorff distance (largest angle).
"""

import math

import numpy as np

from coniccond import (
    angle_point_subspace,
    complement,
    distance_to_spaces_containing,
    grassmann_distances,
    principal_angles,
    subspace_from_rowspan,
)

w1 = subspace_from_rowspan([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
w2 = subspace_from_rowspan([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0]])
angles = principal_angles(w1, w2)
print("principal angles:", angles, "(expected 0 and pi/4 =", math.pi / 4, ")")

d_p, d_g, d_h = grassmann_distances(w1, w2)
print(f"projection distance d_p = {d_p:.6f}")
print(f"geodesic distance   d_g = {d_g:.6f}")
print(f"hausdorff distance  d_H = {d_h:.6f}")
print(f"identity d_p = sin(d_H): {d_p:.12f} vs {math.sin(d_h):.12f}")

# The projection distance really is the spectral norm of the projector gap.
gap = np.linalg.norm(w1.projector() - w2.projector(), 2)
print(f"projector difference norm = {gap:.12f}")

# Complements preserve all the distances.
print("distances between complements:", grassmann_distances(complement(w1), complement(w2)))

# A point against a subspace: the angle and the induced distances to the
# set of subspaces through that point.
x = np.array([1.0, 1.0, 0.0])
line = subspace_from_rowspan([[1.0, 0.0, 0.0]])
theta = angle_point_subspace(x, line)
print(f"angle((1,1,0), span(e1)) = {theta:.6f} (pi/4)")
print("distance to subspaces containing x:", distance_to_spaces_containing(x, line))
