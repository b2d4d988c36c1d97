"""GCC condition via smallest enclosing spherical caps.

For the orthant, normalizing the columns of A to the unit sphere and
finding the smallest cap that contains them gives the GCC condition
1/|cos(radius)|.  Two families show that GCC and the Grassmann condition
can diverge in either direction.
"""

import math

import numpy as np

from coniccond import (
    Orthant,
    gcc_condition,
    grassmann_condition,
    smallest_enclosing_cap,
    subspace_from_rowspan,
)

print("family one: GCC stays sqrt(2) while the subspace degenerates")
for eps in (0.5, 0.1, 0.01):
    a = np.array([[2 * eps, 1.0, 1.0], [0.0, -1.0, 1.0]])
    gcc = gcc_condition(a).value
    grassmann = grassmann_condition(Orthant(3), subspace_from_rowspan(a)).value
    print(f"  eps={eps:<5} gcc={gcc:.6f}  grassmann={grassmann:.4f}")

pts = np.array([[1.0, 0.0],
                [1 / math.sqrt(2), -1 / math.sqrt(2)],
                [1 / math.sqrt(2), 1 / math.sqrt(2)]])
cap = smallest_enclosing_cap(pts)
print("cap of the eps=0.5 columns: center", cap.center,
      f"radius {cap.radius:.6f} (pi/4 = {math.pi/4:.6f}), boundary points {cap.support}")

print("\nfamily two: GCC blows up like 2/eps while the subspace is fixed")
for eps in (0.1, 0.01, 0.001):
    a = np.array([[1 + eps, 1 + eps, -1 + eps], [-1.0, -1.0, 1.0]])
    gcc = gcc_condition(a).value
    grassmann = grassmann_condition(Orthant(3), subspace_from_rowspan(a)).value
    print(f"  eps={eps:<6} gcc={gcc:12.4f}  (2/eps = {2/eps:8.1f})  grassmann={grassmann:.6f}")

print("\ncolumn scaling never changes GCC (only normalized columns enter):")
rng = np.random.default_rng(0)
a = rng.standard_normal((2, 5))
scales = 0.1 + 5.0 * rng.random(5)
print("  gcc(A)   =", gcc_condition(a).value)
print("  gcc(A D) =", gcc_condition(a * scales).value)
