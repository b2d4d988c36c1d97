"""Matrix kernel walkthrough: norms, SVD services, polar decomposition.

The polar decomposition A = S B splits a full-rank wide matrix into a
symmetric positive definite scale S and a balanced part B (orthonormal
rows).  B spans the same row space as A with condition number exactly 1,
which is why it serves as a preconditioned representative.
"""

import numpy as np

from coniccond import (
    kappa,
    matrix_norms,
    polar_decompose,
    pseudoinverse,
    rank_deficiency_distance,
    svd_factorize,
)

a = np.array([[2.0, 0.0, 0.0], [0.0, 3.0, 0.0]])
spectral, frobenius = matrix_norms(a)
print("A =\n", a)
print(f"spectral norm {spectral:.6f}, frobenius norm {frobenius:.6f}")

factorization = svd_factorize(a)
print("singular values:", factorization.singular_values)
print("reconstruction error:", np.linalg.norm(factorization.reconstruct() - a))

print(f"kappa(A) = {kappa(a):.6f}  (ratio of extreme singular values)")

factors = polar_decompose(a)
print("scale S =\n", factors.scale)
print("balanced part B =\n", factors.balanced_part)
print("B B^T =\n", factors.balanced_part @ factors.balanced_part.T)
print(f"kappa(B) = {kappa(factors.balanced_part):.12f}  (balanced means 1)")

# The pseudoinverse of a balanced matrix is its transpose.
b = factors.balanced_part
print("||B^+ - B^T|| =", np.linalg.norm(pseudoinverse(b) - b.T))

# Distance to the rank-deficient matrices is the smallest singular value;
# for a balanced matrix that distance is exactly 1.
print("distance of A to rank deficiency:", rank_deficiency_distance(a))
print("distance of B to rank deficiency:", rank_deficiency_distance(b))
