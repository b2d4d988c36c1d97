"""GCC condition number for the nonnegative orthant.

The GCC condition of a matrix is 1/|cos(rho)| where rho is the angular
radius of the smallest spherical cap containing its normalized columns.
The cap is found by exhaustive enumeration of candidate support sets of
at most m points; each nondegenerate subset determines a spherical
circumcenter, and both the circumcenter and its antipode are tried so
caps wider than a hemisphere are found too.
"""

from __future__ import annotations

import itertools
import math

from dataclasses import dataclass

import numpy as np

from .condition import ConditionValue
from .errors import EmptyInput, NonUnitPoint, ZeroColumn
from .linalg import require_matrix

# Gram matrices with eigenvalue ratio below this count as degenerate
# support candidates and are skipped.
_DEGENERATE_TOL = 1e-10
# Columns this close to angular radius pi/2 make the condition infinite.
_RIGHT_ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class SphericalCap:
    """A spherical cap: unit center, angular radius, boundary point indices."""

    center: np.ndarray
    radius: float
    support: tuple[int, ...]


def _cap_radius(points: np.ndarray, center: np.ndarray) -> float:
    return float(np.arccos(np.clip(points @ center, -1.0, 1.0)).max())


def smallest_enclosing_cap(points) -> SphericalCap:
    """Smallest spherical cap containing the given unit points.

    Candidate centers are the points themselves and the spherical
    circumcenters (both signs) of every subset of 2..m points with a
    nondegenerate Gram matrix; the minimal enclosing radius over all
    candidates is exact at this desk scale.  Ties are broken toward the
    lexicographically smallest boundary index set.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.size == 0 or pts.shape[0] == 0:
        raise EmptyInput("at least one point is required")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        worst = int(np.argmax(np.abs(norms - 1.0)))
        raise NonUnitPoint(f"point {worst} has norm {norms[worst]!r}")
    count, ambient = pts.shape

    candidates = [pts[i] for i in range(count)]
    for size in range(2, min(ambient, count) + 1):
        for subset in itertools.combinations(range(count), size):
            sub = pts[list(subset)]
            gram = sub @ sub.T
            eigvals = np.linalg.eigvalsh(gram)
            if eigvals[0] <= _DEGENERATE_TOL * max(eigvals[-1], 1.0):
                continue
            weights = np.linalg.solve(gram, np.ones(size))
            center = sub.T @ weights
            norm = float(np.linalg.norm(center))
            if norm < 1e-12:
                continue
            center /= norm
            candidates.append(center)
            candidates.append(-center)

    best_center = None
    best_radius = math.inf
    best_boundary: tuple[int, ...] = ()
    for center in candidates:
        radius = _cap_radius(pts, center)
        if radius < best_radius - 1e-12:
            take = True
        elif radius <= best_radius + 1e-12:
            boundary = _boundary(pts, center, radius)
            take = boundary < best_boundary
        else:
            take = False
        if take:
            best_center = center
            best_radius = radius
            best_boundary = _boundary(pts, center, radius)
    assert best_center is not None
    return SphericalCap(center=best_center, radius=best_radius, support=best_boundary)


def _boundary(pts: np.ndarray, center: np.ndarray, radius: float) -> tuple[int, ...]:
    angles = np.arccos(np.clip(pts @ center, -1.0, 1.0))
    return tuple(int(i) for i in np.flatnonzero(np.abs(angles - radius) <= 1e-8))


def gcc_condition(a) -> ConditionValue:
    """GCC condition of a matrix: 1/|cos| of its minimal column cap radius.

    Columns are normalized first, so the value is invariant under
    positive column scaling.  Infinite when the radius is a right angle
    within 1e-9.
    """
    arr = require_matrix(a)
    col_norms = np.linalg.norm(arr, axis=0)
    if np.any(col_norms == 0.0):
        raise ZeroColumn(f"column {int(np.argmin(col_norms))} is zero")
    cap = smallest_enclosing_cap((arr / col_norms).T)
    if abs(cap.radius - math.pi / 2.0) <= _RIGHT_ANGLE_TOL:
        return ConditionValue.exact(math.inf, "enclosing-cap")
    return ConditionValue.exact(1.0 / abs(math.cos(cap.radius)), "enclosing-cap")
