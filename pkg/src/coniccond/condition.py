"""Condition numbers for homogeneous conic feasibility and their witnesses.

Three related quantities are computed for a cone C and a matrix A with
row span W:

* the Grassmann condition of W: reciprocal projection distance from W
  to the set of subspaces touching C;
* the Renegar condition of A: norm of A over its distance to the set of
  ill-posed matrices (exact where an exact route exists, a certified
  interval otherwise);
* minimal rank-one perturbations that force a chosen vector into the
  row span or kernel, or flip a dual feasible instance to primal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cones import (
    Cone,
    Feasibility,
    FeasibilityStatus,
    classify_feasibility,
    dual_cone,
    extremize_quadratic_over_cone,
)
from .errors import (
    DimensionError,
    NotBalanced,
    NotDualFeasible,
    NotPrimalFeasible,
    XInComplement,
    ZeroVector,
)
from .grassmann import Subspace, angle_point_subspace, subspace_from_rowspan
from .linalg import RANK_TOLERANCE, is_balanced, kappa, require_matrix

# Below this relative size, a minimal flipping perturbation counts as zero
# and the instance as ill posed.
_ZERO_DISTANCE = 1e-12


@dataclass(frozen=True)
class ConditionValue:
    """A condition number, either an exact value or a certified interval.

    Values live in [1, inf]; infinity marks ill-posed instances.
    basis_of_claim names the route that justifies the number.
    """

    kind: str                    # "exact" | "interval"
    value: float | None = None
    lower: float | None = None
    upper: float | None = None
    basis_of_claim: str = ""

    @staticmethod
    def exact(value: float, basis: str) -> "ConditionValue":
        value = float(value)
        if not math.isinf(value):
            value = max(value, 1.0)
        return ConditionValue(kind="exact", value=value, basis_of_claim=basis)

    @staticmethod
    def interval(lower: float, upper: float, basis: str) -> "ConditionValue":
        lower = max(float(lower), 1.0)
        upper = max(float(upper), lower)
        return ConditionValue(kind="interval", lower=lower, upper=upper, basis_of_claim=basis)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def bounds(self) -> tuple[float, float]:
        if self.is_exact:
            assert self.value is not None
            return self.value, self.value
        assert self.lower is not None and self.upper is not None
        return self.lower, self.upper

    def to_json(self) -> dict:
        def num(x: float):
            return "inf" if math.isinf(x) else x

        if self.is_exact:
            return {"kind": "exact", "value": num(self.value), "basis": self.basis_of_claim}
        return {
            "kind": "interval",
            "lower": num(self.lower),
            "upper": num(self.upper),
            "basis": self.basis_of_claim,
        }


@dataclass(frozen=True)
class PerturbationWitness:
    """A rank-one perturbation certifying a feasibility-changing property.

    property_forced is one of "image_contains", "kernel_contains",
    "flips_to_primal"; vector is the (internally normalized) direction the
    property refers to, and residual measures how well the perturbed
    matrix achieves it.  normalization records the norm divided out of
    the caller's vector.
    """

    delta: np.ndarray
    frob_norm: float
    property_forced: str
    vector: np.ndarray
    residual: float
    normalization: float = 1.0


def _status(cone: Cone, w: Subspace, seed: int) -> FeasibilityStatus:
    return classify_feasibility(cone, w, seed=seed)


def _condition_from_status(status: FeasibilityStatus) -> ConditionValue:
    if status.tag is Feasibility.PRIMAL_STRICT:
        return ConditionValue.exact(1.0 / math.sin(status.primal_angle), "primal-angle")
    if status.tag is Feasibility.DUAL_STRICT:
        return ConditionValue.exact(1.0 / math.sin(status.dual_angle), "dual-angle")
    return ConditionValue.exact(math.inf, "ill-posed")


def grassmann_condition(cone: Cone, w: Subspace, seed: int = 0) -> ConditionValue:
    """Reciprocal projection distance from W to the touching subspaces.

    1/sin of the primal angle for strictly primal feasible W, 1/sin of
    the dual angle for strictly dual feasible W, infinity when W itself
    touches the cone.
    """
    return _condition_from_status(_status(cone, w, seed))


def _min_image_over_dual(cone: Cone, a: np.ndarray, seed: int):
    """Minimize ||A p|| over unit p in the dual cone; returns (value, p, method)."""
    ext = extremize_quadratic_over_cone(a.T @ a, dual_cone(cone), maximize=False, seed=seed)
    return float(np.sqrt(max(ext.value, 0.0))), ext.point, ext.method


def distance_to_primal_feasible(cone: Cone, a, seed: int = 0) -> float:
    """Spectral distance from A to the primal feasible matrices.

    Equals the minimum of ||A p|| over unit p in the dual cone: the
    rank-one perturbation -(Ap)p^T puts p into the kernel and no smaller
    perturbation can.
    """
    arr = require_matrix(a)
    if cone.dim != arr.shape[1]:
        raise DimensionError(f"cone dimension {cone.dim} != column count {arr.shape[1]}")
    return _min_image_over_dual(cone, arr, seed)[0]


def renegar_condition(cone: Cone, a, seed: int = 0) -> ConditionValue:
    """Renegar condition of A with respect to the cone.

    Exact for balanced matrices (it then equals the Grassmann condition
    of the row span), exact through the dual-route minimum for dual
    feasible instances (including rank deficient ones), and a certified
    interval [C(W), kappa(A) C(W)] for strictly primal feasible
    nonbalanced matrices.
    """
    arr = require_matrix(a)
    m, n = arr.shape
    if m >= n:
        raise DimensionError(f"requires m < n, got shape {arr.shape}")
    if cone.dim != n:
        raise DimensionError(f"cone dimension {cone.dim} != column count {n}")
    spectral = float(np.linalg.norm(arr, 2))
    if spectral == 0.0:
        raise ZeroVector("the condition of the zero matrix is undefined")
    sigma = np.linalg.svd(arr, compute_uv=False)
    if sigma[-1] <= RANK_TOLERANCE * sigma[0]:
        # Rank deficiency makes A dual feasible; the dual-route minimum
        # still measures the distance to the primal feasible set.
        dist, _, method = _min_image_over_dual(cone, arr, seed)
        if dist <= _ZERO_DISTANCE * max(1.0, spectral):
            return ConditionValue.exact(math.inf, "rank-deficient-ill-posed")
        return ConditionValue.exact(spectral / dist, f"rank-deficient-dual-route-{method}")
    if is_balanced(arr):
        value = grassmann_condition(cone, subspace_from_rowspan(arr), seed=seed)
        return ConditionValue.exact(value.value, f"balanced:{value.basis_of_claim}")
    status = _status(cone, subspace_from_rowspan(arr), seed)
    if status.tag is Feasibility.DUAL_STRICT:
        dist, _, method = _min_image_over_dual(cone, arr, seed)
        if dist <= _ZERO_DISTANCE * max(1.0, spectral):
            return ConditionValue.exact(math.inf, "ill-posed")
        return ConditionValue.exact(spectral / dist, f"dual-route-{method}")
    if status.tag is Feasibility.PRIMAL_STRICT:
        grassmann = 1.0 / math.sin(status.primal_angle)
        return ConditionValue.interval(grassmann, kappa(arr) * grassmann, "sandwich")
    return ConditionValue.exact(math.inf, "ill-posed")


def _unit_vector(x, dim: int) -> tuple[np.ndarray, float]:
    vec = np.asarray(x, dtype=float).reshape(-1)
    if vec.shape[0] != dim:
        raise DimensionError(f"vector length {vec.shape[0]} != expected {dim}")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ZeroVector("a nonzero vector is required")
    return vec / norm, norm


def _require_balanced(b) -> np.ndarray:
    arr = require_matrix(b)
    if not is_balanced(arr, tol=1e-9):
        raise NotBalanced("matrix rows must be orthonormal")
    return arr


def witness_image(b, x) -> PerturbationWitness:
    """Minimal rank-one perturbation pulling x into the row span of balanced B.

    The perturbation (Bp)(cos(a) x - p)^T, with p the normalized
    projection of x onto the row span and a the angle between x and the
    row span, has Frobenius norm sin(a) and no perturbation of smaller
    spectral norm achieves the inclusion.  Requires x not (numerically)
    orthogonal to the row span.
    """
    arr = _require_balanced(b)
    unit, norm = _unit_vector(x, arr.shape[1])
    w = Subspace(arr)
    alpha = angle_point_subspace(unit, w)
    if alpha >= math.pi / 2.0 - 1e-8:
        raise XInComplement("x lies in the orthogonal complement of the row span")
    coords = arr @ unit
    cos_alpha = math.cos(alpha)
    if math.sin(alpha) == 0.0:
        delta = np.zeros_like(arr)
        return PerturbationWitness(delta, 0.0, "image_contains", unit, 0.0, norm)
    p = (arr.T @ coords) / cos_alpha
    delta = np.outer(arr @ p, cos_alpha * unit - p)
    residual = math.sin(angle_point_subspace(unit, subspace_from_rowspan(arr + delta)))
    return PerturbationWitness(
        delta=delta,
        frob_norm=float(np.linalg.norm(delta)),
        property_forced="image_contains",
        vector=unit,
        residual=residual,
        normalization=norm,
    )


def witness_kernel(b, x) -> PerturbationWitness:
    """Minimal rank-one perturbation putting x into the kernel of balanced B.

    The perturbation is -(Bx)x^T with Frobenius norm cos of the angle
    between x and the row span; it vanishes when x is already orthogonal
    to the row span.
    """
    arr = _require_balanced(b)
    unit, norm = _unit_vector(x, arr.shape[1])
    delta = -np.outer(arr @ unit, unit)
    residual = float(np.linalg.norm((arr + delta) @ unit))
    return PerturbationWitness(
        delta=delta,
        frob_norm=float(np.linalg.norm(delta)),
        property_forced="kernel_contains",
        vector=unit,
        residual=residual,
        normalization=norm,
    )


def witness_flip_dual_to_primal(cone: Cone, a, seed: int = 0) -> PerturbationWitness:
    """Minimal perturbation flipping a strictly dual feasible A to primal.

    Picks the unit p in the dual cone minimizing ||A p|| and returns
    -(Ap)p^T, which puts p into the kernel of the perturbed matrix and
    realizes the distance to the primal feasible set.
    """
    arr = require_matrix(a)
    if cone.dim != arr.shape[1]:
        raise DimensionError(f"cone dimension {cone.dim} != column count {arr.shape[1]}")
    status = _status(cone, subspace_from_rowspan(arr), seed)
    if status.tag is not Feasibility.DUAL_STRICT:
        raise NotDualFeasible(f"instance classified as {status.tag.value}")
    dist, p, _ = _min_image_over_dual(cone, arr, seed)
    delta = -np.outer(arr @ p, p)
    residual = float(np.linalg.norm((arr + delta) @ p))
    return PerturbationWitness(
        delta=delta,
        frob_norm=float(np.linalg.norm(delta)),
        property_forced="flips_to_primal",
        vector=p,
        residual=residual,
        normalization=1.0,
    )


def sigma_distances(cone: Cone, w: Subspace, seed: int = 0) -> tuple[float, float]:
    """Projection and geodesic distance from W to the touching subspaces.

    d_p is the reciprocal Grassmann condition (0 when ill posed) and the
    geodesic distance is arcsin(d_p).
    """
    value = grassmann_condition(cone, w, seed=seed).value
    d_p = 0.0 if math.isinf(value) else 1.0 / value
    return d_p, math.asin(d_p)


def inclusion_radius_check(
    cone: Cone,
    w: Subspace,
    samples: int = 200_000,
    seed: int = 0,
    bin_width: float = 0.05,
) -> tuple[float, bool]:
    """Randomized check of the inclusion-radius characterization.

    For strictly primal feasible W, the reciprocal Grassmann condition
    equals the largest r with r * (unit ball of W) inside the projection
    K of (dual cone intersect unit ball) onto W.  That radius is the
    minimum over unit directions y of W of the support of K along y,
    and the support along y equals the norm of the dual-cone projection
    of y.  The sweep covers a deterministic direction grid with angular
    resolution ``bin_width`` plus ``samples`` random directions.
    Agreement means within 10 percent of 1/C(W).
    """
    from .cones import _stream

    if samples < 1000:
        raise ValueError("samples must be at least 1000")
    status = _status(cone, w, seed)
    if status.tag is not Feasibility.PRIMAL_STRICT:
        raise NotPrimalFeasible(f"instance classified as {status.tag.value}")
    dual = dual_cone(cone)
    basis = w.basis
    m = w.dim

    estimate = math.inf
    grid = _direction_grid(m, bin_width, seed)
    drawn = 0
    chunk_index = 0
    while grid is not None or drawn < samples:
        if grid is not None:
            dirs, grid = grid, None
        else:
            take = min(100_000, samples - drawn)
            dirs = _stream(seed, chunk_index).standard_normal((take, m))
            dirs /= np.linalg.norm(dirs, axis=1)[:, None]
            chunk_index += 1
            drawn += take
        supports = np.linalg.norm(dual.project_many(dirs @ basis), axis=1)
        estimate = min(estimate, float(supports.min()))
    reference = math.sin(status.primal_angle)
    agreement = abs(estimate - reference) <= 0.1 * reference
    return estimate, agreement


def _direction_grid(m: int, resolution: float, seed: int) -> np.ndarray:
    """Unit directions in R^m with angular spacing about ``resolution``."""
    from .cones import _stream

    if m == 1:
        return np.array([[1.0], [-1.0]])
    if m == 2:
        count = max(16, int(math.ceil(2.0 * math.pi / resolution)))
        grid = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
        return np.column_stack([np.cos(grid), np.sin(grid)])
    if m == 3:
        # Fibonacci sphere; covering radius is about 2.4/sqrt(count).
        count = max(64, int(math.ceil((2.4 / resolution) ** 2)))
        k = np.arange(count)
        z = 1.0 - (2.0 * k + 1.0) / count
        r = np.sqrt(np.clip(1.0 - z * z, 0.0, 1.0))
        phi = k * math.pi * (3.0 - math.sqrt(5.0))
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    rng = _stream(seed, 2**32)
    directions = rng.standard_normal((8192, m))
    return directions / np.linalg.norm(directions, axis=1)[:, None]


def iteration_bound_estimate(condition: float, n: int) -> float:
    """Interior-point iteration count estimate sqrt(n) * ln(n * condition).

    The constant factor is fixed to one; this is a scale estimate, not a
    guarantee.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if condition < 1.0:
        raise ValueError(f"condition must be at least 1, got {condition}")
    if math.isinf(condition):
        return math.inf
    return math.sqrt(n) * math.log(n * condition)
