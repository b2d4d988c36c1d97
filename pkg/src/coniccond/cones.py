"""Regular cone oracles and the angle between a cone and a subspace.

Cones are membership/projection/sampling oracles.  The central
computation is extremizing a positive semidefinite quadratic form over
the intersection of a cone with the unit sphere:

* for cones that are sign-isomorphic to the nonnegative orthant the
  extremum is found exactly by enumerating coordinate support sets
  (the extremizer restricted to its support is an eigenvector of the
  corresponding principal submatrix);
* for everything else (Lorentz cones and products involving them) a
  multistart projected-gradient search is used and the spread of the
  best converged values is reported as an uncertainty gap.
"""

from __future__ import annotations

import abc
import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConeSpecError,
    DimensionError,
    InconsistentClassification,
    NumericalFailure,
)
from .grassmann import Subspace, complement

# Orthant enumeration is exact but exponential; beyond this many
# coordinates the multistart path takes over.
EXACT_ENUM_LIMIT = 16
MULTISTART_COUNT = 64
# A nonneg-signable eigenvector may dip this far below zero.
SIGNABLE_TOL = 1e-9
# Candidate extrema within this of each other count as ties.
TIE_TOL = 1e-12
# Three-way feasibility classification band, in radians.
ANGLE_THRESHOLD = 1e-7


def _stream(seed: int, index: int) -> np.random.Generator:
    """Deterministic per-index generator derived from a caller seed."""
    return np.random.Generator(np.random.Philox(key=[seed % 2**64, index % 2**64]))


class Cone(abc.ABC):
    """A regular cone in R^n: closed, convex, solid, pointed."""

    @property
    @abc.abstractmethod
    def dim(self) -> int:
        ...

    @abc.abstractmethod
    def contains(self, x, tol: float = 1e-9) -> bool:
        ...

    @abc.abstractmethod
    def project(self, x: np.ndarray) -> np.ndarray:
        """Euclidean projection onto the cone."""

    def project_many(self, x: np.ndarray) -> np.ndarray:
        """Row-wise Euclidean projection of a (count, dim) array."""
        x = np.asarray(x, dtype=float)
        return np.stack([self.project(row) for row in x])

    @abc.abstractmethod
    def dual(self) -> "Cone":
        """The cone of directions with nonpositive inner product against self."""

    @abc.abstractmethod
    def sample_units(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, dim) array of unit vectors inside the cone."""

    @abc.abstractmethod
    def extreme_unit_rays(self, limit: int) -> np.ndarray:
        """Deterministic unit vectors on extreme rays, at most ``limit``."""

    @abc.abstractmethod
    def spec(self) -> str:
        """Textual form; parseable back for the grammar cones."""

    def __repr__(self) -> str:  # pragma: no cover
        return f"{type(self).__name__}({self.spec()!r})"


class Orthant(Cone):
    """The nonnegative orthant of R^n."""

    def __init__(self, n: int):
        if n < 1:
            raise DimensionError(f"orthant dimension must be >= 1, got {n}")
        self._n = int(n)

    @property
    def dim(self) -> int:
        return self._n

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= -tol))

    def project(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(np.asarray(x, dtype=float), 0.0)

    def project_many(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(np.asarray(x, dtype=float), 0.0)

    def dual(self) -> Cone:
        return Negated(self)

    def sample_units(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # Absolute Gaussians, half of them restricted to a random
        # coordinate face: minima of angle functionals often sit on
        # low-dimensional faces that full-support samples cannot reach.
        pts = np.abs(rng.standard_normal((count, self._n)))
        restrict = rng.random(count) < 0.5
        keep = rng.random((count, self._n)) < 0.5
        keep[~restrict] = True
        empty = ~keep.any(axis=1)
        keep[empty, rng.integers(0, self._n, int(empty.sum()))] = True
        pts *= keep
        norms = np.linalg.norm(pts, axis=1)
        norms[norms == 0.0] = 1.0
        return pts / norms[:, None]

    def extreme_unit_rays(self, limit: int) -> np.ndarray:
        k = min(limit, self._n)
        return np.eye(self._n)[:k]

    def spec(self) -> str:
        return f"orthant:{self._n}"


class Lorentz(Cone):
    """Second order cone: last coordinate dominates the norm of the rest."""

    def __init__(self, n: int):
        if n < 2:
            raise DimensionError(f"lorentz cone dimension must be >= 2, got {n}")
        self._n = int(n)

    @property
    def dim(self) -> int:
        return self._n

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(x[-1] >= np.linalg.norm(x[:-1]) - tol)

    def project(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        head, t = x[:-1], float(x[-1])
        r = float(np.linalg.norm(head))
        if r <= t:
            return x.copy()
        if r <= -t:
            return np.zeros_like(x)
        coeff = 0.5 * (r + t)
        out = np.empty_like(x)
        out[:-1] = head * (coeff / r)
        out[-1] = coeff
        return out

    def project_many(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        head, t = x[:, :-1], x[:, -1]
        r = np.linalg.norm(head, axis=1)
        out = x.copy()
        zero = r <= -t
        out[zero] = 0.0
        mid = (~zero) & (r > t)
        coeff = 0.5 * (r[mid] + t[mid])
        safe_r = np.where(r[mid] > 0.0, r[mid], 1.0)
        out[mid, :-1] = head[mid] * (coeff / safe_r)[:, None]
        out[mid, -1] = coeff
        return out

    def dual(self) -> Cone:
        return Negated(self)

    def sample_units(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # Mixture of boundary rays (r = 1) and interior points with the
        # cross-section angle uniform on the disk.
        dirs = rng.standard_normal((count, self._n - 1))
        norms = np.linalg.norm(dirs, axis=1)
        norms[norms == 0.0] = 1.0
        dirs /= norms[:, None]
        radii = np.where(rng.random(count) < 0.5, 1.0, np.sqrt(rng.random(count)))
        pts = np.concatenate([dirs * radii[:, None], np.ones((count, 1))], axis=1)
        return pts / np.linalg.norm(pts, axis=1)[:, None]

    def extreme_unit_rays(self, limit: int) -> np.ndarray:
        rays = []
        for i in range(self._n - 1):
            for s in (1.0, -1.0):
                ray = np.zeros(self._n)
                ray[i] = s / np.sqrt(2.0)
                ray[-1] = 1.0 / np.sqrt(2.0)
                rays.append(ray)
                if len(rays) >= limit:
                    return np.array(rays)
        return np.array(rays) if rays else np.zeros((0, self._n))

    def spec(self) -> str:
        return f"lorentz:{self._n}"


class Product(Cone):
    """Cartesian product of cones acting on consecutive coordinate blocks."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise DimensionError("product cone needs at least one factor")
        self._factors = factors
        self._offsets = np.cumsum([0] + [c.dim for c in factors])

    @property
    def factors(self) -> tuple[Cone, ...]:
        return self._factors

    @property
    def dim(self) -> int:
        return int(self._offsets[-1])

    def _blocks(self, x: np.ndarray):
        for cone, lo, hi in zip(self._factors, self._offsets, self._offsets[1:]):
            yield cone, x[..., lo:hi]

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return all(cone.contains(block, tol) for cone, block in self._blocks(x))

    def project(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.concatenate([cone.project(block) for cone, block in self._blocks(x)])

    def project_many(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.concatenate(
            [cone.project_many(block) for cone, block in self._blocks(x)], axis=1
        )

    def dual(self) -> Cone:
        return Product([cone.dual() for cone in self._factors])

    def sample_units(self, rng: np.random.Generator, count: int) -> np.ndarray:
        parts = []
        weights = np.abs(rng.standard_normal((count, len(self._factors)))) + 1e-12
        for j, cone in enumerate(self._factors):
            parts.append(cone.sample_units(rng, count) * weights[:, j, None])
        pts = np.concatenate(parts, axis=1)
        return pts / np.linalg.norm(pts, axis=1)[:, None]

    def extreme_unit_rays(self, limit: int) -> np.ndarray:
        rays = []
        for cone, lo, hi in zip(self._factors, self._offsets, self._offsets[1:]):
            for ray in cone.extreme_unit_rays(limit - len(rays)):
                full = np.zeros(self.dim)
                full[lo:hi] = ray
                rays.append(full)
                if len(rays) >= limit:
                    return np.array(rays)
        return np.array(rays) if rays else np.zeros((0, self.dim))

    def spec(self) -> str:
        return "product(" + ",".join(c.spec() for c in self._factors) + ")"


class Negated(Cone):
    """The pointwise negation -C of another cone."""

    def __init__(self, inner: Cone):
        self._inner = inner

    @property
    def inner(self) -> Cone:
        return self._inner

    @property
    def dim(self) -> int:
        return self._inner.dim

    def contains(self, x, tol: float = 1e-9) -> bool:
        return self._inner.contains(-np.asarray(x, dtype=float), tol)

    def project(self, x: np.ndarray) -> np.ndarray:
        return -self._inner.project(-np.asarray(x, dtype=float))

    def project_many(self, x: np.ndarray) -> np.ndarray:
        return -self._inner.project_many(-np.asarray(x, dtype=float))

    def dual(self) -> Cone:
        return Negated(self._inner.dual())

    def sample_units(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return -self._inner.sample_units(rng, count)

    def extreme_unit_rays(self, limit: int) -> np.ndarray:
        return -self._inner.extreme_unit_rays(limit)

    def spec(self) -> str:
        return f"negated({self._inner.spec()})"


def cone_membership(cone: Cone, x, tol: float = 1e-9) -> bool:
    """Membership oracle with a dimension check."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != cone.dim:
        raise DimensionError(f"vector length {x.shape[0]} != cone dimension {cone.dim}")
    return cone.contains(x, tol)


def dual_cone(cone: Cone) -> Cone:
    return cone.dual()


def parse_cone(text: str) -> Cone:
    """Parse ``orthant:n`` / ``lorentz:n`` / ``product(spec,...)``, case-insensitive."""
    spec = text.strip().lower()
    if not spec:
        raise ConeSpecError("empty cone specification")
    if spec.startswith("product"):
        body = spec[len("product"):].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ConeSpecError(f"malformed product specification: {text!r}")
        inner = body[1:-1]
        parts, depth, start = [], 0, 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                parts.append(inner[start:i])
                start = i + 1
        parts.append(inner[start:])
        if depth != 0:
            raise ConeSpecError(f"unbalanced parentheses in {text!r}")
        return Product([parse_cone(p) for p in parts])
    name, sep, arg = spec.partition(":")
    if sep != ":":
        raise ConeSpecError(f"expected 'name:dim' in {text!r}")
    try:
        n = int(arg)
    except ValueError:
        raise ConeSpecError(f"bad dimension {arg!r} in {text!r}") from None
    name = name.strip()
    if name == "orthant":
        return Orthant(n)
    if name == "lorentz":
        return Lorentz(n)
    raise ConeSpecError(f"unknown cone {name!r} in {text!r}")


def _orthant_signs(cone: Cone):
    """Sign vector d with x in C iff d*x >= 0, or None if C is not of that form."""
    if isinstance(cone, Orthant):
        return np.ones(cone.dim)
    if isinstance(cone, Negated):
        inner = _orthant_signs(cone.inner)
        return None if inner is None else -inner
    if isinstance(cone, Product):
        blocks = [_orthant_signs(f) for f in cone.factors]
        if any(b is None for b in blocks):
            return None
        return np.concatenate(blocks)
    return None


@dataclass(frozen=True)
class QuadraticExtremum:
    """Extremum of x^T M x over (cone intersect unit sphere)."""

    value: float
    point: np.ndarray
    method: str                 # "exact" | "multistart"
    support: tuple[int, ...] | None
    converged_values: np.ndarray  # best first; single entry for exact


def _enumerate_orthant_extremum(m_mat: np.ndarray, maximize: bool):
    """Exact extremum of y^T M y over unit y >= 0 by support enumeration.

    The extremizer restricted to its support F is an eigenvector of
    M[F, F]; a candidate is accepted when that eigenvector can be signed
    nonnegative.  Ties are broken by lexicographically smallest support.
    """
    n = m_mat.shape[0]
    sym = 0.5 * (m_mat + m_mat.T)
    candidates: list[tuple[float, tuple[int, ...], np.ndarray]] = []
    for size in range(1, n + 1):
        combos = np.array(list(itertools.combinations(range(n), size)))
        subs = sym[combos[:, :, None], combos[:, None, :]]
        eigvals, eigvecs = np.linalg.eigh(subs)
        col = size - 1 if maximize else 0
        lams = eigvals[:, col]
        vecs = eigvecs[:, :, col]
        lead = np.argmax(np.abs(vecs), axis=1)
        lead_sign = np.take_along_axis(vecs, lead[:, None], axis=1)[:, 0]
        vecs = vecs * np.where(lead_sign < 0.0, -1.0, 1.0)[:, None]
        accepted = vecs.min(axis=1) >= -SIGNABLE_TOL
        for idx in np.flatnonzero(accepted):
            support = tuple(int(i) for i in combos[idx])
            candidates.append((float(lams[idx]), support, vecs[idx]))
    assert candidates
    # The value is the plain extremum; the lexicographic tie-break picks
    # only the witness so it cannot degrade the value (near 0 and 1 even
    # 1e-13 of eigenvalue slack amplifies into angle errors above the
    # classification threshold).
    values = [c[0] for c in candidates]
    best_val = max(values) if maximize else min(values)
    tied = [c for c in candidates if abs(c[0] - best_val) <= TIE_TOL]
    _, best_support, best_vec = min(tied, key=lambda c: c[1])
    point = np.zeros(n)
    point[list(best_support)] = np.maximum(best_vec, 0.0)
    point /= np.linalg.norm(point)
    return best_val, point, best_support


def _projected_extremize(m_mat, cone, x0, maximize, max_iter=500, grad_tol=1e-12):
    """Projected gradient ascent/descent on the cone, renormalized each step."""
    sign = 1.0 if maximize else -1.0
    x = np.asarray(x0, dtype=float)
    f = sign * float(x @ m_mat @ x)
    step = 1.0
    converged = False
    for _ in range(max_iter):
        grad = 2.0 * sign * (m_mat @ x)
        moved = False
        while step > 1e-18:
            cand = cone.project(x + step * grad)
            norm = float(np.linalg.norm(cand))
            if norm > 1e-14:
                cand = cand / norm
                fc = sign * float(cand @ m_mat @ cand)
                if fc > f + 1e-15 * (1.0 + abs(f)):
                    pg_norm = float(np.linalg.norm(cand - x)) / step
                    x, f = cand, fc
                    moved = True
                    step = min(step * 2.0, 1.0)
                    break
            step *= 0.5
        if not moved:
            converged = True  # no improving step at resolution limit
            break
        if pg_norm < grad_tol:
            converged = True
            break
    return sign * f, x, converged


def _multistart_extremum(m_mat, cone, maximize, seed, count):
    rays = cone.extreme_unit_rays(count // 2)
    starts = [ray for ray in rays]
    index = len(starts)
    while len(starts) < count:
        starts.append(cone.sample_units(_stream(seed, index), 1)[0])
        index += 1
    results = []
    for x0 in starts:
        val, x, ok = _projected_extremize(m_mat, cone, x0, maximize)
        if ok:
            results.append((val, x))
    if not results:
        raise NumericalFailure("no multistart run converged")
    results.sort(key=lambda r: -r[0] if maximize else r[0])
    values = np.array([r[0] for r in results])
    return results[0][0], results[0][1], values


def extremize_quadratic_over_cone(
    m_mat,
    cone: Cone,
    maximize: bool,
    seed: int = 0,
    exact_enum_limit: int = EXACT_ENUM_LIMIT,
    multistart_count: int = MULTISTART_COUNT,
) -> QuadraticExtremum:
    """Extremize x^T M x over the unit vectors of a cone.

    Exact support enumeration when the cone is sign-isomorphic to an
    orthant of dimension <= exact_enum_limit, multistart otherwise.
    """
    m_mat = np.asarray(m_mat, dtype=float)
    if m_mat.shape != (cone.dim, cone.dim):
        raise DimensionError(f"matrix shape {m_mat.shape} != cone dimension {cone.dim}")
    signs = _orthant_signs(cone)
    if signs is not None and cone.dim <= exact_enum_limit:
        conj = signs[:, None] * m_mat * signs[None, :]
        val, y, support = _enumerate_orthant_extremum(conj, maximize)
        return QuadraticExtremum(
            value=val,
            point=signs * y,
            method="exact",
            support=support,
            converged_values=np.array([val]),
        )
    val, x, values = _multistart_extremum(m_mat, cone, maximize, seed, multistart_count)
    return QuadraticExtremum(
        value=val, point=x, method="multistart", support=None, converged_values=values
    )


@dataclass(frozen=True)
class ConeAngleResult:
    """The minimal angle between nonzero cone points and a subspace."""

    angle: float
    witness: np.ndarray          # unit vector in the cone attaining the angle
    method: str                  # "exact" | "multistart"
    certified_gap: float         # bound on underestimation of cos(angle)


def cone_subspace_angle(
    cone: Cone,
    w: Subspace,
    seed: int = 0,
    exact_enum_limit: int = EXACT_ENUM_LIMIT,
    multistart_count: int = MULTISTART_COUNT,
) -> ConeAngleResult:
    """Angle(C, W) = arccos of the max of ||proj_W x|| over unit x in C.

    Zero when the subspace meets the cone nontrivially.  The returned
    gap is 0 for the exact path and the spread of the best converged
    cosines for the multistart path.
    """
    if cone.dim != w.ambient_dim:
        raise DimensionError(f"cone dimension {cone.dim} != ambient {w.ambient_dim}")
    ext = extremize_quadratic_over_cone(
        w.projector(),
        cone,
        maximize=True,
        seed=seed,
        exact_enum_limit=exact_enum_limit,
        multistart_count=multistart_count,
    )
    lam = min(max(ext.value, 0.0), 1.0)
    angle = float(np.arctan2(np.sqrt(1.0 - lam), np.sqrt(lam)))
    if ext.method == "exact":
        gap = 0.0
    else:
        cosines = np.sqrt(np.clip(ext.converged_values, 0.0, 1.0))
        k = min(8, cosines.size)
        gap = float(cosines[0] - cosines[k - 1])
    return ConeAngleResult(angle=angle, witness=ext.point, method=ext.method, certified_gap=gap)


class Feasibility(enum.Enum):
    PRIMAL_STRICT = "primal_strict"
    DUAL_STRICT = "dual_strict"
    ILL_POSED = "ill_posed"


@dataclass(frozen=True)
class FeasibilityStatus:
    """Three-way classification of a subspace against a cone.

    primal_angle is angle(C, W); dual_angle is angle(dual C, W_perp).
    Exactly one of them can exceed the threshold.
    """

    tag: Feasibility
    primal_angle: float
    dual_angle: float


def classify_feasibility(
    cone: Cone,
    w: Subspace,
    angle_threshold: float = ANGLE_THRESHOLD,
    seed: int = 0,
) -> FeasibilityStatus:
    """Classify W as strictly primal feasible, strictly dual feasible, or ill posed.

    Strict primal feasibility means W meets the cone only at the origin;
    strict dual feasibility means W meets the cone's interior; ill posed
    means W touches the cone.  Both angles above the threshold violate
    the theorem of alternatives and raise InconsistentClassification.
    """
    if cone.dim != w.ambient_dim:
        raise DimensionError(f"cone dimension {cone.dim} != ambient {w.ambient_dim}")
    primal = cone_subspace_angle(cone, w, seed=seed)
    dual = cone_subspace_angle(dual_cone(cone), complement(w), seed=seed)
    p_strict = primal.angle > angle_threshold
    d_strict = dual.angle > angle_threshold
    if p_strict and d_strict:
        raise InconsistentClassification(
            f"both angles exceed the threshold: primal {primal.angle:.3e}, "
            f"dual {dual.angle:.3e}"
        )
    if p_strict:
        tag = Feasibility.PRIMAL_STRICT
    elif d_strict:
        tag = Feasibility.DUAL_STRICT
    else:
        tag = Feasibility.ILL_POSED
    return FeasibilityStatus(tag=tag, primal_angle=primal.angle, dual_angle=dual.angle)
