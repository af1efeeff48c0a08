"""Duality mappings, Auerbach bases and near-convexity defects.

For a smooth norm the duality map sends x to the unique norming
functional J(x) with J(x)(x) = |x|^2 = |J(x)|_*^2; it equals |x| times
the norm gradient.  An Auerbach basis is a basis of unit vectors whose
biorthogonal functionals also have unit dual norm; expanding through it
yields the bilinear forms g and B whose distance to |x|^2 is controlled
by the additivity defect of J.  The defect is estimated empirically by
seeded sampling (a lower bound for the true constant), and the sandwich
check verifies |x|^2 - B(x,x) against a supplied constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    InvalidParameterError,
    LargeResidualError,
    NonSmoothNormError,
)
from . import spaces
from .spaces import NormOracle, dual_eval, support_point
from .mvee import SolverConfig

_FD_REL_STEP = 1e-6


def _require_smooth(norm):
    if norm.family == "lp" and norm.p in (1.0, np.inf):
        raise NonSmoothNormError(
            f"duality map is multivalued for p = {norm.p}")
    if norm.family in ("polytope", "facet"):
        raise NonSmoothNormError(
            "duality map is multivalued for polyhedral norms")
    if norm.family == "direct_sum":
        _require_smooth(norm.left)
        _require_smooth(norm.right)
        if norm.p_sum in (1.0, np.inf):
            raise NonSmoothNormError(
                f"duality map is multivalued for p = {norm.p_sum} sums")
    if norm.family in ("linear_image", "restriction") and norm.base is not None:
        _require_smooth(norm.base)


def _fd_gradient(norm, x):
    h = _FD_REL_STEP * norm.eval(x)
    g = np.zeros(norm.dim)
    for i in range(norm.dim):
        e = np.zeros(norm.dim)
        e[i] = h
        g[i] = (norm.eval(x + e) - norm.eval(x - e)) / (2.0 * h)
    return g


def duality_map(norm, x, check_tol=1e-4):
    """The norming functional J(x) = |x| grad |.| (x), with J(0) = 0.

    Analytic for lp with 1 < p < inf, quadratic norms and any oracle
    exposing a gradient; otherwise central finite differences with a
    relative step of 1e-6, post-checked against the defining identities
    (a failed post-check raises, since it indicates a non-smooth point).
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (norm.dim,):
        raise DimensionMismatchError("vector does not match norm dimension")
    _require_smooth(norm)
    if not np.any(x):
        return np.zeros(norm.dim)
    if norm.family == "lp":
        p = norm.p
        nx = norm.eval(x)
        return nx ** (2.0 - p) * np.abs(x) ** (p - 1.0) * np.sign(x)
    if norm.family == "quadratic":
        return norm.quad @ x
    if norm.has_grad:
        return norm.eval(x) * norm.grad(x)
    nx = norm.eval(x)
    J = nx * _fd_gradient(norm, x)
    resid = abs(J @ x - nx * nx)
    dn = dual_eval(norm, J)
    if resid > check_tol * nx * nx or abs(dn - nx) > check_tol * nx:
        raise LargeResidualError(
            f"finite-difference duality map failed its post-check "
            f"(pairing residual {resid:.2e}, dual norm gap {abs(dn - nx):.2e}); "
            "the norm is likely non-smooth at this point")
    return J


# ---------------------------------------------------------------------------
# Auerbach bases


@dataclass
class AuerbachBasis:
    """Unit vectors with biorthogonal unit-dual-norm functionals.

    ``vectors`` holds e_i as columns and ``functionals`` holds e_i^* as
    rows, so functionals @ vectors is the identity.
    """

    vectors: np.ndarray
    functionals: np.ndarray
    quality: float
    approximate: bool = False
    dual_norms: Optional[np.ndarray] = None

    @property
    def dim(self):
        return self.vectors.shape[0]

    def coefficients(self, y):
        """Expansion coefficients of y in the basis."""
        return self.functionals @ np.asarray(y, dtype=float)


def auerbach_from_vectors(norm, vectors, dual_tol=1e-6):
    """Build and validate an Auerbach basis from explicit unit vectors.

    The functionals are the rows of the inverse matrix, which makes
    biorthogonality automatic; unit dual norm is asserted post hoc and a
    failure flags the basis as approximate rather than raising.
    """
    V = np.asarray(vectors, dtype=float)
    if V.shape != (norm.dim, norm.dim):
        raise DimensionMismatchError("need a square matrix of basis columns")
    norms = np.array([norm.eval(V[:, i]) for i in range(norm.dim)])
    if np.any(np.abs(norms - 1.0) > 1e-9):
        V = V / norms
    F = np.linalg.inv(V)
    dns = np.array([dual_eval(norm, F[i]) for i in range(norm.dim)])
    approx = bool(np.any(np.abs(dns - 1.0) > dual_tol))
    return AuerbachBasis(vectors=V, functionals=F,
                         quality=abs(np.linalg.det(V)),
                         approximate=approx, dual_norms=dns)


def _det_ascent(norm, V0, tol=1e-10, max_rounds=200):
    """Coordinate ascent on |det| over the product of unit spheres.

    The determinant is linear in each column, so the optimal slot update
    is the support point of the cofactor functional.
    """
    d = norm.dim
    V = V0.copy()
    for i in range(d):
        V[:, i] /= norm.eval(V[:, i])
    det = np.linalg.det(V)
    heuristic = False
    for _ in range(max_rounds):
        improved = False
        for i in range(d):
            det = np.linalg.det(V)
            if abs(det) < 1e-300:
                g = np.linalg.svd(np.delete(V, i, axis=1).T, compute_uv=True)[2][-1]
            else:
                g = det * np.linalg.inv(V)[i]
            sp = support_point(norm, g)
            heuristic = heuristic or sp.heuristic
            cand = V.copy()
            cand[:, i] = sp.point
            new_det = np.linalg.det(cand)
            if abs(new_det) > abs(det) * (1.0 + tol):
                V = cand
                improved = True
        if not improved:
            break
    return V, abs(np.linalg.det(V)), heuristic


def auerbach_basis(norm, config=None, restarts=8):
    """Auerbach basis by seeded determinant maximization.

    Runs coordinate ascent from the normalized standard basis and from
    seeded random starts, keeps the largest |det| (ties broken by the
    lexicographic order of rounded coordinates) and reads the functionals
    off the inverse matrix.
    """
    config = config or SolverConfig()
    d = norm.dim
    rng = np.random.default_rng(config.seed + 101)
    starts = [np.eye(d)]
    if norm.family == "quadratic":
        _, vecs = np.linalg.eigh(norm.quad)
        starts.append(vecs)
    for _ in range(restarts):
        starts.append(rng.standard_normal((d, d)))

    best = None
    for V0 in starts:
        if abs(np.linalg.det(V0)) < 1e-12:
            continue
        V, q, _ = _det_ascent(norm, V0)
        key = (round(q, 12), tuple(np.round(V, 9).ravel()))
        if best is None or key > best[0]:
            best = (key, V, q)
    _, V, q = best
    return auerbach_from_vectors(norm, V)


# ---------------------------------------------------------------------------
# the bilinear forms g and B


def form_g(basis, x, y):
    """g(x, y) = sum_i a_i e_i^*(x) where y = sum_i a_i e_i."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = basis.coefficients(y)
    return float(a @ (basis.functionals @ x))


def form_B(basis, x, y):
    """The symmetrization (g(x,y) + g(y,x)) / 2, a symmetric bilinear form."""
    return 0.5 * (form_g(basis, x, y) + form_g(basis, y, x))


# ---------------------------------------------------------------------------
# near-convexity defect of J


@dataclass
class SampleSpec:
    """Seeded tuple sampling plan for the defect estimate."""

    sizes: Sequence[int] = (2, 3)
    count: int = 128
    seed: int = 0
    scale: float = 1.0
    include: Optional[Sequence[Sequence[np.ndarray]]] = None


@dataclass
class DefectReport:
    sample_count: int
    defect_hat: float
    witness: tuple
    heuristic: bool = False


def _defect_ratio(norm, tup):
    S = np.sum(tup, axis=0)
    nS = norm.eval(S)
    if nS < 1e-12:
        return None
    gap = duality_map(norm, S) - np.sum([duality_map(norm, x) for x in tup],
                                        axis=0)
    return dual_eval(norm, gap) / nS


def near_convexity_defect(norm, sample_spec=None, config=None, basis=None):
    """Empirical maximum of |J(sum x_i) - sum J(x_i)|_* / |sum x_i|.

    Sampled over seeded Gaussian tuples plus the structured tuples
    (a_i e_i) coming from basis expansions of random vectors; the result
    is a lower bound for the true additivity constant and is reported as
    such.  The witness tuple reproduces the reported value.
    """
    config = config or SolverConfig()
    spec = sample_spec or SampleSpec(seed=config.seed)
    _require_smooth(norm)
    d = norm.dim
    rng = np.random.default_rng(spec.seed)
    heuristic = not norm.capabilities.analytic_dual

    tuples = []
    if spec.include:
        tuples.extend([tuple(np.asarray(v, float) for v in tup)
                       for tup in spec.include])
    for size in spec.sizes:
        for _ in range(spec.count):
            tuples.append(tuple(spec.scale * rng.standard_normal(d)
                                for _ in range(size)))
    if basis is None:
        try:
            basis = auerbach_from_vectors(norm, np.eye(d))
            if basis.approximate:
                basis = None
        except Exception:
            basis = None
    if basis is not None:
        for _ in range(max(spec.count // 4, 8)):
            x = spec.scale * rng.standard_normal(d)
            a = basis.coefficients(x)
            tuples.append(tuple(a[i] * basis.vectors[:, i] for i in range(d)
                                if abs(a[i]) > 1e-14))

    best, witness, used = -np.inf, None, 0
    for tup in tuples:
        if len(tup) == 0:
            continue
        r = _defect_ratio(norm, tup)
        if r is None:
            continue
        used += 1
        if r > best:
            best, witness = r, tup
    if witness is None:
        raise InvalidInputError("no usable sample tuples were generated")
    return DefectReport(sample_count=used, defect_hat=float(max(best, 0.0)),
                        witness=witness, heuristic=heuristic)


# ---------------------------------------------------------------------------
# the Hilbertian sandwich


@dataclass
class SandwichReport:
    C: float
    n_samples: int
    passed: bool
    max_excess: float
    witnesses: list


def sandwich_check(norm, basis, C, samples, tol=1e-9):
    """Check | |x|^2 - B(x,x) | <= C |x|^2 on the given samples.

    Report-style: violations are returned as witnesses instead of
    raising, since the interesting outcome is which constants fail.
    """
    if not 0.0 <= C < 1.0:
        raise InvalidParameterError("the sandwich constant must satisfy 0 <= C < 1")
    witnesses = []
    max_excess = -np.inf
    samples = [np.asarray(x, dtype=float) for x in samples]
    for x in samples:
        nx2 = norm.eval(x) ** 2
        if nx2 < 1e-24:
            continue
        gap = abs(nx2 - form_B(basis, x, x))
        excess = gap - C * nx2
        max_excess = max(max_excess, excess)
        if excess > tol:
            witnesses.append((x, gap, C * nx2))
    return SandwichReport(C=C, n_samples=len(samples),
                          passed=not witnesses,
                          max_excess=float(max_excess), witnesses=witnesses)
