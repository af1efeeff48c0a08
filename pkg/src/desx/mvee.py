"""Minimum-volume enclosing ellipsoids of symmetric bodies.

The centered MVEE of a symmetric point set is computed through its
D-optimal design dual: maximize log det of the moment matrix
M(lam) = sum_i lam_i u_i u_i' over the probability simplex.  The solver
is Frank-Wolfe with Wolfe-Atwood away steps and the closed-form step
size gamma = (kappa/d - 1)/(kappa - 1); at a (1+eps)-certified design
the ellipsoid is A = (d M(lam))^-1 and every input point satisfies
u' A u <= 1 + eps.

Unit balls of norm oracles are handled by a cutting-plane loop: solve
the point MVEE, ask a violation oracle for the worst unit-norm point of
the quadratic form, add it, repeat until containment holds.  Violation
oracles are exact for the structured families (closed forms, vertex or
sign enumeration, generalized eigenproblems) and fall back to seeded
multi-start BFGS ascent, in which case results carry a heuristic flag.

For sums F (+)_p l2(n) the rotational symmetry of the Euclidean block
collapses the solve to k+1 dimensions: the block acts on the moment
matrix only through the scalar t^2/n, and n enters the objective as an
exponent.  See :func:`mvee_direct_sum_reduced`.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
from scipy.optimize import minimize, minimize_scalar

from .errors import (
    DegenerateInputError,
    DimensionMismatchError,
    InvalidParameterError,
    NonConvergenceError,
)
from . import spaces
from .spaces import NormOracle, extreme_points

_EIG_FLOOR = 1e-12


@dataclass
class SolverConfig:
    """Tolerances and budgets shared by the ellipsoid solvers.

    eps is the D-optimality certificate tolerance (kappa <= d(1+eps) at
    termination), containment_tol bounds the admissible violation of the
    body by the returned ellipsoid, and seed drives every random draw.
    """

    eps: float = 1e-7
    containment_tol: float = 1e-6
    max_iter: int = 200_000
    violation_starts: int = 32
    seed: int = 0
    max_rounds: int = 1000

    def __post_init__(self):
        if self.eps <= 0 or self.containment_tol <= 0:
            raise InvalidParameterError("tolerances must be positive")
        if self.max_iter <= 0 or self.max_rounds <= 0:
            raise InvalidParameterError("iteration budgets must be positive")


@dataclass
class Ellipsoid:
    """The centered ellipsoid {x : x' A x <= 1} for symmetric PD A."""

    A: np.ndarray
    basis_id: str = "coordinate"
    eps_certificate: float = np.nan

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        scale = max(np.abs(A).max(), 1.0)
        if np.abs(A - A.T).max() > 1e-12 * scale:
            raise InvalidParameterError("ellipsoid matrix must be symmetric")
        self.A = 0.5 * (A + A.T)
        if np.linalg.eigvalsh(self.A).min() <= 0.0:
            raise InvalidParameterError("ellipsoid matrix must be positive definite")

    @property
    def dim(self):
        return self.A.shape[0]


@dataclass
class DesignState:
    """Weighted symmetric point set certifying MVEE optimality.

    Central symmetry is implicit: each row of ``points`` represents the
    pair {u, -u}.  kappa = max_i u_i' M(lam)^-1 u_i equals the dimension
    at the exact optimum.
    """

    points: np.ndarray
    weights: np.ndarray
    moment: np.ndarray
    kappa: float


@dataclass
class ViolationResult:
    """Worst unit-norm point of a quadratic form, with near-tied peers."""

    point: np.ndarray
    value: float
    heuristic: bool = False
    candidates: Optional[np.ndarray] = None


@dataclass
class BodyResult:
    """Ellipsoid of a norm unit ball plus its optimality evidence."""

    ellipsoid: Ellipsoid
    design: DesignState
    support_points: np.ndarray
    violation: float
    rounds: int
    heuristic: bool = False


@dataclass
class ReducedSumResult:
    """Block data of the MVEE of F (+)_p l2(n).

    The full (k+n)-dimensional ellipsoid is u'A_F u + |v|^2/c <= 1.
    """

    A_F: np.ndarray
    c: float
    kappa: float
    violation: float
    points: np.ndarray
    weights: np.ndarray
    heuristic: bool = False

    @property
    def ellipsoid_F(self):
        return Ellipsoid(self.A_F, basis_id="block-F")


# ---------------------------------------------------------------------------
# point-set MVEE (Frank-Wolfe with away steps on the D-optimal dual)


def _check_spanning(U):
    sv = np.linalg.svd(U, compute_uv=False)
    d = U.shape[1]
    if len(sv) < d or sv[d - 1] <= 1e-10 * max(sv[0], 1.0):
        raise DegenerateInputError("points do not span the space")


def mvee_points(points, config=None, weights0=None):
    """Minimum-volume centered ellipsoid of the symmetric hull of points.

    Parameters
    ----------
    points : array (n, d)
        One representative per symmetric pair; must span R^d.
    config : SolverConfig
    weights0 : array (n,), optional
        Warm-start design weights (renormalized; zeros get a small floor
        only if they break spanning).

    Returns
    -------
    (Ellipsoid, DesignState)
        A = (d M)^-1 with u' A u <= 1 + eps for every input point and
        kappa <= d (1 + eps).
    """
    config = config or SolverConfig()
    U = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = U.shape
    _check_spanning(U)
    eps = config.eps

    if weights0 is not None and len(weights0) == n and np.sum(weights0) > 0:
        lam = np.asarray(weights0, dtype=float).clip(min=0.0)
        lam = lam / lam.sum()
        if np.linalg.matrix_rank(U[lam > 0]) < d:
            lam = np.full(n, 1.0 / n)
    else:
        lam = np.full(n, 1.0 / n)

    def log1p_safe(v):
        return np.log1p(v) if v > -1.0 else -np.inf

    M = U.T @ (lam[:, None] * U)
    active_floor = 1e-17
    kappa = np.inf
    for it in range(config.max_iter):
        if it % 256 == 0:
            M = U.T @ (lam[:, None] * U)  # shed rank-one drift
        try:
            cho = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
        except scipy.linalg.LinAlgError:
            M = U.T @ (lam[:, None] * U)
            M.flat[:: d + 1] += _EIG_FLOOR * np.trace(M) / d
            cho = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
        W = scipy.linalg.cho_solve(cho, U.T, check_finite=False)
        w = np.einsum("ij,ji->i", U, W)
        i_max = int(np.argmax(w))
        kappa = float(w[i_max])
        active = lam > active_floor
        w_act = np.where(active, w, np.inf)
        j_min = int(np.argmin(w_act))
        kappa_min = float(w_act[j_min])

        if kappa <= d * (1.0 + eps) and kappa_min >= d * (1.0 - eps):
            break

        # candidate moves with closed-form log det gains:
        # Frank-Wolfe on the worst point, away on the most superfluous
        # active point, and a pairwise transfer between the two (which
        # merges near-duplicate support points in one step).
        wi, wj = kappa, kappa_min
        g_fw = (wi / d - 1.0) / (wi - 1.0)
        gain_fw = (d - 1.0) * log1p_safe(-g_fw) + log1p_safe(g_fw * (wi - 1.0))

        clip = -lam[j_min] / (1.0 - lam[j_min]) if lam[j_min] < 1.0 else 0.0
        if wj > 1.0 + 1e-14:
            g_aw = max((wj / d - 1.0) / (wj - 1.0), clip)
        else:
            g_aw = clip
        gain_aw = (d - 1.0) * log1p_safe(-g_aw) + log1p_safe(g_aw * (wj - 1.0))

        wij = float(U[i_max] @ W[:, j_min])
        denom = wi * wj - wij * wij
        if denom > 1e-300:
            g_pw = min((wi - wj) / (2.0 * denom), lam[j_min])
        else:
            g_pw = lam[j_min]
        q = (1.0 + g_pw * wi) * (1.0 - g_pw * wj) + (g_pw * wij) ** 2
        gain_pw = np.log(q) if q > 0 else -np.inf

        best = max(gain_fw, gain_aw, gain_pw)
        if not np.isfinite(best) or best < 0.0:
            best, gain_fw = gain_fw, gain_fw  # fall back to plain FW
        if best == gain_pw:
            lam[i_max] += g_pw
            lam[j_min] -= g_pw
            if lam[j_min] < active_floor:
                lam[j_min] = 0.0
            M = M + g_pw * (np.outer(U[i_max], U[i_max])
                            - np.outer(U[j_min], U[j_min]))
        else:
            if best == gain_fw:
                j, gamma = i_max, g_fw
            else:
                j, gamma = j_min, g_aw
            lam *= 1.0 - gamma
            lam[j] += gamma
            if lam[j] < active_floor:
                lam[j] = 0.0
            M = (1.0 - gamma) * M + gamma * np.outer(U[j], U[j])
    else:
        raise NonConvergenceError(
            f"design not certified after {config.max_iter} iterations "
            f"(kappa = {kappa:.6e}, target {d * (1 + eps):.6e})",
            kappa=kappa)

    M = U.T @ (lam[:, None] * U)
    A = np.linalg.inv(d * M)
    A = 0.5 * (A + A.T)
    ell = Ellipsoid(A=A, eps_certificate=eps)
    state = DesignState(points=U, weights=lam, moment=M, kappa=kappa)
    return ell, state


def semi_axes(ellipsoid):
    """Squared semi-axis lengths C_i (descending) and their frame.

    The C_i are the reciprocals of the eigenvalues of A, so the ellipsoid
    is sum_i y_i^2 / C_i <= 1 in the returned orthonormal frame (columns).
    """
    vals, vecs = np.linalg.eigh(ellipsoid.A)
    C = 1.0 / vals[::-1]
    return C, vecs[:, ::-1]


def volume_ratio(ellipsoid):
    """Volume of the ellipsoid over the volume of the unit ball.

    Equals det(A)^(-1/2), the product of the semi-axis lengths, computed
    through a Cholesky factorization.
    """
    L = np.linalg.cholesky(ellipsoid.A)
    return float(1.0 / np.prod(np.diag(L)))


# ---------------------------------------------------------------------------
# violation oracles: maximize x' A x over the unit sphere of a norm


def _tied_top(points, values, rtol=1e-9):
    """Points whose value is within rtol of the best, best first."""
    order = np.argsort(values)[::-1]
    best = values[order[0]]
    keep = [i for i in order if values[i] >= best * (1.0 - rtol)]
    return points[keep], best


def _lp_diag_violation(a, p, d):
    """Exact maximizer of sum a_i x_i^2 over the lp sphere, diagonal case.

    Critical supports S have |x_i| proportional to a_i^(1/(p-2)) on S and
    value (sum_S a_i^(p/(p-2)))^((p-2)/p).  For p > 2 the full support
    always wins; for p < 2 all supports are enumerated.
    """
    r = p / (p - 2.0)
    if p > 2.0:
        supports = [tuple(range(d))]
    else:
        supports = [s for k in range(1, d + 1)
                    for s in itertools.combinations(range(d), k)]
    best_val, best_x = -np.inf, None
    for S in supports:
        aS = a[list(S)]
        val = float(np.sum(aS ** r) ** (1.0 / r)) if r != 0 else float(np.max(aS))
        if val > best_val:
            x = np.zeros(d)
            x[list(S)] = aS ** (1.0 / (p - 2.0))
            x /= spaces._lp_value(x, p)
            best_val, best_x = val, x
    return best_x, best_val


def _sign_orbit(x, rtol=1e-12):
    """All sign patterns of a point, one representative per +- pair."""
    d = len(x)
    nz = np.nonzero(np.abs(x) > rtol * np.abs(x).max())[0]
    if len(nz) == 0 or len(nz) > 12:
        return x[None, :]
    pats = itertools.product([1.0, -1.0], repeat=len(nz) - 1)
    out = []
    for tail in pats:
        s = np.ones(d)
        for idx, sign in zip(nz[1:], tail):
            s[idx] = sign
        out.append(x * s)
    return np.array(out)


def _quad_multistart(norm, A, config, extra_starts=()):
    """Seeded multi-start BFGS ascent of x'Ax / norm(x)^2 (0-homogeneous)."""
    d = norm.dim
    rng = np.random.default_rng(config.seed + 1)

    def neg_rayleigh(x):
        n = norm._eval_fn(x)
        if n <= 0.0:
            return 0.0
        return -(x @ A @ x) / (n * n)

    starts = [np.eye(d)[i] for i in range(d)]
    if d <= 10:
        starts.extend(spaces._sign_patterns(d))
    starts.extend(np.asarray(s, dtype=float) for s in extra_starts)
    starts.extend(rng.standard_normal(d) for _ in range(config.violation_starts))

    results = []
    for x0 in starts:
        nx = np.linalg.norm(x0)
        if nx == 0.0:
            continue
        res = minimize(neg_rayleigh, x0 / nx, method="BFGS",
                       options={"gtol": 1e-13, "maxiter": 400})
        x = res.x / norm._eval_fn(res.x)
        results.append((float(x @ A @ x), x))
    results.sort(key=lambda t: -t[0])
    best = results[0][0]
    cands, seen = [], []
    for val, x in results:
        if val < best * (1.0 - 1e-9):
            break
        if any(np.linalg.norm(x - y) < 1e-6 or np.linalg.norm(x + y) < 1e-6
               for y in seen):
            continue
        seen.append(x)
        cands.append(x)
    return ViolationResult(point=cands[0], value=best, heuristic=True,
                           candidates=np.array(cands))


def _block_split_violation(norm, A, config):
    """Direct sums with block-diagonal A: combine per-block maxima.

    With s = share of the p-th power on the right block, the optimum of
    a(1-s)^(2/p) + b s^(2/p) is at an endpoint for p <= 2 (convex) and
    interior for p > 2 (concave, solved by bounded scalar search).
    """
    k = norm.left.dim
    p = norm.p_sum
    vl = violation_search(norm.left, Ellipsoid(A[:k, :k]), config)
    vr = violation_search(norm.right, Ellipsoid(A[k:, k:]), config)
    a, b = vl.value, vr.value
    heur = vl.heuristic or vr.heuristic

    def embed_left(u):
        return np.concatenate([u, np.zeros(norm.right.dim)])

    def embed_right(v):
        return np.concatenate([np.zeros(k), v])

    if np.isinf(p):
        pts = np.array([np.concatenate([u, v])
                        for u in vl.candidates for v in vr.candidates])
        return ViolationResult(pts[0], a + b, heur, pts)
    if p <= 2.0:
        if a >= b:
            cands = np.array([embed_left(u) for u in vl.candidates])
            return ViolationResult(cands[0], a, heur, cands)
        cands = np.array([embed_right(v) for v in vr.candidates])
        return ViolationResult(cands[0], b, heur, cands)

    def neg(s):
        return -(a * (1.0 - s) ** (2.0 / p) + b * s ** (2.0 / p))

    res = minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-14})
    s = float(res.x)
    vals = [(-neg(0.0), 0.0), (-neg(1.0), 1.0), (-res.fun, s)]
    val, s = max(vals)
    wl, wr = (1.0 - s) ** (1.0 / p), s ** (1.0 / p)
    pts = [np.concatenate([wl * u, wr * v])
           for u in vl.candidates for v in vr.candidates]
    return ViolationResult(pts[0], float(val), heur, np.array(pts))


def violation_search(norm, ellipsoid, config=None):
    """Unit-norm point maximizing x' A x, the separation oracle.

    Exact for lp (closed forms and sign enumeration), quadratic
    (generalized eigenproblem), polytope and facet norms (vertex
    enumeration) and block-compatible direct sums; seeded multi-start
    ascent otherwise, flagged heuristic.
    """
    config = config or SolverConfig()
    A = ellipsoid.A
    if A.shape[0] != norm.dim:
        raise DimensionMismatchError("ellipsoid and norm dimensions differ")
    d = norm.dim
    fam = norm.family

    if fam == "lp":
        p = norm.p
        if p == 2.0:
            vals, vecs = np.linalg.eigh(A)
            return ViolationResult(vecs[:, -1], float(vals[-1]), False,
                                   vecs[:, -1][None, :])
        if p == 1.0:
            diag = np.diag(A)
            cands, best = _tied_top(np.eye(d), diag)
            return ViolationResult(cands[0], float(best), False, cands)
        if np.isinf(p):
            S = spaces._sign_patterns(d)
            vals = np.einsum("ij,jk,ik->i", S, A, S)
            cands, best = _tied_top(S, vals)
            return ViolationResult(cands[0], float(best), False, cands)
        enum_ok = p > 2.0 or d <= 14  # p < 2 enumerates 2^d supports
        off = A - np.diag(np.diag(A))
        if np.abs(off).max() <= 1e-13 * max(np.abs(A).max(), 1.0) and enum_ok:
            x, val = _lp_diag_violation(np.diag(A).copy(), p, d)
            return ViolationResult(x, val, False, _sign_orbit(x))
        extra = []
        if enum_ok:
            xd, _ = _lp_diag_violation(np.abs(np.diag(A)) + 1e-15, p, d)
            extra.append(xd)
        return _quad_multistart(norm, A, config, extra_starts=extra)

    if fam == "quadratic":
        vals, vecs = scipy.linalg.eigh(A, norm.quad)
        x = vecs[:, -1]
        x = x / np.sqrt(x @ norm.quad @ x)
        return ViolationResult(x, float(vals[-1]), False, x[None, :])

    if fam in ("polytope", "facet"):
        V = extreme_points(norm)
        vals = np.einsum("ij,jk,ik->i", V, A, V)
        cands, best = _tied_top(V, vals)
        return ViolationResult(cands[0], float(best), False, cands)

    if fam == "linear_image":
        T = norm.transform
        Tinv = np.linalg.inv(T)
        inner = violation_search(norm.base, Ellipsoid(Tinv.T @ A @ Tinv), config)
        cands = (Tinv @ inner.candidates.T).T
        return ViolationResult(cands[0], inner.value, inner.heuristic, cands)

    if fam == "direct_sum":
        k = norm.left.dim
        off = A[:k, k:]
        if np.abs(off).max() <= 1e-10 * max(np.abs(A).max(), 1.0):
            return _block_split_violation(norm, A, config)
        if norm.p_sum in (1.0, np.inf) and norm.capabilities.extreme_points:
            V = extreme_points(norm)
            vals = np.einsum("ij,jk,ik->i", V, A, V)
            cands, best = _tied_top(V, vals)
            return ViolationResult(cands[0], float(best), False, cands)
        extra = _direct_sum_starts(norm, A, config)
        return _quad_multistart(norm, A, config, extra_starts=extra)

    return _quad_multistart(norm, A, config)


def _direct_sum_starts(norm, A, config):
    """Block-structured warm starts for coupled direct-sum searches."""
    k = norm.left.dim
    vl = violation_search(norm.left, Ellipsoid(_pd_part(A[:k, :k])), config)
    vr = violation_search(norm.right, Ellipsoid(_pd_part(A[k:, k:])), config)
    p = norm.p_sum
    starts = []
    grid = (0.0, 0.25, 0.5, 0.75, 1.0)
    for s in grid:
        if np.isinf(p):
            wl = wr = 1.0
        else:
            wl, wr = (1.0 - s) ** (1.0 / p), s ** (1.0 / p)
        for u in vl.candidates[:4]:
            for v in vr.candidates[:4]:
                starts.append(np.concatenate([wl * u, wr * v]))
    return starts


def _pd_part(B):
    """Symmetric PD shift of a block (used only to seed warm starts)."""
    B = 0.5 * (B + B.T)
    w = np.linalg.eigvalsh(B)
    if w.min() <= 0:
        B = B + (abs(w.min()) + 1e-10) * np.eye(B.shape[0])
    return B


# ---------------------------------------------------------------------------
# unit-ball MVEE via cutting planes


def _initial_points(norm, config):
    d = norm.dim
    pts = []
    if norm.family == "quadratic":
        # the exact contact frame of an ellipsoidal ball
        vals, vecs = np.linalg.eigh(norm.quad)
        pts.extend((vecs[:, i] / np.sqrt(vals[i]) for i in range(d)))
        return np.array(pts)
    for i in range(d):
        e = np.zeros(d)
        e[i] = 1.0
        pts.append(e / norm._eval_fn(e))
    rng = np.random.default_rng(config.seed)
    for _ in range(2 * d):
        g = rng.standard_normal(d)
        pts.append(g / norm._eval_fn(g))
    return np.array(pts)


def mvee_body(norm, config=None):
    """MVEE of the unit ball of a norm oracle, with containment certificate.

    Alternates point-set solves with the violation oracle until the worst
    unit-norm point satisfies x'Ax <= 1 + containment_tol.  Returns the
    ellipsoid, the final design, the active support points and the last
    violation value; ``heuristic`` is set when any round used a
    non-analytic violation search.
    """
    config = config or SolverConfig()
    pts = _initial_points(norm, config)
    heuristic = False
    lam = None
    for round_no in range(1, config.max_rounds + 1):
        ell, state = mvee_points(pts, config, weights0=lam)
        vres = violation_search(norm, ell, config)
        heuristic = heuristic or vres.heuristic
        if vres.value <= 1.0 + config.containment_tol:
            support = state.points[state.weights > 10.0 * config.eps]
            return BodyResult(ellipsoid=ell, design=state,
                              support_points=support,
                              violation=vres.value, rounds=round_no,
                              heuristic=heuristic)
        new_pts = []
        for cand in vres.candidates:
            val = float(cand @ ell.A @ cand)
            if val <= 1.0 + 0.25 * config.containment_tol:
                continue
            dup = np.min(
                np.minimum(np.abs(pts - cand).max(axis=1),
                           np.abs(pts + cand).max(axis=1)))
            if dup < 1e-10:
                continue
            new_pts.append(cand)
        if not new_pts:
            raise NonConvergenceError(
                "cutting-plane loop stalled: violation "
                f"{vres.value:.3e} exceeds 1 + {config.containment_tol:.1e} "
                "but produced no new support point",
                violation=vres.value, kappa=state.kappa)
        pts = np.vstack([pts, new_pts])
        share = min(0.05, 0.5 / round_no)
        lam = np.concatenate([
            state.weights * (1.0 - share),
            np.full(len(new_pts), share / len(new_pts))])
    raise NonConvergenceError(
        f"containment not reached in {config.max_rounds} rounds",
        violation=vres.value, kappa=state.kappa)


# ---------------------------------------------------------------------------
# reduced solver for F (+)_p l2(n)


def _orbit_design_solve(UF, t2, n, config, lam0=None):
    """Frank-Wolfe on orbit atoms (u_j, t_j q), q uniform on the l2(n) sphere.

    Maximizes log det M_F(lam) + n log(sum_j lam_j t_j^2 / n).  Each atom
    contributes u_j u_j' to the F block and t_j^2/n per Euclidean
    coordinate.  kappa_j = u_j' M_F^-1 u_j + t_j^2 / m_E is both the
    gradient coordinate and the orbit supremum of the full-space
    quadratic, so the usual certificate kappa <= (k+n)(1+eps) applies.
    Step sizes come from an exact scalar concave line search, since orbit
    atoms are not rank one.
    """
    J, k = UF.shape
    m = k + n
    eps = config.eps
    if lam0 is not None and len(lam0) == J and np.sum(lam0) > 0:
        lam = np.asarray(lam0, dtype=float).clip(min=0.0)
        lam = 0.95 * lam / lam.sum() + 0.05 / J
    else:
        lam = np.full(J, 1.0 / J)

    def moments(lam):
        MF = UF.T @ (lam[:, None] * UF)
        mE = float(lam @ t2) / n
        return MF, mE

    kappa = np.inf
    for it in range(config.max_iter):
        MF, mE = moments(lam)
        if mE <= 0.0:
            j = int(np.argmax(t2))
            lam = 0.5 * lam
            lam[j] += 0.5
            continue
        try:
            cho = scipy.linalg.cho_factor(MF, lower=True, check_finite=False)
        except scipy.linalg.LinAlgError:
            MF = MF + _EIG_FLOOR * np.trace(MF) / k * np.eye(k)
            cho = scipy.linalg.cho_factor(MF, lower=True, check_finite=False)
        WF = scipy.linalg.cho_solve(cho, UF.T, check_finite=False)
        wF = np.einsum("ij,ji->i", UF, WF)
        w = wF + t2 / mE
        j_max = int(np.argmax(w))
        kappa = float(w[j_max])
        active = lam > 1e-15
        w_act = np.where(active, w, np.inf)
        j_min = int(np.argmin(w_act))
        kappa_min = float(w_act[j_min])
        if kappa <= m * (1.0 + eps) and kappa_min >= m * (1.0 - eps):
            break

        if (kappa - m) >= (m - kappa_min):
            j = j_max
            lo, hi = 0.0, 1.0 - 1e-12
        else:
            j = j_min
            lo = -lam[j] / (1.0 - lam[j]) if lam[j] < 1.0 else 0.0
            hi = 0.0
        wj, rj = float(wF[j]), float(t2[j] / (n * mE))

        def neg_gain(g):
            # log det((1-g)MF + g uu') + n log((1-g)mE + g t^2/n), shifted
            a1 = 1.0 + g * (wj - 1.0)   # (1-g)^(k-1) * a1 factor of det
            a2 = 1.0 + g * (rj - 1.0)
            if a1 <= 1e-300 or a2 <= 1e-300 or g >= 1.0:
                return np.inf
            return -((k - 1.0) * np.log1p(-g) + np.log(a1) + n * np.log(a2))

        res = minimize_scalar(neg_gain, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-15})
        gamma = float(res.x)
        if neg_gain(gamma) >= 0.0 and neg_gain(lo) < neg_gain(gamma):
            gamma = lo
        lam *= 1.0 - gamma
        lam[j] += gamma
        lam[lam < 1e-17] = 0.0
        s = lam.sum()
        if abs(s - 1.0) > 1e-12:
            lam /= s
    else:
        raise NonConvergenceError(
            f"orbit design not certified after {config.max_iter} iterations "
            f"(kappa = {kappa:.6e}, target {m * (1 + eps):.6e})",
            kappa=kappa)
    MF, mE = moments(lam)
    return lam, MF, mE, kappa


def _split_violation(F, p, A_F, c, config):
    """Worst point of u'A_F u + t^2/c over the (k+1)-dim sum sphere."""
    vF = violation_search(F, Ellipsoid(A_F), config)
    alpha, beta = vF.value, 1.0 / c
    if np.isinf(p):
        val, s = alpha + beta, None
        pts = [(u, 1.0) for u in vF.candidates]
        return val, pts, vF.heuristic
    if p <= 2.0:
        if alpha >= beta:
            return alpha, [(u, 0.0) for u in vF.candidates], vF.heuristic
        return beta, [(np.zeros(F.dim), 1.0)], vF.heuristic

    def neg(s):
        return -(alpha * (1.0 - s) ** (2.0 / p) + beta * s ** (2.0 / p))

    res = minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-14})
    triples = [(alpha, 0.0), (beta, 1.0), (-res.fun, float(res.x))]
    val, s = max(triples)
    wl, wr = (1.0 - s) ** (1.0 / p), s ** (1.0 / p)
    pts = [(wl * u, wr) for u in vF.candidates]
    if s in (0.0, 1.0):
        pts = [(u, 0.0) for u in vF.candidates] if s == 0.0 else [
            (np.zeros(F.dim), 1.0)]
    return float(val), pts, vF.heuristic


def mvee_direct_sum_reduced(F, p, n, config=None):
    """Block data of the MVEE of F (+)_p l2(n), solved in k+1 dimensions.

    Transitivity of the Euclidean isometry group forces the ellipsoid
    into the form u' A_F u + |v|^2 / c <= 1, so the Euclidean block enters
    only through the scalar c and the objective exponent n.  Constraint
    generation alternates orbit Frank-Wolfe solves with a split violation
    search; termination requires the worst split point within
    1 + containment_tol.

    Returns a :class:`ReducedSumResult` with c >= 1 up to solver accuracy.
    """
    config = config or SolverConfig()
    p = float(p)
    if p < 1.0:
        raise InvalidParameterError(f"direct sum requires p >= 1, got {p}")
    if n < 1:
        raise InvalidParameterError(f"Euclidean block needs n >= 1, got {n}")
    k = F.dim

    atoms = []  # rows (u_1..u_k, t)
    for i in range(k):
        e = np.zeros(k)
        e[i] = 1.0
        atoms.append(np.append(e / F.eval(e), 0.0))
    atoms.append(np.append(np.zeros(k), 1.0))
    if p > 2.0 and not np.isinf(p):
        for s in (0.25, 0.5, 0.75):
            u = atoms[0][:k] * (1.0 - s) ** (1.0 / p)
            atoms.append(np.append(u, s ** (1.0 / p)))
    atoms = np.array(atoms)

    lam = None
    heuristic = False
    for _round in range(1, config.max_rounds + 1):
        UF, t = atoms[:, :k], atoms[:, k]
        lam, MF, mE, kappa = _orbit_design_solve(UF, t ** 2, n, config, lam0=lam)
        m = k + n
        A_F = np.linalg.inv(m * MF)
        A_F = 0.5 * (A_F + A_F.T)
        c = m * mE
        val, pts, heur = _split_violation(F, p, A_F, c, config)
        heuristic = heuristic or heur
        if val <= 1.0 + config.containment_tol:
            return ReducedSumResult(A_F=A_F, c=float(c), kappa=kappa,
                                    violation=float(val), points=atoms,
                                    weights=lam, heuristic=heuristic)
        new_rows = []
        for u, tv in pts:
            row = np.append(u, tv)
            dup = np.min(
                np.minimum(np.abs(atoms - row).max(axis=1),
                           np.abs(atoms + row).max(axis=1)))
            if dup > 1e-13:
                new_rows.append(row)
        if not new_rows:
            raise NonConvergenceError(
                "reduced-sum constraint generation stalled "
                f"(violation {val:.3e})", violation=val, kappa=kappa,
                iterate=(A_F, c))
        atoms = np.vstack([atoms, new_rows])
        lam = np.concatenate([lam * 0.99,
                              np.full(len(new_rows), 0.01 / len(new_rows))])
    raise NonConvergenceError(
        f"reduced-sum solve not converged in {config.max_rounds} rounds",
        violation=val, iterate=(A_F, c))


# ---------------------------------------------------------------------------
# serialization


def ellipsoid_to_text(ellipsoid):
    """Flat key/value record: dimension, row-major A, certificate, frame id."""
    buf = io.StringIO()
    buf.write(f"dim = {ellipsoid.dim}\n")
    entries = ", ".join(format(v, ".17g") for v in ellipsoid.A.ravel())
    buf.write(f"A = [{entries}]\n")
    buf.write(f"eps_certificate = {format(ellipsoid.eps_certificate, '.17g')}\n")
    buf.write(f"basis_id = {ellipsoid.basis_id}\n")
    return buf.getvalue()


def ellipsoid_from_text(text):
    fields = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    d = int(fields["dim"])
    entries = [float(v) for v in fields["A"].strip("[]").split(",")]
    A = np.array(entries).reshape(d, d)
    return Ellipsoid(A=A, basis_id=fields.get("basis_id", "coordinate"),
                     eps_certificate=float(fields.get("eps_certificate", "nan")))


def semi_axes_csv(ellipsoid):
    """CSV of the squared semi-axes, largest first."""
    C, _ = semi_axes(ellipsoid)
    lines = ["index,squared_semi_axis,semi_axis"]
    for i, ci in enumerate(C):
        lines.append(f"{i},{format(ci, '.17g')},{format(np.sqrt(ci), '.17g')}")
    return "\n".join(lines) + "\n"
