"""Finite-dimensional symmetric norms with explicit analytic structure.

Every space is modelled concretely: the ambient space is R^d with a norm
oracle attached, and a subspace is an explicit basis together with the
Euclidean-orthogonal projector onto its span.  Oracles advertise the
capabilities the ellipsoid solvers exploit (analytic dual norms,
extreme-point enumeration, closed-form quadratic maximization); a seeded
multi-start ascent is the generic fallback and is always flagged as
heuristic in results that depend on it.

Supported families
------------------
``lp``          the p-norm, 1 <= p <= inf
``quadratic``   sqrt(x' G x) for a symmetric positive definite G
``polytope``    Minkowski gauge of the symmetric convex hull of vertices
``facet``       max_i |r_i . x| over a spanning row set (polyhedral, by facets)
``direct_sum``  (|u|_L^p + |v|_R^p)^(1/p) over a recorded block split
``linear_image``  base norm composed with an invertible matrix
``restriction`` ambient norm evaluated through a basis (generic fallback)
``custom``      arbitrary user callback
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import linprog, minimize

from .errors import (
    DegenerateNormError,
    DegenerateSubspaceError,
    DimensionMismatchError,
    InvalidInputError,
    InvalidParameterError,
)

_EXTREME_ENUM_MAX_DIM = 22  # 2^(d-1) sign patterns stay enumerable below this


@dataclass(frozen=True)
class Capabilities:
    """Analytic abilities a norm oracle advertises to the solvers."""

    analytic_dual: bool = False
    extreme_points: bool = False
    analytic_violation: bool = False


class NormOracle:
    """A symmetric norm on R^dim given by evaluation plus optional structure.

    Oracles are immutable after construction; all methods are pure
    functions of their inputs and safe to call concurrently.
    """

    def __init__(self, dim, family, eval_fn, *, capabilities=None, name=None,
                 p=None, vertices=None, rows=None, quad=None,
                 base=None, transform=None, p_sum=None, left=None, right=None,
                 grad_fn=None, smooth=False):
        if dim < 1:
            raise InvalidParameterError(f"dimension must be >= 1, got {dim}")
        self.dim = int(dim)
        self.family = family
        self._eval_fn = eval_fn
        self.capabilities = capabilities or Capabilities()
        self.name = name or family
        self.p = p
        self.vertices = vertices          # polytope: (m, dim) representatives
        self.rows = rows                  # facet: (m, dim) functional rows
        self.quad = quad                  # quadratic: SPD matrix G
        self.base = base                  # linear_image / restriction parent
        self.transform = transform        # linear_image: matrix T, eval(x)=base(Tx)
        self.p_sum = p_sum                # direct_sum exponent
        self.left = left
        self.right = right
        self._grad_fn = grad_fn
        self.smooth = smooth

    def eval(self, x):
        """Norm of a single vector."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected vector of length {self.dim}, got shape {x.shape}")
        return float(self._eval_fn(x))

    __call__ = eval

    def eval_many(self, X):
        """Norms of the rows of X, shape (n, dim)."""
        X = np.asarray(X, dtype=float)
        return np.array([self._eval_fn(row) for row in X])

    @property
    def has_grad(self):
        return self._grad_fn is not None

    def grad(self, x):
        """Gradient of the norm at x (None if not analytically available)."""
        if self._grad_fn is None:
            return None
        return self._grad_fn(np.asarray(x, dtype=float))

    def __repr__(self):
        return f"NormOracle({self.name}, dim={self.dim})"


@dataclass
class Subspace:
    """A subspace given by an explicit basis of ambient vectors.

    ``basis`` has the basis vectors as columns; ``projector`` maps ambient
    vectors to coordinates in that basis (Euclidean-orthogonal projection,
    so projector @ basis == identity).  ``norm`` is the induced norm oracle
    acting on coordinate vectors.
    """

    ambient: NormOracle
    basis: np.ndarray
    projector: np.ndarray
    norm: NormOracle

    @property
    def dim(self):
        return self.basis.shape[1]

    def embed(self, coords):
        """Ambient vector for a coordinate vector."""
        return self.basis @ np.asarray(coords, dtype=float)

    def coords(self, x):
        """Coordinates of the projection of an ambient vector."""
        return self.projector @ np.asarray(x, dtype=float)


@dataclass
class Direction:
    """A functional of dual norm one, kept in ambient coordinates."""

    coefficients: np.ndarray
    dual_norm: float = 1.0
    heuristic: bool = False

    def __call__(self, x):
        return float(self.coefficients @ np.asarray(x, dtype=float))


@dataclass
class SupportResult:
    """Maximizer of a linear functional over the unit ball."""

    point: np.ndarray
    value: float
    heuristic: bool = False


# ---------------------------------------------------------------------------
# constructors


def _conjugate(p):
    if p == 1.0:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _lp_value(x, p):
    a = np.abs(x)
    if np.isinf(p):
        return float(np.max(a)) if a.size else 0.0
    if p == 1.0:
        return float(np.sum(a))
    if p == 2.0:
        return float(np.linalg.norm(a))
    m = np.max(a)
    if m == 0.0:
        return 0.0
    return float(m * np.sum((a / m) ** p) ** (1.0 / p))


def _lp_grad(x, p):
    # valid for 1 < p < inf; at x = 0 the norm is not differentiable
    n = _lp_value(x, p)
    if n == 0.0:
        raise InvalidInputError("gradient of a norm is undefined at 0")
    a = np.abs(x) / n
    return np.sign(x) * a ** (p - 1.0)


def make_lp(d, p):
    """The p-norm on R^d.

    Parameters
    ----------
    d : int
        Dimension, at least 1.
    p : float
        Exponent in [1, inf]; ``numpy.inf`` gives the max norm.
    """
    p = float(p)
    if p < 1.0:
        raise InvalidParameterError(f"lp norm requires p >= 1, got {p}")
    caps = Capabilities(analytic_dual=True,
                        extreme_points=(p in (1.0, np.inf)),
                        analytic_violation=True)
    smooth = 1.0 < p < np.inf
    grad_fn = (lambda x, _p=p: _lp_grad(x, _p)) if smooth else None
    return NormOracle(d, "lp", lambda x, _p=p: _lp_value(x, _p),
                      capabilities=caps, name=f"lp(d={d}, p={p})",
                      p=p, grad_fn=grad_fn, smooth=smooth)


def make_quadratic(G):
    """The norm sqrt(x' G x) for symmetric positive definite G."""
    G = np.asarray(G, dtype=float)
    G = 0.5 * (G + G.T)
    w = np.linalg.eigvalsh(G)
    if w.min() <= 1e-12 * max(w.max(), 1.0):
        raise DegenerateNormError("quadratic form is not positive definite")
    d = G.shape[0]

    def ev(x, _G=G):
        return float(np.sqrt(max(x @ _G @ x, 0.0)))

    def gr(x, _G=G):
        n = ev(x)
        if n == 0.0:
            raise InvalidInputError("gradient of a norm is undefined at 0")
        return (_G @ x) / n

    caps = Capabilities(analytic_dual=True, extreme_points=False,
                        analytic_violation=True)
    return NormOracle(d, "quadratic", ev, capabilities=caps,
                      name=f"quadratic(d={d})", quad=G, grad_fn=gr, smooth=True)


def _symmetrize_reps(V, tol=1e-12):
    """Deduplicate a vertex list up to sign, keeping one representative."""
    reps = []
    for v in V:
        if any(np.allclose(v, r, atol=tol) or np.allclose(v, -r, atol=tol)
               for r in reps):
            continue
        reps.append(v)
    return np.array(reps)


def make_polytope(vertices):
    """Minkowski gauge of the symmetric convex hull of a vertex list.

    Every vertex v implies -v; the list must span the space.
    """
    V = np.atleast_2d(np.asarray(vertices, dtype=float))
    d = V.shape[1]
    sv = np.linalg.svd(V, compute_uv=False)
    if len(sv) < d or sv[d - 1] <= 1e-10 * max(sv[0], 1.0):
        raise DegenerateNormError(
            "polytope vertices do not span the space; the gauge is degenerate")
    V = _symmetrize_reps(V)

    def ev(x, _V=V):
        return _polytope_gauge(_V, x)

    caps = Capabilities(analytic_dual=True, extreme_points=True,
                        analytic_violation=True)
    return NormOracle(d, "polytope", ev, capabilities=caps,
                      name=f"polytope(d={d}, m={len(V)})", vertices=V)


def _polytope_gauge(V, x):
    """min sum|c| subject to V' c = x, via the HiGHS LP solver."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    m = V.shape[0]
    # c = cp - cm with cp, cm >= 0
    A_eq = np.hstack([V.T, -V.T])
    res = linprog(np.ones(2 * m), A_eq=A_eq, b_eq=x,
                  bounds=[(0, None)] * (2 * m), method="highs")
    if not res.success:
        raise DegenerateNormError(f"gauge LP failed: {res.message}")
    return float(res.fun)


def make_facet(rows):
    """Polyhedral norm max_i |r_i . x| given by spanning facet functionals."""
    R = np.atleast_2d(np.asarray(rows, dtype=float))
    d = R.shape[1]
    sv = np.linalg.svd(R, compute_uv=False)
    if len(sv) < d or sv[d - 1] <= 1e-10 * max(sv[0], 1.0):
        raise DegenerateNormError("facet rows do not span; unit ball unbounded")
    R = _symmetrize_reps(R)

    def ev(x, _R=R):
        return float(np.max(np.abs(_R @ x)))

    caps = Capabilities(analytic_dual=True, extreme_points=True,
                        analytic_violation=True)
    return NormOracle(d, "facet", ev, capabilities=caps,
                      name=f"facet(d={d}, m={len(R)})", rows=R)


def make_direct_sum(p, left, right):
    """The p-sum of two norm oracles on the concatenated coordinates."""
    p = float(p)
    if p < 1.0:
        raise InvalidParameterError(f"direct sum requires p >= 1, got {p}")
    k, n = left.dim, right.dim

    if np.isinf(p):
        def ev(x):
            return max(left._eval_fn(x[:k]), right._eval_fn(x[k:]))
    else:
        def ev(x):
            return _lp_value(np.array([left._eval_fn(x[:k]),
                                       right._eval_fn(x[k:])]), p)

    caps = Capabilities(
        analytic_dual=left.capabilities.analytic_dual
        and right.capabilities.analytic_dual,
        extreme_points=(p in (1.0, np.inf))
        and left.capabilities.extreme_points
        and right.capabilities.extreme_points,
        analytic_violation=left.capabilities.analytic_violation
        and right.capabilities.analytic_violation,
    )
    smooth = left.smooth and right.smooth and 1.0 < p < np.inf
    grad_fn = None
    if smooth:
        def grad_fn(x):
            u, v = x[:k], x[k:]
            a, b = left.eval(u), right.eval(v)
            s = _lp_value(np.array([a, b]), p)
            if s == 0.0:
                raise InvalidInputError("gradient of a norm is undefined at 0")
            gu = (a / s) ** (p - 1.0) * left.grad(u) if a > 0 else np.zeros(k)
            gv = (b / s) ** (p - 1.0) * right.grad(v) if b > 0 else np.zeros(n)
            return np.concatenate([gu, gv])

    return NormOracle(k + n, "direct_sum", ev, capabilities=caps,
                      name=f"({left.name}) (+)_{p} ({right.name})",
                      p_sum=p, left=left, right=right,
                      grad_fn=grad_fn, smooth=smooth)


def make_custom(d, eval_fn, name="custom", grad_fn=None, smooth=False):
    """Wrap an arbitrary evaluation callback as a norm oracle."""
    return NormOracle(d, "custom", eval_fn, capabilities=Capabilities(),
                      name=name, grad_fn=grad_fn, smooth=smooth)


def apply_linear(norm, T):
    """The norm x -> norm(T x) for invertible T, with structure preserved.

    For the families with exact oracles the transformed norm keeps exact
    oracles: its unit ball is the preimage of the base ball under T.
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (norm.dim, norm.dim):
        raise DimensionMismatchError("transform shape does not match norm")
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-12 * max(sv[0], 1.0):
        raise InvalidInputError("transform is numerically singular")
    if norm.family == "quadratic":
        return make_quadratic(T.T @ norm.quad @ T)
    if norm.family == "facet":
        return make_facet(norm.rows @ T)
    if norm.family == "lp" and norm.p == 2.0:
        return make_quadratic(T.T @ T)
    if norm.family == "lp" and np.isinf(norm.p):
        return make_facet(T)
    if norm.family == "lp" and norm.p == 1.0:
        return make_polytope(np.linalg.solve(T, np.eye(norm.dim)).T)
    if norm.family == "polytope":
        return make_polytope(np.linalg.solve(T, norm.vertices.T).T)
    if norm.family == "linear_image":
        return apply_linear(norm.base, norm.transform @ T)

    def ev(x, _n=norm, _T=T):
        return _n._eval_fn(_T @ x)

    grad_fn = None
    if norm.has_grad:
        def grad_fn(x, _n=norm, _T=T):
            return _T.T @ _n.grad(_T @ x)

    return NormOracle(norm.dim, "linear_image", ev,
                      capabilities=norm.capabilities,
                      name=f"{norm.name} o T", base=norm, transform=T,
                      grad_fn=grad_fn, smooth=norm.smooth)


def _is_coordinate_selection(B):
    """True when the basis columns are distinct standard basis vectors."""
    d, k = B.shape
    idx = []
    for j in range(k):
        col = B[:, j]
        nz = np.nonzero(col)[0]
        if len(nz) != 1 or col[nz[0]] != 1.0:
            return None
        idx.append(int(nz[0]))
    if len(set(idx)) != k:
        return None
    return idx


def _induced_norm(ambient, B):
    """Oracle for c -> ambient(B c), exact where the family permits it."""
    k = B.shape[1]
    idx = _is_coordinate_selection(B)
    if ambient.family == "lp" and idx is not None:
        return make_lp(k, ambient.p)
    if ambient.family == "lp" and ambient.p == 2.0:
        return make_quadratic(B.T @ B)
    if ambient.family == "quadratic":
        return make_quadratic(B.T @ ambient.quad @ B)
    if ambient.family == "lp" and np.isinf(ambient.p):
        return make_facet(B)
    if ambient.family == "facet":
        return make_facet(ambient.rows @ B)
    if ambient.family == "linear_image":
        return _induced_norm(ambient.base, ambient.transform @ B)

    def ev(c, _a=ambient, _B=B):
        return _a._eval_fn(_B @ c)

    grad_fn = None
    if ambient.has_grad:
        def grad_fn(c, _a=ambient, _B=B):
            return _B.T @ _a.grad(_B @ c)

    return NormOracle(k, "restriction", ev, capabilities=Capabilities(),
                      name=f"{ambient.name}|span", base=ambient,
                      transform=B, grad_fn=grad_fn, smooth=ambient.smooth)


def restrict(ambient, basis):
    """Subspace of the ambient space spanned by the given basis vectors.

    ``basis`` is a sequence of ambient vectors (rows).  The induced norm
    on coordinates c is the ambient norm of the combination sum c_i b_i;
    the projector is the Euclidean-orthogonal projection expressed in
    basis coordinates.  For ambient families that restrict exactly
    (Euclidean/quadratic to quadratic, max-type to facet, coordinate
    sub-bases of lp to lp) the induced oracle keeps exact capabilities.
    """
    rows = np.atleast_2d(np.asarray(basis, dtype=float))
    if rows.shape[1] != ambient.dim:
        raise DimensionMismatchError(
            f"basis vectors have length {rows.shape[1]}, ambient dim is {ambient.dim}")
    B = rows.T  # columns are the basis vectors
    k = B.shape[1]
    sv = np.linalg.svd(B, compute_uv=False)
    if len(sv) < k or sv[k - 1] <= 1e-10 * max(sv[0], 1.0):
        raise DegenerateSubspaceError("basis is numerically linearly dependent")
    projector = np.linalg.pinv(B)
    induced = _induced_norm(ambient, B)
    return Subspace(ambient=ambient, basis=B, projector=projector, norm=induced)


# ---------------------------------------------------------------------------
# dual norm and support points


def _facet_dual(R, f):
    """Dual of max|Rx|: the gauge of the symmetric hull of the rows of R."""
    return _polytope_gauge(R, f)


def dual_eval(norm, f):
    """The dual norm sup { f.x : norm(x) <= 1 }.

    Analytic for the lp, quadratic, polytope, facet, direct-sum and
    linear-image families; a seeded multi-start ascent otherwise (use
    :func:`support_point` to see the heuristic flag).
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (norm.dim,):
        raise DimensionMismatchError(
            f"functional has shape {f.shape}, expected ({norm.dim},)")
    if not np.any(f):
        return 0.0
    if norm.family == "lp":
        return _lp_value(f, _conjugate(norm.p))
    if norm.family == "quadratic":
        return float(np.sqrt(f @ np.linalg.solve(norm.quad, f)))
    if norm.family == "polytope":
        return float(np.max(np.abs(norm.vertices @ f)))
    if norm.family == "facet":
        return _facet_dual(norm.rows, f)
    if norm.family == "direct_sum":
        k = norm.left.dim
        return _lp_value(np.array([dual_eval(norm.left, f[:k]),
                                   dual_eval(norm.right, f[k:])]),
                         _conjugate(norm.p_sum))
    if norm.family == "linear_image":
        return dual_eval(norm.base, np.linalg.solve(norm.transform.T, f))
    return support_point(norm, f).value


def support_point(norm, f, starts=32, seed=0):
    """A point of the unit ball maximizing the functional f.

    Returns the maximizer, the attained value (the dual norm when the
    search is exact) and whether a heuristic search was used.
    """
    f = np.asarray(f, dtype=float)
    if not np.any(f):
        return SupportResult(np.zeros(norm.dim), 0.0, heuristic=False)
    fam = norm.family
    if fam == "lp":
        p = norm.p
        if p == 1.0:
            j = int(np.argmax(np.abs(f)))
            x = np.zeros(norm.dim)
            x[j] = np.sign(f[j]) if f[j] != 0 else 1.0
            return SupportResult(x, float(np.abs(f[j])), False)
        if np.isinf(p):
            x = np.where(f >= 0, 1.0, -1.0)
            return SupportResult(x, float(np.sum(np.abs(f))), False)
        q = _conjugate(p)
        a = np.abs(f)
        nq = _lp_value(f, q)
        x = np.sign(f) * (a / nq) ** (q - 1.0)
        return SupportResult(x, nq, False)
    if fam == "quadratic":
        y = np.linalg.solve(norm.quad, f)
        val = float(np.sqrt(f @ y))
        return SupportResult(y / val, val, False)
    if fam in ("polytope", "facet"):
        V = extreme_points(norm)
        vals = V @ f
        j = int(np.argmax(np.abs(vals)))
        return SupportResult(V[j] * np.sign(vals[j]) if vals[j] != 0 else V[j],
                             float(np.abs(vals[j])), False)
    if fam == "direct_sum":
        k = norm.left.dim
        sl = support_point(norm.left, f[:k], starts, seed)
        sr = support_point(norm.right, f[k:], starts, seed)
        q = _conjugate(norm.p_sum)
        # weights of the q-norm maximizer over the two block values
        vals = np.array([sl.value, sr.value])
        tot = _lp_value(vals, q)
        if tot == 0.0:
            return SupportResult(np.zeros(norm.dim), 0.0,
                                 sl.heuristic or sr.heuristic)
        if np.isinf(q):
            w = np.zeros(2)
            w[int(np.argmax(vals))] = 1.0
        elif q == 1.0:
            w = np.ones(2)
        else:
            w = (vals / tot) ** (q - 1.0)
        x = np.concatenate([w[0] * sl.point, w[1] * sr.point])
        return SupportResult(x, float(vals @ w), sl.heuristic or sr.heuristic)
    if fam == "linear_image":
        s = support_point(norm.base, np.linalg.solve(norm.transform.T, f),
                          starts, seed)
        return SupportResult(np.linalg.solve(norm.transform, s.point),
                             s.value, s.heuristic)
    return _support_multistart(norm, f, starts, seed)


def _support_multistart(norm, f, starts, seed):
    """Maximize f.x / norm(x), a 0-homogeneous smooth-ish objective."""
    rng = np.random.default_rng(seed)
    d = norm.dim

    def neg_ratio(x):
        n = norm._eval_fn(x)
        if n <= 0.0:
            return 0.0
        return -(f @ x) / n

    cands = [f.copy()]
    cands.extend(np.eye(d)[i] * s for i in range(d) for s in (1.0, -1.0))
    cands.extend(rng.standard_normal(d) for _ in range(starts))
    best_x, best_v = None, -np.inf
    for x0 in cands:
        if not np.any(x0):
            continue
        res = minimize(neg_ratio, x0 / np.linalg.norm(x0), method="BFGS",
                       options={"gtol": 1e-12, "maxiter": 300})
        v = -res.fun
        if v > best_v:
            best_v, best_x = v, res.x
    n = norm._eval_fn(best_x)
    x = best_x / n
    return SupportResult(x, float(f @ x), heuristic=True)


def make_direction(norm, f):
    """Normalize a functional to dual norm one (f in the dual unit sphere)."""
    f = np.asarray(f, dtype=float)
    if not np.any(f):
        raise InvalidInputError("a direction must be a nonzero functional")
    if norm.capabilities.analytic_dual or norm.family in (
            "lp", "quadratic", "polytope", "facet", "direct_sum", "linear_image"):
        dn = dual_eval(norm, f)
        heur = False
    else:
        s = support_point(norm, f)
        dn, heur = s.value, s.heuristic
    if dn <= 0.0:
        raise InvalidInputError("functional has zero dual norm")
    return Direction(coefficients=f / dn, dual_norm=1.0, heuristic=heur)


# ---------------------------------------------------------------------------
# extreme points


def extreme_points(norm):
    """Representatives (up to sign) of the extreme points of the unit ball.

    Available for polytopes, facet norms, lp with p in {1, inf} and
    1/inf-sums of such; returns None when no enumeration is available.
    """
    fam = norm.family
    if fam == "polytope":
        return norm.vertices.copy()
    if fam == "facet":
        return _facet_vertices(norm.rows)
    if fam == "lp":
        if norm.p == 1.0:
            return np.eye(norm.dim)
        if np.isinf(norm.p):
            return _sign_patterns(norm.dim)
        return None
    if fam == "direct_sum" and norm.p_sum in (1.0, np.inf):
        EL = extreme_points(norm.left)
        ER = extreme_points(norm.right)
        if EL is None or ER is None:
            return None
        k, n = norm.left.dim, norm.right.dim
        pts = []
        if norm.p_sum == 1.0:
            for v in EL:
                pts.append(np.concatenate([v, np.zeros(n)]))
            for w in ER:
                pts.append(np.concatenate([np.zeros(k), w]))
        else:
            for v in EL:
                for w in ER:
                    pts.append(np.concatenate([v, w]))
                    pts.append(np.concatenate([v, -w]))
        return _symmetrize_reps(np.array(pts))
    if fam == "linear_image":
        E = extreme_points(norm.base)
        if E is None:
            return None
        return np.linalg.solve(norm.transform, E.T).T
    return None


def _sign_patterns(d):
    """All sign vectors of length d with leading entry +1."""
    if d > _EXTREME_ENUM_MAX_DIM:
        raise InvalidParameterError(f"sign enumeration infeasible for d={d}")
    cols = np.array(list(itertools.product([1.0, -1.0], repeat=d - 1)))
    return np.hstack([np.ones((len(cols), 1)), cols]) if d > 1 else np.ones((1, 1))


def _facet_vertices(R, tol=1e-9):
    """Vertices of {x : |r_i . x| <= 1} by active-set enumeration."""
    m, d = R.shape
    S = np.vstack([R, -R])
    verts = []
    for rows in itertools.combinations(range(m), d):
        A = R[list(rows)]
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        for signs in itertools.product([1.0, -1.0], repeat=d):
            b = np.array(signs)
            x = np.linalg.solve(A, b)
            if np.max(S @ x) <= 1.0 + tol:
                verts.append(x)
    if not verts:
        raise DegenerateNormError("facet ball has no vertices; rows degenerate")
    return _symmetrize_reps(np.array(verts), tol=1e-8)


def sample_unit_sphere(norm, count, seed):
    """Seeded Gaussian directions rescaled to unit norm."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((count, norm.dim))
    return np.array([x / norm._eval_fn(x) for x in X])
