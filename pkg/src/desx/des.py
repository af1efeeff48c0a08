"""Directional extents of minimum-volume ellipsoids and their asymptotics.

The directional extent of an ellipsoid {x : x'Ax <= 1} under a functional
f is eta = sqrt(f' A^-1 f), the exact maximum of |f.y| over the ellipsoid.
Scanning eta over lattices of subspaces gives finite surrogates of the
inf-sup and sup-inf quantities that define directionally Euclidean
structure; sums F (+)_p l2(n) give the dichotomy between bounded extents
(p <= 2) and blow-up (p > 2), quantified by the two-dimensional constant
alpha_p(b).  Perturbation and schedule experiments probe the continuity
of the construction under norm changes.

All scans are seeded and the sampled lattices are recorded in the
reports, since the underlying inf/sup over all finite-dimensional
subspaces is not computable verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateSubspaceError,
    DimensionMismatchError,
    InvalidInputError,
    InvalidParameterError,
)
from . import spaces
from .spaces import Direction, NormOracle, make_direction, restrict, support_point
from .mvee import (
    Ellipsoid,
    SolverConfig,
    mvee_body,
    mvee_direct_sum_reduced,
    volume_ratio,
)


# ---------------------------------------------------------------------------
# pointwise quantities


def directional_extent(f, ellipsoid):
    """max |f.y| over the ellipsoid, in closed form sqrt(f' A^-1 f)."""
    coeff = f.coefficients if isinstance(f, Direction) else np.asarray(f, float)
    if coeff.shape != (ellipsoid.dim,):
        raise DimensionMismatchError(
            f"functional shape {coeff.shape} does not match ellipsoid dim "
            f"{ellipsoid.dim}")
    y = np.linalg.solve(ellipsoid.A, coeff)
    return float(np.sqrt(max(coeff @ y, 0.0)))


def gauge(ellipsoid, x):
    """Largest a with a.x inside the ellipsoid, i.e. 1/sqrt(x'Ax)."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise InvalidInputError("gauge is undefined at the zero vector")
    if x.shape != (ellipsoid.dim,):
        raise DimensionMismatchError("vector does not match ellipsoid dimension")
    return float(1.0 / np.sqrt(x @ ellipsoid.A @ x))


@dataclass
class EtaReport:
    """Directional extent of one subspace ellipsoid."""

    direction: Direction
    subspace_dim: int
    eta: float
    eps_certificate: float
    heuristic: bool = False


def eta_subspace(ambient, f, basis, config=None):
    """Directional extent eta over the MVEE of a subspace unit ball.

    The subspace norm is the ambient norm restricted to the span of
    ``basis``; the functional is restricted by evaluating it on the basis
    vectors.  A functional vanishing on the span gives eta = 0.
    """
    config = config or SolverConfig()
    if not isinstance(f, Direction):
        f = make_direction(ambient, f)
    sub = restrict(ambient, basis)
    f_sub = sub.basis.T @ f.coefficients
    result = mvee_body(sub.norm, config)
    if not np.any(np.abs(f_sub) > 1e-15):
        eta = 0.0
    else:
        eta = directional_extent(f_sub, result.ellipsoid)
    return EtaReport(direction=f, subspace_dim=sub.dim, eta=eta,
                     eps_certificate=config.eps,
                     heuristic=result.heuristic or f.heuristic)


# ---------------------------------------------------------------------------
# lattice scans


@dataclass
class LatticeSpec:
    """Sampling plan for seed subspaces F and nested extensions E.

    Each seed F gets a nested list of extensions ending at the full
    space, which is shared by every seed; that common top element makes
    the scan inequality est_sup_inf <= est_inf_sup hold exactly on every
    generated lattice.  With ``adapt_to_direction`` one seed contains a
    support point of the scanned functional, the finite stand-in for the
    subspaces where the functional is norm-attained.
    """

    num_seeds: int = 4
    seed_dim: int = 2
    extensions_per_seed: int = 2
    seed: int = 0
    adapt_to_direction: bool = True
    custom_seeds: Optional[Sequence[np.ndarray]] = None


@dataclass
class DesScanReport:
    lattice: dict
    etas: list                     # rows (seed_idx, ext_idx, dim, eta)
    est_inf_sup: float
    est_sup_inf: float
    lambda_hat: float
    heuristic: bool = False


def _orthonormal_extension(d, existing, count, rng):
    """Extend orthonormal columns with `count` fresh orthonormal columns."""
    cols = [existing[:, i] for i in range(existing.shape[1])]
    added = 0
    while added < count:
        g = rng.standard_normal(d)
        for c in cols:
            g -= (g @ c) * c
        nrm = np.linalg.norm(g)
        if nrm < 1e-8:
            continue
        cols.append(g / nrm)
        added += 1
    return np.column_stack(cols)


def des_scan(ambient, f, lattice, config=None):
    """Finite-lattice surrogate of the inf-sup / sup-inf extents.

    est_inf_sup = min over seeds F of the max of eta over the sampled
    extensions E of F; est_sup_inf = max over seeds of the min.  Both are
    finite-sample surrogates of the corresponding limits and are labeled
    as such by carrying the full lattice description in the report.
    """
    config = config or SolverConfig()
    if not isinstance(f, Direction):
        f = make_direction(ambient, f)
    d = ambient.dim
    rng = np.random.default_rng(lattice.seed)

    seeds = []
    if lattice.custom_seeds is not None:
        seeds.extend(np.asarray(b, dtype=float) for b in lattice.custom_seeds)
    if lattice.adapt_to_direction:
        sp = support_point(ambient, f.coefficients, seed=lattice.seed)
        base = sp.point[:, None] / np.linalg.norm(sp.point)
        k = min(lattice.seed_dim, d)
        seeds.append(_orthonormal_extension(d, base, k - 1, rng).T)
    while len(seeds) < lattice.num_seeds:
        k = min(lattice.seed_dim, d)
        B = _orthonormal_extension(d, np.zeros((d, 0)), k, rng)
        seeds.append(B.T)
    if not seeds:
        raise InvalidInputError("lattice has no seed subspaces")

    rows = []
    heuristic = False
    per_seed_etas = []
    eta_cache = {}

    def eta_of(basis_rows, key):
        nonlocal heuristic
        if key not in eta_cache:
            rep = eta_subspace(ambient, f, basis_rows, config)
            heuristic = heuristic or rep.heuristic
            eta_cache[key] = rep.eta
        return eta_cache[key]

    full_basis = np.eye(d)
    for si, seed_rows in enumerate(seeds):
        k = seed_rows.shape[0]
        etas = [eta_of(seed_rows, ("seed", si))]
        rows.append((si, 0, k, etas[0]))
        B = seed_rows.T
        # orthonormalize for stable nested growth (span is what matters)
        B, _ = np.linalg.qr(B)
        dims = sorted({min(k + 1 + t, d - 1)
                       for t in range(lattice.extensions_per_seed)} - {k})
        ext_idx = 1
        current = B
        for dim_target in dims:
            if dim_target <= current.shape[1] or dim_target >= d:
                continue
            current = _orthonormal_extension(
                d, current, dim_target - current.shape[1], rng)
            etas.append(eta_of(current.T, ("ext", si, ext_idx)))
            rows.append((si, ext_idx, current.shape[1], etas[-1]))
            ext_idx += 1
        etas.append(eta_of(full_basis, ("full",)))
        rows.append((si, ext_idx, d, etas[-1]))
        per_seed_etas.append(etas)

    est_inf_sup = min(max(e) for e in per_seed_etas)
    est_sup_inf = max(min(e) for e in per_seed_etas)
    lattice_desc = {
        "seed": lattice.seed,
        "num_seeds": len(seeds),
        "seed_dims": [s.shape[0] for s in seeds],
        "extensions_per_seed": lattice.extensions_per_seed,
        "ambient_included": True,
        "adapt_to_direction": lattice.adapt_to_direction,
    }
    return DesScanReport(lattice=lattice_desc, etas=rows,
                         est_inf_sup=est_inf_sup, est_sup_inf=est_sup_inf,
                         lambda_hat=est_inf_sup, heuristic=heuristic)


# ---------------------------------------------------------------------------
# chains and Gram limits


@dataclass
class ChainReport:
    dims: list
    values: np.ndarray        # (num_pairs, num_links)
    limit_estimates: np.ndarray
    oscillations: np.ndarray
    cauchy_schwarz_ok: bool
    direction_bound_ok: Optional[bool] = None
    heuristic: bool = False


def chain_inner_product(ambient, chain, pairs, config=None, direction=None):
    """Gram values (P_E x | P_E y)_E along a strictly increasing chain.

    Each link's inner product comes from its MVEE; vectors are projected
    by the Euclidean-orthogonal projector.  The report records the final
    value as the limit estimate and the worst late-stage deviation from
    it as the oscillation; the Cauchy-Schwarz bound is checked whenever
    both vectors lie in the link, and with a direction supplied the
    per-link lower bound (x|x) >= (|f(x)| / eta_link)^2 is checked too.
    """
    config = config or SolverConfig()
    bases = [np.atleast_2d(np.asarray(b, dtype=float)) for b in chain]
    for a, b in zip(bases, bases[1:]):
        if b.shape[0] <= a.shape[0] or not np.array_equal(b[: a.shape[0]], a):
            raise InvalidInputError(
                "chain must be strictly increasing with prefix-nested bases")
    pairs = [(np.asarray(x, float), np.asarray(y, float)) for x, y in pairs]

    values = np.zeros((len(pairs), len(bases)))
    dims, cs_ok, dir_ok = [], True, (None if direction is None else True)
    heuristic = False
    if direction is not None and not isinstance(direction, Direction):
        direction = make_direction(ambient, direction)
    for li, rows in enumerate(bases):
        sub = restrict(ambient, rows)
        res = mvee_body(sub.norm, config)
        heuristic = heuristic or res.heuristic
        A = res.ellipsoid.A
        dims.append(sub.dim)
        for pi, (x, y) in enumerate(pairs):
            cx, cy = sub.coords(x), sub.coords(y)
            val = float(cx @ A @ cy)
            values[pi, li] = val
            in_link = (np.linalg.norm(sub.embed(cx) - x) <= 1e-9 * (1 + np.linalg.norm(x))
                       and np.linalg.norm(sub.embed(cy) - y) <= 1e-9 * (1 + np.linalg.norm(y)))
            if in_link:
                if val > ambient.eval(x) * ambient.eval(y) + 1e-8:
                    cs_ok = False
                if direction is not None and np.allclose(x, y):
                    f_sub = sub.basis.T @ direction.coefficients
                    eta = directional_extent(f_sub, res.ellipsoid)
                    if eta > 0:
                        fx = abs(direction(x))
                        if cx @ A @ cx < (fx / eta) ** 2 - 1e-8:
                            dir_ok = False

    limits = values[:, -1]
    q = max(1, len(bases) // 4)
    osc = np.max(np.abs(values[:, -q:] - limits[:, None]), axis=1)
    return ChainReport(dims=dims, values=values, limit_estimates=limits,
                       oscillations=osc, cauchy_schwarz_ok=cs_ok,
                       direction_bound_ok=dir_ok, heuristic=heuristic)


# ---------------------------------------------------------------------------
# direct-sum asymptotics


@dataclass
class SumAsymptoticsRow:
    """Per-n constants of the MVEE of F (+)_p l2(n)."""

    n: int
    c: float
    C_F: np.ndarray
    eta: float


def lp_sum_asymptotics(F, p, f_F, n_list, config=None):
    """Sweep the reduced solver over Euclidean block sizes.

    Records the Euclidean-block constant c, the F-block squared semi-axes
    (eigenvalues of A_F^-1) and the extent eta of (f_F, 0) for each n.
    For p <= 2 the F block does not depend on n; for p > 2 the constants
    blow up while c decreases to 1.
    """
    config = config or SolverConfig()
    if not isinstance(f_F, Direction):
        f_F = make_direction(F, f_F)
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InvalidInputError("n_list must be strictly ascending")
    rows = []
    for n in n_list:
        res = mvee_direct_sum_reduced(F, p, n, config)
        C_F = np.sort(np.linalg.eigvalsh(np.linalg.inv(res.A_F)))[::-1]
        eta = directional_extent(f_F.coefficients, Ellipsoid(res.A_F))
        rows.append(SumAsymptoticsRow(n=n, c=res.c, C_F=C_F, eta=eta))
    return rows


# ---------------------------------------------------------------------------
# the two-dimensional constant alpha_p(b)


@dataclass
class AlphaReport:
    p: float
    b: float
    alpha: float
    lower: float
    upper: float
    argmax_s: float


def _alpha_denominator(s, p, b):
    """(1 + s^p)^(2/p) - s^2/b, computed stably across the s range."""
    if np.isinf(p):
        lead = max(1.0, s * s)
    elif s <= 1.0:
        lead = np.exp((2.0 / p) * np.log1p(s ** p))
    else:
        lead = s * s * np.exp((2.0 / p) * np.log1p(s ** (-p)))
    return lead - s * s / b


def alpha_p(p, b, grid_points=4096, s_range=(1e-6, 1e6)):
    """Smallest a with (x^2/a + y^2/b)^(1/2) <= (x^p + y^p)^(1/p) for x, y > 0.

    By homogeneity alpha_p(b) = sup_s 1/((1+s^p)^(2/p) - s^2/b) wherever
    the denominator is positive.  The supremum is bracketed on a
    log-spaced grid and refined by bounded scalar minimization; p = inf
    replaces the p-mean by the max.  Returns the value together with the
    test-point bounds b/(2^(2/p) b - 1) <= alpha <= b/(b - 1).
    """
    from scipy.optimize import minimize_scalar

    p = float(p)
    b = float(b)
    if not p > 2.0:
        raise InvalidParameterError(f"alpha_p requires p > 2, got {p}")
    if b <= 1.0:
        raise InvalidParameterError(
            f"alpha_p diverges as b -> 1+, got b = {b}")

    grid = np.geomspace(s_range[0], s_range[1], grid_points)
    den = np.array([_alpha_denominator(s, p, b) for s in grid])
    valid = den > 0
    if not np.any(valid):
        raise InvalidParameterError("denominator not positive on the grid")
    idx = int(np.argmin(np.where(valid, den, np.inf)))
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, len(grid) - 1)]

    res = minimize_scalar(lambda s: _alpha_denominator(s, p, b),
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    s_star, d_star = float(res.x), float(res.fun)
    if den[idx] < d_star:
        s_star, d_star = float(grid[idx]), float(den[idx])
    alpha = 1.0 / d_star
    two_p = 1.0 if np.isinf(p) else 2.0 ** (2.0 / p)
    return AlphaReport(p=p, b=b, alpha=alpha,
                       lower=b / (two_p * b - 1.0),
                       upper=b / (b - 1.0),
                       argmax_s=s_star)


# ---------------------------------------------------------------------------
# perturbation and schedule experiments


@dataclass
class PerturbationReport:
    dim: int
    C: float
    C_estimated: bool
    ratio: float
    lower: float
    upper: float
    passed: bool
    heuristic: bool = False


def perturbation_volume_bounds(norm, T, C=None, config=None, samples=512):
    """Normalized MVEE volume ratio under a norm change x -> norm(Tx).

    The transformed norm is an expansion of the original by a pointwise
    factor in [1, C]; the normalized volume ratio (each MVEE volume
    divided by its own unit-ball volume) must then lie in [1, C^n].  The
    ratio reduces to |det T| sqrt(det A / det A_T), so no ball volumes
    are computed explicitly.
    """
    config = config or SolverConfig()
    T = np.asarray(T, dtype=float)
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-12 * max(sv[0], 1.0):
        raise InvalidInputError("perturbation transform is singular")
    d = norm.dim
    transformed = spaces.apply_linear(norm, T)

    estimated = C is None
    if estimated:
        X = spaces.sample_unit_sphere(norm, samples, config.seed + 17)
        ratios = transformed.eval_many(X)
        C = float(ratios.max() / ratios.min()) * (1.0 + 1e-6)

    res_orig = mvee_body(norm, config)
    res_trans = mvee_body(transformed, config)
    det_o = np.linalg.det(res_orig.ellipsoid.A)
    det_t = np.linalg.det(res_trans.ellipsoid.A)
    ratio = float(abs(np.linalg.det(T)) * np.sqrt(det_o / det_t))
    lower = 1.0 - 1e-6
    upper = C ** d * (1.0 + 1e-6)
    return PerturbationReport(dim=d, C=C, C_estimated=estimated, ratio=ratio,
                              lower=lower, upper=upper,
                              passed=bool(lower <= ratio <= upper),
                              heuristic=res_orig.heuristic or res_trans.heuristic)


@dataclass
class UltralimitReport:
    ks: list
    vol_devs: np.ndarray
    gram_devs: np.ndarray
    vol_monotone: bool
    gram_monotone: bool
    vol_order: float
    gram_order: float
    heuristic: bool = False


def ultralimit_convergence(ambient, target_basis, schedule, config=None,
                           pairs=None, monotone_from=8):
    """Convergence of per-step MVEE volumes and pulled-back Gram values.

    ``schedule`` is a list of (k, basis_k) with basis_k -> target_basis;
    the pullback identifies coordinates, so the Gram value at step k for
    coefficient vectors (a, b) is a' A_k b.  Deviations are measured
    against the solve on the target basis; the report checks that both
    deviation sequences decrease monotonically beyond ``monotone_from``
    and estimates the empirical convergence order in 1/k.
    """
    config = config or SolverConfig()
    target = np.atleast_2d(np.asarray(target_basis, dtype=float))
    kdim = target.shape[0]
    if pairs is None:
        pairs = [(np.eye(kdim)[i], np.eye(kdim)[j])
                 for i in range(kdim) for j in range(i, kdim)]
    pairs = [(np.asarray(a, float), np.asarray(b, float)) for a, b in pairs]

    sub_t = restrict(ambient, target)
    res_t = mvee_body(sub_t.norm, config)
    A_t = res_t.ellipsoid.A
    vol_t = volume_ratio(res_t.ellipsoid)
    gram_t = np.array([a @ A_t @ b for a, b in pairs])

    ks, vol_devs, gram_devs = [], [], []
    heuristic = res_t.heuristic
    for k, basis_k in schedule:
        rows = np.atleast_2d(np.asarray(basis_k, dtype=float))
        try:
            sub_k = restrict(ambient, rows)
        except DegenerateSubspaceError as exc:
            raise DegenerateSubspaceError(
                f"schedule basis at k = {k} is degenerate", index=k) from exc
        res_k = mvee_body(sub_k.norm, config)
        heuristic = heuristic or res_k.heuristic
        A_k = res_k.ellipsoid.A
        ks.append(k)
        vol_devs.append(abs(volume_ratio(res_k.ellipsoid) - vol_t))
        gram_devs.append(max(abs(a @ A_k @ b - g)
                             for (a, b), g in zip(pairs, gram_t)))
    vol_devs = np.array(vol_devs)
    gram_devs = np.array(gram_devs)

    def monotone(devs):
        tail = [dv for kk, dv in zip(ks, devs) if kk >= monotone_from]
        return all(b <= a * (1.0 + 1e-9) for a, b in zip(tail, tail[1:]))

    def order(devs):
        rates = []
        for (k1, d1), (k2, d2) in zip(zip(ks, devs), zip(ks[1:], devs[1:])):
            if d1 > 0 and d2 > 0 and k2 > k1:
                rates.append(np.log(d1 / d2) / np.log(k2 / k1))
        return float(np.median(rates)) if rates else np.nan

    return UltralimitReport(ks=ks, vol_devs=vol_devs, gram_devs=gram_devs,
                            vol_monotone=monotone(vol_devs),
                            gram_monotone=monotone(gram_devs),
                            vol_order=order(vol_devs),
                            gram_order=order(gram_devs),
                            heuristic=heuristic)
