"""Dense log-barrier solver for small DNN-cap-polytope programs.

Maximizes a linear functional of a symmetric m x m matrix variable over the
intersection of a polytope (inequalities/equalities on the upper-triangle
coordinates) with the positive semidefinite cone.  Path-following with
damped Newton steps on the -log det / -log slack barrier; a phase-1 pass
minimizes the worst constraint violation, and a tiny uniform relaxation
`delta` keeps the method well defined on feasible sets with empty interior
(which really occur: some games' DNN-cap-CE set is a single rank-1 matrix).
The reported value therefore carries tolerance `gap + O(delta)`, never an
exactness claim.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactlin import rank
from .nash import rational_exchangeable_point
from .polytope import SymCEIndex, ce_system
from .simplex import LinearSystem, lp_solve


@dataclass(frozen=True)
class SdpProblem:
    m: int
    objective: np.ndarray          # symmetric m x m coefficient matrix
    G: np.ndarray                  # inequality rows: G u <= h
    h: np.ndarray
    E: np.ndarray                  # equality rows: E u = f
    f: np.ndarray
    start: object = None           # optional exactly-feasible start vector
    linear_infeasible: bool = False  # exact verdict from preprocessing

    @property
    def dim(self):
        return self.m * (self.m + 1) // 2


@dataclass(frozen=True)
class SdpResult:
    status: str                    # optimal | infeasible | numerical_failure
    value: float
    matrix: np.ndarray
    gap: float
    delta: float
    iterations: int
    residuals: dict


def _split_implicit_equalities(system):
    """Exact preprocessing: inequalities whose slack is zero everywhere on
    the feasible set are really equalities, and leaving them as inequalities
    ruins the barrier's conditioning.  Returns (inequalities, equalities)
    with dependent equality rows dropped so KKT systems stay regular."""
    n = system.num_vars
    zero = Fraction(0)
    one = Fraction(1)
    # one max-margin LP up front: a strictly positive margin proves there
    # are no implicit equalities, skipping the per-row LPs entirely
    margin_sys = LinearSystem(
        num_vars=n + 1,
        inequalities=[
            (list(a) + [one], b) for a, b in system.inequalities
        ],
        equalities=[(list(a) + [zero], b) for a, b in system.equalities],
    )
    obj = [zero] * n + [one]
    margin = lp_solve(margin_sys, obj)
    if margin.status == "infeasible":
        return list(system.inequalities), list(system.equalities), True
    if margin.status == "unbounded" or (
        margin.status == "optimal" and margin.optimum > 0
    ):
        return list(system.inequalities), list(system.equalities), False
    center = margin.point[:n] if margin.status == "optimal" else None

    ineqs, eqs = [], list(system.equalities)
    for a, b in system.inequalities:
        if center is not None:
            slack = b - sum(c * x for c, x in zip(a, center))
            if slack > 0:
                ineqs.append((a, b))
                continue
        res = lp_solve(system, list(a), sense="min")
        if res.status == "optimal" and res.optimum == b:
            eqs.append((a, b))
        else:
            ineqs.append((a, b))
    kept, rows = [], []
    for a, b in eqs:
        cand = rows + [list(a) + [b]]
        if rank(cand) > len(rows):
            kept.append((a, b))
            rows = cand
    return ineqs, kept, False


def problem_from_system(m, system, objective_matrix, start=None):
    """Wrap a symmetric-coordinates LinearSystem plus a PSD constraint.

    `start`, when given, must be an exactly feasible symmetric matrix; it
    lets the barrier skip its feasibility phase on problems whose
    feasibility is known by construction."""
    index = SymCEIndex(m)
    n = index.size
    ineqs, eqs, linear_infeasible = _split_implicit_equalities(system)
    G = np.array(
        [[float(c) for c in a] for a, _ in ineqs]
    ).reshape(-1, n)
    h = np.array([float(b) for _, b in ineqs])
    E = np.array(
        [[float(c) for c in a] for a, _ in eqs]
    ).reshape(-1, n)
    f = np.array([float(b) for _, b in eqs])
    obj = np.array(
        [[float(objective_matrix[i][j]) for j in range(m)] for i in range(m)]
    )
    obj = 0.5 * (obj + obj.T)
    u0 = None
    if start is not None:
        u0 = np.array(
            [float(start[i][j]) for i, j in zip(*_triu_indices(m))]
        )
    return SdpProblem(
        m=m,
        objective=obj,
        G=G,
        h=h,
        E=E,
        f=f,
        start=u0,
        linear_infeasible=linear_infeasible,
    )


def _triu_indices(m):
    geom = _Geometry(m)
    return geom.I, geom.J


def dnn_ce_problem(game, objective_matrix=None):
    """The DNN-cap-symmetric-CE program for a game; default objective is the
    expected utility.

    A symmetric Nash outer product always lies in the feasible set, so one
    is computed exactly and passed down as the barrier's fallback start."""
    if objective_matrix is None:
        objective_matrix = game.A
    try:
        start = rational_exchangeable_point(game).P
    except Exception:
        start = None
    return problem_from_system(
        game.m,
        ce_system(game, symmetric_only=True),
        objective_matrix,
        start=start,
    )


class _Geometry:
    """Index bookkeeping shared by both phases."""

    def __init__(self, m):
        self.m = m
        index = SymCEIndex(m)
        pairs = index.pairs
        self.I = np.array([p[0] for p in pairs])
        self.J = np.array([p[1] for p in pairs])
        self.mu = np.where(self.I == self.J, 1.0, 2.0)

    def mat(self, u):
        W = np.zeros((self.m, self.m))
        W[self.I, self.J] = u
        W[self.J, self.I] = u
        return W

    def vec_obj(self, C):
        return self.mu * C[self.I, self.J]

    def logdet_terms(self, Minv):
        grad = -self.mu * Minv[self.I, self.J]
        T1 = Minv[np.ix_(self.I, self.I)] * Minv[np.ix_(self.J, self.J)]
        T2 = Minv[np.ix_(self.I, self.J)] * Minv[np.ix_(self.J, self.I)]
        hess = 0.5 * np.outer(self.mu, self.mu) * (T1 + T2)
        return grad, hess


def _chol_ok(W):
    try:
        np.linalg.cholesky(W)
        return True
    except np.linalg.LinAlgError:
        return False


def _newton_loop(
    geom, cost, G, h, E, f, u0, delta_psd, t, max_inner=60, tol_dec=1e-10
):
    """Center -t*cost.u + barrier(u) subject to E u = f, starting from the
    strictly feasible u0.  Returns the centered point."""
    d = len(u0)
    u = u0.copy()
    neq = E.shape[0]
    proj = _nullspace_projector(E, d)
    for _ in range(max_inner):
        W = geom.mat(u) + delta_psd * np.eye(geom.m)
        Minv = np.linalg.inv(W)
        g_psd, H_psd = geom.logdet_terms(Minv)
        slack = h - G @ u
        grad = -t * cost + g_psd + G.T @ (1.0 / slack)
        hess = H_psd + (G / slack[:, None] ** 2).T @ G
        hess = hess + 1e-12 * np.eye(d)
        kkt = np.zeros((d + neq, d + neq))
        kkt[:d, :d] = hess
        kkt[:d, d:] = E.T
        kkt[d:, :d] = E
        rhs = np.concatenate([-grad, f - E @ u])
        try:
            sol = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError:
            break
        # the KKT solve turns ill-conditioned near the boundary and can
        # leak a small component off the equality plane; project it away so
        # iterates stay exactly feasible
        du = proj(sol[:d])
        dec = float(du @ hess @ du)
        if not np.isfinite(dec):
            break
        # backtracking line search staying strictly inside the domain; a
        # failed search means float64 cannot improve this center any more
        alpha = 1.0
        base = -t * cost @ u - _barrier_value(geom, u, G, h, delta_psd)
        ok = False
        while alpha >= 1e-12:
            u2 = u + alpha * du
            s2 = h - G @ u2
            if np.all(s2 > 0) and _chol_ok(
                geom.mat(u2) + delta_psd * np.eye(geom.m)
            ):
                val2 = -t * cost @ u2 - _barrier_value(
                    geom, u2, G, h, delta_psd
                )
                if val2 <= base - 0.01 * alpha * dec:
                    ok = True
                    break
            alpha *= 0.5
        if not ok:
            break
        moved = alpha * float(np.linalg.norm(du))
        u = u2
        if dec / 2.0 < tol_dec or moved < 1e-12 * (1.0 + float(np.linalg.norm(u))):
            break
    return u


def _nullspace_projector(E, d):
    """Orthogonal projection onto the null space of E (identity when E is
    empty); keeps Newton steps on the equality plane."""
    if not E.size:
        return lambda v: v
    P = np.eye(d) - E.T @ np.linalg.pinv(E @ E.T) @ E
    return lambda v: P @ v


def _barrier_value(geom, u, G, h, delta_psd):
    W = geom.mat(u) + delta_psd * np.eye(geom.m)
    if not _chol_ok(W):
        return -np.inf
    slack = h - G @ u
    if np.any(slack <= 0):
        return -np.inf
    _, logdet = np.linalg.slogdet(W)
    return logdet + float(np.sum(np.log(slack)))


def sdp_solve(problem, tol=1e-8, delta=1e-8):
    """Solve the relaxed program max c.u s.t. G u <= h + delta,
    W(u) + delta I >= 0 (PSD), E u = f.

    Returns an SdpResult whose gap field is the final barrier duality-gap
    estimate; `value` approximates the true optimum within gap + O(delta).
    """
    geom = _Geometry(problem.m)
    d = problem.dim
    G, h = problem.G, problem.h
    E, f = problem.E, problem.f
    cost = geom.vec_obj(problem.objective)

    if problem.linear_infeasible:
        # the exact preprocessing LP already proved the polytope empty
        return SdpResult(
            status="infeasible",
            value=float("nan"),
            matrix=np.zeros((problem.m, problem.m)),
            gap=0.0,
            delta=delta,
            iterations=0,
            residuals={"phase1_s": float("inf")},
        )

    # candidate start: uniform matrix blended toward the scaled identity,
    # projected onto the equality plane; strictly feasible for many games
    eps = 1e-2
    m = problem.m
    W0 = (1.0 - eps) * np.full((m, m), 1.0 / (m * m)) + eps * np.eye(m) / m
    u = W0[geom.I, geom.J]
    if E.size:
        r0 = f - E @ u
        u = u + E.T @ np.linalg.lstsq(E @ E.T, r0, rcond=None)[0]
    W0 = geom.mat(u)
    lam_min = float(np.linalg.eigvalsh(W0).min())
    viol = float(np.max(G @ u - h)) if G.size else 0.0
    margin = 1e-8
    interior = viol < -margin and lam_min > margin
    s = max(viol, -lam_min, 0.0) + 1.0

    def validated_hint():
        # an exactly feasible hint is delta-interior for the relaxed
        # program; it rescues instances where phase 1 stalls on a
        # rank-deficient boundary (float noise makes its Hessian indefinite)
        if problem.start is None:
            return None
        u1 = np.asarray(problem.start, dtype=float)
        eqres = float(np.max(np.abs(E @ u1 - f))) if E.size else 0.0
        slmin = float(np.min(h - G @ u1)) if G.size else 0.0
        lam1 = float(np.linalg.eigvalsh(geom.mat(u1)).min())
        if eqres <= 1e-9 and slmin >= -1e-12 and lam1 >= -1e-12:
            return u1
        return None

    # extended geometry: variable (u, s); s enters every slack and the PSD
    # block diagonally, which is exactly a bordered version of the same
    # barrier.  Reuse the machinery by augmenting G and the matrix map.
    geom1 = _Geometry(problem.m)
    diag_idx = np.where(geom1.I == geom1.J)[0]

    # phase 1 works against half-relaxed constraints so that feasible sets
    # with empty interior (single points, flat faces) still have margin
    # delta/2 and center to a strictly negative s
    half = 0.5 * delta

    def phase1_center(u, s, t):
        z = np.concatenate([u, [s]])
        Gx = np.hstack([G, -np.ones((G.shape[0], 1))])
        Ex = np.hstack([E, np.zeros((E.shape[0], 1))]) if E.size else E
        costx = np.zeros(d + 1)
        costx[-1] = -1.0  # maximize -s == minimize s
        proj = _nullspace_projector(Ex if E.size else E, d + 1)
        for _ in range(60):
            W = geom1.mat(z[:d]) + (z[d] + half) * np.eye(problem.m)
            try:
                Minv = np.linalg.inv(W)
            except np.linalg.LinAlgError:
                break
            g_psd, H_psd = geom1.logdet_terms(Minv)
            gs = -float(np.trace(Minv))
            Hss = float(np.sum(Minv * Minv))
            Hus = np.zeros(d)
            # cross terms d2/du dk ds of -logdet(W(u)+sI)
            T = Minv @ Minv
            Hus = 0.5 * geom1.mu * (T[geom1.I, geom1.J] + T[geom1.J, geom1.I])
            slack = h + half - Gx[:, :d] @ z[:d] + z[d]
            grad_u = -t * costx[:d] + g_psd + Gx[:, :d].T @ (1.0 / slack)
            grad_s = -t * costx[d] + gs - float(np.sum(1.0 / slack))
            grad = np.concatenate([grad_u, [grad_s]])
            hess = np.zeros((d + 1, d + 1))
            hess[:d, :d] = H_psd + (
                Gx[:, :d] / slack[:, None] ** 2
            ).T @ Gx[:, :d]
            hess[:d, d] = Hus - Gx[:, :d].T @ (1.0 / slack**2)
            hess[d, :d] = hess[:d, d]
            hess[d, d] = Hss + float(np.sum(1.0 / slack**2))
            hess += 1e-12 * np.eye(d + 1)
            neq = E.shape[0]
            kkt = np.zeros((d + 1 + neq, d + 1 + neq))
            kkt[: d + 1, : d + 1] = hess
            if neq:
                kkt[: d + 1, d + 1 :] = Ex.T
                kkt[d + 1 :, : d + 1] = Ex
                rhs = np.concatenate([-grad, f - Ex @ z])
            else:
                rhs = -grad
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                break
            dz = proj(sol[: d + 1])
            dec = float(dz @ hess @ dz)
            if not np.isfinite(dec):
                break

            def merit(zz):
                W2 = geom1.mat(zz[:d]) + (zz[d] + half) * np.eye(problem.m)
                sl2 = h + half - G @ zz[:d] + zz[d]
                # a positive determinant does not imply PSD (two negative
                # eigenvalues also give one), so test with a Cholesky
                if np.any(sl2 <= 0) or not _chol_ok(W2):
                    return np.inf
                _, logdet = np.linalg.slogdet(W2)
                return t * zz[d] - logdet - float(np.sum(np.log(sl2)))

            base = merit(z)
            alpha = 1.0
            moved = False
            while alpha >= 1e-12:
                z2 = z + alpha * dz
                if merit(z2) <= base - 0.01 * alpha * dec:
                    moved = True
                    break
                alpha *= 0.5
            if not moved:
                break
            step = alpha * float(np.linalg.norm(dz))
            z = z2
            if dec / 2.0 < 1e-12 or step < 1e-12 * (1.0 + float(np.linalg.norm(z))):
                break
        return z[:d], z[d]

    nu1 = problem.m + len(h)
    t1 = 1.0
    iterations = 0
    if not interior:
        # drive s well below zero, not just below the tolerance: phase 2
        # needs a genuinely interior start or its first centerings stall on
        # the boundary
        for _ in range(40):
            u, s = phase1_center(u, s, t1)
            iterations += 1
            if s < -1e-3:
                break
            if nu1 / t1 < 0.25 * delta:
                break
            t1 *= 10.0
    else:
        s = 0.0
    if s >= 0.5 * delta:
        hint = validated_hint()
        if hint is None:
            # certified-enough infeasibility of the relaxed program: the
            # centered minimum of s stayed above delta/2 with a tiny gap
            return SdpResult(
                status="infeasible",
                value=float("nan"),
                matrix=geom.mat(u),
                gap=nu1 / t1,
                delta=delta,
                iterations=iterations,
                residuals={"phase1_s": s},
            )
        u = hint

    # phase 2
    nu = problem.m + len(h)
    t = 1.0
    for _ in range(40):
        u = _newton_loop(geom, cost, G, h + delta, E, f, u, delta, t)
        iterations += 1
        if nu / t < tol:
            break
        t *= 10.0

    W = geom.mat(u)
    eigs = np.linalg.eigvalsh(W)
    residuals = {
        "max_inequality_violation": float(np.max(G @ u - h)) if G.size else 0.0,
        "max_equality_violation": float(np.max(np.abs(E @ u - f)))
        if E.size
        else 0.0,
        "min_eigenvalue": float(eigs.min()),
    }
    value = float(cost @ u)
    status = "optimal" if np.isfinite(value) else "numerical_failure"
    return SdpResult(
        status=status,
        value=value,
        matrix=W,
        gap=nu / t,
        delta=delta,
        iterations=iterations,
        residuals=residuals,
    )
