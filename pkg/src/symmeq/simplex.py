"""Exact rational linear programming.

Two-phase primal simplex over Fraction arithmetic with Bland's anti-cycling
rule.  Free variables are split into positive and negative parts, so the
solver accepts arbitrary systems of <= inequalities and equalities.  On
infeasible systems it returns an exact Farkas certificate: a nonnegative
combination of the inequality rows plus a signed combination of the equality
rows whose coefficient vector vanishes while the combined right-hand side is
negative.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import ZERO, ONE, dot, frac, solve

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearSystem:
    """Constraints coeff . v <= rhs (inequalities) and coeff . v = rhs
    (equalities) over num_vars rational variables."""

    num_vars: int
    inequalities: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        def freeze(rows):
            out = []
            for coeffs, rhs in rows:
                coeffs = tuple(frac(c) for c in coeffs)
                if len(coeffs) != self.num_vars:
                    raise ValueError("coefficient vector has wrong length")
                out.append((coeffs, frac(rhs)))
            return tuple(out)

        object.__setattr__(self, "inequalities", freeze(self.inequalities))
        object.__setattr__(self, "equalities", freeze(self.equalities))

    def satisfied_by(self, v):
        """Exact feasibility check of a candidate point."""
        return all(dot(a, v) <= b for a, b in self.inequalities) and all(
            dot(a, v) == b for a, b in self.equalities
        )


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving infeasibility: ineq_mults >= 0 and
    sum_i ineq_mults[i]*ineq_i + sum_j eq_mults[j]*eq_j reads 0 <= negative."""

    ineq_mults: tuple
    eq_mults: tuple


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: Fraction = None
    point: tuple = None
    dual_certificate: FarkasCertificate = None


def verify_farkas(system, cert):
    """Re-verify an infeasibility certificate exactly."""
    n = system.num_vars
    if any(y < 0 for y in cert.ineq_mults):
        return False
    combo = [ZERO] * n
    rhs = ZERO
    for y, (a, b) in zip(cert.ineq_mults, system.inequalities):
        for j in range(n):
            combo[j] += y * a[j]
        rhs += y * b
    for y, (a, b) in zip(cert.eq_mults, system.equalities):
        for j in range(n):
            combo[j] += y * a[j]
        rhs += y * b
    return all(c == 0 for c in combo) and rhs < 0


class _Tableau:
    """Dense simplex tableau in canonical form with explicit basis."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows          # list of lists of Fraction
        self.rhs = rhs            # list of Fraction
        self.basis = basis        # basis column per row

    def pivot(self, r, c):
        inv = ONE / self.rows[r][c]
        self.rows[r] = [x * inv for x in self.rows[r]]
        self.rhs[r] *= inv
        for i in range(len(self.rows)):
            if i != r and self.rows[i][c] != 0:
                f = self.rows[i][c]
                row_r = self.rows[r]
                self.rows[i] = [
                    self.rows[i][j] - f * row_r[j] for j in range(len(row_r))
                ]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def run(self, cost, banned=()):
        """Bland-rule simplex minimizing cost over the current basis.
        Returns OPTIMAL or UNBOUNDED (with the tableau left at the last
        basis)."""
        banned = set(banned)
        ncols = len(self.rows[0]) if self.rows else 0
        while True:
            # reduced costs c_j - c_B . T[:, j], recomputed fresh each round
            cb = [cost[b] for b in self.basis]
            entering = None
            for j in range(ncols):
                if j in banned or j in self.basis:
                    continue
                red = cost[j] - sum(
                    (cb[r] * self.rows[r][j] for r in range(len(self.rows))),
                    ZERO,
                )
                if red < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            leaving = None
            best = None
            for r in range(len(self.rows)):
                coef = self.rows[r][entering]
                if coef > 0:
                    ratio = self.rhs[r] / coef
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[r] < self.basis[leaving])
                    ):
                        best = ratio
                        leaving = r
            if leaving is None:
                return UNBOUNDED
            self.pivot(leaving, entering)

    def objective_value(self, cost):
        return sum(
            (cost[b] * v for b, v in zip(self.basis, self.rhs)), ZERO
        )


def lp_solve(system, objective, sense="max"):
    """Exact optimum of a linear objective over the system's polyhedron.

    Returns an LPResult; infeasible systems carry a verified Farkas
    certificate and unbounded ones the UNBOUNDED status.
    """
    n = system.num_vars
    objective = [frac(c) for c in objective]
    if len(objective) != n:
        raise ValueError("objective length must equal num_vars")
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")

    p = len(system.inequalities)
    q = len(system.equalities)
    nrows = p + q
    if nrows == 0:
        # no constraints: optimum is 0 only for the zero objective
        if all(c == 0 for c in objective):
            return LPResult(OPTIMAL, ZERO, tuple([ZERO] * n))
        return LPResult(UNBOUNDED)

    # columns: v+ (n) | v- (n) | slacks (p) | artificials (appended)
    base_cols = 2 * n + p
    rows = []
    rhs = []
    signs = []          # row negation applied to reach rhs >= 0
    art_of_row = {}     # row -> artificial column
    basis = [None] * nrows

    def build_row(a, b, slack_idx):
        sigma = ONE if b >= 0 else -ONE
        row = [sigma * a[j] for j in range(n)]
        row += [-sigma * a[j] for j in range(n)]
        srow = [ZERO] * p
        if slack_idx is not None:
            srow[slack_idx] = sigma
        row += srow
        return row, sigma * b, sigma

    for i, (a, b) in enumerate(system.inequalities):
        row, bb, sigma = build_row(a, b, i)
        rows.append(row)
        rhs.append(bb)
        signs.append(sigma)
    for (a, b) in system.equalities:
        row, bb, sigma = build_row(a, b, None)
        rows.append(row)
        rhs.append(bb)
        signs.append(sigma)

    # initial basis: slack where usable, otherwise an artificial
    ncols = base_cols
    for r in range(nrows):
        if r < p and signs[r] == ONE:
            basis[r] = 2 * n + r
        else:
            art_of_row[r] = ncols
            ncols += 1
    for r in range(nrows):
        rows[r] = rows[r] + [ZERO] * (ncols - base_cols)
        if r in art_of_row:
            rows[r][art_of_row[r]] = ONE
            basis[r] = art_of_row[r]

    original = [list(row) for row in rows]
    tab = _Tableau(rows, rhs, basis)
    artificials = set(art_of_row.values())

    # phase 1: minimize the sum of artificials
    cost1 = [ZERO] * ncols
    for c in artificials:
        cost1[c] = ONE
    status = tab.run(cost1)
    assert status == OPTIMAL  # phase-1 objective is bounded below by 0
    if tab.objective_value(cost1) > 0:
        cert = _farkas_from_basis(system, original, tab.basis, cost1, signs, p)
        assert verify_farkas(system, cert)
        return LPResult(INFEASIBLE, dual_certificate=cert)

    # drive artificials out of the basis; drop rows that are redundant
    keep = []
    for r in range(len(tab.rows)):
        if tab.basis[r] in artificials:
            piv = next(
                (
                    j
                    for j in range(base_cols)
                    if tab.rows[r][j] != 0
                ),
                None,
            )
            if piv is None:
                continue  # redundant row
            tab.pivot(r, piv)
        keep.append(r)
    tab.rows = [tab.rows[r] for r in keep]
    tab.rhs = [tab.rhs[r] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]

    # phase 2
    internal = ONE if sense == "min" else -ONE
    cost2 = [ZERO] * ncols
    for j in range(n):
        cost2[j] = internal * objective[j]
        cost2[n + j] = -internal * objective[j]
    status = tab.run(cost2, banned=artificials)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    point = [ZERO] * n
    for b, v in zip(tab.basis, tab.rhs):
        if b < n:
            point[b] += v
        elif b < 2 * n:
            point[b - n] -= v
    assert system.satisfied_by(point)
    return LPResult(OPTIMAL, dot(objective, point), tuple(point))


def _farkas_from_basis(system, original, basis, cost, signs, p):
    """Recover the phase-1 dual vector y from the final basis and convert it
    to multipliers on the user's rows."""
    nrows = len(original)
    bmat_t = [[original[r][basis[i]] for r in range(nrows)] for i in range(nrows)]
    cb = [cost[b] for b in basis]
    sol = solve(bmat_t, cb)
    assert sol is not None
    y = sol[0]
    mults = [-y[r] * signs[r] for r in range(nrows)]
    ineq = tuple(x if x > 0 else ZERO for x in mults[:p])
    eq = tuple(mults[p:])
    return FarkasCertificate(ineq_mults=ineq, eq_mults=eq)
