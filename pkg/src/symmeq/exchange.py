"""Conditional-i.i.d. (complete positivity) certification.

A symmetric joint distribution is conditionally i.i.d. exactly when it is a
convex combination of outer products x x^T of mixed strategies.  Necessary
conditions are checked exactly (asymmetry, the zero-pattern rule, positive
semidefiniteness); double nonnegativity is also sufficient for m <= 4, while
for m >= 5 a verified factorization is the only accepted positive evidence.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactlin import ZERO, ONE, det, frac
from .games import JointDistribution, MixedStrategy, expected_utility

RNG_ALGORITHM = "numpy.random.PCG64"

CONDITIONALLY_IID = "conditionally_iid"
NOT_CONDITIONALLY_IID = "not_conditionally_iid"
INCONCLUSIVE = "inconclusive"


def is_psd_exact(W):
    """Exact PSD decision for a symmetric rational matrix via the
    all-principal-minors criterion; when not PSD, also returns an exact
    rational witness z with z^T W z < 0.

    Returns (bool, witness-or-None).
    """
    m = len(W)
    if m > 8:
        raise ValueError("PSD decision guarded at m <= 8")
    for i in range(m):
        for j in range(i + 1, m):
            if W[i][j] != W[j][i]:
                raise ValueError("matrix is not symmetric")
    psd = True
    for r in range(1, m + 1):
        for idx in itertools.combinations(range(m), r):
            sub = [[W[i][j] for j in idx] for i in idx]
            if det(sub) < 0:
                psd = False
                break
        if not psd:
            break
    if psd:
        return True, None
    z = _negative_direction(W)
    assert _quadratic_form(W, z) < 0
    return False, tuple(z)


def _quadratic_form(W, z):
    m = len(W)
    return sum(
        (z[i] * W[i][j] * z[j] for i in range(m) for j in range(m)), ZERO
    )


def _negative_direction(W):
    """Witness z with z^T W z < 0 from a rational LDL^T attempt.

    Recursive symmetric elimination: a negative pivot, or a zero pivot with
    a nonzero residual row, yields a witness in the reduced space which is
    lifted back through the elimination steps.
    """
    m = len(W)
    S = [[frac(W[i][j]) for j in range(m)] for i in range(m)]

    def recurse(S):
        n = len(S)
        assert n > 0
        d = S[0][0]
        if d < 0:
            return [ONE] + [ZERO] * (n - 1)
        if d == 0:
            j = next((k for k in range(1, n) if S[0][k] != 0), None)
            if j is not None:
                # 2x2 block [[0, a], [a, S_jj]]: choose alpha so the value
                # is exactly -1
                a = S[0][j]
                alpha = -(S[j][j] + 1) / (2 * a)
                z = [ZERO] * n
                z[0] = alpha
                z[j] = ONE
                return z
            sub = [row[1:] for row in S[1:]]
            z = recurse(sub)
            return [ZERO] + z
        # positive pivot: eliminate and lift the reduced witness
        col = [S[i][0] for i in range(1, len(S))]
        sub = [
            [S[i][j] - S[i][0] * S[0][j] / d for j in range(1, len(S))]
            for i in range(1, len(S))
        ]
        z = recurse(sub)
        head = -sum((col[i] * z[i] for i in range(len(z))), ZERO) / d
        return [head] + z

    return recurse(S)


@dataclass(frozen=True)
class CPFactorization:
    """Weights and mixed strategies witnessing W = sum_i lam_i x_i x_i^T.

    residual is the max-abs reconstruction error; exact rational
    factorizations have residual 0.
    """

    atoms: tuple  # of (weight, MixedStrategy)
    residual: float

    @property
    def exact(self):
        return self.residual == 0

    def reconstruct(self):
        """The distribution sum_i lam_i x_i x_i^T (exact when possible)."""
        m = self.atoms[0][1].m
        P = [[ZERO] * m for _ in range(m)]
        for lam, x in self.atoms:
            for i in range(m):
                for j in range(m):
                    P[i][j] += lam * x.x[i] * x.x[j]
        return P


@dataclass(frozen=True)
class ExchangeabilityVerdict:
    status: str
    certificate: dict

    @property
    def conditionally_iid(self):
        return self.status == CONDITIONALLY_IID


def _zero_pattern_witness(P, m):
    """(t, t_tilde) with P[t][t] = 0 but P[t][t_tilde] > 0, if any.

    A conditionally i.i.d. pair that never repeats t cannot play t at all.
    """
    for t in range(m):
        if P[t][t] == 0:
            for tt in range(m):
                if P[t][tt] > 0:
                    return (t, tt)
    return None


def certify_conditionally_iid(W, tol=1e-9, factorize=True, seed=0):
    """Decide whether a joint distribution is conditionally i.i.d.

    Certificate priority: asymmetry, then the zero-pattern rule, then an
    exact PSD refutation.  Doubly nonnegative matrices are conditionally
    i.i.d. for m <= 4 (a factorization is attached when the numeric search
    finds one); for m >= 5 only a verified factorization is conclusive.
    """
    m = W.m
    P = W.P
    witness = W.asymmetry_witness()
    if witness is not None:
        return ExchangeabilityVerdict(
            NOT_CONDITIONALLY_IID, {"kind": "asymmetry", "entry": witness}
        )
    zp = _zero_pattern_witness(P, m)
    if zp is not None:
        return ExchangeabilityVerdict(
            NOT_CONDITIONALLY_IID,
            {"kind": "zero_pattern", "diagonal": zp[0], "off_diagonal": zp[1]},
        )
    psd, z = is_psd_exact([list(row) for row in P])
    if not psd:
        return ExchangeabilityVerdict(
            NOT_CONDITIONALLY_IID,
            {
                "kind": "negative_direction",
                "z": z,
                "value": _quadratic_form(P, z),
            },
        )
    factorization = (
        cp_factorize(W, tol=tol, seed=seed) if factorize else None
    )
    if m <= 4:
        cert = {"kind": "doubly_nonnegative"}
        if factorization is not None:
            cert = {"kind": "factorization", "factorization": factorization}
        return ExchangeabilityVerdict(CONDITIONALLY_IID, cert)
    if factorization is not None:
        return ExchangeabilityVerdict(
            CONDITIONALLY_IID,
            {"kind": "factorization", "factorization": factorization},
        )
    return ExchangeabilityVerdict(
        INCONCLUSIVE,
        {"kind": "dnn_only", "note": "doubly nonnegative but unfactored"},
    )


def cp_factorize(W, tol=1e-9, starts=20, iters=5000, seed=0, k=None):
    """Search for a completely positive factorization W = B B^T, B >= 0.

    Multi-start projected-gradient descent on ||W - B B^T||_F^2 with a
    fixed seed schedule, followed by an attempt to rationalize the atoms to
    small denominators (verified exactly; on success the residual is 0).
    Returns a CPFactorization or None (never a proof of non-membership).
    """
    m = W.m
    Wf = np.array([[float(x) for x in row] for row in W.P])
    kmax = m * (m + 1) // 2 if k is None else k
    num_rank = int(np.linalg.matrix_rank(Wf, tol=1e-12))
    best = None
    for ncols in range(max(1, num_rank), kmax + 1):
        for s in range(starts):
            rng = np.random.default_rng(seed * 7919 + 31 * ncols + s)
            B = _nmf_descend(Wf, ncols, rng, iters)
            res = float(np.max(np.abs(Wf - B @ B.T)))
            if best is None or res < best[1]:
                best = (B, res)
            if res <= tol * 1e-3:
                break
        if best is not None and best[1] <= tol * 1e-3:
            break
    if best is None or best[1] > tol:
        return None
    B = _merge_columns(best[0])
    fact = _rationalize(W, B)
    if fact is not None:
        return fact
    atoms = []
    for c in range(B.shape[1]):
        col = np.clip(B[:, c], 0.0, None)
        total = col.sum()
        if total < 1e-12:
            continue
        atoms.append((total * total, col / total))
    weight = sum(w for w, _ in atoms)
    atoms = [
        (w / weight, MixedStrategy(m=m, x=_simplex_round(x)))
        for w, x in atoms
    ]
    res = _float_residual(W, atoms)
    if res > tol:
        return None
    return CPFactorization(atoms=tuple(atoms), residual=res)


def _simplex_round(x):
    v = [Fraction(float(t)).limit_denominator(10**12) for t in x]
    total = sum(v, ZERO)
    return tuple(t / total for t in v)


def _float_residual(W, atoms):
    m = W.m
    rec = np.zeros((m, m))
    for lam, x in atoms:
        xv = np.array([float(t) for t in x.x])
        rec += float(lam) * np.outer(xv, xv)
    target = np.array([[float(t) for t in row] for row in W.P])
    return float(np.max(np.abs(target - rec)))


def _nmf_descend(Wf, k, rng, iters):
    m = Wf.shape[0]
    B = rng.random((m, k)) * np.sqrt(max(Wf.max(), 1e-12) / k)
    step = 0.5 / max(np.linalg.norm(Wf) * k, 1e-9)
    prev = None
    for it in range(iters):
        R = B @ B.T - Wf
        G = 4.0 * R @ B
        B2 = np.clip(B - step * G, 0.0, None)
        f2 = float(np.linalg.norm(B2 @ B2.T - Wf) ** 2)
        if prev is not None and f2 > prev:
            step *= 0.5
            if step < 1e-16:
                break
            continue
        if prev is not None and prev - f2 < 1e-22 and it > 50:
            B = B2
            break
        B = B2
        prev = f2
        step *= 1.05
    return B


def _merge_columns(B, cos_tol=1e-8, drop_tol=1e-10):
    """Combine near-parallel columns (b b^T masses add) and drop negligible
    ones, to help rationalization find the structured factorization."""
    cols = []
    for c in range(B.shape[1]):
        b = np.clip(B[:, c], 0.0, None)
        nrm = np.linalg.norm(b)
        if nrm <= drop_tol:
            continue
        merged = False
        for i, other in enumerate(cols):
            onrm = np.linalg.norm(other)
            if onrm > 0 and np.dot(b, other) / (nrm * onrm) > 1 - cos_tol:
                cols[i] = np.sqrt(onrm**2 + nrm**2) * (
                    (other / onrm + b / nrm) / np.linalg.norm(
                        other / onrm + b / nrm
                    )
                )
                merged = True
                break
        if not merged:
            cols.append(b)
    return np.stack(cols, axis=1)


def _rationalize(W, B, max_dens=(8, 16, 64, 512, 4096, 10**6)):
    """Try to turn a numeric factorization into an exact rational one."""
    m = W.m
    raw = []
    for c in range(B.shape[1]):
        col = np.clip(B[:, c], 0.0, None)
        total = col.sum()
        if total < 1e-10:
            continue
        raw.append((total * total, col / total))
    wsum = sum(w for w, _ in raw)
    raw = [(w / wsum, x) for w, x in raw]
    for den in max_dens:
        try:
            atoms = []
            for w, x in raw:
                lam = Fraction(float(w)).limit_denominator(den)
                xs = [Fraction(float(t)).limit_denominator(den) for t in x]
                total = sum(xs, ZERO)
                if lam <= 0 or total == 0:
                    raise ValueError
                atoms.append((lam, tuple(t / total for t in xs)))
            lam_total = sum((lam for lam, _ in atoms), ZERO)
            atoms = [(lam / lam_total, x) for lam, x in atoms]
            rec = [[ZERO] * m for _ in range(m)]
            for lam, x in atoms:
                for i in range(m):
                    for j in range(m):
                        rec[i][j] += lam * x[i] * x[j]
            if all(
                rec[i][j] == W.P[i][j] for i in range(m) for j in range(m)
            ):
                return CPFactorization(
                    atoms=tuple(
                        (lam, MixedStrategy(m=m, x=x)) for lam, x in atoms
                    ),
                    residual=0.0,
                )
        except (ValueError, ZeroDivisionError):
            continue
    return None


@dataclass(frozen=True)
class CorrelationScheme:
    """A fully symmetric correlation scheme: a hidden state drawn from
    state_probs, then each player's recommendation drawn i.i.d. from the
    state's signal distribution; action maps are the identity."""

    m: int
    state_probs: tuple
    signals: tuple  # MixedStrategy per state

    def induced_distribution(self):
        """Exact joint distribution of the two recommendations."""
        P = [[ZERO] * self.m for _ in range(self.m)]
        for lam, x in zip(self.state_probs, self.signals):
            for i in range(self.m):
                for j in range(self.m):
                    P[i][j] += frac(lam) * x.x[i] * x.x[j]
        return JointDistribution(m=self.m, P=P)

    def sample(self, rng):
        probs = [float(p) for p in self.state_probs]
        state = rng.choice(len(probs), p=np.array(probs) / sum(probs))
        sig = [float(v) for v in self.signals[state].x]
        sig = np.array(sig) / sum(sig)
        return tuple(rng.choice(self.m, p=sig) for _ in range(2))


def scheme_from_factorization(fact):
    """Realize a factorization as a sampleable fully symmetric correlation
    scheme: hidden state i with probability lam_i, recommendations i.i.d.
    from x_i."""
    m = fact.atoms[0][1].m
    return CorrelationScheme(
        m=m,
        state_probs=tuple(lam for lam, _ in fact.atoms),
        signals=tuple(x for _, x in fact.atoms),
    )


def verify_scheme_equilibrium(game, scheme, samples=0, seed=0):
    """Check that obeying the scheme's recommendations is an equilibrium.

    Computes the exact expected gain of every deviation map f: C -> C from
    the induced joint distribution (the authority), and optionally
    Monte-Carlo estimates with standard errors to validate the sampler.
    """
    m = game.m
    induced = scheme.induced_distribution()
    P = induced.P
    A = game.A
    maps = list(itertools.product(range(m), repeat=m))
    exact_gains = {}
    for f in maps:
        gain = sum(
            (
                P[i][j] * (A[f[i]][j] - A[i][j])
                for i in range(m)
                for j in range(m)
            ),
            ZERO,
        )
        exact_gains[f] = gain
    report = {
        "exact_gains": exact_gains,
        "max_exact_gain": max(exact_gains.values()),
        "is_equilibrium": all(g <= 0 for g in exact_gains.values()),
        "rng_algorithm": RNG_ALGORITHM,
        "seed": seed,
        "samples": samples,
    }
    if samples > 0:
        rng = np.random.default_rng(seed)
        counts = np.zeros((m, m))
        for _ in range(samples):
            i, j = scheme.sample(rng)
            counts[i][j] += 1
        freq = counts / samples
        sampled = {}
        for f in maps:
            diffs = np.array(
                [
                    [float(A[f[i]][j] - A[i][j]) for j in range(m)]
                    for i in range(m)
                ]
            )
            mean = float((freq * diffs).sum())
            second = float((freq * diffs**2).sum())
            var = max(second - mean**2, 0.0)
            stderr = (var / samples) ** 0.5
            sampled[f] = (mean, stderr)
        report["sampled_gains"] = sampled
        report["empirical_matrix"] = freq
    return report
