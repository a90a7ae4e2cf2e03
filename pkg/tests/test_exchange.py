"""Conditional-i.i.d. certification and completely positive factorization."""

import random
from fractions import Fraction

import numpy as np
import pytest

from symmeq import (
    JointDistribution,
    MixedStrategy,
    certify_conditionally_iid,
    cp_factorize,
    expected_utility,
    is_psd_exact,
    outer,
    scheme_from_factorization,
    uniform_distribution,
    verify_scheme_equilibrium,
)
from symmeq.exchange import _quadratic_form

F = Fraction


def q(W, z):
    m = len(W)
    return sum(z[i] * W[i][j] * z[j] for i in range(m) for j in range(m))


def test_psd_knowns():
    ok, wit = is_psd_exact([[F(2), F(1)], [F(1), F(2)]])
    assert ok and wit is None
    ok, wit = is_psd_exact([[F(0), F(1, 2)], [F(1, 2), F(0)]])
    assert not ok
    assert q([[F(0), F(1, 2)], [F(1, 2), F(0)]], wit) < 0


def test_psd_rejects_asymmetric():
    with pytest.raises(ValueError):
        is_psd_exact([[F(1), F(0)], [F(1), F(1)]])


def test_psd_random_with_verified_witnesses(rng):
    not_psd = 0
    for _ in range(1000):
        m = rng.randint(2, 4)
        W = [[F(0)] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                v = F(rng.randint(-4, 4), rng.randint(1, 3))
                W[i][j] = v
                W[j][i] = v
        ok, wit = is_psd_exact(W)
        if ok:
            # spot check with numerics: smallest eigenvalue nonnegative
            lam = np.linalg.eigvalsh(
                np.array([[float(x) for x in row] for row in W])
            ).min()
            assert lam > -1e-9
        else:
            not_psd += 1
            assert q(W, wit) < 0
    assert not_psd > 300


def test_psd_gram_matrices_always_pass(rng):
    for _ in range(100):
        m = rng.randint(2, 4)
        k = rng.randint(1, m)
        B = [
            [F(rng.randint(0, 3)) for _ in range(k)] for _ in range(m)
        ]
        W = [
            [
                sum(B[i][c] * B[j][c] for c in range(k))
                for j in range(m)
            ]
            for i in range(m)
        ]
        ok, _ = is_psd_exact(W)
        assert ok


def test_zero_pattern_certificate(hidden_state_game):
    W = JointDistribution(
        m=3,
        P=[
            [0, F(1, 4), 0],
            [F(1, 4), 0, F(1, 4)],
            [0, F(1, 4), 0],
        ],
    )
    v = certify_conditionally_iid(W)
    assert v.status == "not_conditionally_iid"
    assert v.certificate["kind"] == "zero_pattern"
    t, tt = v.certificate["diagonal"], v.certificate["off_diagonal"]
    assert W.P[t][t] == 0 and W.P[t][tt] > 0


def test_asymmetry_certificate():
    W = JointDistribution(m=2, P=[[0, F(2, 3)], [F(1, 3), 0]])
    v = certify_conditionally_iid(W)
    assert v.status == "not_conditionally_iid"
    assert v.certificate["kind"] == "asymmetry"


def test_negative_direction_certificate():
    # symmetric, positive diagonal, but indefinite
    W = JointDistribution(
        m=2, P=[[F(1, 10), F(2, 5)], [F(2, 5), F(1, 10)]]
    )
    v = certify_conditionally_iid(W)
    assert v.status == "not_conditionally_iid"
    assert v.certificate["kind"] == "negative_direction"
    assert _quadratic_form(W.P, v.certificate["z"]) < 0
    assert v.certificate["value"] < 0


def test_random_mixtures_are_conditionally_iid(rng):
    # convex combinations of outer products must always certify
    for _ in range(1000):
        m = rng.randint(2, 4)
        k = rng.randint(1, 3)
        weights = [F(rng.randint(1, 5)) for _ in range(k)]
        total = sum(weights)
        weights = [w / total for w in weights]
        P = [[F(0)] * m for _ in range(m)]
        for w in weights:
            raw = [F(rng.randint(0, 4)) for _ in range(m)]
            if sum(raw) == 0:
                raw[0] = F(1)
            s = sum(raw)
            x = [v / s for v in raw]
            for i in range(m):
                for j in range(m):
                    P[i][j] += w * x[i] * x[j]
        W = JointDistribution(m=m, P=P)
        v = certify_conditionally_iid(W, factorize=False)
        assert v.status == "conditionally_iid", (m, P)


def test_factorization_of_known_exchangeable_point():
    # 1/2 [0,1/2,1/2] + 1/2 [1/2,1/2,0] products, stated exactly
    W = JointDistribution(
        m=3,
        P=[
            [F(1, 8), F(1, 8), 0],
            [F(1, 8), F(1, 4), F(1, 8)],
            [0, F(1, 8), F(1, 8)],
        ],
    )
    fact = cp_factorize(W)
    assert fact is not None
    assert fact.exact and fact.residual == 0
    atoms = sorted((lam, x.x) for lam, x in fact.atoms)
    assert atoms == [
        (F(1, 2), (F(0), F(1, 2), F(1, 2))),
        (F(1, 2), (F(1, 2), F(1, 2), F(0))),
    ]
    assert tuple(map(tuple, fact.reconstruct())) == W.P


def test_factorization_of_two_state_scheme():
    # 5/7 [1/8,7/8,0] + 2/7 [1/8,0,7/8] products
    W = JointDistribution(
        m=3,
        P=[
            [F(1, 64), F(5, 64), F(2, 64)],
            [F(5, 64), F(35, 64), 0],
            [F(2, 64), 0, F(14, 64)],
        ],
    )
    fact = cp_factorize(W)
    assert fact is not None and fact.exact
    atoms = sorted((lam, x.x) for lam, x in fact.atoms)
    assert atoms == [
        (F(2, 7), (F(1, 8), F(0), F(7, 8))),
        (F(5, 7), (F(1, 8), F(7, 8), F(0))),
    ]


def test_factorize_rank_one():
    x = MixedStrategy(m=2, x=(F(1, 3), F(2, 3)))
    fact = cp_factorize(outer(x))
    assert fact is not None and fact.exact
    assert len(fact.atoms) == 1
    assert fact.atoms[0][1].x == x.x


def test_factorize_never_claims_the_impossible():
    # not PSD, so no CP factorization can be found (and none is claimed)
    W = JointDistribution(m=2, P=[[0, F(1, 2)], [F(1, 2), 0]])
    assert cp_factorize(W, iters=500, starts=4) is None


def test_scheme_round_trip_and_equilibrium(utility_gap_game):
    W = JointDistribution(
        m=3,
        P=[
            [F(1, 64), F(5, 64), F(2, 64)],
            [F(5, 64), F(35, 64), 0],
            [F(2, 64), 0, F(14, 64)],
        ],
    )
    fact = cp_factorize(W)
    scheme = scheme_from_factorization(fact)
    induced = scheme.induced_distribution()
    assert induced == W
    report = verify_scheme_equilibrium(utility_gap_game, scheme)
    assert report["is_equilibrium"]
    assert report["max_exact_gain"] <= 0
    assert expected_utility(utility_gap_game, induced) == F(17, 16)


def test_scheme_sampler_matches_exact_distribution(utility_gap_game):
    W = JointDistribution(
        m=3,
        P=[
            [F(1, 64), F(5, 64), F(2, 64)],
            [F(5, 64), F(35, 64), 0],
            [F(2, 64), 0, F(14, 64)],
        ],
    )
    scheme = scheme_from_factorization(cp_factorize(W))
    report = verify_scheme_equilibrium(
        utility_gap_game, scheme, samples=20000, seed=3
    )
    emp = report["empirical_matrix"]
    for i in range(3):
        for j in range(3):
            assert abs(emp[i][j] - float(W.P[i][j])) < 0.02
    # sampled deviation gains should agree with exact ones within 4 sigma
    for f, (mean, stderr) in report["sampled_gains"].items():
        assert abs(mean - float(report["exact_gains"][f])) <= 4 * stderr + 1e-9


def test_uniform_is_conditionally_iid():
    v = certify_conditionally_iid(uniform_distribution(3))
    assert v.conditionally_iid
