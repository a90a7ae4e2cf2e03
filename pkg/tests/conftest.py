import random
from fractions import Fraction

import pytest

from symmeq import JointDistribution, SymmetricGame


def random_rational_game(rng, m, lo=-5, hi=5, den=1):
    A = [
        [Fraction(rng.randint(lo * den, hi * den), den) for _ in range(m)]
        for _ in range(m)
    ]
    return SymmetricGame(m=m, A=A)


def random_symmetric_distribution(rng, m, den=20):
    # random nonnegative symmetric matrix, exactly normalized
    P = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            v = Fraction(rng.randint(0, den), 1)
            P[i][j] = v
            P[j][i] = v
    total = sum(x for row in P for x in row)
    if total == 0:
        P[0][0] = Fraction(1)
        total = Fraction(1)
    P = [[x / total for x in row] for row in P]
    return JointDistribution(m=m, P=P)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def chicken():
    return SymmetricGame(m=2, A=((4, 1), (5, 0)))


@pytest.fixture
def coordination():
    return SymmetricGame(m=2, A=((1, 0), (0, 1)))


@pytest.fixture
def anticoordination():
    return SymmetricGame(m=2, A=((0, 1), (1, 0)))


@pytest.fixture
def hidden_state_game():
    # 3x3 game whose exchangeable set strictly separates both neighbors
    return SymmetricGame(m=3, A=((2, 2, 0), (2, 1, 2), (0, 2, 2)))


@pytest.fixture
def utility_gap_game():
    # 3x3 game with distinct CE / exchangeable / Nash maximum utilities
    return SymmetricGame(m=3, A=((0, 1, 1), (2, 1, 0), (1, 0, 1)))
