import numpy as np
import pytest

from egta.games import NormalFormGame


@pytest.fixture
def prisoners_dilemma():
    # strategies: 0 = cooperate, 1 = defect
    u0 = [3.0, 0.0, 5.0, 1.0]  # (C,C) (C,D) (D,C) (D,D)
    u1 = [3.0, 5.0, 0.0, 1.0]
    return NormalFormGame((2, 2), np.array([u0, u1]))


@pytest.fixture
def matching_pennies():
    u0 = [1.0, -1.0, -1.0, 1.0]
    u1 = [-1.0, 1.0, 1.0, -1.0]
    return NormalFormGame((2, 2), np.array([u0, u1]))


def random_game(rng, max_players=3, max_strategies=3, scale=10.0):
    players = int(rng.integers(1, max_players + 1))
    counts = tuple(int(rng.integers(1, max_strategies + 1)) for _ in range(players))
    num_profiles = int(np.prod(counts))
    utilities = rng.uniform(-scale / 2, scale / 2, size=(players, num_profiles))
    return NormalFormGame(counts, utilities)
