"""Exact game computations: regret, approximate equilibria, dominance.

Builds two classic 2x2 games by hand and walks through the deterministic
machinery that everything else in the package is layered on.
"""

import numpy as np

from egta import (
    NormalFormGame,
    eps_dominates,
    maximin_value,
    pure_eps_nash,
    pure_regret,
    rationalizable,
    utility,
    welfare,
)

# Prisoner's dilemma. Strategy 0 = cooperate, 1 = defect. Profiles are
# linearized with the last player's index varying fastest, so player 0's
# payoffs are ordered (C,C), (C,D), (D,C), (D,D).
pd = NormalFormGame((2, 2), np.array([
    [3.0, 0.0, 5.0, 1.0],
    [3.0, 5.0, 0.0, 1.0],
]))

print("prisoner's dilemma")
print("  u_0(C,C) =", utility(pd, 0, (0, 0)))
print("  regret of player 0 at (C,C):", pure_regret(pd, 0, (0, 0)))
print("  welfare at (C,C):", welfare(pd, (0, 0)))
print("  pure equilibria:", pure_eps_nash(pd, 0.0))
print("  defect dominates cooperate?", eps_dominates(pd, 0, 1, 0, 0.0))
print("  surviving strategies after elimination:", rationalizable(pd, 0.0))
print("  maximin value of player 0:", maximin_value(pd, 0))

# Matching pennies has no pure equilibrium at all...
mp = NormalFormGame((2, 2), np.array([
    [1.0, -1.0, -1.0, 1.0],
    [-1.0, 1.0, 1.0, -1.0],
]))
print("\nmatching pennies")
print("  exact pure equilibria:", pure_eps_nash(mp, 0.0))
# ...but every profile is a 2-approximate equilibrium: the best unilateral
# improvement anyone ever has is worth exactly 2.
print("  2-approximate equilibria:", pure_eps_nash(mp, 2.0))
